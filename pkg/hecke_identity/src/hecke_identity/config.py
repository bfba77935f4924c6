"""
Defaults and YAML-backed configuration for hecke_identity
"""

import logging
import os
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

PACKAGE_ROOT = Path(__file__).parent
SCHEMA_DIR = PACKAGE_ROOT / "schemas"
REPORT_SCHEMA_FILE = SCHEMA_DIR / "hecke_report.schema.json"

# Largest common conductor allowed for exact cyclotomic arithmetic
DEFAULT_EXACT_CEILING = 10**6
DEFAULT_PRECISION_BITS = 53
DEFAULT_NUMERIC_TOLERANCE = 1e-8

# Sweep bounds used when the CLI gets no range
DEFAULT_SWEEP_MIN = 7
DEFAULT_SWEEP_MAX = 2000


def default_workers() -> int:
    return os.cpu_count() or 1


@dataclass
class HeckeConfig:
    """Runtime settings shared by the CLI and the sweep"""
    exact_ceiling: int = DEFAULT_EXACT_CEILING
    precision_bits: int = DEFAULT_PRECISION_BITS
    numeric_tolerance: float = DEFAULT_NUMERIC_TOLERANCE
    workers: int = 0
    store_dir: Optional[str] = None

    def __post_init__(self):
        if self.workers <= 0:
            self.workers = default_workers()
        if self.precision_bits < 53:
            raise ValueError(f"precision_bits must be at least 53, got {self.precision_bits}")
        if self.exact_ceiling < 1:
            raise ValueError(f"exact_ceiling must be positive, got {self.exact_ceiling}")
        if self.numeric_tolerance <= 0:
            raise ValueError(f"numeric_tolerance must be positive, got {self.numeric_tolerance}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def load_config(path: Optional[Path]) -> HeckeConfig:
    """Load a HeckeConfig from YAML; missing file or keys fall back to defaults"""
    if path is None:
        return HeckeConfig()

    path = Path(path)
    if not path.exists():
        logger.warning(f"Config file not found: {path}, using defaults")
        return HeckeConfig()

    with open(path, 'r') as f:
        data = yaml.safe_load(f) or {}

    arithmetic = data.get('arithmetic', {})
    sweep = data.get('sweep', {})
    config = HeckeConfig(
        exact_ceiling=int(arithmetic.get('exact_ceiling', DEFAULT_EXACT_CEILING)),
        precision_bits=int(arithmetic.get('precision_bits', DEFAULT_PRECISION_BITS)),
        numeric_tolerance=float(arithmetic.get('numeric_tolerance', DEFAULT_NUMERIC_TOLERANCE)),
        workers=int(sweep.get('workers', 0)),
        store_dir=sweep.get('store_dir'),
    )
    logger.info(f"Loaded configuration from {path}")
    return config


def write_sample_config(path: Path) -> Path:
    """Write a sample configuration file"""
    config = {
        'arithmetic': {
            'exact_ceiling': DEFAULT_EXACT_CEILING,
            'precision_bits': DEFAULT_PRECISION_BITS,
            'numeric_tolerance': DEFAULT_NUMERIC_TOLERANCE,
        },
        'sweep': {
            'workers': default_workers(),
            'store_dir': None,
        },
    }

    path = Path(path)
    with open(path, 'w') as f:
        yaml.dump(config, f, default_flow_style=False)

    logger.info(f"Created sample configuration file: {path}")
    return path
