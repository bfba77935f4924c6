"""
LMDB store for sweep results

Keys are zero-padded primes ("00000007"), values UTF-8 JSON HeckeReportDicts.
A single b'sweep_info' key holds the SweepInfoDict for the last write.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Iterator, List, Optional

import lmdb

from hecke_identity import __version__
from hecke_identity.storage.generated_schemas import HeckeReportDict, SweepInfoDict
from hecke_identity.verification.hecke import HeckeReport

logger = logging.getLogger(__name__)

SWEEP_INFO_KEY = b'sweep_info'
KEY_WIDTH = 8

# Sweeps to a few thousand primes stay far below this
DEFAULT_MAP_SIZE = 256 * 1024 * 1024


def report_key(q: int) -> bytes:
    return f"{q:0{KEY_WIDTH}d}".encode()


class ReportStore:
    """Reads and writes HeckeReport records in one LMDB environment"""

    def __init__(self, store_dir: Path, map_size: int = DEFAULT_MAP_SIZE, readonly: bool = False):
        self.store_dir = Path(store_dir)
        self.map_size = map_size
        self.readonly = readonly
        self.env: Optional[lmdb.Environment] = None

    def open(self) -> "ReportStore":
        if self.env is None:
            if not self.readonly:
                self.store_dir.mkdir(parents=True, exist_ok=True)
            elif not self.store_dir.exists():
                raise FileNotFoundError(f"report store not found: {self.store_dir}")
            self.env = lmdb.open(
                str(self.store_dir),
                map_size=self.map_size,
                max_dbs=0,
                readonly=self.readonly,
                lock=not self.readonly,
            )
        return self

    def close(self):
        if self.env is not None:
            self.env.close()
            self.env = None

    def __enter__(self) -> "ReportStore":
        return self.open()

    def __exit__(self, exc_type, exc, tb):
        self.close()

    def _require_env(self) -> lmdb.Environment:
        if self.env is None:
            raise RuntimeError("report store is not open")
        return self.env

    def write_reports(self, reports: List[HeckeReport], q_min: int, q_max: int) -> int:
        """Store one record per report plus the sweep_info key; returns the record count"""
        env = self._require_env()
        failures = 0
        with env.begin(write=True) as txn:
            for report in reports:
                record: HeckeReportDict = report.to_dict()
                txn.put(report_key(report.q), json.dumps(record, ensure_ascii=False).encode())
                if not report.verdict:
                    failures += 1

            info: SweepInfoDict = {
                'q_min': q_min,
                'q_max': q_max,
                'total_primes': len(reports),
                'failures': failures,
                'build_date': datetime.now().isoformat(),
                'version': __version__,
                'builder': 'hecke_identity.sweep',
            }
            txn.put(SWEEP_INFO_KEY, json.dumps(info, indent=2).encode())

        logger.info(f"Stored {len(reports)} reports ({failures} failures) in {self.store_dir}")
        return len(reports)

    def get(self, q: int) -> Optional[HeckeReportDict]:
        with self._require_env().begin() as txn:
            value = txn.get(report_key(q))
        return json.loads(value.decode('utf-8')) if value is not None else None

    def iter_reports(self) -> Iterator[HeckeReportDict]:
        """Records in increasing q; keys sort numerically because of the padding"""
        with self._require_env().begin() as txn:
            cursor = txn.cursor()
            for key, value in cursor:
                if key == SWEEP_INFO_KEY:
                    continue
                yield json.loads(value.decode('utf-8'))

    def sweep_info(self) -> Optional[SweepInfoDict]:
        with self._require_env().begin() as txn:
            value = txn.get(SWEEP_INFO_KEY)
        return json.loads(value.decode('utf-8')) if value is not None else None

    def count(self) -> int:
        with self._require_env().begin() as txn:
            entries = txn.stat()['entries']
            has_info = txn.get(SWEEP_INFO_KEY) is not None
        return entries - int(has_info)
