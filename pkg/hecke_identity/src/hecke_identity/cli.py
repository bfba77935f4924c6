"""
Command-line front end

    hecke-identity verify --q 23 --format json
    hecke-identity sweep --min 7 --max 1000 --workers 8 --store dist/sweep
    hecke-identity table --q 11
    hecke-identity classes|cusps|ptable --q 7 --format csv

Exit codes: 0 when everything verified, 1 on a verification failure or
library error, 2 on usage errors.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from sympy import isprime

from hecke_identity.algebra.character_table import build_character_table, max_orthogonality_error
from hecke_identity.algebra.cyclotomic import set_exact_ceiling
from hecke_identity.config import (
    DEFAULT_SWEEP_MAX,
    DEFAULT_SWEEP_MIN,
    HeckeConfig,
    load_config,
    write_sample_config,
)
from hecke_identity.curves.modcurve import cusp_representatives
from hecke_identity.errors import HeckeIdentityError, UsageError
from hecke_identity.reports import (
    CLASS_COLUMNS,
    CUSP_COLUMNS,
    FORMATS,
    PTABLE_COLUMNS,
    class_records,
    cusp_records,
    ptable_records,
    render_reports,
    render_rows,
    render_table,
    table_record,
)
from hecke_identity.storage.report_store import ReportStore
from hecke_identity.verification.hecke import sweep_verify, verify_hecke_identity

logger = logging.getLogger(__name__)

COMMANDS = ("verify", "sweep", "table", "classes", "cusps", "ptable")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class CliConfig:
    command: str
    q: Optional[int] = None
    q_min: int = DEFAULT_SWEEP_MIN
    q_max: int = DEFAULT_SWEEP_MAX
    fmt: str = "text"
    workers: int = 1
    exact_ceiling: int = HeckeConfig().exact_ceiling
    precision_bits: int = HeckeConfig().precision_bits
    numeric_tolerance: float = HeckeConfig().numeric_tolerance
    output: Optional[Path] = None
    store_dir: Optional[Path] = None
    progress: bool = True


def validate_q(q: Optional[int]) -> int:
    if q is None:
        raise UsageError("--q is required for this command")
    if q == 3:
        raise UsageError("the case q = 3 is simple and can be treated individually; choose a prime q > 3 with q = 3 (mod 4)")
    if not isprime(q):
        raise UsageError(f"q = {q} is not prime; q must be a prime with q = 3 (mod 4)")
    if q % 4 != 3:
        raise UsageError(f"q = {q} is not 3 (mod 4); only primes q = 3 (mod 4), q > 3 are supported")
    return q


def _write(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    with open(output, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info(f"Wrote {output}")


def run(config: CliConfig) -> int:
    """Dispatch one subcommand and write its artifact; returns the exit code"""
    if config.command not in COMMANDS:
        raise UsageError(f"unknown command {config.command}; expected one of {', '.join(COMMANDS)}")
    if config.fmt not in FORMATS:
        raise UsageError(f"unknown format {config.fmt}; expected one of {', '.join(FORMATS)}")
    if config.workers < 1:
        raise UsageError(f"--workers must be positive, got {config.workers}")
    set_exact_ceiling(config.exact_ceiling)

    if config.command == "sweep":
        if config.q_min > config.q_max:
            raise UsageError(f"--min {config.q_min} is larger than --max {config.q_max}")
        reports = sweep_verify(config.q_min, config.q_max, parallel=config.workers, progress=config.progress)
        _write(render_reports(reports, config.fmt), config.output)

        if config.store_dir is not None:
            with ReportStore(config.store_dir) as store:
                store.write_reports(reports, config.q_min, config.q_max)

        failures = sum(1 for report in reports if not report.verdict)
        print(f"{len(reports) - failures} primes verified, {failures} failures", file=sys.stderr)
        return EXIT_OK if failures == 0 else EXIT_FAILURE

    q = validate_q(config.q)

    if config.command == "verify":
        report = verify_hecke_identity(q)
        _write(render_reports([report], config.fmt, single=True), config.output)
        if report.verdict:
            logger.info(f"q = {q}: m+ - m- = {report.y_diff} = h(-{q})")
            return EXIT_OK
        logger.error(f"q = {q}: verification failed ({report.error or 'identity mismatch'})")
        return EXIT_FAILURE

    if config.command == "table":
        table = build_character_table(q, allow_numeric=True)
        text = render_table(table_record(table, config.precision_bits), config.fmt)
        if table.mode == "numeric":
            error = max_orthogonality_error(table, config.precision_bits)
            logger.info(f"q = {q}: numeric table, orthogonality error {error:.3e}")
            if error > config.numeric_tolerance:
                _write(text, config.output)
                logger.error(f"q = {q}: orthogonality error {error:.3e} exceeds tolerance {config.numeric_tolerance:.1e}")
                return EXIT_FAILURE
    elif config.command == "classes":
        text = render_rows(class_records(q), CLASS_COLUMNS, config.fmt)
    elif config.command == "cusps":
        text = render_rows(cusp_records(cusp_representatives(q)), CUSP_COLUMNS, config.fmt)
    else:
        table = build_character_table(q, allow_numeric=True)
        records = ptable_records(table)
        text = render_rows(records, PTABLE_COLUMNS, config.fmt)
        if not all(record['matches_closed_form'] for record in records):
            _write(text, config.output)
            logger.error(f"q = {q}: solved p-vectors differ from the closed forms")
            return EXIT_FAILURE

    _write(text, config.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, default=None, help='Output format (default: text)')
    common.add_argument('--output', type=str, help='Write the artifact here instead of stdout')
    common.add_argument('--config', type=str, help='Path to YAML configuration file')
    common.add_argument('--exact-ceiling', type=int, help='Largest conductor for exact cyclotomic arithmetic')
    common.add_argument('--precision-bits', type=int, help='Working precision for numeric character values')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', '-v', action='store_true', help='Debug logging')
    verbosity.add_argument('--quiet', action='store_true', help='Warnings only, no progress bar')

    parser = argparse.ArgumentParser(
        prog='hecke-identity',
        description="Verify Hecke's identity m+ - m- = h(-q) for primes q = 3 (mod 4)",
    )
    parser.add_argument('--create-config', type=str, metavar='PATH', help='Write a sample config file and exit')
    subparsers = parser.add_subparsers(dest='command')

    verify = subparsers.add_parser('verify', parents=[common], help='Verify the identity for one prime')
    verify.add_argument('--q', type=int, required=True)

    sweep = subparsers.add_parser('sweep', parents=[common], help='Verify every prime q = 3 (mod 4) in a range')
    sweep.add_argument('--min', dest='q_min', type=int, default=DEFAULT_SWEEP_MIN)
    sweep.add_argument('--max', dest='q_max', type=int, default=DEFAULT_SWEEP_MAX)
    sweep.add_argument('--workers', type=int, help='Worker processes (default: available CPUs)')
    sweep.add_argument('--store', type=str, help='LMDB directory for the sweep reports')

    for name, text in (('table', 'Character table of PSL2(F_q)'),
                       ('classes', 'Conjugacy classes of PSL2(F_q)'),
                       ('cusps', 'Cusps of Gamma_1(q) with widths and parameters'),
                       ('ptable', 'Eigenvalue multiplicities of pi(P^-1) per irreducible')):
        sub = subparsers.add_parser(name, parents=[common], help=text)
        sub.add_argument('--q', type=int, required=True)

    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def config_from_args(args: argparse.Namespace) -> CliConfig:
    """Command-line flags override values from --config"""
    file_config = load_config(Path(args.config)) if args.config else HeckeConfig()
    workers = getattr(args, 'workers', None) or file_config.workers
    store = getattr(args, 'store', None) or file_config.store_dir
    return CliConfig(
        command=args.command,
        q=getattr(args, 'q', None),
        q_min=getattr(args, 'q_min', DEFAULT_SWEEP_MIN),
        q_max=getattr(args, 'q_max', DEFAULT_SWEEP_MAX),
        fmt=args.format or "text",
        workers=workers,
        exact_ceiling=args.exact_ceiling or file_config.exact_ceiling,
        precision_bits=args.precision_bits or file_config.precision_bits,
        numeric_tolerance=file_config.numeric_tolerance,
        output=Path(args.output) if args.output else None,
        store_dir=Path(store) if store else None,
        progress=not args.quiet,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.create_config:
        configure_logging()
        write_sample_config(Path(args.create_config))
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    configure_logging(args.verbose, args.quiet)
    try:
        return run(config_from_args(args))
    except UsageError as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HeckeIdentityError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_FAILURE
