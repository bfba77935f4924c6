"""
Record shapes for everything hecke_identity exports
================================================================================
Each TypedDict matches one JSON object written by reports.py or stored in
the LMDB report store. hecke_report.schema.json describes HeckeReportDict
for external consumers; keep the two in step.

Exact rationals are carried as "num/den" strings and cyclotomic values as
coefficient lists in the power basis of their conductor.
================================================================================
"""

from typing import TypedDict, Optional, List, Dict

try:
    from typing import NotRequired
except ImportError:  # Python < 3.11
    from typing_extensions import NotRequired


class HeckeReportDict(TypedDict):
    """One verified prime"""
    q: int
    mu: Optional[int]
    g: Optional[int]
    kappa_sum: Optional[str]
    m: Optional[str]
    z_rr: Optional[int]
    sum_nchi: Optional[int]
    h_forms: Optional[int]
    h_dirichlet: Optional[int]
    y_diff: Optional[int]
    verdict: bool
    elapsed: float
    error: Optional[str]


class SweepInfoDict(TypedDict):
    """Metadata key of a report store"""
    q_min: int
    q_max: int
    total_primes: int
    failures: int
    build_date: str
    version: str
    builder: str


class ConjClassDict(TypedDict):
    label: str
    kind: str
    parameter: List[int]
    size: int
    representative: NotRequired[List[int]]


class CuspDataDict(TypedDict):
    cusp: str
    r: int
    s: int
    width: int
    kappa: str


class CharacterEntryDict(TypedDict):
    conductor: int
    coefficients: NotRequired[List[str]]
    numeric: NotRequired[List[float]]


class CharacterTableDict(TypedDict):
    q: int
    mode: str
    conductor: int
    generator_gsplit: int
    generator_gnorm1: List[int]
    classes: List[ConjClassDict]
    irreps: List[str]
    degrees: Dict[str, int]
    values: Dict[str, List[CharacterEntryDict]]


class PVectorDict(TypedDict):
    irrep: str
    degree: int
    p: List[int]
    matches_closed_form: bool
