"""
Record builders and JSON / CSV / text writers for every CLI artifact

Output is deterministic for a fixed input: records keep construction
order, rationals print as "num/den", and the only timing data is the
per-report `elapsed` field.
"""

import csv
import io
import json
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Union

import jsonschema

from hecke_identity.algebra.character_table import (
    CharacterTable,
    closed_form_p_vector,
    p_table_for_irrep,
)
from hecke_identity.algebra.cyclotomic import CycloNumber, to_complex
from hecke_identity.algebra.gf_psl2 import class_representative, enumerate_classes, ConjClassLabel
from hecke_identity.config import REPORT_SCHEMA_FILE
from hecke_identity.curves.modcurve import CuspData
from hecke_identity.storage.generated_schemas import (
    CharacterEntryDict,
    CharacterTableDict,
    ConjClassDict,
    CuspDataDict,
    HeckeReportDict,
    PVectorDict,
)
from hecke_identity.verification.hecke import HeckeReport

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")

REPORT_COLUMNS = [
    "q", "mu", "g", "kappa_sum", "m", "z_rr", "sum_nchi",
    "h_forms", "h_dirichlet", "y_diff", "verdict", "elapsed", "error",
]

Record = Dict[str, Any]


def fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# --- record builders ---------------------------------------------------------

def report_records(reports: Sequence[HeckeReport]) -> List[HeckeReportDict]:
    return [report.to_dict() for report in reports]


def class_record(label: ConjClassLabel, q: int) -> ConjClassDict:
    return {
        'label': label.name(),
        'kind': label.kind.value,
        'parameter': list(label.parameter),
        'size': label.size,
        'representative': list(class_representative(label, q).entries()),
    }


def class_records(q: int) -> List[ConjClassDict]:
    return [class_record(label, q) for label in enumerate_classes(q)]


def cusp_records(cusps: Sequence[CuspData]) -> List[CuspDataDict]:
    return [
        {
            'cusp': str(data.cusp),
            'r': data.cusp.r,
            's': data.cusp.s,
            'width': data.width,
            'kappa': fraction_str(data.kappa),
        }
        for data in cusps
    ]


def _entry(value: CycloNumber, mode: str, precision_bits: int) -> CharacterEntryDict:
    if mode == "exact":
        return {'conductor': value.n, 'coefficients': value.to_coefficient_list()}
    z = complex(to_complex(value, precision_bits))
    return {'conductor': value.n, 'numeric': [z.real, z.imag]}


def table_record(table: CharacterTable, precision_bits: int = 53) -> CharacterTableDict:
    return {
        'q': table.q,
        'mode': table.mode,
        'conductor': table.conductor,
        'generator_gsplit': table.generator_gsplit,
        'generator_gnorm1': list(table.generator_gnorm1),
        'classes': [class_record(label, table.q) for label in table.classes],
        'irreps': [irrep.name() for irrep in table.irreps],
        'degrees': {irrep.name(): irrep.degree(table.q) for irrep in table.irreps},
        'values': {
            irrep.name(): [_entry(value, table.mode, precision_bits) for value in row]
            for irrep, row in zip(table.irreps, table.values)
        },
    }


def ptable_records(table: CharacterTable) -> List[PVectorDict]:
    records: List[PVectorDict] = []
    for irrep in table.irreps:
        solved = p_table_for_irrep(table, irrep)
        records.append({
            'irrep': irrep.name(),
            'degree': solved.degree,
            'p': list(solved.p),
            'matches_closed_form': solved == closed_form_p_vector(table.q, irrep),
        })
    return records


# --- validation --------------------------------------------------------------

@lru_cache(maxsize=1)
def load_report_schema() -> Dict[str, Any]:
    with open(REPORT_SCHEMA_FILE, 'r', encoding='utf-8') as f:
        return json.load(f)


def validate_report(obj: Union[Record, List[Record]], definition: str = "heckeReport") -> None:
    """
    Validate against hecke_report.schema.json, or one of its $defs
    (heckeReportList, conjClassList, cuspDataList, pVectorList,
    characterTable). Raises jsonschema.ValidationError.
    """
    schema = load_report_schema()
    if definition not in schema['$defs']:
        raise KeyError(f"no schema definition named {definition}")
    target = dict(schema, **{'$ref': f"#/$defs/{definition}"})
    jsonschema.Draft202012Validator(target).validate(obj)


# --- writers -----------------------------------------------------------------

def to_json(data: Union[Record, List[Record]]) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def to_csv(rows: Sequence[Record], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n", extrasaction='ignore')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_cell(row.get(key)) for key in columns})
    return buffer.getvalue()


def _csv_cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return value


def to_text(rows: Sequence[Record], columns: Sequence[str]) -> str:
    """Aligned plain-text table"""
    cells = [[str(_csv_cell(row.get(key))) for key in columns] for row in rows]
    widths = [max([len(col)] + [len(r[i]) for r in cells]) for i, col in enumerate(columns)]
    lines = ["  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_rows(rows: Sequence[Record], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return to_json(list(rows))
    if fmt == "csv":
        return to_csv(rows, columns)
    if fmt == "text":
        return to_text(rows, columns)
    raise ValueError(f"unknown format {fmt}; expected one of {FORMATS}")


def render_reports(reports: Sequence[HeckeReport], fmt: str, single: bool = False) -> str:
    records = report_records(reports)
    if fmt == "json" and single and len(records) == 1:
        return to_json(records[0])
    if fmt == "text":
        # timing stays out of the human-readable view
        return to_text(records, [c for c in REPORT_COLUMNS if c != "elapsed"])
    return render_rows(records, REPORT_COLUMNS, fmt)


def render_table(record: CharacterTableDict, fmt: str) -> str:
    if fmt == "json":
        return to_json(record)

    class_names = [c['label'] for c in record['classes']]
    rows: List[Record] = [
        {'irrep': 'size', **{name: c['size'] for name, c in zip(class_names, record['classes'])}}
    ]
    for irrep in record['irreps']:
        row: Record = {'irrep': irrep}
        for name, entry in zip(class_names, record['values'][irrep]):
            row[name] = _entry_text(entry)
        rows.append(row)
    columns = ['irrep'] + class_names

    if fmt == "csv":
        for row in rows:
            row['mode'] = record['mode']
        return to_csv(rows, ['mode'] + columns)
    header = f"# q = {record['q']}, mode = {record['mode']}, conductor = {record['conductor']}\n"
    return header + to_text(rows, columns)


def _entry_text(entry: CharacterEntryDict) -> str:
    if 'numeric' in entry:
        re, im = entry['numeric']
        return f"{re:.10g}{im:+.10g}i"
    coeffs = [Fraction(c) for c in entry['coefficients']]
    value = CycloNumber(entry['conductor'], tuple(coeffs))
    return str(value)


CLASS_COLUMNS = ["label", "kind", "parameter", "size", "representative"]
CUSP_COLUMNS = ["cusp", "r", "s", "width", "kappa"]
PTABLE_COLUMNS = ["irrep", "degree", "p", "matches_closed_form"]
