"""JSON and CSV reports for sweep records."""

import csv
import io
from typing import Dict, List, Optional

from pydantic import TypeAdapter
from pydantic import ValidationError as PydanticValidationError

from src.lib.sweep import AuditRecord
from src.lib.utils import FileError, PathLike, TextFileWriter, WriteStats, safe_read_text

RECORDS = TypeAdapter(List[AuditRecord])

CSV_COLUMNS = [
    "group_spec",
    "group_order",
    "subgroup_members",
    "h_order",
    "g_label",
    "g_in_K",
    "standing_assumptions_met",
    "edges_oracle",
    "edges_formula",
    "degree_mismatch_count",
    "shape",
    "triangle_free",
    "domination",
    "bounds_pass",
    "bounds_fail",
    "bounds_na",
    "special_checks",
    "special_mismatches",
]


def records_json(records: List[AuditRecord]) -> str:
    return RECORDS.dump_json(records, indent=2).decode("utf-8") + "\n"


def _csv_row(record: AuditRecord) -> Dict[str, object]:
    statuses = [a.status for a in record.bound_audits if a.kind == "bound"]
    shape = record.shape.kind
    if record.shape.params:
        inner = ";".join(f"{k}={v}" for k, v in sorted(record.shape.params.items()))
        shape = f"{shape}({inner})"
    return {
        "group_spec": record.group_spec,
        "group_order": record.group_order,
        "subgroup_members": " ".join(str(m) for m in record.subgroup_members),
        "h_order": record.h_order,
        "g_label": record.g_label,
        "g_in_K": record.g_in_K,
        "standing_assumptions_met": record.standing_assumptions_met,
        "edges_oracle": record.edges_oracle,
        "edges_formula": "" if record.edges_formula is None else record.edges_formula,
        "degree_mismatch_count": record.degree_mismatch_count,
        "shape": shape,
        "triangle_free": record.triangle_free,
        "domination": "" if record.domination is None else record.domination,
        "bounds_pass": statuses.count("pass"),
        "bounds_fail": statuses.count("fail"),
        "bounds_na": statuses.count("na"),
        "special_checks": len(record.special_formula_checks),
        "special_mismatches": sum(
            1 for c in record.special_formula_checks if not c.matches_oracle
        ),
    }


def records_csv(records: List[AuditRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(_csv_row(record))
    return buffer.getvalue()


def write_report(
    records: List[AuditRecord], json_path: PathLike, csv_path: Optional[PathLike] = None
) -> WriteStats:
    """
    Write the sweep records as JSON and optionally as CSV.

    Both outputs depend only on the records, so a fixed configuration always
    produces the same bytes.

    Args:
        records: Records in sweep order
        json_path: Destination of the JSON array
        csv_path: Optional destination of the flattened CSV

    Returns:
        Statistics of the files written

    Raises:
        FileError: If a destination cannot be written
    """
    writer = TextFileWriter()
    writer.write_text(json_path, records_json(records))
    if csv_path is not None:
        writer.write_text(csv_path, records_csv(records))
    return writer.stats


def load_report(json_path: PathLike) -> List[AuditRecord]:
    """Read a JSON report back into records."""
    text = safe_read_text(json_path)
    try:
        return RECORDS.validate_json(text)
    except PydanticValidationError as e:
        raise FileError(f"{json_path} is not a valid report: {str(e)}") from e
