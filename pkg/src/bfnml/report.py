"""Render analysis products as deterministic CSV or JSON."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Any

from bfnml.models import (
    ConvergencePoint,
    DivergenceReport,
    EvidenceSummary,
    IndependenceReport,
    Method,
    RegionRow,
    SweepRow,
)
from bfnml.utils import dumps_json, fixed

# ---------------------------------------------------------------------------
# Column sets
# ---------------------------------------------------------------------------
_EVIDENCE_KEYS = ("n", "y", "z")
_EVIDENCE_METHOD_COLUMNS: dict[Method, tuple[str, ...]] = {
    Method.BAYES: ("log_b01_uniform", "w0_bayes"),
    Method.JEFFREYS: ("log_b01_jeffreys", "w0_bayes_jeffreys"),
    Method.LNML: ("log_lnml0", "log_lnml1", "w0_lnml"),
    Method.NML: ("log_nml0", "log_nml1", "w0_nml"),
}
_SWEEP_METHOD_COLUMNS: dict[Method, tuple[str, ...]] = {
    Method.BAYES: ("w0_bayes",),
    Method.LNML: ("w0_lnml",),
    Method.NML: ("w0_nml",),
    Method.JEFFREYS: ("w0_bayes_jeffreys",),
}
_SWEEP_ORDER = (Method.BAYES, Method.LNML, Method.NML, Method.JEFFREYS)
_EVIDENCE_ORDER = (Method.BAYES, Method.JEFFREYS, Method.LNML, Method.NML)

CONVERGENCE_COLUMNS = ("n", "y_used", "theta_target", "w0_bayes", "w0_lnml")
REGION_COLUMNS = ("n", "min_critical_y", "max_critical_y", "count")
DIVERGENCE_COLUMNS = (
    "n", "z", "pairing", "critical_y", "count", "total", "proportion", "percent",
    "max_w0_lnml_critical", "min_w0_bayes_critical", "reversed_y",
)
INDEPENDENCE_COLUMNS = (
    "n", "z", "holds", "constant_w0", "region_min", "region_max", "region_size",
    "max_relative_deviation",
)


def _method_columns(
    method: Method, table: Mapping[Method, tuple[str, ...]], order: Sequence[Method]
) -> tuple[str, ...]:
    chosen = order if Method(method) is Method.ALL else (Method(method),)
    return tuple(col for m in chosen for col in table[m])


def evidence_columns(method: Method = Method.ALL) -> tuple[str, ...]:
    return _EVIDENCE_KEYS + _method_columns(method, _EVIDENCE_METHOD_COLUMNS, _EVIDENCE_ORDER)


def sweep_columns(method: Method = Method.ALL) -> tuple[str, ...]:
    return ("y", "ml_estimate") + _method_columns(method, _SWEEP_METHOD_COLUMNS, _SWEEP_ORDER)


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

def to_record(item: Any) -> dict[str, Any]:
    """Flatten a result dataclass into a plain dict of scalars and lists."""
    if not is_dataclass(item):
        raise TypeError(f"expected a dataclass instance, got {type(item).__name__}")
    record = asdict(item)
    for key, value in record.items():
        if isinstance(value, Enum):
            record[key] = value.value
        elif isinstance(value, tuple):
            record[key] = list(value)
    return record


def independence_record(report: IndependenceReport) -> dict[str, Any]:
    record = to_record(report)
    region = record.pop("region")
    record["region_min"] = region[0] if region else None
    record["region_max"] = region[-1] if region else None
    return record


# ---------------------------------------------------------------------------
# Cell formatting
# ---------------------------------------------------------------------------

def format_cell(value: Any, precision: int) -> str:
    """Text of one CSV field. No field ever contains a comma."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fixed(value, precision)
    if isinstance(value, (list, tuple)):
        return ";".join(format_cell(v, precision) for v in value)
    return str(value)


def _json_value(value: Any, precision: int) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        text = fixed(value, precision)
        return float(text) if text else None
    if isinstance(value, (list, tuple)):
        return [_json_value(v, precision) for v in value]
    if isinstance(value, Mapping):
        return {k: _json_value(v, precision) for k, v in value.items()}
    return str(value)


# ---------------------------------------------------------------------------
# CSV / JSON
# ---------------------------------------------------------------------------

def render_csv(
    columns: Sequence[str], records: Iterable[Mapping[str, Any]], precision: int
) -> str:
    """Comma-delimited, unquoted, ``\\n``-terminated table with a header row."""
    lines = [",".join(columns)]
    for record in records:
        lines.append(",".join(format_cell(record[col], precision) for col in columns))
    return "\n".join(lines) + "\n"


def render_json(
    records: Mapping[str, Any] | Sequence[Mapping[str, Any]],
    precision: int,
    columns: Sequence[str] | None = None,
) -> str:
    """A single object (or a list of objects) with sorted keys."""
    def select(record: Mapping[str, Any]) -> dict[str, Any]:
        keys = columns if columns is not None else record.keys()
        return {k: _json_value(record[k], precision) for k in keys}

    if isinstance(records, Mapping):
        return dumps_json(select(records))
    return dumps_json([select(r) for r in records])


def render(
    columns: Sequence[str],
    records: Sequence[Mapping[str, Any]],
    fmt: str,
    precision: int,
    *,
    single: bool = False,
) -> str:
    """Render *records* as CSV or JSON; *single* emits one JSON object instead of a list."""
    if fmt == "csv":
        return render_csv(columns, records, precision)
    if single:
        return render_json(records[0], precision, columns)
    return render_json(records, precision, columns)


# ---------------------------------------------------------------------------
# Typed entry points
# ---------------------------------------------------------------------------

def render_evidence(summary: EvidenceSummary, fmt: str, precision: int, method: Method) -> str:
    return render(evidence_columns(method), [to_record(summary)], fmt, precision, single=True)


def render_sweep(rows: Sequence[SweepRow], fmt: str, precision: int, method: Method) -> str:
    return render(sweep_columns(method), [to_record(r) for r in rows], fmt, precision)


def render_convergence(points: Sequence[ConvergencePoint], fmt: str, precision: int) -> str:
    return render(CONVERGENCE_COLUMNS, [to_record(p) for p in points], fmt, precision)


def render_divergence(report: DivergenceReport, fmt: str, precision: int) -> str:
    return render(DIVERGENCE_COLUMNS, [to_record(report)], fmt, precision, single=True)


def render_region(rows: Sequence[RegionRow], fmt: str, precision: int) -> str:
    return render(REGION_COLUMNS, [to_record(r) for r in rows], fmt, precision)


def render_independence(report: IndependenceReport, fmt: str, precision: int) -> str:
    return render(INDEPENDENCE_COLUMNS, [independence_record(report)], fmt, precision, single=True)
