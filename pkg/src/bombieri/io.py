"""Instance JSON decoding and report rendering (table, CSV, JSON)."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ParseError, ValidationError
from .space import Coefficients, VectorSystem
from .verify import Instance, VerificationResult

CSV_HEADER = "variant,params,form,lhs,bound,slack,rel_slack,pass"
COLUMNS = CSV_HEADER.split(",")


def _reject_constant(name):
    raise ValidationError(f"non-finite number {name} is not allowed")


def _loads(data: Union[bytes, str]):
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(data, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {json.dumps(v)}")
    out = float(v)
    if not math.isfinite(out):
        raise ValidationError(f"{where}: scalar must be finite")
    return out


def _scalar(v, field: str, where: str):
    if isinstance(v, list):
        if field == "real":
            raise ValidationError(f"{where}: field 'real' forbids [re, im] scalars")
        if len(v) != 2:
            raise ValidationError(f"{where}: complex scalar must be [re, im], got {len(v)} items")
        return complex(_number(v[0], where + "[0]"), _number(v[1], where + "[1]"))
    x = _number(v, where)
    return complex(x) if field == "complex" else x


def _scalar_list(v, field: str, where: str) -> list:
    if not isinstance(v, list):
        raise ParseError(f"{where}: expected a list")
    return [_scalar(s, field, f"{where}[{i}]") for i, s in enumerate(v)]


def parse_instance(data: Union[bytes, str]) -> Instance:
    """Decode an instance file.

    Schema: ``{"field": "real"|"complex", "x": [...], "vectors": [[...], ...],
    "coefficients": [...]}`` (coefficients optional).  Complex scalars are
    ``[re, im]`` pairs; real scalars are plain numbers.
    """
    doc = _loads(data)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - {"field", "x", "vectors", "coefficients"}
    if unknown:
        raise ValidationError(f"unknown key(s): {', '.join(sorted(unknown))}")
    for key in ("field", "x", "vectors"):
        if key not in doc:
            raise ValidationError(f"missing required key {key!r}")
    field = doc["field"]
    if field not in ("real", "complex"):
        raise ValidationError(f"field: expected 'real' or 'complex', got {json.dumps(field)}")
    x = _scalar_list(doc["x"], field, "x")
    if not x:
        raise ValidationError("x: dimension must be positive")
    if not isinstance(doc["vectors"], list):
        raise ParseError("vectors: expected a list of lists")
    rows = []
    for i, row in enumerate(doc["vectors"]):
        vals = _scalar_list(row, field, f"vectors[{i}]")
        if len(vals) != len(x):
            raise ValidationError(
                f"vectors[{i}]: ragged row, length {len(vals)} but x has length {len(x)}")
        rows.append(vals)
    coeffs = None
    if doc.get("coefficients") is not None:
        cs = _scalar_list(doc["coefficients"], field, "coefficients")
        if len(cs) != len(rows):
            raise ValidationError(f"coefficients: {len(cs)} values for {len(rows)} vectors")
        coeffs = Coefficients(cs)
    Y = VectorSystem(field, len(x), rows)
    return Instance(x, Y, coeffs)


def _encode_scalar(v, field):
    if field == "complex":
        v = complex(v)
        return [v.real, v.imag]
    return float(v.real) if isinstance(v, complex) else float(v)


def dump_instance(instance: Instance) -> str:
    """Inverse of :func:`parse_instance`."""
    f = instance.field
    doc = {
        "field": f,
        "x": [_encode_scalar(v, f) for v in instance.x.tolist()],
        "vectors": [[_encode_scalar(v, f) for v in row] for row in instance.Y.vectors.tolist()],
    }
    if instance.coefficients is not None:
        doc["coefficients"] = [_encode_scalar(v, f) for v in instance.coefficients.values.tolist()]
    return json.dumps(doc)


@dataclass(frozen=True)
class ReportRow:
    variant: str
    params: str
    form: str
    lhs: float
    bound: float
    slack: float
    rel_slack: float
    passed: bool

    @classmethod
    def from_result(cls, res: VerificationResult) -> "ReportRow":
        params = res.params.render() if res.params is not None else ""
        return cls(res.variant, params, res.form, res.lhs, res.bound, res.slack,
                   res.rel_slack, res.passed)

    def as_dict(self) -> dict:
        return {"variant": self.variant, "params": self.params, "form": self.form,
                "lhs": self.lhs, "bound": self.bound, "slack": self.slack,
                "rel_slack": self.rel_slack, "pass": self.passed}


def fmt(x: float) -> str:
    """17 significant digits: round-trips every double exactly."""
    return format(x, ".17g")


def emit_report(rows: Iterable[ReportRow], format: str = "table") -> bytes:
    """Render rows as ``table`` (sorted by bound, sharpest first), ``csv`` or ``json``."""
    rows = list(rows)
    if format == "json":
        return json.dumps([r.as_dict() for r in rows], indent=1).encode("utf-8")
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([r.variant, r.params, r.form, fmt(r.lhs), fmt(r.bound), fmt(r.slack),
                        fmt(r.rel_slack), "true" if r.passed else "false"])
        return buf.getvalue().encode("utf-8")
    if format == "table":
        ordered = sorted(rows, key=lambda r: r.bound)
        cells = [COLUMNS] + [[r.variant, r.params or "-", r.form, fmt(r.lhs), fmt(r.bound),
                              fmt(r.slack), fmt(r.rel_slack), "PASS" if r.passed else "FAIL"]
                             for r in ordered]
        widths = [max(len(row[k]) for row in cells) for k in range(len(COLUMNS))]
        lines = ["  ".join(c.ljust(wd) for c, wd in zip(row, widths)).rstrip() for row in cells]
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def parse_report_json(data: Union[bytes, str]) -> list:
    """Read back the ``json`` form of :func:`emit_report`."""
    doc = _loads(data)
    if not isinstance(doc, list):
        raise ParseError("report must be a JSON array")
    rows = []
    for i, obj in enumerate(doc):
        if not isinstance(obj, dict) or set(obj) != set(COLUMNS):
            raise ValidationError(f"row {i}: expected keys {', '.join(COLUMNS)}")
        if not isinstance(obj["pass"], bool):
            raise ValidationError(f"row {i}: 'pass' must be a boolean")
        rows.append(ReportRow(
            str(obj["variant"]), str(obj["params"]), str(obj["form"]),
            *(_number(obj[k], f"row {i}.{k}") for k in ("lhs", "bound", "slack", "rel_slack")),
            obj["pass"]))
    return rows
