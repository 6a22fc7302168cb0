"""JSON documents for instances, reports and matrices.

Scalars are encoded as strings (``"3"``, ``"-5/2"``, ``"0.75"``) and the bottom
element as ``null`` in every semifield. Plain JSON numbers are accepted on
input. Infinite and NaN literals are rejected: the bottom element is the only
non-finite value and it has its own encoding.

These functions are pure and never touch the file system except
:func:`load_json`.
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from tropopt.config import Settings
from tropopt.errors import SchemaError, ShapeMismatch
from tropopt.forms import ProblemForm, Sense, field_kind
from tropopt.model import (
    Datum,
    GeneratedCone,
    GeneratedInterval,
    Interval,
    OptimumReport,
    PinnedScaledBox,
    ProblemInstance,
    SolutionSet,
    Substituted,
)
from tropopt.oracle import GridSpec
from tropopt.semifield import BOTTOM, Scalar, Semifield, SemifieldId
from tropopt.tropalg import TropMatrix, TropVector

_NON_FINITE = {"inf", "+inf", "-inf", "infinity", "+infinity", "-infinity", "nan"}
_INSTANCE_KEYS = {"semifield", "problem", "data", "options"}
_OPTION_KEYS = {"mode", "tolerance", "samples", "grid"}


@dataclass(frozen=True)
class InstanceFile:
    """A parsed instance document with its run options."""

    instance: ProblemInstance
    settings: Settings
    samples: int | None = None
    grid: GridSpec | None = None
    grid_step: Fraction | None = None


@dataclass(frozen=True)
class ReportFile:
    sf: Semifield
    form: ProblemForm
    report: OptimumReport


# -- scalars, vectors and matrices -------------------------------------------


def encode_scalar(s: Scalar) -> str | None:
    if s.is_bottom:
        return None
    if isinstance(s.value, Fraction):
        return str(s.value)
    return repr(float(s.value))


def decode_scalar(sf: Semifield, raw: Any, name: str = "scalar") -> Scalar:
    if raw is None:
        return BOTTOM
    if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
        raise SchemaError(name, f"{name}: expected a number, string or null, got {raw!r}")
    if isinstance(raw, float) and not math.isfinite(raw):
        raise SchemaError(name, f"{name}: non-finite number {raw!r}")
    if isinstance(raw, str) and raw.strip().lower() in _NON_FINITE:
        raise SchemaError(name, f"{name}: use null for the zero element, not {raw!r}")
    try:
        return sf.scalar(raw.strip() if isinstance(raw, str) else raw)
    except SchemaError as exc:
        raise SchemaError(name, f"{name}: {exc}") from exc


def encode_vector(v: TropVector) -> list[str | None]:
    return [encode_scalar(e) for e in v.entries]


def decode_vector(sf: Semifield, raw: Any, name: str = "vector") -> TropVector:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(name, f"{name}: expected a non-empty array")
    return TropMatrix.column(sf, [decode_scalar(sf, v, name) for v in raw])


def encode_matrix(m: TropMatrix) -> list[list[str | None]]:
    return [[encode_scalar(e) for e in row] for row in m.to_rows()]


def decode_matrix(sf: Semifield, raw: Any, name: str = "matrix") -> TropMatrix:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise SchemaError(name, f"{name}: expected a non-empty array of rows")
    rows = [[decode_scalar(sf, v, name) for v in row] for row in raw]
    try:
        return TropMatrix.from_rows(sf, rows)
    except ShapeMismatch as exc:
        raise SchemaError(name, f"{name}: {exc}") from exc


def _encode_datum(value: Datum, name: str) -> Any:
    kind = field_kind(name)
    if kind == "scalar":
        return encode_scalar(value)
    if kind == "vector":
        return encode_vector(value)
    return encode_matrix(value)


def _decode_datum(sf: Semifield, name: str, raw: Any) -> Datum:
    kind = field_kind(name)
    if kind == "scalar":
        return decode_scalar(sf, raw, name)
    if kind == "vector":
        return decode_vector(sf, raw, name)
    return decode_matrix(sf, raw, name)


# -- instances ---------------------------------------------------------------


def parse_instance(
    doc: Any, environ: Mapping[str, str] | None = None
) -> InstanceFile:
    """Validate an instance document and build the instance.

    ``options.mode`` is overridden by ``TROPOPT_MODE`` in ``environ``.
    """
    if not isinstance(doc, dict):
        raise SchemaError("document", "an instance document must be a JSON object")
    unknown = sorted(set(doc) - _INSTANCE_KEYS)
    if unknown:
        raise SchemaError("document", f"unknown keys: {', '.join(unknown)}")
    sid = _enum(SemifieldId, doc.get("semifield", SemifieldId.MAX_PLUS.value), "semifield")
    form = _enum(ProblemForm, doc.get("problem"), "problem")
    options = doc.get("options") or {}
    if not isinstance(options, dict):
        raise SchemaError("options", "options must be an object")
    unknown = sorted(set(options) - _OPTION_KEYS)
    if unknown:
        raise SchemaError("options", f"unknown options: {', '.join(unknown)}")

    try:
        tolerance = float(options.get("tolerance", Settings().tolerance))
    except (TypeError, ValueError) as exc:
        raise SchemaError("tolerance", "tolerance must be a number") from exc
    base = Settings(mode=options.get("mode", "exact"), tolerance=tolerance)
    settings = Settings.from_env(environ, base=base)
    sf = Semifield.create(sid, settings)

    data = doc.get("data")
    if not isinstance(data, dict):
        raise SchemaError("data", "data must be an object of named arrays")
    accepted = form.shapes
    unknown = sorted(set(data) - set(accepted))
    if unknown:
        raise SchemaError("data", f"{form.value} does not take {', '.join(unknown)}")
    values = {name: _decode_datum(sf, name, raw) for name, raw in data.items()}
    try:
        instance = ProblemInstance(sf, form, values)
    except ShapeMismatch as exc:
        raise SchemaError("data", str(exc)) from exc

    samples = options.get("samples")
    if samples is not None and (
        isinstance(samples, bool) or not isinstance(samples, int) or samples < 1
    ):
        raise SchemaError("samples", "samples must be a positive integer")
    grid, step = _parse_grid(options.get("grid"), instance.dim)
    return InstanceFile(instance, settings, samples, grid, step)


def instance_to_dict(instance: ProblemInstance) -> dict[str, Any]:
    return {
        "semifield": instance.sf.id.value,
        "problem": instance.form.value,
        "data": {name: _encode_datum(value, name) for name, value in instance.data.items()},
    }


def parse_rational(raw: Any, name: str = "value") -> Fraction:
    if isinstance(raw, bool):
        raise SchemaError(name, f"{name}: expected a rational, got {raw!r}")
    try:
        value = Fraction(raw.strip() if isinstance(raw, str) else raw)
    except (TypeError, ValueError, OverflowError) as exc:
        raise SchemaError(name, f"{name}: expected a rational, got {raw!r}") from exc
    return value


def _parse_grid(raw: Any, n: int) -> tuple[GridSpec | None, Fraction | None]:
    if raw is None:
        return None, None
    if not isinstance(raw, dict):
        raise SchemaError("grid", "grid must be an object")
    step = parse_rational(raw["step"], "grid.step") if "step" in raw else None
    if step is not None and step <= 0:
        raise SchemaError("grid.step", "grid step must be positive")
    if "lower" not in raw and "upper" not in raw:
        return None, step
    if "lower" not in raw or "upper" not in raw or step is None:
        raise SchemaError("grid", "grid needs lower, upper and step together")
    lower = tuple(parse_rational(v, "grid.lower") for v in raw["lower"])
    upper = tuple(parse_rational(v, "grid.upper") for v in raw["upper"])
    if len(lower) != n or len(upper) != n:
        raise SchemaError("grid", f"grid bounds must have length {n}")
    try:
        return GridSpec(lower, upper, step), step
    except ValueError as exc:
        raise SchemaError("grid", str(exc)) from exc


def _enum(cls: type, raw: Any, name: str):
    try:
        return cls(raw)
    except ValueError as exc:
        choices = ", ".join(member.value for member in cls)
        raise SchemaError(name, f"unknown {name} {raw!r}; expected one of {choices}") from exc


# -- reports -----------------------------------------------------------------


def solution_set_to_dict(s: SolutionSet) -> dict[str, Any]:
    if isinstance(s, Interval):
        return {"kind": s.kind, "lower": encode_vector(s.lower), "upper": encode_vector(s.upper)}
    if isinstance(s, GeneratedInterval):
        return {
            "kind": s.kind,
            "generator": encode_matrix(s.generator),
            "u_lower": encode_vector(s.u_lower),
            "u_upper": encode_vector(s.u_upper),
        }
    if isinstance(s, GeneratedCone):
        return {
            "kind": s.kind,
            "generator": encode_matrix(s.generator),
            "u_lower": encode_vector(s.u_lower),
        }
    if isinstance(s, PinnedScaledBox):
        return {
            "kind": s.kind,
            "k": s.k,
            "s": s.s,
            "pin": encode_scalar(s.pin),
            "caps": encode_vector(s.caps),
        }
    if isinstance(s, Substituted):
        return {
            "kind": s.kind,
            "outer": encode_matrix(s.outer),
            "inner": solution_set_to_dict(s.inner),
        }
    raise TypeError(f"unknown solution set {type(s).__name__}")


def solution_set_from_dict(sf: Semifield, doc: Any) -> SolutionSet:
    if not isinstance(doc, dict):
        raise SchemaError("solution_set", "solution_set must be an object")
    kind = doc.get("kind")
    try:
        if kind == Interval.kind:
            return Interval(decode_vector(sf, doc["lower"]), decode_vector(sf, doc["upper"]))
        if kind == GeneratedInterval.kind:
            return GeneratedInterval(
                decode_matrix(sf, doc["generator"]),
                decode_vector(sf, doc["u_lower"]),
                decode_vector(sf, doc["u_upper"]),
            )
        if kind == GeneratedCone.kind:
            return GeneratedCone(
                decode_matrix(sf, doc["generator"]), decode_vector(sf, doc["u_lower"])
            )
        if kind == PinnedScaledBox.kind:
            return PinnedScaledBox(
                k=int(doc["k"]),
                s=int(doc["s"]),
                pin=decode_scalar(sf, doc["pin"]),
                caps=decode_vector(sf, doc["caps"]),
            )
        if kind == Substituted.kind:
            return Substituted(
                decode_matrix(sf, doc["outer"]), solution_set_from_dict(sf, doc["inner"])
            )
    except KeyError as exc:
        raise SchemaError("solution_set", f"{kind} set is missing {exc}") from exc
    raise SchemaError("solution_set", f"unknown solution set kind {kind!r}")


def report_to_dict(report: OptimumReport, sf: Semifield, form: ProblemForm) -> dict[str, Any]:
    return {
        "semifield": sf.id.value,
        "problem": form.value,
        "sense": report.sense.value,
        "optimum": encode_scalar(report.value),
        "complete": report.complete,
        "solution_set": solution_set_to_dict(report.solution_set),
        "witness": encode_vector(report.witness),
        "diagnostics": list(report.diagnostics),
    }


def parse_report(doc: Any, settings: Settings | None = None) -> ReportFile:
    if not isinstance(doc, dict):
        raise SchemaError("document", "a report document must be a JSON object")
    try:
        sf = Semifield.create(_enum(SemifieldId, doc["semifield"], "semifield"), settings)
        form = _enum(ProblemForm, doc["problem"], "problem")
        report = OptimumReport(
            value=decode_scalar(sf, doc["optimum"], "optimum"),
            solution_set=solution_set_from_dict(sf, doc["solution_set"]),
            witness=decode_vector(sf, doc["witness"], "witness"),
            sense=_enum(Sense, doc["sense"], "sense"),
            complete=bool(doc.get("complete", True)),
            diagnostics=tuple(doc.get("diagnostics", ())),
        )
    except KeyError as exc:
        raise SchemaError("document", f"report is missing {exc}") from exc
    return ReportFile(sf, form, report)


# -- matrix documents and I/O --------------------------------------------------


def parse_matrix_document(
    doc: Any, environ: Mapping[str, str] | None = None
) -> TropMatrix:
    """A bare array of rows (max-plus) or ``{"semifield": ..., "matrix": [...]}``."""
    settings = Settings.from_env(environ)
    if isinstance(doc, list):
        return decode_matrix(Semifield.create(SemifieldId.MAX_PLUS, settings), doc, "matrix")
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise SchemaError("document", "expected an array of rows or an object with 'matrix'")
    sid = _enum(SemifieldId, doc.get("semifield", SemifieldId.MAX_PLUS.value), "semifield")
    return decode_matrix(Semifield.create(sid, settings), doc["matrix"], "matrix")


def load_json(path: str | Path) -> Any:
    """Read a UTF-8 JSON file; decoding problems become :class:`SchemaError`."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError("file", f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("json", f"{path}: invalid JSON: {exc}") from exc


def dumps(doc: Any) -> str:
    """Canonical text of a document: sorted keys, two-space indent."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)
