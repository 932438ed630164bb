"""Model file format: JSON documents describing empirical models.

Layout::

    {
      "scenario": [[2, 2], [2, 2]],          # per site: outcome count per measurement
      "kind": "probability",                  # or "possibility"
      "tables": {"0,0": [0.5, 0, 0, 0.5], ...}
    }

Table rows are flat, row-major with site 0 most significant.  Probability
entries accept JSON numbers or exact strings like ``"1/2"``; integers and
strings parse to exact rationals, floats stay floats.  Possibility entries
are 0/1.  Parsing rejects unnormalized probability rows (beyond 1e-9) and
out-of-range context keys or row lengths.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from numbers import Rational
from pathlib import Path

from .errors import NonlocalityError, ParseError, ValidationError
from .models import PossibilityModel, ProbabilityModel
from .scenario import Scenario, context_key, parse_context_key

KINDS = ("probability", "possibility")


def _encode_value(value):
    if isinstance(value, bool):
        return 1 if value else 0
    if isinstance(value, Rational) and not isinstance(value, float):
        return str(Fraction(value))
    return float(value)


def _decode_probability(raw, where: str):
    if isinstance(raw, bool):
        raise ValidationError(f"boolean probability entry at {where}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        return raw
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational {raw!r} at {where}") from exc
    raise ValidationError(f"bad probability entry {raw!r} at {where}")


def _decode_possibility(raw, where: str):
    if isinstance(raw, bool):
        return raw
    if isinstance(raw, int) and raw in (0, 1):
        return bool(raw)
    raise ValidationError(f"possibility entries must be 0 or 1, got {raw!r} at {where}")


def model_to_dict(model) -> dict:
    kind = "possibility" if isinstance(model, PossibilityModel) else "probability"
    tables = {}
    for context in model.scenario.contexts():
        tables[context_key(context)] = [_encode_value(v) for v in model.table[context]]
    return {
        "scenario": [list(counts) for counts in model.scenario.outcomes],
        "kind": kind,
        "tables": tables,
    }


def model_from_dict(document: dict):
    if not isinstance(document, dict):
        raise ParseError("model document must be an object")
    for field in ("scenario", "kind", "tables"):
        if field not in document:
            raise ParseError(f"missing field {field!r}")
    kind = document["kind"]
    if kind not in KINDS:
        raise ValidationError(f"kind must be one of {KINDS}, got {kind!r}")
    try:
        scenario = Scenario(
            tuple(tuple(int(c) for c in counts) for counts in document["scenario"])
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad scenario field: {exc}") from exc
    except NonlocalityError as exc:
        raise ValidationError(f"bad scenario: {exc}") from exc

    raw_tables = document["tables"]
    if not isinstance(raw_tables, dict):
        raise ParseError("tables must be an object keyed by context")
    table = {}
    for key, row in raw_tables.items():
        try:
            context = parse_context_key(key)
        except ValueError as exc:
            raise ParseError(f"bad context key {key!r}") from exc
        try:
            context = scenario.validate_context(context)
        except NonlocalityError as exc:
            raise ValidationError(str(exc)) from exc
        if not isinstance(row, list):
            raise ParseError(f"table row for {key!r} must be a list")
        if kind == "probability":
            values = tuple(_decode_probability(v, f"{key}[{i}]") for i, v in enumerate(row))
        else:
            values = tuple(_decode_possibility(v, f"{key}[{i}]") for i, v in enumerate(row))
        table[context] = values
    try:
        if kind == "probability":
            return ProbabilityModel(scenario, table)
        return PossibilityModel(scenario, table)
    except NonlocalityError as exc:
        raise ValidationError(str(exc)) from exc


def dumps(model, indent: int | None = 2) -> str:
    return json.dumps(model_to_dict(model), indent=indent, sort_keys=True)


def loads(text: str):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"model file is not valid JSON: {exc}") from exc
    return model_from_dict(document)


def save(model, path) -> None:
    Path(path).write_text(dumps(model) + "\n", encoding="utf-8")


def load(path):
    return loads(Path(path).read_text(encoding="utf-8"))


def canonical_json(model) -> str:
    """Deterministic compact serialization used for hashing and censuses."""
    return json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":"))


def model_hash(model) -> str:
    return hashlib.sha256(canonical_json(model).encode("utf-8")).hexdigest()
