"""Model files and JSON reports.

A model file is a JSON object::

    {"degree": 3, "coeffs": ["1", "0", "-3/2", ...], "prime": 5, "options": {...}}

Coefficients are integers or strings ``"num/den"``; they are printed back as
reduced strings so that parse/print is the identity on printed files.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import as_rat
from .models import NCOEFFS, GenusOneEquation, transformation_to_json

SCHEMA_VERSION = "g1min.report/1"
MODEL_SCHEMA = "g1min.model/1"


class ModelFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ModelFile:
    equation: GenusOneEquation
    prime: Optional[int] = None
    options: dict = field(default_factory=dict)


def q(x) -> str:
    return str(as_rat(x))


def parse_coefficient(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ModelFormatError(f"coefficient {x!r} must be an integer or a 'num/den' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelFormatError(f"bad coefficient {x!r}") from exc


def model_from_dict(d: dict) -> ModelFile:
    if not isinstance(d, dict):
        raise ModelFormatError("model file must hold a JSON object")
    deg = d.get("degree")
    if deg not in NCOEFFS:
        raise ModelFormatError(f"degree must be one of 1, 2, 3, 4, got {deg!r}")
    cs = d.get("coeffs")
    if not isinstance(cs, list) or len(cs) != NCOEFFS[deg]:
        raise ModelFormatError(f"degree {deg} needs a list of {NCOEFFS[deg]} coefficients")
    prime = d.get("prime")
    if prime is not None and (not isinstance(prime, int) or isinstance(prime, bool)):
        raise ModelFormatError("prime must be an integer")
    opts = d.get("options", {})
    if not isinstance(opts, dict):
        raise ModelFormatError("options must be an object")
    eq = GenusOneEquation(deg, tuple(parse_coefficient(c) for c in cs))
    return ModelFile(eq, prime, dict(opts))


def model_to_dict(m) -> dict:
    if isinstance(m, GenusOneEquation):
        m = ModelFile(m)
    out = {"degree": m.equation.degree, "coeffs": [q(c) for c in m.equation.coeffs]}
    if m.prime is not None:
        out["prime"] = m.prime
    if m.options:
        out["options"] = m.options
    return out


def loads(text: str) -> ModelFile:
    try:
        return model_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc


def dumps(m) -> str:
    return json.dumps(model_to_dict(m), sort_keys=True, indent=2) + "\n"


def load(path) -> ModelFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ---------------------------------------------------------------------------
# report payloads


def invariants_payload(inv) -> dict:
    return {"c4": q(inv.c4), "c6": q(inv.c6), "disc": q(inv.disc)}


def fiber_payload(cls, pos) -> dict:
    out = {"class": cls.kind.name, "label": cls.label, "param": cls.param}
    if pos is not None:
        out["position"] = {"transformation": transformation_to_json(pos.transformation),
                           "equation": model_to_dict(pos.equation)}
    return out


def verdict_payload(v) -> dict:
    return {"is_normal": v.is_normal, "criterion": v.criterion, "witness": v.witness}


def move_payload(mv) -> dict:
    return {"tag": mv.tag, "k": mv.k, "transformation": transformation_to_json(mv.transformation)}


def certificate_payload(cert) -> dict:
    return {
        "prime": cert.prime,
        "input": model_to_dict(cert.input),
        "moves": [move_payload(m) for m in cert.moves],
        "disc_valuations": list(cert.valuations),
        "final": model_to_dict(cert.final),
        "level": cert.level,
        "status": cert.status.value,
        "input_status": cert.input_status.value,
        "is_minimal": cert.is_minimal,
        "hint": cert.hint,
        "transformation": transformation_to_json(cert.transformation),
    }


def global_payload(gc) -> dict:
    return {
        "input": model_to_dict(gc.input),
        "final": model_to_dict(gc.final),
        "local": {str(p): certificate_payload(c) for p, c in sorted(gc.local.items())},
        "transformation": transformation_to_json(gc.transformation),
        "disc_final": q(gc.delta_final),
        "disc_min": q(gc.delta_min),
        "certified": gc.certified,
    }


def report(command: list, result, exit_code: int) -> str:
    body = {"schema": SCHEMA_VERSION, "command": command, "result": result, "exit": exit_code}
    return json.dumps(body, sort_keys=True, indent=2)
