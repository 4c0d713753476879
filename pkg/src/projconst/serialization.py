"""JSON encoding of the library's value types.

Field order is fixed and every real is written with 17 significant digits,
so floats round-trip bit for bit and equal inputs give identical bytes.
Complex scalars are written as ``[re, im]``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Complex, Integral, Real

from .designer import MIXED, PURE_SINGULAR, ExampleCertificate
from .errors import MalformedInput
from .functional import ExtendedVector, HyperplaneFunctional
from .projection_norm import NormReport
from .solver import GapSequence, SolverResult


def format_real(x) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Integral):
        return str(int(x))
    value = float(x)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    return format(value, ".17g")


def dumps(obj, indent: int | None = None, _level: int = 0) -> str:
    """Serialize dicts, sequences and scalars with the fixed number format."""
    if indent is None:
        sep, pad, pad_end = ", ", "", ""
    else:
        sep = ","
        pad = "\n" + " " * (indent * (_level + 1))
        pad_end = "\n" + " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Real):
        return format_real(obj)
    if isinstance(obj, Complex):
        z = complex(obj)
        return f"[{format_real(z.real)}, {format_real(z.imag)}]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + pad_end + "}"
    if isinstance(obj, (list, tuple)):
        # numeric lists stay on one line
        return "[" + ", ".join(dumps(v, None) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def functional_to_obj(f: HyperplaneFunctional) -> dict:
    return {"h": list(f.atomic), "gamma": f.gamma, "attains": f.singular_attains}


def vector_to_obj(y: ExtendedVector) -> dict:
    return {"y": list(y.prefix), "t": y.tail_mag, "s": y.tail_pair}


def norm_report_to_obj(r: NormReport) -> dict:
    return {"per_coord": list(r.per_coord), "tail_value": r.tail_value, "norm": r.norm, "pairing": r.pairing}


def solver_result_to_obj(r: SolverResult) -> dict:
    return {
        "lambda": r.lam,
        "attained": r.attained,
        "minimizer": vector_to_obj(r.minimizer) if r.minimizer is not None else None,
        "iterations": r.iterations,
        "tolerance": r.tolerance,
    }


def gaps_to_obj(g: GapSequence) -> dict:
    return {"levels": list(g.levels), "gaps": list(g.gaps)}


def certificate_to_obj(c: ExampleCertificate) -> dict:
    return {
        "target": c.target,
        "kind": c.kind,
        "n": c.n,
        "a": c.a,
        "b": c.b,
        "functional": functional_to_obj(c.functional),
        "lambda_closed_form": c.lambda_closed_form,
        "lambda_solver": c.lambda_solver,
        "gaps": gaps_to_obj(c.gap_evidence),
        "tolerance": c.tolerance,
    }


def _scalar(v, where: str):
    if isinstance(v, bool) or v is None:
        raise MalformedInput(f"{where}: expected a number, got {v!r}")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, list) and len(v) == 2 and all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in v
    ):
        return complex(v[0], v[1])
    raise MalformedInput(f"{where}: expected a number or [re, im], got {v!r}")


def _real(v, where: str):
    x = _scalar(v, where)
    if isinstance(x, complex):
        raise MalformedInput(f"{where}: expected a real number, got {v!r}")
    return x


def _require(obj, keys, where: str) -> None:
    if not isinstance(obj, dict):
        raise MalformedInput(f"{where}: expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise MalformedInput(f"{where}: missing field(s) {', '.join(missing)}")


def functional_from_obj(obj) -> HyperplaneFunctional:
    _require(obj, ("h", "gamma"), "functional")
    if not isinstance(obj["h"], list):
        raise MalformedInput("functional: h must be a list")
    h = tuple(_scalar(v, f"functional.h[{i}]") for i, v in enumerate(obj["h"]))
    gamma = _real(obj["gamma"], "functional.gamma")
    attains = obj.get("attains", gamma == 0)
    if not isinstance(attains, bool):
        raise MalformedInput("functional: attains must be a boolean")
    return HyperplaneFunctional(h, gamma, attains)


def vector_from_obj(obj) -> ExtendedVector:
    _require(obj, ("y",), "vector")
    if not isinstance(obj["y"], list):
        raise MalformedInput("vector: y must be a list")
    y = tuple(_scalar(v, f"vector.y[{i}]") for i, v in enumerate(obj["y"]))
    t = _real(obj.get("t", 0), "vector.t")
    s = _scalar(obj.get("s", 0), "vector.s")
    return ExtendedVector(y, t, s)


def gaps_from_obj(obj) -> GapSequence:
    _require(obj, ("levels", "gaps"), "gaps")
    levels, gaps = obj["levels"], obj["gaps"]
    if not isinstance(levels, list) or not all(isinstance(m, int) and not isinstance(m, bool) for m in levels):
        raise MalformedInput("gaps: levels must be a list of integers")
    if not isinstance(gaps, list):
        raise MalformedInput("gaps: gaps must be a list")
    return GapSequence(tuple(levels), tuple(_real(d, "gaps.gaps") for d in gaps))


def certificate_from_obj(obj) -> ExampleCertificate:
    keys = ("target", "kind", "functional", "lambda_closed_form", "lambda_solver", "gaps", "tolerance")
    _require(obj, keys, "certificate")
    kind = obj["kind"]
    if kind not in (MIXED, PURE_SINGULAR):
        raise MalformedInput(f"certificate: unknown kind {kind!r}")
    params = {}
    for key in ("n", "a", "b"):
        v = obj.get(key)
        if kind == MIXED and v is None:
            raise MalformedInput(f"certificate: mixed kind needs {key}")
        if v is not None:
            params[key] = _real(v, f"certificate.{key}")
    if "n" in params and not isinstance(params["n"], int):
        raise MalformedInput("certificate: n must be an integer")
    if "a" in params:
        params["a"] = float(params["a"])
    if "b" in params:
        params["b"] = float(params["b"])
    return ExampleCertificate(
        target=_real(obj["target"], "certificate.target"),
        kind=kind,
        functional=functional_from_obj(obj["functional"]),
        lambda_closed_form=_real(obj["lambda_closed_form"], "certificate.lambda_closed_form"),
        lambda_solver=_real(obj["lambda_solver"], "certificate.lambda_solver"),
        gap_evidence=gaps_from_obj(obj["gaps"]),
        tolerance=float(_real(obj["tolerance"], "certificate.tolerance")),
        **params,
    )


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
