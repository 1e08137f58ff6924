"""JSON fixture format shared by every module.

Rationals are strings ``"p/q"`` (``"p"`` when ``q == 1``); matrices are
``{"rows", "cols", "entries"}`` with row-major entries; phase vectors are the
2n coordinates ``p_1..p_n, q_1..q_n``.  Every fixture carries a ``kind``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Sequence

from .errors import NotInSp, SchemaError
from .linalg import ExactMatrix, as_rational
from .scheme import ACVPoint, DimensionCertificate
from .symplectic import PhaseVector, SpElement, SymplecticSpace
from .triangular import BorelCertificate


def rational_to_json(q: Fraction) -> str:
    return str(q)


def rational_from_json(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"expected rational string, got {s!r}")
    try:
        return as_rational(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def vector_to_json(v: Sequence[Fraction]) -> list[str]:
    return [rational_to_json(c) for c in v]


def vector_from_json(data: Any) -> tuple[Fraction, ...]:
    if not isinstance(data, list):
        raise SchemaError("expected a list of rationals")
    return tuple(rational_from_json(c) for c in data)


def matrix_to_json(m: ExactMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": vector_to_json(m.entries)}


def matrix_from_json(data: Any) -> ExactMatrix:
    try:
        rows, cols, entries = data["rows"], data["cols"], data["entries"]
    except (KeyError, TypeError) as exc:
        raise SchemaError("matrix needs rows, cols and entries") from exc
    if not isinstance(rows, int) or not isinstance(cols, int):
        raise SchemaError("rows and cols must be integers")
    values = vector_from_json(entries)
    if len(values) != rows * cols:
        raise SchemaError(f"matrix declares {rows}x{cols} but has {len(values)} entries")
    return ExactMatrix(rows, cols, values)


def sp_from_json(space: SymplecticSpace, data: Any) -> SpElement:
    m = matrix_from_json(data)
    try:
        return SpElement(space, m)
    except NotInSp as exc:
        raise SchemaError(str(exc)) from exc


def point_to_json(pt: ACVPoint) -> dict:
    return {
        "kind": "acv_point",
        "n": pt.n,
        "x": matrix_to_json(pt.x.mat),
        "y": matrix_to_json(pt.y.mat),
        "i": vector_to_json(pt.i.vec),
    }


def point_from_json(data: dict) -> ACVPoint:
    try:
        n = data["n"]
        space = SymplecticSpace(n)
        x = sp_from_json(space, data["x"])
        y = sp_from_json(space, data["y"])
        i = vector_from_json(data["i"])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"ACV point fixture incomplete: {exc}") from exc
    if len(i) != 2 * n:
        raise SchemaError("i must have 2n coordinates")
    return ACVPoint(x, y, PhaseVector.from_vector(space, i))


def canonical_dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def point_digest(pt: ACVPoint) -> str:
    return hashlib.sha256(canonical_dumps(point_to_json(pt)).encode()).hexdigest()


def certificate_to_json(cert: DimensionCertificate) -> dict:
    return {
        "kind": "dimension_certificate",
        "point_digest": point_digest(cert.point),
        "point": point_to_json(cert.point),
        "jacobian_rank": cert.jacobian_rank,
        "ambient_dim": cert.ambient_dim,
        "variety_dim": cert.local_dim,
        "stabilizer_dim": cert.stabilizer_dim,
        "verdict": "smooth" if cert.verdict else "no-claim",
    }


def borel_to_json(cert: BorelCertificate) -> dict:
    return {
        "kind": "borel_certificate",
        "n": cert.x.space.n,
        "x": matrix_to_json(cert.x.mat),
        "y": matrix_to_json(cert.y.mat),
        "g": matrix_to_json(cert.g),
        "x_conj": matrix_to_json(cert.x_conj.mat),
        "y_conj": matrix_to_json(cert.y_conj.mat),
        "flag": [vector_to_json(v) for v in cert.flag],
    }


def borel_parts_from_json(data: dict) -> dict:
    """Raw matrices of a stored Borel certificate.

    Nothing is validated beyond parsing, so tampered files still load and
    then fail verification with a named violation.
    """
    try:
        n = data["n"]
        parts = {name: matrix_from_json(data[name]) for name in ("g", "x", "y", "x_conj", "y_conj")}
        parts["flag"] = tuple(vector_from_json(v) for v in data.get("flag", []))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"Borel certificate incomplete: {exc}") from exc
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    parts["space"] = SymplecticSpace(n)
    return parts
