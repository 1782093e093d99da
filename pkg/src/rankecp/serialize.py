"""JSON forms of fields, codes, pairs, polynomials and decode outcomes.

Elements are always their integer encodings, matrices are lists of rows.
"""
from __future__ import annotations

import json
from typing import Any

from .codes import ExtLinearCode, MatrixCode
from .decoder import Certificate, DecodeOutcome, RankPair
from .errors import ParameterError
from .fields import Basis, FieldTower, make_base_field, tower_from_descriptor
from .linearized import LinPoly
from .star import StarContext


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, no trailing spaces)."""
    return json.dumps(obj, sort_keys=True, indent=2)


def field_to_json(tower: FieldTower) -> dict:
    return tower.descriptor()


def field_from_json(d: dict) -> FieldTower:
    _require(d, "q")
    return tower_from_descriptor(d)


def code_to_json(code) -> dict:
    if isinstance(code, ExtLinearCode):
        d = {"field": code.tower.descriptor(), "n": code.n, "kind": "ext",
             "basis_used": "alpha", "generators": [list(g) for g in code.gens]}
        if code.level != "ext":
            d["level"] = code.level
        return d
    if isinstance(code, MatrixCode):
        fd = {"q": code.q, "m": code.rows}
        if code.field.base is not None:
            fd["base_modulus"] = list(code.field.modulus)
        return {"field": fd, "n": code.cols, "kind": "matrix", "basis_used": code.basis_used,
                "generators": code.matrices()}
    raise TypeError(f"cannot serialise {type(code).__name__}")


def code_from_json(d: dict):
    for key in ("field", "n", "kind", "generators"):
        _require(d, key)
    if d["kind"] == "ext":
        tower = field_from_json(d["field"])
        return ExtLinearCode(tower, d["n"], d["generators"], d.get("level", "ext"))
    if d["kind"] == "matrix":
        fd = d["field"]
        bm = fd.get("base_modulus")
        F = make_base_field(fd["q"], tuple(bm) if bm else None)
        return MatrixCode(F, fd["m"], d["n"], d["generators"], d.get("basis_used", "alpha"))
    raise ParameterError(f"unknown code kind {d['kind']!r}")


def poly_to_json(P: LinPoly) -> dict:
    return P.to_json()


def poly_from_json(d: dict, field, q: int) -> LinPoly:
    return LinPoly(field, q, tuple(d.get("coeffs", ())), d.get("r", 1))


def _ctx_to_json(ctx: StarContext, tower: FieldTower) -> dict:
    level = "ext" if ctx.field.key == tower.ext.key else "top"
    d = {"basis": list(ctx.basis.elements), "n": ctx.n, "level": level}
    if ctx.phi_matrix is not None:
        d["phi"] = ctx.phi_matrix
    return d


def pair_to_json(pair: RankPair) -> dict:
    d = {"kind": pair.kind, "t": pair.t, "role": pair.role, "use_phi": pair.use_phi,
         "A": code_to_json(pair.A), "B": code_to_json(pair.B), "C": code_to_json(pair.C),
         "meta": pair.meta}
    if pair.kind == "I":
        d["star"] = _ctx_to_json(pair.ctx, pair.A.tower)
    if pair.embed_basis is not None:
        d["embed_basis"] = list(pair.embed_basis.elements)
    return d


def pair_from_json(d: dict) -> RankPair:
    for key in ("kind", "t", "A", "B", "C"):
        _require(d, key)
    A, B, C = (code_from_json(d[k]) for k in ("A", "B", "C"))
    ctx = None
    embed = None
    if d["kind"] == "I":
        _require(d, "star")
        s = d["star"]
        tower = A.tower
        L = tower.level(s.get("level", "ext"))
        ctx = StarContext(Basis(L, tower.base, s["basis"]), s["n"], s.get("phi"), tower)
    if d.get("embed_basis") is not None:
        meta = d.get("meta", {})
        _require(meta, "embed_field")
        tower = field_from_json(meta["embed_field"])
        embed = Basis(tower.level(meta.get("embed_level", "ext")), tower.base, d["embed_basis"])
    return RankPair(d["kind"], A, B, C, d["t"], ctx=ctx, use_phi=d.get("use_phi", False),
                    role=d.get("role", "correcting"), meta=d.get("meta", {}), embed_basis=embed)


def support_to_json(S) -> list:
    return [list(v) for v in S.basis] if S is not None else None


def outcome_to_json(out: DecodeOutcome) -> dict:
    def plain(x):
        if x is None:
            return None
        return [plain(v) for v in x] if isinstance(x, (list, tuple)) else int(x)

    return {"status": out.status, "codeword": plain(out.codeword), "error": plain(out.error),
            "support": support_to_json(out.support), "diagnostics": out.diagnostics}


def certificate_to_json(cert: Certificate) -> dict:
    return cert.to_json()


def _require(d, key):
    if not isinstance(d, dict) or key not in d:
        raise ParameterError(f"missing field {key!r}")
