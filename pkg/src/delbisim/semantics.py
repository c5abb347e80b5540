"""Truth evaluation of formulas in pointed models.

Existential modalities pick witnesses in canonical model order and stop at
the first success.  Guards of the guarded modalities are evaluated in the
model as it is *before* the deletion; the deletion then produces the model
in which the body is evaluated.
"""

from __future__ import annotations

from .formula import (
    And,
    Atom,
    Bot,
    Box,
    Dia,
    Formula,
    GRem,
    GRemBox,
    GSab,
    GSabBox,
    Imp,
    Not,
    Or,
    Rem,
    RemBox,
    Sab,
    SabBox,
    Top,
)
from .model import KripkeModel, PointedModel, delete_edge, delete_point


class UndeclaredAtomError(ValueError):
    """The formula mentions a proposition the model does not declare."""


def evaluate(pm: PointedModel, f: Formula, cache: dict | None = None) -> bool:
    """Truth of ``f`` at the pointed model.

    ``cache`` may be a dict reused across calls on the same formula object;
    it is keyed by (model, world, subformula identity) and never changes the
    result.  The formula object must stay alive while the cache is in use.
    """
    return _ev(pm.model, pm.point, f, cache)


def _ev(m: KripkeModel, w: str, f: Formula, cache: dict | None) -> bool:
    if cache is not None:
        key = (m, w, id(f))
        hit = cache.get(key)
        if hit is not None:
            return hit
    result = _clause(m, w, f, cache)
    if cache is not None:
        cache[key] = result
    return result


def _clause(m: KripkeModel, w: str, f: Formula, cache) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Atom):
        if f.name not in m.propositions:
            raise UndeclaredAtomError(f"atom {f.name!r} is not declared in the model")
        return m.true_at(f.name, w)
    if isinstance(f, Not):
        return not _ev(m, w, f.body, cache)
    if isinstance(f, And):
        return _ev(m, w, f.left, cache) and _ev(m, w, f.right, cache)
    if isinstance(f, Or):
        return _ev(m, w, f.left, cache) or _ev(m, w, f.right, cache)
    if isinstance(f, Imp):
        return (not _ev(m, w, f.left, cache)) or _ev(m, w, f.right, cache)
    if isinstance(f, Dia):
        return any(_ev(m, v, f.body, cache) for v in m.successors(w))
    if isinstance(f, Box):
        return all(_ev(m, v, f.body, cache) for v in m.successors(w))
    if isinstance(f, Sab):
        return any(_ev(delete_edge(m, e), w, f.body, cache) for e in m.edges)
    if isinstance(f, SabBox):
        return all(_ev(delete_edge(m, e), w, f.body, cache) for e in m.edges)
    if isinstance(f, GSab):
        return any(
            _ev(m, u, f.source, cache)
            and _ev(m, v, f.target, cache)
            and _ev(delete_edge(m, (u, v)), w, f.body, cache)
            for u, v in m.edges
        )
    if isinstance(f, GSabBox):
        return all(
            not (_ev(m, u, f.source, cache) and _ev(m, v, f.target, cache))
            or _ev(delete_edge(m, (u, v)), w, f.body, cache)
            for u, v in m.edges
        )
    if isinstance(f, Rem):
        return any(
            _ev(delete_point(m, v), w, f.body, cache)
            for v in m.worlds
            if v != w
        )
    if isinstance(f, RemBox):
        return all(
            _ev(delete_point(m, v), w, f.body, cache)
            for v in m.worlds
            if v != w
        )
    if isinstance(f, GRem):
        return any(
            _ev(m, v, f.guard, cache) and _ev(delete_point(m, v), w, f.body, cache)
            for v in m.worlds
            if v != w
        )
    if isinstance(f, GRemBox):
        return all(
            not _ev(m, v, f.guard, cache)
            or _ev(delete_point(m, v), w, f.body, cache)
            for v in m.worlds
            if v != w
        )
    raise TypeError(f"not a formula node: {f!r}")
