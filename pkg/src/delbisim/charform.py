"""Characteristic formulas and the formula-based bisimilarity check.

Every world ``x`` of the source model gets a reserved tag atom ``@x``.  The
description formula conjoins, for each world, an implication from its tag to
its literal profile and to its successor environment.  The characteristic
formula for a deletion kind then adds, per deletion-sequence length, an
existential clause for every sequence of pairwise-distinct items and a
universal clause, closing with a clause forbidding one deletion too many.

Sub-formulas for a given deleted item set are shared, so the result is a
DAG; printing it materializes the tree and can be large.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .bisim import EDGE_KINDS, POINT_KINDS, check
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
from .model import (
    DeletionSequence,
    KripkeModel,
    ModelError,
    PointedModel,
    SizeGuardError,
)
from .oracle import DEFAULT_MAX_EDGES, DEFAULT_MAX_WORLDS
from .semantics import evaluate

FRESH_PREFIX = "@"

DEFAULT_EDGE_GUARD = 3
DEFAULT_WORLD_GUARD = 3


def fresh_atom(world: str) -> str:
    return FRESH_PREFIX + world


def big_and(parts: list[Formula]) -> Formula:
    if not parts:
        return Top()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def big_or(parts: list[Formula]) -> Formula:
    if not parts:
        return Bot()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def build_E(m: KripkeModel) -> Formula:
    """The world-description formula: tag -> literal profile and environment."""
    conjuncts = []
    for x in m.worlds:
        literals = [
            Atom(p) if m.true_at(p, x) else Not(Atom(p)) for p in m.propositions
        ]
        succ = m.successors(x)
        env = And(
            big_and([Dia(Atom(fresh_atom(y))) for y in succ]),
            Box(big_or([Atom(fresh_atom(y)) for y in succ])),
        )
        conjuncts.append(Imp(Atom(fresh_atom(x)), And(big_and(literals), env)))
    return big_and(conjuncts)


def _nest(wrap, k: int, body: Formula) -> Formula:
    for _ in range(k):
        body = wrap(body)
    return body


def _guard_check(kind, m, edge_guard, world_guard):
    if kind in EDGE_KINDS and len(m.edges) > edge_guard:
        raise SizeGuardError(
            f"characteristic formula guard exceeded: |R|={len(m.edges)} > {edge_guard}"
        )
    if kind in POINT_KINDS and len(m.worlds) > world_guard:
        raise SizeGuardError(
            f"characteristic formula guard exceeded: |W|={len(m.worlds)} > {world_guard}"
        )
    if kind not in EDGE_KINDS and kind not in POINT_KINDS:
        raise ValueError(f"no characteristic formula for kind {kind!r}")


def _char_layers(kind: str, m: KripkeModel):
    """The per-length clause lists: (base, [(existential, universal)], last).

    Sequences of deleted items are enumerated in canonical order; the model
    reached by a sequence depends only on the item set, so its description
    formula is built once and shared.
    """
    if kind in EDGE_KINDS:
        items = m.edges
        seq_kind = "edge"
        n = len(items)
        pair_lengths = range(1, n + 1)
        last_len = n + 1
    else:
        items = m.worlds
        seq_kind = "world"
        n = len(items)
        pair_lengths = range(1, n)
        last_len = n
    e_cache: dict[frozenset, Formula] = {}

    def e_of(deleted: tuple) -> Formula:
        key = frozenset(deleted)
        if key not in e_cache:
            e_cache[key] = build_E(DeletionSequence(seq_kind, deleted).apply(m))
        return e_cache[key]

    def ex_chain(seq, body):
        if kind == "s":
            return _nest(Sab, len(seq), body)
        if kind == "d":
            return _nest(Rem, len(seq), body)
        if kind == "g":
            for u, v in reversed(seq):
                body = GSab(Atom(fresh_atom(u)), Atom(fresh_atom(v)), body)
            return body
        for u in reversed(seq):
            body = GRem(Atom(fresh_atom(u)), body)
        return body

    def univ_chain(seq, body):
        if kind == "s":
            return _nest(SabBox, len(seq), body)
        if kind == "d":
            return _nest(RemBox, len(seq), body)
        if kind == "g":
            for u, v in reversed(seq):
                body = GSabBox(Atom(fresh_atom(u)), Atom(fresh_atom(v)), body)
            return body
        for u in reversed(seq):
            body = GRemBox(Atom(fresh_atom(u)), body)
        return body

    layers = []
    for k in pair_lengths:
        seqs = list(permutations(items, k))
        existential = [ex_chain(seq, e_of(seq)) for seq in seqs]
        disjunction = big_or([e_of(seq) for seq in seqs])
        if kind in ("s", "d"):
            universal = [univ_chain(seqs[0], disjunction)]
        else:
            # Guarded universal chains mention the sequence's own tags, so
            # one clause is needed per sequence.
            universal = [univ_chain(seq, disjunction) for seq in seqs]
        layers.append((existential, universal))

    if kind == "s":
        last = Not(_nest(Sab, last_len, Top()))
    elif kind == "g":
        last = Not(_nest(lambda f: GSab(Top(), Top(), f), last_len, Top()))
    elif kind == "d":
        last = Not(_nest(Rem, last_len, Top()))
    else:
        last = Not(_nest(lambda f: GRem(Top(), f), last_len, Top()))

    return e_of(()), layers, last


def build_char(
    kind: str,
    m: KripkeModel,
    edge_guard: int = DEFAULT_EDGE_GUARD,
    world_guard: int = DEFAULT_WORLD_GUARD,
) -> Formula:
    """The kind's characteristic formula of ``m`` (a shared-subterm DAG)."""
    _guard_check(kind, m, edge_guard, world_guard)
    base, layers, last = _char_layers(kind, m)
    parts = [base]
    for existential, universal in layers:
        parts.append(big_and(existential + universal))
    parts.append(last)
    return big_and(parts)


@dataclass(frozen=True)
class ExpandedModel:
    """A target model extended with the source model's tag atoms."""

    base: PointedModel
    fresh_valuation: tuple[tuple[str, tuple[str, ...]], ...]
    expanded: PointedModel


def canonical_expansion(
    kind: str,
    m: PointedModel,
    n: PointedModel,
    max_worlds: int = DEFAULT_MAX_WORLDS,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> ExpandedModel:
    """Expand ``n`` with tags: ``@x`` holds at u iff (m,x) is kind-bisimilar
    to (n,u).

    Initial-language propositions of ``m`` that ``n`` does not declare are
    declared false everywhere, mirroring the checkers' atom convention.
    """
    for pm in (m, n):
        if len(pm.model.worlds) > max_worlds or len(pm.model.edges) > max_edges:
            raise SizeGuardError(
                f"expansion guard exceeded: |W|={len(pm.model.worlds)} "
                f"|R|={len(pm.model.edges)} (limits {max_worlds}/{max_edges})"
            )
    fresh = {fresh_atom(x) for x in m.model.worlds}
    declared = set(m.model.propositions) | set(n.model.propositions)
    clash = sorted(fresh & declared)
    if clash:
        raise ModelError(f"tag atoms collide with declared propositions: {clash}")
    fresh_val = []
    for x in m.model.worlds:
        members = tuple(
            u
            for u in n.model.worlds
            if check(kind, PointedModel(m.model, x), PointedModel(n.model, u)).answer
        )
        fresh_val.append((fresh_atom(x), members))
    valuation = {p: ws for p, ws in n.model.valuation}
    valuation.update({p: () for p in m.model.propositions if p not in valuation})
    valuation.update(dict(fresh_val))
    model = KripkeModel.make(
        n.model.worlds,
        n.model.edges,
        sorted(declared | fresh),
        valuation,
    )
    return ExpandedModel(
        base=n,
        fresh_valuation=tuple(fresh_val),
        expanded=PointedModel.make(model, n.point),
    )


def char_check(
    kind: str,
    m: PointedModel,
    n: PointedModel,
    edge_guard: int = DEFAULT_EDGE_GUARD,
    world_guard: int = DEFAULT_WORLD_GUARD,
    max_worlds: int = DEFAULT_MAX_WORLDS,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> bool:
    """Truth of (characteristic formula of m) and m's point tag on the
    canonically expanded n; equivalent to the kind's bisimilarity verdict.

    A size mismatch (edge count for s/g, world count for d/r) short-circuits
    to false, which the terminal clause would enforce in one direction only.
    """
    _guard_check(kind, m.model, edge_guard, world_guard)
    _guard_check(kind, n.model, edge_guard, world_guard)
    if kind in EDGE_KINDS and len(m.model.edges) != len(n.model.edges):
        return False
    if kind in POINT_KINDS and len(m.model.worlds) != len(n.model.worlds):
        return False
    char = build_char(kind, m.model, edge_guard, world_guard)
    expansion = canonical_expansion(kind, m, n, max_worlds, max_edges)
    goal = And(char, Atom(fresh_atom(m.point)))
    return evaluate(expansion.expanded, goal, cache={})
