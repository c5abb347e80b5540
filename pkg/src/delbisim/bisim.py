"""Recursive bisimilarity checkers for the four deletion logics.

Kinds:

* ``modal`` -- plain modal bisimilarity, computed as a greatest fixpoint.
* ``s`` -- edge deletion: matched edge deletions restart the visited list.
* ``d`` -- point deletion: matched deletions of non-current worlds.
* ``g`` -- as ``s`` but the matched edges' endpoints must themselves be
  bisimilar in the pre-deletion models.
* ``r`` -- as ``d`` but the deleted worlds must themselves be bisimilar in
  the pre-deletion models.

The recursive checkers mirror their pseudocode shape: an edge-count (s/g) or
world-count (d/r) gate runs first, deletion recursion always starts from an
empty visited list, and modal recursion extends the visited list with the
current pair and skips candidate pairs already in it.

For ``g`` and ``r`` the endpoint side-checks recurse on the *same* submodels
with an empty visited list, which as written never terminates on cyclic
instances (the identity pair on a self-loop immediately re-enters itself).
The checkers therefore keep a set of configurations currently on the call
stack and answer yes on re-entry; this is the usual coinductive discharge
and is cross-validated against the fixpoint oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import KripkeModel, PointedModel, delete_edge, delete_point

KINDS = ("modal", "s", "d", "g", "r")
EDGE_KINDS = ("s", "g")
POINT_KINDS = ("d", "r")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bisimilarity check with recursion statistics.

    ``witness`` is ``None`` on yes; on no it is a nested dict describing the
    first violated condition in canonical order: the condition id, the item
    that could not be matched, the current pair of worlds, the action path
    from the root call, and (``cause``) the failure of the first candidate.
    """

    answer: bool
    max_depth: int
    calls: int
    witness: dict | None

    def to_json(self) -> dict:
        return {
            "answer": "yes" if self.answer else "no",
            "max_depth": self.max_depth,
            "calls": self.calls,
            "witness": self.witness,
        }


class _Stats:
    __slots__ = ("calls", "max_depth")

    def __init__(self):
        self.calls = 0
        self.max_depth = 0


def _atom_mismatch(m1, w1, m2, w2, props):
    for p in props:
        if m1.true_at(p, w1) != m2.true_at(p, w2):
            return p
    return None


class _Checker:
    """One bisimilarity run; holds kind, stats, and the recursion context."""

    def __init__(self, kind, use_cache=False, edge_prop=None, world_prop=None):
        if kind not in ("s", "d", "g", "r"):
            raise ValueError(f"unknown recursive checker kind {kind!r}")
        self.kind = kind
        self.stats = _Stats()
        self.memo = {} if use_cache else None
        self.track_active = kind in ("g", "r")
        self.active: set = set()
        self.edge_prop = edge_prop
        self.world_prop = world_prop
        self.props: list[str] = []

    def run(self, a: PointedModel, b: PointedModel) -> Verdict:
        # deletions never change the proposition set, so the atom-check
        # domain is fixed for the whole run
        self.props = sorted(
            set(a.model.propositions) | set(b.model.propositions)
        )
        ok, wit, _ = self._rec(a.model, a.point, b.model, b.point,
                               frozenset(), 0, ())
        return Verdict(ok, self.stats.max_depth, self.stats.calls, wit)

    # -- deletion domains ---------------------------------------------------

    def _edges(self, m: KripkeModel):
        if self.edge_prop is None:
            return m.edges
        return tuple(e for e in m.edges if m.true_at(self.edge_prop, e[1]))

    def _deletable(self, m: KripkeModel, w: str):
        if self.world_prop is None:
            return tuple(u for u in m.worlds if u != w)
        return tuple(
            u for u in m.worlds if u != w and m.true_at(self.world_prop, u)
        )

    def _gate(self, m: KripkeModel, w: str) -> int:
        if self.kind in EDGE_KINDS:
            return len(self._edges(m))
        if self.world_prop is None:
            return len(m.worlds)
        return len(self._deletable(m, w))

    # -- the recursive check ------------------------------------------------

    def _rec(self, m1, w1, m2, w2, visited, depth, path):
        self.stats.calls += 1
        if depth > self.stats.max_depth:
            self.stats.max_depth = depth
        key = (m1, w1, m2, w2)
        if self.track_active and key in self.active:
            return True, None, {key}
        mkey = (key, visited)
        if self.memo is not None:
            hit = self.memo.get(mkey)
            if hit is not None:
                return hit[0], hit[1], set()
        if self.track_active:
            self.active.add(key)
        try:
            ok, wit, used = self._body(m1, w1, m2, w2, visited, depth, path)
        finally:
            if self.track_active:
                self.active.discard(key)
        used.discard(key)
        if self.memo is not None and not used:
            self.memo[mkey] = (ok, wit)
        return ok, wit, used

    def _body(self, m1, w1, m2, w2, visited, depth, path):
        used: set = set()

        n1, n2 = self._gate(m1, w1), self._gate(m2, w2)
        if n1 != n2:
            cond = "edge-count" if self.kind in EDGE_KINDS else "world-count"
            return False, {"condition": cond, "left": n1, "right": n2,
                           "at": [w1, w2], "path": list(path)}, used

        bad = _atom_mismatch(m1, w1, m2, w2, self.props)
        if bad is not None:
            return False, {"condition": "atom", "prop": bad,
                           "at": [w1, w2], "path": list(path)}, used

        if self.kind in EDGE_KINDS:
            zigzag = self._edge_zigzag
        else:
            zigzag = self._point_zigzag
        for forward in (True, False):
            ok, wit, u = zigzag(m1, w1, m2, w2, depth, path, forward)
            used |= u
            if not ok:
                return False, wit, used

        if (w1, w2) not in visited:
            grown = visited | {(w1, w2)}
            for forward in (True, False):
                ok, wit, u = self._modal_zigzag(
                    m1, w1, m2, w2, grown, depth, path, forward
                )
                used |= u
                if not ok:
                    return False, wit, used

        return True, None, used

    def _edge_zigzag(self, m1, w1, m2, w2, depth, path, forward):
        used: set = set()
        outer, inner = (m1, m2) if forward else (m2, m1)
        for e_out in self._edges(outer):
            first_cause = None
            found = False
            for e_in in self._edges(inner):
                e1, e2 = (e_out, e_in) if forward else (e_in, e_out)
                ok, cause, u = self._match_edges(m1, w1, m2, w2, e1, e2,
                                                 depth, path)
                used |= u
                if ok:
                    found = True
                    break
                if first_cause is None:
                    first_cause = cause
            if not found:
                cond = "zig-del" if forward else "zag-del"
                return False, {"condition": cond, "item": list(e_out),
                               "at": [w1, w2], "path": list(path),
                               "cause": first_cause}, used
        return True, None, used

    def _match_edges(self, m1, w1, m2, w2, e1, e2, depth, path):
        used: set = set()
        if self.kind == "g":
            for i in (0, 1):
                step = path + (["endpoint", e1[i], e2[i]],)
                ok, wit, u = self._rec(m1, e1[i], m2, e2[i],
                                       frozenset(), depth + 1, step)
                used |= u
                if not ok:
                    return False, wit, used
        step = path + (["del", list(e1), list(e2)],)
        ok, wit, u = self._rec(delete_edge(m1, e1), w1, delete_edge(m2, e2),
                               w2, frozenset(), depth + 1, step)
        used |= u
        return ok, wit, used

    def _point_zigzag(self, m1, w1, m2, w2, depth, path, forward):
        used: set = set()
        if forward:
            cand_out, cand_in = self._deletable(m1, w1), self._deletable(m2, w2)
        else:
            cand_out, cand_in = self._deletable(m2, w2), self._deletable(m1, w1)
        for u_out in cand_out:
            first_cause = None
            found = False
            for u_in in cand_in:
                u1, u2 = (u_out, u_in) if forward else (u_in, u_out)
                ok, cause, u = self._match_points(m1, w1, m2, w2, u1, u2,
                                                  depth, path)
                used |= u
                if ok:
                    found = True
                    break
                if first_cause is None:
                    first_cause = cause
            if not found:
                cond = "zig-del" if forward else "zag-del"
                return False, {"condition": cond, "item": u_out,
                               "at": [w1, w2], "path": list(path),
                               "cause": first_cause}, used
        return True, None, used

    def _match_points(self, m1, w1, m2, w2, u1, u2, depth, path):
        used: set = set()
        if self.kind == "r":
            step = path + (["endpoint", u1, u2],)
            ok, wit, u = self._rec(m1, u1, m2, u2, frozenset(), depth + 1, step)
            used |= u
            if not ok:
                return False, wit, used
        step = path + (["del", u1, u2],)
        ok, wit, u = self._rec(delete_point(m1, u1), w1, delete_point(m2, u2),
                               w2, frozenset(), depth + 1, step)
        used |= u
        return ok, wit, used

    def _modal_zigzag(self, m1, w1, m2, w2, grown, depth, path, forward):
        used: set = set()
        if forward:
            succ_out, succ_in = m1.successors(w1), m2.successors(w2)
        else:
            succ_out, succ_in = m2.successors(w2), m1.successors(w1)
        for u_out in succ_out:
            first_cause = None
            found = False
            for u_in in succ_in:
                u1, u2 = (u_out, u_in) if forward else (u_in, u_out)
                # Membership is tested against the grown list: a candidate
                # equal to the current pair would only re-verify the deletion
                # conditions this call just established and then skip its own
                # modal section, so skipping it here returns the same answer
                # without the redundant descent.
                if (u1, u2) in grown:
                    found = True
                    break
                step = path + (["move", u1, u2],)
                ok, cause, u = self._rec(m1, u1, m2, u2, grown,
                                         depth + 1, step)
                used |= u
                if ok:
                    found = True
                    break
                if first_cause is None:
                    first_cause = cause
            if not found:
                cond = "zig-dia" if forward else "zag-dia"
                return False, {"condition": cond, "item": u_out,
                               "at": [w1, w2], "path": list(path),
                               "cause": first_cause}, used
        return True, None, used


def s_bisimilar(a: PointedModel, b: PointedModel, use_cache=False) -> Verdict:
    return _Checker("s", use_cache).run(a, b)


def d_bisimilar(a: PointedModel, b: PointedModel, use_cache=False) -> Verdict:
    return _Checker("d", use_cache).run(a, b)


def g_bisimilar(a: PointedModel, b: PointedModel, use_cache=False) -> Verdict:
    return _Checker("g", use_cache).run(a, b)


def r_bisimilar(a: PointedModel, b: PointedModel, use_cache=False) -> Verdict:
    return _Checker("r", use_cache).run(a, b)


def modal_bisimilar(a: PointedModel, b: PointedModel) -> Verdict:
    """Plain modal bisimilarity via greatest fixpoint on world pairs."""
    m1, m2 = a.model, b.model
    props = sorted(set(m1.propositions) | set(m2.propositions))
    live: set[tuple[str, str]] = set()
    reasons: dict[tuple[str, str], dict] = {}
    checks = 0
    for x in m1.worlds:
        for y in m2.worlds:
            checks += 1
            bad = _atom_mismatch(m1, x, m2, y, props)
            if bad is None:
                live.add((x, y))
            else:
                reasons[(x, y)] = {"condition": "atom", "prop": bad,
                                   "at": [x, y]}
    changed = True
    while changed:
        changed = False
        removed = []
        for x, y in sorted(live):
            checks += 1
            reason = _modal_violation(m1, x, m2, y, live, reasons)
            if reason is not None:
                removed.append((x, y))
                reasons[(x, y)] = reason
        if removed:
            live.difference_update(removed)
            changed = True
    answer = (a.point, b.point) in live
    witness = None if answer else reasons.get((a.point, b.point))
    return Verdict(answer, 0, checks, witness)


def _modal_violation(m1, x, m2, y, live, reasons):
    for u in m1.successors(x):
        if not any((u, v) in live for v in m2.successors(y)):
            succ = m2.successors(y)
            cause = reasons.get((u, succ[0])) if succ else None
            return {"condition": "zig-dia", "item": u, "at": [x, y],
                    "cause": cause}
    for v in m2.successors(y):
        if not any((u, v) in live for u in m1.successors(x)):
            succ = m1.successors(x)
            cause = reasons.get((succ[0], v)) if succ else None
            return {"condition": "zag-dia", "item": v, "at": [x, y],
                    "cause": cause}
    return None


_CHECKERS = {
    "s": s_bisimilar,
    "d": d_bisimilar,
    "g": g_bisimilar,
    "r": r_bisimilar,
}


def check(kind: str, a: PointedModel, b: PointedModel,
          use_cache=False) -> Verdict:
    """Dispatch on the bisimilarity notion."""
    if kind == "modal":
        return modal_bisimilar(a, b)
    if kind not in _CHECKERS:
        raise ValueError(f"unknown bisimilarity kind {kind!r}")
    return _CHECKERS[kind](a, b, use_cache=use_cache)


def filtered_check(kind: str, a: PointedModel, b: PointedModel, *,
                   edge_prop: str | None = None,
                   world_prop: str | None = None) -> Verdict:
    """Checker variant with deletions restricted by a proposition.

    For edge kinds only edges whose target satisfies ``edge_prop`` may be
    deleted; for point kinds only worlds satisfying ``world_prop``.  The
    count gate then compares deletable items instead of raw sizes.  Used by
    the translation correspondence experiments.
    """
    return _Checker(kind, edge_prop=edge_prop, world_prop=world_prop).run(a, b)


def random_model(seed: int, max_worlds: int, max_edges: int,
                 prop_pool: tuple[str, ...] = ("p",)) -> PointedModel:
    """A deterministic random pointed model within the given bounds."""
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    rng = random.Random(seed)
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    candidates = [(u, v) for u in worlds for v in worlds]
    k = rng.randint(0, min(max_edges, len(candidates)))
    edges = rng.sample(candidates, k)
    valuation = {
        p: [w for w in worlds if rng.random() < 0.5] for p in prop_pool
    }
    point = rng.choice(worlds)
    model = KripkeModel.make(worlds, edges, prop_pool, valuation)
    return PointedModel.make(model, point)
