"""Strong, weak and rooted weak bisimilarity on finite LTSs.

Bisimilarity is the coarsest partition that is stable under the transfer
condition, found by Kanellakis-Smolka splitting (see ``_kernel``).  Weak
bisimilarity is strong bisimilarity of the saturated LTS whose visible
edges are ``==l=>>`` and whose tau edges are EPS.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence

from . import _kernel
from .lts import DEFAULT_LIMITS, Lts, LtsLimits, build_lts, disjoint_union
from .semantics import DEFAULT_CONFIG, SemanticsConfig
from .syntax import TAU, Action, Label, Process

Relation = frozenset  # of (state, state) pairs
Kind = Literal["strong", "weak", "rooted_weak"]


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_block_ids(cls, ids: Sequence[int]) -> "Partition":
        blocks: dict[int, list[int]] = {}
        for s, b in enumerate(ids):
            blocks.setdefault(b, []).append(s)
        ordered = sorted(blocks.values(), key=lambda members: members[0])
        block_of = [0] * len(ids)
        for k, members in enumerate(ordered):
            for s in members:
                block_of[s] = k
        return cls(tuple(tuple(m) for m in ordered), tuple(block_of))

    def same_block(self, s: int, t: int) -> bool:
        return self.block_of[s] == self.block_of[t]

    def relation(self) -> frozenset[tuple[int, int]]:
        return frozenset((s, t) for block in self.blocks for s in block for t in block)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class SaturatedLts:
    base: Lts
    eps: frozenset[tuple[int, int]]
    weak_edges: tuple[tuple[int, Label, int], ...]
    weak_tau_edges: tuple[tuple[int, int], ...]
    eps_from: tuple[frozenset[int], ...]

    @cached_property
    def _succ(self) -> dict[tuple[int, Action], frozenset[int]]:
        index: dict[tuple[int, Action], set[int]] = {}
        for a, l, b in self.weak_edges:
            index.setdefault((a, Action(l)), set()).add(b)
        for a, b in self.weak_tau_edges:
            index.setdefault((a, TAU), set()).add(b)
        return {k: frozenset(v) for k, v in index.items()}

    def weak_successors(self, s: int, u: Action) -> frozenset[int]:
        """States ``t`` with ``s ==u=>> t`` (for tau: at least one tau step)."""
        return self._succ.get((s, u), frozenset())


@dataclass(frozen=True)
class EquivReport:
    related: bool
    kind: str
    witness: Partition | None = None
    distinguishing_info: tuple[int, str] | None = None
    lts: Lts | None = None
    roots: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        dist = None
        if self.distinguishing_info is not None:
            state, action = self.distinguishing_info
            dist = {"state": state, "action": action}
        blocks = [list(b) for b in self.witness.blocks] if self.witness is not None else []
        return {"kind": self.kind, "related": self.related, "blocks": blocks, "distinguishing": dist}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


# -- EPS and saturation -----------------------------------------------------


def _eps_sets(lts: Lts) -> list[frozenset[int]]:
    tau_succ = [[t for u, t in out if u.is_tau] for out in lts.out_edges]
    result = []
    for s in range(lts.num_states):
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in tau_succ[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        result.append(frozenset(seen))
    return result


def compute_eps(lts: Lts) -> frozenset[tuple[int, int]]:
    """Reflexive-transitive closure of the tau edges."""
    return frozenset((s, t) for s, reach in enumerate(_eps_sets(lts)) for t in reach)


def saturate(lts: Lts) -> SaturatedLts:
    eps_from = _eps_sets(lts)
    out = lts.out_edges
    weak = set()
    weak_tau = set()
    for s in range(lts.num_states):
        for s1 in eps_from[s]:
            for u, s2 in out[s1]:
                for t in eps_from[s2]:
                    if u.is_tau:
                        weak_tau.add((s, t))
                    else:
                        weak.add((s, u.label, t))
    eps = frozenset((s, t) for s, reach in enumerate(eps_from) for t in reach)
    return SaturatedLts(
        lts,
        eps,
        tuple(sorted(weak)),
        tuple(sorted(weak_tau)),
        tuple(eps_from),
    )


# -- partitions -------------------------------------------------------------


def _encode(moves: Iterable[tuple[int, object, int]]) -> list[tuple[int, int, int]]:
    moves = list(moves)
    keys = sorted({a for _, a, _ in moves}, key=_action_key)
    code = {a: i for i, a in enumerate(keys)}
    return [(s, code[a], t) for s, a, t in moves]


def _action_key(a) -> tuple:
    return a.sort_key() if isinstance(a, Action) else (3, str(a))


def strong_bisim_partition(lts: Lts) -> Partition:
    """Coarsest partition whose blocks are the strong-bisimilarity classes."""
    ids = _kernel.refine(lts.num_states, _encode(lts.edges))
    return Partition.from_block_ids(ids)


def _saturated_moves(sat: SaturatedLts) -> list[tuple[int, Action, int]]:
    moves = [(s, Action(l), t) for s, l, t in sat.weak_edges]
    moves += [(s, TAU, t) for s, t in sorted(sat.eps)]
    return moves


def weak_bisim_partition(lts: Lts | SaturatedLts) -> Partition:
    """Coarsest partition whose blocks are the weak-bisimilarity classes."""
    sat = lts if isinstance(lts, SaturatedLts) else saturate(lts)
    ids = _kernel.refine(sat.base.num_states, _encode(_saturated_moves(sat)))
    return Partition.from_block_ids(ids)


def _signature(moves_from, part: Partition, s: int) -> set[tuple[Action, int]]:
    return {(u, part.block_of[t]) for u, t in moves_from[s]}


def _distinguish(moves_from, part: Partition, p: int, q: int) -> tuple[int, str] | None:
    sp = _signature(moves_from, part, p)
    sq = _signature(moves_from, part, q)
    for state, diff in ((p, sp - sq), (q, sq - sp)):
        if diff:
            u, _ = min(diff, key=lambda m: (m[0].sort_key(), m[1]))
            return state, str(u)
    return None


# -- process-level checks ---------------------------------------------------


def joint_lts(
    p: Process,
    q: Process,
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> tuple[Lts, int, int]:
    """Disjoint union of the reachable LTSs of ``p`` and ``q``."""
    return disjoint_union(build_lts(p, limits, cfg), build_lts(q, limits, cfg))


def strong_equiv(
    p: Process,
    q: Process,
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> EquivReport:
    lts, rp, rq = joint_lts(p, q, limits, cfg)
    part = strong_bisim_partition(lts)
    if part.same_block(rp, rq):
        return EquivReport(True, "strong", witness=part, lts=lts, roots=(rp, rq))
    info = _distinguish(lts.out_edges, part, rp, rq)
    return EquivReport(False, "strong", distinguishing_info=info, lts=lts, roots=(rp, rq))


def _weak_core(p, q, limits, cfg):
    lts, rp, rq = joint_lts(p, q, limits, cfg)
    sat = saturate(lts)
    part = weak_bisim_partition(sat)
    return lts, rp, rq, sat, part


def _weak_failure(sat: SaturatedLts, part: Partition, rp: int, rq: int):
    moves_from = [[] for _ in range(sat.base.num_states)]
    for s, u, t in _saturated_moves(sat):
        moves_from[s].append((u, t))
    return _distinguish(moves_from, part, rp, rq)


def weak_equiv(
    p: Process,
    q: Process,
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> EquivReport:
    lts, rp, rq, sat, part = _weak_core(p, q, limits, cfg)
    if part.same_block(rp, rq):
        return EquivReport(True, "weak", witness=part, lts=lts, roots=(rp, rq))
    info = _weak_failure(sat, part, rp, rq)
    return EquivReport(False, "weak", distinguishing_info=info, lts=lts, roots=(rp, rq))


def _root_mismatch(sat: SaturatedLts, part: Partition, a: int, b: int) -> tuple[int, str] | None:
    # every move of a (tau included) needs a weak move of b, tau needing >= 1 tau
    for u, a1 in sat.base.out_edges[a]:
        if not any(part.same_block(a1, b1) for b1 in sat.weak_successors(b, u)):
            return a, str(u)
    return None


def rooted_weak_equiv(
    p: Process,
    q: Process,
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> EquivReport:
    lts, rp, rq, sat, part = _weak_core(p, q, limits, cfg)
    if not part.same_block(rp, rq):
        info = _weak_failure(sat, part, rp, rq)
        return EquivReport(False, "rooted_weak", distinguishing_info=info, lts=lts, roots=(rp, rq))
    info = _root_mismatch(sat, part, rp, rq) or _root_mismatch(sat, part, rq, rp)
    if info is None:
        return EquivReport(True, "rooted_weak", witness=part, lts=lts, roots=(rp, rq))
    return EquivReport(False, "rooted_weak", distinguishing_info=info, lts=lts, roots=(rp, rq))


EQUIVALENCES = {"strong": strong_equiv, "weak": weak_equiv, "rooted_weak": rooted_weak_equiv}


# -- weak traces ------------------------------------------------------------


def _close(sat: SaturatedLts, states: Iterable[int]) -> frozenset[int]:
    out = set()
    for s in states:
        out |= sat.eps_from[s]
    return frozenset(out)


def _after(sat: SaturatedLts, states: frozenset[int], label: Label) -> frozenset[int]:
    nxt = {t for s in states for u, t in sat.base.out_edges[s] if u.label == label}
    return _close(sat, nxt)


def lts_accepts_trace(sat: SaturatedLts, trace: Sequence[Label], state: int | None = None) -> bool:
    current = _close(sat, [sat.base.root if state is None else state])
    for l in trace:
        current = _after(sat, current, l)
        if not current:
            return False
    return True


def weak_trace_check(
    p: Process,
    trace: Sequence[Label],
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether the root of ``p`` has a path whose visible labels spell ``trace``."""
    return lts_accepts_trace(saturate(build_lts(p, limits, cfg)), trace)


def alphabet(lts: Lts) -> list[Label]:
    return sorted({u.label for _, u, _ in lts.edges if not u.is_tau}, key=lambda l: (l.output, l.name))


def weak_traces(lts: Lts | SaturatedLts, max_len: int, state: int | None = None) -> list[tuple[Label, ...]]:
    """All weak traces of length <= ``max_len`` from ``state`` (default root)."""
    sat = lts if isinstance(lts, SaturatedLts) else saturate(lts)
    labels = alphabet(sat.base)
    start = _close(sat, [sat.base.root if state is None else state])
    found = [()]
    layer = [((), start)]
    for _ in range(max_len):
        nxt = []
        for trace, states in layer:
            for l in labels:
                after = _after(sat, states, l)
                if after:
                    nxt.append((trace + (l,), after))
        found.extend(t for t, _ in nxt)
        layer = nxt
    return found


# -- witness checking -------------------------------------------------------


def _matches(moves, other_moves, related, forward: bool) -> bool:
    for u, a1 in moves:
        ok = False
        for b1 in other_moves(u):
            if ((a1, b1) if forward else (b1, a1)) in related:
                ok = True
                break
        if not ok:
            return False
    return True


def check_bisimulation(
    lts: Lts | SaturatedLts,
    relation: Iterable[tuple[int, int]],
    kind: Literal["strong", "weak"] = "strong",
) -> bool:
    """Evaluate the strong or weak transfer condition on a candidate relation."""
    related = frozenset(relation)
    if kind == "strong":
        base = lts.base if isinstance(lts, SaturatedLts) else lts
        out = base.out_edges

        def moves(s, u):
            return [t for v, t in out[s] if v == u]

    elif kind == "weak":
        sat = lts if isinstance(lts, SaturatedLts) else saturate(lts)
        base = sat.base
        out = base.out_edges

        def moves(s, u):
            if u.is_tau:
                return sat.eps_from[s]
            return sat.weak_successors(s, u)

    else:
        raise ValueError(f"unknown bisimulation kind {kind!r}")

    for p, q in related:
        if not _matches(out[p], lambda u: moves(q, u), related, True):
            return False
        if not _matches(out[q], lambda u: moves(p, u), related, False):
            return False
    return True
