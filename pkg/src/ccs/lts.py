"""Reachable labeled transition systems of CCS processes."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import EdgeSpaceExceeded, StateSpaceExceeded
from .parser import render
from .semantics import DEFAULT_CONFIG, SemanticsConfig, check_process, transitions
from .syntax import Action, Nil, Par, Prefix, Process, Rec, Relab, Restr, Sum, Var


@dataclass(frozen=True)
class LtsLimits:
    max_states: int = 10000
    max_edges: int = 100000

    def __post_init__(self):
        if self.max_states < 1 or self.max_edges < 1:
            raise ValueError("LTS limits must be positive")


DEFAULT_LIMITS = LtsLimits()


class LtsState(tuple):
    __slots__ = ()

    def __new__(cls, id: int, process: Process | None, term: str):
        return tuple.__new__(cls, (id, process, term))

    id = property(lambda self: self[0])
    process = property(lambda self: self[1])
    term = property(lambda self: self[2])


class Edge(tuple):
    __slots__ = ()

    def __new__(cls, src: int, action: Action, dst: int):
        return tuple.__new__(cls, (src, action, dst))

    src = property(lambda self: self[0])
    action = property(lambda self: self[1])
    dst = property(lambda self: self[2])


@dataclass(frozen=True, eq=False)
class Lts:
    states: tuple[LtsState, ...]
    edges: tuple[Edge, ...]
    root: int = 0

    @property
    def num_states(self) -> int:
        return len(self.states)

    @cached_property
    def out_edges(self) -> list[list[tuple[Action, int]]]:
        out = [[] for _ in self.states]
        for s, a, t in self.edges:
            out[s].append((a, t))
        return out

    @classmethod
    def from_edges(cls, num_states: int, edges, root: int = 0) -> "Lts":
        """An LTS not backed by processes (states are named ``s0``, ``s1``, ...)."""
        states = tuple(LtsState(i, None, f"s{i}") for i in range(num_states))
        for s, _, t in edges:
            if not (0 <= s < num_states and 0 <= t < num_states):
                raise ValueError(f"edge endpoint out of range: {(s, t)}")
        return cls(states, tuple(Edge(*e) for e in edges), root)


# -- canonical binder names -------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _count_recs(p: Process) -> int:
    if isinstance(p, (Nil, Var)):
        return 0
    if isinstance(p, Rec):
        return 1 + _count_recs(p.body)
    if isinstance(p, (Prefix, Restr, Relab)):
        return _count_recs(p.body)
    return _count_recs(p.left) + _count_recs(p.right)


@lru_cache(maxsize=1 << 16)
def _binder_free(p: Process) -> bool:
    """No ``rec`` and no variable anywhere below ``p``."""
    if isinstance(p, Nil):
        return True
    if isinstance(p, (Var, Rec)):
        return False
    if isinstance(p, (Prefix, Restr, Relab)):
        return _binder_free(p.body)
    return _binder_free(p.left) and _binder_free(p.right)


def canonicalize(p: Process) -> Process:
    """Rename ``rec`` binders to ``X0, X1, ...`` in leftmost-innermost order.

    Binders are numbered in post-order (a binder after all binders nested
    inside it), so alpha-equivalent closed terms canonicalize identically.
    """
    counter = 0

    def go(p: Process, env: dict[str, str]) -> Process:
        nonlocal counter
        if _binder_free(p):
            return p
        if isinstance(p, Var):
            return Var(env.get(p.var, p.var))
        if isinstance(p, Prefix):
            return Prefix(p.action, go(p.body, env))
        if isinstance(p, Sum):
            left = go(p.left, env)
            return Sum(left, go(p.right, env))
        if isinstance(p, Par):
            left = go(p.left, env)
            return Par(left, go(p.right, env))
        if isinstance(p, Restr):
            return Restr(p.labels, go(p.body, env))
        if isinstance(p, Relab):
            return Relab(go(p.body, env), p.rf)
        if isinstance(p, Rec):
            new = f"X{counter + _count_recs(p.body)}"
            body = go(p.body, {**env, p.var: new})
            counter += 1
            return Rec(new, body)
        raise TypeError(f"not a process: {p!r}")

    return go(p, {})


# -- construction -----------------------------------------------------------


def build_lts(
    root: Process,
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> Lts:
    """Breadth-first exploration of the states reachable from ``root``."""
    check_process(root)
    start = canonicalize(root)
    index = {start: 0}
    procs = [start]
    edges: list[Edge] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        seen = set()
        for u, target in transitions(procs[i], cfg, checked=False):
            c = canonicalize(target)
            j = index.get(c)
            if j is None:
                if len(procs) >= limits.max_states:
                    raise StateSpaceExceeded(f"more than {limits.max_states} states")
                j = len(procs)
                index[c] = j
                procs.append(c)
                queue.append(j)
            if (u, j) in seen:
                continue
            seen.add((u, j))
            if len(edges) >= limits.max_edges:
                raise EdgeSpaceExceeded(f"more than {limits.max_edges} edges")
            edges.append(Edge(i, u, j))
    states = tuple(LtsState(i, p, render(p)) for i, p in enumerate(procs))
    return Lts(states, tuple(edges), 0)


def disjoint_union(a: Lts, b: Lts) -> tuple[Lts, int, int]:
    """Place ``b`` after ``a``; returns the union and both roots."""
    off = a.num_states
    states = a.states + tuple(LtsState(s.id + off, s.process, s.term) for s in b.states)
    edges = a.edges + tuple(Edge(s + off, u, t + off) for s, u, t in b.edges)
    return Lts(states, edges, a.root), a.root, b.root + off


# -- export -----------------------------------------------------------------


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(lts: Lts) -> str:
    lines = ["digraph lts {", "  rankdir=LR;"]
    for s in lts.states:
        shape = "doublecircle" if s.id == lts.root else "circle"
        lines.append(f"  s{s.id} [label={_dot_quote(s.term)}, shape={shape}];")
    for s, u, t in lts.edges:
        lines.append(f"  s{s} -> s{t} [label={_dot_quote(str(u))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lts_to_dict(lts: Lts) -> dict:
    return {
        "root": lts.root,
        "states": [{"id": s.id, "term": s.term} for s in lts.states],
        "edges": [{"from": s, "action": str(u), "to": t} for s, u, t in lts.edges],
    }


def export_json(lts: Lts) -> str:
    return json.dumps(lts_to_dict(lts), separators=(",", ":"))
