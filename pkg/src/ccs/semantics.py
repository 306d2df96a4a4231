"""One-step transitions of CCS processes under the SOS rules.

``transitions`` is exhaustive: it returns every pair ``(u, E')`` such that
``P --u-> E'`` is derivable from PREFIX, SUM1/2, PAR1/2/3, RESTR, RELAB
and REC, and nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import DepthExceeded, FreeVariable, UnguardedRecursion
from .parser import render
from .syntax import (
    TAU,
    Action,
    Nil,
    Par,
    Prefix,
    Process,
    Rec,
    Relab,
    Restr,
    Sum,
    Var,
    _subst,
    apply_relabeling,
    free_vars,
    unguarded_binder,
)


@dataclass(frozen=True)
class SemanticsConfig:
    max_unfold_depth: int = 64

    def __post_init__(self):
        if self.max_unfold_depth < 1:
            raise ValueError("max_unfold_depth must be >= 1")


DEFAULT_CONFIG = SemanticsConfig()


class Transition(NamedTuple):
    action: Action
    target: Process


def check_process(p: Process) -> None:
    """Raise unless ``p`` is closed and weakly guarded."""
    fv = free_vars(p)
    if fv:
        raise FreeVariable(f"process has free variable(s): {', '.join(sorted(fv))}")
    x = unguarded_binder(p)
    if x is not None:
        raise UnguardedRecursion(f"recursion variable {x!r} occurs unguarded")


@lru_cache(maxsize=1 << 15)
def _trans(p: Process, depth: int, limit: int) -> frozenset[tuple[Action, Process]]:
    # memoised: exploration asks for the same subterms over and over
    if isinstance(p, Prefix):
        return frozenset({(p.action, p.body)})
    if isinstance(p, Nil):
        return frozenset()
    if isinstance(p, Sum):
        return _trans(p.left, depth, limit) | _trans(p.right, depth, limit)
    if isinstance(p, Par):
        left = _trans(p.left, depth, limit)
        right = _trans(p.right, depth, limit)
        out = {(u, Par(e1, p.right)) for u, e1 in left}
        out |= {(u, Par(p.left, e2)) for u, e2 in right}
        for u1, e1 in left:
            l1 = u1.label
            if l1 is None:
                continue
            for u2, e2 in right:
                l2 = u2.label
                if l2 is not None and l2.name == l1.name and l2.output != l1.output:
                    out.add((TAU, Par(e1, e2)))
        return frozenset(out)
    if isinstance(p, Restr):
        return frozenset(
            (u, Restr(p.labels, e))
            for u, e in _trans(p.body, depth, limit)
            if u.label is None or u.label.name not in p.labels
        )
    if isinstance(p, Relab):
        return frozenset((apply_relabeling(p.rf, u), Relab(e, p.rf)) for u, e in _trans(p.body, depth, limit))
    if isinstance(p, Rec):
        if depth >= limit:
            raise DepthExceeded(f"recursion unfolded more than {limit} times")
        return _trans(_subst(p.body, p, p.var), depth + 1, limit)
    if isinstance(p, Var):
        raise FreeVariable(f"free variable {p.var!r}")
    raise TypeError(f"not a process: {p!r}")


def _order(pairs) -> tuple[Transition, ...]:
    keyed = [(u.sort_key(), render(e), u, e) for u, e in pairs]
    keyed.sort(key=lambda t: (t[0], t[1]))
    return tuple(Transition(u, e) for _, _, u, e in keyed)


def transitions(p: Process, cfg: SemanticsConfig = DEFAULT_CONFIG, *, checked: bool = True) -> tuple[Transition, ...]:
    """All one-step transitions of ``p``, deduplicated and deterministically ordered.

    Order: input actions by name, output actions by name, tau last; ties
    broken by the rendered target.  Pass ``checked=False`` to skip the
    closedness/guardedness check when the caller already did it.
    """
    if checked:
        check_process(p)
    return _order(_trans(p, 0, cfg.max_unfold_depth))


def transition_set(p: Process, cfg: SemanticsConfig = DEFAULT_CONFIG) -> frozenset[tuple[Action, Process]]:
    """Like ``transitions`` but unordered; skips rendering every target."""
    check_process(p)
    return _trans(p, 0, cfg.max_unfold_depth)


def step(p: Process, u: Action, cfg: SemanticsConfig = DEFAULT_CONFIG) -> set[Process]:
    return {e for v, e in transition_set(p, cfg) if v == u}
