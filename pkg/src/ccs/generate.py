"""Random generation of actions, processes and LTSs.

Generated processes are closed and weakly guarded, and recursion variables
only occur under prefix and sum, so every generated term has a finite LTS.
"""

from __future__ import annotations

import random

from .lts import Lts
from .syntax import (
    NIL,
    TAU,
    Action,
    Label,
    Par,
    Prefix,
    Process,
    Rec,
    Relab,
    Relabeling,
    Restr,
    Sum,
    Var,
)

ALPHABET = ("a", "b", "c")
REC_NAMES = ("X", "Y", "Z")


def random_label(rng: random.Random, alphabet=ALPHABET) -> Label:
    return Label(rng.choice(alphabet), rng.random() < 0.5)


def random_action(rng: random.Random, alphabet=ALPHABET, tau_weight: float = 0.25) -> Action:
    if rng.random() < tau_weight:
        return TAU
    return Action(random_label(rng, alphabet))


def random_names(rng: random.Random, alphabet=ALPHABET, min_size: int = 0) -> frozenset[str]:
    names = {n for n in alphabet if rng.random() < 0.4}
    while len(names) < min_size:
        names.add(rng.choice(alphabet))
    return frozenset(names)


def random_relabeling(rng: random.Random, alphabet=ALPHABET) -> Relabeling:
    olds = [n for n in alphabet if rng.random() < 0.5] or [rng.choice(alphabet)]
    return Relabeling(tuple((random_label(rng, alphabet), Label(o)) for o in olds))


def random_process(
    rng: random.Random,
    depth: int = 3,
    alphabet=ALPHABET,
    *,
    open_vars: frozenset[str] = frozenset(),
    guarded_vars: frozenset[str] = frozenset(),
    allow_rec: bool = True,
) -> Process:
    """A random term of nesting depth at most ``depth``.

    ``open_vars`` are bound variables not yet under a prefix, so they may
    not appear yet; ``guarded_vars`` may appear as ``Var`` leaves.
    """
    leaves = [NIL]
    leaves += [Var(v) for v in sorted(guarded_vars)]
    if depth <= 0:
        return rng.choice(leaves)
    ops = ["nil", "prefix", "prefix", "prefix", "sum", "sum", "par", "par", "restr", "relab"]
    if allow_rec:
        ops.append("rec")
    if guarded_vars:
        ops += ["var", "var"]
    op = rng.choice(ops)
    d = depth - 1
    kw = dict(open_vars=open_vars, guarded_vars=guarded_vars, allow_rec=allow_rec)
    if op == "nil":
        return NIL
    if op == "var":
        return Var(rng.choice(sorted(guarded_vars)))
    if op == "prefix":
        body = random_process(
            rng, d, alphabet, open_vars=frozenset(), guarded_vars=guarded_vars | open_vars, allow_rec=allow_rec
        )
        return Prefix(random_action(rng, alphabet), body)
    if op == "sum":
        return Sum(random_process(rng, d, alphabet, **kw), random_process(rng, d, alphabet, **kw))
    # recursion variables never cross par/restriction/relabeling
    if op == "par":
        return Par(
            random_process(rng, d, alphabet, allow_rec=allow_rec),
            random_process(rng, d, alphabet, allow_rec=allow_rec),
        )
    if op == "restr":
        return Restr(random_names(rng, alphabet), random_process(rng, d, alphabet, allow_rec=allow_rec))
    if op == "relab":
        return Relab(random_process(rng, d, alphabet, allow_rec=allow_rec), random_relabeling(rng, alphabet))
    x = REC_NAMES[depth % len(REC_NAMES)]
    body = random_process(
        rng, d, alphabet, open_vars=open_vars | {x}, guarded_vars=guarded_vars - {x}, allow_rec=allow_rec
    )
    return Rec(x, body)


def random_guarded_body(rng: random.Random, var: str, depth: int = 3, alphabet=ALPHABET) -> Process:
    """A term whose only free variable is ``var``, occurring guarded."""
    body = random_process(rng, depth, alphabet, open_vars=frozenset({var}))
    if rng.random() < 0.5:
        body = Sum(body, Prefix(random_action(rng, alphabet), Var(var)))
    return body


def random_prefixed_sum(rng: random.Random, n: int, alphabet=ALPHABET, bodies=None) -> Process:
    if bodies is None:
        bodies = [NIL, Prefix(Action(Label("a")), NIL)]
    p = None
    for _ in range(n):
        s = Prefix(random_action(rng, alphabet), rng.choice(bodies))
        p = s if p is None else Sum(p, s)
    return p


def random_lts(rng: random.Random, max_states: int = 6, max_edges: int = 12, alphabet=("a", "b")) -> Lts:
    n = rng.randint(1, max_states)
    m = rng.randint(0, max_edges)
    actions = [TAU] + [Action(Label(a)) for a in alphabet]
    edges = {(rng.randrange(n), rng.choice(actions), rng.randrange(n)) for _ in range(m)}
    return Lts.from_edges(n, sorted(edges, key=lambda e: (e[0], e[1].sort_key(), e[2])))
