"""Strong algebraic laws and the expansion law.

Every law in ``LAWS`` is a schema over metavariables; ``verify_law``
instantiates it and decides the instance with ``strong_equiv``.
``expand`` rewrites ``p | q`` for prefixed sums ``p`` and ``q`` into
interleavings plus synchronisations, built with ``sigma``, ``sync`` and
``all_sync`` so that nil padding matches the defining recursions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .equiv import strong_equiv
from .errors import EmptySum, NotAPrefix, NotPrefixedSum, UnknownLaw
from .generate import (
    ALPHABET,
    random_action,
    random_guarded_body,
    random_label,
    random_names,
    random_process,
    random_relabeling,
)
from .lts import DEFAULT_LIMITS, LtsLimits
from .parser import parse
from .semantics import DEFAULT_CONFIG, SemanticsConfig
from .syntax import (
    NIL,
    TAU,
    Action,
    Label,
    Nil,
    Par,
    Prefix,
    Process,
    Rec,
    Relab,
    Relabeling,
    Restr,
    Sum,
    Var,
    _subst,
    apply_relabeling,
    compl_label,
)

# -- prefix accessors -------------------------------------------------------


def is_prefix(p: Process) -> bool:
    return isinstance(p, Prefix)


def pref_act(p: Process) -> Action:
    if not isinstance(p, Prefix):
        raise NotAPrefix(f"not a prefixed process: {p!r}")
    return p.action


def pref_proc(p: Process) -> Process:
    if not isinstance(p, Prefix):
        raise NotAPrefix(f"not a prefixed process: {p!r}")
    return p.body


@dataclass(frozen=True)
class PrefixedSummand:
    action: Action
    body: Process

    @classmethod
    def of(cls, p: "Process | PrefixedSummand") -> "PrefixedSummand":
        if isinstance(p, PrefixedSummand):
            return p
        return cls(pref_act(p), pref_proc(p))

    @property
    def process(self) -> Prefix:
        return Prefix(self.action, self.body)


# -- finite sums and synchronisation ---------------------------------------


def sigma(fs: Sequence[Process]) -> Process:
    """Left-nested sum ``(...(f0 + f1) + ...) + fn``."""
    if not fs:
        raise EmptySum("sigma of an empty list")
    acc = fs[0]
    for f in fs[1:]:
        acc = Sum(acc, f)
    return acc


def _sync_one(u: Action, p: Process, f: PrefixedSummand) -> Process | None:
    l, m = u.label, f.action.label
    if l is None or m is None:
        return None
    if l.name == m.name and l.output != m.output:
        return Prefix(TAU, Par(p, f.body))
    return None


def sync(u: Action, p: Process, fs: Sequence["Process | PrefixedSummand"]) -> Process:
    """Tau-prefixed synchronisations of ``u.p`` with each summand of ``fs``.

    Follows the recursion on the last index: the base case yields the
    synchronisation with ``fs[0]`` or ``nil``; each later summand that
    synchronises is added on the left, otherwise the sum is unchanged.
    """
    if not fs:
        raise EmptySum("sync over an empty list")
    fs = [PrefixedSummand.of(f) for f in fs]
    acc = _sync_one(u, p, fs[0]) or NIL
    for f in fs[1:]:
        t = _sync_one(u, p, f)
        if t is not None:
            acc = Sum(t, acc)
    return acc


def all_sync(fs: Sequence["Process | PrefixedSummand"], gs: Sequence["Process | PrefixedSummand"]) -> Process:
    if not fs or not gs:
        raise EmptySum("all_sync over an empty list")
    fs = [PrefixedSummand.of(f) for f in fs]
    gs = [PrefixedSummand.of(g) for g in gs]
    acc = sync(fs[0].action, fs[0].body, gs)
    for f in fs[1:]:
        acc = Sum(acc, sync(f.action, f.body, gs))
    return acc


def summands(p: Process) -> list[PrefixedSummand]:
    """Leaves of the sum tree of ``p``, left to right; each must be a prefix."""
    if isinstance(p, Sum):
        return summands(p.left) + summands(p.right)
    if isinstance(p, Prefix):
        return [PrefixedSummand(p.action, p.body)]
    raise NotPrefixedSum(f"summand is not a prefix: {p!r}")


def expand(p: Process, q: Process) -> Process:
    """Right-hand side of the expansion law for ``p | q``."""
    fs = summands(p)
    gs = summands(q)
    left = sigma([Prefix(f.action, Par(f.body, q)) for f in fs])
    right = sigma([Prefix(g.action, Par(p, g.body)) for g in gs])
    return Sum(Sum(left, right), all_sync(fs, gs))


def simplify_nil_summands(p: Process) -> Process:
    """Drop ``nil`` summands everywhere (sound by E + nil ~ E ~ nil + E)."""
    if isinstance(p, Sum):
        left = simplify_nil_summands(p.left)
        right = simplify_nil_summands(p.right)
        if isinstance(left, Nil):
            return right
        if isinstance(right, Nil):
            return left
        return Sum(left, right)
    if isinstance(p, (Nil, Var)):
        return p
    if isinstance(p, Prefix):
        return Prefix(p.action, simplify_nil_summands(p.body))
    if isinstance(p, Par):
        return Par(simplify_nil_summands(p.left), simplify_nil_summands(p.right))
    if isinstance(p, Restr):
        return Restr(p.labels, simplify_nil_summands(p.body))
    if isinstance(p, Relab):
        return Relab(simplify_nil_summands(p.body), p.rf)
    if isinstance(p, Rec):
        return Rec(p.var, simplify_nil_summands(p.body))
    raise TypeError(f"not a process: {p!r}")


# -- law catalog ------------------------------------------------------------

# metavariable kinds
PROC, OPEN_PROC, ACTION, LABEL, NAMES, RELABELING, IDENT = (
    "process",
    "open-process",
    "action",
    "label",
    "names",
    "relabeling",
    "identifier",
)


@dataclass(frozen=True)
class LawSchema:
    name: str
    group: str
    statement: str
    metavars: tuple[tuple[str, str], ...]
    build: Callable[[Mapping], tuple[Process, Process]]
    side_condition: Callable[[Mapping], bool] | None = None

    @property
    def conditional(self) -> bool:
        return self.side_condition is not None


@dataclass(frozen=True)
class LawInstance:
    law_name: str
    lhs: Process
    rhs: Process
    side_conditions_met: bool
    related: bool

    @property
    def passed(self) -> bool:
        """A law instance passes if its side condition fails or it holds."""
        return self.related or not self.side_conditions_met


E, E1, E2 = "E", "E'", "E''"
_P3 = ((E, PROC), (E1, PROC), (E2, PROC))
_P2 = _P3[:2]
_P1 = _P3[:1]


def _pre(u, e):
    return Prefix(u, e)


def _lab(l: Label) -> Action:
    return Action(l)


_CATALOG = [
    # sum
    LawSchema("STRONG_SUM_IDENT_R", "sum", "E + nil ~ E", _P1, lambda b: (Sum(b[E], NIL), b[E])),
    LawSchema("STRONG_SUM_IDEMP", "sum", "E + E ~ E", _P1, lambda b: (Sum(b[E], b[E]), b[E])),
    LawSchema("STRONG_SUM_COMM", "sum", "E + E' ~ E' + E", _P2, lambda b: (Sum(b[E], b[E1]), Sum(b[E1], b[E]))),
    LawSchema("STRONG_SUM_IDENT_L", "sum", "nil + E ~ E", _P1, lambda b: (Sum(NIL, b[E]), b[E])),
    LawSchema(
        "STRONG_SUM_ASSOC_R",
        "sum",
        "E + E' + E'' ~ E + (E' + E'')",
        _P3,
        lambda b: (Sum(Sum(b[E], b[E1]), b[E2]), Sum(b[E], Sum(b[E1], b[E2]))),
    ),
    LawSchema(
        "STRONG_SUM_ASSOC_L",
        "sum",
        "E + (E' + E'') ~ E + E' + E''",
        _P3,
        lambda b: (Sum(b[E], Sum(b[E1], b[E2])), Sum(Sum(b[E], b[E1]), b[E2])),
    ),
    LawSchema(
        "STRONG_SUM_MID_IDEMP",
        "sum",
        "E + E' + E ~ E' + E",
        _P2,
        lambda b: (Sum(Sum(b[E], b[E1]), b[E]), Sum(b[E1], b[E])),
    ),
    LawSchema(
        "STRONG_LEFT_SUM_MID_IDEMP",
        "sum",
        "E + E' + E'' + E' ~ E + E'' + E'",
        _P3,
        lambda b: (Sum(Sum(Sum(b[E], b[E1]), b[E2]), b[E1]), Sum(Sum(b[E], b[E2]), b[E1])),
    ),
    # par
    LawSchema("STRONG_PAR_IDENT_R", "par", "E | nil ~ E", _P1, lambda b: (Par(b[E], NIL), b[E])),
    LawSchema("STRONG_PAR_COMM", "par", "E | E' ~ E' | E", _P2, lambda b: (Par(b[E], b[E1]), Par(b[E1], b[E]))),
    LawSchema("STRONG_PAR_IDENT_L", "par", "nil | E ~ E", _P1, lambda b: (Par(NIL, b[E]), b[E])),
    LawSchema(
        "STRONG_PAR_ASSOC",
        "par",
        "E | E' | E'' ~ E | (E' | E'')",
        _P3,
        lambda b: (Par(Par(b[E], b[E1]), b[E2]), Par(b[E], Par(b[E1], b[E2]))),
    ),
    LawSchema(
        "STRONG_PAR_PREF_TAU",
        "par",
        "u.E | tau.E' ~ u.(E | tau.E') + tau.(u.E | E')",
        (("u", ACTION),) + _P2,
        lambda b: (
            Par(_pre(b["u"], b[E]), _pre(TAU, b[E1])),
            Sum(_pre(b["u"], Par(b[E], _pre(TAU, b[E1]))), _pre(TAU, Par(_pre(b["u"], b[E]), b[E1]))),
        ),
    ),
    LawSchema(
        "STRONG_PAR_TAU_PREF",
        "par",
        "tau.E | u.E' ~ tau.(E | u.E') + u.(tau.E | E')",
        (("u", ACTION),) + _P2,
        lambda b: (
            Par(_pre(TAU, b[E]), _pre(b["u"], b[E1])),
            Sum(_pre(TAU, Par(b[E], _pre(b["u"], b[E1]))), _pre(b["u"], Par(_pre(TAU, b[E]), b[E1]))),
        ),
    ),
    LawSchema(
        "STRONG_PAR_TAU_TAU",
        "par",
        "tau.E | tau.E' ~ tau.(E | tau.E') + tau.(tau.E | E')",
        _P2,
        lambda b: (
            Par(_pre(TAU, b[E]), _pre(TAU, b[E1])),
            Sum(_pre(TAU, Par(b[E], _pre(TAU, b[E1]))), _pre(TAU, Par(_pre(TAU, b[E]), b[E1]))),
        ),
    ),
    LawSchema(
        "STRONG_PAR_PREF_NO_SYNCR",
        "par",
        "l != COMPL l' ==> l.E | l'.E' ~ l.(E | l'.E') + l'.(l.E | E')",
        (("l", LABEL), ("l'", LABEL)) + _P2,
        lambda b: (
            Par(_pre(_lab(b["l"]), b[E]), _pre(_lab(b["l'"]), b[E1])),
            Sum(
                _pre(_lab(b["l"]), Par(b[E], _pre(_lab(b["l'"]), b[E1]))),
                _pre(_lab(b["l'"]), Par(_pre(_lab(b["l"]), b[E]), b[E1])),
            ),
        ),
        lambda b: b["l"] != compl_label(b["l'"]),
    ),
    LawSchema(
        "STRONG_PAR_PREF_SYNCR",
        "par",
        "l = COMPL l' ==> l.E | l'.E' ~ l.(E | l'.E') + l'.(l.E | E') + tau.(E | E')",
        (("l", LABEL), ("l'", LABEL)) + _P2,
        lambda b: (
            Par(_pre(_lab(b["l"]), b[E]), _pre(_lab(b["l'"]), b[E1])),
            Sum(
                Sum(
                    _pre(_lab(b["l"]), Par(b[E], _pre(_lab(b["l'"]), b[E1]))),
                    _pre(_lab(b["l'"]), Par(_pre(_lab(b["l"]), b[E]), b[E1])),
                ),
                _pre(TAU, Par(b[E], b[E1])),
            ),
        ),
        lambda b: b["l"] == compl_label(b["l'"]),
    ),
    # restriction
    LawSchema("STRONG_RESTR_NIL", "restriction", "nu L nil ~ nil", (("L", NAMES),), lambda b: (Restr(b["L"], NIL), NIL)),
    LawSchema(
        "STRONG_RESTR_SUM",
        "restriction",
        "nu L (E + E') ~ nu L E + nu L E'",
        (("L", NAMES),) + _P2,
        lambda b: (Restr(b["L"], Sum(b[E], b[E1])), Sum(Restr(b["L"], b[E]), Restr(b["L"], b[E1]))),
    ),
    LawSchema(
        "STRONG_RESTR_PREFIX_TAU",
        "restriction",
        "nu L (tau.E) ~ tau.nu L E",
        (("L", NAMES),) + _P1,
        lambda b: (Restr(b["L"], _pre(TAU, b[E])), _pre(TAU, Restr(b["L"], b[E]))),
    ),
    LawSchema(
        "STRONG_RESTR_PR_LAB_NIL",
        "restriction",
        "l in L \\/ COMPL l in L ==> nu L (l.E) ~ nil",
        (("l", LABEL), ("L", NAMES)) + _P1,
        lambda b: (Restr(b["L"], _pre(_lab(b["l"]), b[E])), NIL),
        lambda b: b["l"].name in b["L"],
    ),
    LawSchema(
        "STRONG_RESTR_PREFIX_LABEL",
        "restriction",
        "l notin L /\\ COMPL l notin L ==> nu L (l.E) ~ l.nu L E",
        (("l", LABEL), ("L", NAMES)) + _P1,
        lambda b: (Restr(b["L"], _pre(_lab(b["l"]), b[E])), _pre(_lab(b["l"]), Restr(b["L"], b[E]))),
        lambda b: b["l"].name not in b["L"],
    ),
    # relabeling
    LawSchema(
        "STRONG_RELAB_NIL", "relabeling", "relab nil rf ~ nil", (("rf", RELABELING),), lambda b: (Relab(NIL, b["rf"]), NIL)
    ),
    LawSchema(
        "STRONG_RELAB_SUM",
        "relabeling",
        "relab (E + E') rf ~ relab E rf + relab E' rf",
        (("rf", RELABELING),) + _P2,
        lambda b: (Relab(Sum(b[E], b[E1]), b["rf"]), Sum(Relab(b[E], b["rf"]), Relab(b[E1], b["rf"]))),
    ),
    LawSchema(
        "STRONG_RELAB_PREFIX",
        "relabeling",
        "relab (u.E) rf ~ (relabel rf u).relab E rf",
        (("u", ACTION), ("rf", RELABELING)) + _P1,
        lambda b: (
            Relab(_pre(b["u"], b[E]), b["rf"]),
            _pre(apply_relabeling(b["rf"], b["u"]), Relab(b[E], b["rf"])),
        ),
    ),
    # recursion
    LawSchema(
        "STRONG_UNFOLDING",
        "recursion",
        "rec X E ~ CCS_Subst E (rec X E) X",
        (("X", IDENT), (E, OPEN_PROC)),
        lambda b: (Rec(b["X"], b[E]), _subst(b[E], Rec(b["X"], b[E]), b["X"])),
    ),
    LawSchema(
        "STRONG_PREF_REC_EQUIV",
        "recursion",
        "u.rec s (v.u.s) ~ rec s (u.v.s)",
        (("u", ACTION), ("v", ACTION), ("s", IDENT)),
        lambda b: (
            _pre(b["u"], Rec(b["s"], _pre(b["v"], _pre(b["u"], Var(b["s"]))))),
            Rec(b["s"], _pre(b["u"], _pre(b["v"], Var(b["s"])))),
        ),
    ),
    LawSchema(
        "STRONG_REC_ACT2",
        "recursion",
        "rec s (u.u.s) ~ rec s (u.s)",
        (("u", ACTION), ("s", IDENT)),
        lambda b: (
            Rec(b["s"], _pre(b["u"], _pre(b["u"], Var(b["s"])))),
            Rec(b["s"], _pre(b["u"], Var(b["s"]))),
        ),
    ),
]

LAWS: dict[str, LawSchema] = {law.name: law for law in _CATALOG}


def law_catalog() -> list[LawSchema]:
    return list(_CATALOG)


def get_law(name: str) -> LawSchema:
    try:
        return LAWS[name]
    except KeyError:
        raise UnknownLaw(f"unknown law {name!r}") from None


def _coerce(kind: str, value):
    if kind in (PROC, OPEN_PROC):
        return parse(value) if isinstance(value, str) else value
    if kind == ACTION:
        if isinstance(value, Label):
            return Action(value)
        if isinstance(value, str):
            return TAU if value == "tau" else Action(_parse_label(value))
        return value
    if kind == LABEL:
        if isinstance(value, Action):
            if value.is_tau:
                raise ValueError("a label metavariable cannot be tau")
            return value.label
        return _parse_label(value) if isinstance(value, str) else value
    if kind == NAMES:
        if isinstance(value, str):
            value = [value]
        return frozenset(value)
    if kind == RELABELING:
        if isinstance(value, str):
            r = parse(f"0{value}")
            return r.rf
        return value
    return value


def _parse_label(text: str) -> Label:
    text = text.strip()
    if text.startswith("'"):
        return Label(text[1:], True)
    return Label(text)


def instantiate(name: str, bindings: Mapping) -> tuple[Process, Process, bool]:
    law = get_law(name)
    missing = [v for v, _ in law.metavars if v not in bindings]
    if missing:
        raise ValueError(f"{name}: missing bindings for {', '.join(missing)}")
    b = {v: _coerce(kind, bindings[v]) for v, kind in law.metavars}
    lhs, rhs = law.build(b)
    ok = law.side_condition(b) if law.side_condition else True
    return lhs, rhs, ok


def verify_law(
    name: str,
    bindings: Mapping,
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> LawInstance:
    lhs, rhs, ok = instantiate(name, bindings)
    related = strong_equiv(lhs, rhs, limits, cfg).related
    return LawInstance(name, lhs, rhs, ok, related)


# -- random instantiation ---------------------------------------------------


def sample_bindings(name: str, rng: random.Random, depth: int = 3, alphabet=ALPHABET) -> dict:
    """Random bindings for ``name`` that satisfy its side condition."""
    law = get_law(name)
    b: dict = {}
    for var, kind in law.metavars:
        if kind == PROC:
            b[var] = random_process(rng, depth, alphabet)
        elif kind == ACTION:
            b[var] = random_action(rng, alphabet)
        elif kind == LABEL:
            b[var] = random_label(rng, alphabet)
        elif kind == NAMES:
            b[var] = random_names(rng, alphabet)
        elif kind == RELABELING:
            b[var] = random_relabeling(rng, alphabet)
        elif kind == IDENT:
            b[var] = rng.choice(("X", "s", "VM"))
    for var, kind in law.metavars:
        if kind == OPEN_PROC:
            b[var] = random_guarded_body(rng, b["X"], depth, alphabet)
    # adjust conditioned metavariables so the side condition holds
    if name == "STRONG_PAR_PREF_SYNCR":
        b["l'"] = compl_label(b["l"])
    elif name == "STRONG_PAR_PREF_NO_SYNCR":
        while b["l"] == compl_label(b["l'"]):
            b["l'"] = random_label(rng, alphabet)
    elif name == "STRONG_RESTR_PR_LAB_NIL":
        b["L"] = b["L"] | {b["l"].name}
    elif name == "STRONG_RESTR_PREFIX_LABEL":
        b["L"] = b["L"] - {b["l"].name}
    return b


@dataclass
class LawCheck:
    name: str
    samples: int
    passed: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.passed == self.samples


def check_law(
    name: str,
    samples: int = 50,
    seed: int = 0,
    depth: int = 3,
    alphabet=ALPHABET,
    limits: LtsLimits = DEFAULT_LIMITS,
    cfg: SemanticsConfig = DEFAULT_CONFIG,
) -> LawCheck:
    """Verify ``samples`` random side-condition-respecting instances."""
    rng = random.Random(f"{seed}:{name}")
    passed = 0
    failures = []
    for _ in range(samples):
        inst = verify_law(name, sample_bindings(name, rng, depth, alphabet), limits, cfg)
        if inst.side_conditions_met and inst.related:
            passed += 1
        else:
            failures.append(inst)
    return LawCheck(name, samples, passed, failures)
