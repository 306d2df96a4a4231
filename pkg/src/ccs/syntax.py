"""Labels, actions, relabelings and process terms.

All values are immutable; processes are frozen dataclasses compared
structurally, so they can be used as dict keys and set members.
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import CaptureRisk, InvalidRelabeling, TauHasNoLabel

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*\Z")
KEYWORDS = frozenset({"tau", "rec"})


def _check_name(s: str, what: str = "name") -> str:
    if not isinstance(s, str) or not NAME_RE.match(s) or s in KEYWORDS:
        raise ValueError(f"invalid {what}: {s!r}")
    return s


# -- labels and actions ---------------------------------------------------


@dataclass(frozen=True, slots=True, order=True)
class Label:
    """A visible action: input ``a`` (``output=False``) or output ``'a``."""

    name: str
    output: bool = False

    def __post_init__(self):
        _check_name(self.name, "label name")

    def __str__(self):
        return f"'{self.name}" if self.output else self.name


def name(s: str) -> Label:
    return Label(s, False)


def coname(s: str) -> Label:
    return Label(s, True)


@dataclass(frozen=True, slots=True)
class Action:
    """Either tau (``label is None``) or a visible label."""

    label: Label | None = None

    @property
    def is_tau(self) -> bool:
        return self.label is None

    def __str__(self):
        return "tau" if self.label is None else str(self.label)

    def sort_key(self):
        # inputs, then outputs, then tau
        if self.label is None:
            return (2, "")
        return (1 if self.label.output else 0, self.label.name)


TAU = Action()


def In(s: str) -> Action:
    return Action(Label(s, False))


def Out(s: str) -> Action:
    return Action(Label(s, True))


def visible(label: Label) -> Action:
    return Action(label)


def compl_label(l: Label) -> Label:
    return Label(l.name, not l.output)


def compl_action(u: Action) -> Action:
    if u.label is None:
        return u
    return Action(compl_label(u.label))


def label_of(u: Action) -> Label:
    if u.label is None:
        raise TauHasNoLabel("tau carries no label")
    return u.label


# -- relabeling -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Relabeling:
    """Finite substitution list ``[new/old, ...]`` denoting a total label map.

    Pairs are normalised so that every ``old`` label has input polarity;
    a pair given as ``(new, 'old)`` becomes ``(compl(new), old)``.
    Duplicate ``old`` names are rejected.
    """

    pairs: tuple[tuple[Label, Label], ...]

    def __post_init__(self):
        normalised = []
        seen = set()
        for new, old in self.pairs:
            if not isinstance(new, Label) or not isinstance(old, Label):
                raise InvalidRelabeling("relabeling pairs must be (Label, Label); tau is not allowed")
            if old.output:
                new, old = compl_label(new), compl_label(old)
            if old.name in seen:
                raise InvalidRelabeling(f"duplicate relabeling of {old.name!r}")
            seen.add(old.name)
            normalised.append((new, old))
        object.__setattr__(self, "pairs", tuple(normalised))

    @classmethod
    def of(cls, *pairs: tuple[str, str]) -> "Relabeling":
        """``Relabeling.of(("b", "a"))`` is ``[b/a]``."""
        return cls(tuple((name(n), name(o)) for n, o in pairs))

    def __call__(self, u: Action) -> Action:
        return apply_relabeling(self, u)

    def __str__(self):
        return "[" + ", ".join(f"{new}/{old}" for new, old in self.pairs) + "]"


def apply_relabeling(rf: Relabeling, u: Action) -> Action:
    l = u.label
    if l is None:
        return u
    for new, old in rf.pairs:
        if old.name == l.name:
            return Action(compl_label(new) if l.output else new)
    return u


# -- processes --------------------------------------------------------------

# Compound nodes cache their hash at construction; terms are hashed
# constantly during state-space exploration.
def _hash_slot():
    return field(default=0, init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True)
class Nil:
    def __repr__(self):
        return "Nil()"


@dataclass(frozen=True, slots=True)
class Var:
    var: str


@dataclass(frozen=True, slots=True)
class Prefix:
    action: Action
    body: "Process"
    _hash: int = _hash_slot()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((Prefix, self.action, self.body)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Sum:
    left: "Process"
    right: "Process"
    _hash: int = _hash_slot()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((Sum, self.left, self.right)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Par:
    left: "Process"
    right: "Process"
    _hash: int = _hash_slot()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((Par, self.left, self.right)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Restr:
    """Restriction on bare names; blocks both ``a`` and ``'a``."""

    labels: frozenset[str]
    body: "Process"
    _hash: int = _hash_slot()

    def __post_init__(self):
        names = frozenset(self.labels)
        for n in names:
            _check_name(n, "restricted name")
        object.__setattr__(self, "labels", names)
        object.__setattr__(self, "_hash", hash((Restr, names, self.body)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Relab:
    body: "Process"
    rf: Relabeling
    _hash: int = _hash_slot()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((Relab, self.body, self.rf)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Rec:
    var: str
    body: "Process"
    _hash: int = _hash_slot()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((Rec, self.var, self.body)))

    def __hash__(self):
        return self._hash


Process = Union[Nil, Var, Prefix, Sum, Par, Restr, Relab, Rec]
NIL = Nil()


def prefix(u: Action, body: Process = NIL) -> Prefix:
    return Prefix(u, body)


def restrict(body: Process, names: Iterable[str]) -> Restr:
    return Restr(frozenset(names), body)


# -- syntactic operations ---------------------------------------------------


@lru_cache(maxsize=1 << 16)
def free_vars(p: Process) -> frozenset[str]:
    if isinstance(p, Var):
        return frozenset((p.var,))
    if isinstance(p, Nil):
        return frozenset()
    if isinstance(p, (Prefix, Restr, Relab)):
        return free_vars(p.body)
    if isinstance(p, (Sum, Par)):
        return free_vars(p.left) | free_vars(p.right)
    if isinstance(p, Rec):
        return free_vars(p.body) - {p.var}
    raise TypeError(f"not a process: {p!r}")


def is_closed(p: Process) -> bool:
    return not free_vars(p)


def _subst(e: Process, ep: Process, x: str) -> Process:
    # capture-naive, exactly by structural recursion
    if isinstance(e, Var):
        return ep if e.var == x else e
    if isinstance(e, Nil):
        return e
    if isinstance(e, Prefix):
        return Prefix(e.action, _subst(e.body, ep, x))
    if isinstance(e, Sum):
        return Sum(_subst(e.left, ep, x), _subst(e.right, ep, x))
    if isinstance(e, Par):
        return Par(_subst(e.left, ep, x), _subst(e.right, ep, x))
    if isinstance(e, Restr):
        return Restr(e.labels, _subst(e.body, ep, x))
    if isinstance(e, Relab):
        return Relab(_subst(e.body, ep, x), e.rf)
    if isinstance(e, Rec):
        if e.var == x:
            return e
        return Rec(e.var, _subst(e.body, ep, x))
    raise TypeError(f"not a process: {e!r}")


def _capturing_binder(e: Process, x: str, dangerous: frozenset[str], under: tuple[str, ...] = ()):
    """Return a binder name that would capture a free var of the substituend."""
    if isinstance(e, Var):
        if e.var == x:
            for b in under:
                if b in dangerous:
                    return b
        return None
    if isinstance(e, Nil):
        return None
    if isinstance(e, (Prefix, Restr, Relab)):
        return _capturing_binder(e.body, x, dangerous, under)
    if isinstance(e, (Sum, Par)):
        return _capturing_binder(e.left, x, dangerous, under) or _capturing_binder(
            e.right, x, dangerous, under
        )
    if isinstance(e, Rec):
        if e.var == x:
            return None
        return _capturing_binder(e.body, x, dangerous, under + (e.var,))
    raise TypeError(f"not a process: {e!r}")


def ccs_subst(e: Process, ep: Process, x: str) -> Process:
    """Replace free occurrences of variable ``x`` in ``e`` by ``ep``.

    Substitution is capture-naive, so inputs where a free identifier of
    ``ep`` would be captured by a ``rec`` inside ``e`` raise CaptureRisk.
    """
    fv = free_vars(ep)
    if fv:
        binder = _capturing_binder(e, x, fv)
        if binder is not None:
            raise CaptureRisk(f"substituting for {x!r} would capture {binder!r}")
    return _subst(e, ep, x)


def _occurs_unguarded(p: Process, x: str) -> bool:
    if isinstance(p, Var):
        return p.var == x
    if isinstance(p, (Nil, Prefix)):
        return False
    if isinstance(p, (Sum, Par)):
        return _occurs_unguarded(p.left, x) or _occurs_unguarded(p.right, x)
    if isinstance(p, (Restr, Relab)):
        return _occurs_unguarded(p.body, x)
    if isinstance(p, Rec):
        return p.var != x and _occurs_unguarded(p.body, x)
    raise TypeError(f"not a process: {p!r}")


@lru_cache(maxsize=1 << 16)
def unguarded_binder(p: Process) -> str | None:
    """Name of the first ``rec`` whose variable occurs unguarded, if any."""
    if isinstance(p, (Nil, Var)):
        return None
    if isinstance(p, (Prefix, Restr, Relab)):
        return unguarded_binder(p.body)
    if isinstance(p, (Sum, Par)):
        return unguarded_binder(p.left) or unguarded_binder(p.right)
    if isinstance(p, Rec):
        if _occurs_unguarded(p.body, p.var):
            return p.var
        return unguarded_binder(p.body)
    raise TypeError(f"not a process: {p!r}")


def is_weakly_guarded(p: Process) -> bool:
    return unguarded_binder(p) is None


def size(p: Process) -> int:
    if isinstance(p, (Nil, Var)):
        return 1
    if isinstance(p, (Prefix, Restr, Relab, Rec)):
        return 1 + size(p.body)
    return 1 + size(p.left) + size(p.right)


def labels_of(p: Process) -> frozenset[str]:
    """All label names mentioned anywhere in ``p``."""
    if isinstance(p, (Nil, Var)):
        return frozenset()
    if isinstance(p, Prefix):
        own = frozenset() if p.action.is_tau else frozenset((p.action.label.name,))
        return own | labels_of(p.body)
    if isinstance(p, Restr):
        return p.labels | labels_of(p.body)
    if isinstance(p, Relab):
        names = {l.name for pair in p.rf.pairs for l in pair}
        return frozenset(names) | labels_of(p.body)
    if isinstance(p, Rec):
        return labels_of(p.body)
    return labels_of(p.left) | labels_of(p.right)
