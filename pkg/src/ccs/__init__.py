"""CCS toolkit: parse terms, enumerate SOS transitions, build LTSs,
decide strong/weak/rooted-weak bisimilarity, and expand parallel
compositions of prefixed sums."""

from .errors import *  # noqa: F401,F403
from .parser import parse, render
from .semantics import SemanticsConfig, Transition, step, transition_set, transitions
from .syntax import (
    NIL,
    TAU,
    Action,
    In,
    Label,
    Nil,
    Out,
    Par,
    Prefix,
    Rec,
    Relab,
    Relabeling,
    Restr,
    Sum,
    Var,
    apply_relabeling,
    ccs_subst,
    coname,
    compl_action,
    compl_label,
    free_vars,
    is_weakly_guarded,
    label_of,
    name,
)

__version__ = "0.1.0"
