import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccs import NIL, TAU, In, Label, Out, Par, Prefix, Rec, Sum, Var, parse, render, transitions
from ccs.equiv import strong_equiv
from ccs.errors import EmptySum, NotAPrefix, NotPrefixedSum, UnknownLaw
from ccs.generate import random_prefixed_sum
from ccs.laws import (
    LAWS,
    PrefixedSummand,
    all_sync,
    check_law,
    expand,
    instantiate,
    is_prefix,
    law_catalog,
    pref_act,
    pref_proc,
    sample_bindings,
    sigma,
    simplify_nil_summands,
    summands,
    sync,
    verify_law,
)

from oracles import all_sync_expected, sigma_expected, sync_expected
from strategies import actions, finite_terms, seeded_processes

a0, b0 = parse("a.0"), parse("b.0")


def ps(u, body=NIL):
    return PrefixedSummand(u, body)


# -- accessors ---------------------------------------------------------------


def test_prefix_accessors():
    assert pref_act(parse("a.0")) == In("a")
    assert pref_proc(parse("tau.b.0")) == parse("b.0")
    assert not is_prefix(NIL)
    assert is_prefix(parse("'a.0"))
    with pytest.raises(NotAPrefix):
        pref_act(NIL)
    with pytest.raises(NotAPrefix):
        pref_proc(parse("a.0 + b.0"))
    with pytest.raises(NotAPrefix):
        PrefixedSummand.of(NIL)


def test_summands_of_a_sum():
    assert summands(parse("a.0 + b.0 + tau.c.0")) == [ps(In("a")), ps(In("b")), ps(TAU, parse("c.0"))]
    assert summands(parse("a.0 + (b.0 + c.0)")) == [ps(In("a")), ps(In("b")), ps(In("c"))]
    with pytest.raises(NotPrefixedSum):
        summands(parse("a.0 + 0"))
    with pytest.raises(NotPrefixedSum):
        summands(parse("a.0 | b.0"))


# -- sigma, sync, all_sync -----------------------------------------------------


def test_sigma_examples():
    c0 = parse("c.0")
    assert sigma([a0]) == a0
    assert sigma([a0, b0]) == Sum(a0, b0)
    assert sigma([a0, b0, c0]) == Sum(Sum(a0, b0), c0)
    with pytest.raises(EmptySum):
        sigma([])


def test_sync_examples():
    p, q = parse("c.0"), parse("b.0")
    assert sync(TAU, p, [ps(In("b"), q)]) == NIL
    assert sync(In("a"), p, [ps(Out("a"), q)]) == Prefix(TAU, Par(p, q))
    assert sync(In("a"), p, [ps(In("b"), q)]) == NIL
    assert sync(In("a"), p, [ps(TAU, q)]) == NIL
    with pytest.raises(EmptySum):
        sync(In("a"), p, [])


def test_sync_accumulates_on_the_left():
    # base case index 0 gives nil, later matches are added in front
    fs = [ps(In("b")), ps(Out("a"), parse("c.0")), ps(Out("a"))]
    t1 = Prefix(TAU, Par(NIL, parse("c.0")))
    t2 = Prefix(TAU, Par(NIL, NIL))
    assert sync(In("a"), NIL, fs) == Sum(t2, Sum(t1, NIL))


def test_all_sync_examples():
    tau00 = Prefix(TAU, Par(NIL, NIL))
    assert all_sync([ps(In("a"))], [ps(Out("a"))]) == tau00
    assert all_sync([ps(In("a"))], [ps(In("b"))]) == NIL
    # hand evaluation of both recursions
    fs = [ps(In("a")), ps(Out("b"))]
    gs = [ps(Out("a")), ps(In("b"))]
    assert all_sync(fs, gs) == Sum(tau00, Sum(tau00, NIL))
    with pytest.raises(EmptySum):
        all_sync([], gs)


def test_expand_examples():
    assert render(expand(a0, parse("'a.0"))) == "a.(0 | 'a.0) + 'a.(a.0 | 0) + tau.(0 | 0)"
    e = expand(a0, b0)
    assert e == Sum(Sum(Prefix(In("a"), Par(NIL, b0)), Prefix(In("b"), Par(a0, NIL))), NIL)
    assert strong_equiv(e, Par(a0, b0)).related
    with pytest.raises(NotPrefixedSum):
        expand(parse("a.0 + 0"), b0)


def test_simplify_nil_summands():
    assert simplify_nil_summands(expand(a0, b0)) == Sum(Prefix(In("a"), Par(NIL, b0)), Prefix(In("b"), Par(a0, NIL)))
    assert simplify_nil_summands(parse("0 + 0")) == NIL
    assert simplify_nil_summands(parse("a.(0 + b.0) | rec X. (0 + c.X)")) == parse("a.b.0 | rec X. c.X")


@given(finite_terms)
def test_simplify_nil_summands_preserves_strong_equivalence(p):
    assert strong_equiv(simplify_nil_summands(p), p).related


def prefixed_lists(max_len=3):
    bodies = st.sampled_from([NIL, a0, parse("'b.0")])
    return st.lists(st.builds(PrefixedSummand, actions, bodies), min_size=1, max_size=max_len)


@given(prefixed_lists(4))
def test_sigma_transition_characterization(fs):
    procs = [f.process for f in fs]
    assert set(transitions(sigma(procs))) == sigma_expected(procs)


@given(actions, finite_terms, prefixed_lists(4))
def test_sync_transition_characterization(u, p, fs):
    assert set(transitions(sync(u, p, fs))) == sync_expected(u, p, fs)


@given(prefixed_lists(4), prefixed_lists(4))
def test_all_sync_transition_characterization(fs, gs):
    assert set(transitions(all_sync(fs, gs))) == all_sync_expected(fs, gs)


@settings(max_examples=150)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 4))
def test_expansion_is_sound(seed, n, m):
    rng = random.Random(seed)
    p, q = random_prefixed_sum(rng, n), random_prefixed_sum(rng, m)
    assert strong_equiv(expand(p, q), Par(p, q)).related
    assert strong_equiv(simplify_nil_summands(expand(p, q)), Par(p, q)).related


# -- catalog -----------------------------------------------------------------


def test_catalog_shape():
    groups = {}
    for law in law_catalog():
        groups[law.group] = groups.get(law.group, 0) + 1
    assert groups == {"sum": 8, "par": 9, "restriction": 5, "relabeling": 3, "recursion": 3}
    assert len(LAWS) == 28
    assert "STRONG_PAR_PREF_SYNCR" in LAWS and "STRONG_LEFT_SUM_MID_IDEMP" in LAWS


def test_verify_law_examples():
    assert verify_law("STRONG_SUM_IDENT_R", {"E": a0}).related
    inst = verify_law("STRONG_RESTR_PR_LAB_NIL", {"l": In("a"), "L": {"a"}, "E": b0})
    assert inst.side_conditions_met and inst.related and inst.rhs == NIL
    inst = verify_law("STRONG_UNFOLDING", {"X": "X", "E": "a.X"})
    assert inst.lhs == Rec("X", Prefix(In("a"), Var("X")))
    assert inst.rhs == Prefix(In("a"), Rec("X", Prefix(In("a"), Var("X"))))
    assert inst.related


def test_string_bindings_are_parsed():
    inst = verify_law("STRONG_PAR_PREF_SYNCR", {"l": "a", "l'": "'a", "E": "b.0", "E'": "0"})
    assert inst.passed and inst.side_conditions_met
    inst = verify_law("STRONG_RELAB_PREFIX", {"u": "'a", "rf": "[c/a]", "E": "a.0"})
    assert render(inst.rhs) == "'c.(a.0[c/a])"
    assert inst.related


def test_side_conditions_are_evaluated_not_assumed():
    # complementary labels violate the no-sync side condition; the rhs misses a tau
    inst = verify_law("STRONG_PAR_PREF_NO_SYNCR", {"l": "a", "l'": "'a", "E": "0", "E'": "0"})
    assert not inst.side_conditions_met
    assert not inst.related
    assert inst.passed
    inst = verify_law("STRONG_RESTR_PREFIX_LABEL", {"l": "'a", "L": ["a"], "E": "0"})
    assert not inst.side_conditions_met and not inst.related
    inst = verify_law("STRONG_RESTR_PR_LAB_NIL", {"l": "'a", "L": ["a"], "E": "0"})
    assert inst.side_conditions_met and inst.related


def test_verify_law_errors():
    with pytest.raises(UnknownLaw):
        verify_law("STRONG_SUM_NOPE", {})
    with pytest.raises(ValueError):
        verify_law("STRONG_SUM_COMM", {"E": a0})
    with pytest.raises(ValueError):
        verify_law("STRONG_PAR_PREF_SYNCR", {"l": TAU, "l'": "a", "E": "0", "E'": "0"})


@pytest.mark.parametrize("name", sorted(LAWS))
def test_sampled_bindings_satisfy_side_conditions(name):
    rng = random.Random(name)
    for _ in range(20):
        _, _, ok = instantiate(name, sample_bindings(name, rng))
        assert ok


@pytest.mark.parametrize("name", sorted(LAWS))
def test_each_law_holds_on_random_instances(name):
    result = check_law(name, samples=15, seed=11)
    assert result.ok, [(render(f.lhs), render(f.rhs)) for f in result.failures]


def test_check_law_is_reproducible():
    a = check_law("STRONG_PAR_ASSOC", samples=5, seed=3)
    b = check_law("STRONG_PAR_ASSOC", samples=5, seed=3)
    assert a == b


# -- the engine catches broken laws --------------------------------------------

MUTANTS = [
    # dropping the synchronisation summand
    (
        lambda E, F: (
            Par(Prefix(In("a"), E), Prefix(Out("a"), F)),
            Sum(Prefix(In("a"), Par(E, Prefix(Out("a"), F))), Prefix(Out("a"), Par(Prefix(In("a"), E), F))),
        )
    ),
    # prefix does not distribute over sum
    (lambda E, F: (Prefix(In("a"), Sum(Prefix(In("b"), E), Prefix(In("c"), F))), Sum(Prefix(In("a"), Prefix(In("b"), E)), Prefix(In("a"), Prefix(In("c"), F))))),
    # tau is not strongly invisible
    (lambda E, F: (Prefix(TAU, Prefix(In("b"), E)), Prefix(In("b"), E))),
]


@pytest.mark.parametrize("mutant", range(len(MUTANTS)))
@given(seeded_processes(depth=2), seeded_processes(depth=2))
def test_false_laws_are_refuted(mutant, e, f):
    lhs, rhs = MUTANTS[mutant](e, f)
    assert not strong_equiv(lhs, rhs).related


def test_label_metavariable_from_label_object():
    inst = verify_law("STRONG_PAR_PREF_NO_SYNCR", {"l": Label("a"), "l'": Label("b"), "E": "0", "E'": "0"})
    assert inst.side_conditions_met and inst.related
