"""Reference implementations used only by the tests.

They are deliberately naive and share no code with the package beyond the
AST classes, so agreement with the package is meaningful evidence.
"""

from __future__ import annotations

import itertools

from ccs.syntax import Action, Label, Nil, Par, Prefix, Rec, Relab, Restr, Sum, Var

# -- SOS, written as a table of rule applications ---------------------------


def subst(p, e, x):
    if isinstance(p, Var):
        return e if p.var == x else p
    if isinstance(p, Nil):
        return p
    if isinstance(p, Prefix):
        return Prefix(p.action, subst(p.body, e, x))
    if isinstance(p, Sum):
        return Sum(subst(p.left, e, x), subst(p.right, e, x))
    if isinstance(p, Par):
        return Par(subst(p.left, e, x), subst(p.right, e, x))
    if isinstance(p, Restr):
        return Restr(p.labels, subst(p.body, e, x))
    if isinstance(p, Relab):
        return Relab(subst(p.body, e, x), p.rf)
    if p.var == x:
        return p
    return Rec(p.var, subst(p.body, e, x))


def complementary(u: Action, v: Action) -> bool:
    return (
        u.label is not None
        and v.label is not None
        and u.label.name == v.label.name
        and u.label.output != v.label.output
    )


def relabel(rf, u: Action) -> Action:
    if u.label is None:
        return u
    for new, old in rf.pairs:
        if old.name == u.label.name:
            if u.label.output == old.output:
                return Action(new)
            return Action(Label(new.name, not new.output))
    return u


def oracle_transitions(p, fuel: int = 40) -> set:
    """All (action, target) pairs derivable for ``p``."""
    if fuel == 0:
        raise RecursionError("unfolding fuel exhausted")
    if isinstance(p, Nil):
        return set()
    if isinstance(p, Prefix):
        return {(p.action, p.body)}
    if isinstance(p, Sum):
        return oracle_transitions(p.left, fuel) | oracle_transitions(p.right, fuel)
    if isinstance(p, Par):
        left = oracle_transitions(p.left, fuel)
        right = oracle_transitions(p.right, fuel)
        out = {(u, Par(t, p.right)) for u, t in left}
        out |= {(u, Par(p.left, t)) for u, t in right}
        out |= {
            (Action(None), Par(t1, t2)) for (u, t1), (v, t2) in itertools.product(left, right) if complementary(u, v)
        }
        return out
    if isinstance(p, Restr):
        return {
            (u, Restr(p.labels, t))
            for u, t in oracle_transitions(p.body, fuel)
            if u.label is None or u.label.name not in p.labels
        }
    if isinstance(p, Relab):
        return {(relabel(p.rf, u), Relab(t, p.rf)) for u, t in oracle_transitions(p.body, fuel)}
    if isinstance(p, Rec):
        return oracle_transitions(subst(p.body, p, p.var), fuel - 1)
    raise TypeError(p)


def derivable(p, u: Action, q, fuel: int = 40) -> bool:
    """Goal-directed search for a derivation of ``p --u--> q``."""
    if fuel == 0:
        return False
    if isinstance(p, Prefix):
        return p.action == u and p.body == q
    if isinstance(p, Sum):
        return derivable(p.left, u, q, fuel) or derivable(p.right, u, q, fuel)
    if isinstance(p, Par):
        if not isinstance(q, Par):
            return False
        if q.right == p.right and derivable(p.left, u, q.left, fuel):
            return True
        if q.left == p.left and derivable(p.right, u, q.right, fuel):
            return True
        if u.label is None:
            for name in _names(p):
                for out in (False, True):
                    a, b = Action(Label(name, out)), Action(Label(name, not out))
                    if derivable(p.left, a, q.left, fuel) and derivable(p.right, b, q.right, fuel):
                        return True
        return False
    if isinstance(p, Restr):
        if not isinstance(q, Restr) or q.labels != p.labels:
            return False
        if u.label is not None and u.label.name in p.labels:
            return False
        return derivable(p.body, u, q.body, fuel)
    if isinstance(p, Relab):
        if not isinstance(q, Relab) or q.rf != p.rf:
            return False
        return any(relabel(p.rf, v) == u and derivable(p.body, v, q.body, fuel) for v in _candidate_actions(p.body))
    if isinstance(p, Rec):
        return derivable(subst(p.body, p, p.var), u, q, fuel - 1)
    return False


def _names(p) -> set:
    if isinstance(p, Prefix):
        here = {p.action.label.name} if p.action.label is not None else set()
        return here | _names(p.body)
    if isinstance(p, Relab):
        return _names(p.body) | {l.name for pair in p.rf.pairs for l in pair}
    if isinstance(p, (Restr, Rec)):
        return _names(p.body)
    if isinstance(p, (Sum, Par)):
        return _names(p.left) | _names(p.right)
    return set()


def _candidate_actions(p) -> set:
    acts = {Action(None)}
    for n in _names(p):
        acts |= {Action(Label(n)), Action(Label(n, True))}
    return acts


# -- bisimulation by naive greatest fixpoint --------------------------------


def succ_map(num_states, edges):
    out = {}
    for s, u, t in edges:
        out.setdefault((s, u), set()).add(t)
    return out


def naive_gfp(num_states, edges):
    """Start from all pairs and delete pairs violating the transfer property."""
    succ = succ_map(num_states, edges)
    acts = {u for _, u, _ in edges}
    rel = {(p, q) for p in range(num_states) for q in range(num_states)}

    def ok(p, q):
        for u in acts:
            ps, qs = succ.get((p, u), ()), succ.get((q, u), ())
            if any(not any((p1, q1) in rel for q1 in qs) for p1 in ps):
                return False
            if any(not any((p1, q1) in rel for p1 in ps) for q1 in qs):
                return False
        return True

    changed = True
    while changed:
        changed = False
        for pair in list(rel):
            if not ok(*pair):
                rel.discard(pair)
                changed = True
    return rel


TAU = Action(None)


def weak_edges(num_states, edges):
    """Saturated edges: tau-hat is reflexive-transitive tau closure."""
    reach = [[i == j for j in range(num_states)] for i in range(num_states)]
    for s, u, t in edges:
        if u == TAU:
            reach[s][t] = True
    for k in range(num_states):
        for i in range(num_states):
            if reach[i][k]:
                for j in range(num_states):
                    if reach[k][j]:
                        reach[i][j] = True
    out = {(i, TAU, j) for i in range(num_states) for j in range(num_states) if reach[i][j]}
    for s, u, t in edges:
        if u == TAU:
            continue
        for i in range(num_states):
            if reach[i][s]:
                for j in range(num_states):
                    if reach[t][j]:
                        out.add((i, u, j))
    return out


def naive_weak_gfp(num_states, edges):
    return naive_gfp(num_states, weak_edges(num_states, edges))


def partition_relation(block_ids):
    n = len(block_ids)
    return {(p, q) for p in range(n) for q in range(n) if block_ids[p] == block_ids[q]}


def is_bisimulation(rel, edges_left, edges_right):
    sl, sr = succ_map(0, edges_left), succ_map(0, edges_right)
    acts = {u for _, u, _ in edges_left} | {u for _, u, _ in edges_right}
    for p, q in rel:
        for u in acts:
            ps, qs = sl.get((p, u), ()), sr.get((q, u), ())
            if any(not any((p1, q1) in rel for q1 in qs) for p1 in ps):
                return False
            if any(not any((p1, q1) in rel for p1 in ps) for q1 in qs):
                return False
    return True


def exists_bisimulation(left, right, weak: bool = False) -> bool:
    """Exhaustive search over relations between the two state spaces."""
    el, er = list(left.edges), list(right.edges)
    if weak:
        el, er = weak_edges(left.num_states, el), weak_edges(right.num_states, er)
    pairs = [(p, q) for p in range(left.num_states) for q in range(right.num_states) if (p, q) != (0, 0)]
    if len(pairs) > 20:
        raise ValueError("too many pairs for exhaustive search")
    for k in range(len(pairs) + 1):
        for extra in itertools.combinations(pairs, k):
            if is_bisimulation({(0, 0), *extra}, el, er):
                return True
    return False


# -- expansion-law transition characterizations ------------------------------


def sigma_expected(fs):
    """sigma fs --u--> E  iff  some f_k --u--> E."""
    out = set()
    for f in fs:
        out |= oracle_transitions(f)
    return out


def sync_expected(u, p, fs):
    """Only tau moves to p | q_j, for each f_j = l'.q_j with u = l and l' = compl l."""
    return {(TAU, Par(p, f.body)) for f in fs if complementary(u, f.action)}


def all_sync_expected(fs, gs):
    return {(TAU, Par(f.body, g.body)) for f in fs for g in gs if complementary(f.action, g.action)}
