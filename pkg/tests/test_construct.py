import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoapprox.cone import Comp, Gen, certify, eval_expr
from isoapprox.construct import (
    Construction,
    approximate,
    approximate_normalized,
    select_cover,
    separate_points,
    separate_sets,
)
from isoapprox.errors import (
    DoesNotGenerate,
    NoSeparator,
    NotIsotone,
    NotNormalized,
    PreconditionViolated,
    UncoverableSet,
)
from isoapprox.funcspace import Family, family_of, is_isotone, sup_dist, upset_generators
from isoapprox.pl import ramp
from isoapprox.verify import check_report, check_separation, random_separation_instance

from conftest import antichain, chain, gf, isotone_functions, posets


# -- point separation --


def test_separate_points_uses_member_ramp():
    P = chain(2)
    S = family_of(P, [[2, 5]])
    e = separate_points(P, S, 0, 1)
    assert e == Comp(ramp(2, 5), Gen(0))
    assert eval_expr(P, S, e) == gf(0, 1)


def test_separate_points_antichain_upsets():
    P = antichain(2)
    S = upset_generators(P)
    e = separate_points(P, S, 0, 1)
    # up(0) = (1, 0) does not separate, up(1) = (0, 1) does
    assert e == Comp(ramp(0, 1), Gen(1))
    assert eval_expr(P, S, e) == gf(0, 1)


def test_separate_points_lowest_index_member():
    P = antichain(2)
    S = family_of(P, [[1, 1], [0, 3], [0, 1]])
    assert separate_points(P, S, 0, 1) == Comp(ramp(0, 3), Gen(1))


def test_separate_points_no_separator():
    P = chain(2)
    with pytest.raises(NoSeparator):
        separate_points(P, family_of(P, [[4, 4]]), 0, 1)


def test_separate_points_precondition():
    P = chain(2)
    with pytest.raises(PreconditionViolated):
        separate_points(P, upset_generators(P), 1, 0)


# -- cover selection --


def test_select_cover_examples():
    P = chain(2)
    assert select_cover(P, {0, 1}, {0: {0}, 1: {1}}) == [0, 1]
    assert select_cover(P, {0, 1}, {0: {0, 1}, 1: {1}}) == [0]
    assert select_cover(P, set(), {0: {0}}) == []


def test_select_cover_tie_breaks_low_index():
    assert select_cover(None, {0, 1}, {2: {0, 1}, 1: {0, 1}, 5: {0}}) == [1]


def test_select_cover_greedy_order():
    # greedy takes the 3-set first, then needs both singletons
    regions = [{0, 1}, {2, 3}, {1, 2, 4}]
    assert select_cover(None, range(5), regions) == [0, 1, 2]


def test_select_cover_uncoverable():
    with pytest.raises(UncoverableSet) as exc:
        select_cover(None, {0, 1, 2}, [{0}, {1}])
    assert exc.value.missing == [2]


# -- set separation --


def test_separate_sets_two_chain_trace():
    P = chain(2)
    S = family_of(P, [[0, 1]])
    sep = Construction(P, S).separate_sets({0}, {1})
    assert sep.values == (0, 1)
    (step,) = sep.trace.steps
    assert step.k == 1 and step.threshold == F(1, 4)
    assert sep.trace.l == 1
    assert sep.expr.op == ramp(0, F(3, 4))
    assert check_separation(P, S, sep) == []


def test_separate_sets_degenerate():
    P = chain(2)
    S = upset_generators(P)
    assert eval_expr(P, S, separate_sets(P, S, [], [1])) == gf(1, 1)
    assert eval_expr(P, S, separate_sets(P, S, [0], [])) == gf(0, 0)


def test_separate_sets_precondition():
    P = chain(2)
    with pytest.raises(PreconditionViolated) as exc:
        separate_sets(P, upset_generators(P), [1], [0])
    assert (exc.value.x, exc.value.y) == (1, 0)


def test_separate_sets_overlap_rejected():
    P = antichain(3)
    with pytest.raises(PreconditionViolated):
        separate_sets(P, upset_generators(P), [0, 1], [1, 2])


def test_separate_sets_needs_cover_of_two():
    # on a 3-antichain, separating {0, 1} from {2} with the indicators of 0 and 1 as the only
    # non-trivial members forces two point separators into the first average
    P = antichain(3)
    S = family_of(P, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    sep = Construction(P, S).separate_sets([0, 1], [2])
    assert sep.values == (0, 0, 1)
    assert check_separation(P, S, sep) == []


@st.composite
def generating_instances(draw, max_n=8):
    P = draw(posets(max_n))
    extra = draw(st.lists(isotone_functions(P), max_size=2))
    members = list(upset_generators(P).members) + extra
    order = draw(st.permutations(range(len(members))))
    return P, Family(P, tuple(members[i] for i in order))


@given(generating_instances(), st.sampled_from(["pl", "smoothstep"]))
@settings(max_examples=60)
def test_lemma_one_contract(inst, provider):
    P, S = inst
    build = Construction(P, S, provider)
    for x in P.elements:
        for y in P.elements:
            if P.le(y, x):
                continue
            v = eval_expr(P, S, build.separate_points(x, y))
            assert v[x] == 0 and v[y] == 1
            assert all(0 <= t <= 1 for t in v)
            assert is_isotone(P, v)


@given(generating_instances(), st.sampled_from(["pl", "smoothstep"]), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_lemma_two_contract(inst, provider, rnd):
    P, S = inst
    K, L = random_separation_instance(P, rnd)
    sep = Construction(P, S, provider).separate_sets(K, L)
    v = eval_expr(P, S, sep.expr)
    assert all(v[x] == 0 for x in K) and all(v[y] == 1 for y in L)
    assert all(0 <= t <= 1 for t in v) and is_isotone(P, v)
    if not sep.trace.degenerate:
        for st_ in sep.trace.steps:
            assert all(st_.g_values[x] <= 1 - F(3, 4 * st_.k) for x in K)
            assert st_.g_values[st_.y] == 1
        assert all(sep.trace.g_values[z] >= F(3, 4 * sep.trace.l) for z in L)
    assert check_separation(P, S, sep) == []


# -- approximation --


def test_worked_three_chain(chain3):
    P = chain3
    S = upset_generators(P)
    rep = approximate_normalized(P, S, gf(0, F(1, 2), 1), 2)
    assert [(lv.K, lv.L) for lv in rep.levels] == [((0,), (1, 2)), ((0, 1), (2,))]
    assert [lv.values for lv in rep.levels] == [(0, 1, 1), (0, 0, 1)]
    assert rep.F_values == gf(0, F(1, 2), 1)
    assert rep.error == 0 and rep.bound == F(1, 2)
    assert check_report(P, S, rep) == []


@pytest.mark.parametrize("n", [1, 3, 7])
def test_constant_target(n):
    P = chain(3)
    S = upset_generators(P)
    rep = approximate_normalized(P, S, gf(1, 1, 1), n)
    assert rep.F_values == gf(1, 1, 1) and rep.error == 0 and rep.levels == []
    assert certify(P, S, rep.F_expr, rep.F_values)


def test_two_chain_single_level():
    P = chain(2)
    S = family_of(P, [[0, 1]])
    rep = approximate_normalized(P, S, gf(0, 1), 1)
    assert (rep.levels[0].K, rep.levels[0].L) == ((0,), (1,))
    assert rep.F_values == gf(0, 1) and rep.error == 0


def test_approximate_rescales():
    P = chain(2)
    S = upset_generators(P)
    rep = approximate(P, S, gf(3, 7), F(2))
    assert rep.n == 2 and rep.F_values == gf(3, 7) and rep.error == 0 and rep.bound == 2
    assert certify(P, S, rep.F_expr, rep.F_values)


def test_approximate_constant():
    P = chain(2)
    rep = approximate(P, upset_generators(P), gf(5, 5), F(1, 100))
    assert rep.F_values == gf(5, 5) and rep.error == 0


def test_approximate_eps_third():
    P = chain(2)
    S = upset_generators(P)
    rep = approximate(P, S, gf(0, 1), F(1, 3))
    assert rep.n == 3 and rep.error <= F(1, 3)
    assert certify(P, S, rep.F_expr, rep.F_values)


def test_approximate_with_n():
    P = chain(4)
    S = upset_generators(P)
    rep = approximate(P, S, gf(-2, 0, 1, 4), n=3)
    assert rep.bound == 2 and rep.error <= 2
    assert certify(P, S, rep.F_expr, rep.F_values)


def test_approximate_errors():
    P = chain(2)
    S = upset_generators(P)
    with pytest.raises(NotIsotone):
        approximate_normalized(P, S, gf(1, 0), 2)
    with pytest.raises(NotNormalized):
        approximate_normalized(P, S, gf(0, F(1, 2)), 2)
    with pytest.raises(DoesNotGenerate) as exc:
        approximate_normalized(P, family_of(P, [[1, 1]]), gf(0, 1), 2)
    assert exc.value.witness == (1, 0)


def level_of(v, n):
    """j with j/n <= v < (j+1)/n, by linear scan (oracle for the floor)."""
    j = 0
    while F(j + 1, n) <= v:
        j += 1
    return j


@given(generating_instances(max_n=7), st.data(), st.integers(1, 6), st.sampled_from(["pl", "smoothstep"]))
@settings(max_examples=60)
def test_theorem_bound_and_cases(inst, data, n, provider):
    P, S = inst
    raw = data.draw(isotone_functions(P))
    f = raw if raw.is_constant() else type(raw)(tuple((v - raw.min()) / (raw.max() - raw.min()) for v in raw))
    rep = approximate_normalized(P, S, f, n, provider)
    F_ = rep.F_values
    assert sup_dist(f, F_) <= F(1, n)
    for m in P.elements:
        if (f[m] * n).denominator == 1:
            assert F_[m] == f[m]
        else:
            j = level_of(f[m], n)
            assert F(j, n) <= F_[m] <= F(j + 1, n)
    assert certify(P, S, rep.F_expr, F_) and is_isotone(P, F_)
    assert check_report(P, S, rep) == []


def test_determinism_byte_identical():
    from isoapprox.poset import random_poset
    from isoapprox.verify import normalize, random_isotone

    P = random_poset(12, F(1, 3), seed=7)
    S = upset_generators(P)
    f = normalize(random_isotone(P, 5, seed=1))
    a = json.dumps(approximate_normalized(P, S, f, 4).to_json())
    b = json.dumps(approximate_normalized(P, S, f, 4).to_json())
    assert a == b
