from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from isoapprox.errors import CarrierMismatch, EmptyFamily, NotIsotone
from isoapprox.funcspace import (
    Family,
    GroundFunction,
    family_of,
    generated_preorder,
    generates,
    is_isotone,
    separates_points,
    sup_dist,
    upset_generators,
)

from conftest import antichain, chain, gf, isotone_functions, posets


def brute_preorder(P, members):
    return [[all(f[x] <= f[y] for f in members) for y in range(P.n)] for x in range(P.n)]


def reachable(P, a):
    """Upset of ``a`` by explicit graph search over the closure rows (test oracle)."""
    seen, todo = {a}, [a]
    while todo:
        x = todo.pop()
        for y in range(P.n):
            if P.leq[x][y] and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def test_is_isotone_examples():
    assert is_isotone(chain(2), gf(0, 1))
    assert not is_isotone(chain(2), gf(1, 0))
    assert is_isotone(chain(4), gf(3, 3, 3, 3))


def test_is_isotone_shape_mismatch():
    with pytest.raises(CarrierMismatch):
        is_isotone(chain(2), gf(0, 1, 2))


def test_preorder_upsets_of_chain():
    P = chain(2)
    S = upset_generators(P)
    rel = generated_preorder(P, S)
    assert [list(r) for r in rel] == brute_preorder(P, S.members)
    assert rel == P.leq


def test_preorder_constant_on_antichain_is_total():
    P = antichain(2)
    assert generated_preorder(P, family_of(P, [[5, 5]])) == ((True, True), (True, True))


def test_preorder_injective_on_antichain():
    P = antichain(3)
    S = family_of(P, [[2, 0, 1]])
    rel = generated_preorder(P, S)
    assert [list(r) for r in rel] == brute_preorder(P, S.members)
    # total order 1 < 2 < 0
    assert rel[1][2] and rel[2][0] and not rel[0][1]


def test_preorder_empty_family():
    P = chain(2)
    with pytest.raises(EmptyFamily):
        generated_preorder(P, Family(P, ()))


def test_generates_examples():
    P = chain(2)
    assert generates(P, upset_generators(P))
    res = generates(P, family_of(P, [[3, 3]]))
    assert not res and res.witness == (1, 0)
    Q = antichain(2)
    assert not generates(Q, family_of(Q, [[1, 1]]))


def test_family_rejects_non_isotone_member():
    with pytest.raises(NotIsotone) as exc:
        family_of(chain(2), [[0, 1], [1, 0]])
    assert exc.value.index == 1


def test_separates_points_examples():
    P = chain(3)
    assert separates_points(P, upset_generators(P))
    assert not separates_points(P, family_of(P, [[1, 1, 1]]))
    assert separates_points(chain(1), family_of(chain(1), [[4]]))


def test_sup_dist_examples():
    assert sup_dist(gf(0, 1), gf(0, 1)) == 0
    assert sup_dist(gf(0, 1), gf(F(1, 2), 1)) == F(1, 2)
    assert sup_dist(gf(0, F(1, 2), 1), gf(0, F(1, 2), 1)) == 0
    with pytest.raises(CarrierMismatch):
        sup_dist(gf(0), gf(0, 1))


def test_upset_generators_examples():
    P = chain(2)
    oracle = [tuple(int(x in reachable(P, a)) for x in range(2)) for a in range(2)]
    assert oracle == [(1, 1), (0, 1)]
    assert [tuple(m) for m in upset_generators(P).members] == oracle
    assert [tuple(m) for m in upset_generators(antichain(2)).members] == [(1, 0), (0, 1)]
    assert [tuple(m) for m in upset_generators(chain(1)).members] == [(1,)]


@st.composite
def poset_and_family(draw):
    P = draw(posets())
    members = draw(st.lists(isotone_functions(P), min_size=1, max_size=4))
    return P, Family(P, tuple(members))


@given(poset_and_family())
def test_preorder_properties(PS):
    P, S = PS
    rel = generated_preorder(P, S)
    assert [list(r) for r in rel] == brute_preorder(P, S.members)
    r = range(P.n)
    assert all(rel[i][i] for i in r)
    assert all(rel[i][k] for i in r for j in r for k in r if rel[i][j] and rel[j][k])
    # isotone members never refute a true relation
    assert all(rel[i][j] for i in r for j in r if P.leq[i][j])
    antisym = all(not (rel[i][j] and rel[j][i]) or i == j for i in r for j in r)
    assert antisym == separates_points(P, S)


@given(poset_and_family())
def test_generates_implies_separates(PS):
    P, S = PS
    if generates(P, S):
        assert separates_points(P, S)


@given(posets())
def test_upset_generators_generate(P):
    S = upset_generators(P)
    assert generates(P, S)
    assert all(is_isotone(P, m) for m in S.members)


@given(posets(), st.data())
def test_generates_witness_is_genuine(P, data):
    S = Family(P, tuple(data.draw(st.lists(isotone_functions(P), min_size=1, max_size=2))))
    res = generates(P, S)
    if not res:
        a, b = res.witness
        assert not P.le(a, b)
        assert all(f[a] <= f[b] for f in S.members)


vectors = st.lists(st.fractions(-5, 5, max_denominator=6), min_size=3, max_size=3).map(
    lambda v: GroundFunction(tuple(v))
)


@given(vectors, vectors, vectors)
@settings(max_examples=60)
def test_sup_dist_is_metric(f, g, h):
    assert sup_dist(f, g) == sup_dist(g, f)
    assert sup_dist(f, h) <= sup_dist(f, g) + sup_dist(g, h)
    assert (sup_dist(f, g) == 0) == (f.values == g.values)
