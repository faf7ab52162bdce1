from fractions import Fraction

import pytest
from hypothesis import strategies as st

from isoapprox.funcspace import GroundFunction
from isoapprox.pl import PLFunction
from isoapprox.poset import poset_from_covers


def chain(n):
    return poset_from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n):
    return poset_from_covers(n, [])


def gf(*values):
    return GroundFunction.of(values)


small_fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)
nonneg_fractions = st.fractions(min_value=0, max_value=5, max_denominator=8)


@st.composite
def posets(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return poset_from_covers(n, [(perm[i], perm[j]) for (i, j), k in zip(pairs, keep) if k])


@st.composite
def isotone_functions(draw, P, max_value=6):
    """Random isotone function: raw values raised to the max over each down-set."""
    raw = draw(st.lists(st.integers(0, max_value), min_size=P.n, max_size=P.n))
    return GroundFunction(tuple(
        Fraction(max(raw[a] for a in P.elements if P.leq[a][b])) for b in P.elements
    ))


@st.composite
def pl_functions(draw):
    """Non-decreasing PL maps with 1 to 5 breakpoints."""
    k = draw(st.integers(1, 5))
    xs = sorted(draw(st.sets(small_fractions, min_size=k, max_size=k)))
    y0 = draw(small_fractions)
    ys = [y0]
    for _ in xs[1:]:
        ys.append(ys[-1] + draw(nonneg_fractions))
    return PLFunction(tuple(zip(xs, ys)), draw(nonneg_fractions), draw(nonneg_fractions))


@pytest.fixture
def chain3():
    return chain(3)
