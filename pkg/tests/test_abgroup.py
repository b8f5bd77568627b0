from itertools import product
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steinitz.abgroup import FinAbGroup, Subgroup, hermite_normal_form
from steinitz.arith import invariant_factors
from steinitz.errors import CapacityError, DomainError


def _chains(limit):
    """All invariant-factor chains of order <= limit."""
    out = set()
    for n1 in range(1, limit + 1):
        for n2 in [x for x in range(1, n1 + 1) if n1 % x == 0]:
            for n3 in [x for x in range(1, n2 + 1) if n2 % x == 0]:
                if n1 * n2 * n3 <= limit:
                    out.add(tuple(f for f in (n1, n2, n3) if f > 1) or (1,))
    return sorted(out)


GROUPS = _chains(36)


def _set_closure(G, gens):
    seen = {G.identity()}
    frontier = list(seen)
    while frontier:
        frontier = [y for x in frontier for g in gens if (y := x + g) not in seen and not seen.add(y)]
    return seen


@pytest.mark.parametrize("factors", GROUPS, ids=str)
def test_group_laws_exhaustive(factors):
    G = FinAbGroup(factors)
    elems = G.elements()
    assert len(elems) == G.order
    idx = {x: i for i, x in enumerate(elems)}
    cayley = np.array([[idx[x + y] for y in elems] for x in elems])
    # associativity over all triples: (x+y)+z against x+(y+z)
    assert np.array_equal(cayley[cayley, :], cayley[:, cayley])
    assert np.array_equal(cayley, cayley.T)
    e = idx[G.identity()]
    assert all(cayley[i, e] == i for i in range(len(elems)))
    assert all(idx[-x] in np.nonzero(cayley[idx[x]] == e)[0] for x in elems)


@pytest.mark.parametrize("factors", [f for f in GROUPS if 1 < np.prod(f) <= 24], ids=str)
def test_cyclic_subgroups_match_closure(factors):
    G = FinAbGroup(factors)
    for x in G.elements():
        S = Subgroup.generated(G, [x])
        assert set(S.enumerate()) == _set_closure(G, [x])
        assert S.order() == x.order()
        for n in (2, 3):
            assert set(S.power(n).enumerate()) == {n * y for y in S.enumerate()}


@pytest.mark.parametrize("factors", [(6, 2), (4, 4), (2, 2, 2), (12,), (3, 3)], ids=str)
def test_lattice_operations_match_sets(factors):
    G = FinAbGroup(factors)
    elems = G.elements()
    cyc = [Subgroup.generated(G, [x]) for x in elems]
    for A, B in product(cyc, repeat=2):
        AB = A * B
        assert set(AB.enumerate()) == {a + b for a in A.enumerate() for b in B.enumerate()}
        assert A <= AB and B <= AB and AB >= A
        assert (A <= B) == set(A.enumerate()).issubset(B.enumerate())
        assert (A == B) == (set(A.enumerate()) == set(B.enumerate()))


def test_worked_example():
    G = FinAbGroup((6, 2))
    S = Subgroup.generated(G, [G.elem(2, 0), G.elem(3, 1)])
    assert S.order() == 6
    assert Subgroup.generated(G, [G.elem(2, 0)]).order() == 3
    C6 = FinAbGroup((6,))
    assert set(C6.whole().power(3).enumerate()) == {C6.elem(0), C6.elem(3)}


def test_trivial_and_whole():
    G = FinAbGroup((4, 2))
    assert G.trivial().is_trivial()
    assert G.whole().is_whole()
    assert G.whole().power(4).is_trivial()
    assert str(G) == "C(4) x C(2)"
    assert str(FinAbGroup((1,))) == "trivial"


def test_errors():
    with pytest.raises(DomainError):
        FinAbGroup((2, 4))
    G, H = FinAbGroup((2,)), FinAbGroup((3,))
    with pytest.raises(DomainError):
        G.elem(1) + H.elem(1)
    with pytest.raises(DomainError):
        G.whole() * H.whole()
    with pytest.raises(DomainError):
        G.whole().power(-1)
    with pytest.raises(CapacityError):
        FinAbGroup((10_007,)).whole().enumerate(cap=100)


def test_hnf_rejects_deficient_rank():
    with pytest.raises(DomainError):
        hermite_normal_form([[1, 0]], 2)


vectors = st.lists(st.integers(-50, 50), min_size=2, max_size=2)


@settings(max_examples=200)
@given(st.lists(vectors, max_size=4), st.integers(0, 12))
def test_subgroup_algebra(gens, n):
    G = FinAbGroup((12, 6))
    S = Subgroup.generated(G, gens)
    T = Subgroup.generated(G, gens[:1])
    # canonical form: order of the generators does not matter
    assert S == Subgroup.generated(G, list(reversed(gens)))
    assert T <= S
    assert (S * T) == S
    assert S.power(n) <= S
    assert S.power(n) == Subgroup.generated(G, [n * g for g in S.generators()])
    assert G.order % S.order() == 0
    assert all(S.contains(G.elem(g)) for g in gens)
    assert len(S.enumerate()) == S.order()


@given(st.lists(st.integers(1, 8), min_size=1, max_size=3), st.integers(0, 6), st.integers(0, 6))
def test_power_laws(orders, a, b):
    G = FinAbGroup(tuple(invariant_factors(orders)))
    W = G.whole()
    assert W.power(a).power(b) == W.power(a * b)
    assert W.power(a) * W.power(b) == W.power(gcd(a, b))
