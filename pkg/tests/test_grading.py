from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from mirroralg.grading import (Degree, GradingDatum, enumerate_cochain_supports,
                               first_order_supports, monomial_degree, mu1_vanishing_certificate,
                               normalize_degree, p_morphism, r_degree,
                               thh2_vanishing_certificate)


def test_normalize_subtracts_relation():
    G = GradingDatum(4, 1)
    assert normalize_degree(Degree(-4, (1, 1, 1, 1)), G) == Degree(2, (0, 0, 0, 0))


def test_normalize_identity_when_c_zero():
    G = GradingDatum(4, 3)
    assert normalize_degree(Degree(7, (0, 0, 0, 0)), G) == Degree(7, (0, 0, 0, 0))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_product_of_u_in_g1(n):
    G = GradingDatum(n, 1)
    assert monomial_degree((0,) * n, (1,) * n, (), G) == Degree(n - 2, (0,) * n)


def test_r_degree_and_empty_monomial():
    G = GradingDatum(4, 3)
    assert monomial_degree((1, 0, 0, 0), (0,) * 4, (), G) == Degree(-4, (3, 0, 0, 0))
    assert r_degree(G, 2) == Degree(-4, (0, 3, 0, 0))
    assert monomial_degree((0,) * 4, (0,) * 4, (), G) == Degree(0, (0,) * 4)


def test_product_of_all_r_in_g43():
    G = GradingDatum(4, 3)
    assert monomial_degree((1, 1, 1, 1), (0,) * 4, (), G) == Degree(-10, (0,) * 4)


def test_degree_parse():
    assert Degree.parse("(3; 1,0,2)") == Degree(3, (1, 0, 2))
    with pytest.raises(ValueError):
        Degree.parse("3,1")


def test_p_morphism_respects_relation():
    for n, a in [(4, 2), (4, 3), (5, 3)]:
        assert p_morphism(n, a).respects_relation()


def test_mu1_certificate_43_is_vacuous():
    cert = mu1_vanishing_certificate(GradingDatum(4, 3))
    assert cert["holds"] and cert["supports"] == []


def test_mu1_certificate_53_has_top_support():
    cert = mu1_vanishing_certificate(GradingDatum(5, 3))
    assert cert["holds"]
    assert cert["supports"] == ["theta^{1,2,3,4,5} -> r1*r2*r3*r4*r5"]


def test_no_higher_order_thh2_53():
    assert thh2_vanishing_certificate(GradingDatum(5, 3))["holds"]


def test_first_order_supports_43_are_r_u_cubed():
    sups = first_order_supports(GradingDatum(4, 3))
    assert sorted(s.describe() for s in sups) == ["r%d*u%d^3" % (j, j) for j in range(1, 5)]


def _brute_polyvector(n, a, target, jmax, qmax):
    out = set()
    for size in range(n + 1):
        for K in combinations(range(1, n + 1), size):
            for c in product(range(jmax + 1), repeat=n):
                j = sum(c)
                if j > jmax:
                    continue
                for q in range(-qmax, qmax + 1):
                    b = tuple((k + 1 in K) + a * c[k] - q for k in range(n))
                    if min(b) < 0:
                        continue
                    t = (n - 2) * q + (2 - a) * j
                    if sum(b) + t == target and sum(b) <= 2 * n:
                        out.add((K, b, c, q))
    return out


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([(4, 2), (4, 3), (5, 3), (5, 4)]), st.integers(-2, 4))
def test_polyvector_enumeration_matches_brute_force(na, target):
    n, a = na
    G = GradingDatum(n, a)
    bounds = {"j": 3, "q": 4}
    got = {(s.K0, s.b, s.c, s.q) for s in enumerate_cochain_supports(G, target, bounds=bounds)}
    assert got == _brute_polyvector(n, a, target, 3, 4)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([(4, 2), (4, 3), (5, 3)]), st.integers(-3, 3))
def test_map_supports_satisfy_equations(na, t):
    n, a = na
    for s in enumerate_cochain_supports(GradingDatum(n, a), t, kind="map", bounds={"j": 4}):
        for k in range(n):
            assert a * s.c[k] + (k + 1 in s.K0) - (k + 1 in s.K1) == s.q
        assert (n - 2) * s.q + (2 - a) * sum(s.c) == t


@settings(max_examples=40, deadline=None)
@given(st.integers(-20, 20), st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.integers(-3, 3))
def test_normalization_is_invariant_under_relation(t, c, k):
    G = GradingDatum(4, 3)
    d = Degree(t, tuple(c))
    shifted = d + G.relation.scale(k)
    assert normalize_degree(d, G) == normalize_degree(shifted, G)
    assert min(normalize_degree(d, G).c) == 0
    assert normalize_degree(d, G).sign == d.sign
