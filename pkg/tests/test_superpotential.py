from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mirroralg.superpotential import (act, build_superpotential, characters, critical_point_suite,
                                      critical_points, gamma_action_check, hessian_at,
                                      point_field)


@pytest.fixture(scope="module")
def pts43():
    return critical_points(4, 3)


def test_counts_and_value_43(pts43):
    small = [p for p in pts43 if p.kind == "small"]
    assert len(pts43) == 28 and len(small) == 27
    assert {p.value.rational() for p in small} == {Fraction(21)}


def test_values_42():
    small = [p for p in critical_points(4, 2) if p.kind == "small"]
    vals = Counter(p.value.rational() for p in small)
    assert vals == {Fraction(4): 8, Fraction(-4): 8}


def test_origin_gradient_and_hessian(pts43):
    sp = build_superpotential(4, 3)
    origin = pts43[0]
    h = hessian_at(sp, origin)
    assert all(x.is_zero() for row in h.matrix for x in row)
    assert not h.nondegenerate


def test_hessian_at_threes():
    K = point_field(4, 3)[0]
    sp = build_superpotential(4, 3)
    h = hessian_at(sp, [K(3)] * 4)
    assert [[x.rational() for x in row] for row in h.matrix] == \
        [[18 if i == j else -9 for j in range(4)] for i in range(4)]
    oracle = sympy.Matrix(4, 4, lambda i, j: 18 if i == j else -9).det()
    assert h.determinant.rational() == oracle == -177147


def test_noncritical_point_rejected():
    K = point_field(4, 3)[0]
    with pytest.raises(ValueError):
        hessian_at(build_superpotential(4, 3), [K(1)] * 4)


@pytest.mark.parametrize("n,a,order", [(4, 3, 27), (4, 2, 8)])
def test_gamma_action(n, a, order):
    g = gamma_action_check(n, a)
    assert g["group_order"] == order
    assert g["identity_fixes_all"] and g["free_and_transitive"] and g["passed"]
    assert all(f["size"] == order for f in g["fibers"])


def test_suite_43():
    s = critical_point_suite(4, 3)
    assert s["small"] == 27 and s["all_small_hessians_nondegenerate"] and s["passed"]
    assert s["values"] == {"21": 27}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(characters(4, 3)), st.sampled_from(characters(4, 3)))
def test_action_is_a_group_action(chi, psi):
    m = critical_points(4, 3, verify=False)[5].exponents
    both = tuple((x + y) % 3 for x, y in zip(chi, psi))
    assert act(chi, act(psi, m, 4, 3), 4, 3) == act(both, m, 4, 3)
