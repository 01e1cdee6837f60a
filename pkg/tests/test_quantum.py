from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mirroralg.quantum import (FrobeniusAlgebra, c1_spectrum, cubic_surface_algebra,
                               cubic_surface_suite, hyperplane_model, hyperplane_suite,
                               line_count_symbolic, lines_and_semisimplicity, load_algebra,
                               truncated_polynomial_algebra, verify_frobenius)


@pytest.fixture(scope="module")
def cubic():
    return cubic_surface_algebra()


def test_truncated_q43_is_frobenius():
    A = truncated_polynomial_algebra([0, 0, -27, 1])
    assert verify_frobenius(A)["passed"]


def test_delta_pairing_is_not_invariant():
    A = truncated_polynomial_algebra([0, 0, -27, 1])
    delta = [[Fraction(int(i + j == 2)) for j in range(3)] for i in range(3)]
    B = FrobeniusAlgebra(A.labels, A.table, delta, A.unit)
    rep = verify_frobenius(B)
    assert not rep["passed"]
    assert any(f[0] == "frobenius" for f in rep["failures"])


def test_one_dimensional_algebra():
    A = load_algebra("basis 1\npair 1 1 = 1\n")
    assert verify_frobenius(A)["passed"]


def test_diagonal_algebra_spectrum():
    A = load_algebra("basis 1 x y\nmul x x = x\nmul y y = y\nmul x y = 0\n"
                     "pair 1 1 = 3\npair 1 x = 1\npair 1 y = 1\npair x x = 1\npair y y = 1\n"
                     "pair x y = 0\nc1 = 2 + 3*x - y\n")
    # idempotents 1 - x - y, x, y carry c1 = 2, 5, 1
    spec = c1_spectrum(A)
    assert {k: v for k, v in spec.eigenvalues.items()} == {2: 1, 5: 1, 1: 1}


def test_hyperplane_42():
    s = hyperplane_suite(4, 2)
    assert s["rational_eigenvalues"] == {"4": 1, "0": 1, "-4": 1}
    assert s["passed"]


@pytest.mark.parametrize("n,a", [(4, 2), (4, 3), (5, 3), (5, 4), (5, 2), (6, 5)])
def test_hyperplane_grid(n, a):
    s = hyperplane_suite(n, a)
    assert s["big_multiplicity"] == a - 1
    assert s["passed"]


@pytest.mark.parametrize("n,a", [(4, 3), (5, 3), (5, 4)])
def test_hyperplane_charpoly_against_sympy(n, a):
    A = hyperplane_model(n, a)
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                      for row in A.left(A.c1)])
    lam = sympy.Symbol("lam")
    roots = sympy.roots(M.charpoly(lam).as_expr(), lam)
    assert sum(roots.values()) == A.dim
    # the big value w with multiplicity a-1 (w = -a! for a = n-1, else 0)
    w = -sympy.factorial(a) if a == n - 1 else 0
    assert roots.get(w, 0) == a - 1


def test_cubic_suite():
    s = cubic_surface_suite()
    assert s["eigenvalues"] == {"-6": 8, "21": 1}
    assert s["e1*e2"] and s["(P+6)^3=27(P+6)^2"]
    assert s["big_eigenspace_contains"]["A-27"]
    assert s["lines_from_table"] == "27"
    assert s["passed"]


def test_cubic_charpoly_against_sympy(cubic):
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                      for row in cubic.left(cubic.c1)])
    lam = sympy.Symbol("lam")
    assert sympy.factor(M.charpoly(lam).as_expr()) == (lam - 21) * (lam + 6) ** 8


def test_line_count():
    assert str(line_count_symbolic()) == "9*w + 81"
    rep = lines_and_semisimplicity()
    assert rep["lines_at_w"] == "27"
    assert rep["discriminants_vanish"] and rep["passed"]


def test_table_cross_check(cubic):
    c1 = cubic.c1
    assert cubic.pair(cubic.mul(c1, c1), c1) == 27


coeff = st.integers(-3, 3)


@settings(max_examples=25, deadline=None)
@given(st.lists(coeff, min_size=9, max_size=9), st.lists(coeff, min_size=9, max_size=9),
       st.lists(coeff, min_size=9, max_size=9))
def test_cubic_frobenius_property(x, y, z):
    A = cubic_surface_algebra()
    x, y, z = ([Fraction(c) for c in v][:A.dim] for v in (x, y, z))
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    assert A.mul(x, y) == A.mul(y, x)
    assert A.pair(A.mul(x, y), z) == A.pair(x, A.mul(y, z))


def test_cubic_dimension(cubic):
    assert cubic.dim == 9
    assert Counter(cubic.labels)["1"] == 1
