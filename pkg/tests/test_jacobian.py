from itertools import product

import pytest
import sympy

from mirroralg.exactpoly import normal_form
from mirroralg.jacobian import (beta_relations, build_potentials, invariant_and_local_checks,
                                jacobian_certificate, original_groebner_basis,
                                verify_closed_form_groebner)


def test_potential_43():
    fam = build_potentials(4, 3)
    v = fam.ring.var
    expected = -v("u1") * v("u2") * v("u3") * v("u4")
    for j in range(1, 5):
        expected = expected + v("r%d" % j) * v("u%d" % j) ** 3
    assert fam.Zt == expected


def test_potential_42_at_r1():
    fam = build_potentials(4, 2)
    R = fam.uring
    u = [R.var("u%d" % j) for j in range(1, 5)]
    assert fam.Z == -u[0] * u[1] * u[2] * u[3] + sum((x ** 2 for x in u), R.zero())


def test_first_partial():
    fam = build_potentials(4, 3)
    R = fam.ring
    v = R.var
    assert fam.partials[0] == -v("u2") * v("u3") * v("u4") + 3 * v("r1") * v("u1") ** 2


@pytest.mark.parametrize("n,a", [(4, 3), (5, 3), (4, 2)])
def test_closed_form_family_is_groebner(n, a):
    cert = verify_closed_form_groebner(n, a)
    assert cert["buchberger_criterion"]
    assert cert["reduced_basis_of_partials_equals_family"]
    assert cert["passed"]


@pytest.mark.parametrize("n,a,coef", [(4, 3, 27), (4, 2, 4), (5, 3, 27)])
def test_beta_relation(n, a, coef):
    rep = beta_relations(n, a)
    assert rep["relation"] == "beta^%d - %d*T*beta^%d" % (n - 1, coef, a - 1)
    assert rep["relation_vanishes"] and rep["powers_independent"]


def test_square_of_r1u1cubed_not_divisible():
    fam, gb = original_groebner_basis(4, 3)
    R = fam.ring
    m = (R.var("r1") * R.var("u1") ** 3) ** 2
    lm = m.leading(gb.order)[0]
    assert not any(all(x <= y for x, y in zip(l, lm)) for l in gb.leading_monomials())
    assert not normal_form(m, gb).is_zero()


@pytest.mark.parametrize("n,a", [(4, 3), (4, 2)])
def test_invariant_and_local(n, a):
    rep = invariant_and_local_checks(n, a)
    assert rep["q_of_beta_bar_vanishes"]
    assert rep["u_power_in_local_ideal"]
    assert rep["beta_hat_top_power_in_ideal"] and rep["beta_hat_lower_power_not_in_ideal"]
    assert rep["passed"]


def _sympy_quotient_dim(n, a):
    u = sympy.symbols("u1:%d" % (n + 1))
    prod = sympy.Mul(*u)
    W = -prod + sum(x ** a for x in u)
    G = sympy.groebner([sympy.diff(W, x) for x in u], *u, order="grevlex")
    lms = [sympy.Poly(g, *u).monoms(order="grevlex")[0] for g in G.exprs]
    bound = max(sum(m) for m in lms) + 2
    count = 0
    for e in product(range(bound), repeat=n):
        if not any(all(x >= y for x, y in zip(e, m)) for m in lms):
            count += 1
    return count


@pytest.mark.parametrize("n,a,dim,milnor", [(4, 3, 43, 16), (4, 2, 17, 1)])
def test_quotient_dimension_against_sympy(n, a, dim, milnor):
    cert = jacobian_certificate(n, a, specialize_r=True)
    assert cert["quotient_dimension"] == _sympy_quotient_dim(n, a) == dim
    assert cert["checks"]["local_milnor_number"] == milnor == (a - 1) ** n
