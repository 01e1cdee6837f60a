from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mirroralg.matfact import (admissible_counts, build_K, clifford_hessian_check,
                               clifford_identification, cohomology_algebra, end_dga,
                               first_order_class, grading_consistency, minimal_model,
                               mu2_is_wedge, order_zero_product, verify_delta_squared)

GRID = [(4, 2), (4, 3), (5, 3), (5, 4)]


@pytest.mark.parametrize("n,a", GRID)
def test_delta_squared(n, a):
    rep = verify_delta_squared(build_K(n, a))
    assert rep["basis_elements_checked"] == 2 ** n
    assert rep["passed"]


def _sympy(p, syms):
    return sympy.sympify(p.format().replace("^", "**"), locals=syms)


@pytest.mark.parametrize("n,a", [(4, 3), (4, 2)])
def test_koszul_square_against_sympy(n, a):
    """Rebuild the Koszul factorization from the w_j with sympy matrices."""
    mf = build_K(n, a)
    syms = {x: sympy.Symbol(x) for x in mf.ring.names}
    u = [syms["u%d" % (j + 1)] for j in range(n)]
    w = [_sympy(x, syms) for x in mf.w]
    N = 2 ** n
    wedge = [sympy.zeros(N, N) for _ in range(n)]
    contract = [sympy.zeros(N, N) for _ in range(n)]
    for J in range(N):
        for j in range(n):
            sign = (-1) ** bin(J & ((1 << j) - 1)).count("1")
            if J >> j & 1:
                contract[j][J ^ (1 << j), J] = sign
            else:
                wedge[j][J | (1 << j), J] = sign
    delta = sum((u[j] * contract[j] + w[j] * wedge[j] for j in range(n)), sympy.zeros(N, N))
    Z = _sympy(mf.Zt, syms)
    assert (delta * delta - Z * sympy.eye(N)).expand() == sympy.zeros(N, N)


def test_dga_and_contraction():
    dga = end_dga(4, 3)
    assert dga.check_dga()["passed"]
    assert dga.check_contraction(samples=15)["passed"]


def test_model_43_structure(model43):
    A = model43.algebra
    assert not A.mu.tables.get(0) and not A.mu.tables.get(1)
    assert order_zero_product(model43)["exterior"]
    assert mu2_is_wedge(model43)
    assert grading_consistency(model43)["passed"]
    assert first_order_class(model43) == [Fraction(-1)] * 4


def test_pruning_only_drops_zero_tuples():
    full = minimal_model(4, 3, 1, 3, prune=False).algebra.mu
    pruned = minimal_model(4, 3, 1, 3).algebra.mu
    assert full.tables == pruned.tables


def test_admissible_counts_are_symmetric():
    counts = admissible_counts(4, 3, 3, 1)
    for c in counts:
        for k in range(4):
            rotated = c[k:] + c[:k]
            assert rotated in counts


def test_type_check_43(type_check43):
    report, dp = type_check43
    assert report["mu0_zero"] and report["mu1_zero"] and report["order0_exterior"]
    assert report["support_matches"] and report["matches_W_after_r1"]
    assert [-1, -1, -1, -1] in report["sign_rescalings"]
    assert report["passed"]


def test_type_check_42():
    from mirroralg.matfact import type_check_and_disk_potential
    model = minimal_model(4, 2, 1, 4)
    report, _ = type_check_and_disk_potential(4, 2, model=model)
    assert report["first_order_class"] == ["1", "1", "1", "1"]
    assert report["support_matches"] and report["passed"]
    assert len(report["sign_rescalings"]) == 8


def test_clifford_identification_42():
    H = cohomology_algebra(minimal_model(4, 2, 4, 2), 1)
    assert not H.check_associative()
    rep = clifford_identification(H, 4)
    assert rep["bijective"] and rep["multiplicative"] and rep["nondegenerate"]
    assert rep["passed"]


def test_first_order_truncation_is_not_associative_at_r1():
    H = cohomology_algebra(minimal_model(4, 2, 1, 2), 1)
    assert H.check_associative()


def test_clifford_hessians_43(type_check43):
    report, dp = type_check43
    rep = clifford_hessian_check(4, 3, dp.potential, dp.ring, report["sign_rescalings"][0])
    assert rep["points"] == 27
    assert rep["all_nondegenerate"] and rep["all_clifford_match"]
    assert rep["details"][0]["det"] == "-177147"


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_exterior_sign_is_associative(x, y, z):
    from mirroralg.matfact import merge_sign
    sxy = merge_sign(x, y)
    syz = merge_sign(y, z)
    if not sxy or not syz or x & z:
        return
    assert sxy * merge_sign(x | y, z) == syz * merge_sign(x, y | z)
