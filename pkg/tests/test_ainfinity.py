import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mirroralg.ainfinity import (Cochain, ainf_verify, bracket, dump_table,
                                 from_associative, hochschild_differential, load_table)
from mirroralg.ainfinity.hochschild import (cap, cocycle_basis, euler_weight_check,
                                            jacobi_defect, random_cochain, yoneda)
from mirroralg.ainfinity.units import HomotopyUnitExtension, strict_unit_violations
from mirroralg.ainfinity.wbc import PlusStructure, TableBase, contracting_homotopy, \
    disk_potential_suite, twisted_mu
from mirroralg.clifford import clifford_build, exterior_algebra


def ext(n):
    return exterior_algebra(n).to_ainf()


# ---------------------------------------------------------------- core


def test_exterior_algebra_is_ainf():
    assert ainf_verify(ext(2), 4).passed


def test_corrupted_mu3_is_located():
    A = ext(2)
    mu = A.mu.copy()
    mu.add_entry((1, 1, 1), 1, Fraction(1))
    rep = ainf_verify(A.with_mu(mu), 4)
    assert not rep.passed
    assert any("e1" in v["inputs"] for v in rep.violations)


def test_mu2_bracket_zero_iff_associative():
    A = ext(2)
    assert bracket(A, A.mu, A.mu).is_zero()
    # Clifford e1^2 = 1, e2^2 = 0 with the sign of e2 e1 flipped
    C = clifford_build([[1, 0], [0, 0]])
    bad = {(i, j): dict(v) for (i, j), v in C.table.items()}
    bad[(2, 1)] = {k: -c for k, c in bad[(2, 1)].items()}
    B = from_associative(A.labels, A.parity, bad, unit=0)
    assert not bracket(B, B.mu, B.mu).is_zero()


def test_table_round_trip(model43):
    A = model43.algebra
    text = dump_table(A)
    ring = next(v for _, _, v in A.mu.nonzero_entries()).ring
    back = load_table(text, A.labels, A.parity, ring)
    assert dump_table(back) == text


# ---------------------------------------------------------------- Hochschild


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0, 1]))
def test_delta_squared_random(seed, sigma):
    A = ext(2)
    phi = random_cochain(A, [1], sigma, random.Random(seed))
    assert hochschild_differential(A, hochschild_differential(A, phi, 4), 4).is_zero()


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_jacobi_identity(seed):
    A = ext(2)
    rng = random.Random(seed)
    cs = [random_cochain(A, [rng.choice([1, 2])], rng.choice([0, 1]), rng, density=0.2)
          for _ in range(3)]
    assert jacobi_defect(A, *cs, max_arity=4).is_zero()


def test_yoneda_of_cocycles_is_cocycle():
    A = ext(2)
    Z = cocycle_basis(A, 1, 0, max_arity=3)
    assert Z
    for phi in Z[:3]:
        for psi in Z[:3]:
            prod = yoneda(A, phi, psi, 3)
            assert hochschild_differential(A, prod, 3).is_zero()


def test_cap_of_length_zero_is_mu2():
    A = ext(2)
    for x in range(4):
        for m in range(4):
            alpha = Cochain({0: {(): {x: Fraction(1)}}}, (A.parity[x] + 1) % 2)
            got = cap(A, alpha, {(m,): Fraction(1)})
            want = {(y,): v for y, v in A.mu.entry((m, x)).items()}
            assert {k: v for k, v in got.items() if v} == want


def test_euler_grading_on_model(model43):
    n, a = 4, 3
    w = (1, 1, 1, -1)
    rho = [a * x + 2 - a for x in w]
    deg = [sum(w[j] for j in range(n) if J >> j & 1) for J in range(1 << n)]
    rep = euler_weight_check(model43.algebra, deg, lambda e: sum(r * x for r, x in zip(rho, e)))
    assert rep["passed"]
    bad = [sum(1 for j in range(n) if J >> j & 1) for J in range(1 << n)]
    control = euler_weight_check(model43.algebra, bad, lambda e: sum(e[:n]))
    assert not control["passed"]


# ---------------------------------------------------------------- units and wbc


def test_strict_unit_and_extension():
    A = ext(2)
    assert not strict_unit_violations(A)
    assert HomotopyUnitExtension(A).check()


def test_wedge_potential_vanishes():
    rep = disk_potential_suite(ext(2), [1, 2])
    assert rep.potential.is_zero() and rep.passed


def test_clifford_deformed_potential():
    B = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    rep = disk_potential_suite(clifford_build(B).to_ainf(), [1, 2])
    R = rep.ring
    v1, v2 = R.var("v1"), R.var("v2")
    # mu^2(v, v) = (-1)^{|v|} v v = -Q(v)
    assert rep.potential == -(2 * v1 ** 2 + 2 * v1 * v2 + 3 * v2 ** 2)
    assert rep.passed


def test_zero_twist_is_mu():
    A = ext(2)
    A.degrees = [0, 1, 1, 2]
    P = PlusStructure(TableBase(A), 1)
    for x in range(4):
        for y in range(4):
            got = twisted_mu(P, [{x: 1}, {y: 1}], [{}, {}, {}])
            assert got == {k: v for k, v in A.mu.entry((x, y)).items()}


def _pure_wedge_plus():
    A = ext(2)
    A.degrees = [0, 1, 1, 2]
    return PlusStructure(TableBase(A), 1)


def test_pure_wedge_homotopy_is_seed():
    P = _pure_wedge_plus()
    one, zero = Fraction(1), Fraction(0)
    rep = contracting_homotopy(P, [1, 2], [one, zero], [zero, one], zero, zero, zero)
    assert rep.passed and sorted(rep.pieces) == [-1]


def test_homotopy_rejects_equal_points():
    P = _pure_wedge_plus()
    one, zero = Fraction(1), Fraction(0)
    with pytest.raises(ValueError):
        contracting_homotopy(P, [1, 2], [one, zero], [one, zero], zero, zero, zero)
