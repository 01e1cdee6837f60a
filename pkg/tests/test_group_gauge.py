from fractions import Fraction

import pytest

from mirroralg.ainfinity.gauge import (gauge_reconstruct, order_part, pushforward, random_gauge,
                                       substitute_r)
from mirroralg.ainfinity.group import (CharacterGroup, FiniteAbelianGroup, GroupAction,
                                       fourier_check, semidirect_product, semidirect_verify)
from mirroralg.clifford import clifford_build, exterior_algebra
from mirroralg.matfact import r_ring


def _action(C, k):
    A = C.to_ainf()
    degs = [tuple(1 if "e%d" % (i + 1) in lab else 0 for i in range(k)) for lab in A.labels]
    return GroupAction(A, CharacterGroup(FiniteAbelianGroup((2,) * k), root=lambda N: -1), degs)


def test_trivial_group_semidirect_is_a():
    A = exterior_algebra(2).to_ainf()
    act = GroupAction(A, CharacterGroup(FiniteAbelianGroup(()), root=lambda N: -1),
                      [()] * A.dim)
    SD, index = semidirect_product(act)
    assert SD.dim == A.dim
    relabel = {index[(b, ())]: b for b in range(A.dim)}
    mapped = {(tuple(relabel[t] for t in T), relabel[b]): v for T, b, v in SD.mu.nonzero_entries()}
    assert mapped == {(T, b): v for T, b, v in A.mu.nonzero_entries()}


def test_fourier_exterior_one_generator():
    rep = fourier_check(_action(exterior_algebra(1), 1), 3)
    assert rep["tuples_checked"] == 84 and rep["passed"]


@pytest.mark.parametrize("C", [clifford_build([[1, 0], [0, 1]]), exterior_algebra(2)])
def test_fourier_two_generators(C):
    act = _action(C, 2)
    assert fourier_check(act, 3)["passed"]
    assert semidirect_verify(act, 4).passed


def test_non_strict_grading_rejected():
    A = exterior_algebra(1).to_ainf()
    act = GroupAction(A, CharacterGroup(FiniteAbelianGroup((2,)), root=lambda N: -1),
                      [(0,), (0,)])
    act.degree = [(1,), (0,)]  # unit of nonzero degree breaks strictness
    rep = fourier_check(act, 2)
    assert not rep["strict_grading"] and not rep["passed"]


def test_gauge_identity(model43):
    A = model43.algebra
    res = gauge_reconstruct(A, A, r_ring(4))
    assert res.ok and not list(res.phi.nonzero_entries())


def test_pushforward_changes_only_order_one(model43):
    A = model43.algebra
    R = r_ring(4)
    B = pushforward(A, random_gauge(A, R, seed=3))
    diff = B.mu - A.mu
    assert not list(order_part(diff, R, 0).nonzero_entries())
    assert list(diff.nonzero_entries())


def test_flip_predicts_difference_class(model43):
    A = model43.algebra
    R = r_ring(4)
    res = gauge_reconstruct(A, substitute_r(A, R, [1, 1, -1, 1]), R, a=3, gens=[1, 2, 4, 8])
    assert not res.ok
    assert list(res.obstruction) == ["r3"]
    assert res.readoff == [0, 0, Fraction(-2), 0]
