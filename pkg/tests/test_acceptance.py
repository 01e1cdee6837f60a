"""End-to-end acceptance criteria, one line of output per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""
from fractions import Fraction

import pytest

from mirroralg.clifford import clifford_build, exterior_algebra, hh_bar_bruteforce
from mirroralg.jacobian import jacobian_certificate
from mirroralg.matfact import build_K, verify_delta_squared
from mirroralg.quantum import cubic_surface_suite, hyperplane_suite
from mirroralg.suites import group_suite, gauge_suite, minimal_model_suite, wbc_suite
from mirroralg.superpotential import critical_point_suite

GRID = [(4, 2), (4, 3), (5, 3), (5, 4)]
RESULTS = {}


def record(k, ok, detail):
    RESULTS[k] = "criterion %2d: %s  %s" % (k, "PASS" if ok else "FAIL", detail)
    return ok


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def test_criterion_01_koszul_square():
    res = {na: verify_delta_squared(build_K(*na))["passed"] for na in GRID}
    assert record(1, all(res.values()), "δ_K² = Z̃·id on %s" % sorted(res))


def test_criterion_02_groebner_family():
    res = {}
    for na in [(4, 3), (5, 3)]:
        g = jacobian_certificate(*na)["groebner"]
        res[na] = (g["buchberger_criterion"] and g["partials_in_family_ideal"]
                   and g["reduced_basis_of_partials_equals_family"])
    assert record(2, all(res.values()), "Buchberger + rescaled Jacobian match %s" % res)


def test_criterion_03_beta_relation():
    res = {}
    for na in [(4, 3), (5, 3)]:
        b = jacobian_certificate(*na)["beta"]
        res[na] = b["relation_vanishes"] and b["powers_independent"]
    assert record(3, all(res.values()), "β relation and independence %s" % res)


def test_criterion_04_invariant_ring():
    res = {}
    for na in [(4, 3), (4, 2)]:
        c = jacobian_certificate(*na, True)["checks"]
        res[na] = (c["q_of_beta_bar_vanishes"] and c["u_power_in_local_ideal"]
                   and c["beta_hat_top_power_in_ideal"] and c["beta_hat_lower_power_not_in_ideal"])
    assert record(4, all(res.values()), "invariant-ring identities %s" % res)


def test_criterion_05_critical_points():
    s = critical_point_suite(4, 3, True)
    ok43 = (s["big"] == 1 and s["small"] == 27 and s["values"] == {"21": 27}
            and s["gamma"]["passed"] and s["all_small_hessians_nondegenerate"])
    t = critical_point_suite(4, 2, False)
    ok42 = t["values"] == {"4": 8, "-4": 8} and t["gamma"]["passed"]
    assert record(5, ok43 and ok42, "(4,3): 1 + %d points, values %s; (4,2): %s"
                  % (s["small"], s["values"], t["values"]))


def test_criterion_06_spectrum():
    res = {}
    for n, a in GRID:
        h = hyperplane_suite(n, a)
        res[(n, a)] = h["passed"] and h["matches_critical_values"] and h["big_multiplicity"] == a - 1
    assert record(6, all(res.values()), "c1 spectrum = critical values %s" % res)


def test_criterion_07_cubic_surface():
    s = cubic_surface_suite()
    lines = s["lines"]
    ok = (s["frobenius"] and s["eigenvalues"] == {"-6": 8, "21": 1} and s["(P+6)^3=27(P+6)^2"]
          and lines["line_count"] == "9*w + 81" and lines["lines_at_w"] == "27"
          and all(lines["identities"].values()) and lines["discriminants_vanish"])
    assert record(7, ok, "spectrum %s, lines %s -> %s, identities %s (literal residuals %s)"
                  % (s["eigenvalues"], lines["line_count"], lines["lines_at_w"],
                     sorted(k for k, v in lines["identities"].items() if v),
                     lines["literal_residuals"]))


def _clifford_ranks():
    cl1 = hh_bar_bruteforce(clifford_build(identity(1)), 4)
    cl2 = hh_bar_bruteforce(clifford_build(identity(2)), 4)
    lam = hh_bar_bruteforce(exterior_algebra(1), 4)
    return ([cl1.total(s) for s in range(5)], [cl2.total(s) for s in range(5)],
            [lam.total(s) for s in range(5)])


@pytest.mark.xfail(strict=True, reason="graded HH^0(Cl_1) is 1, not 2; the ungraded center is 2")
def test_criterion_08_clifford_hh():
    c1, c2, lam = _clifford_ranks()
    ok = (c1[0] == 2 and c2[0] == 1 and not any(c1[1:]) and not any(c2[1:]) and any(lam[1:]))
    record(8, ok, "HH ranks s=0..4: Cl_1 %s (claimed HH⁰ = 2; ungraded center 2), Cl_2 %s, "
           "Λ(θ) %s" % (c1, c2, lam))
    assert ok


def test_criterion_08_parts_that_hold():
    c1, c2, lam = _clifford_ranks()
    assert c1 == [1, 0, 0, 0, 0] and c2 == [1, 0, 0, 0, 0]
    assert all(lam[1:])
    assert clifford_build(identity(1)).ungraded_center_dim() == 2


def test_criterion_09_minimal_model(model43, type_check43):
    s, _ = minimal_model_suite(4, 3, 1, 4, stability=True, model=model43)
    report, _ = type_check43
    unit_class = all(abs(Fraction(c)) == 1 for c in s["first_order_class"])
    ok = (s["passed"] and unit_class and report["support_matches"]
          and bool(report["sign_rescalings"]))
    assert record(9, ok, "A∞ relations %s, class %s, P' signs %s, stable %s"
                  % (s["ainf_relations"], s["first_order_class"], report["sign_rescalings"],
                     s["stability"]["stable"]))


def test_criterion_10_weak_bounding_cochains():
    s = wbc_suite(4, 3)
    assert record(10, s["passed"], "MC residual 0: %s, points %d/%d, homotopy %s"
                  % (s["mc_residual_zero"], s["points_passed"], s["points_checked"],
                     s["homotopy"]["passed"]))


def test_criterion_11_group_action():
    s = group_suite(4, 3)
    assert record(11, s["passed"], "Fourier %s, unit twists %d/%d"
                  % ({k: v["passed"] for k, v in s["fourier"].items()},
                     s["unit_twists_passed"], s["characters"]))


def test_criterion_12_gauge(model43):
    s = gauge_suite(4, 3, model=model43)
    assert record(12, s["passed"], "round trip %s, flip r%d obstruction %s read-off %s"
                  % (s["round_trip"]["ok"], s["flip"], s["flipped"]["obstruction"],
                     s["flipped"]["obstruction_readoff"]))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
