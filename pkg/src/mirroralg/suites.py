"""Composite verification suites shared by the command line and the test-suite.

Each function returns a JSON-ready dict with a boolean ``passed``.
"""
from __future__ import annotations

from fractions import Fraction


def _v_names(n):
    return ["v%d" % (j + 1) for j in range(n)]


def minimal_model_suite(n, a, r_max=1, arity=4, stability=False, model=None):
    from .ainfinity import ainf_verify
    from .matfact import (build_K, first_order_class, grading_consistency, minimal_model,
                          order_zero_product, stability_check, verify_delta_squared)

    dsq = verify_delta_squared(build_K(n, a))
    model = model or minimal_model(n, a, r_max, arity)
    A = model.algebra
    ver = ainf_verify(A)
    order0 = order_zero_product(model)
    out = {
        "n": n, "a": a, "bounds": {"r": r_max, "arity": arity},
        "delta_squared": dsq["passed"],
        "tuples_evaluated": model.evaluated, "tuples_pruned": model.skipped,
        "entries": sum(1 for _ in A.mu.nonzero_entries()),
        "ainf_relations": ver.passed, "ainf_violations": ver.violations[:5],
        "mu0_zero": not A.mu.tables.get(0), "mu1_zero": not A.mu.tables.get(1),
        "order0_exterior": order0["exterior"],
        "first_order_class": [str(c) for c in first_order_class(model)],
        "grading": grading_consistency(model)["passed"],
    }
    ok = all(out[k] for k in ("delta_squared", "ainf_relations", "mu0_zero", "mu1_zero",
                              "order0_exterior", "grading"))
    ok = ok and all(Fraction(c) != 0 for c in out["first_order_class"])
    if stability:
        st = stability_check(n, a, r_max, arity, base=model)
        out["stability"] = st
        ok = ok and st["stable"]
    out["passed"] = ok
    return out, model


def wbc_suite(n, a, points=None):
    """Maurer-Cartan family, every small critical point and one contracting homotopy."""
    from .ainfinity.wbc import PlusStructure, contracting_homotopy, critical_point_suite, \
        twisted_family
    from .exactpoly import QQ
    from .matfact import LazyModel
    from .superpotential import build_superpotential, critical_points, hessian_at, point_field

    K = point_field(n, a)[0]
    names = _v_names(n)
    V = [1 << j for j in range(n)]
    L = LazyModel(n, a, QQ, extra=tuple(names))
    R = L.coeff_ring
    v = [R.var(x) for x in names]
    prod = R.one()
    for x in v:
        prod = prod * x
    sign = -1 if a % 2 else 1
    potential = -prod + sum((x ** a for x in v), R.zero()) * sign
    fam = twisted_family(PlusStructure(L, R.one()), V, R, names, potential)
    sp = build_superpotential(n, a, K)
    small = critical_points(n, a)[1:]
    if points is not None:
        small = small[:points]
    reports = []
    for p in small:
        H = hessian_at(sp, p).matrix
        reports.append(critical_point_suite(fam, [sign * c for c in p.coords], H, K.zero))
    # two distinct small points with the same value
    P = PlusStructure(LazyModel(n, a, K), K.one)
    p1 = small[0]
    p2 = next(q for q in small[1:] if q.value == p1.value)
    hr = contracting_homotopy(P, V, [sign * c for c in p1.coords], [sign * c for c in p2.coords],
                              p1.value - sp.w, p2.value - sp.w, K.zero)
    out = {
        "n": n, "a": a, "potential": potential.format(),
        "mc_residual_zero": all(c.is_zero() for c in fam.residual.values()),
        "hessian_identity": fam.hessian_identity(),
        "points_checked": len(reports),
        "points_passed": sum(1 for r in reports if r.passed),
        "cohomology_ranks": sorted({r.cohomology_rank for r in reports}),
        "sample_point": reports[0].as_dict() if reports else None,
        "homotopy": hr.as_dict(),
    }
    out["passed"] = (out["mc_residual_zero"] and out["hessian_identity"]
                     and out["points_passed"] == len(reports) and hr.passed)
    return out


def group_suite(n=4, a=3, max_arity=3):
    """Fourier isomorphism on small algebras and twisted units on A+ x| Gamma*."""
    from .ainfinity.group import (CharacterGroup, FiniteAbelianGroup, GroupAction,
                                  fourier_check, mask_degrees, semidirect_verify,
                                  unit_twist_check)
    from .ainfinity.wbc import PlusStructure
    from .clifford import clifford_build, exterior_algebra
    from .matfact import LazyModel
    from .superpotential import build_superpotential, characters, critical_points, point_field

    fourier = {}
    cases = [("Cl_2", clifford_build([[1, 0], [0, 1]]), 2),
             ("Lambda_2", exterior_algebra(2), 2),
             ("Lambda_1", exterior_algebra(1), 1)]
    for name, C, k in cases:
        A = C.to_ainf()
        degs = [tuple(1 if "e%d" % (i + 1) in lab else 0 for i in range(k)) for lab in A.labels]
        act = GroupAction(A, CharacterGroup(FiniteAbelianGroup((2,) * k), root=lambda N: -1), degs)
        rep = fourier_check(act, max_arity)
        rep["semidirect_ainf"] = semidirect_verify(act, max_arity + 1).passed
        rep["passed"] = rep["passed"] and rep["semidirect_ainf"]
        fourier[name] = rep
    K, z, _ = point_field(n, a)
    sp = build_superpotential(n, a, K)
    P = PlusStructure(LazyModel(n, a, K), K.one)
    root = K(z) ** (n - a)
    X = CharacterGroup(FiniteAbelianGroup((a,) * n), root=lambda N: root, one=K.one,
                       subgroup=characters(n, a))
    act = GroupAction(None, X, mask_degrees(n, P.dim))
    p = critical_points(n, a)[1]
    sign = -1 if a % 2 else 1
    alpha = {1 << j: sign * c for j, c in enumerate(p.coords)}
    alpha[P.f] = p.value - sp.w
    twists = [unit_twist_check(P, act, alpha, chi, K.zero) for chi in X.elements]
    out = {
        "fourier": {k: {x: v[x] for x in ("tuples_checked", "bijective", "strict_grading",
                                          "semidirect_ainf", "passed")}
                    for k, v in fourier.items()},
        "characters": len(twists),
        "unit_twists_passed": sum(1 for t in twists if t.passed),
        "sample_composite": twists[1].composite if len(twists) > 1 else None,
    }
    out["passed"] = all(v["passed"] for v in fourier.values()) and all(t.passed for t in twists)
    return out


def gauge_suite(n=4, a=3, seed=1, flip=1, model=None):
    """Round-trip through a random first-order gauge, then a flipped first-order class."""
    from .ainfinity.gauge import gauge_reconstruct, pushforward, random_gauge, substitute_r
    from .grading import GradingDatum
    from .matfact import first_order_class, minimal_model, r_ring

    model = model or minimal_model(n, a, 1, 4)
    A = model.algebra
    R = r_ring(n)
    B = pushforward(A, random_gauge(A, R, seed=seed))
    moved = sum(1 for _ in (B.mu - A.mu).nonzero_entries())
    rt = gauge_reconstruct(A, B, R, grading=GradingDatum(n, a))
    signs = [-1 if j == flip - 1 else 1 for j in range(n)]
    Bf = substitute_r(A, R, signs)
    ob = gauge_reconstruct(A, Bf, R, a=a, gens=[1 << j for j in range(n)])
    cls = first_order_class(model)
    predicted = [2 * c if j == flip - 1 else Fraction(0) for j, c in enumerate(cls)]
    out = {
        "seed": seed, "perturbed_entries": moved,
        "round_trip": rt.as_dict(),
        "flip": flip, "flipped": ob.as_dict(),
        "predicted_readoff": [str(x) for x in predicted],
    }
    out["passed"] = (moved > 0 and rt.ok and rt.thh2.get("holds", False) and not ob.ok
                     and list(ob.obstruction) == ["r%d" % flip]
                     and [Fraction(x) for x in ob.readoff] == predicted)
    return out
