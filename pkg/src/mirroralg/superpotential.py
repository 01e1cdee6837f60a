"""Critical points, critical values and Hessians of W = Z + w in closed form.

Small critical points are written u_j = zeta^{m_j} * rho with zeta a primitive
N-th root of unity, N = a(n-a), and rho the real root of rho^(n-a) = a. The
conditions u_j^a = xi (common) and u_1...u_n = a xi become
    m_j = m_1 mod (n-a)   and   sum_j m_j = a m_1 mod N,
so every point is recorded by its exponent tuple m.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from .exactpoly import PolyRing, Polynomial, radical_cyclotomic_field
from .exactpoly.field import is_zero
from .linalg import det


def shift(n, a):
    """The constant w^n_a: zero unless a = n - 1, where it is -a!."""
    return Fraction(-factorial(a)) if a == n - 1 else Fraction(0)


def _check(n, a):
    if n < 3 or not 2 <= a <= n - 1:
        raise ValueError("need 2 <= a <= n-1, got n=%d a=%d" % (n, a))


@dataclass
class Superpotential:
    n: int
    a: int
    ring: PolyRing
    W: Polynomial
    w: Fraction

    @property
    def names(self):
        return list(self.ring.names)

    def gradient(self):
        return [self.W.diff(x) for x in self.ring.names]


@lru_cache(maxsize=None)
def point_field(n, a):
    """(K, zeta, rho): K = Q(zeta_N, a^(1/(n-a))) flattened, N = a(n-a)."""
    return radical_cyclotomic_field(a * (n - a), n - a, a)


@lru_cache(maxsize=None)
def value_field(n, a):
    """(K, zeta, s): the smaller field Q(zeta_{n-a}, (a^a)^(1/(n-a))) holding the critical values."""
    return radical_cyclotomic_field(n - a, n - a, a ** a)


def build_superpotential(n, a, field=None):
    _check(n, a)
    K = field or point_field(n, a)[0]
    R = PolyRing(["u%d" % j for j in range(1, n + 1)], K)
    prod = R.one()
    for x in R.gens():
        prod = prod * x
    W = -prod + sum((x ** a for x in R.gens()), R.zero()) + R.const(shift(n, a))
    return Superpotential(n, a, R, W, shift(n, a))


@dataclass
class CriticalPoint:
    kind: str
    exponents: tuple  # m_j, or () for the origin
    coords: tuple
    value: object
    xi: object = None

    def as_json(self, N):
        return {"kind": self.kind, "root_order": N, "exponents": list(self.exponents)}


def small_exponent_tuples(n, a):
    N = a * (n - a)
    d = n - a
    out = []
    for m1 in range(N):
        for ks in product(range(a), repeat=n - 1):
            if (m1 + sum(ks)) % a:
                continue
            m = (m1,) + tuple((m1 + d * k) % N for k in ks)
            out.append(m)
    return out


def critical_points(n, a, verify=True):
    """The origin plus the (n-a) a^(n-1) small points, with their values."""
    _check(n, a)
    K, z, rho = point_field(n, a)
    sp = build_superpotential(n, a, K)
    N = a * (n - a)
    powers = [K(z) ** k if not isinstance(z, Fraction) else K(z) ** k for k in range(N)]
    origin = CriticalPoint("big", (), tuple(K.zero for _ in range(n)), sp.W.evaluate([K.zero] * n))
    pts = [origin]
    for m in small_exponent_tuples(n, a):
        coords = tuple(powers[k] * rho for k in m)
        xi = coords[0] ** a
        value = (n - a) * xi + sp.w
        pts.append(CriticalPoint("small", m, coords, value, xi))
    if verify:
        grad = sp.gradient()
        for p in pts:
            res = [g.evaluate(list(p.coords)) for g in grad]
            if not all(is_zero(x) for x in res):
                raise ArithmeticError("gradient does not vanish at %r" % (p.exponents,))
            if p.kind == "small":
                if sp.W.evaluate(list(p.coords)) != p.value:
                    raise ArithmeticError("closed-form critical value mismatch")
    return pts


def group_values(points):
    """{value: [points]} over the small points, keyed by the exact value."""
    out = {}
    for p in points:
        if p.kind != "small":
            continue
        out.setdefault(p.value, []).append(p)
    return out


def small_critical_values(n, a):
    """Multiset {(n-a) xi + w : xi^(n-a) = a^a} in value_field(n, a), as {value: 1}."""
    K, z, s = value_field(n, a)
    d = n - a
    zz = K(z) if not isinstance(z, Fraction) else K(z)
    return [d * (zz ** k) * s + shift(n, a) for k in range(d)]


@dataclass
class HessianReport:
    matrix: list
    determinant: object
    nondegenerate: bool
    omega: object = None  # per-point scale: H = omega * D (aI - J) D


def hessian_at(sp: Superpotential, point):
    """Exact Hessian at a critical point; rejects non-critical input."""
    coords = list(point.coords if isinstance(point, CriticalPoint) else point)
    names = sp.names
    K = sp.ring.field
    coords = [K(c) for c in coords]
    grad = [g.evaluate(coords) for g in sp.gradient()]
    if not all(is_zero(x) for x in grad):
        raise ValueError("point is not critical; gradient residual %s" % [str(x) for x in grad])
    H = [[sp.W.diff(x).diff(y).evaluate(coords) for y in names] for x in names]
    D = det(H)
    omega = None
    if not all(is_zero(c) for c in coords):
        # H_ij = a xi / (u_i u_j) * (a delta_ij - 1), so omega = a xi / u_1^2 scales
        # the unit-modulus pattern D (aI - J) D with D = diag(u_1 / u_i).
        n, a = sp.n, sp.a
        xi = coords[0] ** a
        omega = a * xi / (coords[0] * coords[0])
        for i in range(n):
            for j in range(n):
                pattern = (coords[0] / coords[i]) * (coords[0] / coords[j]) * (
                    (a if i == j else 0) - 1)
                if H[i][j] != omega * pattern:
                    raise ArithmeticError("Hessian does not have the expected shape")
    return HessianReport(H, D, not is_zero(D), omega)


def characters(n, a):
    """(Z/a)^n with coordinate sum 0 mod a."""
    return [c for c in product(range(a), repeat=n) if sum(c) % a == 0]


def act(chi, m, n, a):
    """Character chi on an exponent tuple: u_j -> zeta_a^{chi_j} u_j, zeta_a = zeta^(n-a)."""
    N = a * (n - a)
    return tuple((mj + (n - a) * c) % N for mj, c in zip(m, chi))


def gamma_action_check(n, a):
    pts = critical_points(n, a)
    K, z, rho = point_field(n, a)
    sp = build_superpotential(n, a, K)
    chars = characters(n, a)
    by_m = {p.exponents: p for p in pts if p.kind == "small"}
    za = K(z) ** (n - a)
    invariant = True
    for chi in chars:
        scale = [za ** c for c in chi]
        for p in pts:
            moved = [s * x for s, x in zip(scale, p.coords)]
            if sp.W.evaluate(moved) != p.value:
                invariant = False
            if p.kind == "small" and by_m[act(chi, p.exponents, n, a)].coords != tuple(moved):
                invariant = False
    fibers = group_values(pts)
    fiber_report = []
    free_transitive = True
    for value, fiber in fibers.items():
        ms = {p.exponents for p in fiber}
        base = fiber[0].exponents
        orbit = [act(chi, base, n, a) for chi in chars]
        ok = len(set(orbit)) == len(chars) and set(orbit) == ms
        free_transitive = free_transitive and ok
        fiber_report.append({"value": str(value), "size": len(fiber), "free_transitive": ok})
    origin = pts[0]
    big_fixed = all(all(is_zero(x) for x in origin.coords) for _ in chars)
    identity_fixes = all(act((0,) * n, p.exponents, n, a) == p.exponents for p in by_m.values())
    return {
        "n": n, "a": a,
        "group_order": len(chars),
        "expected_group_order": a ** (n - 1),
        "W_invariant": invariant,
        "fibers": fiber_report,
        "free_and_transitive": free_transitive,
        "big_point_fixed": big_fixed,
        "identity_fixes_all": identity_fixes,
        "passed": invariant and free_transitive and big_fixed and identity_fixes
        and len(chars) == a ** (n - 1),
    }


def critical_point_suite(n, a, hessians=True):
    pts = critical_points(n, a)
    K, z, rho = point_field(n, a)
    sp = build_superpotential(n, a, K)
    small = [p for p in pts if p.kind == "small"]
    values = group_values(pts)
    dets = []
    if hessians:
        for p in small:
            dets.append(hessian_at(sp, p).nondegenerate)
    gamma = gamma_action_check(n, a)
    N = a * (n - a)
    return {
        "n": n, "a": a, "field": repr(K),
        "big": 1, "small": len(small),
        "expected_small": (n - a) * a ** (n - 1),
        "values": {_fmt(v): len(f) for v, f in values.items()},
        "all_small_hessians_nondegenerate": all(dets) if hessians else None,
        "gamma": gamma,
        "points": [p.as_json(N) for p in pts],
        "passed": len(small) == (n - a) * a ** (n - 1) and gamma["passed"]
        and (all(dets) if hessians else True),
    }


def _fmt(x):
    q = x.rational() if hasattr(x, "rational") else x
    return str(q) if q is not None else str(x)
