"""Order-by-order formal diffeomorphisms between deformations over R = C[r_1..r_n] / (r)^2.

With F = id + phi and phi of r-order one, the pushforward truncated at
r-degree one is exactly F_* eta = eta - [eta, phi]. Reconstruction solves
delta_0(phi) = -(mu - eta)_1 with delta_0 = [eta_0, -], one r_j at a time.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactpoly.poly import Polynomial
from .core import AInfAlgebra, Cochain, add_into, bracket, czero


def _r_index(ring):
    return [i for i, x in enumerate(ring.names) if x.startswith("r")]


def order_part(cochain: Cochain, ring, k, j=None):
    """r-order k part (rational coefficients); for k = 1, ``j`` picks the r_j coefficient."""
    idx = _r_index(ring)
    out = Cochain({}, cochain.sigma)
    for T, b, p in cochain.nonzero_entries():
        for e, c in p.terms.items():
            deg = sum(e[i] for i in idx)
            if deg != k:
                continue
            if j is not None and e[idx[j]] != 1:
                continue
            if any(e[i] for i in range(len(e)) if i not in idx):
                raise ValueError("coefficients must be polynomials in r only")
            out.add_entry(T, b, c)
    return out


def lift(cochain: Cochain, ring, j=None):
    """Rational cochain times r_j (or times 1) as a polynomial cochain."""
    mono = ring.one() if j is None else ring.var(ring.names[_r_index(ring)[j]])
    out = Cochain({}, cochain.sigma)
    for T, b, c in cochain.nonzero_entries():
        out.add_entry(T, b, mono * c)
    return out


def pushforward(A: AInfAlgebra, phi: Cochain):
    """(id + phi)_* mu for phi of r-order >= 1, exact after truncation at r-degree one."""
    if getattr(A.trunc, "r_max", None) != 1:
        raise ValueError("the first-order pushforward formula needs truncation at r-degree 1")
    return A.with_mu(A.mu - bracket(A, A.mu, phi, A.max_arity))


def random_gauge(A: AInfAlgebra, ring, seed=0, density=0.15, coeffs=(-2, -1, 1, 2)):
    """phi = sum_j r_j L_j with L_j random parity-preserving linear maps."""
    rng = random.Random(seed)
    nr = len(_r_index(ring))
    phi = Cochain({}, 1)
    for j in range(nr):
        mono = ring.var(ring.names[_r_index(ring)[j]])
        for x in range(A.dim):
            for y in range(A.dim):
                if A.parity[x] == A.parity[y] and rng.random() < density:
                    phi.add_entry((x,), y, mono * rng.choice(coeffs))
    return phi


# ---------------------------------------------------------------- sparse linear algebra


class _Echelon:
    """Incremental column echelon form over Q with combination tracking."""

    def __init__(self):
        self.pivots = {}  # pivot key -> (vector, combination)

    def reduce(self, vec, combo):
        vec = dict(vec)
        combo = dict(combo)
        while vec:
            key = min(vec, key=repr)
            hit = self.pivots.get(key)
            if hit is None:
                return vec, combo, key
            pv, pc = hit
            f = vec[key] / pv[key]
            for k, v in pv.items():
                add_into(vec, k, -f * v)
            for k, v in pc.items():
                add_into(combo, k, -f * v)
        return vec, combo, None

    def add(self, vec, label):
        vec, combo, key = self.reduce(vec, {label: Fraction(1)})
        if key is not None:
            self.pivots[key] = (vec, combo)
            return True
        return False


def _as_vector(cochain: Cochain):
    return {(T, b): Fraction(v) for T, b, v in cochain.nonzero_entries()}


@dataclass
class GaugeResult:
    ok: bool
    r_max: int
    arities: tuple
    phi: Cochain = None
    obstruction: dict = field(default_factory=dict)
    readoff: list = field(default_factory=list)
    thh2: dict = field(default_factory=dict)
    residual_entries: int = 0

    def as_dict(self):
        return {"ok": self.ok, "r_max": self.r_max, "gauge_arities": list(self.arities),
                "phi_entries": 0 if self.phi is None else sum(1 for _ in self.phi.nonzero_entries()),
                "obstruction": self.obstruction, "obstruction_readoff": [str(x) for x in self.readoff],
                "thh2_higher_orders_vanish": self.thh2.get("holds"),
                "residual_entries": self.residual_entries}


def _unknowns(A, arities):
    from itertools import product
    for s in arities:
        for T in product(range(A.dim), repeat=s):
            par = (sum(A.parity[t] for t in T) + s + 1) % 2
            for b in range(A.dim):
                if A.parity[b] == par:
                    yield T, b


def generator_readoff(A: AInfAlgebra, cochain: Cochain, ring, a, gens):
    """Coefficient of r_j e in cochain(x_j, ..., x_j) (a copies) for each generator x_j."""
    out = []
    idx = _r_index(ring)
    for j, x in enumerate(gens):
        p = cochain.entry((x,) * a).get(A.unit)
        c = Fraction(0)
        if p is not None:
            e = tuple(1 if i == idx[j] else 0 for i in range(ring.nvars))
            c = p.coefficient(e)
        out.append(c)
    return out


def gauge_reconstruct(A: AInfAlgebra, B: AInfAlgebra, ring, a=None, gens=None, arities=(1,),
                      grading=None):
    """Find phi of r-order one with (id + phi)_* B = A, or report the obstruction.

    ``gens`` (with ``a``) name the generators used to read off the first-order
    class of an obstruction. ``grading`` (a GradingDatum) adds the certificate
    that no obstruction can occur at r-orders >= 2.
    """
    if getattr(A.trunc, "r_max", None) != 1 or getattr(B.trunc, "r_max", None) != 1:
        raise ValueError("both deformations must be truncated at r-degree 1")
    if _as_vector(order_part(A.mu, ring, 0)) != _as_vector(order_part(B.mu, ring, 0)):
        raise ValueError("the order-0 structures differ; F_0 = id is required")
    thh2 = {}
    if grading is not None:
        from ..grading import thh2_vanishing_certificate
        thh2 = thh2_vanishing_certificate(grading)
    eta0 = order_part(B.mu, ring, 0)
    base = AInfAlgebra(A.labels, A.parity, eta0, unit=A.unit, max_arity=A.max_arity)
    images = {}
    for T, b in _unknowns(A, arities):
        E = Cochain({len(T): {T: {b: Fraction(1)}}}, 1)
        images[(T, b)] = _as_vector(bracket(base, eta0, E, A.max_arity))
    ech = _Echelon()
    for key, vec in images.items():
        ech.add(vec, key)
    nr = len(_r_index(ring))
    phi = Cochain({}, 1)
    obstruction = {}
    D = A.mu - B.mu
    for j in range(nr):
        Dj = _as_vector(order_part(D, ring, 1, j))
        target = {k: -v for k, v in Dj.items()}
        rest, combo, key = ech.reduce(target, {})
        if key is not None:
            obstruction["r%d" % (j + 1)] = len(Dj)
            continue
        # target + sum combo * images = 0, so phi_j = -combo
        for (T, b), c in combo.items():
            phi.add_entry(T, b, ring.var(ring.names[_r_index(ring)[j]]) * (-c))
    readoff = []
    if obstruction:
        if gens is not None:
            readoff = generator_readoff(A, order_part_poly(D, ring, 1), ring, a, gens)
        return GaugeResult(False, 1, tuple(arities), None, obstruction, readoff, thh2)
    pushed = pushforward(B, phi)
    resid = pushed.mu - A.mu
    n_res = sum(1 for _ in resid.truncated(A.trunc).nonzero_entries())
    return GaugeResult(n_res == 0, 1, tuple(arities), phi, {}, [], thh2, n_res)


def order_part_poly(cochain: Cochain, ring, k):
    idx = _r_index(ring)
    out = Cochain({}, cochain.sigma)
    for T, b, p in cochain.nonzero_entries():
        q = Polynomial(ring, {e: c for e, c in p.terms.items() if sum(e[i] for i in idx) == k})
        if not q.is_zero():
            out.add_entry(T, b, q)
    return out


def substitute_r(A: AInfAlgebra, ring, signs):
    """A with r_j -> signs[j] r_j, a ring automorphism; flipping r_j flips r_j u_j^a."""
    idx = _r_index(ring)
    mu = Cochain({}, 0)
    for T, b, p in A.mu.nonzero_entries():
        terms = {}
        for e, c in p.terms.items():
            f = c
            for t, j in enumerate(idx):
                if e[j] % 2 and signs[t] < 0:
                    f = -f
            terms[e] = f
        q = Polynomial(ring, terms)
        if not czero(q):
            mu.add_entry(T, b, q)
    return A.with_mu(mu)
