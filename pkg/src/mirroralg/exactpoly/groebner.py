"""Buchberger's algorithm, normal forms and staircase enumeration."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

from .field import is_zero
from .poly import Polynomial, divides


def _neg(key):
    return tuple(-x for x in key)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Divisor:
    """A basis element prepared for repeated division."""

    __slots__ = ("poly", "lm", "lc", "tail")

    def __init__(self, poly, order):
        self.poly = poly
        self.lm, self.lc = poly.leading(order)
        self.tail = [(e, c) for e, c in poly.terms.items() if e != self.lm]


def reduce(f, divisors, order, full=True):
    """Remainder of f on division by ``divisors`` (list of Polynomials).

    With ``full`` every term is reduced, otherwise only the leading term
    is reduced until it is no longer divisible.
    """
    prepared = [d if isinstance(d, _Divisor) else _Divisor(d, order) for d in divisors]
    key = order.key
    p = dict(f.terms)
    heap = [(_neg(key(e)), e) for e in p]
    heapq.heapify(heap)
    inheap = set(p)
    rem = {}
    while heap:
        _, e = heapq.heappop(heap)
        inheap.discard(e)
        c = p.get(e)
        if c is None:
            continue
        for d in prepared:
            if divides(d.lm, e):
                shift = _sub(e, d.lm)
                coef = c / d.lc
                del p[e]
                for eg, cg in d.tail:
                    t = tuple(x + y for x, y in zip(eg, shift))
                    v = p.get(t)
                    v = -coef * cg if v is None else v - coef * cg
                    if is_zero(v):
                        p.pop(t, None)
                    else:
                        p[t] = v
                        if t not in inheap:
                            inheap.add(t)
                            heapq.heappush(heap, (_neg(key(t)), t))
                break
        else:
            rem[e] = c
            del p[e]
            if not full:
                rem.update(p)
                break
    return Polynomial(f.ring, rem)


def spoly(f, g, order):
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    m = _lcm(ef, eg)
    one = f.ring.field.one
    return f.mul_term(_sub(m, ef), one / cf) - g.mul_term(_sub(m, eg), one / cg)


@dataclass
class GroebnerBasis:
    polys: list
    order: object
    spairs: int = 0
    zero_reductions: int = 0
    skipped: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.order.ring

    def leading_monomials(self):
        return [p.leading(self.order)[0] for p in self.polys]

    def normal_form(self, f):
        return normal_form(f, self)

    def contains(self, f):
        return normal_form(f, self).is_zero()

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def normal_form(f, basis):
    """Canonical remainder of f modulo a Groebner basis."""
    if not isinstance(basis, GroebnerBasis):
        raise TypeError("normal_form expects a GroebnerBasis")
    if f.ring != basis.ring:
        raise ValueError("polynomial ring %r does not match basis ring %r" % (f.ring, basis.ring))
    return reduce(f, basis.polys, basis.order)


def buchberger(generators, order):
    """Reduced, monic Groebner basis of the ideal generated by ``generators``."""
    G = []
    for g in generators:
        if g.ring != order.ring:
            raise ValueError("generator ring does not match the order's ring")
        if not g.is_zero():
            G.append(g.monic(order))
    if not G:
        raise ValueError("buchberger needs at least one nonzero generator")
    key = order.key
    lms = [g.leading(order)[0] for g in G]
    pairs = {}

    def add_pairs(j):
        for i in range(j):
            pairs[(i, j)] = _lcm(lms[i], lms[j])

    for j in range(len(G)):
        add_pairs(j)
    done = set()
    stats = {"coprime": 0, "chain": 0}
    count = zeros = 0
    while pairs:
        # normal strategy: smallest lcm first, ties broken by lex on the lcm, then indices
        (i, j), m = min(pairs.items(), key=lambda kv: (key(kv[1]), kv[1], kv[0]))
        del pairs[(i, j)]
        done.add((i, j))
        if all(min(x, y) == 0 for x, y in zip(lms[i], lms[j])):
            stats["coprime"] += 1
            continue
        if any(divides(lms[k], m) and k not in (i, j)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            stats["chain"] += 1
            continue
        count += 1
        r = reduce(spoly(G[i], G[j], order), G, order)
        if r.is_zero():
            zeros += 1
            continue
        G.append(r.monic(order))
        lms.append(r.leading(order)[0])
        add_pairs(len(G) - 1)
    G = _reduce_basis(G, order)
    return GroebnerBasis(G, order, spairs=count, zero_reductions=zeros, skipped=stats)


def _reduce_basis(G, order):
    lms = [g.leading(order)[0] for g in G]
    keep = []
    for i, g in enumerate(G):
        redundant = False
        for j in range(len(G)):
            if j == i or not divides(lms[j], lms[i]):
                continue
            # drop g if another element's leading monomial divides it; for equal
            # leading monomials keep the earliest
            if lms[j] != lms[i] or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = reduce(g, others, order) if others else g
        out.append(r.monic(order))
    out.sort(key=lambda p: order.key(p.leading(order)[0]), reverse=True)
    return out


@dataclass
class SPairRecord:
    i: int
    j: int
    lcm: tuple
    remainder_zero: bool
    coprime: bool
    remainder: object = None


def is_groebner_basis(family, order):
    """Buchberger's criterion. Returns (flag, certificate list of SPairRecord)."""
    polys = [p for p in family if not p.is_zero()]
    if not polys:
        raise ValueError("empty family")
    prepared = [_Divisor(p, order) for p in polys]
    cert = []
    ok = True
    for j in range(len(polys)):
        for i in range(j):
            li, lj = prepared[i].lm, prepared[j].lm
            cop = all(min(x, y) == 0 for x, y in zip(li, lj))
            r = reduce(spoly(polys[i], polys[j], order), prepared, order)
            z = r.is_zero()
            ok = ok and z
            cert.append(SPairRecord(i, j, _lcm(li, lj), z, cop, None if z else r))
    return ok, cert


def as_groebner_basis(family, order):
    """Wrap a family already known to satisfy Buchberger's criterion, reduced and monic."""
    ok, _ = is_groebner_basis(family, order)
    if not ok:
        raise ValueError("family is not a Groebner basis for %r" % (order,))
    return GroebnerBasis(_reduce_basis([p.monic(order) for p in family if p], order), order)


def ideal_equal(gens_a, gens_b, order):
    """Ideal equality via reduced Groebner bases (unique for a fixed order)."""
    A = buchberger(gens_a, order)
    B = buchberger(gens_b, order)
    return [p.terms for p in A.polys] == [p.terms for p in B.polys]


def quotient_standard_monomials(basis, variables, degree_bound):
    """Staircase of the initial ideal restricted to monomials in ``variables``.

    Returns a dict with ``finite`` (every variable has a pure power among the
    leading monomials that only involve ``variables``), the list of standard
    monomials of total degree <= degree_bound (or the whole staircase when
    finite) and its size.
    """
    ring = basis.ring
    idx = [ring.index(v) for v in variables]
    others = [i for i in range(ring.nvars) if i not in idx]
    lms = [m for m in basis.leading_monomials() if all(m[i] == 0 for i in others)]
    pure = {}
    for m in lms:
        support = [i for i in idx if m[i]]
        if len(support) == 1:
            i = support[0]
            pure[i] = min(pure.get(i, m[i]), m[i])
    finite = all(i in pure for i in idx)
    out = []
    if finite:
        ranges = [range(pure[i]) for i in idx]
        for exps in product(*ranges):
            full = [0] * ring.nvars
            for i, k in zip(idx, exps):
                full[i] = k
            full = tuple(full)
            if not any(divides(m, full) for m in lms):
                out.append(full)
    else:
        for d in range(degree_bound + 1):
            for combo in combinations_with_replacement(idx, d):
                full = [0] * ring.nvars
                for i in combo:
                    full[i] += 1
                full = tuple(full)
                if not any(divides(m, full) for m in lms):
                    out.append(full)
    out.sort(key=lambda e: (sum(e), e))
    return {
        "finite": finite,
        "monomials": [ring.monomial(e) for e in out],
        "count": len(out) if finite else None,
        "degree_bound": None if finite else degree_bound,
    }
