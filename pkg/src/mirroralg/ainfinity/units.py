"""Homotopy-unit extension A+ = A + C f + C e+ of a strictly unital algebra.

When the unit e of A is already strict, the extension needs f only in
mu^1(f) = e+ - e together with the unit rules for e+:
    mu^2(e+, x) = (-1)^sigma(x) x,   mu^2(x, e+) = x,
and mu^s(..., e+, ...) = mu^s(..., f, ...) = 0 for s >= 3.
"""
from __future__ import annotations

from .core import AInfAlgebra, czero


def strict_unit_violations(A: AInfAlgebra):
    """Entries contradicting strict unitality of A.unit within the stored tables."""
    e = A.unit
    bad = []
    for x in range(A.dim):
        if not _eq(A.mu.entry((e, x)), {x: -1 if A.parity[x] else 1}):
            bad.append((A.labels[e], A.labels[x]))
        if not _eq(A.mu.entry((x, e)), {x: 1}):
            bad.append((A.labels[x], A.labels[e]))
    for T, b, v in A.mu.nonzero_entries():
        if len(T) != 2 and e in T:
            bad.append(tuple(A.labels[i] for i in T))
    return bad


def _eq(got, want):
    if set(got) != set(want):
        return False
    return all(czero(got[k] - want[k]) for k in want)


def extension_entries(dim, parity, unit, one=1):
    """The f / e+ entries of A+, with f = dim and e+ = dim + 1."""
    f, ep = dim, dim + 1
    par = list(parity) + [1, 0]
    out = [((f,), ep, one), ((f,), unit, -one)]
    for x in range(dim + 2):
        out.append(((ep, x), x, -one if par[x] else one))
        if x != ep:
            out.append(((x, ep), x, one))
    return out


class HomotopyUnitExtension:
    """A+ for a strictly unital finite A-infinity algebra, as a table algebra."""

    def __init__(self, A: AInfAlgebra, one=1):
        if A.unit is None:
            raise ValueError("a distinguished unit is required")
        self.base = A
        self.f = A.dim
        self.e_plus = A.dim + 1
        mu = A.mu.copy()
        for T, b, c in extension_entries(A.dim, A.parity, A.unit, one):
            mu.add_entry(T, b, c)
        degrees = None
        if A.degrees is not None:
            degrees = list(A.degrees) + [-1, 0]
        self.algebra = AInfAlgebra(A.labels + ["f", "e+"], A.parity + [1, 0], mu,
                                   unit=self.e_plus, trunc=A.trunc, max_arity=A.max_arity,
                                   degrees=degrees, name=(A.name or "A") + "+")

    def check(self):
        """mu^1(f) = e+ - e, mu^1(e+) = 0 and the strict unit rules for e+."""
        A = self.algebra
        f, ep, e = self.f, self.e_plus, self.base.unit
        ok = _eq(A.mu.entry((f,)), {ep: 1, e: -1}) and not A.mu.entry((ep,))
        for x in range(A.dim):
            ok = ok and _eq(A.mu.entry((ep, x)), {x: -1 if A.parity[x] else 1})
            if x != ep:
                ok = ok and _eq(A.mu.entry((x, ep)), {x: 1})
        for T, _, _ in A.mu.nonzero_entries():
            if len(T) >= 3 and (ep in T or f in T):
                ok = False
        return ok
