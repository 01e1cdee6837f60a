"""Finite abelian group gradings, semidirect products and the Fourier isomorphism.

Gamma is a finite abelian group given by its elements and an addition; a
character chi is any function Gamma -> field with chi(g + h) = chi(g) chi(h).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import AInfAlgebra, Cochain, add_into, ainf_verify, czero


@dataclass
class FiniteAbelianGroup:
    """Z/N_1 x ... x Z/N_k, elements as tuples."""

    orders: tuple

    @property
    def elements(self):
        return list(product(*[range(N) for N in self.orders]))

    def add(self, g, h):
        return tuple((x + y) % N for x, y, N in zip(g, h, self.orders))

    @property
    def zero(self):
        return tuple(0 for _ in self.orders)


@dataclass
class CharacterGroup:
    """Characters chi_k(g) = prod_i zeta_i^(k_i g_i) with zeta_i = root(N_i)."""

    group: FiniteAbelianGroup
    root: object  # function N -> primitive N-th root of unity in the field
    one: object = 1
    subgroup: list = None  # restrict to these characters (e.g. those trivial on a diagonal)

    @property
    def elements(self):
        return list(self.subgroup) if self.subgroup is not None else self.group.elements

    def __call__(self, k, g):
        val = self.one
        for ki, gi, N in zip(k, g, self.group.orders):
            e = (ki * gi) % N
            if e:
                val = val * self.root(N) ** e
        return val

    def mul(self, k, l):
        return self.group.add(k, l)

    def inverse(self, k):
        return tuple((-x) % N for x, N in zip(k, self.group.orders))

    @property
    def trivial(self):
        return self.group.zero


@dataclass
class GroupAction:
    """A Gamma-grading of the basis of A and the induced character action."""

    algebra: AInfAlgebra
    characters: CharacterGroup
    degree: list  # Gamma-degree of each basis element

    def act(self, chi, vec):
        out = {}
        for b, c in vec.items():
            add_into(out, b, c * self.characters(chi, self.degree[b]))
        return out

    def strictness_violations(self):
        G = self.characters.group
        bad = []
        for T, b, _ in self.algebra.mu.nonzero_entries():
            g = G.zero
            for t in T:
                g = G.add(g, self.degree[t])
            if g != self.degree[b]:
                bad.append((tuple(self.algebra.labels[i] for i in T), self.algebra.labels[b]))
        return bad


def semidirect_product(action: GroupAction):
    """A x| Gamma* with basis (b, chi) and the twisted structure maps as a table."""
    A = action.algebra
    X = action.characters
    chars = X.elements
    index = {(b, chi): i for i, (chi, b) in enumerate(product(chars, range(A.dim)))}
    labels = [None] * len(index)
    parity = [None] * len(index)
    for (b, chi), i in index.items():
        labels[i] = "%s@%s" % (A.labels[b], "".join(map(str, chi)))
        parity[i] = A.parity[b]
    mu = Cochain({}, 0)
    for T, b, c in A.mu.nonzero_entries():
        s = len(T)
        for chis in product(chars, repeat=s):
            # mu(a_s x chi_s, ..., a_1 x chi_1) = mu(a_s, chi_s a_{s-1}, chi_s chi_{s-1} a_{s-2}, ...)
            coeff = c
            acc = chis[0]
            for i in range(1, s):
                coeff = coeff * X(acc, action.degree[T[i]])
                acc = X.mul(acc, chis[i])
            key = tuple(index[(t, chi)] for t, chi in zip(T, chis))
            mu.add_entry(key, index[(b, acc)], coeff)
    unit = index[(A.unit, X.trivial)] if A.unit is not None else None
    return AInfAlgebra(labels, parity, mu, unit=unit, trunc=A.trunc, max_arity=A.max_arity,
                       name=(A.name or "A") + " x| Gamma*"), index


def shifted_sum_model(action: GroupAction):
    """A^theta: basis (gamma, b) = copy of b from object gamma to gamma + deg(b)."""
    A = action.algebra
    G = action.characters.group
    elems = G.elements
    index = {(g, b): i for i, (g, b) in enumerate(product(elems, range(A.dim)))}
    labels = ["%s[%s]" % (A.labels[b], "".join(map(str, g))) for g, b in index]
    parity = [A.parity[b] for g, b in index]
    mu = Cochain({}, 0)
    for T, b, c in A.mu.nonzero_entries():
        for g in elems:
            # a_1 = T[-1] starts at g; each next input starts where the previous ends
            cur = g
            keys = []
            for t in reversed(T):
                keys.append(index[(cur, t)])
                cur = G.add(cur, action.degree[t])
            mu.add_entry(tuple(reversed(keys)), index[(g, b)], c)
    return AInfAlgebra(labels, parity, mu, trunc=A.trunc, max_arity=A.max_arity,
                       name=(A.name or "A") + "^theta"), index


def fourier_map(action: GroupAction, sd_index, th_index):
    """F(a x chi) = sum_gamma chi(gamma) gamma . f(a), as {semidirect index: vector}."""
    X = action.characters
    F = {}
    for (b, chi), i in sd_index.items():
        vec = {}
        for g in X.group.elements:
            add_into(vec, th_index[(g, b)], X(chi, g))
        F[i] = vec
    return F


def fourier_check(action: GroupAction, max_arity=3, tuples=None):
    """F mu = mu (F x ... x F) on every basis tuple up to ``max_arity`` (or on ``tuples``)."""
    SD, sd_index = semidirect_product(action)
    TH, th_index = shifted_sum_model(action)
    F = fourier_map(action, sd_index, th_index)
    bad = []
    checked = 0
    if tuples is None:
        tuples = (T for s in range(1, max_arity + 1) for T in product(range(SD.dim), repeat=s))
    for T in tuples:
        checked += 1
        lhs = {}
        for b, c in SD.evaluate(SD.mu, [{t: 1} for t in T]).items():
            for k, d in F[b].items():
                add_into(lhs, k, c * d)
        rhs = TH.evaluate(TH.mu, [F[t] for t in T])
        keys = set(lhs) | set(rhs)
        if any(not czero(lhs.get(k, 0) - rhs.get(k, 0)) for k in keys):
            bad.append(tuple(SD.labels[t] for t in T))
    rank_ok = _fourier_invertible(F, SD.dim, TH.dim)
    strict = not action.strictness_violations()
    return {"tuples_checked": checked, "failures": bad[:10], "bijective": rank_ok,
            "strict_grading": strict, "passed": not bad and rank_ok and strict}


def _fourier_invertible(F, n, m):
    from ..linalg import rank
    if n != m:
        return False
    zero = 0
    M = [[F[j].get(i, zero) for j in range(n)] for i in range(m)]
    return rank(M) == n


def semidirect_verify(action: GroupAction, max_arity=None):
    SD, _ = semidirect_product(action)
    return ainf_verify(SD, max_arity)


# ---------------------------------------------------------------- twisted units


def semidirect_mu(P, act, seq):
    """mu on (A+) x| Gamma* for inputs [(vec, chi)] written left to right."""
    args = []
    acc = None
    X = act.characters
    for vec, chi in seq:
        args.append(vec if acc is None else act.act(acc, vec))
        acc = chi if acc is None else X.mul(acc, chi)
    return P.mu(args), acc


def twisted_semidirect(P, act, xs, alphas):
    """Sum of mu over insertions of (alpha_i, chi_i) around the inputs (vec, chi)."""
    from .wbc import _compositions, _max_popcount

    k = len(xs)
    nA = P.base.dim
    X_len = sum(_max_popcount(x, nA, P.base.degrees) for x, _ in xs)
    s_max = max(P.base.arity_bound(k, X_len), 2)
    out = {}
    for m in range(0, s_max - k + 1):
        for counts in _compositions(m, k + 1):
            seq = []
            for i in range(k, -1, -1):
                seq += [alphas[i]] * counts[i]
                if i > 0:
                    seq.append(xs[k - i])
            if not seq:
                continue
            vec, chi = semidirect_mu(P, act, seq)
            for b, c in vec.items():
                add_into(out, (b, chi), c)
    return out


def mask_degrees(n, dim_plus):
    """Gamma-degree of the exterior basis in (Z/a)^n; f and e+ get degree 0."""
    degs = [tuple((J >> j) & 1 for j in range(n)) for J in range(1 << n)]
    return degs + [tuple(0 for _ in range(n))] * (dim_plus - (1 << n))


@dataclass
class UnitTwistReport:
    chi: tuple
    closed: bool
    closed_inverse: bool
    composite: dict
    is_unit: bool

    @property
    def passed(self):
        return self.closed and self.closed_inverse and self.is_unit


def unit_twist_check(P, act, alpha, chi, zero):
    """e x chi is closed from alpha to chi.alpha and composes with e x chi^-1 to e x 1."""
    X = act.characters
    one = zero + 1
    e = P.unit
    triv = X.trivial
    inv = X.inverse(chi)
    a0 = (alpha, triv)
    a1 = (act.act(chi, alpha), triv)
    d = twisted_semidirect(P, act, [({e: one}, chi)], [a0, a1])
    d_inv = twisted_semidirect(P, act, [({e: one}, inv)], [a1, a0])
    comp = twisted_semidirect(P, act, [({e: one}, chi), ({e: one}, inv)], [a1, a0, a1])
    is_unit = set(comp) == {(e, triv)} and czero(comp[(e, triv)] - one)
    return UnitTwistReport(chi, not d, not d_inv,
                           {"%s@%s" % (P.labels[b], "".join(map(str, c))): str(v)
                            for (b, c), v in comp.items()}, is_unit)
