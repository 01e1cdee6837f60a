"""Weak bounding cochains: pre-disk potential, twisted structures, contracting homotopies.

Everything runs on the homotopy-unit extension A+ = A + f + e+. The base
algebra is accessed through a small protocol (``dim``, ``parity``,
``degrees``, ``unit``, ``zero``, ``one``, ``mu_A(written, tokens)`` and
``arity_bound(k, X)``), so the same code serves a finite table and the lazily
evaluated transferred structure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..exactpoly.field import is_zero
from ..exactpoly.poly import Polynomial, PolyRing
from ..linalg import matmul, rank
from .core import AInfAlgebra, Cochain, add_into, czero
from .units import HomotopyUnitExtension, extension_entries, strict_unit_violations


# ---------------------------------------------------------------- base adaptors


class TableBase:
    """A finite table algebra seen through the evaluation protocol."""

    def __init__(self, A: AInfAlgebra):
        self.A = A
        self.dim = A.dim
        self.parity = A.parity
        self.degrees = A.degrees
        self.unit = A.unit
        self.labels = A.labels

    def mu_A(self, written, tokens=None):
        return self.A.evaluate(self.A.mu, list(written))

    def arity_bound(self, k, X):
        return self.A.max_arity or max(self.A.mu.arities() or [1])


class PlusStructure:
    """mu on A+ built from a strictly unital base; f = dim, e+ = dim + 1."""

    def __init__(self, base, one=1):
        self.base = base
        self.dim = base.dim + 2
        self.f = base.dim
        self.e_plus = base.dim + 1
        self.parity = list(base.parity) + [1, 0]
        self.labels = list(getattr(base, "labels", [str(i) for i in range(base.dim)])) + ["f", "e+"]
        self.degrees = None if base.degrees is None else list(base.degrees) + [-1, 0]
        self.unit = base.unit
        self._ext = {}
        for T, b, c in extension_entries(base.dim, base.parity, base.unit, one):
            self._ext.setdefault(T, {})[b] = c

    def mu(self, written):
        """mu^s(x_s, ..., x_1) on A+ inputs given as {index: coeff} dicts."""
        s = len(written)
        out = {}
        nA = self.base.dim
        a_parts = [{k: v for k, v in x.items() if k < nA} for x in written]
        if all(a_parts):
            tokens = tuple(tuple(sorted((k, str(v)) for k, v in x.items())) for x in a_parts)
            out = dict(self.base.mu_A(a_parts, tokens))
        if s <= 2:
            for combo in product(*[list(x.items()) for x in written]):
                T = tuple(k for k, _ in combo)
                if not any(k >= nA for k in T):
                    continue
                outs = self._ext.get(T)
                if not outs:
                    continue
                c = combo[0][1]
                for _, y in combo[1:]:
                    c = c * y
                for b, v in outs.items():
                    add_into(out, b, c * v)
        return out


# ---------------------------------------------------------------- twisting


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _max_popcount(x, nA, degrees):
    return max((degrees[k] for k in x if k < nA), default=0)


def twisted_mu(P: PlusStructure, xs, alphas):
    """mu_{alpha_0, ..., alpha_k}(x_k, ..., x_1).

    ``xs`` is written left to right (x_k first); ``alphas[i]`` is inserted in
    the gap to the right of x_i, so alphas[0] is rightmost and alphas[k]
    leftmost. Extra insertions are bounded by ``base.arity_bound``.
    """
    k = len(xs)
    nA = P.base.dim
    degs = P.base.degrees
    X = sum(_max_popcount(x, nA, degs) for x in xs)
    s_max = max(P.base.arity_bound(k, X), 2)
    out = {}
    for m in range(0, s_max - k + 1):
        for counts in _compositions(m, k + 1):
            seq = []
            # counts[k] copies of alphas[k] on the far left, down to counts[0] on the right
            for i in range(k, -1, -1):
                seq += [alphas[i]] * counts[i]
                if i > 0:
                    seq.append(xs[k - i])
            if not seq:
                continue
            for b, v in P.mu(seq).items():
                add_into(out, b, v)
    return out


def mc_residual(P: PlusStructure, alpha, value):
    """sum_s mu^s(alpha, ..., alpha) - value * e+."""
    total = twisted_mu(P, [], [alpha])
    add_into(total, P.e_plus, -value)
    return total


# ---------------------------------------------------------------- pre-disk potential


def cc_nonpositive_certificate(n, a, r_max, bounds=None):
    """CC^{<=0}(V, A) = C e: the only polyvector support of Hochschild degree <= 0 is 1."""
    from ..grading import GradingDatum, enumerate_cochain_supports

    G = GradingDatum(n, a)
    found = []
    lo = -2 * n
    for t in range(lo, 1):
        for sup in enumerate_cochain_supports(G, t, kind="polyvector", j=(0, r_max), bounds=bounds):
            found.append((t, sup.describe()))
    return {"datum": str(G), "r_max": r_max, "targets": [lo, 0], "supports": found,
            "holds": found == [(0, "1")]}


def extend_coefficients(A: AInfAlgebra, ring: PolyRing):
    """The same tables with coefficients moved into a larger polynomial ring."""
    mu = Cochain({}, 0)
    for T, b, v in A.mu.nonzero_entries():
        mu.add_entry(T, b, v.to_ring(ring) if isinstance(v, Polynomial) else ring.const(v))
    if A.trunc is None:
        trunc = None
    else:
        idx = [i for i, x in enumerate(ring.names) if x.startswith("r")]
        bound = getattr(A.trunc, "r_max", None)

        def trunc(p, idx=idx, bound=bound):
            if bound is None or not isinstance(p, Polynomial):
                return p
            return Polynomial(ring, {e: c for e, c in p.terms.items()
                                     if sum(e[i] for i in idx) <= bound})
    return AInfAlgebra(A.labels, A.parity, mu, unit=A.unit, trunc=trunc,
                       max_arity=A.max_arity, degrees=A.degrees, name=A.name)


@dataclass
class DiskPotentialReport:
    potential: Polynomial
    ring: PolyRing
    multiples_of_unit: bool
    witnesses: list
    mc_residual_zero: bool
    derivative_identity: bool
    arities: list
    extension_ok: bool
    strictly_unital: bool
    cc_certificate: dict = field(default_factory=dict)

    @property
    def passed(self):
        return (self.multiples_of_unit and self.mc_residual_zero and self.derivative_identity
                and self.extension_ok and self.strictly_unital
                and self.cc_certificate.get("holds", True))

    def as_dict(self):
        return {"potential": self.potential.format(), "multiples_of_unit": self.multiples_of_unit,
                "witnesses": self.witnesses[:5], "mc_residual_zero": self.mc_residual_zero,
                "derivative_identity": self.derivative_identity, "arities": self.arities,
                "homotopy_unit_extension": self.extension_ok,
                "strictly_unital": self.strictly_unital,
                "cc_nonpositive": self.cc_certificate.get("holds"), "passed": self.passed}


def disk_potential_suite(A: AInfAlgebra, V, v_names=None, cc_certificate=None):
    """Pre-disk potential P'(v) = sum_s [e] mu^s(v, ..., v) in formal coordinates v_j.

    ``A`` is a strictly unital table algebra whose coefficients are numbers or
    polynomials; ``V`` lists the basis indices of the odd subspace. Checks the
    MC equation for iota(v) = v + P'(v) f symbolically in A+.
    """
    base_ring = None
    for _, _, c in A.mu.nonzero_entries():
        if isinstance(c, Polynomial):
            base_ring = c.ring
            break
    v_names = v_names or ["v%d" % (i + 1) for i in range(len(V))]
    if base_ring is None:
        from ..exactpoly import QQ
        ring = PolyRing(v_names, QQ)
    else:
        ring = PolyRing(list(base_ring.names) + v_names, base_ring.field)
    Av = extend_coefficients(A, ring)
    vs = [ring.var(x) for x in v_names]
    v = {b: vs[i] for i, b in enumerate(V)}
    e = A.unit
    P = ring.zero()
    witnesses = []
    arities = []
    top = A.max_arity or max(A.mu.arities() or [1])
    for s in range(1, top + 1):
        out = Av.evaluate(Av.mu, [v] * s)
        for b, c in out.items():
            if b == e:
                P = P + c
                arities.append(s)
            else:
                witnesses.append({"arity": s, "output": A.labels[b], "coefficient": c.format()})
    ext = HomotopyUnitExtension(Av)
    Aplus = ext.algebra
    alpha = dict(v)
    if not P.is_zero():
        alpha[ext.f] = P
    total = {}
    for s in range(1, top + 1):
        for b, c in Aplus.evaluate(Aplus.mu, [alpha] * s).items():
            add_into(total, b, c)
    add_into(total, ext.e_plus, -P)
    # d P'/d v_i = [e] mu^1_{iota(v)}(theta_i)
    deriv_ok = True
    for i, b in enumerate(V):
        got = {}
        for s in range(1, top + 1):
            for pos in range(s):
                seq = [v] * pos + [{b: ring.one()}] + [v] * (s - 1 - pos)
                for o, c in Av.evaluate(Av.mu, seq).items():
                    add_into(got, o, c)
        lhs = got.get(e, ring.zero())
        if not (lhs - P.diff(v_names[i])).is_zero():
            deriv_ok = False
    return DiskPotentialReport(P, ring, not witnesses, witnesses, not total, deriv_ok,
                               sorted(set(arities)), ext.check(),
                               not strict_unit_violations(A), cc_certificate or {})


# ---------------------------------------------------------------- critical points


def _vec_to_col(vec, dim, zero):
    col = [zero] * dim
    for k, c in vec.items():
        col[k] = c
    return col


def differential_matrix(P: PlusStructure, alpha1, alpha2, zero):
    """Matrix of mu^1_{alpha1, alpha2}(x) = sum mu(alpha2.., x, alpha1..) on the basis of A+."""
    cols = []
    one = zero + 1
    for x in range(P.dim):
        img = twisted_mu(P, [{x: one}], [alpha1, alpha2])
        cols.append(_vec_to_col(img, P.dim, zero))
    return [[cols[j][i] for j in range(P.dim)] for i in range(P.dim)]


@dataclass
class TwistedFamily:
    """mu^1 and symmetrized mu^2 of alpha = iota(v) as polynomials in formal v.

    ``D[i][j]`` is the coefficient of basis element i in mu^1_alpha(basis j);
    ``S[(i, j)]`` is mu^2_alpha(x_i, x_j) + mu^2_alpha(x_j, x_i) for x in V.
    """

    P: PlusStructure
    V: list
    ring: PolyRing
    v_names: list
    potential: Polynomial
    residual: dict
    D: list
    S: dict

    def hessian_identity(self):
        """S equals Hess(P') e identically, and the e-part of mu^1(x_i) is dP'/dv_i."""
        e = self.P.unit
        ok = True
        for (i, j), vec in self.S.items():
            want = self.potential.diff(self.v_names[i]).diff(self.v_names[j])
            if set(vec) - {e} or not (vec.get(e, self.ring.zero()) - want).is_zero():
                ok = False
        for i, b in enumerate(self.V):
            if not (self.D[e][b] - self.potential.diff(self.v_names[i])).is_zero():
                ok = False
        return ok


def twisted_family(P: PlusStructure, V, ring: PolyRing, v_names, potential):
    vs = [ring.var(x) for x in v_names]
    alpha = {b: c for b, c in zip(V, vs)}
    if not potential.is_zero():
        alpha[P.f] = potential
    zero = ring.zero()
    residual = mc_residual(P, alpha, potential)
    D = differential_matrix(P, alpha, alpha, zero)
    S = {}
    one = ring.one()
    for i, bi in enumerate(V):
        for j, bj in enumerate(V):
            if j < i:
                continue
            tot = {}
            for x, y in ((bi, bj), (bj, bi)):
                for k, c in twisted_mu(P, [{x: one}, {y: one}], [alpha] * 3).items():
                    add_into(tot, k, c)
            S[(i, j)] = tot
    return TwistedFamily(P, list(V), ring, list(v_names), potential, residual, D, S)


@dataclass
class CriticalPointReport:
    point: list
    value: object
    critical: bool
    mu1_zero_except_f: bool
    mu1_f: dict
    hessian: list
    hessian_matches: bool
    cohomology_rank: int
    clifford: dict

    @property
    def passed(self):
        return (self.critical and self.mu1_zero_except_f and self.hessian_matches
                and self.clifford["passed"])

    def as_dict(self):
        return {"point": [str(x) for x in self.point], "value": str(self.value),
                "critical": self.critical, "mu1_zero_except_f": self.mu1_zero_except_f,
                "mu1_f": self.mu1_f,
                "hessian": [[str(x) for x in row] for row in self.hessian],
                "hessian_matches": self.hessian_matches,
                "cohomology_rank": self.cohomology_rank,
                "clifford": self.clifford, "passed": self.passed}


def critical_point_suite(family: TwistedFamily, point, hessian, zero):
    """Specialize the family at a point v and compare with an independent Hessian.

    At a critical point mu^1_{iota(v)} must vanish except mu^1(f) = e+ - e,
    the cohomology then has the rank of A, and the symmetrized mu^2 must be
    the Hessian; the cohomology relations are matched against a Clifford algebra.
    """
    P = family.P
    one = zero + 1
    e, f, ep = P.unit, P.f, P.e_plus
    vals = dict(zip(family.v_names, point))
    full = [vals.get(x, zero) for x in family.ring.names]

    def ev(p):
        return p.evaluate(full) if isinstance(p, Polynomial) else p

    grad = [ev(family.potential.diff(x)) for x in family.v_names]
    critical = all(czero(g) for g in grad)
    value = ev(family.potential)
    D = [[ev(x) for x in row] for row in family.D]
    mu1_ok = True
    for j in range(P.dim):
        for i in range(P.dim):
            want = zero
            if j == f:
                want = one if i == ep else (-one if i == e else zero)
            if not czero(D[i][j] - want):
                mu1_ok = False
    k = len(family.V)
    H = [[None] * k for _ in range(k)]
    relations = {}
    for (i, j), vec in family.S.items():
        ev_vec = {b: ev(c) for b, c in vec.items() if not czero(ev(c))}
        if set(ev_vec) - {e}:
            continue
        H[i][j] = H[j][i] = ev_vec.get(e, zero)
        # [x][y] = (-1)^sigma(y) mu^2_alpha(x, y) with y odd
        relations[(i, j)] = {b: -c for b, c in ev_vec.items()}
    matches = all(H[i][j] is not None and czero(H[i][j] - hessian[i][j])
                  for i in range(k) for j in range(k))
    coh = P.dim - 2 * rank(D)
    cliff = clifford_comparison(relations, hessian, e, zero)
    return CriticalPointReport(list(point), value, critical, mu1_ok,
                               {P.labels[i]: str(c) for i, c in _col_dict(D, f, zero).items()},
                               H, matches, coh, cliff)


def clifford_comparison(relations, hessian, unit, zero):
    """Compare cohomology anticommutators with the Clifford algebra of B = -Hess / 2.

    With the polarization e_i e_j + e_j e_i = 2 B_ij, the cohomology relations
    [x_i][x_j] + [x_j][x_i] = -Hess_ij e say exactly that V generates Cl(B).
    """
    from ..clifford import clifford_build

    k = len(hessian)
    field = getattr(zero, "field", None)
    B = [[-hessian[i][j] / 2 for j in range(k)] for i in range(k)]
    C = clifford_build(B, field) if field is not None else clifford_build(B)
    bad = []
    for (i, j), rel in relations.items():
        gi, gj = C.index((i,)), C.index((j,))
        anti = {}
        for x, y in ((gi, gj), (gj, gi)):
            for t, c in C.mul({x: 1}, {y: 1}).items():
                add_into(anti, t, c)
        want = anti.get(C.unit, zero)
        if set(anti) - {C.unit} or set(rel) - {unit} or not czero(rel.get(unit, zero) - want):
            bad.append((i, j))
    return {"form": "-Hess/2", "mismatches": bad, "passed": not bad}


def _col_dict(M, j, zero):
    return {i: M[i][j] for i in range(len(M)) if not czero(M[i][j])}


# ---------------------------------------------------------------- contracting homotopy


def _graded_part(M, degrees, j, zero):
    n = len(M)
    return [[M[r][c] if degrees[r] - degrees[c] == j else zero for c in range(n)]
            for r in range(n)]


def _madd(A, B, s=1):
    return [[a + s * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _is_zero_matrix(M):
    return all(czero(x) for row in M for x in row)


def contraction_seed(P: PlusStructure, V, w, zero):
    """H_{-1}: (-1)^{|x|-1} iota_eta on A with eta(w) = 1, f -> 0, e+ -> f."""
    one = zero + 1
    k = next(i for i, c in enumerate(w) if not is_zero(c))
    eta = {V[k]: one / w[k]}
    n = P.dim
    H = [[zero] * n for _ in range(n)]
    nA = P.base.dim
    for x in range(nA):
        deg = P.degrees[x]
        sign = -1 if (deg - 1) % 2 else 1
        for gen, c in eta.items():
            if not (x & gen):
                continue
            # contraction through the position of gen within the sorted word
            pos = bin(x & (gen - 1)).count("1")
            s = -1 if pos % 2 else 1
            H[x & ~gen][x] = H[x & ~gen][x] + sign * s * c
    H[P.f][P.e_plus] = one
    return H


@dataclass
class HomotopyReport:
    pieces: dict
    d_pieces: list
    seed_ok: bool
    identity_ok: bool
    d1_matches_wedge: bool

    @property
    def passed(self):
        return self.seed_ok and self.identity_ok and self.d1_matches_wedge

    def as_dict(self):
        return {"H_degrees": sorted(self.pieces), "d_degrees": self.d_pieces,
                "seed_ok": self.seed_ok, "identity_ok": self.identity_ok,
                "d1_matches_wedge": self.d1_matches_wedge, "passed": self.passed}


def contracting_homotopy(P: PlusStructure, V, v1, v2, value1, value2, zero):
    """H with [mu^1_{alpha1, alpha2}, H] = Id, built order by order in the Z-degree."""
    if all(czero(a - b) for a, b in zip(v1, v2)):
        raise ValueError("the two critical points must be distinct")
    if not czero(value1 - value2):
        raise ValueError("the two critical values must agree")
    one = zero + 1
    alphas = []
    for v, val in ((v1, value1), (v2, value2)):
        al = {b: c for b, c in zip(V, v) if not is_zero(c)}
        if not is_zero(val):
            al[P.f] = val
        alphas.append(al)
    D = differential_matrix(P, alphas[0], alphas[1], zero)
    degs = P.degrees
    n = P.dim
    shifts = sorted({degs[r] - degs[c] for r in range(n) for c in range(n)
                     if not czero(D[r][c])}, reverse=True)
    if any(s > 1 or s % 2 == 0 for s in shifts):
        raise ArithmeticError("differential has unexpected degree pieces %s" % shifts)
    w = [b - a for a, b in zip(v1, v2)]
    d1 = _graded_part(D, degs, 1, zero)
    # d_1 on A is (-1)^{|x|} w ^ x, read from mu^2 of the base
    wedge_ok = True
    nA = P.base.dim
    for x in range(nA):
        expect = {}
        for i, b in enumerate(V):
            if is_zero(w[i]) or x & b:
                continue
            pos = bin(x & (b - 1)).count("1")
            s = (-1 if pos % 2 else 1) * (-1 if degs[x] % 2 else 1)
            expect[x | b] = s * w[i]
        col = _col_dict(d1, x, zero)
        if set(col) != set(expect) or any(not czero(col[k] - expect[k]) for k in expect):
            wedge_ok = False
    H1 = contraction_seed(P, V, w, zero)
    Id = [[one if i == j else zero for j in range(n)] for i in range(n)]
    seed = _madd(matmul(d1, H1), matmul(H1, d1))
    seed_ok = _is_zero_matrix(_madd(seed, Id, -1))
    Hs = {-1: H1}
    H = H1
    lowest = min(degs) - max(degs)
    i = 1
    while -2 * i >= lowest - 1:
        comm = _madd(matmul(D, H), matmul(H, D))
        G = _graded_part(comm, degs, -2 * i, zero)
        if not _is_zero_matrix(G):
            piece = [[-x for x in row] for row in matmul(H1, G)]
            Hs[-1 - 2 * i] = piece
            H = _madd(H, piece)
        i += 1
    final = _madd(_madd(matmul(D, H), matmul(H, D)), Id, -1)
    return HomotopyReport({k: [[str(x) for x in row] for row in M] for k, M in Hs.items()},
                          shifts, seed_ok, _is_zero_matrix(final), wedge_ok)
