"""Frobenius algebras for quantum cohomology and their c1 eigen-decompositions.

Elements are coefficient lists in a fixed basis. Products are stored as a
table {(i, j): vector}; the pairing is a Gram matrix.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg as la
from .exactpoly import PolyRing, parse_polynomial
from .exactpoly.field import QQ, is_zero
from .superpotential import shift

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass
class FrobeniusAlgebra:
    labels: list
    table: dict
    pairing: list
    unit: list
    c1: list = None
    field: object = QQ
    name: str = ""

    @property
    def dim(self):
        return len(self.labels)

    def basis(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def vec(self, label):
        return self.basis(self.labels.index(label))

    def mul(self, x, y):
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if is_zero(yj):
                    continue
                c = xi * yj
                for k, v in enumerate(self.table[(i, j)]):
                    if not is_zero(v):
                        out[k] = out[k] + c * v
        return out

    def power(self, x, k):
        out = list(self.unit)
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def pair(self, x, y):
        s = self.field.zero
        for i, xi in enumerate(x):
            if is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if not is_zero(yj) and not is_zero(self.pairing[i][j]):
                    s = s + xi * yj * self.pairing[i][j]
        return s

    def left(self, x):
        """Matrix of y -> x * y (columns are images of basis vectors)."""
        cols = [self.mul(x, self.basis(j)) for j in range(self.dim)]
        return la.transpose(cols)

    def combo(self, coeffs):
        """Linear combination {label: coefficient}; the key 1 means the unit."""
        out = [self.field.zero] * self.dim
        for lab, c in coeffs.items():
            v = self.unit if lab == 1 else self.vec(lab)
            out = [o + c * x for o, x in zip(out, v)]
        return out

    def add(self, *xs):
        out = [self.field.zero] * self.dim
        for x in xs:
            out = [o + y for o, y in zip(out, x)]
        return out

    def scale(self, c, x):
        return [c * y for y in x]

    def const(self, c):
        return self.scale(self.field(c), self.unit)


def verify_frobenius(A: FrobeniusAlgebra):
    failures = []
    n = A.dim
    B = [A.basis(i) for i in range(n)]
    for i in range(n):
        if A.mul(A.unit, B[i]) != B[i] or A.mul(B[i], A.unit) != B[i]:
            failures.append(("unit", A.labels[i]))
    for i in range(n):
        for j in range(n):
            ij = A.mul(B[i], B[j])
            for k in range(n):
                if A.mul(ij, B[k]) != A.mul(B[i], A.mul(B[j], B[k])):
                    failures.append(("associativity", A.labels[i], A.labels[j], A.labels[k]))
                if A.pair(ij, B[k]) != A.pair(B[i], A.mul(B[j], B[k])):
                    failures.append(("frobenius", A.labels[i], A.labels[j], A.labels[k]))
    nondeg = la.det(A.pairing) != 0
    if not nondeg:
        failures.append(("pairing degenerate",))
    return {"passed": not failures, "failures": failures, "triples": n ** 3,
            "pairing_nondegenerate": nondeg}


# ---------------------------------------------------------------- univariate helpers

def _ptrim(p):
    p = list(p)
    while p and is_zero(p[-1]):
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a, b):
    a = list(a)
    b = _ptrim(b)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(_ptrim(a)) >= len(b):
        a = _ptrim(a)
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = _ptrim(a)
        if not a:
            break
    return _ptrim(q), _ptrim(a)


def _pgcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return [x / a[-1] for x in a] if a else a


def _pderiv(p):
    return _ptrim([i * c for i, c in enumerate(p)][1:])


def _pshift_power(w, k):
    """(x - w)^k as a coefficient list."""
    return [Fraction(comb(k, i)) * (-w) ** (k - i) for i in range(k + 1)]


def givental_relation(n, a):
    """q^n_a(P - w) with q(x) = x^(n-1) - a^a x^(a-1), low to high."""
    w = shift(n, a)
    hi = _pshift_power(w, n - 1)
    lo = _pshift_power(w, a - 1)
    out = list(hi)
    for i, c in enumerate(lo):
        out[i] -= a ** a * c
    return _ptrim(out)


def truncated_polynomial_algebra(relation, var="P", name=""):
    """Q[x]/(relation) on the basis 1, x, ..., x^(d-1) with the top-coefficient pairing.

    The pairing <x, y> is the coefficient of x^(d-1) in x*y, which is a
    nondegenerate invariant form for any monic relation.
    """
    rel = [Fraction(c) for c in relation]
    d = len(rel) - 1
    if rel[-1] != 1:
        raise ValueError("relation must be monic")
    labels = ["1"] + [var if i == 1 else "%s^%d" % (var, i) for i in range(1, d)]

    def reduce(p):
        return (_pdivmod(p, rel)[1] + [ZERO] * d)[:d]

    table = {}
    for i in range(d):
        for j in range(d):
            mono = [ZERO] * (i + j) + [ONE]
            table[(i, j)] = reduce(mono)
    pairing = [[table[(i, j)][d - 1] for j in range(d)] for i in range(d)]
    unit = [ONE] + [ZERO] * (d - 1)
    return FrobeniusAlgebra(labels, table, pairing, unit, name=name)


def hyperplane_model(n, a):
    """The subalgebra Q[P]/q^n_a(P - w) with c1 = (n - a) P."""
    A = truncated_polynomial_algebra(givental_relation(n, a), name="hyperplane(%d,%d)" % (n, a))
    P = A.basis(1)
    A.c1 = [(n - a) * x for x in P]
    return A


# ---------------------------------------------------------------- spectra

@dataclass
class EigenDecomposition:
    eigenvalues: dict  # value -> algebraic multiplicity
    spaces: dict  # value -> basis of generalized eigenspace
    idempotents: dict
    unresolved: list = field(default_factory=list)  # minimal polynomials needing an extension
    checks: dict = field(default_factory=dict)

    @property
    def complete(self):
        return not self.unresolved


def _factor_rational(coeffs):
    """Factor a univariate rational polynomial: [(factor low->high, multiplicity)]."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(coeffs))
    _, facs = sympy.factor_list(expr, x)
    out = []
    for f, m in facs:
        cs = sympy.Poly(f, x).all_coeffs()[::-1]
        cs = [Fraction(int(c.p), int(c.q)) for c in cs]
        out.append(([c / cs[-1] for c in cs], m))
    return out


def c1_spectrum(A: FrobeniusAlgebra, candidates=None, field=None):
    """Generalized eigen-decomposition of c1*.

    Over Q the characteristic polynomial is factored; rational roots give
    eigenvalues and higher-degree irreducible factors are reported as needing
    an extension. With ``candidates`` (values in ``field``) the decomposition
    is carried out over that field instead.
    """
    if A.c1 is None:
        raise ValueError("algebra has no designated c1")
    L = A.left(A.c1)
    n = A.dim
    unresolved = []
    if candidates is None:
        values = []
        for f, m in _factor_rational(la.charpoly(L)):
            if len(f) == 2:
                values.append(-f[0])
            else:
                unresolved.append({"minimal_polynomial": [str(c) for c in f], "multiplicity": m})
        K = A.field
    else:
        K = field or A.field
        values = list(dict.fromkeys(candidates))
        L = [[K(x) for x in row] for row in L]
    spaces, mult = {}, {}
    for lam in values:
        Lk = la.matpow(la.scalar_shift(L, lam), n)
        basis = la.nullspace(Lk, n)
        if basis:
            spaces[lam] = basis
            mult[lam] = len(basis)
    dec = EigenDecomposition(mult, spaces, {}, unresolved)
    total = sum(mult.values())
    dec.checks["multiplicities_sum_to_dim"] = total == n
    if total == n:
        dec.idempotents = _idempotents(A, spaces, K)
        dec.checks.update(_decomposition_checks(A, dec, K))
    return dec


def _lift(A, K):
    if K is A.field:
        return A
    conv = lambda v: [K(x) for x in v]
    return FrobeniusAlgebra(A.labels, {k: conv(v) for k, v in A.table.items()},
                            [conv(r) for r in A.pairing], conv(A.unit),
                            conv(A.c1) if A.c1 else None, K, A.name)


def _idempotents(A, spaces, K):
    """Components of the unit along the generalized eigenspaces."""
    AK = _lift(A, K)
    order = list(spaces)
    cols = [v for lam in order for v in spaces[lam]]
    coeffs = la.solve(la.transpose(cols), AK.unit)
    out, pos = {}, 0
    for lam in order:
        e = [K.zero] * A.dim
        for v in spaces[lam]:
            c = coeffs[pos]
            pos += 1
            e = [x + c * y for x, y in zip(e, v)]
        out[lam] = e
    return out


def _decomposition_checks(A, dec, K):
    AK = _lift(A, K)
    vals = list(dec.spaces)
    idem = all(AK.mul(dec.idempotents[l], dec.idempotents[l]) == dec.idempotents[l] for l in vals)
    ortho_idem = all(not any(AK.mul(dec.idempotents[l], dec.idempotents[m]))
                     for l in vals for m in vals if l != m)
    summed = AK.add(*dec.idempotents.values()) == AK.unit
    ortho = all(is_zero(AK.pair(x, y)) for i, l in enumerate(vals) for m in vals[i + 1:]
                for x in dec.spaces[l] for y in dec.spaces[m])
    return {"idempotent": idem, "idempotents_orthogonal": ortho_idem,
            "idempotents_sum_to_unit": summed, "eigenspaces_orthogonal": ortho}


# ---------------------------------------------------------------- semisimplicity

def minimal_polynomial(A, x):
    """Monic minimal polynomial of x (low to high) by linear dependence of powers."""
    powers = [list(A.unit)]
    while True:
        nxt = A.mul(powers[-1], x)
        sol = la.solve(la.transpose(powers), nxt)
        if sol is not None:
            return [-c for c in sol] + [ONE]
        powers.append(nxt)


def is_semisimple(A, seed=0):
    """Commutative case: the minimal polynomial of a generic element is square-free.

    The generic element is a deterministic pseudo-random rational combination;
    the trace form gives an independent second opinion.
    """
    rng = random.Random(seed)
    x = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(A.dim)]
    m = minimal_polynomial(A, x)
    squarefree = len(_pgcd(m, _pderiv(m))) == 1
    trace_form = [[_trace(A.left(A.mul(A.basis(i), A.basis(j)))) for j in range(A.dim)]
                  for i in range(A.dim)]
    nondeg = la.det(trace_form) != 0
    return {"semisimple": squarefree and len(m) - 1 == A.dim, "minimal_polynomial": [str(c) for c in m],
            "squarefree": squarefree, "trace_form_nondegenerate": nondeg,
            "routes_agree": squarefree == nondeg}


def _trace(M):
    s = ZERO
    for i in range(len(M)):
        s += M[i][i]
    return s


# ---------------------------------------------------------------- cubic surface

CUBIC_LABELS = ["1", "h", "p"] + ["e%d" % i for i in range(1, 7)]


def cubic_surface_algebra():
    """QH*(cubic surface) on {1, h, p, e1..e6} from the product table.

    With M = e1 + ... + e6 and A = 3h - M + 6:
      p*p = 84A + 36, h*p = 42A - 6h, e_i*p = 14A - 6e_i,
      h*h = p + 25A - 12h - 30, h*e_i = 9A - 2h - 6e_i - 12,
      e_i*e_i = -p + 5A - 4e_i - 10, e_i*e_j = 3A - 2(e_i + e_j) - 4.
    """
    n = len(CUBIC_LABELS)
    idx = {l: i for i, l in enumerate(CUBIC_LABELS)}

    def v(**kw):
        out = [ZERO] * n
        for k, c in kw.items():
            out[idx[k if k != "one" else "1"]] += Fraction(c)
        return out

    def lin(*parts):
        out = [ZERO] * n
        for c, vec in parts:
            out = [o + Fraction(c) * x for o, x in zip(out, vec)]
        return out

    one = v(one=1)
    h, p = v(h=1), v(p=1)
    e = [v(**{"e%d" % i: 1}) for i in range(1, 7)]
    Mv = lin(*[(1, x) for x in e])
    Av = lin((3, h), (-1, Mv), (6, one))
    table = {}

    def put(a, b, val):
        table[(idx[a], idx[b])] = val
        table[(idx[b], idx[a])] = val

    for l in CUBIC_LABELS:
        put("1", l, v(**{l if l != "1" else "one": 1}))
    put("p", "p", lin((84, Av), (36, one)))
    put("h", "p", lin((42, Av), (-6, h)))
    put("h", "h", lin((1, p), (25, Av), (-12, h), (-30, one)))
    for i in range(6):
        ei = "e%d" % (i + 1)
        put(ei, "p", lin((14, Av), (-6, e[i])))
        put("h", ei, lin((9, Av), (-2, h), (-6, e[i]), (-12, one)))
        put(ei, ei, lin((-1, p), (5, Av), (-4, e[i]), (-10, one)))
        for j in range(i + 1, 6):
            put(ei, "e%d" % (j + 1), lin((3, Av), (-2, e[i]), (-2, e[j]), (-4, one)))
    # intersection pairing of the blow-up of P^2 at six points
    pairing = [[ZERO] * n for _ in range(n)]
    pairing[idx["1"]][idx["p"]] = pairing[idx["p"]][idx["1"]] = ONE
    pairing[idx["h"]][idx["h"]] = ONE
    for i in range(1, 7):
        pairing[idx["e%d" % i]][idx["e%d" % i]] = -ONE
    c1 = lin((1, Av), (-6, one))
    return FrobeniusAlgebra(list(CUBIC_LABELS), table, pairing, one, c1, name="cubic surface")


def _wpoly(text):
    return parse_polynomial(text, PolyRing(["w"]))


def line_count_symbolic():
    """<P^2, P> from (P - w)^3 = 27 (P - w)^2 and the classical pairing, as a polynomial in w."""
    R = PolyRing(["P", "w"])
    P, w = R.var("P"), R.var("w")
    rel = (P - w) ** 3 - 27 * (P - w) ** 2  # monic in P
    # P^3 reduced by the relation: P^3 - rel has P-degree <= 2
    red = P ** 3 - rel
    # classical pairing with 1 on a cubic surface: <1,1> = <P,1> = 0, <P^2,1> = deg = 3
    pair_with_one = {0: 0, 1: 0, 2: 3}
    out = R.zero()
    for e, c in red.terms.items():
        out = out + R.monomial((0, e[1]), c * pair_with_one[e[0]])
    return _drop_P(out)


def _drop_P(p):
    W = PolyRing(["w"])
    return W.zero() + sum((W.monomial((e[1],), c) for e, c in p.terms.items()), W.zero())


def cubic_surface_suite():
    A = cubic_surface_algebra()
    frob = verify_frobenius(A)
    spec = c1_spectrum(A)
    eig = {str(k): v for k, v in spec.eigenvalues.items()}
    c1 = A.c1
    e = [A.vec("e%d" % i) for i in range(1, 7)]
    Av = A.add(c1, A.const(6))
    # e1*e2 = 3A - 2(e1 + e2) - 4
    e12 = A.mul(e[0], e[1]) == A.add(A.scale(3, Av), A.scale(-2, A.add(e[0], e[1])), A.const(-4))
    P6 = A.add(c1, A.const(6))
    cubic_rel = A.power(P6, 3) == A.scale(27, A.power(P6, 2))
    big = spec.spaces.get(Fraction(-6), [])
    vectors = {"A-27": A.add(Av, A.const(-27)), "A*(A-27)": A.mul(Av, A.add(Av, A.const(-27)))}
    literal = {}
    for i in range(6):
        vectors["3e%d-A+6" % (i + 1)] = A.add(A.scale(3, e[i]), A.scale(-1, Av), A.const(6))
        literal["3e%d-A-6" % (i + 1)] = A.add(A.scale(3, e[i]), A.scale(-1, Av), A.const(-6))
    in_big = {k: la.span_contains(big, v) for k, v in vectors.items()}
    # the misprinted sign: 3e_i - A - 6 differs from a big eigenvector by -12
    literal_in_big = {k: la.span_contains(big, v) for k, v in literal.items()}
    spans = la.rank(list(vectors.values())) == 8
    lines_table = A.pair(A.mul(c1, c1), c1)
    lines = lines_and_semisimplicity()
    ok = (frob["passed"] and eig == {"-6": 8, "21": 1} and e12 and cubic_rel and all(in_big.values())
          and spans and lines_table == 27 and lines["passed"] and all(spec.checks.values()))
    return {
        "frobenius": frob["passed"], "frobenius_failures": frob["failures"],
        "eigenvalues": eig, "decomposition_checks": spec.checks,
        "e1*e2": e12, "(P+6)^3=27(P+6)^2": cubic_rel,
        "big_eigenspace_contains": in_big, "listed_vectors_span_big_eigenspace": spans,
        "literal_vectors_in_big_eigenspace": literal_in_big,
        "lines_from_table": str(lines_table), "lines": lines,
        "primitive_dimension_external": 6,
        "passed": ok,
    }


def lines_and_semisimplicity(w_value=Fraction(-6)):
    """The w-dependent side of the cubic surface computation.

    The identities are checked in the table algebra. Two of them appear in a
    misprinted form in the source ((h - 6)^2 and the constant 20); the
    literal forms are evaluated too and their residuals reported.
    """
    A = cubic_surface_algebra()
    c1, h, p = A.c1, A.vec("h"), A.vec("p")
    e1 = A.vec("e1")
    sq = lambda x: A.mul(x, x)
    lin = lambda *parts: A.add(*[A.scale(Fraction(c), v) for c, v in parts])
    one = A.unit
    identities = {
        "c1^2 = 3p + 9c1 + 108": sq(c1) == lin((3, p), (9, c1), (108, one)),
        "(h+6)^2 = p + 25c1 + 156": sq(A.add(h, A.const(6))) == lin((1, p), (25, c1), (156, one)),
        "(e_i+2)^2 = -p + 5c1 + 24": all(
            sq(A.add(A.vec("e%d" % i), A.const(2))) == lin((-1, p), (5, A.c1), (24, one))
            for i in range(1, 7)),
    }
    literal = {
        "(h-6)^2 - (p + 25c1 + 156)": _label_vec(A, A.add(sq(A.add(h, A.const(-6))),
                                                         lin((-1, p), (-25, c1), (-156, one)))),
        "(e_i+2)^2 - (-p + 5c1 + 20)": _label_vec(A, A.add(sq(A.add(e1, A.const(2))),
                                                           lin((1, p), (-5, c1), (-20, one)))),
    }
    # apply a unital homomorphism sending c1 to w: CO(p) from the first identity
    R = PolyRing(["w"])
    w = R.var("w")
    CO_p = (w * w - 9 * w - 108) / 3
    disc_h = CO_p + 25 * w + 156
    disc_e = -CO_p + 5 * w + 24
    expect_h = _wpoly("(w+6)*(w+60)/3")
    expect_e = _wpoly("-(w+6)*(w-30)/3")
    count = line_count_symbolic()
    at = lambda poly: poly.evaluate({"w": w_value})
    nonss = _rank_two_quotient(at(disc_h))
    toy_ss = is_semisimple(truncated_polynomial_algebra([-1, 0, 1]))
    ok = (all(identities.values()) and disc_h == expect_h and disc_e == expect_e
          and count == _wpoly("9*w + 81") and at(count) == 27 and at(disc_h) == 0
          and at(disc_e) == 0 and not nonss["semisimple"] and toy_ss["semisimple"])
    return {
        "identities": identities,
        "literal_residuals": literal,
        "CO(p)": CO_p.format(),
        "discriminant_h": disc_h.format(), "discriminant_h_matches": disc_h == expect_h,
        "discriminant_e": disc_e.format(), "discriminant_e_matches": disc_e == expect_e,
        "line_count": count.format(), "lines_at_w": str(at(count)), "w": str(w_value),
        "discriminants_vanish": at(disc_h) == 0 and at(disc_e) == 0,
        "rank_two_quotient_semisimple": nonss["semisimple"],
        "distinct_roots_toy_semisimple": toy_ss["semisimple"],
        "passed": ok,
    }


def _rank_two_quotient(D):
    """A rank-2 unital algebra generated by y with y^2 = D: Q[y]/(y^2 - D)."""
    return is_semisimple(truncated_polynomial_algebra([-Fraction(D), 0, 1], var="y"))


def _label_vec(A, v):
    parts = []
    for lab, c in zip(A.labels, v):
        if c:
            parts.append("%s*%s" % (c, lab) if lab != "1" else str(c))
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------- hyperplane family

def hyperplane_suite(n, a, critical_values=None, field=None):
    """Spectrum of c1* on Q[P]/q(P - w) against the critical values of W.

    ``critical_values`` is a list of (value, kind) from the superpotential
    module; by default the closed-form small values in their value field.
    """
    from .superpotential import small_critical_values, value_field

    A = hyperplane_model(n, a)
    frob = verify_frobenius(A)
    over_q = c1_spectrum(A)
    if critical_values is None:
        K = value_field(n, a)[0]
        smalls = small_critical_values(n, a)
        big = K(shift(n, a)) if K is not QQ else shift(n, a)
    else:
        K = field
        big = critical_values["big"]
        smalls = critical_values["small"]
    cand = [big] + list(smalls)
    dec = c1_spectrum(A, candidates=cand, field=K)
    expected = {big: a - 1}
    for s in smalls:
        expected[s] = expected.get(s, 0) + 1
    match = dec.eigenvalues == expected
    return {
        "n": n, "a": a, "dim": A.dim,
        "frobenius": frob["passed"],
        "rational_eigenvalues": {str(k): v for k, v in over_q.eigenvalues.items()},
        "needs_extension": over_q.unresolved,
        "big_multiplicity": dec.eigenvalues.get(big),
        "small_multiplicities": [dec.eigenvalues.get(s) for s in smalls],
        "matches_critical_values": match,
        "decomposition_checks": dec.checks,
        "passed": frob["passed"] and match and all(dec.checks.values()),
    }


# ---------------------------------------------------------------- text format

def load_algebra(text):
    """Parse a structure-constant file.

    Lines (``#`` starts a comment):
        basis 1 h p e1 ...          first label is the unit
        let A = 3*h - e1 + 6        alias usable in later expressions
        c1 = A - 6
        mul h p = 42*A - 6*h        products (symmetric entries must be given)
        pair 1 p = 1                Gram matrix entries (symmetric)
    """
    labels, aliases, table, pairs, c1 = None, {}, {}, {}, None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "basis":
            labels = rest.split()
            continue
        if labels is None:
            raise ValueError("basis line must come first")
        if head == "let":
            name, expr = [x.strip() for x in rest.split("=", 1)]
            aliases[name] = _linear(expr, labels, aliases)
        elif head == "c1":
            c1 = _linear(line.split("=", 1)[1], labels, aliases)
        elif head == "mul":
            lhs, expr = rest.split("=", 1)
            x, y = lhs.split()
            table[(labels.index(x), labels.index(y))] = _linear(expr, labels, aliases)
        elif head == "pair":
            lhs, expr = rest.split("=", 1)
            x, y = lhs.split()
            pairs[(labels.index(x), labels.index(y))] = Fraction(expr.strip())
        else:
            raise ValueError("unknown directive %r" % head)
    n = len(labels)
    for i in range(n):
        for j in range(n):
            if i == 0 or j == 0:
                table.setdefault((i, j), [ONE if k == (j if i == 0 else i) else ZERO for k in range(n)])
            elif (i, j) not in table:
                if (j, i) in table:
                    table[(i, j)] = table[(j, i)]
                else:
                    raise ValueError("missing product %s*%s" % (labels[i], labels[j]))
    pairing = [[pairs.get((i, j), pairs.get((j, i), ZERO)) for j in range(n)] for i in range(n)]
    unit = [ONE] + [ZERO] * (n - 1)
    return FrobeniusAlgebra(labels, table, pairing, unit, c1)


def _linear(expr, labels, aliases):
    names = [l for l in labels[1:]] + list(aliases)
    safe = {name: "x%d" % i for i, name in enumerate(names)}
    R = PolyRing(list(safe.values()))
    import re

    text = re.sub(r"[A-Za-z_][A-Za-z_0-9]*", lambda m: safe.get(m.group(0), m.group(0)), expr)
    poly = parse_polynomial(text, R)
    n = len(labels)
    out = [ZERO] * n
    for e, c in poly.terms.items():
        if sum(e) == 0:
            out[0] += c
            continue
        if sum(e) != 1:
            raise ValueError("expression %r is not linear" % expr)
        name = names[e.index(1)]
        if name in aliases:
            out = [o + c * x for o, x in zip(out, aliases[name])]
        else:
            out[labels.index(name)] += c
    return out
