"""The Koszul matrix factorization of Z~, its endomorphism DGA and the minimal model.

K = S[theta_1..theta_n] with delta = sum u_j d/dtheta_j + w_j theta_j. End(K)
is spanned over S by normal-ordered words theta^I del^J (bitmasks I, J).
The Koszul part d_0 = [sum u_j del_j, -] only acts on the theta^I factor, so
the contraction onto Lambda(del) (x) R is the Euler homotopy tensored with
the identity on del^J. Higher products come from homotopy transfer in bar
form:

    F_1 = sum_m (eta b1')^m iota
    F_k = sum_m (eta b1')^m eta sum_i b2(F_i, F_{k-i})
    b'_k = pi sum_i b2(F_i, F_{k-i})

with b1 = (-1)^|x| d, b2(x1, x2) = (-1)^|x1| x2 x1, eta = (-1)^|x| h, and b1'
the perturbation [sum w_j theta_j, -]. Seidel's mu^k(a_k..a_1) is
b'_k(a_1..a_k).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .ainfinity.core import AInfAlgebra, Cochain
from .exactpoly import QQ, PolyRing, Polynomial
from .exactpoly.field import is_zero


def popcount(m):
    return bin(m).count("1")


def bits(m):
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def merge_sign(A, B):
    """Sign of theta^A theta^B -> theta^(A|B) for disjoint masks (0 if they overlap)."""
    if A & B:
        return 0
    s = 0
    for b in bits(B):
        s += popcount(A >> (b + 1))
    return -1 if s & 1 else 1


def mask_label(J, letter="d"):
    return "1" if not J else "*".join("%s%d" % (letter, j + 1) for j in bits(J))


# ------------------------------------------------------------ operator algebra


@lru_cache(maxsize=None)
def del_theta(J, K):
    """Normal ordering of del^J theta^K as ((I', J'), sign) pairs."""
    if not J:
        return (((K, 0), 1),)
    if not K:
        return (((0, J), 1),)
    j = bits(J)[-1]
    Jp = J & ~(1 << j)
    out = {}
    # del_j theta^K = [j in K] (-1)^{#K below j} theta^{K-j} + (-1)^{|K|} theta^K del_j
    if K >> j & 1:
        s = -1 if popcount(K & ((1 << j) - 1)) & 1 else 1
        for key, c in del_theta(Jp, K & ~(1 << j)):
            out[key] = out.get(key, 0) + s * c
    s = -1 if popcount(K) & 1 else 1
    for (I2, J2), c in del_theta(Jp, K):
        key = (I2, J2 | (1 << j))  # j exceeds every element of J2
        out[key] = out.get(key, 0) + s * c
    return tuple((k, v) for k, v in out.items() if v)


@lru_cache(maxsize=None)
def word_product(I, J, K, L):
    """(theta^I del^J)(theta^K del^L) in normal order."""
    out = {}
    for (I2, J2), c in del_theta(J, K):
        s1 = merge_sign(I, I2)
        s2 = merge_sign(J2, L)
        if s1 and s2:
            key = (I | I2, J2 | L)
            out[key] = out.get(key, 0) + c * s1 * s2
    return tuple((k, v) for k, v in out.items() if v)


class EndAlgebra:
    """End_S(K) with coefficients in ``ring``; elements are {(I, J): Polynomial}."""

    def __init__(self, n, ring, u_names=None):
        self.n = n
        self.ring = ring
        self.u_names = u_names or ["u%d" % j for j in range(1, n + 1)]
        self.u_idx = [ring.index(x) for x in self.u_names]
        self.zero_poly = ring.zero()

    @staticmethod
    def parity(key):
        return (popcount(key[0]) + popcount(key[1])) & 1

    def add(self, x, y, scale=1):
        out = dict(x)
        for k, v in y.items():
            w = out.get(k)
            nv = v * scale if scale != 1 else v
            nv = nv if w is None else w + nv
            if nv.is_zero():
                out.pop(k, None)
            else:
                out[k] = nv
        return out

    def scale(self, x, c):
        out = {}
        for k, v in x.items():
            nv = v * c
            if not nv.is_zero():
                out[k] = nv
        return out

    def compose(self, x, y):
        out = {}
        for (I, J), f in x.items():
            for (K, L), g in y.items():
                prod = None
                for key, c in word_product(I, J, K, L):
                    if prod is None:
                        prod = f * g
                    term = prod * c if c != 1 else prod
                    w = out.get(key)
                    out[key] = term if w is None else w + term
        return {k: v for k, v in out.items() if not v.is_zero()}

    def graded_commutator(self, x, y):
        """[x, y] for homogeneous x, y."""
        px = {self.parity(k) for k in x}
        py = {self.parity(k) for k in y}
        if len(px) > 1 or len(py) > 1:
            raise ValueError("commutator needs homogeneous arguments")
        s = -1 if (px and py and px.pop() and py.pop()) else 1
        return self.add(self.compose(x, y), self.compose(y, x), -s)

    def u_degree(self, p):
        return max((sum(e[i] for i in self.u_idx) for e in p.terms), default=-1)

    def truncate_u(self, x, budget):
        if budget is None:
            return x
        out = {}
        idx = self.u_idx
        for k, p in x.items():
            terms = {e: c for e, c in p.terms.items() if sum(e[i] for i in idx) <= budget}
            if terms:
                out[k] = Polynomial(self.ring, terms)
        return out

    def identity(self):
        return {(0, 0): self.ring.one()}

    def act(self, op, kelem):
        """Apply an operator to an element {mask: Polynomial} of K (independent route)."""
        out = {}
        for (I, J), f in op.items():
            for K, g in kelem.items():
                cur = {K: 1}
                for j in reversed(bits(J)):
                    nxt = {}
                    for M, c in cur.items():
                        if M >> j & 1:
                            s = -1 if popcount(M & ((1 << j) - 1)) & 1 else 1
                            nxt[M & ~(1 << j)] = nxt.get(M & ~(1 << j), 0) + s * c
                    cur = nxt
                for M, c in cur.items():
                    s = merge_sign(I, M)
                    if s and c:
                        key = I | M
                        term = f * g * (s * c)
                        out[key] = out[key] + term if key in out else term
        return {k: v for k, v in out.items() if not v.is_zero()}


# ------------------------------------------------------------ factorization


def _check(n, a):
    if n < 3 or not 2 <= a <= n - 1:
        raise ValueError("need 2 <= a <= n-1 (n=%d, a=%d)" % (n, a))


def koszul_ring(n, extra=(), field=QQ, with_r=True):
    names = ["u%d" % j for j in range(1, n + 1)]
    if with_r:
        names += ["r%d" % j for j in range(1, n + 1)]
    return PolyRing(names + list(extra), field)


@dataclass
class MatrixFactorization:
    n: int
    a: int
    ring: PolyRing
    Zt: Polynomial
    w: list
    delta: dict
    delta0: dict
    delta1: dict
    E: EndAlgebra
    r_value: object = None

    def basis(self):
        return list(range(1 << self.n))


def build_K(n, a, ring=None, r_value=None):
    """Koszul factorization of Z~ = -u_1..u_n + sum r_j u_j^a.

    With ``r_value`` set, every r_j is replaced by that scalar (r -> 1 gives W - w).
    """
    _check(n, a)
    ring = ring or koszul_ring(n, with_r=r_value is None)
    u = [ring.var("u%d" % j) for j in range(1, n + 1)]
    r = [ring.var("r%d" % j) if r_value is None else ring.const(r_value) for j in range(1, n + 1)]
    prod = ring.one()
    for x in u:
        prod = prod * x
    Zt = -prod + sum((r[j] * u[j] ** a for j in range(n)), ring.zero())
    w = []
    for j in range(n):
        others = ring.one()
        for i in range(n):
            if i != j:
                others = others * u[i]
        w.append(others * Fraction(-1, n) + r[j] * u[j] ** (a - 1))
    d0 = {(0, 1 << j): u[j] for j in range(n)}
    d1 = {(1 << j, 0): w[j] for j in range(n)}
    E = EndAlgebra(n, ring)
    return MatrixFactorization(n, a, ring, Zt, w, E.add(d0, d1), d0, d1, E, r_value)


def verify_delta_squared(mf: MatrixFactorization):
    """Sum u_j w_j = Z~, and delta^2 = Z~ id both as operators on K and in End(K)."""
    E = mf.E
    ring = mf.ring
    s = ring.zero()
    for j in range(mf.n):
        s = s + ring.var("u%d" % (j + 1)) * mf.w[j]
    sum_ok = (s - mf.Zt).is_zero()
    failures = []
    for K in range(1 << mf.n):
        v = {K: ring.one()}
        dd = E.act(mf.delta, E.act(mf.delta, v))
        if dd != {K: mf.Zt}:
            failures.append(mask_label(K, "theta"))
    sq = E.compose(mf.delta, mf.delta)
    algebra_ok = sq == {(0, 0): mf.Zt}
    return {"n": mf.n, "a": mf.a, "sum_u_w_equals_Z": sum_ok,
            "basis_elements_checked": 1 << mf.n, "failures": failures,
            "normal_ordered_square_ok": algebra_ok,
            "passed": sum_ok and not failures and algebra_ok}


# ------------------------------------------------------------ DGA and contraction


class EndDGA:
    def __init__(self, mf: MatrixFactorization):
        self.mf = mf
        self.E = mf.E
        self.ring = mf.ring
        n = mf.n
        self.n = n
        self._u = [mf.ring.var("u%d" % j) for j in range(1, n + 1)]

    def d(self, x, part=None):
        """[delta, x] (part: None, 0 for the Koszul part, 1 for the perturbation)."""
        D = {None: self.mf.delta, 0: self.mf.delta0, 1: self.mf.delta1}[part]
        out = {}
        for key, f in x.items():
            out = self.E.add(out, self.E.graded_commutator(D, {key: f}))
        return out

    # contraction onto Lambda(del) (x) R
    def iota(self, J, coeff=None):
        return {(0, J): coeff if coeff is not None else self.ring.one()}

    def pi(self, x):
        """{J: coefficient at u = 0} from the theta-free part."""
        out = {}
        idx = self.E.u_idx
        for (I, J), f in x.items():
            if I:
                continue
            terms = {e: c for e, c in f.terms.items() if not any(e[i] for i in idx)}
            if terms:
                out[J] = Polynomial(self.ring, terms)
        return out

    def h(self, x):
        """Euler homotopy: f theta^I del^J -> (1/weight) sum_j df/du_j theta_j theta^I del^J,
        applied per homogeneous u-degree; weight = u-degree + |I|."""
        out = {}
        idx = self.E.u_idx
        ring = self.ring
        for (I, J), f in x.items():
            by_deg = {}
            for e, c in f.terms.items():
                by_deg.setdefault(sum(e[i] for i in idx), {})[e] = c
            for deg, terms in by_deg.items():
                weight = deg + popcount(I)
                if weight == 0 or deg == 0:
                    continue
                g = Polynomial(ring, terms)
                for j in range(self.n):
                    if I >> j & 1:
                        continue
                    dg = g.diff("u%d" % (j + 1))
                    if dg.is_zero():
                        continue
                    s = merge_sign(1 << j, I)
                    key = (I | (1 << j), J)
                    term = dg * Fraction(s, weight)
                    out[key] = out[key] + term if key in out else term
        return {k: v for k, v in out.items() if not v.is_zero()}

    def check_contraction(self, samples=20, seed=1, max_deg=3):
        """p i = Id, Id - i p = d0 h + h d0 and the side conditions, on random elements."""
        rng = random.Random(seed)
        n = self.n
        ring = self.ring
        u_names = self.E.u_names
        fails = []
        for t in range(samples):
            key = (rng.randrange(1 << n), rng.randrange(1 << n))
            exps = [0] * ring.nvars
            for _ in range(rng.randint(0, max_deg)):
                exps[ring.index(rng.choice(u_names))] += 1
            x = {key: ring.monomial(exps, rng.randint(1, 5))}
            lhs = self.E.add(self.d(self.h(x), 0), self.h(self.d(x, 0)))
            ip = {}
            for J, f in self.pi(x).items():
                ip = self.E.add(ip, self.iota(J, f))
            rhs = self.E.add(x, ip, -1)
            if lhs != rhs:
                fails.append(("homotopy", key, exps))
            if self.h(self.h(x)):
                fails.append(("h^2", key, exps))
            if self.pi(self.h(x)):
                fails.append(("p h", key, exps))
        for J in range(1 << n):
            if self.h(self.iota(J)):
                fails.append(("h i", J))
            if self.pi(self.iota(J)) != {J: ring.one()}:
                fails.append(("p i", J))
        return {"samples": samples, "failures": fails, "passed": not fails}

    def check_dga(self, samples=10, seed=2):
        rng = random.Random(seed)
        n = self.n
        ring = self.ring
        fails = []
        if self.d(self.E.identity()):
            fails.append("d(id) != 0")
        for _ in range(samples):
            x = {(rng.randrange(1 << n), rng.randrange(1 << n)): ring.const(rng.randint(1, 4))
                 * self._u[rng.randrange(n)]}
            y = {(rng.randrange(1 << n), rng.randrange(1 << n)): ring.const(rng.randint(1, 4))}
            if self.d(self.d(x)):
                fails.append(("d^2", list(x)))
            px = EndAlgebra.parity(next(iter(x)))
            lhs = self.d(self.E.compose(x, y))
            rhs = self.E.add(self.E.compose(self.d(x), y),
                             self.E.compose(x, self.d(y)), 1)
            if px:
                rhs = self.E.add(self.E.compose(self.d(x), y), self.E.compose(x, self.d(y)), -1)
            if lhs != rhs:
                fails.append(("leibniz", list(x), list(y)))
            odd = all(EndAlgebra.parity(k) != EndAlgebra.parity(next(iter(x)))
                      for k in self.d(x))
            if not odd:
                fails.append(("parity", list(x)))
        return {"samples": samples, "failures": fails, "passed": not fails}


def end_dga(n, a, ring=None):
    return EndDGA(build_K(n, a, ring))


# ------------------------------------------------------------ homotopy transfer


def _sgn(x, key):
    return x if not EndAlgebra.parity(key) else -x


class Transfer:
    """Evaluates the transferred A-infinity structure on sequences of inputs.

    Inputs are elements of Lambda(del) (x) R given as {J: coefficient}; the
    coefficients live in the DGA's ring (scalars or polynomials in extra
    parameters such as formal coordinates v_j). ``r_max`` truncates the
    r-degree; ``slack`` loosens the u-budget (for stability checks).
    """

    def __init__(self, dga: EndDGA, r_max=None, slack=0):
        self.dga = dga
        self.E = dga.E
        self.ring = dga.ring
        self.n = dga.n
        self.r_max = r_max
        self.slack = slack
        self.r_idx = [i for i, x in enumerate(self.ring.names) if x.startswith("r")
                      and x[1:].isdigit()]
        self._cache = {}
        self._F1_cache = {}

    # truncations
    def _trunc(self, x, budget):
        E = self.E
        u_idx, r_idx, rmax = E.u_idx, self.r_idx, self.r_max
        out = {}
        for k, p in x.items():
            terms = {e: c for e, c in p.terms.items()
                     if (budget is None or sum(e[i] for i in u_idx) <= budget)
                     and (rmax is None or sum(e[i] for i in r_idx) <= rmax)}
            if terms:
                out[k] = Polynomial(self.ring, terms)
        return out

    def _b2(self, x1, x2):
        """b2(x1, x2) = (-1)^|x1| x2 x1, extended bilinearly over homogeneous pieces."""
        out = {}
        E = self.E
        for k1, f1 in x1.items():
            piece = {k1: f1 if not EndAlgebra.parity(k1) else -f1}
            out = E.add(out, E.compose(x2, piece))
        return out

    def _eta(self, x):
        h = self.dga.h({k: _sgn(v, k) for k, v in x.items()})
        return h

    def _b1p(self, x):
        return self.dga.d({k: _sgn(v, k) for k, v in x.items()}, 1)

    def _perturb_series(self, x, budget):
        """sum_m (eta b1')^m x, truncated."""
        total = dict(x)
        cur = x
        while cur:
            cur = self._trunc(self._eta(self._b1p(cur)), budget)
            total = self.E.add(total, cur)
        return total

    def _F1(self, elt, budget):
        key = (tuple(sorted((J, c) for J, c in elt.items())), budget)
        hit = self._F1_cache.get(key)
        if hit is not None:
            return hit
        base = {}
        for J, c in elt.items():
            base = self.E.add(base, {(0, J): c if isinstance(c, Polynomial) else self.ring.const(c)})
        res = self._perturb_series(self._trunc(base, budget), budget)
        self._F1_cache[key] = res
        return res

    def evaluate_bar(self, xs, memo_key=None):
        """b'_k(x_1..x_k) for a bar-ordered sequence of inputs; returns {J: coeff}."""
        s = len(xs)
        if s == 0:
            return {}
        memo = {}
        shared = self._cache if memo_key is not None else None

        def F(i, j):
            k = j - i
            budget = None if k == s else s - k - 1 + self.slack
            key = (i, j)
            if key in memo:
                return memo[key]
            if shared is not None and k < s:
                gkey = (memo_key[i:j], budget)
                hit = shared.get(gkey)
                if hit is not None:
                    memo[key] = hit
                    return hit
            if k == 1:
                val = self._F1(xs[i], budget)
            else:
                acc = {}
                for m in range(i + 1, j):
                    left = F(i, m)
                    if not left:
                        continue
                    right = F(m, j)
                    if not right:
                        continue
                    acc = self.E.add(acc, self._b2(left, right))
                # eta lowers the u-degree by one, so the pre-eta budget is one larger
                acc = self._trunc(acc, budget + 1 if k < s else 0)
                if k == s:
                    val = acc
                else:
                    val = self._perturb_series(self._trunc(self._eta(acc), budget), budget)
            memo[key] = val
            if shared is not None and k < s:
                shared[(memo_key[i:j], budget)] = val
            return val

        if s == 1:
            top = self._trunc(self._b1p(self._F1(xs[0], 0 + self.slack)), 0)
            return self.dga.pi(top)
        return self.dga.pi(F(0, s))

    def mu(self, *written):
        """Seidel-order mu^s(a_s, ..., a_1) with a_i given as {J: coeff}."""
        return self.evaluate_bar(list(reversed(written)))

    def mu_basis(self, written):
        xs = [{J: self.ring.one()} for J in reversed(written)]
        return self.evaluate_bar(xs, memo_key=tuple(reversed(written)))


class LazyModel:
    """The transferred structure with every r_j set to a scalar, evaluated on demand.

    No arity truncation is needed: for inputs x_1..x_k padded with odd
    generators, the degree equation bounds the total arity by
    2 + (n - 2)(2 - k + X)/2 with X the total length of the x_i.
    """

    def __init__(self, n, a, field=QQ, r_value=1, extra=()):
        ring = koszul_ring(n, extra=extra, field=field, with_r=False)
        self.n, self.a = n, a
        self.field = field
        self.coeff_ring = PolyRing(list(extra), field) if extra else None
        self.mf = build_K(n, a, ring=ring, r_value=r_value)
        self.transfer = Transfer(EndDGA(self.mf), r_max=None)
        self.dim = 1 << n
        self.parity = [popcount(J) & 1 for J in range(self.dim)]
        self.degrees = [popcount(J) for J in range(self.dim)]
        self.labels = [mask_label(J) for J in range(self.dim)]
        self.unit = 0

    def mu_A(self, written, tokens=None):
        ring = self.transfer.ring
        xs = [{J: c.to_ring(ring) if isinstance(c, Polynomial) else c for J, c in x.items()}
              for x in reversed(written)]
        key = tuple(reversed(tokens)) if tokens is not None else None
        out = self.transfer.evaluate_bar(xs, memo_key=key)
        if self.coeff_ring is not None:
            return {J: _drop(p, self.coeff_ring) for J, p in out.items()}
        return {J: p.constant_term() for J, p in out.items()
                if not is_zero(p.constant_term())}

    def arity_bound(self, k, X):
        return 2 + (self.n - 2) * (2 - k + X) // 2


# ------------------------------------------------------------ degree bookkeeping


def admissible(n, a, counts, out_mask, r_max=None):
    """(c, q) solving k_j = m_j + a c_j + q with s = 2 + (a-2)|c| + (n-2)q.

    ``counts`` is the multiset of generator indices over all inputs. Returns the
    list of admissible r-exponent vectors c (|c| <= r_max when given).
    """
    m = [out_mask >> j & 1 for j in range(n)]
    res = []
    # q ranges over values making every c_j a nonnegative integer
    lo = min(k - mm for k, mm in zip(counts, m))
    for q in range(lo - a * (r_max or 8) - 1, lo + 1):
        cs = []
        ok = True
        for k, mm in zip(counts, m):
            rem = k - mm - q
            if rem < 0 or rem % a:
                ok = False
                break
            cs.append(rem // a)
        if not ok:
            continue
        if r_max is not None and sum(cs) > r_max:
            continue
        res.append((tuple(cs), q))
    return res


def degree_ok(n, a, written, out_mask, c, s=None):
    """The grading equation for one structure-constant entry r^c: inputs -> out."""
    s = len(written) if s is None else s
    counts = [sum(J >> j & 1 for J in written) for j in range(n)]
    m = [out_mask >> j & 1 for j in range(n)]
    qs = {k - mm - a * cj for k, mm, cj in zip(counts, m, c)}
    if len(qs) != 1:
        return False
    q = qs.pop()
    return s == 2 + (a - 2) * sum(c) + (n - 2) * q


def admissible_counts(n, a, s, r_max):
    """Generator-count vectors k for which some entry of mu^s with |c| <= r_max can be nonzero."""
    out = set()
    for m in product((0, 1), repeat=n):
        for c in product(range(r_max + 1), repeat=n):
            if sum(c) > r_max:
                continue
            num = s - 2 - (a - 2) * sum(c)
            if num % (n - 2):
                continue
            q = num // (n - 2)
            k = tuple(mj + a * cj + q for mj, cj in zip(m, c))
            if min(k) >= 0:
                out.add(k)
    return out


def tuple_can_be_nonzero(n, a, written, r_max):
    counts = tuple(sum(J >> j & 1 for J in written) for j in range(n))
    return counts in admissible_counts(n, a, len(written), r_max)


# ------------------------------------------------------------ minimal model


def r_ring(n, extra=(), field=QQ):
    return PolyRing(["r%d" % j for j in range(1, n + 1)] + list(extra), field)


def _to_r(p, target):
    """Move a polynomial with u-degree 0 into the r-only ring."""
    return p.to_ring(target) if set(p.variables()) <= set(target.names) else _drop(p, target)


def _drop(p, target):
    names = p.ring.names
    keep = [i for i, x in enumerate(names) if x in target.names]
    pos = [target.index(names[i]) for i in keep]
    out = {}
    for e, c in p.terms.items():
        if any(e[i] for i in range(len(names)) if i not in keep):
            raise ValueError("polynomial still depends on u")
        f = [0] * target.nvars
        for i, t in zip(keep, pos):
            f[t] = e[i]
        out[tuple(f)] = c
    return Polynomial(target, out)


def r_truncator(ring, r_max):
    idx = [i for i, x in enumerate(ring.names) if x.startswith("r")]

    def trunc(p):
        if not isinstance(p, Polynomial):
            return p
        return Polynomial(ring, {e: c for e, c in p.terms.items()
                                 if sum(e[i] for i in idx) <= r_max})
    trunc.r_max = r_max
    return trunc


@dataclass
class MinimalModel:
    n: int
    a: int
    r_max: int
    arity: int
    algebra: AInfAlgebra
    transfer: Transfer
    evaluated: int
    skipped: int
    certificate: dict = field(default_factory=dict)


def minimal_model(n, a, r_max=1, arity=4, prune=True, slack=0):
    """Transferred minimal A-infinity structure on Lambda(del) (x) R_a, truncated."""
    mf = build_K(n, a)
    dga = EndDGA(mf)
    T = Transfer(dga, r_max=r_max, slack=slack)
    R = r_ring(n)
    labels = [mask_label(J) for J in range(1 << n)]
    parity = [popcount(J) & 1 for J in range(1 << n)]
    mu = Cochain({}, 0)
    evaluated = skipped = 0
    for s in range(1, arity + 1):
        allowed = admissible_counts(n, a, s, r_max)
        for written in product(range(1 << n), repeat=s):
            if prune and tuple(sum(J >> j & 1 for J in written) for j in range(n)) not in allowed:
                skipped += 1
                continue
            evaluated += 1
            out = T.mu_basis(written)
            for J, p in out.items():
                mu.add_entry(written, J, _drop(p, R))
    # mu^0: pi of the curvature, zero for a DG algebra
    A = AInfAlgebra(labels, parity, mu, unit=0, trunc=r_truncator(R, r_max), max_arity=arity,
                    name="B(%d,%d)" % (n, a))
    return MinimalModel(n, a, r_max, arity, A, T, evaluated, skipped)


def order_zero_product(model: MinimalModel):
    """mu^2 at r = 0 compared with the exterior product in Seidel signs."""
    A = model.algebra
    n = model.n
    bad = []
    for x in range(1 << n):
        for y in range(1 << n):
            got = {k: v.constant_term() for k, v in A.mu.entry((x, y)).items()
                   if not is_zero(v.constant_term())}
            s = merge_sign(x, y)
            expect = {} if not s else {x | y: Fraction(s * (-1 if popcount(y) & 1 else 1))}
            if got != expect:
                bad.append((mask_label(x), mask_label(y)))
    return {"exterior": not bad, "mismatches": bad[:10]}


def mu2_is_wedge(model: MinimalModel):
    """mu^2 equals the exterior product exactly (all r-orders)."""
    A = model.algebra
    n = model.n
    R = r_ring(n)
    for x in range(1 << n):
        for y in range(1 << n):
            s = merge_sign(x, y)
            expect = {} if not s else {x | y: R.const(s * (-1 if popcount(y) & 1 else 1))}
            if A.mu.entry((x, y)) != expect:
                return False
    return True


def grading_consistency(model: MinimalModel):
    n, a = model.n, model.a
    bad = []
    for T, b, p in model.algebra.mu.nonzero_entries():
        for e in p.terms:
            c = e[:n]
            if not degree_ok(n, a, T, b, c):
                bad.append((T, b, c))
    return {"entries_checked": sum(1 for _ in model.algebra.mu.nonzero_entries()),
            "violations": bad[:10], "passed": not bad}


def first_order_class(model: MinimalModel):
    """Coefficient of r_j e in mu^a(d_j, ..., d_j), as the polynomial sum c_j r_j u_j^a."""
    n, a = model.n, model.a
    coeffs = []
    for j in range(n):
        p = model.algebra.mu.entry((1 << j,) * a).get(0)
        c = Fraction(0) if p is None else p.coefficient(
            tuple(1 if i == j else 0 for i in range(n)))
        coeffs.append(c)
    return coeffs


def stability_check(n, a, r_max, arity, base=None, slack=2):
    """Re-evaluate every admissible tuple with r-degree + 1 and a looser u-budget.

    Each entry is computed from its own input tuple, with budgets depending
    only on the tuple length, so raising the arity bound cannot change any
    entry of arity <= ``arity``; that increment is recorded as structural.
    """
    base = base or minimal_model(n, a, r_max, arity)
    R = r_ring(n)
    trunc = r_truncator(R, r_max)
    T = Transfer(EndDGA(build_K(n, a)), r_max=r_max + 1, slack=slack)
    diffs = []
    evaluated = 0
    for s in range(1, arity + 1):
        allowed = admissible_counts(n, a, s, r_max)
        for written in product(range(1 << n), repeat=s):
            if tuple(sum(J >> j & 1 for J in written) for j in range(n)) not in allowed:
                continue
            evaluated += 1
            got = {J: trunc(_drop(p, R)) for J, p in T.mu_basis(written).items()}
            got = {J: p for J, p in got.items() if not p.is_zero()}
            if got != base.algebra.mu.entry(written):
                diffs.append([mask_label(J) for J in written])
    return {"bounds": {"r": r_max, "arity": arity},
            "incremented": {"r": r_max + 1, "u_slack": slack, "arity": "structural"},
            "tuples_rechecked": evaluated, "changed_entries": diffs[:10], "stable": not diffs}


# ------------------------------------------------------------ type check


def cohomology_algebra(model: MinimalModel, r_value=1, field=QQ):
    """H(A) with r_j -> r_value: the product x y = (-1)^sigma(y) mu^2(x, y) as a FiniteAlgebra."""
    from .clifford import FiniteAlgebra

    A = model.algebra
    n = model.n
    point = [field(r_value) if callable(field) else r_value] * n
    table = {}
    for x in range(A.dim):
        for y in range(A.dim):
            outs = {}
            for k, p in A.mu.entry((x, y)).items():
                v = p.evaluate(point) if isinstance(p, Polynomial) else p
                if not is_zero(v):
                    outs[k] = -v if A.parity[y] else v
            if outs:
                table[(x, y)] = outs
    return FiniteAlgebra(A.labels, A.parity, table, unit=A.unit, field=field,
                         name="H(%s, r=%s)" % (A.name, r_value))


def clifford_identification(H, n):
    """Read B from [x_i][x_j] + [x_j][x_i] = 2 B_ij and check e_S -> x_S is an isomorphism Cl(B) -> H."""
    from .clifford import clifford_build
    from .linalg import rank

    gens = [1 << j for j in range(n)]
    one = H.unit
    B = [[Fraction(0)] * n for _ in range(n)]
    anticomm_ok = True
    for i in range(n):
        for j in range(n):
            s = H.mul({gens[i]: 1}, {gens[j]: 1})
            t = H.mul({gens[j]: 1}, {gens[i]: 1})
            tot = dict(s)
            for k, v in t.items():
                tot[k] = tot.get(k, 0) + v
            tot = {k: v for k, v in tot.items() if not is_zero(v)}
            if set(tot) - {one}:
                anticomm_ok = False
            B[i][j] = Fraction(tot.get(one, 0)) / 2
    C = clifford_build(B)
    images = []
    for S in C.subsets:
        cur = {one: Fraction(1)}
        for i in S:
            cur = H.mul(cur, {gens[i]: 1})
        images.append(cur)
    bijective = rank([[images[j].get(k, 0) for j in range(C.dim)] for k in range(H.dim)]) == C.dim
    mult_ok = True
    for I in range(C.dim):
        for J in range(C.dim):
            lhs = {}
            for K, c in C.table.get((I, J), {}).items():
                for k, v in images[K].items():
                    lhs[k] = lhs.get(k, 0) + c * v
            rhs = H.mul(images[I], images[J])
            keys = set(lhs) | set(rhs)
            if any(not is_zero(lhs.get(k, 0) - rhs.get(k, 0)) for k in keys):
                mult_ok = False
    from .linalg import det
    return {"form": [[str(x) for x in row] for row in B], "anticommutators_scalar": anticomm_ok,
            "bijective": bijective, "multiplicative": mult_ok,
            "nondegenerate": not is_zero(det(B)),
            "passed": anticomm_ok and bijective and mult_ok}


def _sign_rescalings(P, target, v_names, ring):
    """All s in {+-1}^n with P(s_1 v_1, ..., s_n v_n) = target."""
    return [s for s in product((1, -1), repeat=len(v_names))
            if (P.substitute(_signed(ring, v_names, s)) - target).is_zero()]


def type_check_and_disk_potential(n, a, model=None, r_max=1, arity=4):
    """Type-A^n_a conditions at the truncation plus the disk potential against W^n_a."""
    from .ainfinity.wbc import cc_nonpositive_certificate, disk_potential_suite
    from .superpotential import shift

    model = model or minimal_model(n, a, r_max, arity)
    A = model.algebra
    mu0 = not A.mu.tables.get(0)
    mu1 = not A.mu.tables.get(1)
    order0 = order_zero_product(model)
    names = ["v%d" % (j + 1) for j in range(n)]
    cert = cc_nonpositive_certificate(n, a, r_max)
    rep = disk_potential_suite(A, [1 << j for j in range(n)], names, cert)
    ring = rep.ring
    vs = [ring.var(x) for x in names]
    rs = [ring.var("r%d" % (j + 1)) for j in range(n)]
    prod_v = ring.one()
    for x in vs:
        prod_v = prod_v * x
    Zt = -prod_v + sum((r * x ** a for r, x in zip(rs, vs)), ring.zero())
    support = sorted(m.format() for m in _monomials(rep.potential))
    expected = sorted(m.format() for m in _monomials(Zt))
    signs = _sign_rescalings(rep.potential, Zt, names, ring)
    # r -> 1 plus the constant shift against W^n_a(v) = -v_1..v_n + sum v_j^a + w
    w = shift(n, a)
    at_one = {x: 1 for x in ring.names if x.startswith("r")}
    W_target = Zt.substitute(at_one) + ring.const(w)
    w_match = bool(signs) and all(
        (rep.potential.substitute(_signed(ring, names, s)).substitute(at_one) + ring.const(w)
         - W_target).is_zero() for s in signs)
    coeffs = {"v1..vn": str(rep.potential.coefficient(_exp(ring, names, [1] * n, []))),
              "r_j v_j^a": [str(rep.potential.coefficient(_exp(ring, names, _unit_vec(n, j, a),
                                                               [j]))) for j in range(n)]}
    report = {
        "n": n, "a": a, "bounds": {"r": model.r_max, "arity": model.arity},
        "mu0_zero": mu0, "mu1_zero": mu1, "order0_exterior": order0["exterior"],
        "first_order_class": [str(c) for c in first_order_class(model)],
        "disk_potential": rep.as_dict(), "support": support, "expected_support": expected,
        "support_matches": support == expected, "realized_coefficients": coeffs,
        "sign_rescalings": [list(s) for s in signs], "matches_W_after_r1": w_match,
    }
    report["passed"] = (mu0 and mu1 and order0["exterior"] and rep.passed
                        and support == expected and bool(signs) and w_match)
    return report, rep


def _monomials(p):
    ring = p.ring
    return [Polynomial(ring, {e: Fraction(1)}) for e in p.terms]


def _signed(ring, names, s):
    return {x: ring.var(x) * si for x, si in zip(names, s)}


def _unit_vec(n, j, a):
    return [a if i == j else 0 for i in range(n)]


def _exp(ring, v_names, v_exp, r_ones):
    e = [0] * ring.nvars
    for x, k in zip(v_names, v_exp):
        e[ring.names.index(x)] = k
    for j in r_ones:
        e[ring.names.index("r%d" % (j + 1))] = 1
    return tuple(e)


def clifford_hessian_check(n, a, potential, ring, signs):
    """At each small critical point: Hessian of P'(r=1) nondegenerate and Cl(-Hess/2) ~ Cl_n."""
    from .clifford import clifford_build, graded_invariants
    from .linalg import det
    from .superpotential import critical_points, point_field

    K = point_field(n, a)[0]
    names = ["v%d" % (j + 1) for j in range(n)]
    at_one = {x: 1 for x in ring.names if x.startswith("r")}
    P1 = potential.substitute(at_one)
    second = [[P1.diff(x).diff(y) for y in names] for x in names]
    ref = graded_invariants(clifford_build([[Fraction(int(i == j)) for j in range(n)]
                                            for i in range(n)]))
    results = []
    for p in critical_points(n, a)[1:]:
        v = [s * c for s, c in zip(signs, p.coords)]
        full = [K.one if x.startswith("r") else v[names.index(x)] for x in ring.names]
        H = [[K(q.evaluate(full)) for q in row] for row in second]
        d = det(H)
        C = clifford_build([[-H[i][j] / 2 for j in range(n)] for i in range(n)], K)
        inv = graded_invariants(C)
        results.append({"point": list(p.exponents), "det": str(d), "nondegenerate": not is_zero(d),
                        "clifford_invariants_match": inv == ref})
    return {"points": len(results),
            "all_nondegenerate": all(r["nondegenerate"] for r in results),
            "all_clifford_match": all(r["clifford_invariants_match"] for r in results),
            "details": results[:4]}
