"""Grading data G^n_a and the degree bookkeeping behind the vanishing arguments.

Y = (Z + Z^n) / <(2(a-n), 1,...,1)>, with sign map sigma(t, c) = t mod 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class GradingDatum:
    n: int
    a: int

    def __post_init__(self):
        if self.n < 3 or not (1 <= self.a <= self.n - 1):
            raise ValueError("grading datum needs n >= 3 and 1 <= a <= n-1")

    @property
    def relation(self):
        return Degree(2 * (self.a - self.n), (1,) * self.n)

    def degree(self, t, c):
        return normalize_degree(Degree(t, tuple(c)), self)

    def zero(self):
        return Degree(0, (0,) * self.n)

    def y(self, j):
        """Degree of the generator y_j (1-based)."""
        c = [0] * self.n
        c[j - 1] = 1
        return Degree(0, tuple(c))

    def __str__(self):
        return "G^%d_%d" % (self.n, self.a)


@dataclass(frozen=True)
class Degree:
    t: int
    c: tuple

    def __add__(self, other):
        if len(other.c) != len(self.c):
            raise ValueError("degree length mismatch")
        return Degree(self.t + other.t, tuple(x + y for x, y in zip(self.c, other.c)))

    def __neg__(self):
        return Degree(-self.t, tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return Degree(k * self.t, tuple(k * x for x in self.c))

    @property
    def sign(self):
        return self.t % 2

    def __str__(self):
        return "(%d; %s)" % (self.t, ",".join(str(x) for x in self.c))

    @classmethod
    def parse(cls, text):
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")) or ";" not in body:
            raise ValueError("degree must look like (t; c1,...,cn): %r" % text)
        t, c = body[1:-1].split(";", 1)
        return cls(int(t), tuple(int(x) for x in c.split(",") if x.strip()))


def normalize_degree(d: Degree, G: GradingDatum) -> Degree:
    """Canonical representative: shift by the relation until min_j c_j = 0."""
    if len(d.c) != G.n:
        raise ValueError("degree has %d coefficients, datum has n=%d" % (len(d.c), G.n))
    k = min(d.c)
    return d - G.relation.scale(k)


def sigma(d: Degree) -> int:
    return d.t % 2


def degrees_equal(d1, d2, G):
    return normalize_degree(d1, G) == normalize_degree(d2, G)


def u_degree(G, j):
    return Degree(-1, G.y(j).c)


def r_degree(G, j, weight=None):
    """deg(r_j) = (2 - 2w, w y_j) with w the r-weight (defaults to G.a)."""
    w = G.a if weight is None else weight
    c = [0] * G.n
    c[j - 1] = w
    return Degree(2 - 2 * w, tuple(c))


def monomial_degree(c, b, K, G: GradingDatum, r_weight=None) -> Degree:
    """Degree of r^c u^b theta^K; theta_j carries the same degree as u_j."""
    n = G.n
    if len(c) != n or len(b) != n:
        raise ValueError("exponent vectors must have length n=%d" % n)
    K = tuple(K)
    if any(k < 1 or k > n for k in K):
        raise ValueError("generator subset must lie in 1..n")
    total = G.zero()
    for j in range(1, n + 1):
        if c[j - 1]:
            total = total + r_degree(G, j, r_weight).scale(c[j - 1])
        if b[j - 1]:
            total = total + u_degree(G, j).scale(b[j - 1])
    for k in K:
        total = total + u_degree(G, k)
    return normalize_degree(total, G)


@dataclass(frozen=True)
class GradingMorphism:
    source: GradingDatum
    target: GradingDatum
    images: tuple  # Degree in target for each y_j of the source

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise ValueError("need one image per source generator")

    def apply(self, d: Degree) -> Degree:
        out = Degree(d.t, (0,) * self.target.n)
        for k, img in zip(d.c, self.images):
            out = out + img.scale(k)
        return normalize_degree(out, self.target)

    def respects_relation(self):
        img = self.apply(self.source.relation)
        return img == self.target.zero()


def p_morphism(n, a):
    """G^n_a -> G^n_1 with y_j -> (2 - 2a, a y_j)."""
    src, tgt = GradingDatum(n, a), GradingDatum(n, 1)
    return GradingMorphism(src, tgt, tuple(r_degree(tgt, j, a) for j in range(1, n + 1)))


@dataclass(frozen=True)
class Support:
    """A degree-admissible cochain support.

    Polyvector kind: r^c u^b theta^K0 (K1 empty), length s = |b|.
    Map kind: theta^K1 -> r^c theta^K0, length s = 1.
    """

    kind: str
    K0: tuple
    K1: tuple
    b: tuple
    c: tuple
    q: int
    j: int
    s: int
    t: int

    def describe(self):
        def mono(prefix, exps):
            return "*".join("%s%d^%d" % (prefix, i + 1, e) if e > 1 else "%s%d" % (prefix, i + 1)
                            for i, e in enumerate(exps) if e)
        theta = lambda K: "theta^{%s}" % ",".join(map(str, K)) if K else "1"
        coeff = mono("r", self.c) or "1"
        if self.kind == "polyvector":
            parts = [x for x in (mono("r", self.c), mono("u", self.b)) if x]
            return "*".join(parts + ([theta(self.K0)] if self.K0 else [])) or "1"
        target = theta(self.K0) if coeff == "1" else (
            coeff if not self.K0 else "%s*%s" % (coeff, theta(self.K0)))
        return "%s -> %s" % (theta(self.K1), target)


def _default_bounds(n, bounds):
    b = {"q": 2 * n, "j": 2 * n, "length": 2 * n}
    if bounds:
        b.update(bounds)
    return b


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_cochain_supports(G: GradingDatum, target_t: int, kind="polyvector", j=None,
                               truncated=False, bounds=None):
    """All integer solutions of the Z- and Y-degree equations within bounds.

    kind="polyvector": r^c u^b theta^K of total Hochschild degree s + t = target_t,
        with Y-equation y_K + a c = q y_[n] + b and t = (n-2) q + (2-a) j.
        ``truncated`` keeps only t <= 0.
    kind="map": length-one cochains theta^K1 -> r^c theta^K0 of Z-degree t = target_t,
        with a c + y_K0 = y_K1 + q y_[n] and t = (n-2) q + (2-a) j.
    ``j`` restricts the r-degree: an int, or a (lo, hi) pair.
    """
    n, a = G.n, G.a
    B = _default_bounds(n, bounds)
    if j is None:
        jr = range(0, B["j"] + 1)
    elif isinstance(j, int):
        jr = range(j, j + 1)
    else:
        jr = range(j[0], min(j[1], B["j"]) + 1)
    out = []
    for jj in jr:
        for q in range(-B["q"], B["q"] + 1):
            t_val = (n - 2) * q + (2 - a) * jj
            if kind == "map":
                if t_val != target_t:
                    continue
                out.extend(_map_supports(n, a, q, jj, t_val))
            elif kind == "polyvector":
                size = target_t - 2 * jj + 2 * q
                if not 0 <= size <= n:
                    continue
                for sup in _polyvector_supports(n, a, q, jj, size):
                    s = sum(sup[1])
                    t = target_t - s
                    if s > B["length"] or (truncated and t > 0):
                        continue
                    assert t == t_val
                    out.append(Support("polyvector", sup[0], (), sup[1], sup[2], q, jj, s, t))
            else:
                raise ValueError("kind must be 'polyvector' or 'map'")
    out.sort(key=lambda s: (s.j, s.q, s.K0, s.K1, tuple(-x for x in s.c), s.b))
    return out


def _polyvector_supports(n, a, q, j, size):
    for K in combinations(range(1, n + 1), size):
        inK = [1 if k + 1 in K else 0 for k in range(n)]
        for c in _compositions(j, n):
            b = tuple(inK[k] + a * c[k] - q for k in range(n))
            if min(b) >= 0:
                yield K, b, c


def _map_supports(n, a, q, j, t):
    out = []
    # per coordinate: a c_k + [k in K0] - [k in K1] = q
    options = []
    for _ in range(n):
        opts = []
        for in0 in (0, 1):
            for in1 in (0, 1):
                rem = q - in0 + in1
                if rem >= 0 and rem % a == 0:
                    opts.append((in0, in1, rem // a))
        options.append(opts)

    def rec(k, acc, csum):
        if csum > j:
            return
        if k == n:
            if csum == j:
                K0 = tuple(i + 1 for i, o in enumerate(acc) if o[0])
                K1 = tuple(i + 1 for i, o in enumerate(acc) if o[1])
                c = tuple(o[2] for o in acc)
                out.append(Support("map", K0, K1, (0,) * n, c, q, j, 1, t))
            return
        for o in options[k]:
            rec(k + 1, acc + [o], csum + o[2])

    rec(0, [], 0)
    return out


def mu1_vanishing_certificate(G: GradingDatum, bounds=None):
    """Length-one degree-one cochains can only be supported on theta^[n] -> 1."""
    sups = enumerate_cochain_supports(G, 1, kind="map", bounds=bounds)
    full = tuple(range(1, G.n + 1))
    bad = [s for s in sups if s.K1 != full or s.K0 != ()]
    return {"datum": str(G), "supports": [s.describe() for s in sups],
            "violations": [s.describe() for s in bad], "holds": not bad,
            "bounds": _default_bounds(G.n, bounds)}


def thh2_vanishing_certificate(G: GradingDatum, bounds=None):
    """Truncated degree-two polyvectors with r-degree >= 2 do not exist."""
    B = _default_bounds(G.n, bounds)
    sups = enumerate_cochain_supports(G, 2, kind="polyvector", j=(2, B["j"]), truncated=True,
                                      bounds=bounds)
    return {"datum": str(G), "supports": [s.describe() for s in sups], "holds": not sups,
            "bounds": B}


def first_order_supports(G: GradingDatum, bounds=None):
    """Truncated degree-two polyvectors of r-degree one."""
    return enumerate_cochain_supports(G, 2, kind="polyvector", j=1, truncated=True, bounds=bounds)
