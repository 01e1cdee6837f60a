"""Exact scalar fields: the rationals and flattened number fields.

A number field is stored as Q[t]/(m(t)) for a single monic irreducible m.
Towers such as Q(zeta_M, c^(1/e)) are flattened once at construction time,
after which all arithmetic is plain polynomial arithmetic mod m.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _pdivmod(a, b):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = _trim(a)
    return _trim(q), a


class RationalField:
    """The field Q, with Fraction elements."""

    name = "QQ"
    degree = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.replace(" ", ""))
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def generators(self):
        return {}

    def format(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class NumberField:
    """Q[t]/(m(t)) with m monic irreducible over Q.

    ``named`` maps generator names (e.g. ``z`` for a root of unity, ``s``
    for a radical) to coefficient lists expressing them in t.
    """

    def __init__(self, minpoly, named=None, name=None, root_order=None, radical=None):
        m = [Fraction(c) for c in minpoly]
        if not m or m[-1] == 0:
            raise ValueError("defining polynomial must be nonzero")
        lead = m[-1]
        self.modulus = tuple(c / lead for c in m)
        self.degree = len(m) - 1
        if self.degree < 1:
            raise ValueError("defining polynomial must have positive degree")
        self.name = name or "Q[t]/(%s)" % _fmt_poly(self.modulus, "t")
        self.root_order = root_order
        self.radical = radical
        self._named = {}
        for key, coeffs in (named or {"t": [0, 1]}).items():
            self._named[key] = self.element(coeffs)

    def element(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            _, c = _pdivmod(c, list(self.modulus))
        c = list(c) + [Fraction(0)] * (self.degree - len(c))
        return NFElement(self, tuple(c))

    def __call__(self, x):
        if isinstance(x, NFElement):
            if x.field is not self and x.field != self:
                raise ValueError("element of a different field")
            return x
        if isinstance(x, str):
            return self.element([Fraction(x.replace(" ", ""))])
        return self.element([Fraction(x)])

    @property
    def zero(self):
        return self.element([])

    @property
    def one(self):
        return self.element([1])

    def generators(self):
        return dict(self._named)

    def gen(self, key):
        return self._named[key]

    def format(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return self.name


class NFElement:
    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, NFElement):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return NFElement(self.field, tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NFElement(self.field, tuple(x - y for x, y in zip(self.c, o.c)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return NFElement(self.field, tuple(-x for x in self.c))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, NFElement):
            k = Fraction(other)
            return NFElement(self.field, tuple(x * k for x in self.c))
        d = self.field.degree
        m = self.field.modulus
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j, y in enumerate(other.c):
                if y:
                    prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            top = prod[k]
            if top:
                for i in range(d):
                    prod[k - d + i] -= top * m[i]
        return NFElement(self.field, tuple(prod[:d]))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid in Q[t]
        r0, r1 = list(self.field.modulus), _trim(self.c)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        inv = [x / r1[0] for x in s1]
        return self.field.element(inv)

    def __truediv__(self, other):
        if not isinstance(other, NFElement):
            k = Fraction(other)
            return NFElement(self.field, tuple(x / k for x in self.c))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.c == other.c
        try:
            o = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c[0] == o and not any(self.c[1:])

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def rational(self):
        """The element as a Fraction, or None when it is not rational."""
        if any(self.c[1:]):
            return None
        return self.c[0]

    def __str__(self):
        return _fmt_poly(self.c, "t")

    __repr__ = __str__


def _fmt_poly(c, var):
    parts = []
    for i, x in enumerate(c):
        if x == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
        if mono:
            coef = "" if x == 1 else ("-" if x == -1 else "%s*" % x)
            parts.append(coef + mono)
        else:
            parts.append(str(x))
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def is_zero(x):
    if isinstance(x, NFElement):
        return x.is_zero()
    return x == 0


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, r = _pdivmod(num, [Fraction(x) for x in cyclotomic_poly(d)])
            assert not r
    return tuple(int(x) for x in num)


def cyclotomic_field(n):
    """Q(zeta_n) with generator ``z`` a primitive n-th root of unity."""
    if n <= 2:
        return QQ
    return NumberField(cyclotomic_poly(n), named={"z": [0, 1]}, name="Q(zeta_%d)" % n,
                       root_order=n)


def _perfect_root(c, e):
    """Integer r with r**e == c, else None (c a positive integer)."""
    r = round(c ** (1.0 / e))
    for cand in (r - 1, r, r + 1):
        if cand > 0 and cand ** e == c:
            return cand
    return None


def radical_cyclotomic_field(order, e, c):
    """The field Q(zeta_order, c^(1/e)) flattened to a single defining polynomial.

    Returns ``(K, z, s)`` where z is a primitive ``order``-th root of unity and
    s is the positive real e-th root of the positive integer c. The flattening
    uses sympy's primitive element routine once; arithmetic afterwards is
    native.
    """
    c = int(c)
    root = _perfect_root(c, e)
    if root is not None:
        K = cyclotomic_field(order)
        z = K.gen("z") if K is not QQ else (Fraction(-1) if order == 2 else Fraction(1))
        return K, z, K(root)
    import sympy

    x = sympy.Symbol("x")
    zeta = sympy.exp(2 * sympy.pi * sympy.I / order)
    rad = sympy.root(sympy.Integer(c), e)
    gens = [rad] if order <= 2 else [zeta, rad]
    minpoly, _coeffs, reps = sympy.primitive_element(gens, x, ex=True)
    mp = sympy.Poly(minpoly, x).all_coeffs()[::-1]
    named = {}
    if order <= 2:
        named["s"] = [Fraction(str(q)) for q in reps[0][::-1]]
    else:
        named["z"] = [Fraction(str(q)) for q in reps[0][::-1]]
        named["s"] = [Fraction(str(q)) for q in reps[1][::-1]]
    K = NumberField([Fraction(str(q)) for q in mp], named=named,
                    name="Q(zeta_%d, %d^(1/%d))" % (order, c, e), root_order=order,
                    radical=(e, c))
    s = K.gen("s")
    if order <= 2:
        z = K(-1) if order == 2 else K.one
    else:
        z = K.gen("z")
        if z ** order != K.one or any(z ** (order // p) == K.one for p in _primes(order)):
            raise ArithmeticError("flattened root of unity has the wrong order")
    if s ** e != K(c):
        raise ArithmeticError("flattened radical does not satisfy its equation")
    return K, z, s


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def lcm(a, b):
    return a * b // gcd(a, b)
