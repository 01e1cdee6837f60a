"""Sparse multivariate polynomials with exact coefficients, and monomial orders."""
from __future__ import annotations

from .field import QQ, NFElement, is_zero


class PolyRing:
    """Polynomial ring over an exact field with named variables."""

    def __init__(self, names, field=QQ):
        self.names = tuple(names)
        self.field = field
        self.nvars = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}
        if len(self._index) != self.nvars:
            raise ValueError("duplicate variable names")

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r" % name) from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        if is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(x) for x in self.names]

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        c = self.field(coeff)
        if is_zero(c):
            return self.zero()
        return Polynomial(self, {exps: c})

    def __call__(self, x):
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return x.to_ring(self)
        if isinstance(x, str):
            from .parse import parse_polynomial
            return parse_polynomial(x, self)
        return self.const(x)

    def with_field(self, field):
        return PolyRing(self.names, field)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return "%r[%s]" % (self.field, ",".join(self.names))


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # construction helpers
    def _new(self, terms):
        return Polynomial(self.ring, terms)

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings: %r vs %r"
                                 % (self.ring, other.ring))
            return other
        return self.ring.const(other)

    # arithmetic
    def __add__(self, other):
        o = self._lift(other)
        if not o.terms:
            return self
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if is_zero(v):
                    del out[e]
                else:
                    out[e] = v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if is_zero(c):
                return self.ring.zero()
            return self._new({e: v * c for e, v in self.terms.items()})
        o = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._new({e: c for e, c in out.items() if not is_zero(c)})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ValueError("only division by nonzero constants is supported")
            other = other.constant_term()
        c = self.ring.field(other)
        return self * (self.ring.field.one / c)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, exps, coeff):
        return self._new({_add_exps(e, exps): c * coeff for e, c in self.terms.items()})

    # predicates / access
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names):
        idx = [self.ring.index(x) for x in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return [self.ring.names[i] for i in sorted(used)]

    # calculus and substitution
    def diff(self, name):
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return self._new(out)

    def evaluate(self, values):
        """Evaluate at a full assignment {name: scalar} (or a sequence in variable order)."""
        if not isinstance(values, dict):
            values = dict(zip(self.ring.names, values))
        vals = [values[x] for x in self.ring.names]
        total = self.ring.field.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * (v ** k)
            total = total + t
        return total

    def substitute(self, mapping):
        """Substitute polynomials or scalars for some variables."""
        subs = {}
        for name, val in mapping.items():
            subs[self.ring.index(name)] = val if isinstance(val, Polynomial) else self.ring.const(val)
        out = self.ring.zero()
        cache = {}
        for e, c in self.terms.items():
            rest = list(e)
            term = None
            for i, p in subs.items():
                k = e[i]
                rest[i] = 0
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = p ** k
                    term = cache[key] if term is None else term * cache[key]
            mono = self.ring.monomial(rest, c)
            out = out + (mono if term is None else mono * term)
        return out

    def map_coeffs(self, fn, ring=None):
        ring = ring or self.ring
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not is_zero(v):
                out[e] = v
        return Polynomial(ring, out)

    def to_ring(self, ring):
        """Move into a ring with a superset of variables and a compatible field."""
        pos = [ring.index(x) for x in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.nvars
            for i, k in zip(pos, e):
                f[i] = k
            out[tuple(f)] = ring.field(c)
        return Polynomial(ring, out)

    # ordering
    def leading(self, order):
        """(exps, coeff) of the largest term under ``order``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self, order):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order):
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self * (self.ring.field.one / c)

    # text
    def format(self, order=None):
        if not self.terms:
            return "0"
        items = self.sorted_terms(order) if order else sorted(
            self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))
        parts = []
        for e, c in items:
            mono = "*".join(
                (n if k == 1 else "%s^%d" % (n, k)) for n, k in zip(self.ring.names, e) if k)
            cs = _fmt_coeff(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (cs, mono))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "Polynomial(%s)" % self.format()


def _fmt_coeff(c):
    if isinstance(c, NFElement):
        q = c.rational()
        if q is not None:
            return str(q)
        return "(%s)" % c
    return str(c)


class MonomialOrder:
    """A block monomial order.

    ``blocks`` is a list of (kind, variable names) with kind in {"lex", "grlex"};
    earlier blocks dominate. Variables listed first inside a block are largest.
    """

    def __init__(self, ring, blocks, label=None):
        self.ring = ring
        seen = []
        self.blocks = []
        for kind, names in blocks:
            if kind not in ("lex", "grlex"):
                raise ValueError("unknown block kind %r" % kind)
            idx = tuple(ring.index(x) for x in names)
            seen.extend(idx)
            self.blocks.append((kind, idx))
        if len(set(seen)) != len(seen):
            raise ValueError("a variable appears in two blocks")
        rest = tuple(i for i in range(ring.nvars) if i not in set(seen))
        if rest:
            self.blocks.append(("grlex", rest))
        self.label = label or self._describe()
        self._cache = {}

    def _describe(self):
        parts = []
        for kind, idx in self.blocks:
            parts.append("%s:%s" % (kind, ">".join(self.ring.names[i] for i in idx)))
        return "|".join(parts)

    def key(self, e):
        k = self._cache.get(e)
        if k is None:
            out = []
            for kind, idx in self.blocks:
                if kind == "grlex":
                    out.append(sum(e[i] for i in idx))
                out.extend(e[i] for i in idx)
            k = tuple(out)
            if len(self._cache) < 200000:
                self._cache[e] = k
        return k

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.ring == other.ring and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.ring, tuple(self.blocks)))

    def __repr__(self):
        return "MonomialOrder(%s)" % self.label


def lex(ring, priority=None):
    return MonomialOrder(ring, [("lex", priority or ring.names)])


def grlex(ring, priority=None):
    return MonomialOrder(ring, [("grlex", priority or ring.names)])


def block_elimination(ring, eliminated, rest):
    """Eliminated block first, graded-lex inside each block."""
    return MonomialOrder(ring, [("grlex", eliminated), ("grlex", rest)])


def parse_order(ring, text):
    """Parse ``lex:u1>u2>...`` or ``grlex:...``; blocks separated by ``|``."""
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if ":" not in chunk:
            raise ValueError("order must look like kind:x1>x2>..., got %r" % chunk)
        kind, names = chunk.split(":", 1)
        blocks.append((kind.strip(), [x.strip() for x in names.split(">") if x.strip()]))
    return MonomialOrder(ring, blocks)


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))

