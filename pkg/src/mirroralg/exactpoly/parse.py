"""Text grammar for polynomials, e.g. ``-u1*u2*u3*u4 + r1*u1^3``.

Scalars may be rationals ``p/q``; inside a number field the generator names
(``z`` for the root of unity, ``s`` for the radical) are also scalars.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .field import QQ
from .poly import PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse polynomial near %r" % text[pos:pos + 10])
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def variable_names(text, field=QQ):
    """Names in ``text`` that are not field generators, in natural order."""
    gens = set(field.generators())
    names = {v for k, v in _tokenize(text) if k == "name" and v not in gens}

    def natural(x):
        m = re.match(r"([A-Za-z_]+)(\d*)$", x)
        return (m.group(1), int(m.group(2) or 0)) if m else (x, 0)
    return sorted(names, key=natural)


def parse_polynomial(text, ring=None, field=QQ):
    if ring is None:
        names = variable_names(text, field)
        ring = PolyRing(names, field)
    toks = _tokenize(text)
    if not toks:
        raise ValueError("empty polynomial text")
    p = _Parser(toks, ring)
    out = p.expr()
    if p.i != len(toks):
        raise ValueError("trailing input in polynomial: %r" % (toks[p.i:],))
    return out


class _Parser:
    def __init__(self, toks, ring):
        self.toks = toks
        self.i = 0
        self.ring = ring
        self.gens = ring.field.generators()

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        total = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self):
        val = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero scalars")
                val = val / rhs.constant_term()
        return val

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(Fraction(val))
        if kind == "name":
            if val in self.gens:
                return self.ring.const(self.gens[val])
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError("unexpected token %r" % (val,))
