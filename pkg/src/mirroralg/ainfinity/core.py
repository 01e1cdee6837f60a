"""Finite A-infinity algebras with sparse structure maps and Seidel-style signs.

Inputs are written a_s, ..., a_1 (left to right) and stored as tuples of basis
indices in that written order, so a_1 is ``T[-1]``. The reduced sign of a
basis element is sigma'(a) = sigma(a) + 1. A cochain of Z/2-degree sigma
sends (a_s, ..., a_1) to an element of parity sum sigma(a_i) + s + sigma.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product

from ..exactpoly.field import is_zero
from ..exactpoly.poly import Polynomial


def czero(x):
    if isinstance(x, Polynomial):
        return x.is_zero()
    return is_zero(x)


def add_into(target, key, value):
    if czero(value):
        return
    v = target.get(key)
    if v is None:
        target[key] = value
    else:
        v = v + value
        if czero(v):
            del target[key]
        else:
            target[key] = v


@dataclass
class Cochain:
    """Multilinear maps stored per arity: {s: {input tuple: {output index: coeff}}}."""

    tables: dict = field(default_factory=dict)
    sigma: int = 0

    def arities(self):
        return sorted(s for s, t in self.tables.items() if t)

    def entry(self, inputs):
        return self.tables.get(len(inputs), {}).get(tuple(inputs), {})

    def add_entry(self, inputs, out, coeff):
        tab = self.tables.setdefault(len(inputs), {})
        outs = tab.setdefault(tuple(inputs), {})
        add_into(outs, out, coeff)
        if not outs:
            del tab[tuple(inputs)]

    def is_zero(self):
        return not any(self.tables.values())

    def copy(self):
        return Cochain({s: {T: dict(o) for T, o in t.items()} for s, t in self.tables.items()},
                       self.sigma)

    def scaled(self, c):
        out = Cochain({}, self.sigma)
        for s, tab in self.tables.items():
            for T, outs in tab.items():
                for b, v in outs.items():
                    out.add_entry(T, b, c * v)
        return out

    def __add__(self, other):
        out = self.copy()
        for s, tab in other.tables.items():
            for T, outs in tab.items():
                for b, v in outs.items():
                    out.add_entry(T, b, v)
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def truncated(self, trunc):
        if trunc is None:
            return self
        out = Cochain({}, self.sigma)
        for s, tab in self.tables.items():
            for T, outs in tab.items():
                for b, v in outs.items():
                    out.add_entry(T, b, trunc(v))
        return out

    def restrict(self, max_arity):
        return Cochain({s: t for s, t in self.tables.items() if s <= max_arity}, self.sigma)

    def nonzero_entries(self):
        for s in sorted(self.tables):
            for T, outs in self.tables[s].items():
                for b, v in outs.items():
                    yield T, b, v


class AInfAlgebra:
    """A finite-rank Z/2-graded A-infinity algebra.

    ``parity`` gives sigma of each basis element; ``mu`` is a Cochain of
    sigma 0. ``trunc`` (optional) is applied to every coefficient produced by
    a composition, implementing truncation of the coefficient ring.
    """

    def __init__(self, labels, parity, mu, unit=None, trunc=None, max_arity=None,
                 degrees=None, name=""):
        self.labels = list(labels)
        self.parity = list(parity)
        self.mu = mu if isinstance(mu, Cochain) else Cochain(mu, 0)
        self.unit = unit
        self.trunc = trunc
        self.max_arity = max_arity
        self.degrees = degrees
        self.name = name
        if len(self.parity) != len(self.labels):
            raise ValueError("one parity per basis element")

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(label)

    def reduced(self, i):
        return (self.parity[i] + 1) % 2

    def maltese(self, inputs):
        return sum(self.reduced(i) for i in inputs) % 2

    def with_mu(self, mu, name=None):
        return AInfAlgebra(self.labels, self.parity, mu, self.unit, self.trunc, self.max_arity,
                           self.degrees, name or self.name)

    def evaluate(self, cochain, args):
        """cochain(args) with args given as {basis index: coeff} dicts (multilinear)."""
        out = {}
        tab = cochain.tables.get(len(args), {})
        if not tab:
            return out
        for combo in product(*[list(a.items()) for a in args]):
            T = tuple(b for b, _ in combo)
            outs = tab.get(T)
            if not outs:
                continue
            c = None
            for _, x in combo:
                c = x if c is None else c * x
            for b, v in outs.items():
                val = v if c is None else c * v
                add_into(out, b, self._t(val))
        return out

    def mu_eval(self, *args):
        return self.evaluate(self.mu, list(args))

    def _t(self, x):
        return self.trunc(x) if self.trunc else x

    def describe(self, vec):
        return " + ".join("(%s)*%s" % (v, self.labels[b]) for b, v in sorted(vec.items())) or "0"


def compose(A: AInfAlgebra, phi: Cochain, psi: Cochain, max_arity=None):
    """Gerstenhaber product phi o psi.

    (phi o psi)(a_s..a_1) = sum (-1)^{sigma'(psi) * maltese(a_i..a_1)}
        phi(a_s..a_{i+j+1}, psi(a_{i+j}..a_{i+1}), a_i..a_1).
    """
    max_arity = max_arity if max_arity is not None else A.max_arity
    by_out = defaultdict(list)
    for j, tab in psi.tables.items():
        for B, outs in tab.items():
            for b, c in outs.items():
                by_out[b].append((B, c))
    sig_psi = (psi.sigma + 1) % 2
    result = Cochain({}, (phi.sigma + psi.sigma + 1) % 2)
    tables = result.tables
    for m, tab in phi.tables.items():
        for U, outs in tab.items():
            for p in range(m):
                cands = by_out.get(U[p])
                if not cands:
                    continue
                right = U[p + 1:]
                neg = sig_psi and A.maltese(right)
                left = U[:p]
                for B, c in cands:
                    s = m - 1 + len(B)
                    if max_arity is not None and s > max_arity:
                        continue
                    T = left + B + right
                    dest = tables.setdefault(s, {}).setdefault(T, {})
                    for o, v in outs.items():
                        val = A._t(c * v)
                        add_into(dest, o, -val if neg else val)
    for s in list(tables):
        for T in [T for T, o in tables[s].items() if not o]:
            del tables[s][T]
    return result


def bracket(A, phi, psi, max_arity=None):
    """[phi, psi] = phi o psi - (-1)^{sigma'(phi) sigma'(psi)} psi o phi."""
    first = compose(A, phi, psi, max_arity)
    second = compose(A, psi, phi, max_arity)
    sign = ((phi.sigma + 1) * (psi.sigma + 1)) % 2
    return first + second if sign else first - second


def hochschild_differential(A, phi, max_arity=None):
    return bracket(A, A.mu, phi, max_arity)


@dataclass
class VerifyReport:
    passed: bool
    max_arity: int
    violations: list
    checked_arities: list

    def as_dict(self):
        return {"passed": self.passed, "max_arity": self.max_arity,
                "violations": self.violations[:20], "checked_arities": self.checked_arities}


def ainf_verify(A: AInfAlgebra, max_arity=None, label_fn=None):
    """mu o mu = 0 on every basis tuple up to ``max_arity`` (and the coefficient truncation)."""
    bound = max_arity if max_arity is not None else (A.max_arity or max(A.mu.arities() or [0]) + 1)
    mm = compose(A, A.mu, A.mu, bound)
    viol = []
    for T, b, v in mm.nonzero_entries():
        viol.append({"inputs": [A.labels[i] for i in T], "output": A.labels[b], "residual": str(v)})
    return VerifyReport(not viol, bound, viol, list(range(bound + 1)))


def from_associative(labels, parity, products, unit=None, name=""):
    """A-infinity algebra with only mu^2(a2, a1) = (-1)^{sigma(a1)} a2 a1.

    ``products`` maps (i, j) to {k: coeff} for the ordinary product b_i b_j.
    """
    mu = Cochain({}, 0)
    for (i, j), outs in products.items():
        sgn = -1 if parity[j] else 1
        for k, c in outs.items():
            mu.add_entry((i, j), k, sgn * c)
    return AInfAlgebra(labels, parity, mu, unit=unit, name=name)


def product_from_mu2(A, x, y):
    """Associative product x*y = (-1)^{sigma(y)} mu^2(x, y) on homogeneous basis elements."""
    out = A.evaluate(A.mu, [{x: 1}, {y: 1}])
    if A.parity[y]:
        out = {k: -v for k, v in out.items()}
    return out


def elementary(T, b, coeff, sigma):
    return Cochain({len(T): {tuple(T): {b: coeff}}}, sigma)


def cochain_sigma(A, T, b):
    """Z/2 degree of the elementary cochain T -> b."""
    return (A.parity[b] + sum(A.parity[i] for i in T) + len(T)) % 2


# ---------------------------------------------------------------- text format

def dump_table(A: AInfAlgebra, cochain=None):
    """Lines ``mu s | in: b1,...,bs | out: coeff*b``."""
    cochain = cochain or A.mu
    lines = []
    for T, b, v in cochain.nonzero_entries():
        coeff = v.format() if isinstance(v, Polynomial) else str(v)
        lines.append("mu %d | in: %s | out: (%s)*%s" % (
            len(T), ",".join(A.labels[i] for i in T), coeff, A.labels[b]))
    return "\n".join(sorted(lines, key=lambda l: (int(l.split()[1]), l)))


def load_table(text, labels, parity, ring=None):
    """Inverse of dump_table; coefficients are parsed in ``ring`` (or as rationals)."""
    from fractions import Fraction

    mu = Cochain({}, 0)
    idx = {l: i for i, l in enumerate(labels)}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        head, ins, outs = [x.strip() for x in line.split("|")]
        s = int(head.split()[1])
        names = [x for x in ins[len("in:"):].strip().split(",") if x]
        if len(names) != s:
            raise ValueError("arity mismatch in line %r" % line)
        body = outs[len("out:"):].strip()
        if body.startswith("("):
            # labels may contain '*', so split after the closing parenthesis
            coeff_text, _, target = body[1:].rpartition(")*")
        else:
            coeff_text, _, target = body.partition("*")
        coeff_text = coeff_text.strip()
        coeff = ring(coeff_text) if ring is not None else Fraction(coeff_text)
        mu.add_entry(tuple(idx[x] for x in names), idx[target.strip()], coeff)
    return AInfAlgebra(labels, parity, mu)
