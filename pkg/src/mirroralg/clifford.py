"""Clifford algebras, Hochschild cohomology by the bar complex, graded isomorphisms.

Basis elements of Cl(Q) are subsets of generators, stored as sorted tuples;
the empty tuple is the unit. Products come from e_i e_j + e_j e_i = 2 B_ij.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
import random

from .ainfinity.core import (Cochain, add_into, cochain_sigma, from_associative,
                             hochschild_differential)
from .exactpoly import QQ, cyclotomic_field
from .exactpoly.field import is_zero
from .linalg import sparse_rank


@dataclass
class QuadraticForm:
    B: list

    def __post_init__(self):
        n = len(self.B)
        if any(len(r) != n for r in self.B):
            raise ValueError("quadratic form matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.B[i][j] != self.B[j][i]:
                    raise ValueError("quadratic form matrix is not symmetric at (%d, %d)" % (i, j))

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)]
                    for i in range(n)])

    @property
    def rank(self):
        return len(self.B)

    def __call__(self, v):
        n = self.rank
        return sum((v[i] * self.B[i][j] * v[j] for i in range(n) for j in range(n)), Fraction(0))


@dataclass
class FiniteAlgebra:
    """Z/2-graded associative algebra with a designated unit basis element."""

    labels: list
    parity: list
    table: dict  # (i, j) -> {k: coeff}
    unit: int = 0
    field: object = QQ
    name: str = ""

    @property
    def dim(self):
        return len(self.labels)

    def mul(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table.get((i, j), {}).items():
                    add_into(out, k, a * b * c)
        return out

    def basis(self, i):
        return {i: self.field.one if hasattr(self.field, "one") else Fraction(1)}

    def check_associative(self):
        bad = []
        for i, j, k in product(range(self.dim), repeat=3):
            e = lambda t: {t: 1}
            if self.mul(self.mul(e(i), e(j)), e(k)) != self.mul(e(i), self.mul(e(j), e(k))):
                bad.append((self.labels[i], self.labels[j], self.labels[k]))
        return bad

    def check_unit(self):
        return all(self.mul({self.unit: 1}, {i: 1}) == {i: 1} == self.mul({i: 1}, {self.unit: 1})
                   for i in range(self.dim))

    def check_parity(self):
        return all((self.parity[i] + self.parity[j] - self.parity[k]) % 2 == 0
                   for (i, j), outs in self.table.items() for k in outs)

    def parity_dims(self):
        return (self.parity.count(0), self.parity.count(1))

    def graded_center(self):
        """Basis of {z homogeneous : z x = (-1)^{|z||x|} x z}, one block per parity."""
        out = {}
        for p in (0, 1):
            idx = [i for i in range(self.dim) if self.parity[i] == p]
            rows = []
            for x in range(self.dim):
                for k in range(self.dim):
                    row = []
                    for i in idx:
                        l = self.mul({i: 1}, {x: 1}).get(k, 0)
                        r = self.mul({x: 1}, {i: 1}).get(k, 0)
                        sgn = -1 if p and self.parity[x] else 1
                        row.append(Fraction(0) + l - sgn * r)
                    rows.append(row)
            from .linalg import nullspace
            out[p] = nullspace(rows, len(idx)) if idx else []
        return out

    def ungraded_center_dim(self):
        from .linalg import rank
        rows = []
        for x in range(self.dim):
            for k in range(self.dim):
                rows.append([Fraction(0) + self.mul({i: 1}, {x: 1}).get(k, 0)
                             - self.mul({x: 1}, {i: 1}).get(k, 0) for i in range(self.dim)])
        return self.dim - rank(rows)

    def to_ainf(self):
        return from_associative(self.labels, self.parity, self.table, unit=self.unit,
                                name=self.name)


class CliffordAlgebra(FiniteAlgebra):
    def __init__(self, form: QuadraticForm, field=QQ, name=None):
        self.form = form
        n = form.rank
        subsets = [c for k in range(n + 1) for c in combinations(range(n), k)]
        self.subsets = subsets
        self._index = {s: i for i, s in enumerate(subsets)}
        self._cache = {}
        table = {}
        for I in subsets:
            for J in subsets:
                prod = self.product_words(I, J)
                table[(self._index[I], self._index[J])] = {self._index[K]: c for K, c in prod.items()}
        super().__init__(
            labels=[self.label(s) for s in subsets],
            parity=[len(s) % 2 for s in subsets],
            table=table, unit=0, field=field,
            name=name or "Cl_%d" % n)

    @property
    def n(self):
        return self.form.rank

    @staticmethod
    def label(s):
        return "1" if not s else "*".join("e%d" % (i + 1) for i in s)

    def index(self, subset):
        return self._index[tuple(subset)]

    def _right_gen(self, I, i):
        """e_I * e_i as {subset: coeff}, by moving e_i left through e_I."""
        key = (I, i)
        if key in self._cache:
            return self._cache[key]
        B = self.form.B
        if not I:
            res = {(i,): Fraction(1)}
        else:
            last = I[-1]
            head = I[:-1]
            if last < i:
                res = {I + (i,): Fraction(1)}
            elif last == i:
                res = {} if is_zero(B[i][i]) else {head: B[i][i]}
            else:
                # e_last e_i = -e_i e_last + 2 B_{last,i}
                res = {}
                for K, c in self._right_gen(head, i).items():
                    for L, d in self._right_gen(K, last).items():
                        add_into(res, L, -c * d)
                if not is_zero(B[last][i]):
                    add_into(res, head, 2 * B[last][i])
        self._cache[key] = res
        return res

    def product_words(self, I, J):
        cur = {tuple(I): Fraction(1)}
        for j in J:
            nxt = {}
            for K, c in cur.items():
                for L, d in self._right_gen(K, j).items():
                    add_into(nxt, L, c * d)
            cur = nxt
        return cur

    def vector(self, v):
        return {self.index((i,)): Fraction(x) for i, x in enumerate(v) if x != 0}

    def check_square_rule(self, samples=100, seed=0):
        """v*v = Q(v)*1 for random rational v; returns the failures."""
        rng = random.Random(seed)
        bad = []
        for _ in range(samples):
            v = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(self.n)]
            sq = self.mul(self.vector(v), self.vector(v))
            q = self.form(v)
            expect = {} if q == 0 else {self.unit: q}
            if sq != expect:
                bad.append(v)
        return bad


def clifford_build(B, field=QQ):
    return CliffordAlgebra(B if isinstance(B, QuadraticForm) else QuadraticForm(B), field)


def exterior_algebra(n):
    return CliffordAlgebra(QuadraticForm.diagonal([0] * n), name="Lambda_%d" % n)


def split_algebra():
    """C + C with both idempotents even (the ungraded form of Cl_1)."""
    table = {(0, 0): {0: 1}, (1, 1): {1: 1}}
    return FiniteAlgebra(["e0", "e1"], [0, 0], table, unit=None, name="C+C")


def matrix_superalgebra(field=QQ):
    """End(C^{1|1}): E11, E22 even, E12, E21 odd; unit is E11 + E22 (not a basis element)."""
    labels = ["E11", "E22", "E12", "E21"]
    pos = {"E11": (0, 0), "E22": (1, 1), "E12": (0, 1), "E21": (1, 0)}
    inv = {v: k for k, v in pos.items()}
    table = {}
    for a in labels:
        for b in labels:
            (i, j), (k, l) = pos[a], pos[b]
            if j == k:
                table[(labels.index(a), labels.index(b))] = {labels.index(inv[(i, l)]): 1}
    return FiniteAlgebra(labels, [0, 0, 1, 1], table, unit=None, field=field, name="End(C^{1|1})")


# ------------------------------------------------------------------ Hochschild


@dataclass
class HHResult:
    name: str
    s_max: int
    dims: dict  # (s, t) -> dim HH^{s+t}(A)^s
    cochain_dims: dict
    ranks: dict

    def total(self, s):
        return self.dims.get((s, 0), 0) + self.dims.get((s, 1), 0)

    def as_dict(self):
        return {"algebra": self.name, "s_max": self.s_max,
                "HH": {"s=%d,t=%d" % k: v for k, v in sorted(self.dims.items())},
                "HH_by_length": {s: self.total(s) for s in range(self.s_max + 1)}}


def _normalized_tuples(reduced, s):
    return list(product(reduced, repeat=s))


def hh_bar_bruteforce(A: FiniteAlgebra, s_max=4, parities=(0, 1)):
    """Dimensions of the cohomology of the normalized bar cochain complex.

    Length-s cochains are maps from (A/k.1)^{s} to A; t is their internal
    parity (output parity minus input parity). The differential is
    delta = [mu, -] with the Seidel signs, so the result is sign-exact.
    """
    if A.unit is None:
        raise ValueError("a unit basis element must be designated")
    B = A.to_ainf()
    reduced = [i for i in range(A.dim) if i != A.unit]
    cochain_dims, ranks, dims = {}, {}, {}

    def blocks(s, t):
        cols = []
        for T in _normalized_tuples(reduced, s):
            pin = sum(A.parity[i] for i in T) % 2
            for b in range(A.dim):
                if (A.parity[b] - pin) % 2 == t:
                    cols.append((T, b))
        return cols

    for t in parities:
        for s in range(s_max + 2):
            cols = blocks(s, t)
            cochain_dims[(s, t)] = len(cols)
            if s == s_max + 1:
                continue
            rows_index = {}
            rows = []
            red = set(reduced)
            for T, b in cols:
                phi = Cochain({s: {T: {b: Fraction(1)}}}, cochain_sigma(B, T, b))
                d = hochschild_differential(B, phi)
                vec = {}
                for T2, b2, v in d.nonzero_entries():
                    if len(T2) != s + 1 or not set(T2) <= red:
                        continue
                    key = rows_index.setdefault((T2, b2), len(rows_index))
                    vec[key] = v
                rows.append(vec)
            ranks[(s, t)] = sparse_rank(rows)
        for s in range(s_max + 1):
            dims[(s, t)] = cochain_dims[(s, t)] - ranks[(s, t)] - (ranks[(s - 1, t)] if s else 0)
    return HHResult(A.name, s_max, dims, cochain_dims, ranks)


def delta_squared_zero(A: FiniteAlgebra, s, seed=0):
    """delta(delta(phi)) = 0 for a random normalized length-s cochain."""
    B = A.to_ainf()
    rng = random.Random(seed)
    phi = Cochain({}, None)
    reduced = [i for i in range(A.dim) if i != A.unit]
    sig = None
    for T in product(reduced, repeat=s):
        for b in range(A.dim):
            sg = cochain_sigma(B, T, b)
            if sig is None:
                sig = sg
            if sg == sig:
                phi.add_entry(T, b, Fraction(rng.randint(-3, 3)))
    phi.sigma = sig or 0
    return hochschild_differential(B, hochschild_differential(B, phi)).is_zero()


def hh_cl1_resolution():
    """The bimodule splitting of Cl_1 by 1 -> 1 (x) 1 + theta (x) theta.

    Elements of Cl_1 (x) Cl_1 are dicts {(i, j): c} with 0 = 1, 1 = theta.
    """
    A = clifford_build(QuadraticForm.diagonal([1]))
    one, th = 0, 1

    def f(i):
        # f(x) = x.f(1)
        out = {}
        for (p, q), c in {(one, one): 1, (th, th): 1}.items():
            for k, d in A.table[(i, p)].items():
                add_into(out, (k, q), c * d)
        return out

    def left(x, elt):
        out = {}
        for (p, q), c in elt.items():
            for k, d in A.table[(x, p)].items():
                add_into(out, (k, q), c * d)
        return out

    def right(elt, y):
        out = {}
        for (p, q), c in elt.items():
            for k, d in A.table[(q, y)].items():
                add_into(out, (p, k), c * d)
        return out

    # f(x 1 y) = x f(1) y for all basis x, y
    bimodule_ok = True
    for x in (one, th):
        for y in (one, th):
            prod = A.table[(x, y)]
            lhs = {}
            for k, c in prod.items():
                for key, v in f(k).items():
                    add_into(lhs, key, c * v)
            rhs = right(left(x, {(one, one): 1, (th, th): 1}), y)
            bimodule_ok = bimodule_ok and lhs == rhs

    def mult(elt):
        out = {}
        for (p, q), c in elt.items():
            for k, d in A.table[(p, q)].items():
                add_into(out, k, c * d)
        return out

    scale = mult(f(one)).get(one, 0)
    section = all(mult({k: v / scale for k, v in f(i).items()}) == {i: 1} for i in (one, th))
    brute = hh_bar_bruteforce(A, 4)
    return {
        "map": "1 -> 1(x)1 + theta(x)theta",
        "bimodule_map": bimodule_ok,
        "multiplication_of_image": {"1": str(scale)},
        "section_after_scaling": section,
        "section_scale": str(Fraction(1) / scale),
        "conclusion_HH_positive_length_zero": all(brute.total(s) == 0 for s in range(1, 5)),
        "ungraded_center_dim": A.ungraded_center_dim(),
        "graded_center_dims": {p: len(v) for p, v in A.graded_center().items()},
        "bruteforce": brute.as_dict(),
        "passed": bimodule_ok and section and all(brute.total(s) == 0 for s in range(1, 5)),
    }


# ---------------------------------------------------------------- isomorphisms


def _images_define_hom(A: FiniteAlgebra, Bm: FiniteAlgebra, images, gens_square, anti):
    """Check that generator images satisfy the Clifford relations in Bm."""
    for i, gi in enumerate(images):
        if Bm.mul(gi, gi) != gens_square[i]:
            return False
        for j in range(i):
            s = {}
            for k, v in Bm.mul(gi, images[j]).items():
                add_into(s, k, v)
            for k, v in Bm.mul(images[j], gi).items():
                add_into(s, k, v)
            if s != anti[(i, j)]:
                return False
    return True


def _span_rank(vectors, dim):
    from .linalg import rank
    rows = [[v.get(k, 0) * 1 for k in range(dim)] for v in vectors]
    return rank([[x if not isinstance(x, int) else Fraction(x) for x in r] for r in rows])


def cl2_matrix_witness():
    """Cl_2 with B = I maps onto End(C^{1|1}) over Q(i): gamma_1 = E12 + E21, gamma_2 = i(E21 - E12)...

    Both images are odd, square to 1 and anticommute; their products span
    all four matrix units, so the map is a graded isomorphism.
    """
    K = cyclotomic_field(4)
    i = K.gen("z")
    M = matrix_superalgebra(K)
    one = K.one
    E11, E22, E12, E21 = 0, 1, 2, 3
    g1 = {E12: one, E21: one}
    g2 = {E12: -i, E21: i}
    unit = {E11: one, E22: one}
    A = clifford_build(QuadraticForm.diagonal([1, 1]))
    squares = [unit, unit]
    anti = {(1, 0): {}}
    relations = _images_define_hom(A, M, [g1, g2], squares, anti)
    images = {(): unit, (0,): g1, (1,): g2, (0, 1): M.mul(g1, g2)}
    odd_to_odd = all(all(M.parity[k] == len(s) % 2 for k in v) for s, v in images.items())
    rows = [[v.get(k, K.zero) for k in range(4)] for v in images.values()]
    from .linalg import rank
    bijective = rank(rows) == 4
    # the full multiplication table is respected
    mult_ok = True
    for I in A.subsets:
        for J in A.subsets:
            lhs = {}
            for Kk, c in A.product_words(I, J).items():
                for k, v in images[Kk].items():
                    add_into(lhs, k, c * v)
            if lhs != M.mul(images[I], images[J]):
                mult_ok = False
    return {
        "source": "Cl_2(identity)", "target": "End(C^{1|1}) over Q(i)",
        "gamma_1": "E12 + E21", "gamma_2": "-i E12 + i E21",
        "relations": relations, "parity_preserving": odd_to_odd,
        "bijective": bijective, "multiplicative": mult_ok,
        "passed": relations and odd_to_odd and bijective and mult_ok,
    }


def graded_invariants(A: FiniteAlgebra):
    gc = A.graded_center()
    return {"dim": A.dim, "parity_dims": A.parity_dims(),
            "graded_center_dims": (len(gc[0]), len(gc[1]))}


def graded_iso_witness(A: FiniteAlgebra, B: FiniteAlgebra):
    """Identity witness for equal tables, a refutation by invariants, or the
    Clifford generator search for nondegenerate diagonal forms."""
    ia, ib = graded_invariants(A), graded_invariants(B)
    if ia != ib:
        reasons = [k for k in ia if ia[k] != ib[k]]
        return {"isomorphic": False, "refutation": reasons, "invariants": [ia, ib]}
    if A.labels == B.labels and A.parity == B.parity and A.table == B.table:
        return {"isomorphic": True, "witness": "identity"}
    if isinstance(A, CliffordAlgebra) and isinstance(B, CliffordAlgebra):
        w = clifford_witness(A, B)
        if w is not None:
            return {"isomorphic": True, "witness": w}
    return {"isomorphic": None, "invariants": [ia, ib]}


def clifford_witness(A: CliffordAlgebra, B: CliffordAlgebra, coeff_range=(-2, -1, 0, 1, 2)):
    """Search odd generator images in span(e_j) of B with the same Gram matrix as A.

    Images are limited to linear combinations of B's generators with small
    integer coefficients; they define a graded isomorphism when their Gram
    matrix matches A's form.
    """
    n = A.n
    if B.n != n:
        return None
    cands = [c for c in product(coeff_range, repeat=n) if any(c)]

    def bil(u, v):
        return sum((Fraction(u[i]) * B.form.B[i][j] * v[j] for i in range(n) for j in range(n)),
                   Fraction(0))

    chosen = []

    def search(k):
        if k == n:
            return True
        for c in cands:
            if bil(c, c) != A.form.B[k][k]:
                continue
            if any(bil(c, chosen[j]) != A.form.B[k][j] for j in range(k)):
                continue
            chosen.append(c)
            if search(k + 1):
                return True
            chosen.pop()
        return False

    if not search(0):
        return None
    from .linalg import det
    M = [[Fraction(x) for x in c] for c in chosen]
    if det(M) == 0:
        return None
    return {"generator_images": [B.vector(c) and {B.labels[k]: str(v) for k, v in B.vector(c).items()}
                                 for c in chosen]}
