"""Exact rational linear algebra on sparse vectors.

Vectors are plain ``dict[int, Fraction]`` holding only nonzero entries.
Every routine here is exact; there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import Iterable, Mapping, Sequence

Vector = dict  # dict[int, Fraction], zero entries never stored

ZERO = Fraction(0)
ONE = Fraction(1)


class NotCommuting(ValueError):
    def __init__(self, witness):
        super().__init__(f"operators {witness[0]} and {witness[1]} do not commute")
        self.witness = witness


class NotSplitRational(ValueError):
    """Joint eigendecomposition over Q is impossible.

    ``reason`` is one of ``"irrational"`` (a characteristic polynomial keeps a
    factor without rational roots), ``"not_diagonalizable"`` (an eigenvalue's
    geometric multiplicity is short of its algebraic one) or ``"degenerate"``
    (a joint eigenspace stays more than 1-dimensional).
    """

    def __init__(self, reason: str, witness):
        super().__init__(f"{reason}: {witness}")
        self.reason = reason
        self.witness = witness


# -- scalars ---------------------------------------------------------------

def frac(x) -> Fraction:
    """Parse ints, Fractions and strings like ``"3/4"`` or ``"-2"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact scalar: {x!r}")


def fmt(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- sparse vectors --------------------------------------------------------

def vec(entries: Iterable) -> Vector:
    """Sparse vector from a dense sequence, dropping zeros."""
    return {i: frac(c) for i, c in enumerate(entries) if c}


def unit(i: int) -> Vector:
    return {i: ONE}


def dense(v: Mapping[int, Fraction], n: int) -> list[Fraction]:
    return [v.get(i, ZERO) for i in range(n)]


def axpy(acc: Vector, v: Mapping[int, Fraction], c=ONE) -> Vector:
    """acc += c * v, in place; returns acc."""
    if not c:
        return acc
    for i, x in v.items():
        y = acc.get(i, ZERO) + c * x
        if y:
            acc[i] = y
        else:
            acc.pop(i, None)
    return acc


def add(u: Mapping, v: Mapping, c=ONE) -> Vector:
    return axpy(dict(u), v, c)


def scale(v: Mapping, c) -> Vector:
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def combine(terms: Iterable[tuple[object, Mapping]]) -> Vector:
    """Sum of c * v over (c, v) pairs."""
    acc: Vector = {}
    for c, v in terms:
        axpy(acc, v, c)
    return acc


def outer(u: Mapping[int, Fraction], v: Mapping[int, Fraction], c=ONE) -> dict:
    """u (x) v as a sparse dict keyed by index pairs."""
    return {(i, j): c * x * y for i, x in u.items() for j, y in v.items()}


# -- sparse matrices -------------------------------------------------------

@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), x in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
            x = frac(x)
            if x:
                clean[(r, c)] = x
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], rows: int) -> SparseMatrix:
        return cls(rows, len(columns), {(r, c): x for c, col in enumerate(columns) for r, x in col.items()})

    @classmethod
    def from_rows(cls, row_list: Sequence[Mapping[int, Fraction]], cols: int) -> SparseMatrix:
        return cls(len(row_list), cols, {(r, c): x for r, row in enumerate(row_list) for c, x in row.items()})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> SparseMatrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(r, c): frac(x) for r, row in enumerate(data) for c, x in enumerate(row) if x})

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def diag(cls, values: Sequence) -> SparseMatrix:
        n = len(values)
        return cls(n, n, {(i, i): frac(x) for i, x in enumerate(values) if x})

    @cached_property
    def row_vectors(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    @cached_property
    def column_vectors(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.cols)]
        for (r, c), x in self.entries.items():
            out[c][r] = x
        return out

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def apply(self, v: Mapping[int, Fraction]) -> Vector:
        cols = self.column_vectors
        acc: Vector = {}
        for j, x in v.items():
            axpy(acc, cols[j], x)
        return acc

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return SparseMatrix.from_columns([self.apply(col) for col in other.column_vectors], self.rows)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        acc = dict(self.entries)
        for k, x in other.entries.items():
            acc[k] = acc.get(k, ZERO) - x
        return SparseMatrix(self.rows, self.cols, acc)

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(self.cols, self.rows, {(c, r): x for (r, c), x in self.entries.items()})

    def to_dense(self) -> list[list[Fraction]]:
        return [dense(row, self.cols) for row in self.row_vectors]

    def rank(self) -> int:
        return rank(self)

    def is_scalar(self):
        """The scalar c if this matrix is c * identity, else None."""
        if not self.is_square:
            return None
        if any(r != c for r, c in self.entries):
            return None
        vals = set(self.entries.values())
        if len(self.entries) == 0:
            return ZERO
        if len(vals) == 1 and len(self.entries) == self.rows:
            return vals.pop()
        return None


# -- echelon forms ---------------------------------------------------------

class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are kept fully reduced: each stored row has a leading 1 at its pivot
    and zeros in every other pivot column. The final form depends only on the
    span of the inserted vectors, not on insertion order.
    """

    def __init__(self):
        self.pivots: dict[int, Vector] = {}
        self._occurs: dict[int, set[int]] = {}  # column -> pivots of rows using it off-pivot

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: Mapping[int, Fraction]) -> Vector:
        r = dict(v)
        for p in [p for p in r if p in self.pivots]:
            c = r.get(p)
            if c:
                axpy(r, self.pivots[p], -c)
        return r

    def add(self, v: Mapping[int, Fraction]) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        if lead != ONE:
            r = {i: x / lead for i, x in r.items()}
        for q in list(self._occurs.get(p, ())):
            row = self.pivots[q]
            c = row[p]
            before = set(row)
            axpy(row, r, -c)
            after = set(row)
            for col in before - after:
                self._occurs[col].discard(q)
            for col in after - before:
                self._occurs.setdefault(col, set()).add(q)
        self._occurs.pop(p, None)
        self.pivots[p] = r
        for col in r:
            if col != p:
                self._occurs.setdefault(col, set()).add(p)
        return True

    def rows(self) -> list[Vector]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def rref(vectors: Iterable[Mapping[int, Fraction]]) -> list[Vector]:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rows()


def rank(m: SparseMatrix) -> int:
    e = Echelon()
    for row in m.row_vectors:
        e.add(row)
    return len(e)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held as its unique reduced echelon basis."""

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, Fraction]], ambient_dim: int) -> Subspace:
        return cls(ambient_dim, tuple(rref(vectors)))

    @classmethod
    def whole(cls, n: int) -> Subspace:
        return cls(n, tuple(unit(i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(min(b) for b in self.basis)

    @cached_property
    def _echelon(self) -> Echelon:
        e = Echelon()
        for b in self.basis:
            e.pivots[min(b)] = b
        return e

    def reduce(self, v: Mapping[int, Fraction]) -> Vector:
        return self._echelon.reduce(v)

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping[int, Fraction]) -> list[Fraction]:
        """Coordinates of v in the echelon basis; v must lie in the subspace."""
        coords = [v.get(p, ZERO) for p in self.pivots]
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return coords

    def combination(self, coords: Sequence) -> Vector:
        return combine((c, b) for c, b in zip(coords, self.basis))


def kernel(m: SparseMatrix) -> Subspace:
    rows = rref(m.row_vectors)
    pivots = {min(r): r for r in rows}
    free = [c for c in range(m.cols) if c not in pivots]
    out = []
    for f in free:
        v = {f: ONE}
        for p, r in pivots.items():
            x = r.get(f)
            if x:
                v[p] = -x
        out.append(v)
    return Subspace.span(out, m.cols)


def solve_sparse(m: SparseMatrix, rhs: Mapping[int, Fraction]):
    """One exact solution of m x = rhs as a sparse vector, or None."""
    aug = m.cols
    e = Echelon()
    for r, row in enumerate(m.row_vectors):
        b = rhs.get(r, ZERO)
        e.add({**row, aug: b} if b else row)
    if aug in e.pivots:
        return None
    x: Vector = {}
    for p, row in e.pivots.items():
        c = row.get(aug)
        if c:
            x[p] = c
    return x


def solve(m: SparseMatrix, rhs: Sequence):
    """One exact solution of m x = rhs as a dense list, or None if inconsistent."""
    if len(rhs) != m.rows:
        raise ValueError("rhs length does not match matrix rows")
    x = solve_sparse(m, vec(rhs))
    return None if x is None else dense(x, m.cols)


# -- polynomials -----------------------------------------------------------

def charpoly(a: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial det(xI - a), coefficients from x^0 upwards.

    Hessenberg reduction followed by the standard three-term recurrence.
    """
    n = len(a)
    h = [[frac(x) for x in row] for row in a]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        t = h[m][m - 1]
        for i in range(m + 1, n):
            u = h[i][m - 1] / t
            if not u:
                continue
            hi, hm = h[i], h[m]
            for j in range(n):
                if hm[j]:
                    hi[j] -= u * hm[j]
            for row in h:
                if row[i]:
                    row[m] += u * row[i]
    polys: list[list[Fraction]] = [[ONE]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        p = [ZERO] + prev  # x * p_{m-1}
        for k, c in enumerate(prev):
            p[k] -= h[m - 1][m - 1] * c
        t = ONE
        for i in range(1, m):
            t *= h[m - i][m - i - 1]
            c = t * h[m - i - 1][m - 1]
            if c:
                for k, d in enumerate(polys[m - i - 1]):
                    p[k] -= c * d
        polys.append(p)
    return polys[n]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n < 10**12:
        small, large = [], []
        for d in range(1, isqrt(n) + 1):
            if n % d == 0:
                small.append(d)
                if d * d != n:
                    large.append(n // d)
        return small + large[::-1]
    from sympy import divisors

    return [int(d) for d in divisors(n)]


def _integerize(coeffs: Sequence) -> list[int]:
    cs = [frac(c) for c in coeffs]
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    """Divide by (x - root); coeffs low to high, remainder must be zero."""
    n = len(coeffs) - 1
    out = [ZERO] * n
    carry = ZERO
    for k in range(n, 0, -1):
        carry = coeffs[k] + carry * root
        out[k - 1] = carry
    return out


def _evaluate(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def rational_roots(poly: Sequence) -> list[Fraction]:
    """Rational roots with multiplicity, ascending; coefficients from x^0 up."""
    roots, _ = rational_roots_and_rest(poly)
    return roots


def rational_roots_and_rest(poly: Sequence) -> tuple[list[Fraction], list[int]]:
    """Rational roots plus the integer cofactor that has none."""
    p = _integerize(poly)
    while p and p[-1] == 0:
        p.pop()
    if not p:
        raise ValueError("zero polynomial")
    roots: list[Fraction] = []
    while len(p) > 1 and p[0] == 0:
        roots.append(ZERO)
        p = p[1:]
    cur = [Fraction(c) for c in p]
    progress = True
    while len(cur) > 1 and progress:
        progress = False
        ints = _integerize(cur)
        lead, const = ints[-1], ints[0]
        for q in _divisors(lead):
            for num in _divisors(const):
                for r in (Fraction(num, q), Fraction(-num, q)):
                    while len(cur) > 1 and _evaluate(cur, r) == 0:
                        roots.append(r)
                        cur = _deflate(cur, r)
                        progress = True
                if progress:
                    break
            if progress:
                break
    return sorted(roots), _integerize(cur)


# -- joint eigenvectors ----------------------------------------------------

def _restrict(op: SparseMatrix, w: Subspace) -> list[list[Fraction]]:
    cols = []
    for b in w.basis:
        img = op.apply(b)
        if not w.contains(img):
            raise ValueError("subspace not invariant under operator")
        cols.append([img.get(p, ZERO) for p in w.pivots])
    k = w.dim
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _split(op_index: int, r: list[list[Fraction]], w: Subspace) -> list[Subspace]:
    k = len(r)
    off_diagonal = any(r[i][j] for i in range(k) for j in range(k) if i != j)
    if not off_diagonal:
        groups: dict[Fraction, list[int]] = {}
        for i in range(k):
            groups.setdefault(r[i][i], []).append(i)
        return [Subspace.span([w.basis[i] for i in idx], w.ambient_dim) for _, idx in sorted(groups.items())]
    cp = charpoly(r)
    roots, rest = rational_roots_and_rest(cp)
    if len(rest) > 1:
        raise NotSplitRational("irrational", {"operator": op_index, "factor": rest})
    pieces = []
    for lam in sorted(set(roots)):
        shifted = SparseMatrix.from_dense([[r[i][j] - (lam if i == j else 0) for j in range(k)] for i in range(k)])
        ker = kernel(shifted)
        mult = roots.count(lam)
        if ker.dim < mult:
            raise NotSplitRational(
                "not_diagonalizable",
                {"operator": op_index, "eigenvalue": fmt(lam), "algebraic": mult, "geometric": ker.dim},
            )
        vecs = [w.combination(dense(v, k)) for v in ker.basis]
        pieces.append(Subspace.span(vecs, w.ambient_dim))
    return pieces


def joint_eigenbasis(ops: Sequence[SparseMatrix]) -> list[tuple[Vector, tuple[Fraction, ...]]]:
    """Common eigenvectors of commuting operators, one per joint eigenvalue.

    Succeeds only when the operators are simultaneously diagonalizable over Q
    with every joint eigenspace 1-dimensional. Vectors are returned in reduced
    echelon normalization, ordered by their eigenvalue tuples.
    """
    if not ops:
        raise ValueError("no operators")
    n = ops[0].rows
    for op in ops:
        if op.rows != n or op.cols != n:
            raise ValueError("operators must be square of equal size")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if ops[i] @ ops[j] != ops[j] @ ops[i]:
                raise NotCommuting((i, j))
    pieces = [Subspace.whole(n)]
    for idx, op in enumerate(ops):
        refined = []
        for w in pieces:
            if w.dim <= 1:
                refined.append(w)
                continue
            r = _restrict(op, w)
            if SparseMatrix.from_dense(r).is_scalar() is not None:
                refined.append(w)
                continue
            refined.extend(_split(idx, r, w))
        pieces = refined
        if all(w.dim == 1 for w in pieces):
            break
    big = [w.dim for w in pieces if w.dim > 1]
    if big:
        raise NotSplitRational("degenerate", {"eigenspace_dims": sorted(big, reverse=True)})
    out = []
    for w in pieces:
        v = w.basis[0]
        lams = []
        for op in ops:
            img = op.apply(v)
            p = min(v)
            lam = img.get(p, ZERO) / v[p]
            if img != scale(v, lam):
                raise ValueError("refinement produced a non-eigenvector")
            lams.append(lam)
        out.append((v, tuple(lams)))
    out.sort(key=lambda pair: pair[1])
    return out
