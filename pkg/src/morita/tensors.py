"""Sparse tensors, bilinear products and block subspaces of tensor squares.

A tensor is a ``dict[(i, j), Fraction]`` in the full tensor square of two
coordinate spaces. Tensors over a base algebra of indicators are realized as
block subspaces: sums over base points x of im(P_x) (x) im(Q_x) for projector
pairs (P_x, Q_x). Equality in the balanced tensor product is equality after
projecting onto that block sum.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, Mapping, Sequence

from .exactla import ONE, ZERO, SparseMatrix, Subspace, Vector, axpy

Tensor = dict


def tensor_axpy(acc: Tensor, t: Mapping, c=ONE) -> Tensor:
    if not c:
        return acc
    for k, x in t.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def outer(u: Mapping, v: Mapping, c=ONE) -> Tensor:
    return {(i, j): c * x * y for i, x in u.items() for j, y in v.items() if c * x * y}


def swap(t: Mapping) -> Tensor:
    return {(j, i): c for (i, j), c in t.items()}


def tmap(t: Mapping, f: Callable[[int], Mapping] | None, g: Callable[[int], Mapping] | None) -> Tensor:
    """(f (x) g)(t) for linear maps given on basis indices; None means identity."""
    acc: Tensor = {}
    fc, gc = {}, {}
    for (i, j), c in t.items():
        if f is None:
            u = {i: ONE}
        else:
            u = fc.get(i)
            if u is None:
                u = fc[i] = f(i)
        if g is None:
            w = {j: ONE}
        else:
            w = gc.get(j)
            if w is None:
                w = gc[j] = g(j)
        for k, a in u.items():
            ca = c * a
            for l, b in w.items():
                key = (k, l)
                y = acc.get(key, ZERO) + ca * b
                if y:
                    acc[key] = y
                else:
                    acc.pop(key, None)
    return acc


def column(m: SparseMatrix) -> Callable[[int], Vector]:
    cols = m.column_vectors
    return lambda i: cols[i]


class Bilinear:
    """A bilinear map given on basis pairs; only nonzero values are stored."""

    def __init__(self, table: Mapping[tuple, Mapping], out_dim: int):
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.out_dim = out_dim
        rp, lp = defaultdict(list), defaultdict(list)
        for i, j in sorted(self.table):
            rp[i].append(j)
            lp[j].append(i)
        self.right_partners = dict(rp)
        self.left_partners = dict(lp)

    def on_basis(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def __call__(self, u: Mapping, v: Mapping) -> Vector:
        acc: Vector = {}
        if len(u) <= len(v):
            for i, a in u.items():
                for j in self.right_partners.get(i, ()):
                    b = v.get(j)
                    if b:
                        axpy(acc, self.table[(i, j)], a * b)
        else:
            for j, b in v.items():
                for i in self.left_partners.get(j, ()):
                    a = u.get(i)
                    if a:
                        axpy(acc, self.table[(i, j)], a * b)
        return acc

    def left_operator(self, u: Mapping, n: int) -> SparseMatrix:
        """Matrix of v -> u*v on a right factor of dimension n."""
        return SparseMatrix.from_columns([self(u, {j: ONE}) for j in range(n)], self.out_dim)

    def right_operator(self, v: Mapping, n: int) -> SparseMatrix:
        """Matrix of u -> u*v on a left factor of dimension n."""
        return SparseMatrix.from_columns([self({i: ONE}, v) for i in range(n)], self.out_dim)


def componentwise(s: Mapping, t: Mapping, f: Bilinear, g: Bilinear) -> Tensor:
    """The product (s' (x) s'')(t' (x) t'') = f(s', t') (x) g(s'', t'')."""
    by_left = defaultdict(list)
    for (i2, j2), c2 in t.items():
        by_left[i2].append((j2, c2))
    acc: Tensor = {}
    for (i1, j1), c1 in s.items():
        for i2 in f.right_partners.get(i1, ()):
            for j2, c2 in by_left.get(i2, ()):
                w = g.table.get((j1, j2))
                if not w:
                    continue
                u = f.table[(i1, i2)]
                c = c1 * c2
                for k, a in u.items():
                    for l, b in w.items():
                        key = (k, l)
                        y = acc.get(key, ZERO) + c * a * b
                        if y:
                            acc[key] = y
                        else:
                            acc.pop(key, None)
    return acc


class BlockSpace:
    """The block sum of im(P_k) (x) im(Q_k) inside a full tensor square.

    Coordinates use the reduced echelon bases of the images, so the
    coefficient of u_a (x) w_b in a block element is its entry at the pivot
    pair (pivot(u_a), pivot(w_b)).
    """

    def __init__(self, blocks: Sequence[tuple[Hashable, SparseMatrix, SparseMatrix]]):
        self.keys = [k for k, _, _ in blocks]
        self.left = [p for _, p, _ in blocks]
        self.right = [q for _, _, q in blocks]
        self.left_images = [Subspace.span(p.column_vectors, p.rows) for p in self.left]
        self.right_images = [Subspace.span(q.column_vectors, q.rows) for q in self.right]
        self.offsets = []
        self.pivot_slot = []
        total = 0
        for u, w in zip(self.left_images, self.right_images):
            self.offsets.append(total)
            lp = {p: a for a, p in enumerate(u.pivots)}
            rp = {p: b for b, p in enumerate(w.pivots)}
            self.pivot_slot.append((lp, rp, w.dim))
            total += u.dim * w.dim
        self.dim = total
        lb, rb = defaultdict(list), defaultdict(list)
        for k, p in enumerate(self.left):
            for i, col in enumerate(p.column_vectors):
                if col:
                    lb[i].append(k)
        for k, q in enumerate(self.right):
            for j, col in enumerate(q.column_vectors):
                if col:
                    rb[j].append(k)
        self._left_blocks = dict(lb)
        self._right_blocks = dict(rb)

    def project_blocks(self, t: Mapping) -> dict:
        out: dict = {}
        for (i, j), c in t.items():
            ks = self._left_blocks.get(i)
            if not ks:
                continue
            rks = self._right_blocks.get(j)
            if not rks:
                continue
            for k in ks:
                if k not in rks:
                    continue
                acc = out.setdefault(k, {})
                u = self.left[k].column_vectors[i]
                w = self.right[k].column_vectors[j]
                for a, x in u.items():
                    cx = c * x
                    for b, y in w.items():
                        key = (a, b)
                        v = acc.get(key, ZERO) + cx * y
                        if v:
                            acc[key] = v
                        else:
                            acc.pop(key, None)
        return out

    def project(self, t: Mapping) -> Tensor:
        acc: Tensor = {}
        for part in self.project_blocks(t).values():
            tensor_axpy(acc, part)
        return acc

    def coords(self, t: Mapping) -> Vector:
        out: Vector = {}
        for k, part in self.project_blocks(t).items():
            lp, rp, wdim = self.pivot_slot[k]
            off = self.offsets[k]
            for (i, j), c in part.items():
                a = lp.get(i)
                if a is None:
                    continue
                b = rp.get(j)
                if b is not None:
                    out[off + a * wdim + b] = c
        return out

    def locate(self, index: int) -> tuple[int, int, int]:
        """(block number, left basis number, right basis number) of a coordinate."""
        for k in range(len(self.offsets) - 1, -1, -1):
            if index >= self.offsets[k]:
                wdim = self.pivot_slot[k][2]
                rel = index - self.offsets[k]
                return k, rel // wdim, rel % wdim
        raise IndexError(index)

    def element(self, index: int) -> Tensor:
        k, a, b = self.locate(index)
        return outer(self.left_images[k].basis[a], self.right_images[k].basis[b])

    def pivot_pair(self, index: int) -> tuple:
        k, a, b = self.locate(index)
        return self.keys[k], self.left_images[k].pivots[a], self.right_images[k].pivots[b]

    def equal(self, s: Mapping, t: Mapping) -> bool:
        return self.project(s) == self.project(t)


def project3(t: Mapping, projectors: Sequence[SparseMatrix]) -> dict:
    """Sum over x of (P_x (x) P_x (x) P_x) applied to a 3-tensor."""
    cols = [p.column_vectors for p in projectors]
    acc: dict = {}
    for (i, j, k), c in t.items():
        for pc in cols:
            u, v, w = pc[i], pc[j], pc[k]
            if not (u and v and w):
                continue
            for a, x in u.items():
                for b, y in v.items():
                    for d, z in w.items():
                        key = (a, b, d)
                        val = acc.get(key, ZERO) + c * x * y * z
                        if val:
                            acc[key] = val
                        else:
                            acc.pop(key, None)
    return acc
