"""Finite-dimensional Hopf algebroids over finite base algebras.

The base algebra A0 is the function algebra on a finite set of points with
indicator basis e_x. An algebroid stores its structure constants on a basis
of A; the tensor products over A0 are realized as block subspaces of the full
tensor square (see ``tensors.BlockSpace``):

    A (x)^ll A = sum_x e_x A (x) e_x A,    A (x)^rl A = sum_x A e_x (x) e_x A.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exactla import ONE, ZERO, Echelon, SparseMatrix, Vector, axpy, kernel, solve, solve_sparse
from .groupoid import FiniteGroupoid
from .report import Report
from .tensors import Bilinear, BlockSpace, componentwise, outer, project3, tensor_axpy, tmap


class BlockViolation(ValueError):
    def __init__(self, witness):
        super().__init__(f"comultiplication term crosses base blocks: {witness}")
        self.witness = witness


@dataclass(frozen=True)
class BaseAlgebra:
    points: tuple

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.points)}

    @property
    def dim(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Coalgebra:
    """A left A0-coalgebra on Q^dim.

    ``projectors[x]`` is the matrix of the action of the indicator e_x,
    ``comult[k]`` is Delta(b_k) in full tensor-square coordinates and
    ``counit[k]`` maps base point indices to the coefficients of eps(b_k).
    """

    base: BaseAlgebra
    labels: tuple
    comult: tuple
    counit: tuple
    projectors: tuple

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def ll(self) -> BlockSpace:
        return BlockSpace([(x, p, p) for x, p in enumerate(self.projectors)])

    def delta(self, v: Mapping) -> dict:
        acc: dict = {}
        for k, c in v.items():
            tensor_axpy(acc, self.comult[k], c)
        return acc

    def eps(self, v: Mapping) -> Vector:
        acc: Vector = {}
        for k, c in v.items():
            axpy(acc, self.counit[k], c)
        return acc

    def act0(self, f: Mapping, v: Mapping) -> Vector:
        """The left action of the base function f = sum f[x] e_x."""
        acc: Vector = {}
        for x, c in f.items():
            axpy(acc, self.projectors[x].apply(v), c)
        return acc

    def block(self, x: int) -> list[int]:
        """Basis indices with a nonzero component in e_x C."""
        return [i for i, col in enumerate(self.projectors[x].column_vectors) if col]


@dataclass(frozen=True)
class HopfAlgebroid:
    coalgebra: Coalgebra
    mult: Mapping
    a0_embedding: tuple
    antipode: SparseMatrix | None = None

    @property
    def base(self) -> BaseAlgebra:
        return self.coalgebra.base

    @property
    def labels(self) -> tuple:
        return self.coalgebra.labels

    @property
    def dim(self) -> int:
        return self.coalgebra.dim

    @cached_property
    def product(self) -> Bilinear:
        return Bilinear(self.mult, self.dim)

    def mul(self, u: Mapping, v: Mapping) -> Vector:
        return self.product(u, v)

    def embed(self, f: Mapping) -> Vector:
        """The element of A representing the base function f."""
        acc: Vector = {}
        for x, c in f.items():
            axpy(acc, self.a0_embedding[x], c)
        return acc

    @cached_property
    def right_projectors(self) -> tuple:
        return tuple(self.product.right_operator(e, self.dim) for e in self.a0_embedding)

    @cached_property
    def ll(self) -> BlockSpace:
        return self.coalgebra.ll

    @cached_property
    def rl(self) -> BlockSpace:
        return BlockSpace([(x, r, l) for x, (r, l) in enumerate(zip(self.right_projectors, self.coalgebra.projectors))])

    def S(self, v: Mapping) -> Vector:
        return self.antipode.apply(v)


def make_algebroid(points, labels, mult, a0_embedding, comult, counit, antipode=None) -> HopfAlgebroid:
    """Assemble an algebroid; the base action on the coalgebra is left multiplication."""
    base = BaseAlgebra(tuple(points))
    n = len(labels)
    product = Bilinear(mult, n)
    projectors = tuple(product.left_operator(e, n) for e in a0_embedding)
    coalg = Coalgebra(base, tuple(labels), tuple(dict(t) for t in comult), tuple(dict(e) for e in counit), projectors)
    return HopfAlgebroid(coalg, product.table, tuple(dict(e) for e in a0_embedding), antipode)


def convolution_algebroid(g: FiniteGroupoid) -> HopfAlgebroid:
    """Delta basis of the arrows with convolution product, diagonal coproduct,
    counit through the target and antipode through the inverse."""
    idx = g.index
    obj = {x: i for i, x in enumerate(g.objects)}
    mult = {(idx[b], idx[a]): {idx[ba]: ONE} for (b, a), ba in g.compose.items()}
    a0 = [{idx[g.unit[x]]: ONE} for x in g.objects]
    comult = [{(i, i): ONE} for i in range(len(g.arrows))]
    counit = [{obj[g.tgt[a]]: ONE} for a in g.arrows]
    antipode = SparseMatrix(len(g.arrows), len(g.arrows), {(idx[g.inv[a]], idx[a]): ONE for a in g.arrows})
    return make_algebroid(g.objects, g.arrows, mult, a0, comult, counit, antipode)


def base_algebroid(points: Sequence[str]) -> HopfAlgebroid:
    """A0 itself as a Hopf algebroid over A0."""
    n = len(points)
    return make_algebroid(
        points, [f"e_{x}" for x in points], {(i, i): {i: ONE} for i in range(n)},
        [{i: ONE} for i in range(n)], [{(i, i): ONE} for i in range(n)], [{i: ONE} for i in range(n)],
        SparseMatrix.identity(n),
    )


def primitive_hopf() -> HopfAlgebroid:
    """Q[x]/(x^2) over one point: Delta(x) = x (x) 1 + 1 (x) x, S(x) = -x."""
    mult = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}
    comult = [{(0, 0): ONE}, {(1, 0): ONE, (0, 1): ONE}]
    counit = [{0: ONE}, {}]
    antipode = SparseMatrix.diag([1, -1])
    return make_algebroid(["*"], ["1", "x"], mult, [{0: ONE}], comult, counit, antipode)


def tensor_ll(a: HopfAlgebroid) -> BlockSpace:
    return a.ll


def tensor_rl(a: HopfAlgebroid) -> BlockSpace:
    return a.rl


# -- coalgebra laws --------------------------------------------------------

def _vec_witness(labels, v: Mapping) -> dict:
    return {labels[i]: c for i, c in sorted(v.items())}


def check_coalgebra(c: Coalgebra, rep: Report | None = None) -> Report:
    rep = rep or Report("coalgebra")
    n, m = c.dim, c.base.dim
    ident = SparseMatrix.identity(n)

    witness = None
    total: dict = {}
    for x, p in enumerate(c.projectors):
        if p.rows != n or p.cols != n:
            witness = {"point": c.base.points[x], "problem": "shape"}
            break
        for y, q in enumerate(c.projectors):
            expect = p if x == y else SparseMatrix(n, n)
            if p @ q != expect:
                witness = {"points": [c.base.points[x], c.base.points[y]], "problem": "not orthogonal idempotents"}
                break
        if witness:
            break
        tensor_axpy(total, p.entries)
    if witness is None and SparseMatrix(n, n, total) != ident:
        witness = {"problem": "indicators do not sum to the identity"}
    rep.add("base_action_unitary", witness is None, witness)

    witness = None
    for k in range(n):
        d = c.comult[k]
        if c.ll.project(d) != d:
            bad = sorted(set(d.items()) ^ set(c.ll.project(d).items()))[0]
            witness = {"element": c.labels[k], "term": [c.labels[bad[0][0]], c.labels[bad[0][1]]]}
            break
    rep.add("block_condition", witness is None, witness)

    witness = None
    for k in range(n):
        for x, p in enumerate(c.projectors):
            col = p.column_vectors[k]
            if c.ll.project(c.delta(col)) != c.ll.project(tmap(c.comult[k], p.column_vectors.__getitem__, None)):
                witness = {"element": c.labels[k], "point": c.base.points[x], "map": "comult"}
                break
            if c.eps(col) != ({x: c.counit[k][x]} if x in c.counit[k] else {}):
                witness = {"element": c.labels[k], "point": c.base.points[x], "map": "counit"}
                break
        if witness:
            break
    rep.add("base_linearity", witness is None, witness)

    left = right = None
    for k in range(n):
        lhs, rhs = {}, {}
        for (i, j), t in c.comult[k].items():
            axpy(lhs, c.act0(c.counit[i], {j: ONE}), t)
            axpy(rhs, c.act0(c.counit[j], {i: ONE}), t)
        if left is None and lhs != {k: ONE}:
            left = {"element": c.labels[k], "got": _vec_witness(c.labels, lhs)}
        if right is None and rhs != {k: ONE}:
            right = {"element": c.labels[k], "got": _vec_witness(c.labels, rhs)}
    rep.add("counit_left", left is None, left)
    rep.add("counit_right", right is None, right)

    witness = None
    for k in range(n):
        lhs, rhs = {}, {}
        for (i, j), t in c.comult[k].items():
            for (a, b), s in c.comult[i].items():
                key = (a, b, j)
                lhs[key] = lhs.get(key, ZERO) + t * s
            for (a, b), s in c.comult[j].items():
                key = (i, a, b)
                rhs[key] = rhs.get(key, ZERO) + t * s
        if project3(lhs, c.projectors) != project3(rhs, c.projectors):
            witness = {"element": c.labels[k]}
            break
    rep.add("coassociativity", witness is None, witness)
    return rep


def require_blocks(c: Coalgebra) -> None:
    """Raise BlockViolation when some Delta term leaves the blocks e_x C (x) e_x C."""
    for k in range(c.dim):
        d = c.comult[k]
        proj = c.ll.project(d)
        if proj != d:
            (i, j), _ = sorted(set(d.items()) ^ set(proj.items()))[0]
            raise BlockViolation({"element": c.labels[k], "term": [c.labels[i], c.labels[j]]})


# -- algebra laws ----------------------------------------------------------

def associativity_witness(f1: Bilinear, f2: Bilinear, g1: Bilinear, g2: Bilinear):
    """A basis triple (x, y, z) with f2(f1(x, y), z) != g2(x, g1(y, z)), or None.

    Only triples where one side can be nonzero are enumerated.
    """
    triples = set()
    for (x, y), xy in f1.table.items():
        for k in xy:
            for z in f2.right_partners.get(k, ()):
                triples.add((x, y, z))
    for (y, z), yz in g1.table.items():
        for k in yz:
            for x in g2.left_partners.get(k, ()):
                triples.add((x, y, z))
    for x, y, z in sorted(triples):
        if f2(f1.on_basis(x, y), {z: ONE}) != g2({x: ONE}, g1.on_basis(y, z)):
            return (x, y, z)
    return None


def _check_algebra(a: HopfAlgebroid, rep: Report) -> None:
    n, lab = a.dim, a.labels
    w = associativity_witness(a.product, a.product, a.product, a.product)
    rep.add("associativity", w is None, w and [lab[i] for i in w])

    witness = None
    for x, ex in enumerate(a.a0_embedding):
        if not ex:
            witness = {"point": a.base.points[x], "problem": "zero indicator"}
            break
        for y, ey in enumerate(a.a0_embedding):
            if a.mul(ex, ey) != (ex if x == y else {}):
                witness = {"points": [a.base.points[x], a.base.points[y]]}
                break
        if witness:
            break
    rep.add("base_orthogonal_idempotents", witness is None, witness)

    unit = a.embed({x: ONE for x in range(a.base.dim)})
    witness = None
    for k in range(n):
        if a.mul(unit, {k: ONE}) != {k: ONE} or a.mul({k: ONE}, unit) != {k: ONE}:
            witness = {"element": lab[k]}
            break
    rep.add("local_identities", witness is None, witness)


def check_bialgebroid(a: HopfAlgebroid) -> Report:
    rep = Report("bialgebroid")
    n, lab, c = a.dim, a.labels, a.coalgebra
    _check_algebra(a, rep)
    check_coalgebra(c, rep)
    ll = a.ll

    witness = None
    for x, ex in enumerate(a.a0_embedding):
        if c.eps(ex) != {x: ONE}:
            witness = {"point": a.base.points[x], "clause": "counit on base"}
            break
        if ll.project(c.delta(ex)) != ll.project(outer(ex, ex)):
            witness = {"point": a.base.points[x], "clause": "comult on base"}
            break
    if witness is None:
        for k in range(n):
            for x, r in enumerate(a.right_projectors):
                col = r.column_vectors.__getitem__
                if ll.project(tmap(c.comult[k], col, None)) != ll.project(tmap(c.comult[k], None, col)):
                    witness = {"element": lab[k], "point": a.base.points[x], "clause": "right base actions"}
                    break
            if witness:
                break
    rep.add("axiom_i", witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            lhs = c.eps(a.product.on_basis(i, j))
            rhs = c.eps(a.mul({i: ONE}, a.embed(c.counit[j])))
            if lhs != rhs:
                witness = [lab[i], lab[j]]
                break
        if witness:
            break
    rep.add("axiom_ii", witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            lhs = c.delta(a.product.on_basis(i, j))
            rhs = componentwise(c.comult[i], c.comult[j], a.product, a.product)
            if ll.project(lhs) != ll.project(rhs):
                witness = [lab[i], lab[j]]
                break
        if witness:
            break
    rep.add("axiom_iii", witness is None, witness)
    return rep


def check_hopf(a: HopfAlgebroid) -> Report:
    rep = Report("hopf")
    n, lab, c = a.dim, a.labels, a.coalgebra
    s = a.antipode
    if s is None or s.rows != n or s.cols != n:
        rep.add("antipode_present", False, {"problem": "missing or wrongly shaped antipode"})
        return rep
    sq = s @ s
    bad = next((k for k in range(n) if sq.column_vectors[k] != {k: ONE}), None)
    rep.add("involution", bad is None, bad is not None and {"element": lab[bad], "S2": _vec_witness(lab, sq.column_vectors[bad])})

    bad = next((x for x, e in enumerate(a.a0_embedding) if s.apply(e) != e), None)
    rep.add("fixes_base", bad is None, bad is not None and {"point": a.base.points[bad]})

    scol = s.column_vectors
    witness = None
    for i in range(n):
        for j in range(n):
            if s.apply(a.product.on_basis(i, j)) != a.mul(scol[j], scol[i]):
                witness = [lab[i], lab[j]]
                break
        if witness:
            break
    rep.add("antimultiplicative", witness is None, witness)

    witness = None
    for k in range(n):
        lhs: Vector = {}
        for (i, j), t in c.comult[k].items():
            axpy(lhs, a.mul(scol[i], {j: ONE}), t)
        rhs = a.embed(c.eps(scol[k]))
        if lhs != rhs:
            witness = {"element": lab[k], "lhs": _vec_witness(lab, lhs), "rhs": _vec_witness(lab, rhs)}
            break
    rep.add("antipode_identity", witness is None, witness)
    return rep


# -- principality ----------------------------------------------------------

def delta_bar_matrix(c: Coalgebra, act: Bilinear, domain: BlockSpace) -> SparseMatrix:
    """Matrix of m (x) b -> sum m' (x) m''b from ``domain`` into the ll space of c."""
    cols = []
    for k in range(domain.dim):
        block, ia, ib = domain.locate(k)
        u = domain.left_images[block].basis[ia]
        w = domain.right_images[block].basis[ib]
        img: dict = {}
        cache: dict = {}
        for (i, j), t in c.delta(u).items():
            if j not in cache:
                cache[j] = act({j: ONE}, w)
            for l, y in cache[j].items():
                key = (i, l)
                img[key] = img.get(key, ZERO) + t * y
        cols.append(c.ll.coords({k2: v for k2, v in img.items() if v}))
    return SparseMatrix.from_columns(cols, c.ll.dim)


def bijectivity_witness(mat: SparseMatrix, domain: BlockSpace, codomain: BlockSpace,
                        domain_labels: tuple, codomain_labels: tuple):
    """None if ``mat`` is a bijection, else a kernel or cokernel vector.

    Vectors are reported on pairs of basis labels "left|right".
    """
    r = mat.rank()
    if r == mat.rows == mat.cols:
        return None

    def describe(space: BlockSpace, v: Vector, labels):
        out = {}
        for idx, cval in sorted(v.items()):
            _, p, q = space.pivot_pair(idx)
            out[f"{labels[0][p]}|{labels[1][q]}"] = cval
        return out

    witness = {"domain_dim": mat.cols, "codomain_dim": mat.rows, "rank": r}
    ker = kernel(mat)
    if ker.dim:
        witness["kernel_vector"] = describe(domain, ker.basis[0], domain_labels)
    else:
        ech = Echelon()
        for col in mat.column_vectors:
            ech.add(col)
        missed = next(i for i in range(mat.rows) if ech.reduce({i: ONE}))
        witness["missed_vector"] = describe(codomain, {missed: ONE}, codomain_labels)
    return witness


def check_principal_algebroid(a: HopfAlgebroid) -> Report:
    rep = Report("principal_algebroid")
    mat = delta_bar_matrix(a.coalgebra, a.product, a.rl)
    w = bijectivity_witness(mat, a.rl, a.ll, (a.labels, a.labels), (a.labels, a.labels))
    rep.add("delta_bar_bijective", w is None, w)
    rep.derived["delta_bar_shape"] = [mat.rows, mat.cols]
    return rep


# -- weakly grouplike elements ----------------------------------------------

def _ll_system(c: Coalgebra, columns: list[dict]) -> list[Vector]:
    return [c.ll.coords(t) for t in columns]


def weakly_grouplike_witness(c: Coalgebra, v: Mapping):
    """Some c' with Delta(v) = v (x) c' in the ll tensor, or None."""
    v = dict(v)
    cols = _ll_system(c, [outer(v, {j: ONE}) for j in range(c.dim)])
    mat = SparseMatrix.from_columns(cols, c.ll.dim)
    return solve_sparse(mat, c.ll.coords(c.delta(v)))


def s_invariant_witness(a: HopfAlgebroid, v: Mapping):
    """Some a' with Delta(v) = v (x) a' and Delta(S v) = S(a') (x) S(v), or None."""
    v = dict(v)
    c, ll = a.coalgebra, a.ll
    sv = a.S(v)
    scol = a.antipode.column_vectors
    off = ll.dim
    cols = []
    for j in range(a.dim):
        top = ll.coords(outer(v, {j: ONE}))
        bottom = ll.coords(outer(scol[j], sv))
        col = dict(top)
        col.update({off + i: x for i, x in bottom.items()})
        cols.append(col)
    rhs = dict(ll.coords(c.delta(v)))
    rhs.update({off + i: x for i, x in ll.coords(c.delta(sv)).items()})
    return solve_sparse(SparseMatrix.from_columns(cols, 2 * off), rhs)


# -- change of basis -------------------------------------------------------

HEIGHT_VALUES = sorted({Fraction(p, q) for p in range(-3, 4) if p for q in range(1, 4)})


def random_basis_change(n: int, seed: int, block: int = 3) -> tuple[SparseMatrix, SparseMatrix]:
    """A random invertible T and its inverse; columns of T are the new basis in old coordinates.

    The coordinates are shuffled and cut into groups of 2..block (a lone
    coordinate only when n == 1); each group gets a dense invertible block
    with entries p/q, |p|, |q| <= 3. Every new basis vector mixes old ones.
    """
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    groups, i = [], 0
    while i < n:
        k = min(rng.randint(2, max(2, block)), n - i)
        groups.append(perm[i:i + k])
        i += k
    if len(groups) > 1 and len(groups[-1]) == 1:
        last = groups.pop()
        groups[-1] = groups[-1] + last
    t_entries, inv_entries = {}, {}
    for grp in groups:
        k = len(grp)
        while True:
            mat = [[rng.choice(HEIGHT_VALUES) for _ in range(k)] for _ in range(k)]
            if k == 1 and mat[0][0] == 1:
                continue
            sm = SparseMatrix.from_dense(mat)
            if sm.rank() == k:
                break
        inv_cols = [solve(sm, [ONE if r == c else ZERO for r in range(k)]) for c in range(k)]
        for r in range(k):
            for c in range(k):
                if mat[r][c]:
                    t_entries[(grp[r], grp[c])] = mat[r][c]
                if inv_cols[c][r]:
                    inv_entries[(grp[r], grp[c])] = inv_cols[c][r]
    return SparseMatrix(n, n, t_entries), SparseMatrix(n, n, inv_entries)


def conjugate_bilinear(table: Mapping, left: SparseMatrix | None, right: SparseMatrix | None,
                       out_inv: SparseMatrix | None, left_dim: int, right_dim: int, out_dim: int) -> dict:
    """New structure constants f'(i, j) = out_inv f(left e_i, right e_j)."""
    f = Bilinear(table, out_dim)
    lcols = left.column_vectors if left is not None else [{i: ONE} for i in range(left_dim)]
    rcols = right.column_vectors if right is not None else [{j: ONE} for j in range(right_dim)]
    out = {}
    for i in range(left_dim):
        for j in range(right_dim):
            v = f(lcols[i], rcols[j])
            if v and out_inv is not None:
                v = out_inv.apply(v)
            if v:
                out[(i, j)] = v
    return out


def conjugate_comult(comult: Sequence[Mapping], t: SparseMatrix, t_inv: SparseMatrix) -> tuple:
    inv = t_inv.column_vectors.__getitem__
    out = []
    for col in t.column_vectors:
        acc: dict = {}
        for k, c in col.items():
            tensor_axpy(acc, comult[k], c)
        out.append(tmap(acc, inv, inv))
    return tuple(out)


def conjugate_counit(counit: Sequence[Mapping], t: SparseMatrix) -> tuple:
    out = []
    for col in t.column_vectors:
        acc: Vector = {}
        for k, c in col.items():
            axpy(acc, counit[k], c)
        out.append(acc)
    return tuple(out)


def scramble_algebroid(a: HopfAlgebroid, seed: int, block: int = 3) -> tuple[HopfAlgebroid, SparseMatrix]:
    """The same algebroid in a random basis; returns it with the basis change T."""
    n = a.dim
    t, t_inv = random_basis_change(n, seed, block)
    mult = conjugate_bilinear(a.mult, t, t, t_inv, n, n, n)
    a0 = [t_inv.apply(e) for e in a.a0_embedding]
    comult = conjugate_comult(a.coalgebra.comult, t, t_inv)
    counit = conjugate_counit(a.coalgebra.counit, t)
    antipode = t_inv @ a.antipode @ t if a.antipode is not None else None
    labels = [f"b{i:0{len(str(n - 1))}d}" for i in range(n)]
    return make_algebroid(a.base.points, labels, mult, a0, comult, counit, antipode), t
