"""(Pre)principal bimodules over Hopf algebroids.

A bimodule M over (A, B) stores its two actions as structure constants and
carries a left A0-coalgebra structure whose base action is the left action
of the embedded indicators of A0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .algebroid import (
    BaseAlgebra,
    Coalgebra,
    HopfAlgebroid,
    associativity_witness,
    bijectivity_witness,
    check_coalgebra,
    conjugate_bilinear,
    conjugate_comult,
    conjugate_counit,
    convolution_algebroid,
    delta_bar_matrix,
    random_basis_change,
)
from .exactla import ONE, ZERO, Echelon, SparseMatrix, Vector, axpy, kernel, solve_sparse
from .groupoid import LimitExceeded, PrincipalBibundle, tensor_bibundles, tensor_classes, tensor_label
from .report import Report
from .tensors import Bilinear, BlockSpace, componentwise, outer, tensor_axpy, tmap


class IncompatibleBimodules(ValueError):
    pass


class IsoUnknown(RuntimeError):
    """The bounded isomorphism search was inconclusive."""


@dataclass(frozen=True)
class PrincipalBimodule:
    left_alg: HopfAlgebroid
    right_alg: HopfAlgebroid
    coalgebra: Coalgebra
    act_left: Mapping
    act_right: Mapping

    @property
    def labels(self) -> tuple:
        return self.coalgebra.labels

    @property
    def dim(self) -> int:
        return self.coalgebra.dim

    @cached_property
    def left_action(self) -> Bilinear:
        return Bilinear(self.act_left, self.dim)

    @cached_property
    def right_action(self) -> Bilinear:
        return Bilinear(self.act_right, self.dim)

    def left(self, a: Mapping, m: Mapping) -> Vector:
        return self.left_action(a, m)

    def right(self, m: Mapping, b: Mapping) -> Vector:
        return self.right_action(m, b)

    @cached_property
    def right_projectors(self) -> tuple:
        """Matrices of m -> m e_z for the right base points z."""
        return tuple(self.right_action.right_operator(e, self.dim) for e in self.right_alg.a0_embedding)

    @cached_property
    def ll(self) -> BlockSpace:
        return self.coalgebra.ll


def make_bimodule(left_alg: HopfAlgebroid, right_alg: HopfAlgebroid, labels, act_left, act_right,
                  comult, counit) -> PrincipalBimodule:
    n = len(labels)
    left_action = Bilinear(act_left, n)
    projectors = tuple(left_action.left_operator(e, n) for e in left_alg.a0_embedding)
    coalg = Coalgebra(left_alg.base, tuple(labels), tuple(dict(t) for t in comult),
                      tuple(dict(e) for e in counit), projectors)
    return PrincipalBimodule(left_alg, right_alg, coalg, left_action.table, Bilinear(act_right, n).table)


def convolution_bimodule(p: PrincipalBibundle, left_alg: HopfAlgebroid | None = None,
                         right_alg: HopfAlgebroid | None = None) -> PrincipalBimodule:
    """Delta basis of the points with actions through the bundle actions.

    No validation is done here, so non-principal inputs can be studied.
    """
    A = left_alg or convolution_algebroid(p.left)
    B = right_alg or convolution_algebroid(p.right)
    idx = p.index
    gi, hi = p.left.index, p.right.index
    obj = A.base.index
    act_left = {(gi[g], idx[q]): {idx[r]: ONE} for (g, q), r in p.act_left.items()}
    act_right = {(idx[q], hi[h]): {idx[r]: ONE} for (q, h), r in p.act_right.items()}
    comult = [{(i, i): ONE} for i in range(len(p.points))]
    counit = [{obj[p.pi[q]]: ONE} for q in p.points]
    return make_bimodule(A, B, p.points, act_left, act_right, comult, counit)


def self_bimodule(a: HopfAlgebroid) -> PrincipalBimodule:
    """A as a bimodule over itself."""
    return PrincipalBimodule(a, a, a.coalgebra, a.mult, a.mult)


# -- checks ----------------------------------------------------------------

def _labels(m, triple, kinds):
    names = {"A": m.left_alg.labels, "B": m.right_alg.labels, "M": m.labels}
    return [names[k][i] for k, i in zip(kinds, triple)]


def check_preprincipal(m: PrincipalBimodule) -> Report:
    rep = Report("preprincipal_bimodule")
    A, B, c = m.left_alg, m.right_alg, m.coalgebra
    L, R = m.left_action, m.right_action
    if A.base != c.base:
        rep.add("base_match", False, {"problem": "coalgebra base differs from the left base algebra"})
        return rep

    w = associativity_witness(A.product, L, L, L)
    rep.add("left_action_associative", w is None, w and _labels(m, w, "AAM"))
    w = associativity_witness(R, R, B.product, R)
    rep.add("right_action_associative", w is None, w and _labels(m, w, "MBB"))
    w = associativity_witness(L, R, R, L)
    rep.add("actions_commute", w is None, w and _labels(m, w, "AMB"))

    ua = A.embed({x: ONE for x in range(A.base.dim)})
    ub = B.embed({z: ONE for z in range(B.base.dim)})
    bad = next((k for k in range(m.dim) if L(ua, {k: ONE}) != {k: ONE} or R({k: ONE}, ub) != {k: ONE}), None)
    rep.add("locally_unitary", bad is None, bad is not None and {"element": m.labels[bad]})

    check_coalgebra(c, rep)
    ll = m.ll

    witness = None
    for k in range(m.dim):
        for z, r in enumerate(m.right_projectors):
            col = r.column_vectors.__getitem__
            if ll.project(tmap(c.comult[k], col, None)) != ll.project(tmap(c.comult[k], None, col)):
                witness = {"element": m.labels[k], "point": B.base.points[z]}
                break
        if witness:
            break
    rep.add("axiom_i", witness is None, witness)

    witness = None
    for k in range(m.dim):
        for j in range(B.dim):
            if c.eps(R.on_basis(k, j)) != c.eps(R({k: ONE}, B.embed(B.coalgebra.counit[j]))):
                witness = {"side": "right", "pair": [m.labels[k], B.labels[j]]}
                break
        if witness:
            break
    if witness is None:
        for i in range(A.dim):
            for k in range(m.dim):
                if c.eps(L.on_basis(i, k)) != A.coalgebra.eps(A.mul({i: ONE}, A.embed(c.counit[k]))):
                    witness = {"side": "left", "pair": [A.labels[i], m.labels[k]]}
                    break
            if witness:
                break
    rep.add("axiom_ii", witness is None, witness)

    witness = None
    for i in range(A.dim):
        for k in range(m.dim):
            lhs = c.delta(L.on_basis(i, k))
            rhs = componentwise(A.coalgebra.comult[i], c.comult[k], L, L)
            if ll.project(lhs) != ll.project(rhs):
                witness = {"side": "left", "pair": [A.labels[i], m.labels[k]]}
                break
        if witness:
            break
    if witness is None:
        for k in range(m.dim):
            for j in range(B.dim):
                lhs = c.delta(R.on_basis(k, j))
                rhs = componentwise(c.comult[k], B.coalgebra.comult[j], R, R)
                if ll.project(lhs) != ll.project(rhs):
                    witness = {"side": "right", "pair": [m.labels[k], B.labels[j]]}
                    break
            if witness:
                break
    rep.add("axiom_iii", witness is None, witness)
    return rep


def delta_bar_domain(m: PrincipalBimodule) -> BlockSpace:
    """M (x)_{B0} B as the block sum of M e_z (x) e_z B."""
    B = m.right_alg
    return BlockSpace([(z, r, l) for z, (r, l) in enumerate(zip(m.right_projectors, B.coalgebra.projectors))])


def check_principal_bimodule(m: PrincipalBimodule) -> Report:
    rep = Report("principal_bimodule")
    c = m.coalgebra
    eps = SparseMatrix.from_columns(list(c.counit), c.base.dim)
    r = eps.rank()
    rep.add("counit_surjective", r == c.base.dim, {"rank": r, "base_points": c.base.dim})
    domain = delta_bar_domain(m)
    mat = delta_bar_matrix(c, m.right_action, domain)
    w = bijectivity_witness(mat, domain, m.ll, (m.labels, m.right_alg.labels), (m.labels, m.labels))
    rep.add("delta_bar_bijective", w is None, w)
    rep.derived["delta_bar_shape"] = [mat.rows, mat.cols]
    return rep


# -- tensor products -------------------------------------------------------

@dataclass
class BalancedTensor:
    """M (x)_B N realized as a quotient of V = sum_z M e_z (x) e_z N.

    The quotient basis is the set of V coordinates that are not pivots of the
    reduced echelon form of the balancing relations.
    """

    space: BlockSpace
    relations: Echelon
    free: list
    position: dict

    def quotient(self, t: Mapping) -> Vector:
        r = self.relations.reduce(self.space.coords(t))
        return {self.position[i]: c for i, c in r.items()}

    def lift(self, k: int) -> dict:
        return self.space.element(self.free[k])


def _balancing_relations(m: PrincipalBimodule, n: PrincipalBimodule, space: BlockSpace) -> Echelon:
    B = m.right_alg
    R, L = m.right_action, n.left_action
    ech = Echelon()
    m_cols = {}
    n_cols = {}
    for z, (pr, pl) in enumerate(zip(space.left, space.right)):
        m_cols[z] = [i for i, col in enumerate(pr.column_vectors) if col]
        n_cols[z] = [j for j, col in enumerate(pl.column_vectors) if col]

    def blocks_of(v, projs):
        return [z for z, p in enumerate(projs) if p.apply(v)]

    triples = set()
    for (i, b), mb in R.table.items():
        for z in blocks_of(mb, space.left):
            for j in n_cols[z]:
                triples.add((i, b, j))
    for (b, j), bn in L.table.items():
        for z in blocks_of(bn, space.right):
            for i in m_cols[z]:
                triples.add((i, b, j))
    for i, b, j in sorted(triples):
        left = outer(R.on_basis(i, b), {j: ONE})
        right = outer({i: ONE}, L.on_basis(b, j))
        rel = space.coords(left)
        axpy(rel, space.coords(right), -ONE)
        if rel:
            ech.add(rel)
    return ech


def _tensor_labels(m, n, space, free):
    raw = []
    for v in free:
        z, p, q = space.pivot_pair(v)
        raw.append((tensor_label(m.labels[p], n.labels[q]), m.right_alg.base.points[z]))
    counts = {}
    for lab, _ in raw:
        counts[lab] = counts.get(lab, 0) + 1
    return [lab if counts[lab] == 1 else f"{lab}@{z}" for lab, z in raw]


def tensor_bimodules_detailed(m: PrincipalBimodule, n: PrincipalBimodule, over_base: bool = False):
    """M (x)_B N (or M (x)_{B0} N when ``over_base``) with its quotient data."""
    if m.right_alg != n.left_alg:
        raise IncompatibleBimodules("right algebroid of the first bimodule differs from left algebroid of the second")
    A, C = m.left_alg, n.right_alg
    space = BlockSpace([(z, r, l) for z, (r, l) in enumerate(zip(m.right_projectors, n.coalgebra.projectors))])
    ech = Echelon() if over_base else _balancing_relations(m, n, space)
    free = [v for v in range(space.dim) if v not in ech.pivots]
    bt = BalancedTensor(space, ech, free, {v: k for k, v in enumerate(free)})
    labels = _tensor_labels(m, n, space, free)
    dim = len(free)

    qcache: dict = {}

    def q_pair(i, j):
        if (i, j) not in qcache:
            qcache[(i, j)] = bt.quotient({(i, j): ONE})
        return qcache[(i, j)]

    def delta_of(u, w):
        acc: dict = {}
        du, dw = m.coalgebra.delta(u), n.coalgebra.delta(w)
        for (i, j), c1 in du.items():
            for (k, l), c2 in dw.items():
                left = q_pair(i, k)
                if not left:
                    continue
                right = q_pair(j, l)
                if right:
                    tensor_axpy(acc, outer(left, right), c1 * c2)
        return acc

    def eps_of(u, w):
        return m.coalgebra.eps(m.right(u, m.right_alg.embed(n.coalgebra.eps(w))))

    def parts(v):
        blk, a, b = space.locate(v)
        return space.left_images[blk].basis[a], space.right_images[blk].basis[b]

    act_left, act_right, comult, counit = {}, {}, [], []
    for k, v in enumerate(free):
        u, w = parts(v)
        for i in range(A.dim):
            img = bt.quotient(outer(m.left({i: ONE}, u), w))
            if img:
                act_left[(i, k)] = img
        for j in range(C.dim):
            img = bt.quotient(outer(u, n.right(w, {j: ONE})))
            if img:
                act_right[(k, j)] = img
        comult.append(delta_of(u, w))
        counit.append(eps_of(u, w))
    t = make_bimodule(A, C, labels, act_left, act_right, comult, counit)

    for p, row in sorted(ech.pivots.items()):
        d_acc: dict = {}
        e_acc: Vector = {}
        for v, c in row.items():
            u, w = parts(v)
            tensor_axpy(d_acc, delta_of(u, w), c)
            axpy(e_acc, eps_of(u, w), c)
        if t.ll.project(d_acc) or e_acc:
            raise IncompatibleBimodules(f"structure maps not well defined on the balanced tensor (relation {p})")
    return t, bt


def tensor_bimodules(m: PrincipalBimodule, n: PrincipalBimodule, over_base: bool = False) -> PrincipalBimodule:
    return tensor_bimodules_detailed(m, n, over_base)[0]


# -- homomorphisms ---------------------------------------------------------

@dataclass(frozen=True)
class BimoduleMap:
    source: PrincipalBimodule
    target: PrincipalBimodule
    matrix: SparseMatrix


def _base_map(src: BaseAlgebra, tgt: BaseAlgebra):
    if sorted(src.points) != sorted(tgt.points):
        return None
    return {i: tgt.index[x] for i, x in enumerate(src.points)}


def _remap(f: Mapping, base_map: Mapping) -> dict:
    return {base_map[x]: c for x, c in f.items()}


def check_bimodule_hom(theta: BimoduleMap, left_map: SparseMatrix | None = None,
                       right_map: SparseMatrix | None = None, iso: bool = False) -> Report:
    """Verify that theta intertwines both actions and the coalgebra structure.

    ``left_map``/``right_map`` identify the source algebroids with the target
    ones when they differ; by default they must coincide.
    """
    rep = Report("bimodule_iso" if iso else "bimodule_hom")
    s, t, mat = theta.source, theta.target, theta.matrix
    if mat.rows != t.dim or mat.cols != s.dim:
        rep.add("shape", False, {"matrix": [mat.rows, mat.cols], "expected": [t.dim, s.dim]})
        return rep
    bmap = _base_map(s.coalgebra.base, t.coalgebra.base)
    ok_alg = (left_map is not None or s.left_alg == t.left_alg) and (right_map is not None or s.right_alg == t.right_alg)
    rep.add("shape", bmap is not None and ok_alg, {"problem": "base points or algebroids do not match"})
    if bmap is None or not ok_alg:
        return rep
    cols = mat.column_vectors
    lcols = left_map.column_vectors if left_map is not None else [{i: ONE} for i in range(s.left_alg.dim)]
    rcols = right_map.column_vectors if right_map is not None else [{j: ONE} for j in range(s.right_alg.dim)]

    witness = None
    for i in range(s.left_alg.dim):
        for k in range(s.dim):
            if mat.apply(s.left_action.on_basis(i, k)) != t.left(lcols[i], cols[k]):
                witness = [s.left_alg.labels[i], s.labels[k]]
                break
        if witness:
            break
    rep.add("left_linear", witness is None, witness)

    witness = None
    for k in range(s.dim):
        for j in range(s.right_alg.dim):
            if mat.apply(s.right_action.on_basis(k, j)) != t.right(cols[k], rcols[j]):
                witness = [s.labels[k], s.right_alg.labels[j]]
                break
        if witness:
            break
    rep.add("right_linear", witness is None, witness)

    bad = next((k for k in range(s.dim) if t.coalgebra.eps(cols[k]) != _remap(s.coalgebra.counit[k], bmap)), None)
    rep.add("counit", bad is None, bad is not None and {"element": s.labels[bad]})

    col = cols.__getitem__
    bad = next((k for k in range(s.dim)
                if t.ll.project(tmap(s.coalgebra.comult[k], col, col)) != t.ll.project(t.coalgebra.delta(cols[k]))),
               None)
    rep.add("comult", bad is None, bad is not None and {"element": s.labels[bad]})

    if iso:
        r = mat.rank()
        rep.add("bijective", r == s.dim == t.dim, {"rank": r, "dims": [s.dim, t.dim]})
    return rep


# -- the comparison isomorphism for bundles ---------------------------------

def omega_iso(p: PrincipalBibundle, q: PrincipalBibundle, left_alg=None, middle_alg=None, right_alg=None):
    """The map C(P) (x)_{C(H)} C(Q) -> C(P (x)_H Q), d_p (x) d_q -> d_[p,q].

    Returns (BimoduleMap, Report); the report verifies it is an isomorphism.
    """
    classes = tensor_classes(p, q)
    A = left_alg or convolution_algebroid(p.left)
    B = middle_alg or convolution_algebroid(p.right)
    C = right_alg or convolution_algebroid(q.right)
    m = convolution_bimodule(p, A, B)
    n = convolution_bimodule(q, B, C)
    t, bt = tensor_bimodules_detailed(m, n)
    pq = tensor_bibundles(p, q)
    target = convolution_bimodule(pq, A, C)
    tidx = pq.index
    cols = []
    for k in range(t.dim):
        acc: Vector = {}
        for (i, j), c in bt.lift(k).items():
            rep_pair = classes.get((p.points[i], q.points[j]))
            if rep_pair is None:
                continue
            axpy(acc, {tidx[tensor_label(*rep_pair)]: ONE}, c)
        cols.append(acc)
    theta = BimoduleMap(t, target, SparseMatrix.from_columns(cols, target.dim))
    rep = check_bimodule_hom(theta, iso=True)
    rep.subject = "omega"
    rep.derived["dim"] = t.dim
    rep.derived["points"] = len(pq.points)
    return theta, rep


# -- isomorphism search ----------------------------------------------------

MAX_GENERAL_SEARCH_DIM = 12
MAX_SEARCH_DIRECTIONS = 6


def find_bimodule_iso(m: PrincipalBimodule, n: PrincipalBimodule):
    """An isomorphism m -> n as a BimoduleMap, or None when none exists.

    Locally grouplike inputs are decided exactly through their spectral
    bundles. Otherwise the intertwiner space is searched with small
    coefficients; IsoUnknown is raised when that search is inconclusive.
    """
    if m.left_alg != n.left_alg or m.right_alg != n.right_alg or m.dim != n.dim:
        return None
    if m == n:
        return BimoduleMap(m, n, SparseMatrix.identity(m.dim))
    from .spectral import NotLocallyGrouplike, spectral_bundle, spectral_groupoid
    from .groupoid import find_equivariant_iso

    try:
        ga, gb = spectral_groupoid(m.left_alg), spectral_groupoid(m.right_alg)
        em = spectral_bundle(m, ga, gb)
        en = spectral_bundle(n, ga, gb)
    except (NotLocallyGrouplike, ValueError):
        em = None
    if em is not None:
        f = find_equivariant_iso(em.bundle, en.bundle)
        if f is None:
            return None
        src = [em.vectors[p] for p in em.bundle.points]
        dst = [en.vectors[f[p]] for p in em.bundle.points]
        theta = BimoduleMap(m, n, _map_from_images(src, dst, m.dim))
        if not check_bimodule_hom(theta, iso=True).ok:
            raise AssertionError("spectral isomorphism failed verification")
        return theta
    return _general_search(m, n)


def _map_from_images(src: list, dst: list, n: int) -> SparseMatrix:
    """The matrix X with X src[k] = dst[k]; src must be a basis."""
    s = SparseMatrix.from_columns(src, n)
    rows = []
    st = s.transpose()
    d = SparseMatrix.from_columns(dst, n)
    for r in range(n):
        # row r of X solves s^T x = (row r of D)
        x = solve_sparse(st, d.row_vectors[r])
        if x is None:
            raise ValueError("images are not given on a basis")
        rows.append(x)
    return SparseMatrix.from_rows(rows, n)


def _general_search(m: PrincipalBimodule, n: PrincipalBimodule):
    d = m.dim
    if d > MAX_GENERAL_SEARCH_DIM:
        raise LimitExceeded(f"general isomorphism search limited to dimension {MAX_GENERAL_SEARCH_DIM}")
    A, B = m.left_alg, m.right_alg
    var = lambda r, c: r * d + c  # noqa: E731

    def lin(v: Mapping, k: int) -> dict:
        # coefficients of (X v) as linear forms: row r -> {var(r, c): v_c}
        out: dict = {}
        for c, x in v.items():
            for r in range(d):
                out.setdefault(r, {})[var(r, c)] = x
        return out

    eqs, rhs = [], []

    def add_equal(lhs_forms: dict, rhs_forms: dict):
        for r in set(lhs_forms) | set(rhs_forms):
            e = dict(lhs_forms.get(r, {}))
            axpy(e, rhs_forms.get(r, {}), -ONE)
            if e:
                eqs.append(e)
                rhs.append(ZERO)

    for i in range(A.dim):
        for k in range(d):
            # X(a m) = a X(m): the right side is linear in column k of X
            lhs = lin(m.left_action.on_basis(i, k), k)
            right: dict = {}
            for c in range(d):
                img = n.left_action.on_basis(i, c)
                for r, x in img.items():
                    right.setdefault(r, {})[var(c, k)] = right.get(r, {}).get(var(c, k), ZERO) + x
            add_equal(lhs, right)
    for k in range(d):
        for j in range(B.dim):
            lhs = lin(m.right_action.on_basis(k, j), k)
            right = {}
            for c in range(d):
                img = n.right_action.on_basis(c, j)
                for r, x in img.items():
                    right.setdefault(r, {})[var(c, k)] = right.get(r, {}).get(var(c, k), ZERO) + x
            add_equal(lhs, right)
    base = m.coalgebra.base
    for k in range(d):
        for x in range(base.dim):
            e = {}
            for c in range(d):
                val = n.coalgebra.counit[c].get(x)
                if val:
                    e[var(c, k)] = val
            target = m.coalgebra.counit[k].get(x, ZERO)
            if e or target:
                eqs.append(e)
                rhs.append(target)
    big = SparseMatrix(len(eqs), d * d, {(i, v): c for i, e in enumerate(eqs) for v, c in e.items()})
    particular = solve_sparse(big, {i: c for i, c in enumerate(rhs) if c})
    if particular is None:
        return None
    homog = kernel(big).basis
    for coeffs in itertools.product((0, 1, -1), repeat=min(len(homog), MAX_SEARCH_DIRECTIONS)):
        sol = dict(particular)
        for c, h in zip(coeffs, homog):
            axpy(sol, h, c)
        mat = SparseMatrix(d, d, {(v // d, v % d): c for v, c in sol.items()})
        theta = BimoduleMap(m, n, mat)
        if check_bimodule_hom(theta, iso=True).ok:
            return theta
    raise IsoUnknown("no isomorphism among small combinations of the intertwiner basis")


# -- change of basis -------------------------------------------------------

def scramble_bimodule(m: PrincipalBimodule, seed: int, block: int = 3) -> tuple[PrincipalBimodule, SparseMatrix]:
    """The same bimodule in a random basis of M (algebroids untouched).

    Returns the new bimodule and T, whose columns are the new basis vectors
    in old coordinates.
    """
    n = m.dim
    t, t_inv = random_basis_change(n, seed, block)
    act_left = conjugate_bilinear(m.act_left, None, t, t_inv, m.left_alg.dim, n, n)
    act_right = conjugate_bilinear(m.act_right, t, None, t_inv, n, m.right_alg.dim, n)
    comult = conjugate_comult(m.coalgebra.comult, t, t_inv)
    counit = conjugate_counit(m.coalgebra.counit, t)
    labels = [f"m{i:0{len(str(n - 1))}d}" for i in range(n)]
    return make_bimodule(m.left_alg, m.right_alg, labels, act_left, act_right, comult, counit), t


def direct_sum(m: PrincipalBimodule, n: PrincipalBimodule) -> PrincipalBimodule:
    """Direct sum of two bimodules over the same algebroids."""
    if m.left_alg != n.left_alg or m.right_alg != n.right_alg:
        raise IncompatibleBimodules("direct sum needs equal algebroids")
    off = m.dim

    def shift(v):
        return {i + off: c for i, c in v.items()}

    act_left = dict(m.act_left)
    act_left.update({(a, k + off): shift(v) for (a, k), v in n.act_left.items()})
    act_right = dict(m.act_right)
    act_right.update({(k + off, b): shift(v) for (k, b), v in n.act_right.items()})
    comult = list(m.coalgebra.comult) + [{(i + off, j + off): c for (i, j), c in t.items()} for t in n.coalgebra.comult]
    counit = list(m.coalgebra.counit) + list(n.coalgebra.counit)
    labels = list(m.labels) + [f"{lab}'" for lab in n.labels]
    return make_bimodule(m.left_alg, m.right_alg, labels, act_left, act_right, comult, counit)
