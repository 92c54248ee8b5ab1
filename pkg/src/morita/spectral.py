"""Grouplike elements, spectral groupoids and spectral bundles.

Over a finite discrete base the localization of a coalgebra C at a point x
is its block e_x C: if f0 is a base function with f0(x) = 1 and f0 c = 0,
then e_x c = e_x f0 c = 0, and conversely e_x c = 0 is witnessed by
f0 = e_x. So C/N_x(C) is identified with e_x C through the projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .algebroid import Coalgebra, HopfAlgebroid, check_bialgebroid, check_hopf, check_principal_algebroid, convolution_algebroid
from .bimodule import (
    BimoduleMap,
    PrincipalBimodule,
    check_bimodule_hom,
    check_preprincipal,
    check_principal_bimodule,
    convolution_bimodule,
)
from .exactla import ONE, ZERO, NotCommuting, NotSplitRational, SparseMatrix, Subspace, Vector, axpy, fmt, joint_eigenbasis, scale
from .groupoid import FiniteGroupoid, PrincipalBibundle, validate_bibundle, validate_groupoid
from .report import Report
from .tensors import outer, tensor_axpy, tmap


class NotCocommutative(ValueError):
    def __init__(self, witness):
        super().__init__(f"local coalgebra is not cocommutative: {witness}")
        self.witness = witness


class NotLocallyGrouplike(ValueError):
    """Grouplike extraction failed; ``reason`` says how."""

    def __init__(self, reason: str, witness):
        super().__init__(f"{reason}: {witness}")
        self.reason = reason
        self.witness = witness


class SpectralError(ValueError):
    def __init__(self, message, witness):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class MomentUndefined(SpectralError):
    pass


class SourceUndefined(SpectralError):
    pass


class ProductNotGrouplike(SpectralError):
    pass


class ActionNotGrouplike(SpectralError):
    pass


class NotAHomomorphism(SpectralError):
    pass


def _key(v: Mapping) -> tuple:
    return tuple(sorted(v.items()))


# -- localization ----------------------------------------------------------

@dataclass(frozen=True)
class LocalCoalgebra:
    parent: Coalgebra
    point: int
    basis: tuple
    comult: tuple
    counit: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def point_label(self) -> str:
        return self.parent.base.points[self.point]

    def to_ambient(self, coords: Mapping) -> Vector:
        acc: Vector = {}
        for c, x in coords.items():
            axpy(acc, self.basis[c], x)
        return acc


def localize(c: Coalgebra, x) -> LocalCoalgebra:
    """The block e_x C with the induced comultiplication and counit."""
    if not isinstance(x, int):
        x = c.base.index[x]
    p = c.projectors[x]
    space = Subspace.span(p.column_vectors, c.dim)
    piv = {q: a for a, q in enumerate(space.pivots)}
    comult, counit = [], []
    for u in space.basis:
        block = c.ll.project_blocks(c.delta(u)).get(x, {})
        local = {}
        for (i, j), val in block.items():
            if i in piv and j in piv:
                local[(piv[i], piv[j])] = val
        comult.append(local)
        counit.append(c.eps(u).get(x, ZERO))
    return LocalCoalgebra(c, x, space.basis, tuple(comult), tuple(counit))


def translation_operators(lc: LocalCoalgebra) -> list[SparseMatrix]:
    """T_k(c) = (id (x) lambda_k) Delta_x(c) for the dual basis lambda_k."""
    d = lc.dim
    entries = [dict() for _ in range(d)]
    for col, t in enumerate(lc.comult):
        for (i, k), val in t.items():
            entries[k][(i, col)] = val
    return [SparseMatrix(d, d, e) for e in entries]


def grouplikes(lc: LocalCoalgebra) -> list[Vector]:
    """The grouplike elements of a local coalgebra spanned by them.

    Returned in ambient coordinates, ordered by their local coordinate tuples
    (descending, so a coordinate basis comes out in basis order).
    """
    d = lc.dim
    if d == 0:
        return []
    for col, t in enumerate(lc.comult):
        for (i, k), val in t.items():
            if t.get((k, i), ZERO) != val:
                raise NotCocommutative({"point": lc.point_label, "local_element": col, "pair": [i, k]})
    ops = translation_operators(lc)
    try:
        pairs = joint_eigenbasis(ops)
    except NotSplitRational as e:
        raise NotLocallyGrouplike(e.reason, {"point": lc.point_label, **e.witness}) from e
    except NotCommuting as e:
        raise NotLocallyGrouplike("translations_do_not_commute", {"point": lc.point_label, "operators": list(e.witness)}) from e
    out = []
    for v, _ in pairs:
        e = sum((lc.counit[c] * x for c, x in v.items()), ZERO)
        if not e:
            raise NotLocallyGrouplike("eps_degenerate", {"point": lc.point_label, "vector": {str(c): x for c, x in v.items()}})
        z = scale(v, 1 / e)
        dz: dict = {}
        for c, x in z.items():
            tensor_axpy(dz, lc.comult[c], x)
        if dz != outer(z, z):
            raise NotLocallyGrouplike("verification", {"point": lc.point_label, "vector": {str(c): x for c, x in z.items()}})
        out.append(z)
    out.sort(key=lambda z: [z.get(c, ZERO) for c in range(d)], reverse=True)
    return [lc.to_ambient(z) for z in out]


def all_grouplikes(c: Coalgebra) -> list[list[Vector]]:
    return [grouplikes(localize(c, x)) for x in range(c.base.dim)]


def _failure(e: Exception) -> dict:
    w = {"error": type(e).__name__}
    if isinstance(e, NotLocallyGrouplike):
        w["reason"] = e.reason
    w["detail"] = getattr(e, "witness", str(e))
    return w


def _grouplike_basis_check(c: Coalgebra, rep: Report):
    found, counts, witness = [], {}, None
    for x in range(c.base.dim):
        label = c.base.points[x]
        try:
            gl = grouplikes(localize(c, x))
        except (NotLocallyGrouplike, NotCocommutative) as e:
            witness = _failure(e)
            found = None
            break
        block = len(Subspace.span(c.projectors[x].column_vectors, c.dim).basis)
        if len(gl) != block:
            witness = {"point": label, "grouplikes": len(gl), "block_dim": block}
            found = None
            break
        counts[label] = len(gl)
        found.append(gl)
    rep.add("grouplike_basis", witness is None, witness)
    rep.derived["grouplikes"] = counts
    return found


def check_locally_grouplike_algebroid(a: HopfAlgebroid) -> Report:
    rep = Report("locally_grouplike_algebroid")
    found = _grouplike_basis_check(a.coalgebra, rep)
    if found is None:
        return rep
    keys = {_key(z) for gl in found for z in gl}
    s_counts, witness = {}, None
    for x, gl in enumerate(found):
        closed = 0
        for z in gl:
            if a.antipode is not None and _key(a.S(z)) in keys:
                closed += 1
            elif witness is None:
                witness = {"point": a.base.points[x], "grouplike": {a.labels[i]: c for i, c in sorted(z.items())}}
        s_counts[a.base.points[x]] = closed
    rep.add("antipode_closed", witness is None, witness)
    rep.derived["s_closed_grouplikes"] = s_counts
    return rep


def check_locally_grouplike_bimodule(m: PrincipalBimodule) -> Report:
    rep = Report("locally_grouplike_bimodule")
    _grouplike_basis_check(m.coalgebra, rep)
    return rep


# -- spectral groupoid -----------------------------------------------------

@dataclass(frozen=True)
class SpectralGroupoid:
    groupoid: FiniteGroupoid
    vectors: dict

    @property
    def lookup(self) -> dict:
        return {_key(v): g for g, v in self.vectors.items()}


def _name(v: Mapping, labels, fallback: str) -> str:
    if len(v) == 1:
        (i, c), = v.items()
        if c == ONE:
            return labels[i]
    return fallback


def spectral_groupoid(a: HopfAlgebroid) -> SpectralGroupoid:
    """Arrows are the grouplikes of the blocks e_y A; y is their target."""
    found = all_grouplikes(a.coalgebra)
    pts = a.base.points
    vectors, tgt = {}, {}
    for y, gl in enumerate(found):
        for k, z in enumerate(gl):
            lab = _name(z, a.labels, f"g[{pts[y]}.{k}]")
            vectors[lab] = z
            tgt[lab] = pts[y]
    if len(vectors) != sum(len(gl) for gl in found):
        raise SpectralError("arrow labels collide", sorted(vectors))
    lookup = {_key(v): g for g, v in vectors.items()}

    src = {}
    for g, z in vectors.items():
        hits = []
        for x, e in enumerate(a.a0_embedding):
            prod = a.mul(z, e)
            if prod == z:
                hits.append(pts[x])
            elif prod:
                raise SourceUndefined("indicator neither fixes nor kills the arrow", {"arrow": g, "point": pts[x]})
        if len(hits) != 1:
            raise SourceUndefined("no unique source", {"arrow": g, "sources": hits})
        src[g] = hits[0]

    by_target: dict = {}
    for g in vectors:
        by_target.setdefault(tgt[g], []).append(g)
    compose = {}
    for g2, z2 in vectors.items():
        for g1 in by_target.get(src[g2], []):
            prod = a.mul(z2, vectors[g1])
            g = lookup.get(_key(prod))
            if g is None:
                raise ProductNotGrouplike("product of grouplikes is not grouplike", [g2, g1])
            compose[(g2, g1)] = g

    if a.antipode is None:
        raise SpectralError("no antipode", "inverse arrows need S")
    inv = {}
    for g, z in vectors.items():
        h = lookup.get(_key(a.S(z)))
        if h is None:
            raise ProductNotGrouplike("antipode of a grouplike is not grouplike", [g])
        inv[g] = h
    unit = {}
    for x, e in enumerate(a.a0_embedding):
        u = lookup.get(_key(e))
        if u is None:
            raise SpectralError("embedded indicator is not grouplike", pts[x])
        unit[pts[x]] = u
    g = FiniteGroupoid(pts, tuple(vectors), src, tgt, compose, inv, unit)
    rep = validate_groupoid(g)
    if not rep.ok:
        raise SpectralError("reconstructed groupoid is invalid", [c.name for c in rep.failures()])
    return SpectralGroupoid(g, vectors)


# -- spectral bundle -------------------------------------------------------

@dataclass(frozen=True)
class SpectralBundle:
    bundle: PrincipalBibundle
    vectors: dict
    left: SpectralGroupoid
    right: SpectralGroupoid

    @property
    def lookup(self) -> dict:
        return {_key(v): p for p, v in self.vectors.items()}


def moment_map(m: PrincipalBimodule, vectors: Mapping) -> dict:
    """phi(p) = the unique right base point z with p e_z = p."""
    pts = m.right_alg.base.points
    out = {}
    for p, z in vectors.items():
        hits = []
        for w, e in enumerate(m.right_alg.a0_embedding):
            prod = m.right(z, e)
            if prod == z:
                hits.append(pts[w])
            elif prod:
                raise MomentUndefined("indicator neither fixes nor kills the point", {"point": p, "base": pts[w]})
        if len(hits) != 1:
            raise MomentUndefined("no unique moment value", {"point": p, "values": hits})
        out[p] = hits[0]
    return out


def spectral_bundle(m: PrincipalBimodule, left: SpectralGroupoid | None = None,
                    right: SpectralGroupoid | None = None) -> SpectralBundle:
    left = left or spectral_groupoid(m.left_alg)
    right = right or spectral_groupoid(m.right_alg)
    found = all_grouplikes(m.coalgebra)
    pts = m.left_alg.base.points
    vectors, pi = {}, {}
    for x, gl in enumerate(found):
        for k, z in enumerate(gl):
            lab = _name(z, m.labels, f"p[{pts[x]}.{k}]")
            vectors[lab] = z
            pi[lab] = pts[x]
    if len(vectors) != sum(len(gl) for gl in found):
        raise SpectralError("point labels collide", sorted(vectors))
    phi = moment_map(m, vectors)
    lookup = {_key(v): p for p, v in vectors.items()}
    G, H = left.groupoid, right.groupoid
    act_left, act_right = {}, {}
    for p, z in vectors.items():
        for g in G.arrows_from[pi[p]]:
            q = lookup.get(_key(m.left(left.vectors[g], z)))
            if q is None:
                raise ActionNotGrouplike("left action leaves the grouplikes", [g, p])
            act_left[(g, p)] = q
        for h in H.arrows_to[phi[p]]:
            q = lookup.get(_key(m.right(z, right.vectors[h])))
            if q is None:
                raise ActionNotGrouplike("right action leaves the grouplikes", [p, h])
            act_right[(p, h)] = q
    bundle = PrincipalBibundle(G, H, tuple(vectors), pi, phi, act_left, act_right)
    rep = validate_bibundle(bundle)
    if not rep.ok:
        raise SpectralError("reconstructed bundle is invalid", [c.name for c in rep.failures()])
    return SpectralBundle(bundle, vectors, left, right)


# -- canonical maps --------------------------------------------------------

def canonical_arrow_map(g: FiniteGroupoid, sg: SpectralGroupoid) -> dict:
    """g -> the spectral arrow whose grouplike is the delta function of g."""
    lookup = sg.lookup
    return {a: lookup.get(((i, ONE),)) for i, a in enumerate(g.arrows)}


def compare_groupoids(g: FiniteGroupoid, h: FiniteGroupoid, f: Mapping) -> Report:
    """Check that the arrow bijection f (objects by label) is an isomorphism g -> h."""
    rep = Report("groupoid_iso")
    bij = None not in f.values() and sorted(f.values()) == sorted(h.arrows) and len(f) == len(g.arrows)
    rep.add("arrow_bijection", bij, {"missing": [a for a, b in f.items() if b is None][:1]})
    if not bij:
        return rep
    bad = next((a for a in g.arrows if h.src[f[a]] != g.src[a] or h.tgt[f[a]] != g.tgt[a]), None)
    rep.add("anchors", bad is None, bad)
    bad = next(([b, a] for (b, a), ba in sorted(g.compose.items()) if h.compose.get((f[b], f[a])) != f[ba]), None)
    if bad is None and len(h.compose) != len(g.compose):
        bad = {"table_sizes": [len(g.compose), len(h.compose)]}
    rep.add("composition_table", bad is None, bad)
    bad = next((a for a in g.arrows if h.inv[f[a]] != f[g.inv[a]]), None)
    rep.add("inverses", bad is None, bad)
    bad = next((x for x in g.objects if h.unit.get(x) != f[g.unit[x]]), None)
    rep.add("units", bad is None, bad)
    return rep


def check_point_map(p: PrincipalBibundle, q: PrincipalBibundle, f: Mapping, alpha: Mapping, beta: Mapping,
                    rep: Report | None = None, bijective: bool = True) -> Report:
    """Equivariance of f: P -> Q along arrow identifications alpha (left), beta (right)."""
    rep = rep or Report("point_map")
    total = all(f.get(a) in q.index for a in p.points)
    ok = total and (not bijective or sorted(f[a] for a in p.points) == list(q.points))
    rep.add("bijection" if bijective else "total", ok, {"points": [len(p.points), len(q.points)]})
    if not ok:
        return rep
    bad = next((a for a in p.points if q.pi[f[a]] != p.pi[a] or q.phi[f[a]] != p.phi[a]), None)
    rep.add("anchors", bad is None, bad)
    bad = next(([g, a] for (g, a), ga in sorted(p.act_left.items()) if q.act_left.get((alpha[g], f[a])) != f[ga]), None)
    rep.add("left_equivariant", bad is None, bad)
    bad = next(([a, h] for (a, h), ah in sorted(p.act_right.items()) if q.act_right.get((f[a], beta[h])) != f[ah]), None)
    rep.add("right_equivariant", bad is None, bad)
    return rep


@dataclass
class PointIso:
    mapping: dict
    target: SpectralBundle
    report: Report


def phi_iso(p: PrincipalBibundle) -> PointIso:
    """P -> spectral_bundle(C(P)), p -> the grouplike delta_p."""
    a, b = convolution_algebroid(p.left), convolution_algebroid(p.right)
    m = convolution_bimodule(p, a, b)
    ga, gb = spectral_groupoid(a), spectral_groupoid(b)
    e = spectral_bundle(m, ga, gb)
    lookup = e.lookup
    f = {q: lookup.get(((i, ONE),)) for i, q in enumerate(p.points)}
    alpha, beta = canonical_arrow_map(p.left, ga), canonical_arrow_map(p.right, gb)
    rep = Report("phi")
    rep.extend(compare_groupoids(p.left, ga.groupoid, alpha), "left_groupoid.")
    rep.extend(compare_groupoids(p.right, gb.groupoid, beta), "right_groupoid.")
    if rep.ok:
        check_point_map(p, e.bundle, f, alpha, beta, rep)
    return PointIso(f, e, rep)


@dataclass
class AlgebraIso:
    matrix: SparseMatrix
    report: Report


def check_algebroid_map(f: SparseMatrix, a: HopfAlgebroid, b: HopfAlgebroid, iso: bool = True) -> Report:
    """Verify that f: A -> B is a (bijective) homomorphism of Hopf algebroids."""
    rep = Report("algebroid_map")
    if f.rows != b.dim or f.cols != a.dim or sorted(a.base.points) != sorted(b.base.points):
        rep.add("shape", False, {"matrix": [f.rows, f.cols], "dims": [a.dim, b.dim]})
        return rep
    bmap = {i: b.base.index[x] for i, x in enumerate(a.base.points)}
    cols = f.column_vectors
    bad = next(([a.labels[i], a.labels[j]] for i in range(a.dim) for j in range(a.dim)
                if f.apply(a.product.on_basis(i, j)) != b.mul(cols[i], cols[j])), None)
    rep.add("multiplicative", bad is None, bad)
    bad = next((a.base.points[x] for x, e in enumerate(a.a0_embedding) if f.apply(e) != b.a0_embedding[bmap[x]]), None)
    rep.add("base_embedding", bad is None, bad)
    bad = next((a.labels[k] for k in range(a.dim)
                if b.coalgebra.eps(cols[k]) != {bmap[x]: c for x, c in a.coalgebra.counit[k].items()}), None)
    rep.add("counit", bad is None, bad)
    col = cols.__getitem__
    bad = next((a.labels[k] for k in range(a.dim)
                if b.ll.project(tmap(a.coalgebra.comult[k], col, col)) != b.ll.project(b.coalgebra.delta(cols[k]))), None)
    rep.add("comult", bad is None, bad)
    if a.antipode is not None and b.antipode is not None:
        bad = next((a.labels[k] for k in range(a.dim) if f.apply(a.S({k: ONE})) != b.S(cols[k])), None)
        rep.add("antipode", bad is None, bad)
    if iso:
        r = f.rank()
        rep.add("bijective", r == a.dim == b.dim, {"rank": r, "dims": [a.dim, b.dim]})
    return rep


def algebroid_psi(a: HopfAlgebroid, sg: SpectralGroupoid | None = None) -> AlgebraIso:
    """C(G_sp(A)) -> A, delta_g -> the grouplike g."""
    sg = sg or spectral_groupoid(a)
    c = convolution_algebroid(sg.groupoid)
    mat = SparseMatrix.from_columns([sg.vectors[g] for g in sg.groupoid.arrows], a.dim)
    return AlgebraIso(mat, check_algebroid_map(mat, c, a))


@dataclass
class PsiResult:
    map: BimoduleMap
    bundle: SpectralBundle
    report: Report


def psi_iso(m: PrincipalBimodule, e: SpectralBundle | None = None) -> PsiResult:
    """C(spectral_bundle(M)) -> M, delta_p -> the grouplike p."""
    e = e or spectral_bundle(m)
    ca = convolution_algebroid(e.left.groupoid)
    cb = convolution_algebroid(e.right.groupoid)
    c = convolution_bimodule(e.bundle, ca, cb)
    mat = SparseMatrix.from_columns([e.vectors[p] for p in e.bundle.points], m.dim)
    psi_a = SparseMatrix.from_columns([e.left.vectors[g] for g in e.left.groupoid.arrows], m.left_alg.dim)
    psi_b = SparseMatrix.from_columns([e.right.vectors[g] for g in e.right.groupoid.arrows], m.right_alg.dim)
    theta = BimoduleMap(c, m, mat)
    rep = check_bimodule_hom(theta, psi_a, psi_b, iso=True)
    rep.subject = "psi"
    return PsiResult(theta, e, rep)


def theta_star(theta: BimoduleMap, source: SpectralBundle | None = None,
               target: SpectralBundle | None = None) -> dict:
    """The point map p -> theta(p) between spectral bundles, verified equivariant."""
    hom = check_bimodule_hom(theta)
    if not hom.ok:
        bad = hom.failures()[0]
        raise NotAHomomorphism(bad.name, bad.witness)
    source = source or spectral_bundle(theta.source)
    target = target or spectral_bundle(theta.target, source.left, source.right)
    lookup = target.lookup
    f = {}
    for p, z in source.vectors.items():
        q = lookup.get(_key(theta.matrix.apply(z)))
        if q is None:
            raise NotAHomomorphism("image of a grouplike is not grouplike", p)
        f[p] = q
    ident_l = {g: g for g in source.left.groupoid.arrows}
    ident_r = {h: h for h in source.right.groupoid.arrows}
    rep = check_point_map(source.bundle, target.bundle, f, ident_l, ident_r, bijective=False)
    if not rep.ok:
        bad = rep.failures()[0]
        raise NotAHomomorphism(bad.name, bad.witness)
    return f


def pushforward(f: Mapping, source: PrincipalBibundle, target: PrincipalBibundle) -> SparseMatrix:
    """The matrix of delta_p -> delta_f(p)."""
    return SparseMatrix(len(target.points), len(source.points),
                        {(target.index[f[p]], i): ONE for i, p in enumerate(source.points)})


# -- round trips -----------------------------------------------------------

def _guarded(rep: Report, name: str, fn):
    try:
        return fn()
    except (NotLocallyGrouplike, NotCocommutative, SpectralError) as e:
        rep.add(name, False, _failure(e))
        return None


def roundtrip(subject) -> Report:
    """Run the reconstruction cycle matching the subject's kind."""
    if isinstance(subject, FiniteGroupoid):
        return _roundtrip_groupoid(subject)
    if isinstance(subject, PrincipalBibundle):
        return _roundtrip_bibundle(subject)
    if isinstance(subject, HopfAlgebroid):
        return _roundtrip_algebroid(subject)
    if isinstance(subject, PrincipalBimodule):
        return _roundtrip_bimodule(subject)
    raise TypeError(f"cannot round-trip {type(subject).__name__}")


def _roundtrip_groupoid(g: FiniteGroupoid) -> Report:
    rep = Report("roundtrip_groupoid")
    rep.extend(validate_groupoid(g), "input.")
    if not rep.ok:
        return rep
    a = convolution_algebroid(g)
    for sub in (check_bialgebroid(a), check_hopf(a), check_principal_algebroid(a), check_locally_grouplike_algebroid(a)):
        rep.extend(sub, f"{sub.subject}.")
    sg = _guarded(rep, "spectral_groupoid", lambda: spectral_groupoid(a))
    if sg is None:
        return rep
    rep.extend(compare_groupoids(g, sg.groupoid, canonical_arrow_map(g, sg)), "canonical.")
    rep.derived["arrows"] = len(g.arrows)
    rep.derived["objects"] = len(g.objects)
    return rep


def _roundtrip_bibundle(p: PrincipalBibundle) -> Report:
    rep = Report("roundtrip_bibundle")
    rep.extend(validate_bibundle(p), "input.")
    if not rep.ok:
        return rep
    m = convolution_bimodule(p)
    for sub in (check_preprincipal(m), check_principal_bimodule(m), check_locally_grouplike_bimodule(m)):
        rep.extend(sub, f"{sub.subject}.")
    res = _guarded(rep, "phi", lambda: phi_iso(p))
    if res is None:
        return rep
    rep.extend(res.report, "phi.")
    rep.derived["phi"] = dict(sorted(res.mapping.items()))
    return rep


def _roundtrip_algebroid(a: HopfAlgebroid) -> Report:
    rep = Report("roundtrip_algebroid")
    for sub in (check_bialgebroid(a), check_hopf(a), check_principal_algebroid(a), check_locally_grouplike_algebroid(a)):
        rep.extend(sub, f"{sub.subject}.")
    if not rep.ok:
        return rep
    sg = _guarded(rep, "spectral_groupoid", lambda: spectral_groupoid(a))
    if sg is None:
        return rep
    iso = algebroid_psi(a, sg)
    rep.extend(iso.report, "psi.")
    rep.derived["psi"] = matrix_to_json(iso.matrix)
    rep.derived["spectral_arrows"] = len(sg.groupoid.arrows)
    return rep


def _roundtrip_bimodule(m: PrincipalBimodule) -> Report:
    rep = Report("roundtrip_bimodule")
    for sub in (check_preprincipal(m), check_principal_bimodule(m), check_locally_grouplike_bimodule(m)):
        rep.extend(sub, f"{sub.subject}.")
    if not rep.ok:
        return rep
    res = _guarded(rep, "psi", lambda: psi_iso(m))
    if res is None:
        return rep
    rep.extend(res.report, "psi.")
    rep.derived["psi"] = matrix_to_json(res.map.matrix)
    rep.derived["spectral_points"] = len(res.bundle.bundle.points)
    return rep


def matrix_to_json(m: SparseMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[r, c, fmt(x)] for (r, c), x in sorted(m.entries.items())]}
