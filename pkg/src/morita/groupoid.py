"""Finite groupoids and principal bibundles between them.

Conventions: ``compose[(g2, g1)]`` is the product g2*g1, defined exactly when
src(g2) == tgt(g1). A bibundle P over (G, H) carries a left G-action along
``pi`` (g.p defined when src(g) == pi(p)) and a right H-action along ``phi``
(p.h defined when phi(p) == tgt(h)).
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .report import Report

MAX_ISO_POINTS = 200


class IncompatibleBundles(ValueError):
    pass


class NotAFunctor(ValueError):
    def __init__(self, message, witness):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class LimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple
    arrows: tuple
    src: Mapping[str, str]
    tgt: Mapping[str, str]
    compose: Mapping[tuple, str]
    inv: Mapping[str, str]
    unit: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(self.objects)))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))
        for name in ("src", "tgt", "compose", "inv", "unit"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    def mul(self, g2: str, g1: str):
        return self.compose.get((g2, g1))

    @cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.arrows)}

    @cached_property
    def arrows_to(self) -> dict:
        out = defaultdict(list)
        for g in self.arrows:
            out[self.tgt[g]].append(g)
        return {x: out.get(x, []) for x in self.objects}

    @cached_property
    def arrows_from(self) -> dict:
        out = defaultdict(list)
        for g in self.arrows:
            out[self.src[g]].append(g)
        return {x: out.get(x, []) for x in self.objects}

    def hom(self, x: str, y: str) -> list:
        """Arrows from x to y."""
        return [g for g in self.arrows_to[y] if self.src[g] == x]

    def components(self) -> list[list]:
        seen, comps = set(), []
        for x in self.objects:
            if x in seen:
                continue
            comp = sorted({self.src[g] for g in self.arrows_to[x]})
            seen.update(comp)
            comps.append(comp)
        return comps


@dataclass(frozen=True)
class GroupoidHom:
    source: FiniteGroupoid
    target: FiniteGroupoid
    on_objects: Mapping[str, str]
    on_arrows: Mapping[str, str]


@dataclass(frozen=True)
class PrincipalBibundle:
    left: FiniteGroupoid
    right: FiniteGroupoid
    points: tuple
    pi: Mapping[str, str]
    phi: Mapping[str, str]
    act_left: Mapping[tuple, str]
    act_right: Mapping[tuple, str]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))
        for name in ("pi", "phi", "act_left", "act_right"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def fibers(self) -> dict:
        out = {x: [] for x in self.left.objects}
        for p in self.points:
            out.setdefault(self.pi[p], []).append(p)
        return out

    @cached_property
    def left_moves(self) -> dict:
        out = defaultdict(list)
        for (g, p), q in self.act_left.items():
            out[p].append((g, q))
        return {p: sorted(out.get(p, [])) for p in self.points}

    @cached_property
    def right_moves(self) -> dict:
        out = defaultdict(list)
        for (p, h), q in self.act_right.items():
            out[p].append((h, q))
        return {p: sorted(out.get(p, [])) for p in self.points}


def is_bisection(g: FiniteGroupoid, arrows) -> bool:
    arrows = list(arrows)
    return len({g.src[a] for a in arrows}) == len(arrows) == len({g.tgt[a] for a in arrows})


def bisection_map(g: FiniteGroupoid, arrows) -> dict:
    """The partial bijection src(U) -> tgt(U) induced by a bisection U."""
    if not is_bisection(g, arrows):
        raise ValueError("not a bisection")
    return {g.src[a]: g.tgt[a] for a in arrows}


# -- validation ------------------------------------------------------------

def validate_groupoid(g: FiniteGroupoid) -> Report:
    rep = Report("groupoid")
    objs, arrs = set(g.objects), set(g.arrows)
    bad = [a for a in g.arrows if g.src.get(a) not in objs or g.tgt.get(a) not in objs or g.inv.get(a) not in arrs]
    bad += [x for x in g.objects if g.unit.get(x) not in arrs]
    rep.add("structure_maps_total", not bad, bad[:1])
    if bad:
        return rep

    composable = {(b, a) for a in g.arrows for b in g.arrows_from[g.tgt[a]]}
    missing = sorted(composable - set(g.compose))
    extra = sorted(set(g.compose) - composable)
    rep.add("compose_domain", not missing and not extra,
            {"missing": missing[:1], "extra": extra[:1]})
    wrong = [k for k in sorted(composable & set(g.compose)) if g.compose[k] not in arrs]
    rep.add("compose_values", not wrong, wrong[:1])
    if wrong:
        return rep

    anchors = [
        (b, a) for (b, a) in sorted(composable & set(g.compose))
        if g.tgt[g.compose[(b, a)]] != g.tgt[b] or g.src[g.compose[(b, a)]] != g.src[a]
    ]
    rep.add("compose_anchors", not anchors, anchors[:1])

    witness = None
    for a in g.arrows:
        for b in g.arrows_from[g.tgt[a]]:
            ba = g.mul(b, a)
            for c in g.arrows_from[g.tgt[b]]:
                cb = g.mul(c, b)
                left = g.mul(c, ba) if ba is not None else None
                right = g.mul(cb, a) if cb is not None else None
                if left is None or left != right:
                    witness = [c, b, a]
                    break
            if witness:
                break
        if witness:
            break
    rep.add("associativity", witness is None, witness)

    witness = None
    for x in g.objects:
        u = g.unit[x]
        if g.src[u] != x or g.tgt[u] != x:
            witness = [x, u]
            break
        for a in g.arrows_to[x]:
            if g.mul(u, a) != a:
                witness = [u, a, g.mul(u, a)]
                break
        for a in g.arrows_from[x]:
            if g.mul(a, u) != a:
                witness = [a, u, g.mul(a, u)]
                break
        if witness:
            break
    rep.add("units", witness is None, witness)

    witness = None
    for a in g.arrows:
        ai = g.inv[a]
        if g.mul(ai, a) != g.unit[g.src[a]] or g.mul(a, ai) != g.unit[g.tgt[a]]:
            witness = [a, ai]
            break
    rep.add("inverses", witness is None, witness)
    return rep


def validate_bibundle(p: PrincipalBibundle) -> Report:
    rep = Report("bibundle")
    G, H = p.left, p.right
    lrep, rrep = validate_groupoid(G), validate_groupoid(H)
    rep.add("left_groupoid_valid", lrep.ok, [c.name for c in lrep.failures()])
    rep.add("right_groupoid_valid", rrep.ok, [c.name for c in rrep.failures()])
    pts = set(p.points)
    bad = [q for q in p.points if p.pi.get(q) not in G.objects or p.phi.get(q) not in H.objects]
    rep.add("anchors_total", not bad, bad[:1])
    if bad or not lrep.ok or not rrep.ok:
        return rep

    ldom = {(g, q) for q in p.points for g in G.arrows_from[p.pi[q]]}
    rdom = {(q, h) for q in p.points for h in H.arrows_to[p.phi[q]]}
    lbad = sorted(ldom ^ set(p.act_left)) + sorted(k for k in ldom & set(p.act_left) if p.act_left[k] not in pts)
    rbad = sorted(rdom ^ set(p.act_right)) + sorted(k for k in rdom & set(p.act_right) if p.act_right[k] not in pts)
    rep.add("act_left_domain", not lbad, lbad[:1])
    rep.add("act_right_domain", not rbad, rbad[:1])
    if lbad or rbad:
        return rep
    L, R = p.act_left, p.act_right

    witness = None
    for q in p.points:
        if L[(G.unit[p.pi[q]], q)] != q:
            witness = ["unit", G.unit[p.pi[q]], q]
            break
        for g in G.arrows_from[p.pi[q]]:
            gq = L[(g, q)]
            if p.pi[gq] != G.tgt[g]:
                witness = ["anchor", g, q]
                break
            for g2 in G.arrows_from[G.tgt[g]]:
                if L[(G.mul(g2, g), q)] != L[(g2, gq)]:
                    witness = ["associativity", g2, g, q]
                    break
            if witness:
                break
        if witness:
            break
    rep.add("left_action", witness is None, witness)

    witness = None
    for q in p.points:
        if R[(q, H.unit[p.phi[q]])] != q:
            witness = ["unit", q, H.unit[p.phi[q]]]
            break
        for h in H.arrows_to[p.phi[q]]:
            qh = R[(q, h)]
            if p.phi[qh] != H.src[h]:
                witness = ["anchor", q, h]
                break
            for h2 in H.arrows_to[H.src[h]]:
                if R[(q, H.mul(h, h2))] != R[(qh, h2)]:
                    witness = ["associativity", q, h, h2]
                    break
            if witness:
                break
        if witness:
            break
    rep.add("right_action", witness is None, witness)

    witness = None
    for q in p.points:
        for g in G.arrows_from[p.pi[q]]:
            if p.phi[L[(g, q)]] != p.phi[q]:
                witness = ["phi(g.p)", g, q]
                break
            for h in H.arrows_to[p.phi[q]]:
                if L[(g, R[(q, h)])] != R[(L[(g, q)], h)]:
                    witness = ["g.(p.h)", g, q, h]
                    break
            if witness:
                break
        for h in H.arrows_to[p.phi[q]]:
            if p.pi[R[(q, h)]] != p.pi[q]:
                witness = ["pi(p.h)", q, h]
                break
        if witness:
            break
    rep.add("compatibility", witness is None, witness)

    unhit = sorted(set(G.objects) - {p.pi[q] for q in p.points})
    rep.add("pi_surjective", not unhit, unhit[:1])

    images: dict = {}
    witness = None
    for (q, h), qh in sorted(R.items()):
        key = (q, qh)
        if key in images:
            witness = {"collision": [[q, images[key]], [q, h]]}
            break
        images[key] = h
    if witness is None:
        for x, fib in p.fibers.items():
            for a in fib:
                for b in fib:
                    if (a, b) not in images:
                        witness = {"not_hit": [a, b]}
                        break
                if witness:
                    break
            if witness:
                break
    rep.add("principality", witness is None, witness)
    return rep


def is_valid_groupoid(g: FiniteGroupoid) -> bool:
    return validate_groupoid(g).ok


# -- constructions ---------------------------------------------------------

def identity_bibundle(g: FiniteGroupoid) -> PrincipalBibundle:
    """G as a bibundle over (G, G): pi = tgt, phi = src, actions by composition."""
    act_left = {(a, p): g.mul(a, p) for p in g.arrows for a in g.arrows_from[g.tgt[p]]}
    act_right = {(p, h): g.mul(p, h) for p in g.arrows for h in g.arrows_to[g.src[p]]}
    return PrincipalBibundle(g, g, g.arrows, dict(g.tgt), dict(g.src), act_left, act_right)


def tensor_label(p: str, q: str) -> str:
    return f"[{p},{q}]"


def tensor_classes(p: PrincipalBibundle, q: PrincipalBibundle) -> dict:
    """Map each matched pair (a, b) with phi(a) == pi'(b) to its orbit representative.

    The middle groupoid acts by (a, b).h = (a.h, h^-1 . b); the representative
    of an orbit is its lexicographically least pair.
    """
    if p.right != q.left:
        raise IncompatibleBundles("right groupoid of the first bundle differs from left groupoid of the second")
    H = p.right
    rep: dict = {}
    for a in p.points:
        for b in q.fibers.get(p.phi[a], []):
            if (a, b) in rep:
                continue
            orbit, todo = {(a, b)}, deque([(a, b)])
            while todo:
                x, y = todo.popleft()
                for h in H.arrows_to[p.phi[x]]:
                    nxt = (p.act_right[(x, h)], q.act_left[(H.inv[h], y)])
                    if nxt not in orbit:
                        orbit.add(nxt)
                        todo.append(nxt)
            least = min(orbit)
            for pair in orbit:
                rep[pair] = least
    return rep


def tensor_bibundles(p: PrincipalBibundle, q: PrincipalBibundle) -> PrincipalBibundle:
    classes = tensor_classes(p, q)
    label = {pair: tensor_label(*rep) for pair, rep in classes.items()}
    reps = sorted(set(classes.values()))
    points = [tensor_label(a, b) for a, b in reps]
    if len(set(points)) != len(points):
        raise ValueError("tensor point labels collide")
    G, K = p.left, q.right
    pi = {tensor_label(a, b): p.pi[a] for a, b in reps}
    phi = {tensor_label(a, b): q.phi[b] for a, b in reps}
    act_left = {}
    act_right = {}
    for a, b in reps:
        t = tensor_label(a, b)
        for g in G.arrows_from[p.pi[a]]:
            act_left[(g, t)] = label[(p.act_left[(g, a)], b)]
        for k in K.arrows_to[q.phi[b]]:
            act_right[(t, k)] = label[(a, q.act_right[(b, k)])]
    return PrincipalBibundle(G, K, points, pi, phi, act_left, act_right)


def tensor_point(p: PrincipalBibundle, q: PrincipalBibundle, a: str, b: str) -> str:
    """Label of the class of (a, b) in P (x)_H Q."""
    return tensor_label(*tensor_classes(p, q)[(a, b)])


def check_functor(f: GroupoidHom) -> None:
    G, H = f.source, f.target
    for x in G.objects:
        if f.on_objects.get(x) not in H.objects:
            raise NotAFunctor("object not mapped", x)
    for g in G.arrows:
        h = f.on_arrows.get(g)
        if h not in H.arrows:
            raise NotAFunctor("arrow not mapped", g)
        if H.src[h] != f.on_objects[G.src[g]] or H.tgt[h] != f.on_objects[G.tgt[g]]:
            raise NotAFunctor("anchors not preserved", g)
    for x in G.objects:
        if f.on_arrows[G.unit[x]] != H.unit[f.on_objects[x]]:
            raise NotAFunctor("unit not preserved", x)
    for (b, a), ba in G.compose.items():
        if H.mul(f.on_arrows[b], f.on_arrows[a]) != f.on_arrows[ba]:
            raise NotAFunctor("composition not preserved", [b, a])


def bibundle_from_functor(f: GroupoidHom) -> PrincipalBibundle:
    """Points (x, h) with tgt(h) = f(x); g.(x,h) = (tgt g, f(g)h), (x,h).h' = (x, hh')."""
    check_functor(f)
    G, H = f.source, f.target
    lab = {}
    for x in G.objects:
        for h in H.arrows_to[f.on_objects[x]]:
            lab[(x, h)] = f"({x},{h})"
    if len(set(lab.values())) != len(lab):
        raise ValueError("point labels collide")
    pi = {lab[(x, h)]: x for x, h in lab}
    phi = {lab[(x, h)]: H.src[h] for x, h in lab}
    act_left, act_right = {}, {}
    for (x, h), pt in lab.items():
        for g in G.arrows_from[x]:
            act_left[(g, pt)] = lab[(G.tgt[g], H.mul(f.on_arrows[g], h))]
        for h2 in H.arrows_to[H.src[h]]:
            act_right[(pt, h2)] = lab[(x, H.mul(h, h2))]
    return PrincipalBibundle(G, H, list(pi), pi, phi, act_left, act_right)


def is_equivariant_iso(p: PrincipalBibundle, q: PrincipalBibundle, f: Mapping[str, str]) -> bool:
    if p.left != q.left or p.right != q.right:
        return False
    if sorted(f) != list(p.points) or sorted(f.values()) != list(q.points):
        return False
    for a in p.points:
        b = f[a]
        if q.pi[b] != p.pi[a] or q.phi[b] != p.phi[a]:
            return False
        for g, ga in p.left_moves[a]:
            if q.act_left.get((g, b)) != f[ga]:
                return False
        for h, ah in p.right_moves[a]:
            if q.act_right.get((b, h)) != f[ah]:
                return False
    return True


def _orbits(p: PrincipalBibundle) -> list[list[str]]:
    seen, out = set(), []
    for a in p.points:
        if a in seen:
            continue
        orbit, todo = [a], deque([a])
        seen.add(a)
        while todo:
            x = todo.popleft()
            for _, y in p.left_moves[x] + p.right_moves[x]:
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
                    todo.append(y)
        out.append(orbit)
    return out


def find_equivariant_iso(p: PrincipalBibundle, q: PrincipalBibundle, limit: int = MAX_ISO_POINTS):
    """An equivariant bijection P -> Q as a dict, or None if none exists.

    Backtracks over the image of one seed point per G x H orbit; the rest of
    each orbit is forced by equivariance.
    """
    if max(len(p.points), len(q.points)) > limit:
        raise LimitExceeded(f"isomorphism search limited to {limit} points")
    if p.left != q.left or p.right != q.right or len(p.points) != len(q.points):
        return None
    orbits = _orbits(p)

    def extend(f, used, seed, image):
        f, used = dict(f), set(used)
        f[seed] = image
        used.add(image)
        todo = deque([seed])
        while todo:
            a = todo.popleft()
            b = f[a]
            moves = [(ga, q.act_left.get((g, b))) for g, ga in p.left_moves[a]]
            moves += [(ah, q.act_right.get((b, h))) for h, ah in p.right_moves[a]]
            for src_pt, dst_pt in moves:
                if dst_pt is None:
                    return None
                if src_pt in f:
                    if f[src_pt] != dst_pt:
                        return None
                elif dst_pt in used:
                    return None
                else:
                    f[src_pt] = dst_pt
                    used.add(dst_pt)
                    todo.append(src_pt)
        return f, used

    def search(k, f, used):
        if k == len(orbits):
            return f
        seed = orbits[k][0]
        for cand in q.points:
            if cand in used or q.pi[cand] != p.pi[seed] or q.phi[cand] != p.phi[seed]:
                continue
            step = extend(f, used, seed, cand)
            if step is None:
                continue
            found = search(k + 1, *step)
            if found is not None:
                return found
        return None

    f = search(0, {}, set())
    if f is not None and not is_equivariant_iso(p, q, f):
        raise AssertionError("search returned a non-equivariant map")
    return f


def associator(p: PrincipalBibundle, q: PrincipalBibundle, r: PrincipalBibundle) -> dict:
    """The natural bijection (P(x)Q)(x)R -> P(x)(Q(x)R), [[a,b],c] -> [a,[b,c]]."""
    pq_classes = tensor_classes(p, q)
    qr_classes = tensor_classes(q, r)
    pq = tensor_bibundles(p, q)
    qr = tensor_bibundles(q, r)
    left_classes = tensor_classes(pq, r)
    right_classes = tensor_classes(p, qr)
    out = {}
    for (ab, c), rep in left_classes.items():
        if (ab, c) != rep:
            continue
        a, b = next(pair for pair, cls in pq_classes.items() if tensor_label(*cls) == ab)
        bc = tensor_label(*qr_classes[(b, c)])
        out[tensor_label(ab, c)] = tensor_label(*right_classes[(a, bc)])
    return out


# -- standard groupoids ----------------------------------------------------

def unit_groupoid(objects: Sequence[str]) -> FiniteGroupoid:
    arrows = {x: f"1_{x}" for x in objects}
    return FiniteGroupoid(
        tuple(objects), tuple(arrows.values()),
        {a: x for x, a in arrows.items()}, {a: x for x, a in arrows.items()},
        {(a, a): a for a in arrows.values()}, {a: a for a in arrows.values()}, dict(arrows),
    )


def pair_groupoid(objects: Sequence[str]) -> FiniteGroupoid:
    """Exactly one arrow (i,j) from j to i for every pair of objects."""
    lab = {(i, j): f"({i},{j})" for i in objects for j in objects}
    return FiniteGroupoid(
        tuple(objects), tuple(lab.values()),
        {lab[(i, j)]: j for i, j in lab}, {lab[(i, j)]: i for i, j in lab},
        {(lab[(i, j)], lab[(j, k)]): lab[(i, k)] for i, j in lab for k in objects},
        {lab[(i, j)]: lab[(j, i)] for i, j in lab}, {i: lab[(i, i)] for i in objects},
    )


def group_groupoid(table: Mapping[tuple, str], obj: str = "*") -> FiniteGroupoid:
    """A finite group, given by its multiplication table, as a one-object groupoid."""
    elements = sorted({a for a, _ in table})
    e = next(x for x in elements if all(table[(x, y)] == y for y in elements))
    inv = {a: next(b for b in elements if table[(a, b)] == e) for a in elements}
    return FiniteGroupoid(
        (obj,), tuple(elements), {a: obj for a in elements}, {a: obj for a in elements},
        dict(table), inv, {obj: e},
    )


def trivial_groupoid(obj: str = "*") -> FiniteGroupoid:
    return group_groupoid({("e", "e"): "e"}, obj)


def cyclic_group(k: int, obj: str = "*") -> FiniteGroupoid:
    names = ["e"] + [f"r{i}" for i in range(1, k)]
    return group_groupoid({(names[a], names[b]): names[(a + b) % k] for a in range(k) for b in range(k)}, obj)


def symmetric_group3(obj: str = "*") -> FiniteGroupoid:
    from itertools import permutations

    perms = list(permutations(range(3)))

    def name(p):
        return "e" if p == (0, 1, 2) else "s" + "".join(map(str, p))

    table = {(name(a), name(b)): name(tuple(a[b[i]] for i in range(3))) for a in perms for b in perms}
    return group_groupoid(table, obj)


def group_elements(g: FiniteGroupoid) -> list:
    if len(g.objects) != 1:
        raise ValueError("not a group")
    return list(g.arrows)


def direct_product_groups(a: FiniteGroupoid, b: FiniteGroupoid, obj: str = "*") -> FiniteGroupoid:
    table = {}
    for x1 in a.arrows:
        for y1 in b.arrows:
            for x2 in a.arrows:
                for y2 in b.arrows:
                    table[(f"{x1}.{y1}", f"{x2}.{y2}")] = f"{a.mul(x1, x2)}.{b.mul(y1, y2)}"
    return group_groupoid(table, obj)


def pair_times_group(objects: Sequence[str], group: FiniteGroupoid) -> FiniteGroupoid:
    """Pair groupoid on ``objects`` times a group: arrows ((i,j), gamma) from j to i."""
    gs = group_elements(group)
    trivial = len(gs) == 1

    def lab(i, j, c):
        return f"({i},{j})" if trivial else f"({i},{j}){c}"

    arrows = [(i, j, c) for i in objects for j in objects for c in gs]
    return FiniteGroupoid(
        tuple(objects), tuple(lab(*a) for a in arrows),
        {lab(i, j, c): j for i, j, c in arrows}, {lab(i, j, c): i for i, j, c in arrows},
        {(lab(i, j, c), lab(j, k, d)): lab(i, k, group.mul(c, d)) for i, j, c in arrows for k in objects for d in gs},
        {lab(i, j, c): lab(j, i, group.inv[c]) for i, j, c in arrows},
        {i: lab(i, i, group.unit[group.objects[0]]) for i in objects},
    )


def disjoint_union(*parts: FiniteGroupoid) -> FiniteGroupoid:
    objs, arrs = [], []
    src, tgt, comp, inv, unit = {}, {}, {}, {}, {}
    for g in parts:
        objs += g.objects
        arrs += g.arrows
        src.update(g.src)
        tgt.update(g.tgt)
        comp.update(g.compose)
        inv.update(g.inv)
        unit.update(g.unit)
    if len(set(objs)) != len(objs) or len(set(arrs)) != len(arrs):
        raise ValueError("labels of the parts overlap")
    return FiniteGroupoid(tuple(objs), tuple(arrs), src, tgt, comp, inv, unit)


def two_point_bundle(objects: Sequence[str] = ("1", "2")) -> PrincipalBibundle:
    """Pair groupoid on ``objects`` over the trivial groupoid: one point per object."""
    G, H = pair_groupoid(objects), trivial_groupoid()
    pts = {x: f"p{x}" for x in objects}
    act_left = {(f"({i},{j})", pts[j]): pts[i] for i in objects for j in objects}
    act_right = {(pts[x], "e"): pts[x] for x in objects}
    return PrincipalBibundle(G, H, list(pts.values()), {v: k for k, v in pts.items()},
                             {v: "*" for v in pts.values()}, act_left, act_right)


def reverse_two_point_bundle(objects: Sequence[str] = ("1", "2")) -> PrincipalBibundle:
    """The trivial groupoid over the pair groupoid: q_j . (j,i) = q_i."""
    G, H = trivial_groupoid(), pair_groupoid(objects)
    pts = {x: f"q{x}" for x in objects}
    act_left = {("e", pts[x]): pts[x] for x in objects}
    act_right = {(pts[j], f"({j},{i})"): pts[i] for i in objects for j in objects}
    return PrincipalBibundle(G, H, list(pts.values()), {v: "*" for v in pts.values()},
                             {v: k for k, v in pts.items()}, act_left, act_right)
