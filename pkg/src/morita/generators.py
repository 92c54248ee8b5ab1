"""Seeded random groupoids and bibundles.

Random groupoids are disjoint unions of components (pair groupoid on some
objects) x (small group). Random bibundles come from functors that keep or
collapse objects and push each isotropy group along a homomorphism.
"""

from __future__ import annotations

import random

from .groupoid import (
    FiniteGroupoid,
    GroupoidHom,
    PrincipalBibundle,
    bibundle_from_functor,
    cyclic_group,
    direct_product_groups,
    disjoint_union,
    group_groupoid,
    pair_times_group,
    symmetric_group3,
    trivial_groupoid,
)


def group_catalogue(max_order: int) -> list[FiniteGroupoid]:
    groups = [cyclic_group(k) for k in range(1, max_order + 1)]
    if max_order >= 6:
        groups.append(symmetric_group3())
    return groups


def _composition(rng: random.Random, n: int) -> list[int]:
    """Random ordered partition of n into positive parts."""
    parts, left = [], n
    while left:
        k = rng.randint(1, left)
        parts.append(k)
        left -= k
    return parts


def random_groupoid(seed: int, max_objects: int = 4, max_group_order: int = 6) -> FiniteGroupoid:
    rng = random.Random(seed)
    n = rng.randint(1, max_objects)
    catalogue = group_catalogue(max_group_order)
    comps, start = [], 0
    for size in _composition(rng, n):
        objs = [f"o{i}" for i in range(start, start + size)]
        start += size
        comps.append(pair_times_group(objs, rng.choice(catalogue)))
    return disjoint_union(*comps)


def _isotropy(g: FiniteGroupoid, x: str) -> FiniteGroupoid:
    loops = g.hom(x, x)
    return group_groupoid({(a, b): g.mul(a, b) for a in loops for b in loops})


def _order(grp: FiniteGroupoid, a: str) -> int:
    e, k, cur = grp.unit[grp.objects[0]], 1, a
    while cur != e:
        cur = grp.mul(a, cur)
        k += 1
    return k


def _group_homs(rng: random.Random, grp: FiniteGroupoid):
    """Pick a homomorphism out of ``grp``; returns (target group, element map)."""
    elements = list(grp.arrows)
    names = {a: f"g{i}" for i, a in enumerate(elements)}
    choices = ["identity", "trivial", "embed"]
    gen = next((a for a in elements if _order(grp, a) == len(elements)), None)
    divisors = [d for d in range(2, len(elements)) if len(elements) % d == 0]
    if gen is not None and divisors:
        choices.append("quotient")
    kind = rng.choice(choices)
    if kind == "identity":
        target = group_groupoid({(names[a], names[b]): names[grp.mul(a, b)] for a in elements for b in elements})
        return target, dict(names)
    if kind == "trivial":
        return trivial_groupoid(), {a: "e" for a in elements}
    if kind == "embed":
        base = group_groupoid({(names[a], names[b]): names[grp.mul(a, b)] for a in elements for b in elements})
        target = direct_product_groups(base, cyclic_group(2))
        return target, {a: f"{names[a]}.e" for a in elements}
    d = rng.choice(divisors)
    target = cyclic_group(d)
    labels = ["e"] + [f"r{i}" for i in range(1, d)]
    power, cur = {}, grp.unit[grp.objects[0]]
    for k in range(len(elements)):
        power[cur] = k
        cur = grp.mul(gen, cur)
    return target, {a: labels[power[a] % d] for a in elements}


def random_functor(seed: int, g: FiniteGroupoid) -> GroupoidHom:
    rng = random.Random(seed)
    parts, on_obj, on_arr = [], {}, {}
    for c, comp in enumerate(g.components()):
        x0 = comp[0]
        mode = rng.choice(["identity", "keep", "collapse"])
        if mode == "identity":
            arrows = [a for x in comp for a in g.arrows_to[x]]
            parts.append(FiniteGroupoid(
                tuple(comp), tuple(arrows),
                {a: g.src[a] for a in arrows}, {a: g.tgt[a] for a in arrows},
                {k: v for k, v in g.compose.items() if k[1] in arrows},
                {a: g.inv[a] for a in arrows}, {x: g.unit[x] for x in comp},
            ))
            on_obj.update({x: x for x in comp})
            on_arr.update({a: a for a in arrows})
            continue
        grp = _isotropy(g, x0)
        target, h = _group_homs(rng, grp)
        objs = comp if mode == "keep" else [x0]
        o = {x: (x if mode == "keep" else x0) for x in comp}
        part = pair_times_group([f"c{c}{y}" for y in objs], target)
        parts.append(part)
        sigma = {x: g.hom(x0, x)[0] for x in comp}
        for x in comp:
            on_obj[x] = f"c{c}{o[x]}"
            for a in g.arrows_to[x]:
                s, t = g.src[a], g.tgt[a]
                loop = g.mul(g.inv[sigma[t]], g.mul(a, sigma[s]))
                on_arr[a] = _arrow_label(f"c{c}{o[t]}", f"c{c}{o[s]}", h[loop], len(target.arrows) == 1)
    target_groupoid = disjoint_union(*parts)
    return GroupoidHom(g, target_groupoid, on_obj, on_arr)


def _arrow_label(t: str, s: str, element: str, trivial: bool) -> str:
    # matches the labels produced by pair_times_group
    return f"({t},{s})" if trivial else f"({t},{s}){element}"


def random_bibundle(seed: int, g: FiniteGroupoid) -> tuple[FiniteGroupoid, PrincipalBibundle]:
    """(h, p) with p a principal g-h bibundle built from a random functor."""
    p = bibundle_from_functor(random_functor(seed, g))
    return p.right, p
