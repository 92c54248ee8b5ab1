"""Seeded acceptance sweeps.

Each criterion returns a Report with one check per seed (or per control),
so reruns with the same seeds can be compared byte for byte.
"""

from __future__ import annotations

from .algebroid import check_bialgebroid, check_hopf, check_principal_algebroid, convolution_algebroid
from .bimodule import (
    BimoduleMap,
    check_principal_bimodule,
    convolution_bimodule,
    omega_iso,
    scramble_bimodule,
    tensor_bimodules,
    tensor_bimodules_detailed,
)
from .controls import nonprincipal_bimodule, primitive_hopf, sqrt2_coalgebra
from .exactla import ONE, SparseMatrix, solve_sparse
from .generators import random_bibundle, random_groupoid
from .groupoid import tensor_bibundles
from .report import Report
from .spectral import (
    NotLocallyGrouplike,
    canonical_arrow_map,
    check_locally_grouplike_algebroid,
    check_locally_grouplike_bimodule,
    compare_groupoids,
    grouplikes,
    localize,
    phi_iso,
    psi_iso,
    pushforward,
    spectral_groupoid,
    theta_star,
)

GROUPOID_SEEDS = range(50)
BUNDLE_SEEDS = range(50)
PAIR_SEEDS = range(25)
MAX_ARROWS = 200


def _first_failure(rep: Report):
    bad = rep.failures()
    return None if not bad else {"check": bad[0].name, "witness": bad[0].witness}


def _bundle(seed: int):
    g = random_groupoid(seed)
    return random_bibundle(seed, g)[1]


def _inverse(t: SparseMatrix) -> SparseMatrix:
    return SparseMatrix.from_columns([solve_sparse(t, {i: ONE}) for i in range(t.rows)], t.rows)


def criterion_1(seeds=GROUPOID_SEEDS) -> Report:
    rep = Report("axiom_suite")
    for s in seeds:
        g = random_groupoid(s)
        a = convolution_algebroid(g)
        sub = Report("seed")
        sub.add("arrow_bound", len(g.arrows) <= MAX_ARROWS, {"arrows": len(g.arrows)})
        for r in (check_bialgebroid(a), check_hopf(a), check_principal_algebroid(a),
                  check_locally_grouplike_algebroid(a)):
            sub.extend(r, f"{r.subject}.")
        rep.add(f"seed {s}", sub.ok, _first_failure(sub))
    return rep


def criterion_2(seeds=GROUPOID_SEEDS) -> Report:
    rep = Report("object_roundtrip")
    for s in seeds:
        g = random_groupoid(s)
        sg = spectral_groupoid(convolution_algebroid(g))
        f = canonical_arrow_map(g, sg)
        sub = compare_groupoids(g, sg.groupoid, f)
        rep.add(f"seed {s}", sub.ok, _first_failure(sub))
    return rep


def criterion_3(seeds=BUNDLE_SEEDS) -> Report:
    rep = Report("morphism_roundtrip")
    for s in seeds:
        res = phi_iso(_bundle(s))
        rep.add(f"seed {s}", res.report.ok, _first_failure(res.report))
    return rep


def criterion_4(seeds=BUNDLE_SEEDS) -> Report:
    """Psi on scrambled bimodules, and Psi . push(Phi) equals the unscrambling."""
    rep = Report("bimodule_roundtrip")
    for s in seeds:
        p = _bundle(s)
        m = convolution_bimodule(p)
        scrambled, t = scramble_bimodule(m, s)
        res = psi_iso(scrambled)
        if not res.report.ok:
            rep.add(f"seed {s}", False, _first_failure(res.report))
            continue
        t_inv = _inverse(t)
        f = theta_star(BimoduleMap(m, scrambled, t_inv), None, res.bundle)
        f = {x: f[y] for x, y in phi_iso(p).mapping.items()}
        composite = res.map.matrix @ pushforward(f, p, res.bundle.bundle)
        rep.add(f"seed {s}", composite.entries == t_inv.entries, {"dim": m.dim})
    return rep


def _pair(seed: int):
    g = random_groupoid(seed)
    h, p = random_bibundle(seed, g)
    k, q = random_bibundle(seed + 1000, h)
    algs = tuple(convolution_algebroid(x) for x in (g, h, k))
    return p, q, algs


def criterion_5(seeds=PAIR_SEEDS) -> Report:
    rep = Report("functoriality")
    for s in seeds:
        p, q, (A, B, C) = _pair(s)
        _, sub = omega_iso(p, q, A, B, C)
        sub.add("dimension", sub.derived["dim"] == len(tensor_bibundles(p, q).points),
                dict(sub.derived))
        rep.add(f"seed {s}", sub.ok, _first_failure(sub))
    return rep


def criterion_6(seeds=PAIR_SEEDS) -> Report:
    """Tensor closure, with grouplike counts matched against [p,q] pair counts."""
    rep = Report("tensor_closure")
    for s in seeds:
        p, q, (A, B, C) = _pair(s)
        mp, mq = convolution_bimodule(p, A, B), convolution_bimodule(q, B, C)
        t = tensor_bimodules(mp, mq)
        t0, _ = tensor_bimodules_detailed(mp, mq, over_base=True)
        sub = check_locally_grouplike_bimodule(t)
        sub.extend(check_principal_bimodule(t), "principal.")
        pq = tensor_bibundles(p, q)
        for i, x in enumerate(p.left.objects):
            pairs = sum(1 for a in p.fibers[x] for b in q.points if q.pi[b] == p.phi[a])
            got = len(grouplikes(localize(t0.coalgebra, i)))
            sub.add(f"pairs {x}", got == pairs, {"grouplikes": got, "pairs": pairs})
            classes = sum(1 for c in pq.points if pq.pi[c] == x)
            got = len(grouplikes(localize(t.coalgebra, i)))
            sub.add(f"classes {x}", got == classes, {"grouplikes": got, "classes": classes})
        rep.add(f"seed {s}", sub.ok, _first_failure(sub))
    return rep


def criterion_7() -> Report:
    """Each control must fail, and the failure must carry its witness."""
    rep = Report("negative_controls")
    prim = check_locally_grouplike_algebroid(primitive_hopf())
    w = prim.check("grouplike_basis").witness
    rep.add("primitive_hopf", not prim.ok and w["reason"] == "not_diagonalizable", {"report": prim.to_dict()})
    rep.derived["primitive_hopf"] = w
    try:
        grouplikes(localize(sqrt2_coalgebra(), 0))
        rep.add("sqrt2_coalgebra", False, {"error": "grouplikes were found"})
    except NotLocallyGrouplike as e:
        rep.add("sqrt2_coalgebra", e.reason == "irrational", {"reason": e.reason})
        rep.derived["sqrt2_coalgebra"] = {"reason": e.reason, "witness": e.witness}
    np_rep = check_principal_bimodule(nonprincipal_bimodule())
    w = np_rep.check("delta_bar_bijective").witness
    rep.add("nonprincipal_bimodule", w is not None and w["rank"] < w["codomain_dim"], {"report": np_rep.to_dict()})
    rep.derived["nonprincipal_bimodule"] = w
    return rep


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
}
