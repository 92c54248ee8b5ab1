"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed (report emitted),
2 malformed input, 3 an internal size limit was exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import serialize
from .algebroid import HopfAlgebroid, check_bialgebroid, check_hopf, check_principal_algebroid, convolution_algebroid, scramble_algebroid
from .bimodule import (
    IncompatibleBimodules,
    IsoUnknown,
    PrincipalBimodule,
    check_preprincipal,
    check_principal_bimodule,
    convolution_bimodule,
    find_bimodule_iso,
    scramble_bimodule,
    tensor_bimodules,
)
from .exactla import fmt
from .generators import random_bibundle, random_groupoid
from .groupoid import (
    FiniteGroupoid,
    IncompatibleBundles,
    LimitExceeded,
    PrincipalBibundle,
    find_equivariant_iso,
    tensor_bibundles,
    validate_bibundle,
    validate_groupoid,
)
from .report import Report
from .serialize import MalformedInput
from .spectral import (
    NotCocommutative,
    NotLocallyGrouplike,
    SpectralError,
    grouplikes,
    localize,
    matrix_to_json,
    roundtrip,
    spectral_bundle,
    spectral_groupoid,
)

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED, EXIT_LIMIT = 0, 1, 2, 3
DEFAULT_MAX_SIZE = 500


class UsageError(Exception):
    pass


def size_of(obj) -> int:
    if isinstance(obj, FiniteGroupoid):
        return max(len(obj.arrows), len(obj.objects))
    if isinstance(obj, PrincipalBibundle):
        return max(len(obj.points), size_of(obj.left), size_of(obj.right))
    if isinstance(obj, HopfAlgebroid):
        return obj.dim
    if isinstance(obj, PrincipalBimodule):
        return max(obj.dim, obj.left_alg.dim, obj.right_alg.dim)
    raise TypeError(type(obj).__name__)


def emit_report(rep: Report, fmt_name: str) -> str:
    return rep.to_json() + "\n" if fmt_name == "json" else rep.to_text()


class Session:
    def __init__(self, args):
        self.args = args
        env = os.environ.get("MORITA_MAX_SIZE")
        if args.max_size is not None:
            self.max_size = args.max_size
        elif env:
            try:
                self.max_size = int(env)
            except ValueError as e:
                raise UsageError(f"MORITA_MAX_SIZE is not an integer: {env!r}") from e
        else:
            self.max_size = DEFAULT_MAX_SIZE

    def load(self, path):
        obj = serialize.load(path)
        self.limit(obj)
        return obj

    def limit(self, obj):
        n = size_of(obj)
        if n > self.max_size:
            raise LimitExceeded(f"object of size {n} exceeds the limit {self.max_size}")
        return obj

    def write(self, text: str) -> None:
        if self.args.output:
            Path(self.args.output).write_text(text)
        else:
            sys.stdout.write(text)

    def document(self, obj) -> int:
        self.limit(obj)
        self.write(serialize.dumps(obj))
        return EXIT_OK

    def report(self, rep: Report) -> int:
        self.write(emit_report(rep, self.args.report))
        return EXIT_OK if rep.ok else EXIT_FAIL


def _failure_report(subject: str, name: str, e: Exception) -> Report:
    rep = Report(subject)
    w = {"error": type(e).__name__, "detail": getattr(e, "witness", str(e))}
    if isinstance(e, NotLocallyGrouplike):
        w["reason"] = e.reason
    rep.add(name, False, w)
    return rep


# -- verbs -----------------------------------------------------------------

def cmd_validate(s: Session) -> int:
    obj = s.load(s.args.inputs[0])
    if isinstance(obj, FiniteGroupoid):
        return s.report(validate_groupoid(obj))
    if isinstance(obj, PrincipalBibundle):
        return s.report(validate_bibundle(obj))
    rep = Report("algebroid" if isinstance(obj, HopfAlgebroid) else "bimodule")
    subs = ((check_bialgebroid(obj), check_hopf(obj), check_principal_algebroid(obj))
            if isinstance(obj, HopfAlgebroid) else (check_preprincipal(obj), check_principal_bimodule(obj)))
    for sub in subs:
        rep.extend(sub, f"{sub.subject}.")
    return s.report(rep)


def cmd_cc(s: Session) -> int:
    obj = s.load(s.args.inputs[0])
    if isinstance(obj, FiniteGroupoid):
        return s.document(convolution_algebroid(obj))
    if isinstance(obj, PrincipalBibundle):
        return s.document(convolution_bimodule(obj))
    raise UsageError("cc takes a groupoid or a bibundle")


def cmd_spectral(s: Session) -> int:
    obj = s.load(s.args.inputs[0])
    try:
        if isinstance(obj, HopfAlgebroid):
            return s.document(spectral_groupoid(obj).groupoid)
        if isinstance(obj, PrincipalBimodule):
            return s.document(spectral_bundle(obj).bundle)
    except (NotLocallyGrouplike, NotCocommutative, SpectralError) as e:
        return s.report(_failure_report("spectral", "reconstruction", e))
    raise UsageError("spectral takes an algebroid or a bimodule")


def cmd_roundtrip(s: Session) -> int:
    return s.report(roundtrip(s.load(s.args.inputs[0])))


def cmd_tensor(s: Session) -> int:
    if len(s.args.inputs) != 2:
        raise UsageError("tensor takes two inputs")
    a, b = (s.load(p) for p in s.args.inputs)
    if isinstance(a, PrincipalBibundle) and isinstance(b, PrincipalBibundle):
        return s.document(tensor_bibundles(a, b))
    if isinstance(a, PrincipalBimodule) and isinstance(b, PrincipalBimodule):
        return s.document(tensor_bimodules(a, b))
    raise UsageError("tensor takes two bibundles or two bimodules")


def cmd_grouplikes(s: Session) -> int:
    obj = s.load(s.args.inputs[0])
    if not isinstance(obj, (HopfAlgebroid, PrincipalBimodule)):
        raise UsageError("grouplikes takes an algebroid or a bimodule")
    c = obj.coalgebra
    points = c.base.points
    if s.args.point is not None:
        if s.args.point not in points:
            raise MalformedInput(f"unknown base point {s.args.point!r}")
        points = (s.args.point,)
    rep = Report("grouplikes")
    found = {}
    for x in points:
        try:
            gl = grouplikes(localize(c, x))
        except (NotLocallyGrouplike, NotCocommutative) as e:
            rep.extend(_failure_report("grouplikes", f"point {x}", e))
            continue
        rep.add(f"point {x}", True)
        found[x] = [{c.labels[i]: fmt(v) for i, v in sorted(z.items())} for z in gl]
    rep.derived["grouplikes"] = found
    return s.report(rep)


def cmd_gen(s: Session) -> int:
    what = s.args.inputs[0] if s.args.inputs else "groupoid"
    g = random_groupoid(s.args.seed, s.args.max_objects, s.args.max_group_order)
    if what == "groupoid":
        return s.document(g)
    if what == "bibundle":
        if s.args.groupoid:
            g = s.load(s.args.groupoid)
            if not isinstance(g, FiniteGroupoid):
                raise UsageError("--groupoid must name a groupoid document")
        return s.document(random_bibundle(s.args.seed, g)[1])
    raise UsageError("gen makes a 'groupoid' or a 'bibundle'")


def cmd_scramble(s: Session) -> int:
    obj = s.load(s.args.inputs[0])
    if isinstance(obj, HopfAlgebroid):
        return s.document(scramble_algebroid(obj, s.args.seed)[0])
    if isinstance(obj, PrincipalBimodule):
        return s.document(scramble_bimodule(obj, s.args.seed)[0])
    raise UsageError("scramble takes an algebroid or a bimodule")


def cmd_iso(s: Session) -> int:
    if len(s.args.inputs) != 2:
        raise UsageError("iso takes two inputs")
    a, b = (s.load(p) for p in s.args.inputs)
    rep = Report("iso")
    if isinstance(a, PrincipalBibundle) and isinstance(b, PrincipalBibundle):
        f = find_equivariant_iso(a, b)
        rep.add("isomorphic", f is not None, {"points": [len(a.points), len(b.points)]})
        if f is not None:
            rep.derived["map"] = dict(sorted(f.items()))
    elif isinstance(a, PrincipalBimodule) and isinstance(b, PrincipalBimodule):
        theta = find_bimodule_iso(a, b)
        rep.add("isomorphic", theta is not None, {"dims": [a.dim, b.dim]})
        if theta is not None:
            rep.derived["matrix"] = matrix_to_json(theta.matrix)
    else:
        raise UsageError("iso takes two bibundles or two bimodules")
    return s.report(rep)


VERBS = {
    "validate": cmd_validate,
    "cc": cmd_cc,
    "spectral": cmd_spectral,
    "roundtrip": cmd_roundtrip,
    "tensor": cmd_tensor,
    "grouplikes": cmd_grouplikes,
    "gen": cmd_gen,
    "scramble": cmd_scramble,
    "iso": cmd_iso,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="morita", description="Finite groupoids, Hopf algebroids and their bimodules.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("inputs", nargs="*", help="input documents (gen: 'groupoid' or 'bibundle')")
    p.add_argument("-o", "--output", help="write the result here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", choices=("json", "text"), default="json")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--point", help="restrict grouplikes to one base point")
    p.add_argument("--max-objects", type=int, default=4)
    p.add_argument("--max-group-order", type=int, default=6)
    p.add_argument("--groupoid", help="gen bibundle: use this groupoid instead of a random one")
    return p


def dispatch(argv=None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    if args.verb not in ("gen",) and not args.inputs:
        print(f"morita: {args.verb} needs an input file", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        s = Session(args)
        return VERBS[args.verb](s)
    except LimitExceeded as e:
        print(f"morita: limit exceeded: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except IsoUnknown as e:
        print(f"morita: inconclusive: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (MalformedInput, UsageError, IncompatibleBundles, IncompatibleBimodules) as e:
        print(f"morita: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_MALFORMED


def main(argv=None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
