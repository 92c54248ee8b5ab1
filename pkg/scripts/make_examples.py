"""Write a handful of small example documents for trying the CLI.

    python3 scripts/make_examples.py data/
"""

import sys
from pathlib import Path

from morita import serialize
from morita.algebroid import convolution_algebroid
from morita.bimodule import convolution_bimodule, scramble_bimodule
from morita.controls import nonprincipal_bimodule, primitive_hopf
from morita.groupoid import cyclic_group, pair_groupoid, reverse_two_point_bundle, two_point_bundle


def examples():
    p = two_point_bundle()
    yield "pair_groupoid", pair_groupoid(["1", "2"])
    yield "c3", cyclic_group(3)
    yield "two_point_bundle", p
    yield "reverse_two_point_bundle", reverse_two_point_bundle()
    yield "c3_algebroid", convolution_algebroid(cyclic_group(3))
    yield "primitive_hopf", primitive_hopf()
    yield "two_point_bimodule", convolution_bimodule(p)
    yield "scrambled_two_point_bimodule", scramble_bimodule(convolution_bimodule(p), 1)[0]
    yield "nonprincipal_bimodule", nonprincipal_bimodule()


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0] if argv else "data")
    out.mkdir(parents=True, exist_ok=True)
    for name, obj in examples():
        serialize.save(obj, out / f"{name}.json")
        print(out / f"{name}.json")


if __name__ == "__main__":
    main()
