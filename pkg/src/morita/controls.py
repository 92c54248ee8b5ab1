"""Small hand-built structures that must fail the checks."""

from __future__ import annotations

from fractions import Fraction

from .algebroid import BaseAlgebra, Coalgebra, convolution_algebroid, primitive_hopf
from .bimodule import PrincipalBimodule, convolution_bimodule, direct_sum, make_bimodule
from .exactla import ONE, SparseMatrix
from .groupoid import PrincipalBibundle, identity_bibundle, trivial_groupoid


def sqrt2_coalgebra() -> Coalgebra:
    """Delta(u) = u(x)u + 2 v(x)v, Delta(v) = u(x)v + v(x)u over one point.

    Its grouplikes are u +- sqrt(2) v, so they do not exist over Q.
    """
    comult = ({(0, 0): ONE, (1, 1): Fraction(2)}, {(0, 1): ONE, (1, 0): ONE})
    counit = ({0: ONE}, {})
    return Coalgebra(BaseAlgebra(("*",)), ("u", "v"), comult, counit, (SparseMatrix.identity(2),))


def nonprincipal_bibundle() -> PrincipalBibundle:
    """Two points over one object with trivial groups on both sides.

    The right action cannot be transitive on the single anchor fiber.
    """
    g = trivial_groupoid()
    pts = ("p1", "p2")
    return PrincipalBibundle(
        g, g, pts, {p: "*" for p in pts}, {p: "*" for p in pts},
        {("e", p): p for p in pts}, {(p, "e"): p for p in pts},
    )


def nonprincipal_bimodule() -> PrincipalBimodule:
    return convolution_bimodule(nonprincipal_bibundle())


def primitive_block_bimodule() -> PrincipalBimodule:
    """The self-bimodule of the trivial group plus a primitive coalgebra block."""
    g = trivial_groupoid()
    a = convolution_algebroid(g)
    m = convolution_bimodule(identity_bibundle(g), a, a)
    unit = {(0, 0): {0: ONE}, (0, 1): {1: ONE}}
    prim = make_bimodule(a, a, ["1", "x"], unit, {(k, 0): v for (_, k), v in unit.items()},
                         [{(0, 0): ONE}, {(1, 0): ONE, (0, 1): ONE}], [{0: ONE}, {}])
    return direct_sum(m, prim)


__all__ = [
    "nonprincipal_bibundle",
    "nonprincipal_bimodule",
    "primitive_block_bimodule",
    "primitive_hopf",
    "sqrt2_coalgebra",
]
