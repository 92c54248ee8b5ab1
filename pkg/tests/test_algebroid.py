from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from morita.algebroid import (
    BlockViolation,
    base_algebroid,
    check_bialgebroid,
    check_hopf,
    check_principal_algebroid,
    convolution_algebroid,
    delta_bar_matrix,
    make_algebroid,
    primitive_hopf,
    random_basis_change,
    require_blocks,
    s_invariant_witness,
    scramble_algebroid,
    tensor_ll,
    tensor_rl,
    weakly_grouplike_witness,
)
from morita.exactla import ONE, SparseMatrix
from morita.generators import random_groupoid
from morita.groupoid import cyclic_group, pair_groupoid, unit_groupoid

seeds = st.integers(0, 10_000)


def rebuild(a, comult=None, counit=None, antipode="keep"):
    return make_algebroid(
        a.base.points, a.labels, a.mult, a.a0_embedding,
        comult if comult is not None else a.coalgebra.comult,
        counit if counit is not None else a.coalgebra.counit,
        a.antipode if antipode == "keep" else antipode,
    )


def idx(a, label):
    return a.labels.index(label)


def test_unit_groupoid_algebroid():
    a = convolution_algebroid(unit_groupoid(["a", "b"]))
    assert a.dim == 2
    assert a.mult == {(0, 0): {0: 1}, (1, 1): {1: 1}}
    assert a.antipode == SparseMatrix.identity(2)


def test_group_algebra_of_c2():
    a = convolution_algebroid(cyclic_group(2))
    s = idx(a, "r1")
    assert a.mul({s: ONE}, {s: ONE}) == {idx(a, "e"): 1}
    assert a.S({s: ONE}) == {s: 1}


def test_pair_groupoid_matrix_units():
    a = convolution_algebroid(pair_groupoid(["1", "2"]))
    assert a.mul({idx(a, "(1,2)"): ONE}, {idx(a, "(2,1)"): ONE}) == {idx(a, "(1,1)"): 1}
    assert a.mul({idx(a, "(1,2)"): ONE}, {idx(a, "(1,2)"): ONE}) == {}


def test_counit_zero_breaks_counit_law():
    a = convolution_algebroid(cyclic_group(2))
    bad = rebuild(a, counit=[{} for _ in range(a.dim)])
    rep = check_bialgebroid(bad)
    assert not rep.check("counit_left").passed


def test_collapsed_diagonal_breaks_counit_not_multiplicativity():
    # sigma -> e (x) e is still multiplicative (sigma^2 = e), so only the
    # counit laws can notice it
    a = convolution_algebroid(cyclic_group(2))
    e, s = idx(a, "e"), idx(a, "r1")
    comult = list(a.coalgebra.comult)
    comult[s] = {(e, e): ONE}
    rep = check_bialgebroid(rebuild(a, comult=comult))
    assert rep.check("axiom_iii").passed
    assert rep.check("counit_left").witness == {"element": "r1", "got": {"e": "1"}}


def test_scaled_diagonal_breaks_axiom_iii():
    # Delta(sigma) = 2 sigma (x) sigma squares to 4 e (x) e != Delta(e)
    a = convolution_algebroid(cyclic_group(2))
    s = idx(a, "r1")
    comult = list(a.coalgebra.comult)
    comult[s] = {(s, s): Fraction(2)}
    rep = check_bialgebroid(rebuild(a, comult=comult))
    assert rep.check("axiom_iii").witness == ["r1", "r1"]


def test_identity_antipode_on_c3_fails():
    a = rebuild(convolution_algebroid(cyclic_group(3)), antipode=SparseMatrix.identity(3))
    rep = check_hopf(a)
    assert not rep.check("antipode_identity").passed
    assert rep.check("antipode_identity").witness["element"] == "r1"


def test_non_involutive_antipode():
    a = convolution_algebroid(cyclic_group(2))
    s = a.antipode.entries.copy()
    s[(0, 0)] = Fraction(2)
    assert not check_hopf(rebuild(a, antipode=SparseMatrix(2, 2, s))).check("involution").passed


def test_principal_examples():
    a = convolution_algebroid(cyclic_group(2))
    rep = check_principal_algebroid(a)
    assert rep.ok and rep.derived["delta_bar_shape"] == [4, 4]
    assert check_principal_algebroid(base_algebroid(["a", "b"])).ok
    # primitive algebra: delta_bar sends 1(x)1, 1(x)x, x(x)1, x(x)x to
    # 1(x)1, 1(x)x, x(x)1 + 1(x)x, x(x)x, which has rank 4
    prim = check_principal_algebroid(primitive_hopf())
    assert prim.ok and prim.derived["delta_bar_shape"] == [4, 4]


def test_primitive_algebra_fails_only_axiom_iii():
    a = primitive_hopf()
    rep = check_bialgebroid(a)
    assert [c.name for c in rep.failures()] == ["axiom_iii"]
    assert rep.check("axiom_iii").witness == ["x", "x"]
    assert check_hopf(a).ok


def test_tensor_block_dims():
    assert tensor_ll(convolution_algebroid(unit_groupoid(["a", "b"]))).dim == 2
    c3 = convolution_algebroid(cyclic_group(3))
    assert tensor_ll(c3).dim == 9 and tensor_rl(c3).dim == 9
    assert tensor_ll(convolution_algebroid(pair_groupoid(["1", "2"]))).dim == 8


def test_weakly_grouplike_examples():
    g = pair_groupoid(["1", "2"])
    a = convolution_algebroid(g)
    c = a.coalgebra
    d = {idx(a, "(1,2)"): ONE}
    assert weakly_grouplike_witness(c, d) == d
    bis = {idx(a, "(1,2)"): ONE, idx(a, "(2,1)"): ONE}
    assert weakly_grouplike_witness(c, bis) == bis
    same_target = {idx(a, "(1,1)"): ONE, idx(a, "(1,2)"): ONE}
    assert weakly_grouplike_witness(c, same_target) is None
    assert s_invariant_witness(a, d) == d
    assert s_invariant_witness(a, bis) == bis
    assert s_invariant_witness(a, same_target) is None


def test_block_violation():
    a = convolution_algebroid(unit_groupoid(["a", "b"]))
    bad = rebuild(a, comult=[{(0, 1): ONE}, {(1, 1): ONE}])
    with pytest.raises(BlockViolation):
        require_blocks(bad.coalgebra)
    assert not check_bialgebroid(bad).check("block_condition").passed


def test_random_basis_change_is_inverse():
    for seed in range(20):
        t, t_inv = random_basis_change(7, seed)
        assert t @ t_inv == SparseMatrix.identity(7)
        assert all(abs(x.numerator) <= 3 and x.denominator <= 3 for x in t.entries.values())


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_convolution_algebroids_pass_everything(seed):
    g = random_groupoid(seed, 3, 4)
    a = convolution_algebroid(g)
    assert check_bialgebroid(a).ok
    assert check_hopf(a).ok
    assert check_principal_algebroid(a).ok


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_counit_of_antipode_is_source(seed):
    g = random_groupoid(seed)
    a = convolution_algebroid(g)
    for i, arrow in enumerate(g.arrows):
        assert a.coalgebra.eps(a.S({i: ONE})) == {a.base.index[g.src[arrow]]: 1}


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_block_dims_match_fiber_counts(seed):
    g = random_groupoid(seed)
    a = convolution_algebroid(g)
    into = {x: len(g.arrows_to[x]) for x in g.objects}
    out = {x: len(g.arrows_from[x]) for x in g.objects}
    assert tensor_ll(a).dim == sum(n * n for n in into.values())
    assert tensor_rl(a).dim == sum(out[x] * into[x] for x in g.objects)
    m = delta_bar_matrix(a.coalgebra, a.product, a.rl)
    assert (m.rows, m.cols) == (tensor_ll(a).dim, tensor_rl(a).dim)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_weak_witness_recovers_element(seed):
    # eps(c) . c' = c for every weakly grouplike c
    g = random_groupoid(seed, 3, 3)
    a = convolution_algebroid(g)
    for i in range(a.dim):
        c = {i: Fraction(seed % 5 + 1)}
        w = weakly_grouplike_witness(a.coalgebra, c)
        assert w is not None
        assert a.coalgebra.act0(a.coalgebra.eps(c), w) == c


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_scrambled_algebroids_pass_everything(seed):
    g = random_groupoid(seed, 3, 3)
    a, t = scramble_algebroid(convolution_algebroid(g), seed)
    assert check_bialgebroid(a).ok
    assert check_hopf(a).ok
    assert check_principal_algebroid(a).ok
