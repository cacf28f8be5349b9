from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfcat import catalog
from hopfcat.algebra import is_isomorphic
from hopfcat.hopf import dual_module, tensor_module
from hopfcat.repcat import (
    UnrealizedSubcategory,
    braiding,
    centralization_type,
    factorizability_check,
    factorizability_rank,
    fermions,
    hexagon_consequence,
    integer_pairing_check,
    inventory,
    lagrangian_check,
    monodromy,
    mueger_center,
    self_braiding_scalar,
    sqfree_grading,
    squarefree_class,
    z2_grading,
)
from hopfcat.scalar import ONE, SQRT2, CycScalar

from conftest import SEED


def test_center_of_svec_is_pointed_with_fermion():
    ctx = catalog.center_context(0, SEED)
    assert sorted(ctx.labels()) == ["1", "S", "p", "q"]
    assert fermions(ctx) == ["S"]
    assert self_braiding_scalar(ctx, ctx.simple("S")) == -ONE
    assert lagrangian_check(ctx, ["S"]).lagrangian


@pytest.mark.parametrize("n", [0, 1])
def test_center_grading_and_duals(n):
    ctx = catalog.center_context(n, SEED)
    gr = z2_grading(ctx)
    assert gr.faithful and gr.classes == {"1": 0, "S": 0, "p": 1, "q": 1}
    D = ctx.hopf
    p, q, S = ctx.simple("p"), ctx.simple("q"), ctx.simple("S")
    assert is_isomorphic(tensor_module(D, p, S), q)
    assert is_isomorphic(dual_module(D, p), p if n % 2 == 0 else q)
    assert centralization_type(ctx, S, p) == -1 and centralization_type(ctx, S, S) == 1


def test_d_h1_inventory():
    inv = inventory(catalog.center_context(1, SEED))
    assert inv.dims_text() == "(1,1,2,2)" and inv.integral
    assert [r.projective for r in inv.records] == [False, False, True, True]
    assert inv.record("p").dual_label == "q"
    assert inv.fpdim() == CycScalar.rational(16)
    assert inv.sum_squares() == CycScalar.rational(10)


def test_lagrangian_pullback_and_sign_only():
    ctx = catalog.center_context(1, SEED)
    v = lagrangian_check(ctx)
    assert v.symmetric and v.lagrangian
    assert v.ledger["fpdim_E"] == 4 and v.ledger["fpdim_E_squared_equals_fpdim_C"]
    # {1, S} alone is symmetric but not Lagrangian once W ≠ 0
    assert not lagrangian_check(ctx, ["S"]).lagrangian


def test_factorizability():
    for n in (0, 1):
        D, qt = catalog.double_pair(n)
        assert factorizability_check(D, qt)
    H, ru = catalog.nichols_pair(2)
    assert factorizability_rank(H, ru) == 1
    H, R = catalog.appendix_pair()
    assert not factorizability_check(H, R) and factorizability_rank(H, R) == 4


def test_slight_degeneracy_and_symmetric_center():
    ctx = catalog.appendix_context(SEED)
    assert sorted(mueger_center(ctx)) == ["1", "S"]
    sym = catalog.symmetric_context(2, SEED)
    assert sorted(mueger_center(sym)) == sorted(X.name for X in sym.test_objects())


def test_braiding_is_a_module_map_inverse_to_reverse():
    ctx = catalog.center_context(1, SEED)
    p, S = ctx.simple("p"), ctx.simple("S")
    c = braiding(ctx, p, S)
    c_back = braiding(ctx, S, p)
    assert (c_back @ c) == monodromy(ctx, p, S)


def test_fusion_data_identities():
    dims = [ONE, ONE, 2 * SQRT2]
    cartan = [[2, 2, 0], [2, 2, 0], [0, 0, 1]]
    assert integer_pairing_check(dims, cartan)[0]
    ok, bad = integer_pairing_check([ONE, SQRT2], [[1, 1], [1, 1]])
    assert not ok and bad
    assert squarefree_class(2 * SQRT2) == 2 and squarefree_class(CycScalar.rational(4)) == 1
    g = sqfree_grading(dims)
    assert g.group == [1, 2] and g.multiplicative


def test_unrealized_subcategory_is_reported():
    ctx = catalog.center_context(1, SEED)
    with pytest.raises((UnrealizedSubcategory, KeyError)):
        lagrangian_check(ctx, ["nonexistent"], require_realization=True)


# -- hexagon-consequence closure --------------------------------------------
def _pool():
    out = []
    for ctx in (
        catalog.center_context(0, SEED),
        catalog.center_context(1, SEED),
        catalog.appendix_context(SEED),
        catalog.symmetric_context(1, SEED),
    ):
        objs = ctx.test_objects()
        objs = objs + [dual_module(ctx.hopf, X, name=X.name + "*") for X in ctx.simples]
        out.append((ctx, objs))
    return out


POOL = _pool()


@st.composite
def triples(draw):
    ctx, objs = draw(st.sampled_from(POOL))
    return ctx, draw(st.sampled_from(objs)), draw(st.sampled_from(objs)), draw(st.sampled_from(objs))


@given(triples())
def test_hexagon_consequence_closure(t):
    ctx, X, A, B = t
    assert hexagon_consequence(ctx, X, A, B)
    # centralizers are closed under duals
    if monodromy(ctx, X, A).is_identity():
        assert monodromy(ctx, X, dual_module(ctx.hopf, A)).is_identity()
