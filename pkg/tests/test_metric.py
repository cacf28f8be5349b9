from __future__ import annotations

import cmath
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfcat.metric import (
    DegenerateForm,
    PreMetricGroup,
    b_compose,
    b_inverse,
    class_with_charge,
    condense_invariants,
    center_inventory,
    enumerate_B,
    formula_inventory,
    gauss_sum,
    ising_class,
    modular_charge,
    pointed_condense,
    torsor_table,
    unit_class,
)
from hopfcat.scalar import ONE, SQRT2, ZETA8, CycScalar, pretty

from test_scalar import numeric


def form(orders, fn):
    G = PreMetricGroup(tuple(orders), {})
    G.q = {x: Fraction(fn(x)) % 1 for x in G.elements()}
    return G


def test_toric_code_form():
    G = PreMetricGroup((2, 2), {(0, 0): Fraction(0), (1, 0): Fraction(0), (0, 1): Fraction(0), (1, 1): Fraction(1, 2)})
    r = gauss_sum(G)
    assert r.sq_magnitude == 4 and r.charge == 0


def test_z4_form_charge_one():
    r = gauss_sum(form((4,), lambda x: Fraction(x[0] ** 2, 8)))
    assert r.value == 2 * ZETA8 and r.charge == 1


def test_degenerate_form_is_flagged():
    with pytest.raises(DegenerateForm) as exc:
        gauss_sum(form((2,), lambda x: 0))
    assert exc.value.value == 4


def test_b_enumeration():
    B = enumerate_B()
    assert len(B) == 16
    pointed = [b for b in B if b.kind == "pointed"]
    assert {b.charge for b in pointed} == {Fraction(k) for k in range(8)}
    assert {b.charge for b in B if b.kind == "ising"} == {Fraction(2 * k + 1, 2) for k in range(8)}
    assert sum(1 for b in pointed if b.group.orders == (2, 2)) == 4


def test_ising_charges_from_twists():
    # oracle: Σ d² θ computed in floating point from the twist table
    for nu in range(1, 16, 2):
        b = ising_class(nu)
        dims = [s.dim for s in b.simples]
        twists = [s.twist for s in b.simples]
        z = sum(numeric(d) ** 2 * cmath.exp(2j * cmath.pi * float(t)) for d, t in zip(dims, twists))
        assert abs(z - 2 * cmath.exp(2j * cmath.pi * nu / 16)) < 1e-9
        assert modular_charge(dims, twists) == Fraction(nu, 2) == b.charge


def test_group_law():
    u = unit_class()
    assert b_compose(u, u) is u
    one = class_with_charge(Fraction(1, 2))
    assert b_compose(one, one).charge == 1 and b_compose(one, one).kind == "pointed"
    for b in enumerate_B():
        assert b_compose(b, b_inverse(b)) is u
    # generator of order 16
    seen, x = set(), u
    for _ in range(16):
        x = b_compose(x, one)
        seen.add(x.name)
    assert len(seen) == 16


def test_pointed_quotient_cross_check():
    P = [b for b in enumerate_B() if b.kind == "pointed"]
    for b1, b2 in product(P, P):
        assert pointed_condense(b1, b2).charge == b_compose(b1, b2).charge


def test_unit_acts_trivially():
    inv = formula_inventory(1)
    out = condense_invariants(inv, unit_class())
    assert out.dims_text() == inv.dims_text() and out.integral and out.charge_offset == 0


@pytest.mark.parametrize("n", [0, 1, 3])
def test_torsor_tables(n):
    tab = torsor_table(n)
    assert len({t.fingerprint() for t in tab}) == 16
    d = 2**n
    integral = [t for t in tab if t.integral]
    non = [t for t in tab if not t.integral]
    assert len(integral) == len(non) == 8
    assert {t.dims_text() for t in integral} == {f"(1,1,{d},{d})"}
    assert {t.dims_text() for t in non} == {"(1,1," + pretty(d * SQRT2) + ")"}
    # 1 + 1 + d² + d² and 1 + 1 + (d√2)² agree
    assert {t.sum_squares() for t in tab} == {CycScalar.rational(2 + 2 * d * d)}


def test_live_and_formula_inventories_agree():
    for n in (0, 1):
        live, formula = center_inventory(n, live=True), formula_inventory(n)
        assert live.dims_text() == formula.dims_text()
        assert [r.projective for r in live.records] == [r.projective for r in formula.records]
        assert live.cartan == formula.cartan


# -- Gauss-sum magnitude -----------------------------------------------------
@st.composite
def quadratic_forms(draw):
    orders = draw(st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=3).filter(lambda o: math.prod(o) <= 64))
    diag = [draw(st.integers(0, 2 * n - 1)) for n in orders]
    cross = {
        (i, j): draw(st.integers(0, math.gcd(orders[i], orders[j]) - 1))
        for i in range(len(orders))
        for j in range(i + 1, len(orders))
    }

    def q(x):
        v = sum(Fraction(a * xi * xi, 2 * n) for a, xi, n in zip(diag, x, orders))
        v += sum(Fraction(c * x[i] * x[j], math.gcd(orders[i], orders[j])) for (i, j), c in cross.items())
        return v

    return form(orders, q)


@given(quadratic_forms().filter(lambda G: G.is_nondegenerate()))
def test_gauss_sum_magnitude(G):
    r = gauss_sum(G)
    assert r.sq_magnitude == G.order()
    assert r.charge is not None and r.charge.denominator in (1, 2)
    assert abs(numeric(r.value) - sum(cmath.exp(2j * cmath.pi * float(v)) for v in G.values())) < 1e-9


@given(quadratic_forms())
def test_gauss_sum_radical_formula(G):
    assert G.is_quadratic()
    r = gauss_sum(G, strict=False)
    rad = G.radical()
    # |Σ|² = |G||Rad| when q vanishes on the radical, else 0
    vanish = all(G.q[x] == 0 for x in rad)
    assert r.sq_magnitude == (G.order() * len(rad) if vanish else 0)
