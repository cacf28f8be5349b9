from __future__ import annotations

import pytest

from hopfcat import catalog
from hopfcat.algebra import basis_elt, elt_equal
from hopfcat.hopf import (
    SKEW_CONVENTIONS,
    OutOfRange,
    QTStructure,
    appendix_R,
    check_duality_maps,
    check_hopf_axioms,
    check_projection,
    check_quasitriangular,
    conjugates_to_s2,
    drinfeld_element,
    drinfeld_u_expected,
    dual_integrals,
    dual_module,
    nichols,
    nichols_element,
    sigma_minus,
    sigma_minus_inv,
    sigma_plus,
    sigma_plus_inv,
    sign_module,
    tensor_module,
    trivial_module,
)
from hopfcat.linalg import ExactMatrix
from hopfcat.scalar import HALF, ONE, ZERO
from hopfcat.serialize import SchemaError, hopf_from_dict, hopf_to_dict


@pytest.mark.parametrize("n", range(4))
def test_nichols_axioms_and_triangular(n):
    H, ru = catalog.nichols_pair(n)
    assert H.dim == 2 ** (n + 1)
    assert check_hopf_axioms(H).ok
    q = check_quasitriangular(H, ru)
    assert q.ok and q.triangular


def test_nichols_range_guard():
    with pytest.raises(OutOfRange):
        nichols(7)
    with pytest.raises(ValueError):
        nichols(1, convention="nonsense")


def test_h2_skew_primitives_and_grouplikes():
    H, _ = catalog.nichols_pair(2)
    u = nichols_element(H, "u")
    assert len(H.grouplikes()) == 2
    assert len(H.skew_primitives(H.alg.unit, u)) == 2
    assert H.skew_primitives(H.alg.unit, H.alg.unit) == []


def _appendix_checks(convention, quartic):
    H, _ = nichols(2, convention)
    return check_quasitriangular(H, QTStructure(H, appendix_R(H, quartic)))


def test_appendix_R_with_half_quartic_is_quasitriangular():
    rep = _appendix_checks("1x+xu", HALF)
    assert rep.ok and rep.triangular is False


def test_appendix_R_as_printed_fails():
    # quartic coefficient 1 instead of 1/2
    rep = _appendix_checks("1x+xu", ONE)
    assert set(rep.failures) >= {"invertible", "delta_left", "delta_right"}


def test_appendix_R_fails_under_other_convention():
    assert SKEW_CONVENTIONS == ("x1+ux", "1x+xu")
    assert not _appendix_checks("x1+ux", HALF).ok


def test_drinfeld_element_and_sigmas():
    H, R = catalog.appendix_pair()
    A = H.alg
    u = drinfeld_element(H, R)
    assert elt_equal(u, drinfeld_u_expected(H))
    assert conjugates_to_s2(H, u)
    for s, si in ((sigma_plus(H), sigma_plus_inv(H)), (sigma_minus(H), sigma_minus_inv(H))):
        assert elt_equal(A.mul(s, s), u)
        assert elt_equal(A.mul(s, si), A.unit) and elt_equal(A.mul(si, s), A.unit)
    # R_u is triangular, so its Drinfeld element is grouplike
    H2, ru = catalog.nichols_pair(2)
    assert len(drinfeld_element(H2, ru)) == 1


@pytest.mark.parametrize("n,expected", [(0, True), (1, False), (2, True), (3, False)])
def test_unimodularity_parity(n, expected):
    H, _ = catalog.nichols_pair(n)
    ig = dual_integrals(H)
    assert ig.unimodular is expected
    # H(n) is self-dual, so H(n)* has the same parity
    assert ig.dual_unimodular is expected
    assert len(ig.left) == 1 and len(ig.left_dual) == 1


def test_h2_dual_integral_is_xy_star():
    H, _ = catalog.nichols_pair(2)
    ig = dual_integrals(H)
    L = H.alg.basis_labels
    assert [L[i] for i, v in enumerate(ig.left_dual[0]) if v] == ["xy"]
    assert elt_equal(ig.distinguished_grouplike, H.alg.unit)


def test_xy_plus_uxy_star_is_not_an_integral():
    # (id⊗λ)Δ(uxy) = λ(uxy) u for λ = (xy)* + (uxy)*, not λ(uxy) 1
    H, _ = catalog.nichols_pair(2)
    L = H.alg.basis_labels
    lam = [ONE if l in ("xy", "uxy") else ZERO for l in L]
    k = L.index("uxy")
    got = {}
    for (a, b), c in H.delta[k].items():
        if lam[b]:
            got[a] = got.get(a, ZERO) + c * lam[b]
    assert {L[a]: c for a, c in got.items() if c} == {"u": ONE}


@pytest.mark.parametrize("n", [0, 1])
def test_double_axioms(n):
    D, qt = catalog.double_pair(n)
    assert D.dim == 4 ** (n + 1)
    assert check_hopf_axioms(D).ok
    q = check_quasitriangular(D, qt)
    assert q.ok and not q.triangular


@pytest.mark.parametrize("n", [0, 1])
def test_double_projection(n):
    H, _ = catalog.nichols_pair(n)
    D, _ = catalog.double_pair(n)
    Hq, P = D.quotient
    assert Hq is H and check_projection(H, D, P)
    # the naive map f ⊗ h -> f(1) h is not a Hopf map
    d = H.dim
    naive = ExactMatrix.from_triplets(d, d * d, [(a, i * d + a, c) for i, c in H.alg.unit.items() for a in range(d)])
    assert check_projection(H, D, naive) is (n == 0)


def test_modules_tensor_dual():
    H, _ = catalog.nichols_pair(1)
    one, S = trivial_module(H), sign_module(H)
    SS = tensor_module(H, S, S)
    assert [m[0, 0] for m in SS.action] == [m[0, 0] for m in one.action]
    reg = catalog.symmetric_context(1).pims[0]
    assert check_duality_maps(H, reg)
    assert dual_module(H, reg).dim == reg.dim


def test_hopf_json_round_trip():
    D, qt = catalog.double_pair(1)
    doc = hopf_to_dict(D, qt)
    H2, q2 = hopf_from_dict(doc)
    assert H2.dim == D.dim and check_hopf_axioms(H2).ok and check_quasitriangular(H2, q2).ok
    bad = dict(doc, delta=doc["delta"] + [[0, 99, 0, "1"]])
    with pytest.raises(SchemaError):
        hopf_from_dict(bad)
    with pytest.raises(SchemaError):
        hopf_from_dict(dict(doc, schema="hopfcat-alg-1"))


def test_basis_elements_act_as_expected():
    H, _ = catalog.nichols_pair(1)
    x = nichols_element(H, "x1")
    assert H.alg.mul(x, x) == {}
    assert elt_equal(H.S(basis_elt(H.alg.basis_labels.index("u"))), basis_elt(H.alg.basis_labels.index("u")))
