"""Verification suites producing structured, anchored reports."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import catalog
from .algebra import (
    basis_elt,
    composition_multiplicities,
    elt_equal,
    elt_scale,
    is_isomorphic,
)
from .hopf import (
    HopfAlgebra,
    QTStructure,
    appendix_gamma,
    appendix_R,
    check_hopf_axioms,
    check_quasitriangular,
    conjugates_to_s2,
    drinfeld_element,
    drinfeld_u_expected,
    dual_integrals,
    dual_module,
    functional_eval,
    lambda_s,
    sigma_minus,
    sigma_minus_inv,
    sigma_plus,
    sigma_plus_inv,
    t_contract_leg,
    t_equal,
    t_flip,
    t_from_elements,
    t_insert_unit,
    t_map_leg,
    t_mul,
    t_to_element,
    tensor_module,
)
from .linalg import ExactMatrix, rank
from .metric import (
    b_compose,
    b_inverse,
    enumerate_B,
    gauss_sum,
    ising_fermion_ok,
    mod8,
    pointed_condense,
    torsor_table,
    unit_class,
)
from .repcat import (
    MixedMonodromy,
    centralization_type,
    factorizability_check,
    integer_pairing_check,
    inventory,
    lagrangian_check,
    mueger_center,
    sqfree_grading,
    z2_grading,
)
from .scalar import I, ONE, ZERO, ZETA8, CycScalar, pretty, to_text

REPORT_SCHEMA = "hopfcat-report-1"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------
@dataclass
class Entry:
    check_id: str
    paper_anchor: str
    status: str  # "pass" | "fail" | "skip"
    witness: object = None
    elapsed_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {"check_id": self.check_id, "paper_anchor": self.paper_anchor, "status": self.status, "witness": self.witness}
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(e.status == "pass" for e in self.entries if e.status != "skip")

    def add(self, check_id: str, anchor: str, ok, witness=None, elapsed_ms: float = 0.0) -> Entry:
        if not anchor:
            raise ValueError("every entry needs an anchor")
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        entry = Entry(check_id, anchor, status, _jsonable(witness), elapsed_ms)
        self.entries.append(entry)
        return entry

    def run(self, check_id: str, anchor: str, fn: Callable[[], tuple]) -> Entry:
        t0 = time.perf_counter()
        try:
            ok, witness = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, witness = False, f"{type(exc).__name__}: {exc}"
        return self.add(check_id, anchor, ok, witness, 1000 * (time.perf_counter() - t0))

    def extend(self, other: VerificationReport) -> None:
        self.entries.extend(other.entries)

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "fail"]

    def entry(self, check_id: str) -> Entry:
        for e in self.entries:
            if e.check_id == check_id:
                return e
        raise KeyError(check_id)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "overall": self.overall,
            "entries": [e.to_dict(timing) for e in self.entries],
        }

    def to_json(self, timing: bool = True, pretty: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2 if pretty else None, ensure_ascii=False, sort_keys=False)


def _jsonable(x):
    if isinstance(x, CycScalar):
        return to_text(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# copairing conditions
# ---------------------------------------------------------------------------
COPAIRING_ANCHORS = {
    1: "copairing(1): gamma non-degenerate",
    2: "copairing(2): (id⊗ε)(γ) = 1 = (ε⊗id)(γ)",
    3: "copairing(3): (id⊗S)(γ) = (S⊗id)(γ)",
    4: "copairing(4): (Δ⊗id)(γ) = γ13γ23 and (id⊗Δ)(γ) = γ12γ13",
    5: "copairing(5): (λ⊗λ)((id⊗S)(γ)) = 1",
    6: "copairing(6): (id⊗S²)(γ) = γ21",
}


def tensor_matrix(H: HopfAlgebra, X: dict) -> ExactMatrix:
    return ExactMatrix.from_triplets(H.dim, H.dim, [(a, b, c) for (a, b), c in X.items()])


def verify_copairing_conditions(H: HopfAlgebra, gamma: dict, lam, tag: str = "") -> VerificationReport:
    A = H.alg
    rep = VerificationReport()
    pre = f"copairing[{tag}]" if tag else "copairing"

    def c1():
        r = rank(tensor_matrix(H, gamma))
        return r == H.dim, {"rank": r}

    def c2():
        left = t_to_element(t_contract_leg(gamma, 1, H.counit))
        right = t_to_element(t_contract_leg(gamma, 0, H.counit))
        return elt_equal(left, A.unit) and elt_equal(right, A.unit), None

    def c3():
        return t_equal(t_map_leg(gamma, 1, H.S_basis), t_map_leg(gamma, 0, H.S_basis)), None

    def c4():
        g12, g13, g23 = t_insert_unit(A, gamma, 2), t_insert_unit(A, gamma, 1), t_insert_unit(A, gamma, 0)
        left = t_equal(t_map_leg(gamma, 0, H.delta_basis, 2), t_mul(A, g13, g23))
        right = t_equal(t_map_leg(gamma, 1, H.delta_basis, 2), t_mul(A, g12, g13))
        return left and right, {"delta_left": left, "delta_right": right}

    def c5():
        gs = t_map_leg(gamma, 1, H.S_basis)
        v = sum((c * lam[a] * lam[b] for (a, b), c in gs.items()), ZERO)
        return v == ONE, {"value": v}

    def c6():
        s2 = lambda i: H.S(H.S_basis(i))
        return t_equal(t_map_leg(gamma, 1, s2), t_flip(gamma)), None

    for k, fn in enumerate((c1, c2, c3, c4, c5, c6), start=1):
        rep.run(f"{pre}.{k}", COPAIRING_ANCHORS[k], fn)
    return rep


# ---------------------------------------------------------------------------
# sextuplets
# ---------------------------------------------------------------------------
@dataclass
class Sextuplet:
    name: str
    R: dict
    sigma: dict
    sigma_inv: dict
    g: dict
    lam_s: CycScalar
    gamma: dict
    beta: CycScalar


SEXTUPLET_ANCHORS = {
    1: "sextuplet(1): γ = (σ⁻¹⊗1)Δ(σ)(1⊗σ⁻¹)",
    2: "sextuplet(2): λ(S(h)) = λ(σhσ⁻¹) for all h",
    3: "sextuplet(3): λ(σ) = β²",
    4: "sextuplet(4): h ↦ σhσ⁻¹ is a Hopf isomorphism H → H^cop",
    5: "sextuplet(5): S(σ) = σ",
    6: "sextuplet(6): γ = Σ σγ1σ⁻¹ ⊗ σ⁻¹S(γ2)σ",
}


def verify_sextuplet(H: HopfAlgebra, sx: Sextuplet, qt_check: bool = True) -> VerificationReport:
    A = H.alg
    rep = VerificationReport()
    pre = f"sextuplet[{sx.name}]"
    lam = lambda_s(H, sx.lam_s)
    sig, sinv = sx.sigma, sx.sigma_inv
    conj = lambda h: A.prod(sig, h, sinv)

    if qt_check:
        rep.run(
            f"{pre}.0",
            "sextuplet(0): (H, R) quasitriangular, σ invertible, g = 1",
            lambda: (
                check_quasitriangular(H, QTStructure(H, sx.R)).ok
                and elt_equal(A.mul(sig, sinv), A.unit)
                and elt_equal(A.mul(sinv, sig), A.unit)
                and elt_equal(sx.g, A.unit),
                None,
            ),
        )

    def c1():
        got = t_mul(A, t_mul(A, t_from_elements(sinv, A.unit), H.coproduct(sig)), t_from_elements(A.unit, sinv))
        ok = t_equal(got, sx.gamma)
        witness = None if ok else {"equals_gamma21": t_equal(got, t_flip(sx.gamma))}
        return ok, witness

    def c2():
        bad = [
            A.basis_labels[i]
            for i in range(H.dim)
            if functional_eval(lam, H.S_basis(i)) != functional_eval(lam, conj(basis_elt(i)))
        ]
        return not bad, {"violations": bad}

    def c3():
        v = functional_eval(lam, sig)
        return v == sx.beta * sx.beta, {"lambda_sigma": v, "beta_squared": sx.beta * sx.beta}

    def c4():
        images = [conj(basis_elt(i)) for i in range(H.dim)]
        bij = rank(ExactMatrix.from_columns([[im.get(k, ZERO) for k in range(H.dim)] for im in images], H.dim)) == H.dim
        cop = all(
            t_equal(
                t_flip(H.coproduct(images[i])),
                t_map_leg(t_map_leg(H.delta[i], 0, lambda k: images[k]), 1, lambda k: images[k]),
            )
            for i in range(H.dim)
        )
        counit = all(H.eps(images[i]) == H.counit[i] for i in range(H.dim))
        # antipode of H^cop is S^{-1}
        anti = all(elt_equal(H.Sinv(images[i]), conj(H.S_basis(i))) for i in range(H.dim))
        return bij and cop and counit and anti, {"bijective": bij, "coalgebra": cop, "counit": counit, "antipode": anti}

    def c5():
        return elt_equal(H.S(sig), sig), None

    def c6():
        stated = t_map_leg(t_map_leg(sx.gamma, 0, lambda k: conj(basis_elt(k))), 1, lambda k: A.prod(sinv, H.S_basis(k), sig))
        if t_equal(stated, sx.gamma):
            return True, {"reading": "σγ1σ⁻¹ ⊗ σ⁻¹S(γ2)σ"}
        other = t_map_leg(
            t_map_leg(sx.gamma, 0, lambda k: A.prod(sinv, basis_elt(k), sig)), 1, lambda k: conj(H.S_basis(k))
        )
        if t_equal(other, sx.gamma):
            return True, {"reading": "σ⁻¹γ1σ ⊗ σS(γ2)σ⁻¹"}
        return False, {"reading": None}

    for k, fn in enumerate((c1, c2, c3, c4, c5, c6), start=1):
        rep.run(f"{pre}.{k}", SEXTUPLET_ANCHORS[k], fn)
    return rep


def sign_character_value(H: HopfAlgebra, h: dict) -> CycScalar:
    return sum((c * H.sign_character[i] for i, c in h.items()), ZERO)


def distinguishing_invariants(H: HopfAlgebra, sx: Sextuplet) -> tuple:
    """(β, χ(σ)) with χ the character u ↦ -1, x, y ↦ 0."""
    return sx.beta, sign_character_value(H, sx.sigma)


# ---------------------------------------------------------------------------
# H(2) constants and their mutations
# ---------------------------------------------------------------------------
def appendix_constants(H: HopfAlgebra) -> dict:
    return {
        "R": appendix_R(H),
        "gamma": appendix_gamma(H),
        "sigma+": sigma_plus(H),
        "sigma+inv": sigma_plus_inv(H),
        "sigma-": sigma_minus(H),
        "sigma-inv": sigma_minus_inv(H),
        "lambda": {"+i": I, "-i": -I},
        "zeta": ZETA8,
        "u": drinfeld_u_expected(H),
    }


def _scaled_entry(X: dict, key, factor) -> dict:
    out = dict(X)
    out[key] = out[key] * factor
    return out


def _h2_key(H: HopfAlgebra, w1: str, w2: str):
    L = H.alg.basis_labels
    return (L.index(w1), L.index(w2))


def mutations(H: HopfAlgebra) -> dict:
    """Named single-constant corruptions of the H(2) constants."""

    def gamma_entry(w1, w2, factor):
        def mut(c):
            c = dict(c)
            c["gamma"] = _scaled_entry(c["gamma"], _h2_key(H, w1, w2), factor)
            return c

        return mut

    def R_entry(w1, w2, factor):
        def mut(c):
            c = dict(c)
            c["R"] = _scaled_entry(c["R"], _h2_key(H, w1, w2), factor)
            return c

        return mut

    def lam_scale(factor):
        def mut(c):
            c = dict(c)
            c["lambda"] = {k: v * factor for k, v in c["lambda"].items()}
            return c

        return mut

    def zeta_power(k):
        def mut(c):
            c = dict(c)
            c["zeta"] = CycScalar.root_of_unity(k, 8)
            return c

        return mut

    def sigma_a(c):
        # swaps a and ā in σ+
        c = dict(c)
        c["sigma+"] = H.alg.mul(basis_elt(H.alg.basis_labels.index("u")), c["sigma+"])
        return c

    return {
        "gamma.xy⊗xy": gamma_entry("xy", "xy", -1),
        "gamma.1⊗1": gamma_entry("1", "1", 2),
        "gamma.u⊗u": gamma_entry("u", "u", -1),
        "gamma.x⊗y": gamma_entry("x", "y", -1),
        "gamma.y⊗ux": gamma_entry("y", "ux", 2),
        "lambda.scale": lam_scale(-I),
        "R.u⊗u": R_entry("u", "u", -1),
        "R.uxy⊗uxy": R_entry("uxy", "uxy", 2),
        "zeta.power": zeta_power(3),
        "sigma+.a": sigma_a,
    }


def standard_sextuplets(H: HopfAlgebra, const: dict | None = None) -> list[Sextuplet]:
    c = const or appendix_constants(H)
    one = H.alg.unit
    out = []
    z = c["zeta"]
    for lam_key, betas in (("+i", (z, -z)), ("-i", (I * z, -I * z))):
        for sname in ("+", "-"):
            for beta, bname in zip(betas, ("+", "-")):
                tag = f"σ{sname},λ{lam_key},β{bname}{'ζ' if lam_key == '+i' else 'iζ'}"
                out.append(
                    Sextuplet(tag, c["R"], c[f"sigma{sname}"], c[f"sigma{sname}inv"], dict(one), c["lambda"][lam_key], c["gamma"], beta)
                )
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------
def hopf_suite(n_max_nichols: int = 3, const: dict | None = None) -> VerificationReport:
    rep = VerificationReport()
    for n in range(n_max_nichols + 1):
        H, ru = catalog.nichols_pair(n)

        def check(H=H, ru=ru):
            a = check_hopf_axioms(H)
            q = check_quasitriangular(H, ru)
            return a.ok and q.ok and q.triangular, {"hopf": a.failures, "qt": q.failures, "triangular": q.triangular}

        rep.run(f"hopf.nichols({n})", "(H(n), R_u) is a triangular Hopf algebra", check)
    H, _ = catalog.nichols_pair(2)
    c = const or appendix_constants(H)
    qt = QTStructure(H, c["R"], name="appendix")

    def qt_check():
        q = check_quasitriangular(H, qt)
        return q.ok and not q.triangular, {"failures": q.failures, "triangular": q.triangular}

    rep.run("hopf.appendix.R", "(H(2), R) quasitriangular, not triangular", qt_check)

    def drinfeld():
        u = drinfeld_element(H, qt)
        return elt_equal(u, c["u"]) and conjugates_to_s2(H, u), {"u": H.alg.label(u)}

    rep.run("hopf.appendix.drinfeld", "Drinfeld element u(1+2xy)", drinfeld)

    def sigma_sq():
        A = H.alg
        ok = all(
            elt_equal(A.mul(c[f"sigma{s}"], c[f"sigma{s}"]), c["u"])
            and elt_equal(A.mul(c[f"sigma{s}"], c[f"sigma{s}inv"]), A.unit)
            for s in "+-"
        )
        return ok, None

    rep.run("hopf.appendix.sigma", "σ±² = u(1+2xy), σ±σ±⁻¹ = 1", sigma_sq)

    def integral_span():
        ig = dual_integrals(H)
        lam = lambda_s(H, 1)
        spans = len(ig.left_dual) == 1 and all(
            ig.left_dual[0][i] * lam[j] == ig.left_dual[0][j] * lam[i] for i in range(H.dim) for j in range(H.dim)
        )
        support = [H.alg.basis_labels[i] for i, v in enumerate(ig.left_dual[0]) if v] if ig.left_dual else []
        return spans, {"integral_dim": len(ig.left_dual), "support": support}

    rep.run("hopf.appendix.integral_span", "integrals of H(2)* are s((xy)* + (uxy)*)", integral_span)

    def dual_unimodular():
        ig = dual_integrals(H)
        g_trivial = ig.distinguished_grouplike is not None and elt_equal(ig.distinguished_grouplike, H.alg.unit)
        return len(ig.left_dual) == 1 and ig.dual_unimodular and g_trivial, {
            "integral_dim": len(ig.left_dual),
            "dual_unimodular": ig.dual_unimodular,
            "g": H.alg.label(ig.distinguished_grouplike or {}),
        }

    rep.run("hopf.appendix.dual_unimodular", "H(2)* unimodular with distinguished grouplike g = 1", dual_unimodular)
    return rep


def appendix_suite(const: dict | None = None, seed: int | None = None) -> VerificationReport:
    H, _ = catalog.nichols_pair(2)
    c = const or appendix_constants(H)
    rep = VerificationReport()
    for key, s in c["lambda"].items():
        rep.extend(verify_copairing_conditions(H, c["gamma"], lambda_s(H, s), tag=f"λ{key}"))
    sexts = standard_sextuplets(H, c)
    for k, sx in enumerate(sexts):
        rep.extend(verify_sextuplet(H, sx, qt_check=(k == 0)))

    def invariants():
        pairs = [distinguishing_invariants(H, sx) for sx in sexts]
        chi_ok = all(chi == (-I if sx.name.startswith("σ+") else I) for sx, (_, chi) in zip(sexts, pairs))
        distinct = len({(to_text(b.minimal()), to_text(x.minimal())) for b, x in pairs}) == len(pairs)
        return distinct and chi_ok, {sx.name: [b, x] for sx, (b, x) in zip(sexts, pairs)}

    rep.run("sextuplet.invariants", "(β, χ(σ)) pairwise distinct with χ(σ±) = ∓i", invariants)
    rep.add(
        "sextuplet.construction",
        "braided category on Rep(H)+Vec from each sextuplet",
        "skip",
        "external construction, conditions verified",
    )

    def slight():
        H2, R = catalog.appendix_pair()
        ctx = catalog.appendix_context(seed)
        fact = factorizability_check(H2, R)
        center = mueger_center(ctx)
        return (not fact) and sorted(center) == ["1", "S"], {"factorizable": fact, "centralizer": center}

    rep.run("appendix.slightly_degenerate", "Rep(H(2), R) slightly degenerate: centralizer = ⟨1, S⟩", slight)
    return rep


def verify_center(n: int, seed: int | None = None) -> VerificationReport:
    rep = VerificationReport()
    pre = f"center({n})"
    D, qt = catalog.double_pair(n)
    H, _ = catalog.nichols_pair(n)
    ctx = catalog.center_context(n, seed)
    d = 2**n

    rep.run(f"{pre}.double_axioms", "D(H) is a quasitriangular Hopf algebra", lambda: (check_hopf_axioms(D).ok and check_quasitriangular(D, qt).ok, None))
    rep.run(f"{pre}.factorizable", "Z(E) non-degenerate (D(H) factorizable)", lambda: (factorizability_check(D, qt), None))

    def simples():
        dims = [S.dim for S in ctx.simples]
        return sorted(dims) == [1, 1, d, d] and sorted(ctx.labels()) == ["1", "S", "p", "q"], {"labels": ctx.labels(), "dims": dims}

    rep.run(f"{pre}.simples", "exactly four simples 1, S, p, q with FPdim(p) = FPdim(E)/2", simples)

    def block_sum():
        total = sum(S.dim * P.dim for S, P in zip(ctx.simples, ctx.pims))
        return total == 4 ** (n + 1), {"sum": total}

    rep.run(f"{pre}.fpdim", "Σ dim S_i dim P_i = FPdim(Z(E))", block_sum)

    def projectivity():
        flags = {S.name: S.dim == P.dim for S, P in zip(ctx.simples, ctx.pims)}
        want = {"1": n == 0, "S": n == 0, "p": True, "q": True}
        return flags == want, flags

    rep.run(f"{pre}.projective", "p, q projective (P(p) = p); 1, S not projective for n ≥ 1", projectivity)

    p, q, S = ctx.simple("p"), ctx.simple("q"), ctx.simple("S")
    rep.run(f"{pre}.q_is_pS", "q ≅ p⊗S ≇ p", lambda: (is_isomorphic(tensor_module(D, p, S), q) and not is_isomorphic(p, q), None))

    def ppdual():
        M = tensor_module(D, p, dual_module(D, p))
        return is_isomorphic(M, ctx.pim("1")), {"dim": M.dim}

    rep.run(f"{pre}.p_pdual", "p⊗p* ≅ P(1)", ppdual)

    def parity():
        pd = dual_module(D, p)
        self_dual = is_isomorphic(pd, p)
        return self_dual == (n % 2 == 0) and (self_dual or is_isomorphic(pd, q)), {"self_dual": self_dual}

    rep.run(f"{pre}.duality", "p, q self-dual iff dim W even", parity)

    def grading():
        gr = z2_grading(ctx)
        types = {X.name: centralization_type(ctx, S, X) for X in ctx.simples}
        proj = sorted(X.name for X, P in zip(ctx.simples, ctx.pims) if X.dim == P.dim and X.dim == d)
        ok = sorted(gr.members(0)) == ["1", "S"] and sorted(gr.members(1)) == ["p", "q"]
        if n >= 1:
            ok = ok and sorted(gr.members(1)) == proj
        return ok, {"monodromy_with_S": types}

    rep.run(f"{pre}.grading", "faithful Z/2 grading C = C0 ⊕ C1 with C0 simples {1, S}", grading)

    def lagrangian():
        v = lagrangian_check(ctx)
        ok = v.lagrangian and v.ledger["fpdim_E_squared_equals_fpdim_C"] and v.ledger["fpdim_E"] ** 2 == 4 ** (n + 1)
        return ok, {"centralizer": v.centralizer, "members": v.members, "ledger": v.ledger}

    rep.run(f"{pre}.lagrangian", "E Lagrangian in Z(E): FPdim(E)² = FPdim(Z(E))", lagrangian)

    def unimodular():
        dD = dual_integrals(D)
        dH = dual_integrals(H)
        return dD.unimodular and dH.unimodular == (n % 2 == 0), {"D": dD.unimodular, "H": dH.unimodular}

    rep.run(f"{pre}.unimodular", "D(H) unimodular; H(n) unimodular iff n even", unimodular)

    def composition():
        if n == 0:
            return True, None
        mult = composition_multiplicities(ctx.pim("1"), ctx.blocks)
        half = 2 ** (2 * n - 1)
        return mult == {"1": half, "S": half, "p": 0, "q": 0}, mult

    rep.run(f"{pre}.P1_factors", "P(1) has composition factors only 1 and S", composition)
    return rep


def bgroup_suite() -> VerificationReport:
    rep = VerificationReport()
    B = enumerate_B()

    def counts():
        pointed = [b for b in B if b.kind == "pointed"]
        z22 = [b for b in pointed if b.group.orders == (2, 2)]
        z4 = [b for b in pointed if b.group.orders == (4,)]
        ising = [b for b in B if b.kind == "ising"]
        return (len(B), len(z22), len(z4), len(ising)) == (16, 4, 4, 8), {"total": len(B), "Z2xZ2": len(z22), "Z4": len(z4), "ising": len(ising)}

    rep.run("B.count", "16 classes: 4 on Z/2×Z/2, 4 on Z/4, 8 Ising", counts)

    def gauss():
        ok = all(gauss_sum(b.group).sq_magnitude == b.group.order() for b in B if b.kind == "pointed")
        ok = ok and all(ising_fermion_ok(b) for b in B if b.kind == "ising")
        return ok, None

    rep.run("B.gauss", "|Gauss sum|² = |G| and Lagrangian fermions", gauss)

    def injective():
        charges = [b.charge for b in B]
        return len(set(charges)) == 16 and set(charges) == {Fraction(k, 2) for k in range(16)}, {b.name: b.charge for b in B}

    rep.run("B.injective", "charge injective onto (1/2)Z/8Z", injective)

    def additive():
        bad = []
        for b1 in B:
            for b2 in B:
                c = b_compose(b1, b2)
                if c.charge != mod8(b1.charge + b2.charge):
                    bad.append((b1.name, b2.name))
                if b1.kind == b2.kind == "pointed" and pointed_condense(b1, b2).charge != c.charge:
                    bad.append((b1.name, b2.name, "quotient"))
        unit = unit_class()
        ok = not bad and all(b_compose(b, b_inverse(b)) is unit for b in B)
        return ok, {"violations": bad}

    rep.run("B.group_law", "B ≅ Z/16 under the modified product", additive)
    return rep


def torsor_suite(n: int, live: bool | None = None) -> VerificationReport:
    rep = VerificationReport()
    pre = f"torsor({n})"
    tab = torsor_table(n, live)
    d = CycScalar.rational(2**n)
    from .scalar import SQRT2

    def table():
        fps = {t.fingerprint() for t in tab}
        integral = [t for t in tab if t.integral]
        non = [t for t in tab if not t.integral]
        ok = len(tab) == 16 and len(fps) == 16 and len(integral) == 8 and len(non) == 8
        ok = ok and all(sorted(map(pretty, t.dims())) == sorted(map(pretty, [ONE, ONE, d, d])) for t in integral)
        ok = ok and all(sorted(map(pretty, t.dims())) == sorted(map(pretty, [ONE, ONE, d * SQRT2])) for t in non)
        return ok, [t.summary() for t in tab]

    rep.run(f"{pre}.table", "B acts freely: 8 integral + 8 non-integral classes", table)

    def fusion():
        bad = []
        for t in tab:
            ok, viol = integer_pairing_check(t.dims(), t.cartan)
            gr = sqfree_grading(t)
            if not ok or gr.order != (1 if t.integral else 2) or not gr.multiplicative:
                bad.append(t.name)
        return not bad, {"violations": bad}

    rep.run(f"{pre}.fusion", "d_i d_j integral on linked pairs; square-free grading Z/2 on non-integral", fusion)

    def projective_simples():
        bad = []
        for t in tab:
            proj = [r for r in t.records if r.projective and r.fpdim != ONE]
            if len(proj) != (2 if t.integral else 1) and n >= 1:
                bad.append(t.name)
        return not bad, {"violations": bad}

    rep.run(f"{pre}.projectives", "2 projective simples P, P⊗S (integral) or 1 (non-integral)", projective_simples)
    return rep


@dataclass
class RunConfig:
    n_max: int = 2
    suites: tuple = ("hopf", "center", "appendix", "bgroup", "torsor")
    seed: int | None = None
    faults: tuple = ()


SUITES = ("hopf", "center", "appendix", "bgroup", "torsor")


def run_all(config: RunConfig | None = None) -> VerificationReport:
    config = config or RunConfig()
    if not 0 <= config.n_max <= 2:
        raise ValueError("n_max must be in 0..2")
    unknown = set(config.suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    H2, _ = catalog.nichols_pair(2)
    const = appendix_constants(H2)
    muts = mutations(H2)
    for f in config.faults:
        if f not in muts:
            raise ValueError(f"unknown fault {f!r}")
        const = muts[f](const)
    rep = VerificationReport()
    if "hopf" in config.suites:
        rep.extend(hopf_suite(3, const))
    if "center" in config.suites:
        for n in range(config.n_max + 1):
            rep.extend(verify_center(n, config.seed))
    if "appendix" in config.suites:
        rep.extend(appendix_suite(const, config.seed))
    if "bgroup" in config.suites:
        rep.extend(bgroup_suite())
    if "torsor" in config.suites:
        for n in range(config.n_max + 1):
            rep.extend(torsor_suite(n))
    return rep
