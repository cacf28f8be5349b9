"""Acceptance criteria 1-12.

Each criterion is a function returning ``(ok, detail)``.  Under pytest every
result is recorded and a summary line per criterion is printed at the end of
the session; run this file directly to print the lines without pytest.
"""
from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

from hopfcat import catalog
from hopfcat.hopf import check_hopf_axioms, check_quasitriangular, lambda_s
from hopfcat.metric import enumerate_B, torsor_table
from hopfcat.repcat import centralization_type, integer_pairing_check, sqfree_grading
from hopfcat.scalar import ONE, SQRT2, ZETA8, CycScalar, pretty
from hopfcat.verifier import (
    appendix_constants,
    appendix_suite,
    bgroup_suite,
    distinguishing_invariants,
    hopf_suite,
    mutations,
    standard_sextuplets,
    verify_center,
    verify_copairing_conditions,
    verify_sextuplet,
)

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE, SEED  # noqa: E402

COPAIRING_MUTATIONS = ("gamma.xy⊗xy", "gamma.1⊗1", "gamma.u⊗u", "gamma.x⊗y", "gamma.y⊗ux", "lambda.scale")


def _timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def _fails(rep):
    return [e.check_id for e in rep.entries if e.status == "fail"]


def criterion_1():
    def body():
        bad = []
        for n in range(4):
            H, ru = catalog.nichols_pair(n)
            q = check_quasitriangular(H, ru)
            if not (check_hopf_axioms(H).ok and q.ok and q.triangular):
                bad.append(n)
        return not bad, f"failing n: {bad}" if bad else "H(0..3) Hopf, R_u triangular"

    ok, detail, secs = _timed(body)
    return ok and secs < 10, f"{detail} ({secs:.2f}s)"


def criterion_2():
    H, _ = catalog.nichols_pair(2)

    def body():
        rep = hopf_suite(0, appendix_constants(H))
        wanted = [
            "hopf.appendix.R",
            "hopf.appendix.drinfeld",
            "hopf.appendix.sigma",
            "hopf.appendix.integral_span",
            "hopf.appendix.dual_unimodular",
        ]
        bad = [k for k in wanted if rep.entry(k).status != "pass"]
        return not bad, f"failing: {bad}" if bad else "R, u(1+2xy), σ±², integral span, g = 1"

    ok, detail, secs = _timed(body)
    return ok and secs < 5, f"{detail} ({secs:.2f}s)"


def criterion_3():
    H, _ = catalog.nichols_pair(2)

    def body():
        c = appendix_constants(H)
        bad = []
        for s in c["lambda"].values():
            bad += _fails(verify_copairing_conditions(H, c["gamma"], lambda_s(H, s)))
        missed = []
        for name in COPAIRING_MUTATIONS:
            m = mutations(H)[name](c)
            if not any(_fails(verify_copairing_conditions(H, m["gamma"], lambda_s(H, s))) for s in m["lambda"].values()):
                missed.append(name)
        ok = not bad and not missed
        return ok, f"failing {bad}, missed mutations {missed}" if not ok else "6/6 for λ±i, 6/6 mutations caught"

    ok, detail, secs = _timed(body)
    return ok and secs < 10, f"{detail} ({secs:.2f}s)"


def criterion_4():
    H, _ = catalog.nichols_pair(2)

    def body():
        c = appendix_constants(H)
        bad = []
        for k, sx in enumerate(standard_sextuplets(H, c)):
            bad += _fails(verify_sextuplet(H, sx, qt_check=(k == 0)))
        sx = standard_sextuplets(H, c)[0]
        sx.beta = ZETA8**3
        beta_caught = f"sextuplet[{sx.name}].3" in _fails(verify_sextuplet(H, sx, qt_check=False))
        ok = not bad and beta_caught
        return ok, f"failing {bad}; β-mutation caught: {beta_caught}"

    ok, detail, secs = _timed(body)
    return ok and secs < 30, f"{detail} ({secs:.2f}s)"


def criterion_5():
    H, _ = catalog.nichols_pair(2)

    def body():
        sexts = standard_sextuplets(H)
        pairs = [distinguishing_invariants(H, sx) for sx in sexts]
        distinct = len({(str(b.minimal()), str(x.minimal())) for b, x in pairs}) == 8
        chi = all(x == (-CycScalar.root_of_unity(1, 4) if sx.name.startswith("σ+") else CycScalar.root_of_unity(1, 4)) for sx, (_, x) in zip(sexts, pairs))
        return distinct and chi, f"distinct: {distinct}, χ(σ±) = ∓i: {chi}"

    ok, detail, secs = _timed(body)
    return ok and secs < 1, f"{detail} ({secs:.2f}s)"


CENTER_CHECKS = ("factorizable", "simples", "projective", "q_is_pS", "p_pdual", "duality", "fpdim", "double_axioms")


def criterion_6():
    bad = []
    t0 = time.perf_counter()
    for n in range(3):
        rep = verify_center(n, SEED)
        bad += [f"center({n}).{k}" for k in CENTER_CHECKS if rep.entry(f"center({n}).{k}").status != "pass"]
    secs = time.perf_counter() - t0
    return not bad, (f"failing {bad}" if bad else "n = 0, 1, 2 all structure checks") + f" ({secs:.1f}s)"


def criterion_7():
    bad = []
    for n in range(3):
        ctx = catalog.center_context(n, SEED)
        S = ctx.simple("S")
        types = {X.name: centralization_type(ctx, S, X) for X in ctx.simples}
        if any(t not in (1, -1) for t in types.values()):
            bad.append((n, "mixed"))
        class0 = sorted(k for k, t in types.items() if t == 1)
        class1 = sorted(k for k, t in types.items() if t == -1)
        proj = sorted(X.name for X, P in zip(ctx.simples, ctx.pims) if X.dim == P.dim and X.dim == 2**n)
        if class0 != ["1", "S"] or (n >= 1 and class1 != proj) or class1 != ["p", "q"]:
            bad.append((n, class0, class1))
    return not bad, f"failing {bad}" if bad else "monodromy ±id with S; C0 = {1,S}, C1 = projective simples"


def criterion_8():
    bad = []
    for n in range(3):
        rep = verify_center(n, SEED)
        e = rep.entry(f"center({n}).lagrangian")
        if e.status != "pass":
            bad.append((n, e.witness))
    return not bad, f"failing {bad}" if bad else "symmetric, E' = E, FPdim(E)² = 4^(n+1) for n = 0, 1, 2"


def criterion_9():
    rep = appendix_suite(seed=SEED)
    e = rep.entry("appendix.slightly_degenerate")
    return e.status == "pass", f"witness {e.witness}"


def criterion_10():
    t0 = time.perf_counter()
    rep = bgroup_suite()
    secs = time.perf_counter() - t0
    bad = _fails(rep)
    return not bad and secs < 5, (f"failing {bad}" if bad else "8 pointed + 8 Ising, charge injective and additive") + f" ({secs:.2f}s)"


def criterion_11():
    bad = []
    for n in range(3):
        tab = torsor_table(n, live=True)
        d = CycScalar.rational(2**n)
        integral = [t for t in tab if t.integral]
        non = [t for t in tab if not t.integral]
        if len({t.fingerprint() for t in tab}) != 16 or len(integral) != 8 or len(non) != 8:
            bad.append((n, "counts"))
        if any(sorted(map(pretty, t.dims())) != sorted(map(pretty, [ONE, ONE, d, d])) for t in integral):
            bad.append((n, "integral dims"))
        if any(sorted(map(pretty, t.dims())) != sorted(map(pretty, [ONE, ONE, d * SQRT2])) for t in non):
            bad.append((n, "non-integral dims"))
        for t in tab:
            g = sqfree_grading(t)
            if not integer_pairing_check(t.dims(), t.cartan)[0]:
                bad.append((n, t.name, "pairing"))
            if g.order != (1 if t.integral else 2) or not g.multiplicative:
                bad.append((n, t.name, "grading"))
    return not bad, f"failing {bad}" if bad else "16 distinct fingerprints, 8 + 8, pairing and grading checks"


def criterion_12():
    from hypothesis import settings

    import test_algebra
    import test_linalg
    import test_metric
    import test_repcat
    import test_scalar

    suites = {
        "field axioms": test_scalar.test_field_axioms,
        "rank-nullity": test_linalg.test_rank_nullity,
        "radical nilpotency": test_algebra.test_radical_is_nilpotent_ideal,
        "regular-module identity": test_algebra.test_regular_module_identity,
        "hexagon closure": test_repcat.test_hexagon_consequence_closure,
        "Gauss magnitude": test_metric.test_gauss_sum_magnitude,
    }
    bad = []
    for name, fn in suites.items():
        try:
            fn()
        except Exception as exc:  # a property failure
            bad.append(f"{name}: {type(exc).__name__}")
    n = settings.default.max_examples
    return not bad and n >= 100, (f"failing {bad}" if bad else f"6 suites x {n} instances")


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 13)}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_acceptance_criterion(k):
    ok, detail = CRITERIA[k]()
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(1 if failed else 0)
