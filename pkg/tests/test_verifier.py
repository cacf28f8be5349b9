from __future__ import annotations

import json

import pytest

from hopfcat import catalog
from hopfcat.hopf import lambda_s
from hopfcat.scalar import I, ZETA8
from hopfcat.verifier import (
    REPORT_SCHEMA,
    RunConfig,
    VerificationReport,
    appendix_constants,
    appendix_suite,
    bgroup_suite,
    distinguishing_invariants,
    mutations,
    standard_sextuplets,
    run_all,
    verify_copairing_conditions,
    verify_sextuplet,
)

COPAIRING_MUTATIONS = ("gamma.xy⊗xy", "gamma.1⊗1", "gamma.u⊗u", "gamma.x⊗y", "gamma.y⊗ux", "lambda.scale")


@pytest.fixture(scope="module")
def h2():
    H, _ = catalog.nichols_pair(2)
    return H, appendix_constants(H)


def statuses(rep: VerificationReport) -> list[str]:
    return [e.status for e in rep.entries]


@pytest.mark.parametrize("s", [I, -I])
def test_copairing_conditions_pass(h2, s):
    H, c = h2
    rep = verify_copairing_conditions(H, c["gamma"], lambda_s(H, s))
    assert statuses(rep) == ["pass"] * 6


@pytest.mark.parametrize("name", COPAIRING_MUTATIONS)
def test_copairing_mutation_caught(h2, name):
    H, c = h2
    m = mutations(H)[name](c)
    reps = [verify_copairing_conditions(H, m["gamma"], lambda_s(H, s)) for s in m["lambda"].values()]
    assert any(e.status == "fail" for r in reps for e in r.entries)


def test_negated_xy_coefficient_breaks_condition_four(h2):
    H, c = h2
    m = mutations(H)["gamma.xy⊗xy"](c)
    rep = verify_copairing_conditions(H, m["gamma"], lambda_s(H, I))
    assert rep.entry("copairing.4").status == "fail"


def test_sextuplets_with_sigma_plus_pass(h2):
    H, c = h2
    for sx in standard_sextuplets(H, c):
        if sx.name.startswith("σ+"):
            assert statuses(verify_sextuplet(H, sx, qt_check=False)) == ["pass"] * 6


def test_sigma_minus_condition_one_gives_flipped_gamma(h2):
    # (σ₋⁻¹⊗1)Δ(σ₋)(1⊗σ₋⁻¹) equals γ21 rather than γ
    H, c = h2
    for sx in standard_sextuplets(H, c):
        if sx.name.startswith("σ-"):
            rep = verify_sextuplet(H, sx, qt_check=False)
            assert statuses(rep)[1:] == ["pass"] * 5
            assert rep.entries[0].witness == {"equals_gamma21": True}


def test_beta_mutation_fails_condition_three(h2):
    H, c = h2
    sx = standard_sextuplets(H, c)[0]
    sx.beta = ZETA8**3
    rep = verify_sextuplet(H, sx, qt_check=False)
    bad = [e.check_id for e in rep.entries if e.status == "fail"]
    assert bad == [f"sextuplet[{sx.name}].3"]


def test_corrupted_gamma_fails_condition_one(h2):
    H, c = h2
    m = mutations(H)["gamma.x⊗y"](c)
    sx = standard_sextuplets(H, m)[0]
    assert verify_sextuplet(H, sx, qt_check=False).entries[0].status == "fail"


def test_distinguishing_invariants(h2):
    H, c = h2
    pairs = [distinguishing_invariants(H, sx) for sx in standard_sextuplets(H, c)]
    assert len({(str(b.minimal()), str(x.minimal())) for b, x in pairs}) == 8
    assert [x for _, x in pairs] == [-I, -I, I, I, -I, -I, I, I]


@pytest.mark.parametrize("name", sorted(mutations(catalog.nichols_pair(2)[0])))
def test_every_mutation_is_detected(h2, name):
    H, c = h2
    base = {e.check_id: e.status for e in appendix_suite(c).entries}
    m = mutations(H)[name](c)
    got = {e.check_id: e.status for e in appendix_suite(m).entries}
    from hopfcat.verifier import hopf_suite

    base.update({e.check_id: e.status for e in hopf_suite(0, c).entries})
    got.update({e.check_id: e.status for e in hopf_suite(0, m).entries})
    assert any(base[k] == "pass" and got[k] == "fail" for k in base)


def test_report_schema_and_determinism():
    cfg = RunConfig(n_max=1, suites=("hopf", "bgroup", "torsor"))
    a, b = run_all(cfg), run_all(cfg)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    doc = json.loads(a.to_json())
    assert doc["schema"] == REPORT_SCHEMA
    for e in doc["entries"]:
        assert set(e) == {"check_id", "paper_anchor", "status", "witness", "elapsed_ms"}
        assert e["paper_anchor"] and e["status"] in ("pass", "fail", "skip")
    # the stated integral functional is the only failing check in these suites
    assert [e.check_id for e in a.failures()] == ["hopf.appendix.integral_span"]


def test_bgroup_suite_passes():
    assert all(s == "pass" for s in statuses(bgroup_suite()))


def test_run_all_rejects_bad_config():
    with pytest.raises(ValueError):
        run_all(RunConfig(n_max=5))
    with pytest.raises(ValueError):
        run_all(RunConfig(suites=("nope",)))
    with pytest.raises(ValueError):
        run_all(RunConfig(suites=("bgroup",), faults=("nope",)))


def test_skip_entries_do_not_count():
    rep = VerificationReport()
    rep.add("a", "anchor", True)
    rep.add("b", "anchor", "skip", "external")
    assert rep.overall
    rep.add("c", "anchor", False)
    assert not rep.overall and [e.check_id for e in rep.failures()] == ["c"]
    with pytest.raises(ValueError):
        rep.add("d", "", True)
