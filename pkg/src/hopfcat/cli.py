"""Command-line entry point: ``hopfcat <command> [options]``.

Exit status is 0 when every executed check passes, 1 when a check fails and
2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import catalog
from .algebra import check_associativity, check_module, check_unit, default_seed
from .hopf import check_hopf_axioms, check_quasitriangular
from .metric import center_inventory, enumerate_B, torsor_table
from .scalar import pretty as pretty_scalar
from .scalar import to_text
from .serialize import (
    ALG_SCHEMA,
    HOPF_SCHEMA,
    SchemaError,
    algebra_from_dict,
    dumps,
    hopf_from_dict,
    hopf_to_dict,
    inventory_to_dict,
    load_file,
    metric_group_to_dict,
    save_file,
)
from .verifier import (
    SUITES,
    RunConfig,
    VerificationReport,
    appendix_suite,
    bgroup_suite,
    distinguishing_invariants,
    standard_sextuplets,
    run_all,
    torsor_suite,
    verify_center,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

N_RANGES = {"nichols": 4, "double": 2, "inventory": 4, "center": 2, "torsor": 4}


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    n: int | None = None
    input: str | None = None
    output: str | None = None
    suites: tuple = SUITES
    seed: int = 0
    pretty: bool = False
    n_max: int = 2
    faults: tuple = ()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfcat", description="Exact verification engine for braided categories over sRep(W).")
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable tables instead of JSON lines")
    common.add_argument("--seed", type=int, default=None, help="deterministic seed (default: HOPFCAT_SEED or built-in)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, helptext in (("nichols", "build H(n) with R_u"), ("double", "build D(H(n))")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--export", metavar="F", help="write the hopfcat-hopf-1 document to F")
    for name, helptext in (
        ("inventory", "inventory of Rep(D(H(n)))"),
        ("center", "structure checks for Rep(D(H(n)))"),
        ("torsor", "the 16 inventories obtained from the B-action"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--n", type=int, required=True)
    sub.add_parser("appendix", parents=[common], help="copairing and sextuplet verdicts for H(2)")
    sub.add_parser("bgroup", parents=[common], help="the 16 classes of B and the group-law checks")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", choices=SUITES, help="suite to run (repeatable; default all)")
    v.add_argument("--n-max", type=int, default=2)
    v.add_argument("--report", metavar="F", help="write the hopfcat-report-1 document to F")
    v.add_argument("--fault", action="append", default=[], help="inject a named constant corruption")
    v.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable reports")
    c = sub.add_parser("check-hopf", parents=[common], help="check a user-supplied algebra or Hopf algebra")
    c.add_argument("--input", required=True, metavar="F")
    return p


def parse_config(argv) -> tuple[CliConfig, argparse.Namespace]:
    ns = build_parser().parse_args(argv)
    seed = ns.seed if ns.seed is not None else default_seed()
    cfg = CliConfig(ns.command, seed=seed, pretty=ns.pretty)
    if hasattr(ns, "n"):
        hi = N_RANGES[ns.command]
        if not 0 <= ns.n <= hi:
            raise UsageError(f"{ns.command}: --n must be in 0..{hi}")
        cfg.n = ns.n
    if ns.command in ("nichols", "double"):
        cfg.output = ns.export
    if ns.command == "verify":
        if not 0 <= ns.n_max <= 2:
            raise UsageError("verify: --n-max must be in 0..2")
        cfg.n_max = ns.n_max
        cfg.suites = tuple(dict.fromkeys(ns.suite)) if ns.suite else SUITES
        cfg.output = ns.report
        cfg.faults = tuple(ns.fault)
    if ns.command == "check-hopf":
        cfg.input = ns.input
    return cfg, ns


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------
def _emit(obj, cfg: CliConfig, out) -> None:
    print(dumps(obj), file=out)


def _table(rows: list[list], out) -> None:
    widths = [max(len(str(r[k])) for r in rows) for k in range(len(rows[0]))]
    for r in rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip(), file=out)


def _report_out(rep: VerificationReport, cfg: CliConfig, out, timing: bool = True) -> int:
    if cfg.pretty:
        rows = [["status", "check", "anchor"]] + [[e.status, e.check_id, e.paper_anchor] for e in rep.entries]
        _table(rows, out)
        print(f"overall: {'pass' if rep.overall else 'fail'}", file=out)
    else:
        for e in rep.entries:
            _emit(e.to_dict(timing), cfg, out)
    return EXIT_OK if rep.overall else EXIT_FAIL


def _axiom_summary(name: str, reports: dict) -> dict:
    out = {"object": name}
    for key, r in reports.items():
        out[key] = {"ok": r.ok, "failures": r.failures}
        if r.triangular is not None:
            out[key]["triangular"] = r.triangular
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------
def cmd_build(cfg: CliConfig, out) -> int:
    if cfg.command == "nichols":
        H, qt = catalog.nichols_pair(cfg.n)
    else:
        H, qt = catalog.double_pair(cfg.n)
    reports = {"hopf": check_hopf_axioms(H), "quasitriangular": check_quasitriangular(H, qt)}
    summary = _axiom_summary(H.name, reports)
    summary["dim"] = H.dim
    if cfg.pretty:
        _table([["object", "dim", "hopf", "quasitriangular"], [H.name, H.dim, reports["hopf"].ok, reports["quasitriangular"].ok]], out)
    else:
        _emit(summary, cfg, out)
    if cfg.output:
        save_file(cfg.output, hopf_to_dict(H, qt))
    return EXIT_OK if all(r.ok for r in reports.values()) else EXIT_FAIL


def cmd_inventory(cfg: CliConfig, out) -> int:
    inv = center_inventory(cfg.n, seed=cfg.seed)
    if cfg.pretty:
        print(f"{inv.name}: {inv.summary()}", file=out)
        rows = [["simple", "FPdim", "projective", "dual", "⊗S", "class"]]
        rows += [[r.label, pretty_scalar(r.fpdim), r.projective, r.dual_label, r.s_tensor_label, r.grading_class] for r in inv.records]
        _table(rows, out)
    else:
        _emit(inventory_to_dict(inv), cfg, out)
    return EXIT_OK


def cmd_center(cfg: CliConfig, out) -> int:
    return _report_out(verify_center(cfg.n, cfg.seed), cfg, out)


def cmd_appendix(cfg: CliConfig, out) -> int:
    rep = appendix_suite(seed=cfg.seed)
    H, _ = catalog.nichols_pair(2)
    sexts = standard_sextuplets(H)
    verdicts = []
    for sx in sexts:
        entries = [e for e in rep.entries if e.check_id.startswith(f"sextuplet[{sx.name}]")]
        beta, chi = distinguishing_invariants(H, sx)
        verdicts.append(
            {
                "sextuplet": sx.name,
                "status": "pass" if all(e.status == "pass" for e in entries) else "fail",
                "failed": [e.check_id.rsplit(".", 1)[1] for e in entries if e.status == "fail"],
                "beta": to_text(beta),
                "chi_sigma": to_text(chi),
            }
        )
    if cfg.pretty:
        rows = [["sextuplet", "verdict", "failed", "β", "χ(σ)"]]
        rows += [
            [v["sextuplet"], v["status"], ",".join(v["failed"]) or "-", pretty_scalar(b), pretty_scalar(x)]
            for v, (b, x) in zip(verdicts, (distinguishing_invariants(H, sx) for sx in sexts))
        ]
        _table(rows, out)
        print(file=out)
        return _report_out(rep, cfg, out)
    for v in verdicts:
        _emit(v, cfg, out)
    return _report_out(rep, cfg, out)


def cmd_bgroup(cfg: CliConfig, out) -> int:
    B = enumerate_B()
    if cfg.pretty:
        rows = [["class", "kind", "charge", "dims"]]
        rows += [[b.name, b.kind, str(b.charge), ",".join(pretty_scalar(s.dim) for s in b.simples)] for b in B]
        _table(rows, out)
        print(file=out)
    else:
        for b in B:
            line = {"class": b.name, "kind": b.kind, "charge": str(b.charge)}
            if b.group is not None:
                line["metric_group"] = metric_group_to_dict(b.group)
            else:
                line["nu"] = b.nu
            _emit(line, cfg, out)
    return _report_out(bgroup_suite(), cfg, out)


def cmd_torsor(cfg: CliConfig, out) -> int:
    live = cfg.n <= 2
    base = center_inventory(cfg.n, live=live, seed=cfg.seed)
    tab = torsor_table(cfg.n, live, base=base)
    if cfg.pretty:
        _table([[b.name, inv.summary()] for b, inv in zip(enumerate_B(), tab)], out)
    else:
        for b, inv in zip(enumerate_B(), tab):
            _emit({"class": b.name, **inventory_to_dict(inv)}, cfg, out)
    rep = torsor_suite(cfg.n, live)
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_verify(cfg: CliConfig, ns, out) -> int:
    try:
        rep = run_all(RunConfig(n_max=cfg.n_max, suites=cfg.suites, seed=cfg.seed, faults=cfg.faults))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    timing = not ns.no_timing
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json(timing=timing, pretty=True))
            fh.write("\n")
    return _report_out(rep, cfg, out, timing)


def cmd_check_hopf(cfg: CliConfig, out) -> int:
    doc = load_file(cfg.input)
    schema = doc.get("schema") if isinstance(doc, dict) else None
    if schema == HOPF_SCHEMA:
        H, qt = hopf_from_dict(doc)
        reports = {"hopf": check_hopf_axioms(H)}
        if qt is not None:
            reports["quasitriangular"] = check_quasitriangular(H, qt)
        summary = _axiom_summary(H.name, reports)
        ok = all(r.ok for r in reports.values())
    elif schema == ALG_SCHEMA:
        A, mods = algebra_from_dict(doc)
        alg_ok = check_unit(A) and check_associativity(A)
        mod_ok = {M.name or f"module{k}": check_module(M) for k, M in enumerate(mods)}
        summary = {"object": A.name, "algebra": alg_ok, "modules": mod_ok}
        ok = alg_ok and all(mod_ok.values())
    else:
        raise SchemaError(f"unsupported schema {schema!r}")
    if cfg.pretty:
        print(json.dumps(summary, indent=2, ensure_ascii=False), file=out)
    else:
        _emit(summary, cfg, out)
    return EXIT_OK if ok else EXIT_FAIL


def dispatch(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg, ns = parse_config(argv)
        if cfg.command in ("nichols", "double"):
            return cmd_build(cfg, out)
        if cfg.command == "inventory":
            return cmd_inventory(cfg, out)
        if cfg.command == "center":
            return cmd_center(cfg, out)
        if cfg.command == "appendix":
            return cmd_appendix(cfg, out)
        if cfg.command == "bgroup":
            return cmd_bgroup(cfg, out)
        if cfg.command == "torsor":
            return cmd_torsor(cfg, out)
        if cfg.command == "verify":
            return cmd_verify(cfg, ns, out)
        return cmd_check_hopf(cfg, out)
    except (UsageError, SchemaError, OSError) as exc:
        print(f"hopfcat: error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
