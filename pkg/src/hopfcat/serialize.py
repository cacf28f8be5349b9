"""JSON import/export for algebras, Hopf algebras, inventories and metric groups.

Scalars travel as canonical text (``"1/2 + 3*z @ level 8"``); sparse data as
index triplets.  Every document carries a ``schema`` tag which is checked on
load.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import FDModule, FinAlgebra
from .hopf import HopfAlgebra, QTStructure
from .linalg import ExactMatrix
from .metric import PreMetricGroup
from .repcat import CategoryInventory, SimpleRecord
from .scalar import CycScalar, from_text, to_text

ALG_SCHEMA = "hopfcat-alg-1"
HOPF_SCHEMA = "hopfcat-hopf-1"
INV_SCHEMA = "hopfcat-inv-1"
MG_SCHEMA = "hopfcat-mg-1"


class SchemaError(ValueError):
    pass


def _scalar(text) -> CycScalar:
    if not isinstance(text, str):
        raise SchemaError(f"scalar must be a string, got {text!r}")
    try:
        return from_text(text)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def _index(i, bound: int, what: str) -> int:
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < bound:
        raise SchemaError(f"{what} index {i!r} out of range 0..{bound - 1}")
    return i


def _require(doc: dict, schema: str, *keys: str) -> None:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != schema:
        raise SchemaError(f"expected schema {schema!r}, got {doc.get('schema')!r}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(f"missing keys {missing}")


def _elt_out(e: dict) -> list:
    return [[i, to_text(c)] for i, c in sorted(e.items()) if c]


def _elt_in(rows, dim: int, what: str) -> dict:
    out = {}
    for i, c in rows:
        v = _scalar(c)
        if v:
            out[_index(i, dim, what)] = v
    return out


def _matrix_out(m: ExactMatrix) -> list:
    return [[i, j, to_text(c)] for i, j, c in m.triplets()]


def _matrix_in(rows, nrows: int, ncols: int, what: str) -> ExactMatrix:
    return ExactMatrix.from_triplets(
        nrows, ncols, [(_index(i, nrows, what), _index(j, ncols, what), _scalar(c)) for i, j, c in rows]
    )


# ---------------------------------------------------------------------------
# algebras and modules
# ---------------------------------------------------------------------------
def _algebra_body(A: FinAlgebra) -> dict:
    mult = [[i, j, k, to_text(c)] for (i, j), e in sorted(A.mult.items()) for k, c in sorted(e.items()) if c]
    return {"name": A.name, "dim": A.dim, "basis_labels": list(A.basis_labels), "unit": _elt_out(A.unit), "mult": mult}


def _algebra_from_body(doc: dict) -> FinAlgebra:
    d = doc["dim"]
    if not isinstance(d, int) or d < 1:
        raise SchemaError("dim must be a positive integer")
    mult: dict = {}
    for row in doc["mult"]:
        i, j, k, c = row
        key = (_index(i, d, "mult"), _index(j, d, "mult"))
        v = _scalar(c)
        if v:
            mult.setdefault(key, {})[_index(k, d, "mult")] = v
    labels = doc.get("basis_labels") or [f"e{i}" for i in range(d)]
    if len(labels) != d:
        raise SchemaError("basis_labels length differs from dim")
    return FinAlgebra(d, mult, _elt_in(doc["unit"], d, "unit"), list(labels), name=doc.get("name", ""))


def algebra_to_dict(A: FinAlgebra, modules: list[FDModule] = ()) -> dict:
    body = {"schema": ALG_SCHEMA, **_algebra_body(A)}
    body["modules"] = [
        {"name": M.name, "dim": M.dim, "action": [_matrix_out(m) for m in M.action]} for M in modules
    ]
    return body


def algebra_from_dict(doc: dict) -> tuple[FinAlgebra, list[FDModule]]:
    _require(doc, ALG_SCHEMA, "dim", "mult", "unit")
    A = _algebra_from_body(doc)
    mods = []
    for m in doc.get("modules", []):
        n = m["dim"]
        if len(m["action"]) != A.dim:
            raise SchemaError("module action needs one matrix per basis element")
        mods.append(FDModule(A, n, [_matrix_in(t, n, n, "action") for t in m["action"]], m.get("name", "")))
    return A, mods


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------
def hopf_to_dict(H: HopfAlgebra, qt: QTStructure | None = None) -> dict:
    doc = {"schema": HOPF_SCHEMA, **_algebra_body(H.alg)}
    doc["name"] = H.name or H.alg.name
    doc["delta"] = [[i, a, b, to_text(c)] for i, t in enumerate(H.delta) for (a, b), c in sorted(t.items()) if c]
    doc["counit"] = [[i, to_text(c)] for i, c in enumerate(H.counit) if c]
    doc["antipode"] = _matrix_out(H.antipode)
    if qt is not None:
        doc["R"] = [[a, b, to_text(c)] for (a, b), c in sorted(qt.R.items()) if c]
        doc["R_name"] = qt.name
    return doc


def hopf_from_dict(doc: dict) -> tuple[HopfAlgebra, QTStructure | None]:
    _require(doc, HOPF_SCHEMA, "dim", "mult", "unit", "delta", "counit", "antipode")
    A = _algebra_from_body(doc)
    d = A.dim
    delta: list = [{} for _ in range(d)]
    for i, a, b, c in doc["delta"]:
        v = _scalar(c)
        if v:
            delta[_index(i, d, "delta")][(_index(a, d, "delta"), _index(b, d, "delta"))] = v
    counit = [CycScalar.rational(0)] * d
    for i, c in doc["counit"]:
        counit[_index(i, d, "counit")] = _scalar(c)
    H = HopfAlgebra(A, delta, counit, _matrix_in(doc["antipode"], d, d, "antipode"), name=doc.get("name", ""))
    qt = None
    if "R" in doc:
        R = {}
        for a, b, c in doc["R"]:
            v = _scalar(c)
            if v:
                R[(_index(a, d, "R"), _index(b, d, "R"))] = v
        qt = QTStructure(H, R, name=doc.get("R_name", "R"))
    return H, qt


# ---------------------------------------------------------------------------
# inventories and metric groups
# ---------------------------------------------------------------------------
def _opt_text(x):
    return None if x is None else to_text(x)


def inventory_to_dict(inv: CategoryInventory) -> dict:
    return {
        "schema": INV_SCHEMA,
        "name": inv.name,
        "integral": inv.integral,
        "charge_offset": "undefined" if inv.charge_offset is None else str(inv.charge_offset),
        "simples": [
            {
                "label": r.label,
                "fpdim": to_text(r.fpdim),
                "projective": r.projective,
                "dual": r.dual_label,
                "times_S": r.s_tensor_label,
                "grading_class": r.grading_class,
                "pim_fpdim": _opt_text(r.pim_fpdim),
            }
            for r in inv.records
        ],
        "cartan": inv.cartan,
    }


def inventory_from_dict(doc: dict) -> CategoryInventory:
    _require(doc, INV_SCHEMA, "name", "integral", "charge_offset", "simples")
    records = [
        SimpleRecord(
            s["label"],
            _scalar(s["fpdim"]),
            bool(s["projective"]),
            s.get("dual"),
            s.get("times_S"),
            s.get("grading_class"),
            None if s.get("pim_fpdim") is None else _scalar(s["pim_fpdim"]),
        )
        for s in doc["simples"]
    ]
    charge = doc["charge_offset"]
    return CategoryInventory(
        doc["name"], records, bool(doc["integral"]), None if charge == "undefined" else Fraction(charge), doc.get("cartan")
    )


def metric_group_to_dict(G: PreMetricGroup) -> dict:
    return {
        "schema": MG_SCHEMA,
        "orders": list(G.orders),
        "q": [[list(x), str(G.q[x])] for x in G.elements()],
    }


def metric_group_from_dict(doc: dict) -> PreMetricGroup:
    _require(doc, MG_SCHEMA, "orders", "q")
    orders = tuple(doc["orders"])
    if not all(isinstance(n, int) and n >= 1 for n in orders):
        raise SchemaError("orders must be positive integers")
    q = {tuple(x): Fraction(v) % 1 for x, v in doc["q"]}
    G = PreMetricGroup(orders, q)
    if set(q) != set(G.elements()):
        raise SchemaError("q must be given on every group element")
    return G


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------
def dumps(doc: dict, pretty: bool = False) -> str:
    return json.dumps(doc, indent=2 if pretty else None, ensure_ascii=False)


def load_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def save_file(path, doc: dict, pretty: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc, pretty))
        fh.write("\n")
