"""Braided categories Rep(H, R): monodromy, centralizers, factorizability,
the Z/2 grading by monodromy with S, inventories and fusion-data checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    BlockData,
    FDModule,
    is_isomorphic,
)
from .hopf import (
    HopfAlgebra,
    QTStructure,
    dual_module,
    hopf_block_data,
    pullback_module,
    projective_generators,
    t_mul,
    tensor_module,
)
from .linalg import ExactMatrix, rank
from .scalar import ONE, ZERO, CycScalar, pretty


class MixedMonodromy(ArithmeticError):
    pass


class UnrealizedSubcategory(ValueError):
    pass


@dataclass(eq=False)
class BraidedContext:
    hopf: HopfAlgebra
    qt: QTStructure
    blocks: BlockData
    name: str = ""
    monodromy_cache: dict = field(default_factory=dict)
    _q_rows: list | None = None

    @property
    def simples(self) -> list[FDModule]:
        return self.blocks.simples

    @property
    def pims(self) -> list[FDModule]:
        return self.blocks.pims

    def labels(self) -> list[str]:
        return self.blocks.labels()

    def simple(self, label: str) -> FDModule:
        return self.blocks.simple(label)

    def pim(self, label: str) -> FDModule:
        return self.blocks.pim(label)

    def test_objects(self) -> list[FDModule]:
        return list(self.simples) + list(self.pims)

    def object(self, label: str) -> FDModule:
        for X in self.test_objects():
            if X.name == label:
                return X
        raise KeyError(label)

    def q_rows(self) -> list:
        """Rows y_a with R21 R = sum_a e_a ⊗ y_a."""
        if self._q_rows is None:
            Q = self.qt.monodromy_element()
            rows: dict = {}
            for (a, b), c in Q.items():
                rows.setdefault(a, {})[b] = c
            self._q_rows = sorted(rows.items())
        return self._q_rows


def braided_context(H: HopfAlgebra, qt: QTStructure, seed: int | None = None, name: str = "") -> BraidedContext:
    return BraidedContext(H, qt, hopf_block_data(H, seed), name or f"Rep({H.name}, {qt.name})")


# ---------------------------------------------------------------------------
# braiding and monodromy
# ---------------------------------------------------------------------------
def monodromy(ctx: BraidedContext, X: FDModule, Y: FDModule, check: bool = False) -> ExactMatrix:
    """Action of R21 R on X ⊗ Y."""
    key = (id(X), id(Y))
    hit = ctx.monodromy_cache.get(key)
    if hit is not None:
        return hit[2]
    acc = ExactMatrix.zeros(X.dim * Y.dim, X.dim * Y.dim)
    for a, row in ctx.q_rows():
        acc = acc + X.action[a].kron(Y.act(row))
    if check:
        XY = tensor_module(ctx.hopf, X, Y)
        for g in ctx.hopf.generators():
            G = XY.act(g)
            if G @ acc != acc @ G:
                raise ArithmeticError("monodromy is not a module map")
    ctx.monodromy_cache[key] = (X, Y, acc)  # keep X, Y alive so ids stay unique
    return acc


def swap_matrix(m: int, n: int) -> ExactMatrix:
    """τ: X ⊗ Y -> Y ⊗ X for dim X = m, dim Y = n."""
    return ExactMatrix.from_triplets(m * n, m * n, [(j * m + i, i * n + j, ONE) for i in range(m) for j in range(n)])


def braiding(ctx: BraidedContext, X: FDModule, Y: FDModule) -> ExactMatrix:
    """c_{X,Y} = τ ∘ R acting on X ⊗ Y."""
    acc = ExactMatrix.zeros(X.dim * Y.dim, X.dim * Y.dim)
    for (a, b), c in ctx.qt.R.items():
        acc = acc + X.action[a].kron(Y.action[b]).scale(c)
    return swap_matrix(X.dim, Y.dim) @ acc


def centralization_type(ctx: BraidedContext, X: FDModule, Y: FDModule):
    M = monodromy(ctx, X, Y)
    if M.is_identity():
        return 1
    if M.is_scalar(-1):
        return -1
    return "mixed"


def self_braiding_scalar(ctx: BraidedContext, X: FDModule) -> CycScalar:
    """c_{X,X} for a one-dimensional X."""
    if X.dim != 1:
        raise ValueError("self-braiding scalar needs a one-dimensional object")
    return braiding(ctx, X, X)[0, 0]


def fermions(ctx: BraidedContext) -> list[str]:
    """Nontrivial one-dimensional simples with self-braiding -1."""
    return [S.name for S in ctx.simples if S.dim == 1 and S.name != "1" and self_braiding_scalar(ctx, S) == -ONE]


# ---------------------------------------------------------------------------
# factorizability
# ---------------------------------------------------------------------------
def monodromy_matrix(H: HopfAlgebra, qt: QTStructure) -> ExactMatrix:
    """Coefficients q_ab with R21 R = sum q_ab e_a ⊗ e_b."""
    Q = qt.monodromy_element()
    return ExactMatrix.from_triplets(H.dim, H.dim, [(a, b, c) for (a, b), c in Q.items()])


def factorizability_rank(H: HopfAlgebra, qt: QTStructure) -> int:
    """Rank of f -> (f⊗id)(R21 R)."""
    return rank(monodromy_matrix(H, qt))


def factorizability_check(H: HopfAlgebra, qt: QTStructure) -> bool:
    return factorizability_rank(H, qt) == H.dim


# ---------------------------------------------------------------------------
# grading and centralizers
# ---------------------------------------------------------------------------
@dataclass
class Grading:
    classes: dict  # label -> 0 | 1
    faithful: bool

    def members(self, cls: int) -> list[str]:
        return [l for l, c in self.classes.items() if c == cls]


def z2_grading(ctx: BraidedContext, s_label: str = "S") -> Grading:
    S = ctx.simple(s_label)
    classes = {}
    for X in ctx.simples:
        t = centralization_type(ctx, S, X)
        if t == "mixed":
            raise MixedMonodromy(f"monodromy of {s_label} with {X.name} is not ±id")
        classes[X.name] = 0 if t == 1 else 1
    return Grading(classes, any(v == 1 for v in classes.values()))


def centralizes_all(ctx: BraidedContext, X: FDModule, gens: Sequence[FDModule]) -> bool:
    return all(monodromy(ctx, X, G).is_identity() for G in gens)


def centralizer_members(ctx: BraidedContext, gens: Sequence[FDModule]) -> list[str]:
    """Test objects (simples and PIMs) with trivial monodromy against every generator."""
    return [X.name for X in ctx.test_objects() if centralizes_all(ctx, X, gens)]


def mueger_center(ctx: BraidedContext) -> list[str]:
    """Test objects centralizing the whole category (generated by its PIMs)."""
    return centralizer_members(ctx, ctx.pims)


def factors_through_quotient(ctx: BraidedContext, X: FDModule) -> bool:
    """Does the action on X factor through the stored Hopf surjection?"""
    _, P = ctx.hopf.quotient
    for g in ctx.hopf.generators():
        img = P.apply(g)
        lifted = ExactMatrix.zeros(X.dim, X.dim)
        # lift along the section h -> 1 ⊗ h of the double
        for k, c in img.items():
            lifted = lifted + X.act(_section(ctx.hopf, k)).scale(c)
        if X.act(g) != lifted:
            return False
    return True


def _section(D: HopfAlgebra, k: int) -> dict:
    H, _ = D.quotient
    d = H.dim
    return {i * d + k: c for i, c in enumerate(H.counit) if c}


@dataclass
class LagrangianVerdict:
    symmetric: bool
    centralizer: list  # test-object labels in E'
    members: list  # test-object labels in E
    lagrangian: bool
    ledger: dict | None

    def __bool__(self):
        return self.lagrangian


def _summand_closure_member(ctx: BraidedContext, X: FDModule, gens: Sequence[FDModule]) -> bool:
    from .algebra import indecomposable_summands

    pool = [ctx.simple("1")]
    for G in gens:
        pool.extend(indecomposable_summands(G))
    return all(any(is_isomorphic(Z, P) for P in pool) for Z in indecomposable_summands(X))


def lagrangian_check(ctx: BraidedContext, generators="pullback", require_realization: bool = False) -> LagrangianVerdict:
    """Decide whether the subcategory E generated by ``generators`` is Lagrangian (E' = E).

    ``generators`` is "pullback" (E = Rep of the stored Hopf quotient, generated
    by the pullbacks of its projective indecomposables) or a list of labels
    or modules of ``ctx``.
    """
    pullback = generators == "pullback"
    if pullback:
        if ctx.hopf.quotient is None:
            raise UnrealizedSubcategory("context carries no Hopf quotient")
        H, _ = ctx.hopf.quotient
        gens = [pullback_module(ctx.hopf, P) for P in projective_generators(H)]
    else:
        gens = [ctx.object(g) if isinstance(g, str) else g for g in generators]
        if require_realization:
            raise UnrealizedSubcategory("generators are not a Hopf-quotient pullback")
    symmetric = all(monodromy(ctx, A, B).is_identity() for A in gens for B in gens)
    central = centralizer_members(ctx, gens)
    if pullback:
        members = [X.name for X in ctx.test_objects() if factors_through_quotient(ctx, X)]
    else:
        members = [X.name for X in ctx.test_objects() if _summand_closure_member(ctx, X, gens)]
    ledger = None
    if pullback:
        H, _ = ctx.hopf.quotient
        ledger = {"fpdim_E": H.dim, "fpdim_C": ctx.hopf.dim, "fpdim_E_squared_equals_fpdim_C": H.dim**2 == ctx.hopf.dim}
    return LagrangianVerdict(symmetric, central, members, symmetric and set(central) == set(members), ledger)


def hexagon_consequence(ctx: BraidedContext, X: FDModule, A: FDModule, B: FDModule) -> bool:
    """If X centralizes A and B then X centralizes A ⊗ B."""
    if not (monodromy(ctx, X, A).is_identity() and monodromy(ctx, X, B).is_identity()):
        return True
    return monodromy(ctx, X, tensor_module(ctx.hopf, A, B)).is_identity()


# ---------------------------------------------------------------------------
# inventories
# ---------------------------------------------------------------------------
@dataclass
class SimpleRecord:
    label: str
    fpdim: CycScalar
    projective: bool
    dual_label: str | None
    s_tensor_label: str | None
    grading_class: int | None
    pim_fpdim: CycScalar | None = None


@dataclass
class CategoryInventory:
    name: str
    records: list
    integral: bool
    charge_offset: Fraction | None  # None means undefined
    cartan: list | None = None  # cartan[i][j] = [P_j : S_i]

    def labels(self) -> list[str]:
        return [r.label for r in self.records]

    def record(self, label: str) -> SimpleRecord:
        return self.records[self.labels().index(label)]

    def dims(self) -> list[CycScalar]:
        return [r.fpdim for r in self.records]

    def fpdim(self) -> CycScalar:
        total = ZERO
        for r in self.records:
            total = total + r.fpdim * (r.pim_fpdim if r.pim_fpdim is not None else r.fpdim)
        return total

    def sum_squares(self) -> CycScalar:
        return sum((r.fpdim * r.fpdim for r in self.records), ZERO)

    def fingerprint(self) -> tuple:
        return (self.integral, self.charge_offset)

    def dims_text(self) -> str:
        return "(" + ",".join(pretty(d) for d in self.dims()) + ")"

    def summary(self) -> str:
        kind = "integral" if self.integral else "non-integral"
        charge = "undefined" if self.charge_offset is None else str(self.charge_offset)
        return f"{self.dims_text()} {kind} charge={charge}"


def _identify(M: FDModule, pool: Sequence[FDModule]) -> str | None:
    for P in pool:
        if P.dim == M.dim and is_isomorphic(M, P):
            return P.name
    return None


def inventory(ctx: BraidedContext, charge_offset: Fraction | None = Fraction(0)) -> CategoryInventory:
    H = ctx.hopf
    try:
        grading = z2_grading(ctx).classes if "S" in ctx.labels() else {}
    except MixedMonodromy:
        grading = {}
    S = ctx.simple("S") if "S" in ctx.labels() else None
    records = []
    for X, P in zip(ctx.simples, ctx.pims):
        dual = _identify(dual_module(H, X), ctx.simples)
        st = _identify(tensor_module(H, S, X), ctx.simples) if S is not None else None
        records.append(
            SimpleRecord(
                X.name,
                CycScalar.rational(X.dim),
                P.dim == X.dim,
                dual,
                st,
                grading.get(X.name),
                CycScalar.rational(P.dim),
            )
        )
    cartan = [row[:] for row in ctx.blocks.cartan]
    return CategoryInventory(ctx.name, records, True, charge_offset, cartan)


# ---------------------------------------------------------------------------
# fusion-data identities
# ---------------------------------------------------------------------------
def is_rational_integer(x: CycScalar) -> bool:
    return x.is_rational() and x.to_fraction().denominator == 1


def integer_pairing_check(dims: Sequence, cartan: Sequence[Sequence[int]]):
    """N_ij != 0 must force d_i d_j to be an integer."""
    dims = [CycScalar.coerce(d) for d in dims]
    bad = []
    for i, row in enumerate(cartan):
        for j, n in enumerate(row):
            if n and not is_rational_integer(dims[i] * dims[j]):
                bad.append((i, j))
    return not bad, bad


def sqrt2_parts(d: CycScalar) -> tuple[Fraction, Fraction]:
    """(a, b) with d = a + b√2, or ValueError if d is outside Q(√2)."""
    d = CycScalar.coerce(d)
    if d.is_rational():
        return d.to_fraction(), Fraction(0)
    e = d.embed(3)
    c = e.coeffs
    # √2 = z - z^3 at level 3
    a, b = c[0], c[1]
    if c[2] != 0 or c[3] != -b:
        raise ValueError(f"{d} is not in Q(√2)")
    return a, b


def squarefree_class(d: CycScalar) -> int:
    a, b = sqrt2_parts(d)
    if a and b:
        raise ValueError(f"{d} is not of the form n or n√2")
    return 2 if b else 1


def _sq_mul(a: int, b: int) -> int:
    return 1 if a == b else a * b


@dataclass
class SqfreeGrading:
    group: list  # square-free parts present, e.g. [1] or [1, 2]
    components: dict  # label -> square-free part
    multiplicative: bool

    @property
    def order(self) -> int:
        return len(self.group)


def sqfree_grading(inv) -> SqfreeGrading:
    """Grade simples by the square-free part of their dimension."""
    if isinstance(inv, CategoryInventory):
        labels = inv.labels()
        dims = inv.dims()
        s_map = {r.label: r.s_tensor_label for r in inv.records}
    else:
        dims = list(inv)
        labels = [f"X{i}" for i in range(len(dims))]
        s_map = {}
    comps = {l: squarefree_class(d) for l, d in zip(labels, dims)}
    group = sorted(set(comps.values()))
    mult = True
    if "S" in comps:
        for l, t in s_map.items():
            if t is not None and comps[t] != _sq_mul(comps[l], comps["S"]):
                mult = False
    return SqfreeGrading(group, comps, mult)
