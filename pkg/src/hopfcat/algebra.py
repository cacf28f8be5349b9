"""Representation theory of finite-dimensional associative algebras.

Algebras are given by sparse structure constants ``e_i e_j = sum_k c_ij^k e_k``;
elements are sparse dicts ``index -> CycScalar``.  Modules carry one action
matrix per basis element.  Decomposition goes through the endomorphism
algebra: its radical decides indecomposability, and generalized eigenspaces
of endomorphisms (projections onto them are idempotents of End(M)) split
the module.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .linalg import (
    Echelon,
    ExactMatrix,
    Subspace,
    UnsplittableField,
    block_diagonal,
    candidate_roots,
    inverse,
    kernel_sparse,
    rank,
    split_invariant_subspaces,
)
from .scalar import ONE, ZERO, CycScalar

Element = dict  # basis index -> CycScalar

DEFAULT_SEED = 20160217


def default_seed() -> int:
    env = os.environ.get("HOPFCAT_SEED")
    return int(env) if env else DEFAULT_SEED


class NotIdempotentModRadical(ValueError):
    pass


class ModuleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------
def elt_add(a: Element, b: Element, scale=ONE) -> Element:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, ZERO) + v * scale
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def elt_scale(a: Element, c) -> Element:
    c = CycScalar.coerce(c)
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def elt_sub(a: Element, b: Element) -> Element:
    return elt_add(a, b, -ONE)


def elt_equal(a: Element, b: Element) -> bool:
    return not elt_sub(a, b)


def basis_elt(i: int) -> Element:
    return {i: ONE}


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------
@dataclass(eq=False)
class FinAlgebra:
    dim: int
    mult: dict  # (i, j) -> Element
    unit: Element
    basis_labels: list[str] = field(default_factory=list)
    generators: list[Element] | None = None
    name: str = ""

    def __post_init__(self):
        if not self.basis_labels:
            self.basis_labels = [f"e{i}" for i in range(self.dim)]
        self._left: dict[int, ExactMatrix] = {}
        self._right: dict[int, ExactMatrix] = {}

    def mul(self, a: Element, b: Element) -> Element:
        acc: dict = {}
        mult = self.mult
        for i, x in a.items():
            for j, y in b.items():
                prod = mult.get((i, j))
                if not prod:
                    continue
                xy = x * y
                for k, c in prod.items():
                    acc[k] = acc.get(k, ZERO) + xy * c
        return {k: v for k, v in acc.items() if v}

    def prod(self, *elts: Element) -> Element:
        out = self.unit
        for e in elts:
            out = self.mul(out, e)
        return out

    def one(self) -> Element:
        return dict(self.unit)

    def left_matrix(self, i: int) -> ExactMatrix:
        """Matrix of ``v -> e_i v``."""
        m = self._left.get(i)
        if m is None:
            data = [{} for _ in range(self.dim)]
            for j in range(self.dim):
                for k, c in self.mult.get((i, j), {}).items():
                    data[k][j] = c
            m = ExactMatrix(self.dim, self.dim, data)
            self._left[i] = m
        return m

    def right_matrix(self, i: int) -> ExactMatrix:
        """Matrix of ``v -> v e_i``."""
        m = self._right.get(i)
        if m is None:
            data = [{} for _ in range(self.dim)]
            for j in range(self.dim):
                for k, c in self.mult.get((j, i), {}).items():
                    data[k][j] = c
            m = ExactMatrix(self.dim, self.dim, data)
            self._right[i] = m
        return m

    def left_matrix_of(self, a: Element) -> ExactMatrix:
        out = ExactMatrix.zeros(self.dim, self.dim)
        for i, c in a.items():
            out = out + self.left_matrix(i).scale(c)
        return out

    def label(self, a: Element) -> str:
        if not a:
            return "0"
        parts = []
        for k in sorted(a):
            parts.append(f"({a[k]})*{self.basis_labels[k]}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FinAlgebra({self.name or 'anonymous'}, dim={self.dim})"


def check_associativity(A: FinAlgebra, sample: int | None = None, seed: int = 0) -> bool:
    triples: Iterable
    n = A.dim
    if sample is None:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(sample)]
    for i, j, k in triples:
        ei, ej, ek = basis_elt(i), basis_elt(j), basis_elt(k)
        if not elt_equal(A.mul(A.mul(ei, ej), ek), A.mul(ei, A.mul(ej, ek))):
            return False
    return True


def check_unit(A: FinAlgebra) -> bool:
    for i in range(A.dim):
        e = basis_elt(i)
        if not elt_equal(A.mul(A.unit, e), e) or not elt_equal(A.mul(e, A.unit), e):
            return False
    return True


def validate_algebra(A: FinAlgebra, full_limit: int = 64, sample: int = 4000) -> None:
    if not check_unit(A):
        raise ValueError(f"{A!r}: unit axiom fails")
    ok = check_associativity(A) if A.dim <= full_limit else check_associativity(A, sample=sample)
    if not ok:
        raise ValueError(f"{A!r}: multiplication is not associative")


def span_closure(A: FinAlgebra, gens: Sequence[Element]) -> Subspace:
    """Subspace spanned by all words in ``gens`` (including the empty word)."""
    vecs = [A.unit] + list(gens)
    sub = Subspace(vecs, A.dim)
    frontier = [dict(r) for r in sub.rows]
    while frontier:
        new = []
        for g in gens:
            for v in frontier:
                w = A.mul(g, v)
                if w and sub._ech.add(sub._ech.reduce(w)):
                    new.append(w)
        frontier = new
    return Subspace([r for r in sub._ech.piv.values()], A.dim)


def algebra_generators(A: FinAlgebra, candidates: Sequence[Element] | None = None) -> list[Element]:
    """A generating set; stored generators are verified, else found greedily."""
    if A.generators is not None:
        return A.generators
    pool = list(candidates) if candidates is not None else [basis_elt(i) for i in range(A.dim)]
    gens: list[Element] = []
    closure = span_closure(A, gens)
    for c in pool:
        if closure.dim == A.dim:
            break
        if not closure.contains(c):
            gens.append(c)
            closure = span_closure(A, gens)
    if closure.dim != A.dim:
        raise ValueError("candidates do not generate the algebra")
    A.generators = gens
    return gens


def algebra_from_table(labels: Sequence[str], table: Callable[[int, int], Element], unit: Element, name="") -> FinAlgebra:
    n = len(labels)
    mult = {}
    for i in range(n):
        for j in range(n):
            p = table(i, j)
            if p:
                mult[(i, j)] = p
    return FinAlgebra(n, mult, unit, list(labels), name=name)


def group_algebra_z2() -> FinAlgebra:
    """The group algebra of Z/2 on basis (1, u)."""
    return algebra_from_table(["1", "u"], lambda i, j: {(i + j) % 2: ONE}, {0: ONE}, name="Q[Z/2]")


# ---------------------------------------------------------------------------
# trace form and radical
# ---------------------------------------------------------------------------
def _trace_product(a: ExactMatrix, b: ExactMatrix) -> CycScalar:
    s = ZERO
    bd = b.data
    for i, row in enumerate(a.data):
        for j, x in row.items():
            y = bd[j].get(i)
            if y is not None:
                s = s + x * y
    return s


def trace_form_kernel(mats: Sequence[ExactMatrix]) -> list[Element]:
    """Kernel of the Gram matrix ``tr(M_a M_b)``, as coefficient vectors."""
    k = len(mats)
    rows = []
    for a in range(k):
        row = {}
        for b in range(k):
            v = _trace_product(mats[a], mats[b])
            if v:
                row[b] = v
        rows.append(row)
    return kernel_sparse(rows, k)


def ideal_power_chain(A: FinAlgebra, ideal: Sequence[Element], limit: int | None = None) -> int:
    """Least m with I^m = 0 for the ideal spanned by ``ideal`` (raises if not nilpotent)."""
    limit = limit or A.dim + 1
    current = Subspace(ideal, A.dim)
    base = [dict(r) for r in current.rows]
    index = 1
    while current.dim:
        if index > limit:
            raise ArithmeticError("ideal is not nilpotent")
        prods = [A.mul(a, b) for a in base for b in (dict(r) for r in current.rows)]
        current = Subspace(prods, A.dim)
        index += 1
    return index


def is_two_sided_ideal(A: FinAlgebra, ideal: Sequence[Element]) -> bool:
    sub = Subspace(ideal, A.dim)
    for r in sub.rows:
        for i in range(A.dim):
            e = basis_elt(i)
            if not sub.contains(A.mul(e, r)) or not sub.contains(A.mul(r, e)):
                return False
    return True


def jacobson_radical(A: FinAlgebra) -> list[Element]:
    """Basis of rad(A): kernel of ``T(a, b) = tr(L_a L_b)`` (characteristic 0)."""
    mats = [A.left_matrix(i) for i in range(A.dim)]
    basis = trace_form_kernel(mats)
    if basis:
        ideal_power_chain(A, basis)
    return basis


def lift_idempotent(A: FinAlgebra, e0: Element, radical: Sequence[Element] | None = None) -> Element:
    """Exact idempotent congruent to ``e0`` modulo rad(A), via ``e <- 3e^2 - 2e^3``."""
    if radical is None:
        radical = jacobson_radical(A)
    rad = Subspace(radical, A.dim)
    sq = A.mul(e0, e0)
    if not rad.contains(elt_sub(sq, e0)):
        raise NotIdempotentModRadical("e0^2 - e0 is not in the radical")
    e = dict(e0)
    steps = 0
    max_steps = max(1, (A.dim + 1).bit_length()) + 1
    while True:
        e2 = A.mul(e, e)
        if elt_equal(e2, e):
            return e
        if steps > max_steps:
            raise ArithmeticError("idempotent lifting did not converge")
        e3 = A.mul(e2, e)
        e = elt_sub(elt_scale(e2, 3), elt_scale(e3, 2))
        steps += 1


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------
@dataclass(eq=False)
class FDModule:
    algebra: FinAlgebra
    dim: int
    action: list[ExactMatrix]
    name: str = ""
    regular: bool = False

    def act(self, a: Element) -> ExactMatrix:
        out = ExactMatrix.zeros(self.dim, self.dim)
        for i, c in a.items():
            out = out + self.action[i].scale(c)
        return out

    def generator_actions(self) -> list[ExactMatrix]:
        return [self.act(g) for g in algebra_generators(self.algebra)]

    def character(self) -> list[CycScalar]:
        return [m.trace() for m in self.action]

    def renamed(self, name: str) -> FDModule:
        return FDModule(self.algebra, self.dim, self.action, name, self.regular)

    def __repr__(self):
        return f"FDModule({self.name or '?'}, dim={self.dim})"


def check_module(M: FDModule, full: bool | None = None) -> bool:
    """Check rho(1) = Id and rho(e_i) rho(e_j) = rho(e_i e_j)."""
    A = M.algebra
    if not M.act(A.unit).is_identity():
        return False
    if full is None:
        full = A.dim <= 16
    firsts = range(A.dim) if full else None
    gens = algebra_generators(A)
    pairs: Iterable
    if full:
        pairs = ((basis_elt(i), basis_elt(j)) for i in firsts for j in range(A.dim))
    else:
        pairs = ((g, basis_elt(j)) for g in gens for j in range(A.dim))
    for a, b in pairs:
        if M.act(a) @ M.act(b) != M.act(A.mul(a, b)):
            return False
    return True


def regular_module(A: FinAlgebra) -> FDModule:
    return FDModule(A, A.dim, [A.left_matrix(i) for i in range(A.dim)], "regular", regular=True)


def one_dim_module(A: FinAlgebra, values: Sequence, name: str = "") -> FDModule:
    return FDModule(A, 1, [ExactMatrix.scalar(1, v) for v in values], name)


def submodule(M: FDModule, vectors: Iterable, name: str = "") -> FDModule:
    sub = vectors if isinstance(vectors, Subspace) else Subspace(vectors, M.dim)
    k = sub.dim
    action = []
    for mat in M.action:
        cols = [sub.coords(mat.apply(dict(r))) for r in sub.rows]
        action.append(ExactMatrix.from_columns(cols, k))
    return FDModule(M.algebra, k, action, name)


def quotient_module(M: FDModule, vectors: Iterable, name: str = "") -> FDModule:
    sub = vectors if isinstance(vectors, Subspace) else Subspace(vectors, M.dim)
    free = sub.complement_columns()
    pos = {c: i for i, c in enumerate(free)}
    k = len(free)
    action = []
    for mat in M.action:
        data = [{} for _ in range(k)]
        for j, c in enumerate(free):
            w = sub.residual(mat.apply({c: ONE}))
            for r, v in w.items():
                data[pos[r]][j] = v
        action.append(ExactMatrix(k, k, data))
    return FDModule(M.algebra, k, action, name)


def direct_sum(mods: Sequence[FDModule], name: str = "") -> FDModule:
    A = mods[0].algebra
    action = [block_diagonal([m.action[i] for m in mods]) for i in range(A.dim)]
    return FDModule(A, sum(m.dim for m in mods), action, name)


def _intertwiner_rows(GM: Sequence[ExactMatrix], GN: Sequence[ExactMatrix], m: int, n: int):
    # unknown T (n x m), index a*m + b; equation (GN T - T GM)[i, j] = 0
    for gm, gn in zip(GM, GN):
        gmT = gm.transpose()
        for i in range(n):
            gni = gn.data[i]
            for j in range(m):
                row: dict = {}
                for k, c in gni.items():
                    key = k * m + j
                    row[key] = row.get(key, ZERO) + c
                for k, c in gmT.data[j].items():
                    key = i * m + k
                    row[key] = row.get(key, ZERO) - c
                row = {key: v for key, v in row.items() if v}
                if row:
                    yield row


def _vec_to_matrix(v: dict, n: int, m: int) -> ExactMatrix:
    data = [{} for _ in range(n)]
    for key, val in v.items():
        a, b = divmod(key, m)
        data[a][b] = val
    return ExactMatrix(n, m, data)


def hom_space(M: FDModule, N: FDModule) -> list[ExactMatrix]:
    """Basis of module maps ``M -> N`` (matrices of shape N.dim x M.dim)."""
    if M.algebra is not N.algebra:
        raise ModuleError("modules over different algebras")
    A = M.algebra
    if M is N and M.regular:
        # End_A(A) is right multiplication by A
        return [A.right_matrix(i) for i in range(A.dim)]
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    gens = algebra_generators(A)
    GM = [M.act(g) for g in gens]
    GN = [N.act(g) for g in gens]
    kern = kernel_sparse(_intertwiner_rows(GM, GN, m, n), m * n)
    return [_vec_to_matrix(v, n, m) for v in kern]


def is_module_map(M: FDModule, N: FDModule, T: ExactMatrix) -> bool:
    for gm, gn in zip(M.generator_actions(), N.generator_actions()):
        if gn @ T != T @ gm:
            return False
    return True


def _seed_schedule(seed: int, basis_len: int, tries: int):
    rng = random.Random(seed)
    for _ in range(tries):
        yield [rng.randint(-50, 50) for _ in range(basis_len)]


def is_isomorphic(M: FDModule, N: FDModule, seed: int | None = None, tries: int = 8) -> bool:
    if M.dim != N.dim:
        return False
    if M is N:
        return True
    if M.character() != N.character():
        return False
    homs = hom_space(M, N)
    if not homs:
        return False
    for T in homs:
        if rank(T) == M.dim:
            return True
    seed = default_seed() if seed is None else seed
    for coeffs in _seed_schedule(seed, len(homs), tries):
        T = ExactMatrix.zeros(N.dim, M.dim)
        for c, h in zip(coeffs, homs):
            if c:
                T = T + h.scale(c)
        if rank(T) == M.dim:
            return True
    return False


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------
def endomorphism_radical_codim(endos: Sequence[ExactMatrix]) -> int:
    """dim End(M) - dim rad End(M), via the trace form on the faithful module M."""
    return len(endos) - len(trace_form_kernel(endos))


def _splitting_schedule(endos: Sequence[ExactMatrix], seed: int, random_tries: int = 24):
    k = len(endos)
    for T in endos:
        yield T
    for a in range(k):
        for b in range(a + 1, min(k, a + 6)):
            yield endos[a] + endos[b]
            yield endos[a] - endos[b]
    rng = random.Random(seed)
    for _ in range(random_tries):
        T = ExactMatrix.zeros(endos[0].rows, endos[0].cols)
        for h in endos:
            c = rng.randint(-3, 3)
            if c:
                T = T + h.scale(c)
        yield T


def split_once(M: FDModule, seed: int | None = None) -> list[FDModule] | None:
    """Split ``M`` into >= 2 summands, or return None when ``M`` is indecomposable."""
    seed = default_seed() if seed is None else seed
    endos = hom_space(M, M)
    if endomorphism_radical_codim(endos) <= 1:
        return None
    for T in _splitting_schedule(endos, seed):
        cands = candidate_roots(T, seed=seed)
        if len(cands) < 2:
            continue
        res = split_invariant_subspaces(T, cands)
        if res.complete and len(res.spaces) >= 2:
            return [submodule(M, basis) for _, basis in res.spaces]
    raise UnsplittableField(
        f"{M!r}: End(M)/rad has dimension > 1 but no scheduled endomorphism "
        "has two eigenvalues in the dyadic x root-of-unity candidate set"
    )


def indecomposable_summands(M: FDModule, seed: int | None = None) -> list[FDModule]:
    pending = [M]
    done = []
    while pending:
        X = pending.pop()
        parts = split_once(X, seed)
        if parts is None:
            done.append(X)
        else:
            pending.extend(parts)
    done.sort(key=lambda X: X.dim)
    return done


def group_isomorphic(mods: Sequence[FDModule], seed: int | None = None) -> list[tuple[FDModule, int]]:
    classes: list[list] = []
    for X in mods:
        for cls in classes:
            if is_isomorphic(cls[0], X, seed):
                cls[1] += 1
                break
        else:
            classes.append([X, 1])
    return [(c[0], c[1]) for c in classes]


def decompose_module(M: FDModule, seed: int | None = None) -> list[tuple[FDModule, int]]:
    """Indecomposable summands of ``M`` with multiplicities."""
    return group_isomorphic(indecomposable_summands(M, seed), seed)


# ---------------------------------------------------------------------------
# simples and projective covers
# ---------------------------------------------------------------------------
def radical_submodule(M: FDModule, radical: Sequence[Element]) -> Subspace:
    vecs = []
    for r in radical:
        mat = M.act(r)
        for j in range(M.dim):
            col = mat.apply({j: ONE})
            if col:
                vecs.append(col)
    return Subspace(vecs, M.dim)


def top(M: FDModule, radical: Sequence[Element], name: str = "") -> FDModule:
    return quotient_module(M, radical_submodule(M, radical), name)


@dataclass
class BlockData:
    """Simples, their projective covers, and the Cartan matrix of an algebra."""

    simples: list[FDModule]
    pims: list[FDModule]
    radical: list[Element]
    cartan: list[list[int]] = field(default_factory=list)  # cartan[i][j] = [P_j : S_i]

    def labels(self) -> list[str]:
        return [S.name for S in self.simples]

    def pim(self, label: str) -> FDModule:
        return self.pims[self.labels().index(label)]

    def simple(self, label: str) -> FDModule:
        return self.simples[self.labels().index(label)]


Labeler = Callable[[list[FDModule]], list[str]]


def default_labeler(simples: list[FDModule]) -> list[str]:
    return [f"S{i}" for i in range(len(simples))]


def block_data(A: FinAlgebra, labeler: Labeler | None = None, seed: int | None = None) -> BlockData:
    """Principal indecomposables (summands of the regular module) and their tops."""
    radical = jacobson_radical(A)
    summands = decompose_module(regular_module(A), seed)
    pims = [P for P, _ in summands]
    simples = [top(P, radical) for P in pims]
    order = sorted(range(len(pims)), key=lambda i: simples[i].dim)
    pims = [pims[i] for i in order]
    simples = [simples[i] for i in order]
    labels = (labeler or default_labeler)(simples)
    simples = [S.renamed(l) for S, l in zip(simples, labels)]
    pims = [P.renamed(f"P({l})") for P, l in zip(pims, labels)]
    total = sum(S.dim * P.dim for S, P in zip(simples, pims))
    if total != A.dim:
        raise ArithmeticError(f"sum dim S_i dim P_i = {total} != dim A = {A.dim}")
    data = BlockData(simples, pims, radical)
    data.cartan = [[len(hom_space(Pi, Pj)) for Pj in pims] for Pi in pims]
    return data


def simple_modules(A: FinAlgebra, labeler: Labeler | None = None, seed: int | None = None) -> list[FDModule]:
    return block_data(A, labeler, seed).simples


def principal_indecomposables(A: FinAlgebra, labeler: Labeler | None = None, seed: int | None = None):
    data = block_data(A, labeler, seed)
    return [(P, S.name) for P, S in zip(data.pims, data.simples)]


def composition_multiplicities(M: FDModule, data: BlockData) -> dict[str, int]:
    """[M : S_i] = dim Hom(P_i, M) (simples are absolutely simple here)."""
    return {S.name: len(hom_space(P, M)) for S, P in zip(data.simples, data.pims)}


def identify(M: FDModule, candidates: Sequence[FDModule], seed: int | None = None) -> str | None:
    for C in candidates:
        if is_isomorphic(M, C, seed):
            return C.name
    return None
