"""Hopf algebra layer: axiom checks, Nichols algebras H(n), R-matrices,
Drinfeld elements and doubles, integrals, tensor and dual modules.

Tensors in ``A^{⊗k}`` are sparse dicts keyed by k-tuples of basis indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import (
    Element,
    FDModule,
    FinAlgebra,
    algebra_generators,
    basis_elt,
    check_associativity,
    check_unit,
    elt_add,
    elt_equal,
    elt_scale,
    elt_sub,
)
from .linalg import ExactMatrix, inverse, kernel_sparse
from .scalar import HALF, I, ONE, ZERO, CycScalar

Tensor = dict  # tuple of basis indices -> CycScalar


class OutOfRange(ValueError):
    pass


class ConventionMismatch(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# tensor helpers
# ---------------------------------------------------------------------------
def t_add(X: Tensor, Y: Tensor, scale=ONE) -> Tensor:
    out = dict(X)
    for k, v in Y.items():
        s = out.get(k, ZERO) + v * scale
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def t_scale(X: Tensor, c) -> Tensor:
    c = CycScalar.coerce(c)
    if not c:
        return {}
    return {k: v * c for k, v in X.items()}


def t_sub(X: Tensor, Y: Tensor) -> Tensor:
    return t_add(X, Y, -ONE)


def t_equal(X: Tensor, Y: Tensor) -> bool:
    return not t_sub(X, Y)


def t_accumulate(acc: dict, key, c) -> None:
    s = acc.get(key, ZERO) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def t_mul(A: FinAlgebra, X: Tensor, Y: Tensor) -> Tensor:
    """Componentwise product in ``A^{⊗k}``."""
    acc: dict = {}
    mult = A.mult
    for kx, cx in X.items():
        for ky, cy in Y.items():
            partial = [((), cx * cy)]
            for a, b in zip(kx, ky):
                prod = mult.get((a, b))
                if not prod:
                    partial = []
                    break
                partial = [(key + (k,), c * v) for key, c in partial for k, v in prod.items()]
            for key, c in partial:
                acc[key] = acc.get(key, ZERO) + c
    return {k: v for k, v in acc.items() if v}


def t_from_elements(*elts: Element) -> Tensor:
    """The pure tensor ``a_1 ⊗ ... ⊗ a_k``."""
    partial = [((), ONE)]
    for e in elts:
        partial = [(key + (k,), c * v) for key, c in partial for k, v in e.items()]
    acc: dict = {}
    for key, c in partial:
        t_accumulate(acc, key, c)
    return acc


def t_unit(A: FinAlgebra, k: int) -> Tensor:
    return t_from_elements(*([A.unit] * k))


def t_map_leg(X: Tensor, leg: int, f: Callable[[int], dict], width: int = 1) -> Tensor:
    """Replace leg ``leg`` by ``f(index)``, a dict of ``width``-tuples (or indices)."""
    acc: dict = {}
    for key, c in X.items():
        for img, v in f(key[leg]).items():
            img = img if isinstance(img, tuple) else (img,)
            t_accumulate(acc, key[:leg] + img + key[leg + 1:], c * v)
    return acc


def t_insert_unit(A: FinAlgebra, X: Tensor, leg: int) -> Tensor:
    acc: dict = {}
    for key, c in X.items():
        for k, v in A.unit.items():
            t_accumulate(acc, key[:leg] + (k,) + key[leg:], c * v)
    return acc


def t_permute(X: Tensor, perm: Sequence[int]) -> Tensor:
    """New leg ``t`` is old leg ``perm[t]``."""
    return {tuple(key[p] for p in perm): c for key, c in X.items()}


def t_flip(X: Tensor) -> Tensor:
    return t_permute(X, (1, 0))


def t_contract_leg(X: Tensor, leg: int, f: Sequence) -> Tensor:
    """Apply a functional (list of values on basis) to one leg."""
    acc: dict = {}
    for key, c in X.items():
        v = f[key[leg]]
        if v:
            t_accumulate(acc, key[:leg] + key[leg + 1:], c * v)
    return acc


def t_multiply_legs(A: FinAlgebra, X: Tensor) -> Element:
    """m(a ⊗ b) for a 2-tensor."""
    acc: Element = {}
    for (i, j), c in X.items():
        for k, v in A.mult.get((i, j), {}).items():
            t_accumulate(acc, k, c * v)
    return acc


def t_to_element(X: Tensor) -> Element:
    return {key[0]: c for key, c in X.items()}


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------
@dataclass(eq=False)
class HopfAlgebra:
    alg: FinAlgebra
    delta: list  # per basis index: Tensor with 2-tuple keys
    counit: list  # per basis index: CycScalar
    antipode: ExactMatrix  # column j = S(e_j)
    antipode_inv: ExactMatrix | None = None
    name: str = ""
    sign_character: list | None = None  # values of the u -> -1 character on the basis
    quotient: tuple | None = None  # (H, matrix of a Hopf surjection onto H)
    _grouplikes: list | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.antipode_inv is None:
            inv = inverse(self.antipode)
            if inv is None:
                raise ValueError(f"{self.name}: antipode is not invertible")
            self.antipode_inv = inv

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def comult(self) -> ExactMatrix:
        d = self.dim
        trip = [(i * d + j, k, c) for k, t in enumerate(self.delta) for (i, j), c in t.items()]
        return ExactMatrix.from_triplets(d * d, d, trip)

    def mul(self, a: Element, b: Element) -> Element:
        return self.alg.mul(a, b)

    def coproduct(self, h: Element) -> Tensor:
        acc: dict = {}
        for i, c in h.items():
            for key, v in self.delta[i].items():
                t_accumulate(acc, key, c * v)
        return acc

    def eps(self, h: Element) -> CycScalar:
        s = ZERO
        for i, c in h.items():
            s = s + c * self.counit[i]
        return s

    def S(self, h: Element) -> Element:
        return self.antipode.apply(h)

    def Sinv(self, h: Element) -> Element:
        return self.antipode_inv.apply(h)

    def S_basis(self, i: int) -> Element:
        return self.antipode.apply({i: ONE})

    def Sinv_basis(self, i: int) -> Element:
        return self.antipode_inv.apply({i: ONE})

    def delta_basis(self, i: int) -> Tensor:
        return self.delta[i]

    def delta_op(self, h: Element) -> Tensor:
        return t_flip(self.coproduct(h))

    def generators(self) -> list[Element]:
        return algebra_generators(self.alg)

    def grouplikes(self) -> list[Element]:
        """Grouplike elements among the basis vectors and their signed combinations found by kernel search."""
        if self._grouplikes is None:
            found = []
            for i in range(self.dim):
                e = basis_elt(i)
                if self.counit[i] == ONE and t_equal(self.delta[i], {(i, i): ONE}):
                    found.append(e)
            self._grouplikes = found
        return self._grouplikes

    def skew_primitives(self, g: Element, h: Element, nontrivial: bool = True) -> list[Element]:
        """Basis of {x : Δ(x) = x⊗g + h⊗x}, modulo k(g - h) when ``nontrivial``."""
        d = self.dim
        # unknown x = sum c_k e_k; equation per 2-tuple key
        cols: list[dict] = []
        for k in range(d):
            t = t_sub(self.delta[k], t_from_elements(basis_elt(k), g))
            t = t_sub(t, t_from_elements(h, basis_elt(k)))
            cols.append(t)
        keys = sorted({key for t in cols for key in t})
        rows = []
        for key in keys:
            row = {k: cols[k][key] for k in range(d) if key in cols[k]}
            if row:
                rows.append(row)
        sols = kernel_sparse(rows, d)
        trivial = elt_sub(g, h)
        if not nontrivial or not trivial:
            return sols
        from .linalg import Subspace

        base = Subspace([trivial], d)
        out = []
        for v in sols:
            if base._ech.add(base._ech.reduce(v)):
                out.append(v)
        return out

    def __repr__(self):
        return f"HopfAlgebra({self.name}, dim={self.dim})"


@dataclass
class AxiomReport:
    checks: dict = field(default_factory=dict)
    triangular: bool | None = None

    def record(self, name: str, ok: bool) -> None:
        self.checks[name] = bool(ok)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def __bool__(self):
        return self.ok


def _mults_to_check(H: HopfAlgebra, full_limit: int = 16):
    """Pairs (a, e_j) on which multiplicativity is checked.

    A map that is multiplicative on (generator, basis) pairs is multiplicative
    everywhere, so for larger algebras only generators are used on the left.
    """
    d = H.dim
    lefts = [basis_elt(i) for i in range(d)] if d <= full_limit else H.generators()
    return [(a, basis_elt(j)) for a in lefts for j in range(d)]


def check_hopf_axioms(H: HopfAlgebra, assoc_limit: int = 64) -> AxiomReport:
    A = H.alg
    d = H.dim
    rep = AxiomReport()
    rep.record("unit", check_unit(A))
    rep.record("associativity", check_associativity(A) if d <= assoc_limit else check_associativity(A, sample=4000))

    coassoc = True
    counit = True
    antipode = True
    one = A.unit
    for i in range(d):
        D = H.delta[i]
        left = t_map_leg(D, 0, lambda k: H.delta[k], 2)
        right = t_map_leg(D, 1, lambda k: H.delta[k], 2)
        if not t_equal(left, right):
            coassoc = False
        e = basis_elt(i)
        if not elt_equal(t_to_element(t_contract_leg(D, 0, H.counit)), e) or not elt_equal(
            t_to_element(t_contract_leg(D, 1, H.counit)), e
        ):
            counit = False
        target = elt_scale(one, H.counit[i])
        sl = t_multiply_legs(A, t_map_leg(D, 0, H.S_basis))
        sr = t_multiply_legs(A, t_map_leg(D, 1, H.S_basis))
        if not elt_equal(sl, target) or not elt_equal(sr, target):
            antipode = False
    rep.record("coassociativity", coassoc)
    rep.record("counit", counit)

    bialg = t_equal(H.coproduct(one), t_unit(A, 2)) and H.eps(one) == ONE
    anti = elt_equal(H.S(one), one)
    for a, b in _mults_to_check(H):
        ab = H.mul(a, b)
        if bialg:
            if not t_equal(H.coproduct(ab), t_mul(A, H.coproduct(a), H.coproduct(b))):
                bialg = False
            elif H.eps(ab) != H.eps(a) * H.eps(b):
                bialg = False
        if anti and not elt_equal(H.S(ab), H.mul(H.S(b), H.S(a))):
            anti = False
        if not bialg and not anti:
            break
    rep.record("bialgebra", bialg)
    rep.record("antipode", antipode)
    rep.record("antipode_antihom", anti)
    rep.record("antipode_inverse", (H.antipode_inv @ H.antipode).is_identity())
    return rep


# ---------------------------------------------------------------------------
# Nichols Hopf algebras H(n)
# ---------------------------------------------------------------------------
def _popcount(m: int) -> int:
    return bin(m).count("1")


def _wedge_sign(S: int, T: int) -> int:
    """Sign of x_S x_T rewritten in increasing order (S, T disjoint)."""
    inv = 0
    t = T
    while t:
        low = t & -t
        inv += _popcount(S & ~(low - 1) & ~low)
        t ^= low
    return -1 if inv & 1 else 1


def nichols_label(n: int, idx: int) -> str:
    a, T = divmod(idx, 1 << n)
    if n == 2:
        names = ["x", "y"]
    else:
        names = [f"x{i + 1}" for i in range(n)]
    parts = (["u"] if a else []) + [names[i] for i in range(n) if T >> i & 1]
    return "".join(parts) if n == 2 else "*".join(parts) if parts else "1"


SKEW_CONVENTIONS = ("x1+ux", "1x+xu")


def nichols(n: int, convention: str = "1x+xu"):
    """The Nichols Hopf algebra H(n) = k[Z/2] ⋉ ∧k^n with its triangular R_u.

    ``convention`` picks the skew-primitive coproduct: ``"1x+xu"`` is
    Δ(x) = 1⊗x + x⊗u, ``"x1+ux"`` is Δ(x) = x⊗1 + u⊗x.
    """
    if convention not in SKEW_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if not 0 <= n <= 4:
        raise OutOfRange(f"nichols(n) needs 0 <= n <= 4, got {n}")
    N = 1 << n
    d = 2 * N
    labels = [nichols_label(n, i) or "1" for i in range(d)]

    def table(i, j):
        a, S = divmod(i, N)
        b, T = divmod(j, N)
        if S & T:
            return {}
        sign = _wedge_sign(S, T)
        if b and _popcount(S) & 1:
            sign = -sign
        return {((a + b) % 2) * N + (S | T): CycScalar.rational(sign)}

    mult = {}
    for i in range(d):
        for j in range(d):
            p = table(i, j)
            if p:
                mult[(i, j)] = p
    A = FinAlgebra(d, mult, {0: ONE}, labels, name=f"H({n})")
    u = basis_elt(N)
    xs = [basis_elt(1 << k) for k in range(n)]
    A.generators = [u] + xs

    # Δ and S on generators, extended (anti)multiplicatively along u^a x_{t1} ... x_{tk}
    gen_delta = {"u": t_from_elements(u, u)}
    for k, x in enumerate(xs):
        if convention == "x1+ux":
            gen_delta[k] = t_add(t_from_elements(x, A.unit), t_from_elements(u, x))
        else:
            gen_delta[k] = t_add(t_from_elements(A.unit, x), t_from_elements(x, u))
    gen_S = {"u": u}
    for k, x in enumerate(xs):
        # S(x) = -u x resp. -x u
        gen_S[k] = elt_scale(A.mul(u, x) if convention == "x1+ux" else A.mul(x, u), -1)

    delta = []
    antipode_cols = []
    counit = []
    for idx in range(d):
        a, T = divmod(idx, N)
        factors = (["u"] if a else []) + [k for k in range(n) if T >> k & 1]
        D = t_unit(A, 2)
        Sv = A.unit
        for f in factors:
            D = t_mul(A, D, gen_delta[f])
            Sv = A.mul(gen_S[f], Sv)
        delta.append(D)
        antipode_cols.append(Sv)
        counit.append(ONE if T == 0 else ZERO)
    antipode = ExactMatrix.from_triplets(d, d, [(k, j, c) for j, col in enumerate(antipode_cols) for k, c in col.items()])
    sign = [ZERO if idx % N else (ONE if idx < N else -ONE) for idx in range(d)]
    H = HopfAlgebra(A, delta, counit, antipode, name=f"H({n})", sign_character=sign)
    return H, QTStructure(H, r_u(H), name="R_u")


def nichols_element(H: HopfAlgebra, word: str) -> Element:
    """Basis element of H(n) from a word like 'uxy' (n = 2) or 'u*x1*x3'."""
    A = H.alg
    if word in A.basis_labels:
        return basis_elt(A.basis_labels.index(word))
    raise KeyError(word)


def r_u(H: HopfAlgebra) -> Tensor:
    """R_u = ½(1⊗1 + 1⊗u + u⊗1 − u⊗u) for a Hopf algebra with grouplike labeled 'u'."""
    u = H.alg.basis_labels.index("u")
    return {(0, 0): HALF, (0, u): HALF, (u, 0): HALF, (u, u): -HALF}


# ---------------------------------------------------------------------------
# quasitriangular structures
# ---------------------------------------------------------------------------
@dataclass(eq=False)
class QTStructure:
    hopf: HopfAlgebra
    R: Tensor
    name: str = ""
    _inv: Tensor | None = field(default=None, repr=False)

    @property
    def R_inv(self) -> Tensor | None:
        """(S⊗id)(R), accepted only if it is a two-sided inverse."""
        if self._inv is None:
            H = self.hopf
            cand = t_map_leg(self.R, 0, H.S_basis)
            one = t_unit(H.alg, 2)
            if t_equal(t_mul(H.alg, self.R, cand), one) and t_equal(t_mul(H.alg, cand, self.R), one):
                self._inv = cand
            else:
                self._inv = {}
        return self._inv or None

    @property
    def R21(self) -> Tensor:
        return t_flip(self.R)

    def monodromy_element(self) -> Tensor:
        return t_mul(self.hopf.alg, self.R21, self.R)


def check_quasitriangular(H: HopfAlgebra, qt: QTStructure) -> AxiomReport:
    A = H.alg
    R = qt.R
    rep = AxiomReport()
    rep.record("invertible", qt.R_inv is not None)
    hs = [basis_elt(i) for i in range(H.dim)] if H.dim <= 16 else H.generators()
    ok = True
    for h in hs:
        if not t_equal(t_mul(A, R, H.coproduct(h)), t_mul(A, H.delta_op(h), R)):
            ok = False
            break
    rep.record("conjugation", ok)
    R13 = t_insert_unit(A, R, 1)
    R23 = t_insert_unit(A, R, 0)
    R12 = t_insert_unit(A, R, 2)
    rep.record("delta_left", t_equal(t_map_leg(R, 0, H.delta_basis, 2), t_mul(A, R13, R23)))
    rep.record("delta_right", t_equal(t_map_leg(R, 1, H.delta_basis, 2), t_mul(A, R13, R12)))
    rep.record(
        "counit_legs",
        elt_equal(t_to_element(t_contract_leg(R, 0, H.counit)), A.unit)
        and elt_equal(t_to_element(t_contract_leg(R, 1, H.counit)), A.unit),
    )
    rep.triangular = t_equal(qt.monodromy_element(), t_unit(A, 2))
    return rep


def element_inverse(H: HopfAlgebra, a: Element) -> Element | None:
    A = H.alg
    L = A.left_matrix_of(a)
    inv = inverse(L)
    if inv is None:
        return None
    return inv.apply(dict(A.unit))


def drinfeld_element(H: HopfAlgebra, qt: QTStructure) -> Element:
    """The element m(S⊗id)(R21) = Σ S(r2) r1, checked against S²-conjugation."""
    A = H.alg
    cands = [
        t_multiply_legs(A, t_map_leg(qt.R21, 0, H.S_basis)),
        t_multiply_legs(A, t_map_leg(qt.R21, 1, H.Sinv_basis)),
    ]
    for cand in cands:
        inv = element_inverse(H, cand)
        if inv is None:
            continue
        if all(
            elt_equal(H.S(H.S(basis_elt(i))), A.prod(cand, basis_elt(i), inv)) for i in range(H.dim)
        ):
            return cand
    raise ConventionMismatch("no Drinfeld element candidate implements S² by conjugation")


def conjugates_to_s2(H: HopfAlgebra, g: Element) -> bool:
    inv = element_inverse(H, g)
    if inv is None:
        return False
    return all(elt_equal(H.S(H.S(basis_elt(i))), H.alg.prod(g, basis_elt(i), inv)) for i in range(H.dim))


# ---------------------------------------------------------------------------
# integrals
# ---------------------------------------------------------------------------
@dataclass
class IntegralData:
    left_dual: list  # left integrals of H* (functionals)
    right_dual: list
    left: list  # left integrals in H
    right: list
    dual_unimodular: bool
    unimodular: bool
    distinguished_grouplike: Element | None  # g in H, trivial iff H* unimodular
    modular_function: list | None  # alpha in H*, equal to the counit iff H unimodular


def _functional_integrals(H: HopfAlgebra, leg: int) -> list[list]:
    # (id⊗λ)Δ(h) = λ(h)1 (leg=1) or (λ⊗id)Δ(h) = λ(h)1 (leg=0)
    d = H.dim
    rows = []
    keep = 1 - leg
    for a in range(d):
        eq: dict = {}
        for key, c in H.delta[a].items():
            i, j = key[keep], key[leg]
            eq.setdefault(i, {})
            t_accumulate(eq[i], j, c)
        for i, v in H.alg.unit.items():
            eq.setdefault(i, {})
            t_accumulate(eq[i], a, -v)
        rows.extend(r for r in eq.values() if r)
    return [[v.get(j, ZERO) for j in range(d)] for v in kernel_sparse(rows, d)]


def _element_integrals(H: HopfAlgebra, side: str) -> list[Element]:
    # h Λ = ε(h) Λ (left) or Λ h = ε(h) Λ (right), on generators
    A = H.alg
    d = H.dim
    rows = []
    for g in H.generators():
        M = A.left_matrix_of(g) if side == "left" else sum_right(A, g)
        M = M - ExactMatrix.scalar(d, H.eps(g))
        rows.extend(r for r in M.data if r)
    return kernel_sparse(rows, d)


def sum_right(A: FinAlgebra, g: Element) -> ExactMatrix:
    out = ExactMatrix.zeros(A.dim, A.dim)
    for i, c in g.items():
        out = out + A.right_matrix(i).scale(c)
    return out


def dual_integrals(H: HopfAlgebra) -> IntegralData:
    A = H.alg
    left_dual = _functional_integrals(H, 1)
    right_dual = _functional_integrals(H, 0)
    left = _element_integrals(H, "left")
    right = _element_integrals(H, "right")

    def same_span(U, V, n):
        from .linalg import Subspace

        su = Subspace(U, n)
        return su.dim == Subspace(V, n).dim and all(su.contains(v) for v in V)

    g = None
    if left_dual:
        lam = left_dual[0]
        h = next(i for i in range(H.dim) if lam[i])
        g = elt_scale(t_to_element(t_contract_leg(H.delta[h], 0, lam)), 1 / lam[h])
        for i in range(H.dim):
            got = t_to_element(t_contract_leg(H.delta[i], 0, lam))
            if not elt_equal(got, elt_scale(g, lam[i])):
                g = None
                break
    alpha = None
    if left:
        Lam = left[0]
        k = next(iter(Lam))
        alpha = []
        for i in range(H.dim):
            prod = A.mul(Lam, basis_elt(i))
            alpha.append(prod.get(k, ZERO) / Lam[k])
    return IntegralData(
        left_dual,
        right_dual,
        left,
        right,
        dual_unimodular=same_span(left_dual, right_dual, H.dim),
        unimodular=same_span(left, right, H.dim),
        distinguished_grouplike=g,
        modular_function=alpha,
    )


# ---------------------------------------------------------------------------
# Drinfeld double
# ---------------------------------------------------------------------------
def _delta2(H: HopfAlgebra, a: int) -> Tensor:
    return t_map_leg(H.delta[a], 1, H.delta_basis, 2)


def drinfeld_double(H: HopfAlgebra, base: QTStructure | None = None, check: bool = True):
    """D(H) = H*^{cop} ⊗ H on basis f_i ⊗ e_j (index i*d + j).

    With an R-matrix ``base`` on H, the Hopf surjection D(H) -> H attached to
    it is built, verified, and stored in ``quotient``; the sign character of
    H is pulled back along it.
    """
    d = H.dim
    if d > 32:
        raise OutOfRange(f"drinfeld_double needs dim H <= 32, got {d}")
    A = H.alg
    D = d * d

    # dual multiplication f_i f_j = sum_k Δ(e_k)[i, j] f_k
    dual_mult: dict = {}
    for k in range(d):
        for (i, j), c in H.delta[k].items():
            dual_mult.setdefault((i, j), {})
            t_accumulate(dual_mult[(i, j)], k, c)

    # straightening (1⊗e_a)(f_j⊗1) = sum over (k, m) of c * f_k ⊗ e_m
    straight: dict = {}
    for a in range(d):
        table: dict = {}
        for (a1, a2, a3), c in _delta2(H, a).items():
            left = H.Sinv_basis(a3)
            for k in range(d):
                P = A.prod(left, basis_elt(k), basis_elt(a1))
                for j, v in P.items():
                    table.setdefault(j, {})
                    t_accumulate(table[j], (k, a2), c * v)
        straight[a] = table

    mult: dict = {}
    for i in range(d):
        for a in range(d):
            for j in range(d):
                sj = straight[a].get(j)
                if not sj:
                    continue
                for b in range(d):
                    acc: dict = {}
                    for (k, m), c in sj.items():
                        fprod = dual_mult.get((i, k))
                        hprod = A.mult.get((m, b))
                        if not fprod or not hprod:
                            continue
                        for f, cf in fprod.items():
                            for h, ch in hprod.items():
                                t_accumulate(acc, f * d + h, c * cf * ch)
                    if acc:
                        mult[(i * d + a, j * d + b)] = acc
    unit = {}
    for i in range(d):
        for k, v in A.unit.items():
            c = H.counit[i] * v
            if c:
                unit[i * d + k] = c
    labels = [f"{A.basis_labels[i]}*|{A.basis_labels[j]}" for i in range(d) for j in range(d)]
    DA = FinAlgebra(D, mult, unit, labels, name=f"D({H.name})")

    # coproduct: Δ(f_i ⊗ a) = Σ c_{jk}^i (f_k ⊗ a1) ⊗ (f_j ⊗ a2)
    delta = []
    counit = []
    for i in range(d):
        dual_delta = [((j, k), c) for (j, k), prod in A.mult.items() for kk, c in prod.items() if kk == i]
        for a in range(d):
            acc: dict = {}
            for (j, k), c in dual_delta:
                for (a1, a2), v in H.delta[a].items():
                    t_accumulate(acc, (k * d + a1, j * d + a2), c * v)
            delta.append(acc)
            counit.append(_eval_unit(A, i) * H.counit[a])

    # antipode: S(f ⊗ a) = (ε ⊗ S(a)) (f∘S⁻¹ ⊗ 1)
    eps_f = {i: H.counit[i] for i in range(d) if H.counit[i]}
    cols = []
    for i in range(d):
        # f_i ∘ S⁻¹ = sum_k f_i(S⁻¹ e_k) f_k
        fS = {k: H.Sinv_basis(k).get(i, ZERO) for k in range(d)}
        fS = {k: v for k, v in fS.items() if v}
        right = {k * d + m: c * v for k, c in fS.items() for m, v in A.unit.items()}
        for a in range(d):
            left = {f * d + m: cf * cm for f, cf in eps_f.items() for m, cm in H.S_basis(a).items()}
            cols.append(DA.mul(left, right))
    antipode = ExactMatrix.from_triplets(D, D, [(k, j, c) for j, col in enumerate(cols) for k, c in col.items()])

    DH = HopfAlgebra(DA, delta, counit, antipode, name=f"D({H.name})")

    gens = [{(i * d + k): v for i, c in eps_f.items() for k, v in g.items()} for g in H.generators()]
    gens = [g for g in gens if g]
    dual_cands = [{i * d + m: v for m, v in A.unit.items()} for i in range(d)]
    DA.generators = None
    algebra_generators(DA, gens + dual_cands)

    R = {}
    for i in range(d):
        for f, cf in eps_f.items():
            for m, cm in A.unit.items():
                left_key = f * d + i
                right_key = i * d + m
                t_accumulate(R, (left_key, right_key), cf * cm)
    qt = QTStructure(DH, R, name="canonical")
    if check:
        rep = check_hopf_axioms(DH)
        if not rep.ok:
            raise ConventionMismatch(f"double fails Hopf axioms: {rep.failures}")
        qrep = check_quasitriangular(DH, qt)
        if not qrep.ok:
            raise ConventionMismatch(f"double fails quasitriangularity: {qrep.failures}")
    if base is not None:
        for P in (projection_matrix(H, base.R, 0), projection_matrix(H, base.R_inv or {}, 1)):
            if check_projection(H, DH, P):
                DH.quotient = (H, P)
                break
        else:
            raise ConventionMismatch("no Hopf surjection D(H) -> H from the given R-matrix")
        if H.sign_character is not None:
            DH.sign_character = [_character_at(H, DH.quotient[1], j) for j in range(D)]
    return DH, qt


def _character_at(H: HopfAlgebra, P: ExactMatrix, j: int) -> CycScalar:
    img = P.apply({j: ONE})
    return sum((c * H.sign_character[k] for k, c in img.items()), ZERO)


def _eval_unit(A: FinAlgebra, i: int) -> CycScalar:
    """f_i(1)."""
    return A.unit.get(i, ZERO)


def projection_matrix(H: HopfAlgebra, R: Tensor, leg: int) -> ExactMatrix:
    """f ⊗ h -> (f⊗id)(R) h (leg 0) or (id⊗f)(R) h (leg 1)."""
    d = H.dim
    A = H.alg
    images: dict = {}
    for key, c in R.items():
        images.setdefault(key[leg], {})
        t_accumulate(images[key[leg]], key[1 - leg], c)
    trip = []
    for i, r in images.items():
        for a in range(d):
            for k, v in A.mul(r, basis_elt(a)).items():
                trip.append((k, i * d + a, v))
    return ExactMatrix.from_triplets(d, d * d, trip)


def check_projection(H: HopfAlgebra, DH: HopfAlgebra, P: ExactMatrix) -> bool:
    """Is ``P`` (matrix D(H) -> H) a Hopf algebra map?"""
    pi = P.apply
    for g in DH.generators():
        for j in range(DH.dim):
            b = basis_elt(j)
            if not elt_equal(pi(DH.mul(g, b)), H.mul(pi(g), pi(b))):
                return False
    if not elt_equal(pi(DH.alg.unit), H.alg.unit):
        return False
    for j in range(DH.dim):
        b = basis_elt(j)
        lhs = H.coproduct(pi(b))
        rhs = t_map_leg(t_map_leg(DH.delta[j], 0, lambda k: pi({k: ONE})), 1, lambda k: pi({k: ONE}))
        if not t_equal(lhs, rhs):
            return False
        if H.eps(pi(b)) != DH.counit[j]:
            return False
        if not elt_equal(pi(DH.S(b)), H.S(pi(b))):
            return False
    return True


def pullback_module(DH: HopfAlgebra, M: FDModule, name: str = "") -> FDModule:
    """A module of H viewed as a D(H)-module through the stored surjection."""
    if DH.quotient is None:
        raise ValueError(f"{DH!r} carries no Hopf surjection")
    _, P = DH.quotient
    action = [M.act(P.apply({j: ONE})) for j in range(DH.dim)]
    return FDModule(DH.alg, M.dim, action, name or M.name)


# ---------------------------------------------------------------------------
# modules over Hopf algebras
# ---------------------------------------------------------------------------
def trivial_module(H: HopfAlgebra) -> FDModule:
    return FDModule(H.alg, 1, [ExactMatrix.scalar(1, c) for c in H.counit], "1")


def sign_module(H: HopfAlgebra) -> FDModule | None:
    if H.sign_character is None:
        return None
    return FDModule(H.alg, 1, [ExactMatrix.scalar(1, c) for c in H.sign_character], "S")


def tensor_module(H: HopfAlgebra, M: FDModule, N: FDModule, name: str = "") -> FDModule:
    """h · (m ⊗ n) = Δ(h)(m ⊗ n); basis index i*dim(N) + j."""
    action = []
    for i in range(H.dim):
        acc = ExactMatrix.zeros(M.dim * N.dim, M.dim * N.dim)
        for (a, b), c in H.delta[i].items():
            acc = acc + M.action[a].kron(N.action[b]).scale(c)
        action.append(acc)
    return FDModule(H.alg, M.dim * N.dim, action, name or f"{M.name}⊗{N.name}")


def dual_module(H: HopfAlgebra, M: FDModule, name: str = "") -> FDModule:
    """Left dual: h acts on M* by ρ(S(h))^T."""
    action = [M.act(H.S_basis(i)).transpose() for i in range(H.dim)]
    return FDModule(H.alg, M.dim, action, name or f"{M.name}*")


def check_duality_maps(H: HopfAlgebra, M: FDModule) -> bool:
    """ev: M*⊗M -> 1 and coev: 1 -> M⊗M* are module maps."""
    Ms = dual_module(H, M)
    one = trivial_module(H)
    n = M.dim
    ev = ExactMatrix.from_triplets(1, n * n, [(0, i * n + i, ONE) for i in range(n)])
    coev = ExactMatrix.from_triplets(n * n, 1, [(i * n + i, 0, ONE) for i in range(n)])
    left = tensor_module(H, Ms, M)
    right = tensor_module(H, M, Ms)
    for g in H.generators():
        if ev @ left.act(g) != one.act(g) @ ev:
            return False
        if right.act(g) @ coev != coev @ one.act(g):
            return False
    return True


def act_tensor(M: FDModule, N: FDModule, X: Tensor) -> ExactMatrix:
    """Matrix of a 2-tensor of the algebra acting on M ⊗ N."""
    acc = ExactMatrix.zeros(M.dim * N.dim, M.dim * N.dim)
    for (a, b), c in X.items():
        acc = acc + M.action[a].kron(N.action[b]).scale(c)
    return acc


# ---------------------------------------------------------------------------
# the non-triangular R-matrix on H(2) and the copairing data built on it
# ---------------------------------------------------------------------------
def _h2_elt(H: HopfAlgebra, terms: dict) -> Element:
    labels = H.alg.basis_labels
    return {labels.index(w): CycScalar.coerce(c) for w, c in terms.items() if c}


def _h2_tensor(H: HopfAlgebra, terms: Sequence[tuple]) -> Tensor:
    labels = H.alg.basis_labels
    acc: dict = {}
    for c, w1, w2 in terms:
        t_accumulate(acc, (labels.index(w1), labels.index(w2)), CycScalar.coerce(c))
    return acc


def appendix_R(H: HopfAlgebra, quartic=HALF) -> Tensor:
    """The non-triangular R-matrix of H(2).

    ``quartic`` is the coefficient of the xy⊗xy group; only ½ gives an
    R-matrix (with 1 it is neither invertible nor compatible with Δ).
    """
    h = HALF
    q = CycScalar.coerce(quartic)
    terms = [
        (h, "1", "1"), (h, "1", "u"), (h, "u", "1"), (-h, "u", "u"),
        (-h, "x", "uy"), (-h, "ux", "uy"), (-h, "x", "y"), (h, "ux", "y"),
        (h, "y", "ux"), (h, "uy", "ux"), (h, "y", "x"), (-h, "uy", "x"),
        (-q, "xy", "xy"), (-q, "uxy", "xy"), (-q, "xy", "uxy"), (q, "uxy", "uxy"),
    ]
    return _h2_tensor(H, terms)


def appendix_gamma(H: HopfAlgebra) -> Tensor:
    h = HALF
    ih = I * HALF
    terms = [
        (h, "1", "1"), (h, "1", "u"), (h, "u", "1"), (-h, "u", "u"),
        (ih, "x", "uy"), (-ih, "ux", "uy"), (ih, "x", "y"), (ih, "ux", "y"),
        (-ih, "y", "ux"), (ih, "uy", "ux"), (-ih, "y", "x"), (-ih, "uy", "x"),
        (-h, "xy", "xy"), (-h, "uxy", "xy"), (-h, "xy", "uxy"), (h, "uxy", "uxy"),
    ]
    return _h2_tensor(H, terms)


A_CONST = (ONE - I) * HALF


def sigma_plus(H: HopfAlgebra) -> Element:
    a, ab = A_CONST, A_CONST.conj()
    return H.alg.mul(_h2_elt(H, {"1": a, "u": ab}), _h2_elt(H, {"1": 1, "xy": 1}))


def sigma_plus_inv(H: HopfAlgebra) -> Element:
    a, ab = A_CONST, A_CONST.conj()
    return H.alg.mul(_h2_elt(H, {"1": ab, "u": a}), _h2_elt(H, {"1": 1, "xy": -1}))


def sigma_minus(H: HopfAlgebra) -> Element:
    return H.alg.mul(_h2_elt(H, {"u": 1}), sigma_plus(H))


def sigma_minus_inv(H: HopfAlgebra) -> Element:
    return H.alg.mul(_h2_elt(H, {"u": 1}), sigma_plus_inv(H))


def drinfeld_u_expected(H: HopfAlgebra) -> Element:
    return _h2_elt(H, {"u": 1, "uxy": 2})


def lambda_s(H: HopfAlgebra, s) -> list:
    labels = H.alg.basis_labels
    s = CycScalar.coerce(s)
    return [s if w in ("xy", "uxy") else ZERO for w in labels]


def functional_eval(f: Sequence, h: Element) -> CycScalar:
    acc = ZERO
    for i, c in h.items():
        if f[i]:
            acc = acc + f[i] * c
    return acc


def character_from_values(H: HopfAlgebra, values: Sequence) -> list:
    return [CycScalar.coerce(v) for v in values]


def hopf_labeler(H: HopfAlgebra):
    """Labels "1" (counit), "S" (sign character), then "p", "q" or "X1", "X2", ..."""

    def label(simples: list[FDModule]) -> list[str]:
        labels: list = [None] * len(simples)
        sign = H.sign_character
        for k, M in enumerate(simples):
            if M.dim != 1:
                continue
            vals = [m[0, 0] for m in M.action]
            if vals == list(H.counit):
                labels[k] = "1"
            elif sign is not None and vals == list(sign):
                labels[k] = "S"
        rest = [k for k, l in enumerate(labels) if l is None]
        names = ["p", "q"] if len(rest) == 2 else [f"X{i + 1}" for i in range(len(rest))]
        for k, nm in zip(rest, names):
            labels[k] = nm
        return labels

    return label


def hopf_block_data(H: HopfAlgebra, seed: int | None = None):
    from .algebra import block_data

    return block_data(H.alg, hopf_labeler(H), seed)


def projective_generators(H: HopfAlgebra, seed: int | None = None) -> list[FDModule]:
    """The projective indecomposables of H; every module is a quotient of a sum of them."""
    return hopf_block_data(H, seed).pims
