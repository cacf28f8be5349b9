"""Pre-metric groups, exact Gauss sums, the sixteen classes with a Lagrangian
fermion, their Z/16 group law, and condensation at the level of inventories."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .repcat import CategoryInventory, SimpleRecord, is_rational_integer
from .scalar import ONE, SQRT2, ZERO, CycScalar, sqrt_int

EIGHTHS = [Fraction(k, 8) for k in range(8)]


class DegenerateForm(ArithmeticError):
    def __init__(self, message: str, value=None):
        super().__init__(message)
        self.value = value


class SplitUnsupported(ArithmeticError):
    pass


def mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def mod8(x: Fraction) -> Fraction:
    return x - 8 * ((x.numerator // x.denominator) // 8)


def e(x: Fraction) -> CycScalar:
    """exp(2πi x) for x in (1/16)Z."""
    x = mod1(Fraction(x))
    if (16 * x).denominator != 1:
        raise ValueError(f"{x} is not a multiple of 1/16")
    return CycScalar.root_of_unity(int(16 * x), 16)


# ---------------------------------------------------------------------------
# pre-metric groups
# ---------------------------------------------------------------------------
@dataclass
class PreMetricGroup:
    orders: tuple
    q: dict  # element tuple -> Fraction in [0, 1)

    def elements(self) -> list[tuple]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def add(self, g: tuple, h: tuple) -> tuple:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def neg(self, g: tuple) -> tuple:
        return tuple((-a) % n for a, n in zip(g, self.orders))

    @property
    def zero(self) -> tuple:
        return tuple(0 for _ in self.orders)

    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def b(self, g: tuple, h: tuple) -> Fraction:
        return mod1(self.q[self.add(g, h)] - self.q[g] - self.q[h])

    def is_quadratic(self) -> bool:
        els = self.elements()
        if self.q[self.zero] != 0:
            return False
        for g in els:
            if self.q[self.neg(g)] != self.q[g]:
                return False
        # additivity in the first slot against generators implies it everywhere
        gens = [tuple(int(i == j) for i in range(len(self.orders))) for j in range(len(self.orders))]
        for g, h, k in itertools.product(gens, els, els):
            if self.b(self.add(g, h), k) != mod1(self.b(g, k) + self.b(h, k)):
                return False
        return True

    def radical(self) -> list[tuple]:
        els = self.elements()
        return [g for g in els if all(self.b(g, h) == 0 for h in els)]

    def is_nondegenerate(self) -> bool:
        return self.radical() == [self.zero]

    def orthogonal(self, s: tuple) -> list[tuple]:
        return [g for g in self.elements() if self.b(s, g) == 0]

    def is_lagrangian_fermion(self, s: tuple) -> bool:
        return self.q[s] == Fraction(1, 2) and set(self.orthogonal(s)) == {self.zero, s}

    def fermions(self) -> list[tuple]:
        return [s for s in self.elements() if self.is_lagrangian_fermion(s)]

    def values(self) -> list[Fraction]:
        return [self.q[g] for g in self.elements()]


def automorphisms(orders: tuple) -> list:
    """Automorphisms of Z/2 x Z/2 or Z/n, as dicts on elements."""
    G = PreMetricGroup(orders, {})
    els = G.elements()
    gens = [tuple(1 if i == j else 0 for i in range(len(orders))) for j in range(len(orders))]
    out = []
    for imgs in itertools.product(els, repeat=len(gens)):
        # an assignment on generators extends to a homomorphism iff orders are respected
        if any(any((k * c) % n for c, n in zip(img, orders)) for img, k in zip(imgs, orders)):
            continue
        phi = {}
        for g in els:
            v = G.zero
            for coef, img in zip(g, imgs):
                for _ in range(coef):
                    v = G.add(v, img)
            phi[g] = v
        if len(set(phi.values())) == len(els):
            out.append(phi)
    return out


@dataclass
class GaussResult:
    value: CycScalar
    sq_magnitude: Fraction
    charge: Fraction | None  # σ mod 8 with Σ = sqrt|G| e^{2πiσ/8}


def _charge_from(value: CycScalar, norm: CycScalar) -> Fraction | None:
    """σ in (1/2)Z mod 8 with value = norm * exp(2πiσ/8)."""
    if not norm:
        return None
    unit = value / norm
    for k in range(16):
        if unit == CycScalar.root_of_unity(k, 16):
            return Fraction(k, 2)
    return None


def gauss_sum_values(values: Sequence[Fraction], order: int | None = None, strict: bool = True) -> GaussResult:
    total = sum((e(v) for v in values), ZERO)
    n = order if order is not None else len(values)
    sq = (total * total.conj()).to_fraction()
    if sq != n:
        if strict and sq != 0:
            raise DegenerateForm(f"|Gauss sum|^2 = {sq} differs from |G| = {n}", sq)
        return GaussResult(total, sq, None)
    return GaussResult(total, sq, _charge_from(total, sqrt_int(n)))


def gauss_sum(G: PreMetricGroup, strict: bool = True) -> GaussResult:
    return gauss_sum_values(G.values(), G.order(), strict)


def modular_charge(dims: Sequence[CycScalar], twists: Sequence[Fraction]) -> Fraction:
    """σ with Σ d_i² θ_i = D e^{2πiσ/8}, D² = Σ d_i²."""
    total = sum((d * d * e(t) for d, t in zip(dims, twists)), ZERO)
    dsq = sum((d * d for d in dims), ZERO).to_fraction()
    norm = sqrt_int(int(dsq))
    charge = _charge_from(total, norm)
    if charge is None:
        raise DegenerateForm("modular Gauss sum has the wrong magnitude", total)
    return charge


# ---------------------------------------------------------------------------
# the classes of B
# ---------------------------------------------------------------------------
@dataclass
class BSimple:
    label: str
    dim: CycScalar
    twist: Fraction
    parity: int  # 0 if it centralizes the fermion, 1 otherwise
    dual: str
    times_fermion: str


@dataclass
class BClass:
    kind: str  # "pointed" or "ising"
    charge: Fraction
    fermion: str
    simples: list = field(default_factory=list)
    group: PreMetricGroup | None = None
    fermion_element: tuple | None = None
    nu: int | None = None
    name: str = ""

    def simple(self, label: str) -> BSimple:
        for s in self.simples:
            if s.label == label:
                return s
        raise KeyError(label)

    def even(self) -> list[BSimple]:
        return [s for s in self.simples if s.parity == 0]

    def odd(self) -> list[BSimple]:
        return [s for s in self.simples if s.parity == 1]

    def sum_squares(self) -> CycScalar:
        return sum((s.dim * s.dim for s in self.simples), ZERO)


def _elt_label(g: tuple) -> str:
    return "g" + "".join(str(c) for c in g)


def pointed_class(G: PreMetricGroup, s: tuple) -> BClass:
    if not G.is_lagrangian_fermion(s):
        raise ValueError(f"{s} is not a Lagrangian fermion")
    gs = gauss_sum(G)
    simples = [
        BSimple(_elt_label(g), ONE, G.q[g], 0 if G.b(s, g) == 0 else 1, _elt_label(G.neg(g)), _elt_label(G.add(g, s)))
        for g in G.elements()
    ]
    shape = "x".join(f"Z{n}" for n in G.orders)
    qtxt = ",".join(str(G.q[g]) for g in G.elements())
    return BClass("pointed", gs.charge, _elt_label(s), simples, G, s, name=f"pointed[{shape};q=({qtxt});s={_elt_label(s)}]")


ISING_NUS = tuple(range(1, 16, 2))


def ising_class(nu: int) -> BClass:
    """Ising data: fusion 1, psi, sigma; θ_psi = -1, θ_sigma = exp(2πiν/16)."""
    if nu % 2 == 0 or not 0 < nu < 16:
        raise ValueError("Ising twist exponent must be odd in 1..15")
    simples = [
        BSimple("1", ONE, Fraction(0), 0, "1", "psi"),
        BSimple("psi", ONE, Fraction(1, 2), 0, "psi", "1"),
        BSimple("sigma", SQRT2, Fraction(nu, 16), 1, "sigma", "sigma"),
    ]
    charge = modular_charge([s.dim for s in simples], [s.twist for s in simples])
    return BClass("ising", charge, "psi", simples, nu=nu, name=f"ising[nu={nu}]")


def ising_fermion_ok(b: BClass) -> bool:
    """psi has twist -1 and anticentralizes sigma (monodromy θ_{σψ}/(θ_σ θ_ψ) = -1)."""
    psi, sigma = b.simple("psi"), b.simple("sigma")
    mono = mod1(b.simple(sigma.times_fermion).twist - sigma.twist - psi.twist)
    return psi.twist == Fraction(1, 2) and mono == Fraction(1, 2)


def _pointed_forms(orders: tuple):
    G0 = PreMetricGroup(orders, {})
    els = G0.elements()
    nonzero = [g for g in els if g != G0.zero]
    for vals in itertools.product(EIGHTHS, repeat=len(nonzero)):
        q = {G0.zero: Fraction(0)}
        q.update(zip(nonzero, vals))
        G = PreMetricGroup(orders, q)
        if G.is_quadratic() and G.is_nondegenerate():
            yield G


def pointed_classes(orders: tuple) -> list[BClass]:
    """Non-degenerate forms with a Lagrangian fermion, up to automorphism of (G, q, s)."""
    auts = automorphisms(orders)
    seen: set = set()
    out = []
    for G in _pointed_forms(orders):
        for s in G.fermions():
            key = None
            for phi in auts:
                img_q = tuple(sorted((phi[g], v) for g, v in G.q.items()))
                cand = (img_q, phi[s])
                key = cand if key is None or cand < key else key
            if key in seen:
                continue
            seen.add(key)
            out.append(pointed_class(G, s))
    out.sort(key=lambda b: b.charge)
    return out


_B_CACHE: list = []


def enumerate_B() -> list[BClass]:
    if not _B_CACHE:
        classes = pointed_classes((2, 2)) + pointed_classes((4,)) + [ising_class(nu) for nu in ISING_NUS]
        _B_CACHE.extend(sorted(classes, key=lambda b: b.charge))
    return list(_B_CACHE)


def unit_class() -> BClass:
    """Z(sVec): the toric-code form, charge 0."""
    return next(b for b in enumerate_B() if b.charge == 0)


def class_with_charge(charge: Fraction) -> BClass:
    c = mod8(Fraction(charge))
    for b in enumerate_B():
        if b.charge == c:
            return b
    raise KeyError(f"no class with charge {c}")


def b_compose(b1: BClass, b2: BClass) -> BClass:
    out = class_with_charge(b1.charge + b2.charge)
    expect = "pointed" if (b1.kind == "ising") == (b2.kind == "ising") else "ising"
    if out.kind != expect:
        raise ArithmeticError(f"{b1.name} * {b2.name} landed in {out.kind}")
    return out


def b_inverse(b: BClass) -> BClass:
    return class_with_charge(-b.charge)


def pointed_condense(b1: BClass, b2: BClass) -> GaussResult:
    """Gauss sum of the explicit quotient T'/<(s1, s2)> for two pointed classes."""
    G1, G2 = b1.group, b2.group
    s1, s2 = b1.fermion_element, b2.fermion_element
    T = [
        (g, h)
        for g in G1.elements()
        for h in G2.elements()
        if mod1(G1.b(s1, g) + G2.b(s2, h)) == 0
    ]
    reps = {}
    for g, h in T:
        partner = (G1.add(g, s1), G2.add(h, s2))
        key = min((g, h), partner)
        reps[key] = mod1(G1.q[g] + G2.q[h])
    for (g, h), v in reps.items():
        partner = (G1.add(g, s1), G2.add(h, s2))
        if mod1(G1.q[partner[0]] + G2.q[partner[1]]) != v:
            raise ArithmeticError("quadratic form does not descend to the quotient")
    return gauss_sum_values(list(reps.values()))


# ---------------------------------------------------------------------------
# condensation of inventories
# ---------------------------------------------------------------------------
def condense_invariants(inv: CategoryInventory, b: BClass) -> CategoryInventory:
    """Inventory of the condensation of inv ⊠ b along the diagonal fermion S ⊠ s."""
    recs = {r.label: r for r in inv.records}
    if "S" not in recs or any(r.grading_class is None for r in inv.records):
        raise ValueError("inventory needs an S label and a Z/2 grading")
    pairs = [
        (r.label, y.label)
        for r in inv.records
        for y in b.simples
        if (r.grading_class == 0 and y.parity == 0) or (r.grading_class == 1 and y.parity == 1)
    ]
    pair_set = set(pairs)

    def partner(p):
        x, y = p
        return (recs[x].s_tensor_label, b.simple(y).times_fermion)

    orbit_of: dict = {}
    orbits: list = []
    for p in pairs:
        if p in orbit_of:
            continue
        q = partner(p)
        if q == p:
            raise SplitUnsupported(f"{p[0]}⊠{p[1]} is fixed by tensoring with S⊠{b.fermion}")
        if q not in pair_set:
            raise ArithmeticError(f"involution leaves T': {p} -> {q}")
        orbit_of[p] = orbit_of[q] = len(orbits)
        orbits.append((p, q))

    unit_y = b.simples[0].label

    def orbit_label(k: int) -> str:
        p, q = orbits[k]
        for x, y in (p, q):
            if y == unit_y and x in ("1", "S"):
                return x
        x, y = min(p, q, key=lambda t: (inv.labels().index(t[0]), t[1]))
        return f"{x}⊠{y}"

    labels = [orbit_label(k) for k in range(len(orbits))]
    # order: orbits through (1, .) and (S, .) first, then by first member
    records = []
    for k, (p, _) in enumerate(orbits):
        x, y = p
        rx, by = recs[x], b.simple(y)
        dual = labels[orbit_of[(rx.dual_label, by.dual)]]
        st = labels[orbit_of[(rx.s_tensor_label, y)]]
        pim = rx.pim_fpdim * by.dim if rx.pim_fpdim is not None else None
        records.append(SimpleRecord(labels[k], rx.fpdim * by.dim, rx.projective, dual, st, rx.grading_class, pim))

    cartan = None
    if inv.cartan is not None:
        idx = {l: i for i, l in enumerate(inv.labels())}
        cartan = [[0] * len(orbits) for _ in orbits]
        for k, (p, _) in enumerate(orbits):
            x, y = p
            for z in inv.labels():
                n = inv.cartan[idx[z]][idx[x]]
                if n:
                    cartan[orbit_of[(z, y)]][k] += n
    integral = all(is_rational_integer(r.fpdim) for r in records)
    charge = None if inv.charge_offset is None else mod8(inv.charge_offset + b.charge)
    return CategoryInventory(f"{inv.name}⊠~{b.name}", records, integral, charge, cartan)


def formula_inventory(n: int) -> CategoryInventory:
    """Inventory of Z(sRep(W)), dim W = n, from closed formulas."""
    d = CycScalar.rational(2**n)
    pim_small = CycScalar.rational(4**n)
    proj = n == 0
    recs = [
        SimpleRecord("1", ONE, proj, "1", "S", 0, pim_small),
        SimpleRecord("S", ONE, proj, "S", "1", 0, pim_small),
        SimpleRecord("p", d, True, "p" if n % 2 == 0 else "q", "q", 1, d),
        SimpleRecord("q", d, True, "q" if n % 2 == 0 else "p", "p", 1, d),
    ]
    if n == 0:
        cartan = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    else:
        m = 2 ** (2 * n - 1)
        cartan = [[m, m, 0, 0], [m, m, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return CategoryInventory(f"Z(sRep({n}))", recs, True, Fraction(0), cartan)


def center_inventory(n: int, live: bool | None = None, seed: int | None = None) -> CategoryInventory:
    if live is None:
        live = n <= 2
    if not live:
        if not 0 <= n <= 4:
            raise ValueError("formula-level inventories cover 0 <= n <= 4")
        return formula_inventory(n)
    from .catalog import center_context
    from .repcat import inventory

    inv = inventory(center_context(n, seed))
    inv.name = f"Z(sRep({n}))"
    return inv


def torsor_table(n: int, live: bool | None = None, base: CategoryInventory | None = None) -> list[CategoryInventory]:
    base = base or center_inventory(n, live)
    return [condense_invariants(base, b) for b in enumerate_B()]
