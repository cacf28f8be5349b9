"""Exact linear algebra over :class:`~hopfcat.scalar.CycScalar`.

Matrices are stored as sparse rows (``dict`` column -> nonzero scalar).  Small
dense eliminations go through Bareiss fraction-free elimination; large sparse
systems (intertwiner equations) use Gauss-Jordan with a fill-avoiding pivot
choice.  Eigenvalues are never solved for: they are searched for in a finite
candidate set of dyadic rationals times 16th roots of unity.
"""
from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, CycScalar, common_level

SparseVec = dict  # column -> CycScalar


class UnsplittableField(ArithmeticError):
    """An operator has eigenvalues outside the searched candidate set."""


class _NoSolution:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NoSolution"

    def __bool__(self):
        return False


NoSolution = _NoSolution()


def _c(x) -> CycScalar:
    return x if isinstance(x, CycScalar) else CycScalar.coerce(x)


class ExactMatrix:
    """Immutable-by-convention sparse matrix with CycScalar entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[SparseVec] | None = None):
        self.rows = rows
        self.cols = cols
        self.data = data if data is not None else [{} for _ in range(rows)]

    # -- construction ---------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def scalar(cls, n: int, value) -> ExactMatrix:
        value = _c(value)
        if not value:
            return cls(n, n)
        return cls(n, n, [{i: value} for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        data = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            data.append({j: _c(v) for j, v in enumerate(r) if v})
        return cls(nrows, ncols, data)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple]) -> ExactMatrix:
        data = [{} for _ in range(rows)]
        for i, j, v in triplets:
            v = _c(v)
            s = data[i].get(j, ZERO) + v
            if s:
                data[i][j] = s
            else:
                data[i].pop(j, None)
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> ExactMatrix:
        ncols = len(columns)
        if nrows is None:
            nrows = len(columns[0]) if ncols else 0
        data = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) else enumerate(col)
            for i, v in items:
                if v:
                    data[i][j] = _c(v)
        return cls(nrows, ncols, data)

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.data[i].get(j, ZERO)

    def to_rows(self) -> list[list[CycScalar]]:
        return [[row.get(j, ZERO) for j in range(self.cols)] for row in self.data]

    def triplets(self):
        for i, row in enumerate(self.data):
            for j in sorted(row):
                yield i, j, row[j]

    def column(self, j: int) -> list[CycScalar]:
        return [row.get(j, ZERO) for row in self.data]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def nnz(self) -> int:
        return sum(len(r) for r in self.data)

    def level(self) -> int:
        return common_level(v for row in self.data for v in row.values())

    # -- algebra --------------------------------------------------------
    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same(other)
        data = []
        for a, b in zip(self.data, other.data):
            r = dict(a)
            for j, v in b.items():
                s = r.get(j, ZERO) + v
                if s:
                    r[j] = s
                else:
                    r.pop(j, None)
            data.append(r)
        return ExactMatrix(self.rows, self.cols, data)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(self.rows, self.cols, [{j: -v for j, v in r.items()} for r in self.data])

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, c) -> ExactMatrix:
        c = _c(c)
        if not c:
            return ExactMatrix(self.rows, self.cols)
        return ExactMatrix(self.rows, self.cols, [{j: v * c for j, v in r.items()} for r in self.data])

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            odata = other.data
            data = []
            for r in self.data:
                acc: dict = {}
                for k, a in r.items():
                    for j, b in odata[k].items():
                        acc[j] = acc.get(j, ZERO) + a * b
                data.append({j: v for j, v in acc.items() if v})
            return ExactMatrix(self.rows, other.cols, data)
        return self.apply(other)

    def apply(self, vec):
        """Matrix times vector; dense list in, dense list out (sparse dict in, dict out)."""
        if isinstance(vec, dict):
            out = {}
            for i, r in enumerate(self.data):
                s = ZERO
                for j, a in r.items():
                    b = vec.get(j)
                    if b is not None:
                        s = s + a * b
                if s:
                    out[i] = s
            return out
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self.data:
            s = ZERO
            for j, a in r.items():
                b = vec[j]
                if b:
                    s = s + a * b
            out.append(s)
        return out

    def transpose(self) -> ExactMatrix:
        data = [{} for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for j, v in r.items():
                data[j][i] = v
        return ExactMatrix(self.cols, self.rows, data)

    T = property(transpose)

    def kron(self, other: ExactMatrix) -> ExactMatrix:
        """Kronecker product; index (i, k) -> i * other.rows + k."""
        rows, cols = self.rows * other.rows, self.cols * other.cols
        data = [{} for _ in range(rows)]
        oc = other.cols
        for i, ra in enumerate(self.data):
            if not ra:
                continue
            for k, rb in enumerate(other.data):
                if not rb:
                    continue
                out = data[i * other.rows + k]
                for j, a in ra.items():
                    base = j * oc
                    for l, b in rb.items():
                        out[base + l] = a * b
        return ExactMatrix(rows, cols, data)

    def __pow__(self, k: int) -> ExactMatrix:
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> CycScalar:
        s = ZERO
        for i, r in enumerate(self.data):
            v = r.get(i)
            if v is not None:
                s = s + v
        return s

    # -- predicates -----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        for a, b in zip(self.data, other.data):
            if a.keys() != b.keys():
                return False
            for j, v in a.items():
                if v != b[j]:
                    return False
        return True

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_scalar(self, value) -> bool:
        value = _c(value)
        if self.rows != self.cols:
            return False
        for i, r in enumerate(self.data):
            if value:
                if len(r) != 1 or r.get(i) != value:
                    return False
            elif r:
                return False
        return True

    def is_identity(self) -> bool:
        return self.is_scalar(ONE)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def block_diagonal(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = []
    coff = 0
    for b in blocks:
        for r in b.data:
            data.append({coff + j: v for j, v in r.items()})
        coff += b.cols
    return ExactMatrix(rows, cols, data)


# ---------------------------------------------------------------------------
# sparse Gauss-Jordan
# ---------------------------------------------------------------------------
class Echelon:
    """Incremental reduced row echelon form of a stream of sparse rows.

    Pivot rows are kept fully reduced: each holds a 1 at its own pivot column
    and no entry at any other pivot column.
    """

    def __init__(self, ncols: int, pivot_limit: int | None = None):
        self.ncols = ncols
        self.pivot_limit = ncols if pivot_limit is None else pivot_limit
        self.piv: dict[int, dict] = {}
        self.occ: dict[int, set] = defaultdict(set)  # free column -> pivots whose row touches it

    @property
    def rank(self) -> int:
        return len(self.piv)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        piv = self.piv
        for c in [c for c in row if c in piv]:
            f = row.pop(c, None)
            if f is None:
                continue
            for k, v in piv[c].items():
                if k == c:
                    continue
                s = row.get(k, ZERO) - f * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it raised the rank."""
        row = self.reduce(row)
        if not row:
            return False
        occ = self.occ
        eligible = [c for c in row if c < self.pivot_limit]
        if not eligible:
            raise ValueError("row has no entry in the pivot-eligible columns")
        pc = min(eligible, key=lambda c: (len(occ.get(c, ())), c))
        inv = 1 / row[pc]
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
        row[pc] = ONE
        for p in list(occ.get(pc, ())):
            r = self.piv[p]
            f = r.pop(pc)
            for k, v in row.items():
                if k == pc:
                    continue
                s = r.get(k, ZERO) - f * v
                if s:
                    if k not in r:
                        occ[k].add(p)
                    r[k] = s
                else:
                    if k in r:
                        del r[k]
                        occ[k].discard(p)
        occ.pop(pc, None)
        self.piv[pc] = row
        for k in row:
            if k != pc:
                occ[k].add(pc)
        return True

    def kernel(self) -> list[dict]:
        vecs = []
        for f in range(self.ncols):
            if f in self.piv:
                continue
            if f >= self.pivot_limit:
                continue
            v = {f: ONE}
            for p in self.occ.get(f, ()):
                v[p] = -self.piv[p][f]
            vecs.append(v)
        return vecs


def kernel_sparse(rows: Iterable[dict], ncols: int) -> list[dict]:
    ech = Echelon(ncols)
    for r in rows:
        if r:
            ech.add(r)
    return ech.kernel()


def _dense(v: dict, n: int) -> list[CycScalar]:
    out = [ZERO] * n
    for k, x in v.items():
        out[k] = x
    return out


def _sparse(v) -> dict:
    if isinstance(v, dict):
        return {k: _c(x) for k, x in v.items() if x}
    return {k: _c(x) for k, x in enumerate(v) if x}


# ---------------------------------------------------------------------------
# dense Bareiss elimination
# ---------------------------------------------------------------------------
def bareiss_forward(rows: Sequence[Sequence]) -> tuple[list[list[CycScalar]], list[int], int]:
    """Fraction-free forward elimination.

    Returns the echelon matrix, pivot columns, and the number of row swaps.
    Each division by the previous pivot is exact in the ring generated by
    the entries.
    """
    a = [[_c(x) for x in r] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = ONE
    r = 0
    swaps = 0
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        akk = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            ri = a[i]
            rr = a[r]
            for j in range(c + 1, ncols):
                ri[j] = (akk * ri[j] - aic * rr[j]) / prev
            ri[c] = ZERO
        prev = akk
        pivots.append(c)
        r += 1
    return a, pivots, swaps


def _back_substitute(a: list[list[CycScalar]], pivots: list[int]) -> list[list[CycScalar]]:
    rank = len(pivots)
    out = [row[:] for row in a[:rank]]
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        inv = 1 / out[r][c]
        out[r] = [x * inv for x in out[r]]
        for i in range(r):
            f = out[i][c]
            if f:
                out[i] = [x - f * y for x, y in zip(out[i], out[r])]
    return out


def bareiss_rref(rows: Sequence[Sequence]) -> tuple[list[list[CycScalar]], list[int]]:
    a, pivots, _ = bareiss_forward(rows)
    return _back_substitute(a, pivots), pivots


def naive_rref(rows: Sequence[Sequence]) -> tuple[list[list[CycScalar]], list[int]]:
    """Textbook Gauss-Jordan; the reference route for cross-checks."""
    a = [[_c(x) for x in r] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def determinant(m: ExactMatrix) -> CycScalar:
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    if m.rows == 0:
        return ONE
    a, pivots, swaps = bareiss_forward(m.to_rows())
    if len(pivots) < m.rows:
        return ZERO
    d = a[-1][-1]
    return -d if swaps % 2 else d


_DENSE_LIMIT = 24


def _use_dense(m: ExactMatrix) -> bool:
    return m.cols <= _DENSE_LIMIT and m.rows <= 2 * _DENSE_LIMIT


def rank(m: ExactMatrix) -> int:
    if _use_dense(m):
        return len(bareiss_forward(m.to_rows())[1]) if m.rows else 0
    ech = Echelon(m.cols)
    for r in m.data:
        if r:
            ech.add(r)
    return ech.rank


def kernel_basis(m: ExactMatrix) -> list[list[CycScalar]]:
    """Exact basis of the right kernel; ``len == cols - rank``."""
    if _use_dense(m) and m.rows:
        rref, pivots = bareiss_rref(m.to_rows())
        pivset = set(pivots)
        basis = []
        for f in range(m.cols):
            if f in pivset:
                continue
            v = [ZERO] * m.cols
            v[f] = ONE
            for r, p in enumerate(pivots):
                v[p] = -rref[r][f]
            basis.append(v)
        return basis
    return [_dense(v, m.cols) for v in kernel_sparse(m.data, m.cols)]


def solve_linear(m: ExactMatrix, b: Sequence) -> list[CycScalar] | _NoSolution:
    """Some exact solution of ``m x = b``, or ``NoSolution``."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    n = m.cols
    ech = Echelon(n + 1, pivot_limit=n)
    for r, bi in zip(m.data, b):
        row = dict(r)
        if bi:
            row[n] = _c(bi)
        if ech.reduce(row).keys() - {n}:
            ech.add(row)
        elif ech.reduce(row):
            return NoSolution
    x = [ZERO] * n
    for p, row in ech.piv.items():
        x[p] = row.get(n, ZERO)
    return x


def inverse(m: ExactMatrix) -> ExactMatrix | None:
    """Exact inverse, or None when singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    ech = Echelon(2 * n, pivot_limit=n)
    for i, r in enumerate(m.data):
        row = dict(r)
        row[n + i] = ONE
        if not any(k < n for k in ech.reduce(row)):
            return None
        ech.add(row)
    data = []
    for i in range(n):
        row = ech.piv[i]
        data.append({k - n: v for k, v in row.items() if k >= n})
    return ExactMatrix(n, n, data)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------
class Subspace:
    """Span of vectors in K^n held in reduced echelon form.

    Coordinates of a member are read off at the pivot columns.
    """

    def __init__(self, vectors: Iterable, n: int):
        self.n = n
        ech = Echelon(n)
        for v in vectors:
            sv = _sparse(v)
            if sv:
                ech.add(sv)
        self.pivots = sorted(ech.piv)
        self.rows = [ech.piv[p] for p in self.pivots]
        self._ech = ech

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[list[CycScalar]]:
        return [_dense(r, self.n) for r in self.rows]

    def residual(self, v) -> dict:
        return self._ech.reduce(_sparse(v))

    def contains(self, v) -> bool:
        return not self.residual(v)

    def coords(self, v) -> list[CycScalar]:
        sv = v if isinstance(v, dict) else _sparse(v)
        if self.residual(sv):
            raise ValueError("vector not in subspace")
        return [sv.get(p, ZERO) for p in self.pivots]

    def complement_columns(self) -> list[int]:
        ps = set(self.pivots)
        return [c for c in range(self.n) if c not in ps]


# ---------------------------------------------------------------------------
# eigenvalue search
# ---------------------------------------------------------------------------
@dataclass
class SplitResult:
    spaces: list[tuple[CycScalar, list[list[CycScalar]]]] = field(default_factory=list)
    complete: bool = False

    @property
    def flag(self) -> str:
        return "complete" if self.complete else "partial"


def generalized_eigenspace(op: ExactMatrix, lam) -> list[list[CycScalar]]:
    n = op.rows
    a = op - ExactMatrix.scalar(n, lam)
    power = a
    prev_dim = -1
    basis: list = []
    for _ in range(n):
        basis = kernel_basis(power)
        if len(basis) == prev_dim or len(basis) == n or not basis:
            break
        prev_dim = len(basis)
        power = power @ a
    return basis


def split_invariant_subspaces(op: ExactMatrix, candidates: Iterable) -> SplitResult:
    if op.rows != op.cols:
        raise ValueError("operator must be square")
    result = SplitResult()
    seen = []
    total = 0
    for lam in candidates:
        lam = _c(lam)
        if any(lam == s for s in seen):
            continue
        seen.append(lam)
        basis = generalized_eigenspace(op, lam)
        if basis:
            result.spaces.append((lam, basis))
            total += len(basis)
    result.complete = total == op.rows
    return result


def _abs_bound(x: CycScalar) -> Fraction:
    return sum((abs(c) for c in x.coeffs), Fraction(0))


def norm_bound(op: ExactMatrix) -> int:
    """Integer upper bound on |eigenvalue| (max absolute row sum)."""
    best = Fraction(0)
    for r in op.data:
        s = sum((_abs_bound(v) for v in r.values()), Fraction(0))
        best = max(best, s)
    return math.ceil(best)


def krylov_minpoly(op: ExactMatrix, v: Sequence) -> list[CycScalar]:
    """Monic minimal polynomial of ``v`` under ``op``, low degree first."""
    n = op.rows
    ech = Echelon(n + n + 1, pivot_limit=n)
    # augmented columns n.. track the combination of powers
    cur = _sparse(v)
    for k in range(n + 1):
        row = dict(cur)
        row[n + k] = ONE
        red = ech.reduce(row)
        if not any(c < n for c in red):
            # relation among powers
            top = max(c for c in red)
            deg = top - n
            lead = red[top]
            return [red.get(n + j, ZERO) / lead for j in range(deg + 1)]
        ech.add(red)
        cur = op.apply(cur)
    raise AssertionError("Krylov sequence failed to terminate")


def _poly_eval(coeffs: Sequence, x) -> CycScalar:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _positive_dyadic_roots(poly: Sequence[Fraction], bound: int, max_exp: int = 6) -> list[Fraction]:
    """Positive roots ``p / 2^e`` (e <= max_exp) of a rational polynomial."""
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    while poly and poly[0] == 0:
        poly.pop(0)
    if len(poly) <= 1:
        return []
    den = 1
    for c in poly:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in poly]
    a0, an = abs(ints[0]), abs(ints[-1])
    e_max = 0
    while e_max < max_exp and an % (1 << (e_max + 1)) == 0:
        e_max += 1
    limit = min(a0, bound << e_max)
    deg = len(ints) - 1
    roots = set()
    for p in range(1, limit + 1):
        if a0 % p:
            continue
        for e in range(e_max + 1):
            if e and p % 2 == 0:
                continue
            q = 1 << e
            if Fraction(p, q) > bound:
                continue
            if sum(c * p**i * q ** (deg - i) for i, c in enumerate(ints)) == 0:
                roots.add(Fraction(p, q))
    return sorted(roots)


def _roots_in_candidate_set(poly: Sequence[CycScalar], bound: int) -> list[CycScalar]:
    found = []
    if not poly[0]:
        found.append(ZERO)
    level = max(common_level(poly), 4)
    for m in range(16):
        mu = CycScalar.root_of_unity(m, 16)
        g = [c * mu**k for k, c in enumerate(poly)]
        g = [c.embed(level) for c in g]
        comps = [[c.coeffs[j] for c in g] for j in range(len(g[0].coeffs))]
        comp = next((c for c in comps if any(c)), None)
        if comp is None:
            continue
        for d in _positive_dyadic_roots(comp, bound):
            lam = mu * d
            if not _poly_eval(poly, lam):
                found.append(lam.minimal())
    return found


def candidate_roots(op: ExactMatrix, seed: int = 0, tries: int = 2) -> list[CycScalar]:
    """Eigenvalues of ``op`` inside {dyadic} x {16th roots of unity} U {0}.

    Roots are read from Krylov minimal polynomials of seeded random vectors
    and confirmed by a nonzero kernel of ``op - lambda``.
    """
    if op.rows != op.cols:
        raise ValueError("operator must be square")
    n = op.rows
    if n == 0:
        return []
    bound = max(norm_bound(op), 1)
    rng = random.Random(seed)
    found: list[CycScalar] = []
    for _ in range(tries):
        v = [CycScalar.rational(rng.randint(-9, 9)) for _ in range(n)]
        if not any(v):
            v[0] = ONE
        for lam in _roots_in_candidate_set(krylov_minpoly(op, v), bound):
            if not any(lam == f for f in found):
                found.append(lam)
    confirmed = []
    for lam in found:
        if rank(op - ExactMatrix.scalar(n, lam)) < n:
            confirmed.append(lam)
    return sorted(confirmed, key=lambda x: (x.level, [(c.numerator, c.denominator) for c in x.coeffs]))
