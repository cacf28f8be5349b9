"""Exact arithmetic in the 2-power cyclotomic tower Q(zeta_{2^k}), k = 1..4.

An element at level ``k`` is stored as ``2^(k-1)`` rationals over the power
basis ``1, z, ..., z^(n-1)`` of ``Q(z)``, ``z = exp(2*pi*i / 2^k)``, reduced by
``z^n = -1``.  Level 1 is Q itself, level 2 is Q(i), level 3 is Q(zeta_8),
level 4 is Q(zeta_16).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

MAX_LEVEL = 4

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LevelTooLow(ValueError):
    pass


Number = Union[int, Fraction, "CycScalar"]


def _width(level: int) -> int:
    return 1 << (level - 1)


def _embed_coeffs(coeffs: tuple, src: int, dst: int) -> tuple:
    if src == dst:
        return coeffs
    step = 1 << (dst - src)
    out = [_ZERO] * _width(dst)
    for m, c in enumerate(coeffs):
        if c:
            out[m * step] = c
    return tuple(out)


class CycScalar:
    """Element of Q(zeta_{2^level}), immutable."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable = (0,), level: int | None = None):
        coeffs = tuple(c if type(c) is Fraction else Fraction(c) for c in coeffs)
        if level is None:
            n = len(coeffs)
            level = n.bit_length()
            if n != _width(level):
                raise ValueError(f"coefficient vector of length {n} is not a power of two")
        if not 1 <= level <= MAX_LEVEL:
            raise ValueError(f"level {level} outside 1..{MAX_LEVEL}")
        n = _width(level)
        if len(coeffs) < n:
            coeffs = coeffs + (_ZERO,) * (n - len(coeffs))
        elif len(coeffs) > n:
            raise ValueError(f"too many coefficients for level {level}")
        self.level = level
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, level: int) -> CycScalar:
        obj = object.__new__(cls)
        obj.level = level
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def rational(cls, value) -> CycScalar:
        return cls._raw((Fraction(value),), 1)

    @classmethod
    def root_of_unity(cls, num: int, den: int) -> CycScalar:
        """``exp(2*pi*i*num/den)`` for ``den`` dividing 16."""
        if den <= 0 or 16 % den:
            raise ValueError(f"denominator {den} does not divide 16")
        m = (num * (16 // den)) % 16
        # reduce to the smallest level containing the root
        level = MAX_LEVEL
        while level > 1 and m % 2 == 0:
            m //= 2
            level -= 1
        n = _width(level)
        m %= 2 * n
        coeffs = [_ZERO] * n
        if m < n:
            coeffs[m] = _ONE
        else:
            coeffs[m - n] = -_ONE
        return cls._raw(tuple(coeffs), level)

    @classmethod
    def coerce(cls, value: Number) -> CycScalar:
        if isinstance(value, CycScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._raw((Fraction(value),), 1)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycScalar")

    # -- basic predicates -----------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def minimal(self) -> CycScalar:
        """Same value at the lowest level that holds it."""
        coeffs, level = self.coeffs, self.level
        while level > 1 and not any(coeffs[1::2]):
            coeffs = coeffs[::2]
            level -= 1
        if level == self.level:
            return self
        return CycScalar._raw(coeffs, level)

    # -- arithmetic -----------------------------------------------------
    def embed(self, level: int) -> CycScalar:
        return embed_to_level(self, level)

    def __add__(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, (int, Fraction)):
                return CycScalar._raw((self.coeffs[0] + other,) + self.coeffs[1:], self.level)
            return NotImplemented
        if self.level == other.level:
            if self.level == 1:
                return CycScalar._raw((self.coeffs[0] + other.coeffs[0],), 1)
            return CycScalar._raw(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.level)
        level = max(self.level, other.level)
        a = _embed_coeffs(self.coeffs, self.level, level)
        b = _embed_coeffs(other.coeffs, other.level, level)
        return CycScalar._raw(tuple(x + y for x, y in zip(a, b)), level)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(tuple(-c for c in self.coeffs), self.level)

    def __sub__(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, (int, Fraction)):
                return CycScalar._raw((self.coeffs[0] - other,) + self.coeffs[1:], self.level)
            return NotImplemented
        if self.level == other.level == 1:
            return CycScalar._raw((self.coeffs[0] - other.coeffs[0],), 1)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, (int, Fraction)):
                return CycScalar._raw(tuple(c * other for c in self.coeffs), self.level)
            return NotImplemented
        return cyc_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = CycScalar.coerce(other) if not isinstance(other, CycScalar) else other
        if other.level == 1:
            d = other.coeffs[0]
            if not d:
                raise ZeroDivisionError("division by zero in CycScalar")
            return CycScalar._raw(tuple(c / d for c in self.coeffs), self.level)
        return cyc_mul(self, cyc_inv(other))

    def __rtruediv__(self, other):
        return cyc_mul(CycScalar.coerce(other), cyc_inv(self))

    def __pow__(self, k: int):
        if k < 0:
            return cyc_inv(self) ** (-k)
        result = CycScalar._raw((_ONE,), 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> CycScalar:
        return cyc_conj(self)

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, (int, Fraction)):
                return self.coeffs[0] == other and not any(self.coeffs[1:])
            return NotImplemented
        if self.level == other.level:
            return self.coeffs == other.coeffs
        level = max(self.level, other.level)
        return _embed_coeffs(self.coeffs, self.level, level) == _embed_coeffs(
            other.coeffs, other.level, level
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            m = self.minimal()
            self._hash = hash(m.coeffs[0]) if m.level == 1 else hash((m.level, m.coeffs))
        return self._hash

    # -- text form ------------------------------------------------------
    def __repr__(self):
        return f"CycScalar({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def cyc_mul(a: CycScalar, b: CycScalar) -> CycScalar:
    if a.level == b.level == 1:
        return CycScalar._raw((a.coeffs[0] * b.coeffs[0],), 1)
    if a.level == 1 or b.level == 1:
        if a.level == 1:
            a, b = b, a
        s = b.coeffs[0]
        return CycScalar._raw(tuple(c * s for c in a.coeffs), a.level)
    level = max(a.level, b.level)
    x = _embed_coeffs(a.coeffs, a.level, level)
    y = _embed_coeffs(b.coeffs, b.level, level)
    n = _width(level)
    out = [_ZERO] * n
    for i, ci in enumerate(x):
        if not ci:
            continue
        for j, cj in enumerate(y):
            if not cj:
                continue
            k = i + j
            if k < n:
                out[k] += ci * cj
            else:
                out[k - n] -= ci * cj
    return CycScalar._raw(tuple(out), level)


def _mult_matrix(a: CycScalar) -> list[list[Fraction]]:
    # column j holds the coefficients of a * z^j
    n = _width(a.level)
    cols = []
    for j in range(n):
        col = [_ZERO] * n
        for i, c in enumerate(a.coeffs):
            k = i + j
            if k < n:
                col[k] += c
            else:
                col[k - n] -= c
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _solve_small(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(m)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular multiplication matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def cyc_inv(a: CycScalar) -> CycScalar:
    """Inverse, by solving the linear system ``a * x = 1`` over Q."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero CycScalar")
    if a.level == 1:
        return CycScalar._raw((1 / a.coeffs[0],), 1)
    n = _width(a.level)
    rhs = [_ONE] + [_ZERO] * (n - 1)
    return CycScalar._raw(tuple(_solve_small(_mult_matrix(a), rhs)), a.level)


def cyc_conj(a: CycScalar) -> CycScalar:
    """Complex conjugation ``z -> z^-1 = -z^(n-1)``."""
    if a.level == 1:
        return a
    n = _width(a.level)
    out = [_ZERO] * n
    out[0] = a.coeffs[0]
    for m in range(1, n):
        out[n - m] = -a.coeffs[m]
    return CycScalar._raw(tuple(out), a.level)


def embed_to_level(a: CycScalar, level: int) -> CycScalar:
    if level < a.level:
        raise LevelTooLow(f"cannot embed level {a.level} element into level {level}")
    if level > MAX_LEVEL:
        raise ValueError(f"level {level} outside 1..{MAX_LEVEL}")
    return CycScalar._raw(_embed_coeffs(a.coeffs, a.level, level), level)


def common_level(values: Iterable[CycScalar]) -> int:
    return max((v.level for v in values), default=1)


# -- named constants ------------------------------------------------------
ZERO = CycScalar._raw((_ZERO,), 1)
ONE = CycScalar._raw((_ONE,), 1)
HALF = CycScalar.rational(Fraction(1, 2))
I = CycScalar.root_of_unity(1, 4)
ZETA8 = CycScalar.root_of_unity(1, 8)
ZETA16 = CycScalar.root_of_unity(1, 16)
SQRT2 = ZETA8 + ZETA8.conj()


def cyc(value) -> CycScalar:
    """Loose constructor: ints, Fractions, strings like ``"3/2"`` or text form."""
    if isinstance(value, CycScalar):
        return value
    if isinstance(value, str):
        return from_text(value)
    return CycScalar.coerce(value)


def sqrt_int(n: int) -> CycScalar | None:
    """Exact square root of a non-negative integer when it lies in the tower."""
    if n < 0:
        return None
    r = _isqrt_exact(n)
    if r is not None:
        return CycScalar.rational(r)
    if n % 2 == 0:
        r = _isqrt_exact(n // 2)
        if r is not None:
            return SQRT2 * r
    return None


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


# -- text form ------------------------------------------------------------
def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def to_text(a: CycScalar) -> str:
    """Canonical form ``"c0 + c1*z + c2*z^2 @ level k"``."""
    terms = []
    for m, c in enumerate(a.coeffs):
        if not c and not (m == 0 and not any(a.coeffs)):
            continue
        base = "" if m == 0 else ("z" if m == 1 else f"z^{m}")
        if m == 0:
            terms.append(_frac_text(c))
        else:
            terms.append(f"{_frac_text(c)}*{base}")
    if not terms:
        terms = ["0"]
    return " + ".join(terms) + f" @ level {a.level}"


_TERM = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*(?:\*\s*z(?:\^(\d+))?)?\s*$")


def from_text(text: str) -> CycScalar:
    body, sep, lvl = text.partition("@")
    level = 1
    if sep:
        m = re.fullmatch(r"\s*level\s+(\d+)\s*", lvl)
        if not m:
            raise ValueError(f"bad level suffix in {text!r}")
        level = int(m.group(1))
    coeffs = [_ZERO] * _width(level)
    for part in body.replace("- ", "+ -").split("+"):
        if not part.strip():
            continue
        m = _TERM.match(part)
        if not m:
            raise ValueError(f"bad term {part!r} in {text!r}")
        c = Fraction(m.group(1))
        if "z" in part:
            power = int(m.group(2)) if m.group(2) else 1
        else:
            power = 0
        if power >= len(coeffs):
            raise ValueError(f"power z^{power} too large for level {level}")
        coeffs[power] += c
    return CycScalar._raw(tuple(coeffs), level)


def pretty(a: CycScalar) -> str:
    """Human form for values in Z[sqrt2] (``"2*sqrt2"``); falls back to text form."""
    a = CycScalar.coerce(a)
    if a.is_rational():
        return _frac_text(a.to_fraction())
    level3 = embed_to_level(a, 3) if a.level <= 3 else None
    if level3 is not None:
        c0, c1, c2, c3 = level3.coeffs
        # a + b*sqrt2 = a + b*z - b*z^3
        if c2 == 0 and c1 == -c3:
            rat, irr = c0, c1
            s = "sqrt2" if irr == 1 else f"{_frac_text(irr)}*sqrt2"
            if rat == 0:
                return s
            return f"{_frac_text(rat)}+{s}" if irr > 0 else f"{_frac_text(rat)}{s}"
    m = a.minimal()
    terms = [(k, c) for k, c in enumerate(m.coeffs) if c]
    if len(terms) == 1:
        # monomial c*zeta_N^k
        k, c = terms[0]
        root = "i" if m.level == 2 else f"zeta{2 ** m.level}"
        base = root if k == 1 else f"{root}^{k}"
        return base if c == 1 else ("-" + base if c == -1 else f"{_frac_text(c)}*{base}")
    return to_text(a)
