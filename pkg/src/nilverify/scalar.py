"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(d-1) with d = phi(N),
as a tuple of integer numerators over one positive common denominator.
The default field is N = 12, which contains both zeta_6 = z^2 and i = z^3.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import mpmath

from .errors import DomainError, PreconditionError

Number = Union[int, Fraction, "CycloScalar"]

DEFAULT_ORDER = 12


def _poly_divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # coefficient lists are low-degree first; den is monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j, b in enumerate(den):
                num[i - dd + j] -= c * b
    rem = num[:dd] if dd else [0]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_monic(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


class CyclotomicField:
    """The field Q(zeta_N) with its power-basis reduction tables.

    Instances are cached per N, so identity comparison is field equality.
    """

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, order: int = DEFAULT_ORDER):
        inst = cls._instances.get(order)
        if inst is None:
            inst = super().__new__(cls)
            inst._setup(order)
            cls._instances[order] = inst
        return inst

    def _setup(self, order: int) -> None:
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = d = len(self.modulus) - 1
        # z^j reduced into the power basis, for 0 <= j < 2d - 1 and j < N
        self._powers: list[tuple[int, ...]] = []
        for j in range(max(2 * d - 1, order)):
            vec = [0] * (j + 1)
            vec[j] = 1
            _, rem = _poly_divmod_monic(vec, list(self.modulus)) if j >= d else (None, vec)
            rem = list(rem) + [0] * (d - len(rem))
            self._powers.append(tuple(rem[:d]))
        # conjugation sends z^j to z^(N - j)
        self._conj = [self._powers[(-j) % order] for j in range(d)]

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __reduce__(self):
        return (CyclotomicField, (self.order,))

    def zero(self) -> "CycloScalar":
        return CycloScalar(self, (0,) * self.degree, 1)

    def one(self) -> "CycloScalar":
        return self(1)

    def __call__(self, value: Number) -> "CycloScalar":
        if isinstance(value, CycloScalar):
            if value.field is not self:
                raise DomainError(f"cannot coerce element of {value.field} into {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return CycloScalar(self, (value,) + (0,) * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return CycloScalar(self, (value.numerator,) + (0,) * (self.degree - 1), value.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def from_coefficients(self, coeffs: Iterable[Number]) -> "CycloScalar":
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(fr)}")
        den = math.lcm(*(c.denominator for c in fr))
        return CycloScalar(self, tuple(c.numerator * (den // c.denominator) for c in fr), den)

    def zeta(self, k: int = 1) -> "CycloScalar":
        """The root of unity z^k, z = exp(2 pi i / N)."""
        return CycloScalar(self, self._powers[k % self.order], 1)

    def root_of_unity(self, n: int, k: int = 1) -> "CycloScalar":
        """exp(2 pi i k / n); requires n | N."""
        if self.order % n:
            raise DomainError(f"Q(zeta_{self.order}) does not contain the {n}-th roots of unity")
        return self.zeta(k * (self.order // n))

    @property
    def i(self) -> "CycloScalar":
        return self.root_of_unity(4)

    def root_of_unity_exponent(self, a: "CycloScalar") -> int | None:
        """Return k with a == z^k, or None if a is not an N-th root of unity."""
        for k in range(self.order):
            if self._powers[k] == a.num and a.den == 1:
                return k
        return None


class CycloScalar:
    """An immutable element of Q(zeta_N) in canonical power-basis form."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num: tuple[int, ...], den: int):
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = math.gcd(den, *num)
        if g > 1:
            num, den = tuple(c // g for c in num), den // g
        elif not any(num):
            den = 1
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def _coerce(self, other) -> "CycloScalar":
        if isinstance(other, CycloScalar):
            if other.field is not self.field:
                raise DomainError(f"mixed fields {self.field} and {other.field}")
            return other
        return self.field(other)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, CycloScalar):
            return NotImplemented
        return self.field is other.field and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.order, self.num, self.den))
        return self._hash

    def __add__(self, other) -> "CycloScalar":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        if b.den == self.den:
            return CycloScalar(self.field, tuple(x + y for x, y in zip(self.num, b.num)), self.den)
        return CycloScalar(
            self.field,
            tuple(x * b.den + y * self.den for x, y in zip(self.num, b.num)),
            self.den * b.den,
        )

    __radd__ = __add__

    def __neg__(self) -> "CycloScalar":
        return CycloScalar(self.field, tuple(-x for x in self.num), self.den)

    def __sub__(self, other) -> "CycloScalar":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other) -> "CycloScalar":
        return (-self) + other

    def __mul__(self, other) -> "CycloScalar":
        if isinstance(other, int):
            return CycloScalar(self.field, tuple(x * other for x in self.num), self.den)
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self.field.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        powers = self.field._powers
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                row = powers[j]
                for t in range(d):
                    out[t] += c * row[t]
        return CycloScalar(self.field, tuple(out), self.den * b.den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycloScalar":
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> "CycloScalar":
        if self.is_zero():
            raise DomainError("division by zero in Q(zeta_N)")
        if self.is_rational():
            return CycloScalar(self.field, (self.den,) + (0,) * (self.field.degree - 1), self.num[0])
        # solve self * x = 1 via the multiplication matrix
        d = self.field.degree
        cols = []
        for j in range(d):
            v = [0] * d
            v[j] = 1
            cols.append((self * CycloScalar(self.field, tuple(v), 1)).coefficients)
        mat = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            p = next(r for r in range(c, d) if mat[r][c])
            mat[c], mat[p] = mat[p], mat[c]
            pv = mat[c][c]
            mat[c] = [x / pv for x in mat[c]]
            for r in range(d):
                if r != c and mat[r][c]:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return self.field.from_coefficients(row[d] for row in mat)

    def __truediv__(self, other) -> "CycloScalar":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * b.inv()

    def __rtruediv__(self, other) -> "CycloScalar":
        return self.field(other) * self.inv()

    def conj(self) -> "CycloScalar":
        d = self.field.degree
        out = [0] * d
        for j, c in enumerate(self.num):
            if c:
                row = self.field._conj[j]
                for t in range(d):
                    out[t] += c * row[t]
        return CycloScalar(self.field, tuple(out), self.den)

    def norm(self) -> "CycloScalar":
        """|a|^2 = a * conj(a), a totally real element."""
        return self * self.conj()

    def is_real(self) -> bool:
        return self.conj() == self

    def __complex__(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.field.order), math.sin(2 * math.pi / self.field.order))
        return sum(c * z**j for j, c in enumerate(self.num)) / self.den

    def __repr__(self) -> str:
        return f"CycloScalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


def sign_of_real(a: CycloScalar) -> int:
    """Exact sign (-1, 0, 1) of a real element under z = exp(2 pi i / N)."""
    if not a.is_real():
        raise PreconditionError(f"sign_of_real needs a real element, got {a}")
    if a.is_zero():
        return 0
    if a.field.order == 12:
        # real part of c0 + c1 z + c2 z^2 + c3 z^3 is (c0 + c2/2) + (c1/2) sqrt(3)
        c0, c1, c2, _ = a.coefficients
        return _sign_p_plus_q_sqrt(c0 + c2 / 2, c1 / 2, 3)
    return _sign_by_intervals(a)


def _sign_p_plus_q_sqrt(p: Fraction, q: Fraction, d: int) -> int:
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare p^2 with d q^2
    return sp if p * p > d * q * q else sq


def _sign_by_intervals(a: CycloScalar) -> int:
    # a != 0 here, so a tight enough enclosure excludes zero
    iv = mpmath.iv
    saved = iv.prec
    prec = 53
    try:
        while True:
            iv.prec = prec
            angle = 2 * iv.pi / a.field.order
            val = iv.mpf(0)
            for j, c in enumerate(a.num):
                if c:
                    val += c * iv.cos(j * angle)
            val /= a.den
            if val.a > 0:
                return 1
            if val.b < 0:
                return -1
            prec *= 2
    finally:
        iv.prec = saved


def multiplicative_order(a: CycloScalar) -> int | None:
    """Order of a as a root of unity, or None."""
    k = a.field.root_of_unity_exponent(a)
    if k is None:
        return None
    return a.field.order // math.gcd(k, a.field.order)


def format_scalar(a: CycloScalar) -> str:
    """Render in the config token syntax, e.g. ``1/2 - z^3``."""
    parts: list[str] = []
    for j, c in enumerate(a.coefficients):
        if not c:
            continue
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            mono = "z" if j == 1 else f"z^{j}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def parse_scalar(text: str, field: CyclotomicField | None = None) -> CycloScalar:
    """Parse a scalar token expression such as ``-z^9`` or ``(1 + z6)/3``."""
    from .exterior import parse_form

    form = parse_form(text, field=field or CyclotomicField())
    return form.scalar_part()
