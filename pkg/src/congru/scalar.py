"""Exact scalar arithmetic over the supported coefficient fields.

Three fields are available: the rationals, the Gaussian rationals
(rationals adjoined i), and prime fields GF(p) with p < 2**31.  A
field always comes paired with an involution, either the identity or,
for the Gaussian rationals only, coefficientwise conjugation
a + b*i -> a - b*i.

Scalars are plain immutable values: `Fraction` for the rationals,
`GaussianRational` for Q(i), `ModInt` for GF(p).  Everything here is
exact; no operation ever rounds.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, "GaussianRational", "ModInt"]

_RatLike = Union[int, Fraction]


class FieldKind(enum.Enum):
    RATIONAL = "rational"
    GAUSSIAN_RATIONAL = "gaussian-rational"
    PRIME_FIELD = "prime-field"


class Involution(enum.Enum):
    IDENTITY = "identity"
    CONJUGATION = "conjugate"


class GaussianRational:
    """An element a + b*i of Q(i) with exact rational coefficients."""

    __slots__ = ("re", "im")

    def __init__(self, re: _RatLike = 0, im: _RatLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        # matches hash of the plain rational when im == 0
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


def _as_gaussian(x) -> "GaussianRational":
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    return NotImplemented


class ModInt:
    """A residue in GF(p).  Both operands of any operation must carry
    the same modulus."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        object.__setattr__(self, "val", val % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("ModInt is immutable")

    def _lift(self, other) -> "ModInt":
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return ModInt(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.val + other.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.val - other.val, self.p)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.val * other.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.val == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModInt(self.val * pow(other.val, -1, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ModInt(-self.val, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == other % self.p
        if isinstance(other, ModInt):
            return self.p == other.p and self.val == other.val
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"ModInt({self.val}, {self.p})"

    def __str__(self):
        return str(self.val)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Which coefficient field is in force, and which involution."""

    kind: FieldKind
    involution: Involution = Involution.IDENTITY
    p: int | None = None

    def __post_init__(self):
        if self.involution is Involution.CONJUGATION:
            if self.kind is not FieldKind.GAUSSIAN_RATIONAL:
                raise ValueError(
                    "conjugation is only valid over the Gaussian rationals"
                )
        if self.kind is FieldKind.PRIME_FIELD:
            if self.p is None:
                raise ValueError("prime field requires a modulus")
            if self.p >= 2**31:
                raise ValueError("prime modulus must be below 2**31")
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        elif self.p is not None:
            raise ValueError("modulus is only meaningful for a prime field")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def gaussian(cls, conjugation: bool = True) -> "FieldSpec":
        inv = Involution.CONJUGATION if conjugation else Involution.IDENTITY
        return cls(FieldKind.GAUSSIAN_RATIONAL, inv)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, Involution.IDENTITY, p)

    # -- element construction ------------------------------------------------

    def zero(self) -> Scalar:
        return self.from_int(0)

    def one(self) -> Scalar:
        return self.from_int(1)

    def imaginary_unit(self) -> Scalar:
        if self.kind is not FieldKind.GAUSSIAN_RATIONAL:
            raise ValueError("i exists only in the Gaussian rationals")
        return GaussianRational(0, 1)

    def from_int(self, n: int) -> Scalar:
        if self.kind is FieldKind.RATIONAL:
            return Fraction(n)
        if self.kind is FieldKind.GAUSSIAN_RATIONAL:
            return GaussianRational(n, 0)
        return ModInt(n, self.p)

    def coerce(self, x) -> Scalar:
        """Bring x into this field; raises ValueError when impossible."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        if self.kind is FieldKind.RATIONAL:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
        elif self.kind is FieldKind.GAUSSIAN_RATIONAL:
            if isinstance(x, GaussianRational):
                return x
            if isinstance(x, (int, Fraction)):
                return GaussianRational(x, 0)
        else:
            if isinstance(x, ModInt):
                if x.p != self.p:
                    raise ValueError("mixed moduli")
                return x
            if isinstance(x, int):
                return ModInt(x, self.p)
            if isinstance(x, Fraction):
                # n/d maps to n * d^-1 mod p
                if x.denominator % self.p == 0:
                    raise ValueError("denominator divisible by the modulus")
                return ModInt(x.numerator, self.p) / ModInt(x.denominator, self.p)
        raise ValueError(f"cannot coerce {x!r} into {self}")

    def belongs(self, x) -> bool:
        if self.kind is FieldKind.RATIONAL:
            return isinstance(x, Fraction)
        if self.kind is FieldKind.GAUSSIAN_RATIONAL:
            return isinstance(x, GaussianRational)
        return isinstance(x, ModInt) and x.p == self.p

    # -- involution ----------------------------------------------------------

    def conjugate(self, a: Scalar) -> Scalar:
        if self.involution is Involution.IDENTITY:
            return a
        return a.conjugate()

    # -- text grammar ----------------------------------------------------------
    # rationals: p/q or p; Gaussian: a+b*i / a-b*i (with liberal parsing of
    # i, -i, b*i, bi); prime field: a decimal residue.

    def parse_scalar(self, text: str) -> Scalar:
        s = text.strip()
        if not s:
            raise ValueError("empty scalar")
        try:
            if self.kind is FieldKind.RATIONAL:
                return Fraction(s)
            if self.kind is FieldKind.PRIME_FIELD:
                return ModInt(int(s, 10), self.p)
            return _parse_gaussian(s)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"invalid scalar {text!r}") from None

    def render_scalar(self, a: Scalar) -> str:
        if self.kind is FieldKind.GAUSSIAN_RATIONAL:
            g: GaussianRational = a
            if g.im == 0:
                return str(g.re)
            sign = "+" if g.im > 0 else "-"
            coeff = "" if abs(g.im) == 1 else f"{abs(g.im)}*"
            if g.re == 0:
                return f"{'-' if g.im < 0 else ''}{coeff}i"
            return f"{g.re}{sign}{coeff}i"
        return str(a)

    def __str__(self):
        if self.kind is FieldKind.PRIME_FIELD:
            return f"GF({self.p})"
        name = "Q" if self.kind is FieldKind.RATIONAL else "Q(i)"
        if self.involution is Involution.CONJUGATION:
            return name + " with conjugation"
        return name


_GAUSSIAN_RE = re.compile(
    r"^(?:"
    r"(?P<real>[+-]?\d+(?:/\d+)?)"
    r"|(?P<s0>[+-]?)(?:(?P<c0>\d+(?:/\d+)?)\*?)?i"
    r"|(?P<real1>[+-]?\d+(?:/\d+)?)(?P<s1>[+-])(?:(?P<c1>\d+(?:/\d+)?)\*?)?i"
    r")$"
)


def _parse_gaussian(s: str) -> GaussianRational:
    m = _GAUSSIAN_RE.match(s)
    if m is None:
        raise ValueError(s)
    if m.group("real") is not None:
        return GaussianRational(Fraction(m.group("real")), 0)
    if m.group("real1") is not None:
        re_part = Fraction(m.group("real1"))
        coef = Fraction(m.group("c1")) if m.group("c1") else Fraction(1)
        if m.group("s1") == "-":
            coef = -coef
        return GaussianRational(re_part, coef)
    coef = Fraction(m.group("c0")) if m.group("c0") else Fraction(1)
    if m.group("s0") == "-":
        coef = -coef
    return GaussianRational(0, coef)


# -- free-function arithmetic -------------------------------------------------


def conjugate(a: Scalar, spec: FieldSpec) -> Scalar:
    """The active involution applied to a."""
    return spec.conjugate(a)


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def invert(a: Scalar) -> Scalar:
    """Multiplicative inverse; ZeroDivisionError on zero."""
    if not a:
        raise ZeroDivisionError("inverting zero")
    if isinstance(a, Fraction):
        return 1 / a
    if isinstance(a, GaussianRational):
        return GaussianRational(1, 0) / a
    return ModInt(1, a.p) / a


def is_zero(a: Scalar) -> bool:
    return not a
