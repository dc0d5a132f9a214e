"""Exact field arithmetic: arbitrary-precision rationals and small prime fields.

Field elements are plain values supporting +, -, *, / and ==:
`fractions.Fraction` over Q, `PrimeFieldElement` over F_p.  A field
object (`RationalField` or `PrimeField`) constructs, parses and formats
elements; every operation is exact, nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction

from ncfactor.errors import FormatError

MAX_PRIME = 1 << 31


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeFieldElement:
    """Residue mod p with exact arithmetic."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _check(self, other):
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError("mixed prime fields: F%d vs F%d" % (self.p, other.p))
            return other
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in F%d" % self.p)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse in F%d" % self.p)
        return PrimeFieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "PrimeFieldElement(%d, %d)" % (self.value, self.p)

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field Q; elements are `fractions.Fraction` (always canonical)."""

    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __call__(self, value, denom=None):
        if denom is not None:
            return Fraction(value, denom)
        return Fraction(value)

    def from_int(self, k):
        return Fraction(k)

    def parse(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError("bad rational literal %r" % text) from exc

    def format(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p for a prime p < 2^31."""

    def __init__(self, p):
        if p >= MAX_PRIME or not _is_prime(p):
            raise ValueError("prime field modulus must be a prime below 2^31, got %r" % p)
        self.p = p
        self.name = "F%d" % p

    @property
    def zero(self):
        return PrimeFieldElement(0, self.p)

    @property
    def one(self):
        return PrimeFieldElement(1, self.p)

    def __call__(self, value):
        return PrimeFieldElement(value, self.p)

    def from_int(self, k):
        return PrimeFieldElement(k, self.p)

    def parse(self, text):
        try:
            return PrimeFieldElement(int(text), self.p)
        except ValueError as exc:
            raise FormatError("bad F%d literal %r" % (self.p, text)) from exc

    def format(self, x):
        return str(x.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()
GF2 = PrimeField(2)
GF3 = PrimeField(3)


def field_spec(field):
    """Header token for a field: Q, F2, F3, or Fp:<p>."""
    if isinstance(field, RationalField):
        return "Q"
    if field.p in (2, 3):
        return "F%d" % field.p
    return "Fp:%d" % field.p


def parse_field(spec):
    """Inverse of field_spec."""
    if spec == "Q":
        return QQ
    if spec.startswith("Fp:"):
        try:
            return PrimeField(int(spec[3:]))
        except ValueError as exc:
            raise FormatError("bad field spec %r" % spec) from exc
    if spec.startswith("F"):
        try:
            return PrimeField(int(spec[1:]))
        except ValueError as exc:
            raise FormatError("bad field spec %r" % spec) from exc
    raise FormatError("bad field spec %r" % spec)
