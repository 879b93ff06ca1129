"""Exact base fields: arbitrary-precision rationals and prime fields F_p.

Scalars are stored as raw values (``fractions.Fraction`` over the rationals,
canonical residues in ``[0, p)`` over a prime field); a ``FieldSpec`` carries
the arithmetic.  ``Scalar`` wraps a raw value together with its field and is
the type used at API boundaries (parsing, serialization, witnesses).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FieldMismatch, ParseError

Value = Union[Fraction, int]

RATIONAL = "rational"
PRIME = "prime"

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")
_INT_RE = re.compile(r"^[+-]?\d+$")

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p: int) -> bool:
    # deterministic Miller-Rabin; the base set is exact below 3.3e24
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Base field descriptor: the rationals, or F_p for a machine-word prime p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == PRIME:
            if self.p is None or self.p.bit_length() > 62 or not _is_prime(self.p):
                raise ValueError(f"modulus must be a machine-word prime, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    def __repr__(self):
        return "QQ" if self.kind == RATIONAL else f"GF({self.p})"

    # -- constants ---------------------------------------------------------

    @property
    def zero(self) -> Value:
        return Fraction(0) if self.kind == RATIONAL else 0

    @property
    def one(self) -> Value:
        return Fraction(1) if self.kind == RATIONAL else 1

    # -- arithmetic on raw values -----------------------------------------

    def normalize(self, x) -> Value:
        if self.kind == RATIONAL:
            return Fraction(x)
        return int(x) % self.p

    def add(self, a: Value, b: Value) -> Value:
        return a + b if self.kind == RATIONAL else (a + b) % self.p

    def sub(self, a: Value, b: Value) -> Value:
        return a - b if self.kind == RATIONAL else (a - b) % self.p

    def mul(self, a: Value, b: Value) -> Value:
        return a * b if self.kind == RATIONAL else (a * b) % self.p

    def neg(self, a: Value) -> Value:
        return -a if self.kind == RATIONAL else (-a) % self.p

    def inv(self, a: Value) -> Value:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        # Fraction(a) guards against int / int producing a float
        return 1 / Fraction(a) if self.kind == RATIONAL else pow(a, -1, self.p)

    def div(self, a: Value, b: Value) -> Value:
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> Value:
        return Fraction(n) if self.kind == RATIONAL else n % self.p

    # -- text form ---------------------------------------------------------

    def parse(self, text: str, location: str | None = None) -> Value:
        """Parse "3", "-5/7" (rationals) or an integer residue (prime fields)."""
        text = text.strip()
        if self.kind == RATIONAL:
            if not _RATIONAL_RE.match(text):
                raise ParseError(f"malformed rational scalar {text!r}", location)
            return Fraction(text)
        if _INT_RE.match(text):
            return int(text) % self.p
        m = re.match(r"^([+-]?\d+)/(\d+)$", text)
        if m:
            den = int(m.group(2)) % self.p
            if den == 0:
                raise ParseError(f"denominator of {text!r} is 0 mod {self.p}", location)
            return int(m.group(1)) * pow(den, -1, self.p) % self.p
        raise ParseError(f"malformed residue {text!r}", location)

    def format(self, x: Value) -> str:
        return str(x)

    def require_same(self, other: "FieldSpec"):
        if self != other:
            raise FieldMismatch(f"fields differ: {self!r} vs {other!r}")


QQ = FieldSpec(RATIONAL)


def GF(p: int) -> FieldSpec:
    return FieldSpec(PRIME, p)


@dataclass(frozen=True)
class Scalar:
    """A single exact field element in canonical form."""

    field: FieldSpec
    value: Value

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.normalize(self.value))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Scalar":
        return cls(field, field.parse(text))

    @classmethod
    def from_int(cls, field: FieldSpec, n: int) -> "Scalar":
        return cls(field, field.from_int(n))

    def _coerce(self, other) -> Value:
        if isinstance(other, Scalar):
            self.field.require_same(other.field)
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError(f"cannot combine Scalar with {type(other).__name__}")

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._coerce(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)
