"""Exact coefficient arithmetic over Q, GF(p) and Z.

Scalars are plain Python values: `Fraction` for Q (always in lowest terms
with positive denominator), `int` residues in [0, p) for GF(p), and `int`
for Z.  A `RingSpec` names the ring and owns canonicalisation, arithmetic,
parsing and formatting, so scalar equality is structural and serialised
values round-trip exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

Scalar = Union[Fraction, int]

RATIONALS = "Q"
PRIME_FIELD = "GF"
INTEGERS = "Z"

_GF_NAME = re.compile(r"^GF\((\d+)\)$")
_GF_SCALAR = re.compile(r"^(-?\d+)\s+mod\s+(\d+)$")
_RATIONAL = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


class RingError(ValueError):
    """Ring mismatch, malformed scalar text, or an invalid ring operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """One of the three supported coefficient rings.

    ``kind`` is "Q", "GF" or "Z"; ``p`` is the (prime) modulus and is only
    set for kind "GF".
    """

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in (RATIONALS, PRIME_FIELD, INTEGERS):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == PRIME_FIELD:
            if self.p is None or not is_prime(self.p):
                raise RingError(f"GF modulus must be prime, got {self.p!r}")
        elif self.p is not None:
            raise RingError(f"ring {self.kind} takes no modulus")

    # -- identity ---------------------------------------------------------

    @property
    def name(self) -> str:
        if self.kind == PRIME_FIELD:
            return f"GF({self.p})"
        return self.kind

    @classmethod
    def from_name(cls, text: str) -> "RingSpec":
        if text == RATIONALS:
            return QQ
        if text == INTEGERS:
            return ZZ
        m = _GF_NAME.match(text)
        if m:
            return cls(PRIME_FIELD, int(m.group(1)))
        raise RingError(f"unknown ring name {text!r} (expected Q, Z or GF(p))")

    @property
    def is_field(self) -> bool:
        return self.kind != INTEGERS

    def __str__(self) -> str:
        return self.name

    # -- canonical values -------------------------------------------------

    def zero(self) -> Scalar:
        return Fraction(0) if self.kind == RATIONALS else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.kind == RATIONALS else 1

    def normalize(self, value) -> Scalar:
        """Coerce ``value`` into a canonical scalar of this ring.

        Accepts ints everywhere, `Fraction` for Q (and for GF(p) when the
        denominator is invertible mod p).
        """
        if self.kind == RATIONALS:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
        elif self.kind == PRIME_FIELD:
            if isinstance(value, int):
                return value % self.p
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise RingError(f"{value} has no residue mod {self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
        else:
            if isinstance(value, int):
                return value
            if isinstance(value, Fraction) and value.denominator == 1:
                return value.numerator
        raise RingError(f"{value!r} is not a scalar of {self.name}")

    # -- arithmetic --------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.kind == PRIME_FIELD else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.kind == PRIME_FIELD else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.kind == PRIME_FIELD else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.kind == PRIME_FIELD else -a

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def inv(self, a: Scalar) -> Scalar:
        if self.kind == PRIME_FIELD:
            if a % self.p == 0:
                raise RingError("division by zero")
            return pow(a, -1, self.p)
        if self.kind == RATIONALS:
            if a == 0:
                raise RingError("division by zero")
            return 1 / Fraction(a)
        raise RingError("Z is not a field; no inverses")

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    # -- text form ----------------------------------------------------------

    def format(self, value: Scalar) -> str:
        if self.kind == PRIME_FIELD:
            return f"{value} mod {self.p}"
        return str(value)

    def parse(self, text: str) -> Scalar:
        """Parse a scalar string; canonical forms are "a/b", "a", "k mod p".

        A rational string is accepted for GF(p) by reduction mod p (the
        denominator must be invertible); "a/b" for Z must be an integer.
        Zero denominators are rejected outright.
        """
        text = text.strip()
        m = _GF_SCALAR.match(text)
        if m:
            if self.kind != PRIME_FIELD or int(m.group(2)) != self.p:
                raise RingError(f"scalar {text!r} does not belong to {self.name}")
            return int(m.group(1)) % self.p
        m = _RATIONAL.match(text)
        if not m:
            raise RingError(f"cannot parse scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise RingError(f"zero denominator in scalar {text!r}")
        return self.normalize(Fraction(num, den))


QQ = RingSpec(RATIONALS)
ZZ = RingSpec(INTEGERS)


def GF(p: int) -> RingSpec:
    return RingSpec(PRIME_FIELD, p)


def require_same_ring(ring: RingSpec, *others: RingSpec) -> None:
    for other in others:
        if other != ring:
            raise RingError(f"ring mismatch: {ring.name} vs {other.name}")


@dataclass(frozen=True)
class CharacterQZ:
    """A homomorphism from integer vectors into the rationals mod 1.

    ``coeffs[i]`` lies in [0, 1); the value on an integer vector is the
    mod-1 sum of coordinatewise products.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) % 1 for c in self.coeffs))

    def value(self, vector: Sequence[int]) -> Fraction:
        if len(vector) != len(self.coeffs):
            raise RingError("character/vector length mismatch")
        return sum((c * v for c, v in zip(self.coeffs, vector)), Fraction(0)) % 1

    def annihilates(self, vector: Sequence[int]) -> bool:
        return self.value(vector) == 0

    @property
    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of canonical scalars over a single ring."""

    ring: RingSpec
    rows: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence]) -> "ExactMatrix":
        norm = tuple(tuple(ring.normalize(v) for v in row) for row in rows)
        widths = {len(r) for r in norm}
        if len(widths) > 1:
            raise RingError("ragged matrix rows")
        return cls(ring, norm)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.rows)


def primitive_int_vector(values: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    fracs = [Fraction(v) for v in values]
    mult = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * mult) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return ints
