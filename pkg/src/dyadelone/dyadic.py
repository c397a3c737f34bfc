"""Exact arithmetic on dyadic rationals.

A dyadic rational is a number of the form ``num / 2**exp`` with an
arbitrary-size integer numerator.  The ring Z[1/2] of dyadic rationals is
dense both in the reals and in the 2-adic numbers, which makes it the
natural coordinate system for point sets that live in the 2-adic field but
are manipulated on a computer.  Everything in this module is exact; no
floats are involved.

Values are kept in a canonical form so that equality and hashing work
structurally:

* ``exp >= 0``,
* ``num`` is odd whenever ``exp > 0``,
* zero is stored as ``(0, 0)``.

Use :func:`normalize` (or the arithmetic operators, which normalize their
results) instead of calling the ``Dyadic`` constructor with raw values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, slots=True)
class Dyadic:
    """A dyadic rational ``num / 2**exp`` in canonical form.

    Instances are immutable and hashable.  Comparison operators order by
    real value, so ``sorted`` on a list of points gives the ascending real
    order used throughout the package.
    """

    num: int
    exp: int

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = self.exp if self.exp >= other.exp else other.exp
        return normalize(
            (self.num << (e - self.exp)) + (other.num << (e - other.exp)), e
        )

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = self.exp if self.exp >= other.exp else other.exp
        return normalize(
            (self.num << (e - self.exp)) - (other.num << (e - other.exp)), e
        )

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def __lt__(self, other: "Dyadic") -> bool:
        return (self.num << other.exp) < (other.num << self.exp)

    def __le__(self, other: "Dyadic") -> bool:
        return (self.num << other.exp) <= (other.num << self.exp)

    def __gt__(self, other: "Dyadic") -> bool:
        return (self.num << other.exp) > (other.num << self.exp)

    def __ge__(self, other: "Dyadic") -> bool:
        return (self.num << other.exp) >= (other.num << self.exp)

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)


def normalize(num: int, exp: int) -> Dyadic:
    """Return the canonical ``Dyadic`` equal to ``num / 2**exp``.

    Trailing factors of two are cancelled, so the numerator of a nonzero
    result is odd unless the exponent has been reduced to zero.

    Args:
        num: integer numerator, any size and sign.
        exp: non-negative denominator exponent.

    Raises:
        ValueError: if ``exp`` is negative.

    Examples:
        normalize(6, 3)  -> 3/4
        normalize(8, 3)  -> 1
        normalize(0, 5)  -> 0
    """
    if exp < 0:
        raise ValueError("denominator exponent must be non-negative")
    if num == 0:
        return ZERO
    if exp > 0:
        tz = (num & -num).bit_length() - 1
        if tz:
            s = tz if tz < exp else exp
            num >>= s
            exp -= s
    return Dyadic(num, exp)


def from_int(n: int) -> Dyadic:
    """Embed an integer."""
    return Dyadic(n, 0)


def val2(x: Dyadic) -> float:
    """2-adic valuation of ``x``; ``math.inf`` for zero.

    For canonical ``x`` this is ``-x.exp`` when the numerator is odd and
    the number of trailing zero bits of the numerator otherwise.  The
    formula below also happens to be correct for unnormalized input.
    """
    if x.num == 0:
        return math.inf
    return ((x.num & -x.num).bit_length() - 1) - x.exp


def abs2(x: Dyadic) -> Fraction:
    """2-adic absolute value ``2**(-val2(x))`` as an exact rational."""
    if x.num == 0:
        return Fraction(0)
    v = ((x.num & -x.num).bit_length() - 1) - x.exp
    if v >= 0:
        return Fraction(1, 1 << v)
    return Fraction(1 << -v)


def abs_real(x: Dyadic) -> Fraction:
    """Archimedean absolute value as an exact rational."""
    return Fraction(abs(x.num), 1 << x.exp)


def real_value(x: Dyadic) -> Fraction:
    """The real number represented by ``x``, as an exact rational."""
    return Fraction(x.num, 1 << x.exp)


def cmp_real(x: Dyadic, y: Dyadic) -> int:
    """Three-way comparison by real value: -1, 0 or +1."""
    a = x.num << y.exp
    b = y.num << x.exp
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


# === JSON encoding ===
#
# A dyadic travels as a two element array [numerator-string, exponent].
# The numerator is a decimal string because it can exceed the integer
# range of other JSON consumers.  Unnormalized input is accepted and
# canonicalized on the way in.


def dyadic_to_json(x: Dyadic) -> list:
    return [str(x.num), x.exp]


def dyadic_from_json(obj) -> Dyadic:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise ValueError(f"expected [numerator, exponent] pair, got {obj!r}")
    num, exp = obj
    return normalize(int(num), int(exp))
