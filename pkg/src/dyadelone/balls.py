"""Balls, cosets and transversals in the 2-adic ultrametric.

The centred ball with exponent ``n`` is ``A_n = {x : |x|_2 <= 2**n}``; it
is a compact open subgroup for every integer ``n`` (positive or negative).
Haar measure is normalized so that the unit ball ``A_0`` has measure one.

Because the metric is an ultrametric, the cosets of ``A_k`` partition any
larger ball, and each coset contains exactly one dyadic rational of the
canonical form produced by :func:`coset_rep`.  The finite transversals of
:func:`transversal` realize that partition inside a ball ``A_n``.
"""

from __future__ import annotations

from fractions import Fraction

from .dyadic import ZERO, Dyadic, normalize


def in_ball(x: Dyadic, n: int) -> bool:
    """True when ``|x|_2 <= 2**n``, i.e. ``x`` lies in ``A_n``."""
    if x.num == 0:
        return True
    return ((x.num & -x.num).bit_length() - 1) - x.exp >= -n


def haar(n: int) -> Fraction:
    """Haar measure of ``A_n`` under the normalization ``haar(0) == 1``."""
    if n >= 0:
        return Fraction(1 << n)
    return Fraction(1, 1 << -n)


def coset_rep(x: Dyadic, k: int) -> Dyadic:
    """Canonical representative of the coset ``x + A_k``.

    For ``x = m / 2**j`` in canonical form the representative is zero when
    ``x`` already lies in ``A_k`` and ``(m mod 2**(j-k)) / 2**j`` otherwise,
    which for ``k >= 0`` is the unique element of the half-open real
    interval ``[0, 2**-k)`` in the coset.  Two points get the same
    representative exactly when their difference lies in ``A_k``, so the
    return value doubles as a hashable coset key at any scale.

    Negative ``k`` is allowed; the same formula applies.
    """
    if x.num == 0:
        return ZERO
    if ((x.num & -x.num).bit_length() - 1) - x.exp >= -k:
        return ZERO
    e = x.exp
    if e <= k:
        # x is an even-numerator integer deeper inside A_k; caught above.
        return ZERO
    return normalize(x.num % (1 << (e - k)), e)


def transversal(n: int, k: int = 0) -> list[Dyadic]:
    """Coset representatives of ``A_k`` inside ``A_n``, ascending real order.

    Returns the ``2**(n-k)`` points ``{m / 2**n : 0 <= m < 2**(n-k)}``.
    With ``k == 0`` this is the standard transversal of the unit ball in
    ``A_n``; scaling by ``2**-k`` relates the general case to it.

    Raises:
        ValueError: unless ``0 <= k <= n``.
    """
    if not 0 <= k <= n:
        raise ValueError(f"transversal requires 0 <= k <= n, got n={n}, k={k}")
    return [normalize(m, n) for m in range(1 << (n - k))]
