"""Finite volume autocorrelation and diffraction.

A finite set inside ``A_a`` embeds into the cyclic group ``Z / 2**(a+M)``
by reading each point ``m / 2**e`` as the residue ``m * 2**(a-e)``; the
parameter ``M`` sets the resolution of the dual group.  The intensity
spectrum is the squared modulus of the discrete Fourier transform of the
indicator vector, normalized by the Haar measure of the ambient ball, so
its bin sum always equals ``2**(a+M) * |S| / 2**a`` (Parseval).  The
embedding must be injective; two points whose difference falls into
``2**M * Z_2`` collide and the transform is refused.

The autocorrelation counts ordered difference pairs with multiplicity by
default; a flag switches to the multiplicity-free reading, where every
occurring difference contributes the same weight.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .balls import in_ball
from .dyadic import Dyadic, normalize
from .pointset import FinitePointSet, delta_v, point_set

BIN_CAP = 1 << 22


@dataclass
class Autocorrelation:
    """Difference measure coefficients ``eta(g)`` at ambient exponent ``n``."""

    n: int
    coeffs: dict[Dyadic, Fraction]


def autocorr(S: FinitePointSet, n: int, multiplicity: bool = True) -> Autocorrelation:
    """Exact autocorrelation coefficients of ``S`` relative to ``A_n``.

    ``eta(g)`` is the number of ordered pairs ``(x, y)`` with
    ``x - y = g``, divided by the Haar measure ``2**n``; with
    ``multiplicity=False`` every occurring difference counts once.
    Quadratic in the set size, intended for desk scale sets.

    Raises:
        ValueError: if some point lies outside ``A_n``.
    """
    for x in S.points:
        if not in_ball(x, n):
            raise ValueError(f"point {x} outside A_{n}")
    cnt: Counter[Dyadic] = Counter()
    for x in S.points:
        for y in S.points:
            cnt[x - y] += 1
    theta = Fraction(1 << n) if n >= 0 else Fraction(1, 1 << -n)
    coeffs = {
        g: (Fraction(c) / theta if multiplicity else Fraction(1) / theta)
        for g, c in sorted(cnt.items())
    }
    return Autocorrelation(n=n, coeffs=coeffs)


@dataclass
class Spectrum:
    """Finite volume intensity per dual bin ``k`` of ``Z / 2**(a+M)``."""

    a: int
    M: int
    intensities: np.ndarray

    @property
    def bins(self) -> int:
        return len(self.intensities)


def residues(S: FinitePointSet, a: int, M: int) -> list[int]:
    """Residue embedding of ``S`` into ``Z / 2**(a+M)``.

    Raises:
        ValueError: if a point leaves ``A_a`` or two points collide,
            i.e. the set is not separated at resolution ``M``.
    """
    L = 1 << (a + M)
    out = []
    for x in S.points:
        if not in_ball(x, a):
            raise ValueError(f"point {x} outside A_{a}")
        sh = a - x.exp
        r = (x.num << sh) if sh >= 0 else (x.num >> -sh)
        out.append(r % L)
    if len(set(out)) != len(out):
        raise ValueError(f"set not separated at resolution M={M}")
    return out


def spectrum(S: FinitePointSet, a: int, M: int) -> Spectrum:
    """Finite volume diffraction of ``S`` over ``2**(a+M)`` dual bins.

    Raises:
        ValueError: on an empty set, a resolution pushing past the
            ``2**22`` bin cap, or a failed residue embedding.
    """
    if not S.points:
        raise ValueError("spectrum of the empty set is undefined")
    if M < 0:
        raise ValueError("resolution exponent must be non-negative")
    if (a + M) < 0 or (1 << (a + M)) > BIN_CAP:
        raise ValueError(f"transform size 2**{a + M} outside supported range")
    res = residues(S, a, M)
    L = 1 << (a + M)
    vec = np.zeros(L, dtype=np.float64)
    vec[res] = 1.0
    amp = np.fft.fft(vec)
    intens = (amp.real**2 + amp.imag**2) / float(1 << a)
    return Spectrum(a=a, M=M, intensities=intens)


def pp_mass(spec: Spectrum, J: int) -> float:
    """Fraction of total intensity carried by the ``J`` largest bins.

    Raises:
        ValueError: unless ``1 <= J <= bins``.
    """
    if not 1 <= J <= spec.bins:
        raise ValueError(f"J must lie in [1, {spec.bins}]")
    vals = np.sort(spec.intensities)[::-1]
    return float(vals[:J].sum() / spec.intensities.sum())


def almost_period_defect(S: FinitePointSet, g: Dyadic, k: int) -> Fraction:
    """Density of points where ``S`` and ``S - g`` differ beyond ``V_k`` blur.

    The candidate ``g`` must lie in the ambient ball of ``S``; the blurred
    symmetric difference is intersected with that ball and its point count
    divided by the Haar measure.

    Raises:
        ValueError: without an ambient scale or with ``g`` outside it.
    """
    if S.scale is None:
        raise ValueError("defect needs a set with an ambient scale")
    a = S.scale
    if not in_ball(g, a):
        raise ValueError(f"almost period candidate {g} outside A_{a}")
    shifted = point_set(x - g for x in S.points)
    diff = delta_v(S, shifted, k)
    count = sum(1 for x in diff.points if in_ball(x, a))
    return Fraction(count, 1 << a)


def randomized_control(
    S: FinitePointSet, a: int, M: int, rng: random.Random
) -> FinitePointSet:
    """Control set for concentration diagnostics.

    Keeps the occupied unit ball cosets of ``S`` but places one uniformly
    random representative of denominator ``2**a`` in each, drawn from the
    ``2**M`` residues the transform window offers.  Spectra of structured
    sets concentrate far more mass in few bins than those of their
    controls.

    Raises:
        ValueError: if two points of ``S`` share a unit ball coset.
    """
    base = []
    for x in S.points:
        if not in_ball(x, a):
            raise ValueError(f"point {x} outside A_{a}")
        base.append((x.num << (a - x.exp)) % (1 << a))
    if len(set(base)) != len(base):
        raise ValueError("control requires pairwise 2-adic distance at least 2")
    pts = [normalize(c + (rng.randrange(1 << M) << a), a) for c in base]
    return point_set(pts)
