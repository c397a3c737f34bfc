"""Finite point sets in the 2-adic numbers.

A :class:`FinitePointSet` stores its points as canonical dyadic rationals
in ascending real order with duplicates removed.  The optional ``scale``
records that the set is well placed in the ball ``A_scale``: one point in
every unit-ball coset, hence ``2**scale`` points that are pairwise at
2-adic distance at least 2.

The module also provides the two ways such sets arise here: as model sets
cut from a real window, and as combs ``(xi^k + F) ∩ A_n`` obtained by
attaching the dyadic tail ``xi^k = Z[1/2] ∩ [0, 2**-k)`` to every point of
a finite seed ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .balls import coset_rep, in_ball
from .dyadic import (
    Dyadic,
    dyadic_from_json,
    dyadic_to_json,
    normalize,
)


@dataclass(frozen=True)
class FinitePointSet:
    """Sorted, duplicate-free finite set of dyadic points.

    Attributes:
        points: the points in ascending real order.
        scale: if not ``None``, the exponent ``a`` such that the set is
            well placed in ``A_a``; validated by :func:`point_set`.
    """

    points: tuple[Dyadic, ...]
    scale: int | None = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x: Dyadic) -> bool:
        return x in set(self.points)


def point_set(points: Iterable[Dyadic], scale: int | None = None) -> FinitePointSet:
    """Build a :class:`FinitePointSet`, sorting and deduplicating.

    Raises:
        ValueError: if ``scale`` is given but the set is not well placed
            in ``A_scale``.
    """
    pts = tuple(sorted(set(points)))
    fps = FinitePointSet(pts, scale)
    if scale is not None and not well_placed(fps, scale):
        raise ValueError(f"point set is not well placed in A_{scale}")
    return fps


def well_placed(S: FinitePointSet | Iterable[Dyadic], a: int) -> bool:
    """Whether ``S`` has exactly one point in every unit-ball coset of ``A_a``.

    Equivalent to: ``2**a`` points, all inside ``A_a``, pairwise 2-adic
    distance at least 2 (distinct fractional parts).
    """
    pts = list(S)
    if len(pts) != 1 << a:
        return False
    keys = set()
    for x in pts:
        if not in_ball(x, a):
            return False
        keys.add(coset_rep(x, 0))
    return len(keys) == len(pts)


def delta_v(S: FinitePointSet, T: FinitePointSet, k: int) -> FinitePointSet:
    """Symmetric difference of ``S`` and ``T`` blurred at scale ``V_k``.

    ``V_k = A_{-k}`` is the ball of radius ``2**-k``.  A point of one set
    is dropped when the other set has a point within ``V_k`` of it, which
    in the ultrametric means: in the same ``V_k`` coset.  Points surviving
    from either side are returned as one sorted set.
    """
    skeys = {coset_rep(x, -k) for x in S.points}
    tkeys = {coset_rep(x, -k) for x in T.points}
    out = [x for x in S.points if coset_rep(x, -k) not in tkeys]
    out += [x for x in T.points if coset_rep(x, -k) not in skeys]
    return point_set(out)


def _ceil_scaled(x: Dyadic, n: int) -> int:
    """ceil(x * 2**n) as an exact integer."""
    if x.exp <= n:
        return x.num << (n - x.exp)
    return -((-x.num) >> (x.exp - n))


def model_set(window: Sequence[tuple[Dyadic, Dyadic]], n: int) -> FinitePointSet:
    """Points of ``A_n`` whose real value falls in a union of intervals.

    ``A_n ∩ Z[1/2]`` is exactly ``{m / 2**n : m ∈ Z}``, so the cut is an
    exact integer enumeration per interval.  Intervals are half open
    ``[lo, hi)`` with dyadic endpoints.

    Args:
        window: pairwise disjoint intervals; touching endpoints are fine.
        n: ball exponent of the 2-adic cutoff.

    Raises:
        ValueError: on an empty or reversed interval, or when two
            intervals overlap.
    """
    ivs = sorted(window, key=lambda iv: iv[0])
    for lo, hi in ivs:
        if not lo < hi:
            raise ValueError(f"empty or reversed window interval [{lo}, {hi})")
    for (_, hi), (lo2, _) in zip(ivs, ivs[1:]):
        if lo2 < hi:
            raise ValueError("window intervals overlap")
    pts = []
    for lo, hi in ivs:
        for m in range(_ceil_scaled(lo, n), _ceil_scaled(hi, n)):
            pts.append(normalize(m, n))
    return point_set(pts)


def comb(F: FinitePointSet | Iterable[Dyadic], k: int, n: int) -> FinitePointSet:
    """The truncated comb ``(xi^k + F) ∩ A_n``.

    ``xi^k`` is the set of dyadic rationals in ``[0, 2**-k)``; adding it
    to a point ``f`` sweeps out all dyadics of ``[f, f + 2**-k)``, so the
    result is the model set of the (possibly overlapping, hence merged)
    union of those windows.  Enumeration per window is exact; overlaps
    are handled by deduplication.

    Args:
        F: finite seed set.
        k: tail exponent, ``k >= 0``.
        n: truncation ball exponent, ``n >= k``.
    """
    if k < 0:
        raise ValueError("tail exponent k must be non-negative")
    if n < k:
        raise ValueError(f"truncation requires n >= k, got n={n}, k={k}")
    step = Dyadic(1, k)
    pts = set()
    for f in F:
        for m in range(_ceil_scaled(f, n), _ceil_scaled(f + step, n)):
            pts.add(normalize(m, n))
    return point_set(pts)


def random_well_placed(
    a: int, rng, spread: int = 8, include_zero: bool = True
) -> FinitePointSet:
    """A seeded random set well placed in ``A_a``.

    Each unit ball coset representative is shifted by a random integer
    below ``spread``, which preserves well-placedness; the zero coset
    keeps the point 0 when ``include_zero`` is set so the result is a
    valid extension input.
    """
    pts = []
    for c in (normalize(m, a) for m in range(1 << a)):
        if include_zero and c.num == 0:
            pts.append(c)
        else:
            pts.append(c + Dyadic(rng.randrange(spread), 0))
    return point_set(pts, scale=a)


@dataclass(frozen=True)
class DeloneReport:
    """Outcome of :func:`delone_check`.

    ``separation_exp`` is the exponent ``s`` with minimal pairwise 2-adic
    distance ``2**s``; it is ``None`` for sets with fewer than two points,
    where the minimum does not exist.  ``covering_exp`` is the smallest
    ``j`` such that every coset of ``A_j`` inside ``A_a`` contains a
    point; ``None`` for the empty set.
    """

    uniformly_discrete: bool
    separation_exp: int | None
    relatively_dense: bool
    covering_exp: int | None


def delone_check(S: FinitePointSet, a: int) -> DeloneReport:
    """Report discreteness and denseness of ``S`` relative to ``A_a``.

    Raises:
        ValueError: if some point lies outside ``A_a``.
    """
    for x in S.points:
        if not in_ball(x, a):
            raise ValueError(f"point {x} lies outside A_{a}")
    n_pts = len(S.points)

    sep: int | None = None
    if n_pts >= 2:
        # Descend through ball scales; the last scale at which two points
        # still share a coset gives the closest approach.
        groups = [list(S.points)]
        b = a
        while groups:
            nxt = []
            for g in groups:
                buckets: dict[Dyadic, list[Dyadic]] = {}
                for x in g:
                    buckets.setdefault(coset_rep(x, b - 1), []).append(x)
                for bx in buckets.values():
                    if len(bx) >= 2:
                        nxt.append(bx)
            if not nxt:
                sep = b
                break
            groups = nxt
            b -= 1

    cov: int | None = None
    if n_pts:
        j = a
        while True:
            jn = j - 1
            if (1 << (a - jn)) > n_pts:
                break
            if len({coset_rep(x, jn) for x in S.points}) != 1 << (a - jn):
                break
            j = jn
        cov = j

    return DeloneReport(
        uniformly_discrete=True,
        separation_exp=sep,
        relatively_dense=n_pts > 0,
        covering_exp=cov,
    )


# === JSON encoding ===


def fps_to_json(S: FinitePointSet) -> dict:
    return {
        "scale": S.scale,
        "points": [dyadic_to_json(x) for x in S.points],
    }


def fps_from_json(obj: dict) -> FinitePointSet:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ValueError("expected an object with a 'points' array")
    scale = obj.get("scale")
    pts = [dyadic_from_json(p) for p in obj["points"]]
    return point_set(pts, None if scale is None else int(scale))
