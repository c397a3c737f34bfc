"""Patches of point sets and their counting statistics.

An ``A_m`` patch of a set ``S`` at an anchor ``g ∈ S`` is the recentred
trace ``(S - g) ∩ A_m``.  Since anchors sit in the set, every patch
contains zero.  Patch extraction uses the coset structure of the
ultrametric: the points of ``S`` inside ``g + A_m`` are exactly the
bucket of ``S`` for the coset key of ``g`` at scale ``m``, so one pass
over the set prepares all patches at that radius.

Counting distinct patches per radius gives the entropy series; counting
anchors per patch gives exact rational frequencies, either over a whole
ambient ball or restricted to a union of prescribed cosets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from .balls import coset_rep, in_ball
from .dyadic import ZERO, Dyadic
from .pointset import FinitePointSet

if TYPE_CHECKING:
    from .construct import StageSet


@dataclass(frozen=True)
class Patch:
    """A recentred finite patch: sorted points with ``0`` among them.

    ``radius_exp`` is the exponent ``m`` of the extraction ball; for a
    source well placed in ``A_a`` and ``0 <= m <= a`` the patch has
    exactly ``2**m`` points.
    """

    points: tuple[Dyadic, ...]
    radius_exp: int


def make_patch(points: Iterable[Dyadic], radius_exp: int) -> Patch:
    """Validate and canonicalize a patch given as a bare point collection.

    Raises:
        ValueError: if zero is missing or some point leaves the ball.
    """
    pts = tuple(sorted(set(points)))
    if ZERO not in pts:
        raise ValueError("a patch must contain its anchor 0")
    for p in pts:
        if not in_ball(p, radius_exp):
            raise ValueError(f"patch point {p} outside A_{radius_exp}")
    return Patch(points=pts, radius_exp=radius_exp)


def _buckets(S: FinitePointSet, m: int) -> dict[Dyadic, list[Dyadic]]:
    """Group points by their ``A_m`` coset key, preserving real order."""
    out: dict[Dyadic, list[Dyadic]] = {}
    for x in S.points:
        out.setdefault(coset_rep(x, m), []).append(x)
    return out


def patch_at(S: FinitePointSet, g: Dyadic, m: int) -> Patch:
    """The ``A_m`` patch of ``S`` anchored at ``g``.

    Raises:
        ValueError: if ``g`` is not a point of ``S``.
    """
    if g not in set(S.points):
        raise ValueError(f"anchor {g} is not a point of the set")
    pts = tuple(x - g for x in S.points if in_ball(x - g, m))
    return Patch(points=pts, radius_exp=m)


def patch_set(S: FinitePointSet, m: int) -> dict[Patch, int]:
    """All distinct ``A_m`` patches of ``S`` with anchor multiplicities.

    The returned dict maps each patch to the number of anchors showing
    it; iteration order follows the ascending real order of first
    occurrence, so output is deterministic.
    """
    buckets = _buckets(S, m)
    counts: dict[Patch, int] = {}
    for key, bucket in buckets.items():
        for g in bucket:
            patch = Patch(points=tuple(x - g for x in bucket), radius_exp=m)
            counts[patch] = counts.get(patch, 0) + 1
    return counts


def patch_map(S: FinitePointSet, m: int) -> dict[Dyadic, Patch]:
    """Anchor to patch map at radius ``m``; one entry per point of ``S``."""
    out: dict[Dyadic, Patch] = {}
    for bucket in _buckets(S, m).values():
        for g in bucket:
            out[g] = Patch(points=tuple(x - g for x in bucket), radius_exp=m)
    return out


@dataclass(frozen=True)
class EntropyRow:
    n: int
    count: int
    theta: int
    ratio: float


def entropy_series(stages: Sequence["StageSet"]) -> list[EntropyRow]:
    """Patch counts ``|Pat(A_n)|`` of stage ``n`` and their entropy ratios.

    Includes the trivial radius zero row.  For every consecutive pair of
    stages the count at the smaller radius is recomputed on the larger
    stage and must agree: patches at radius ``n`` are frozen from stage
    ``n`` onward.

    Raises:
        RuntimeError: if that stabilization fails.
    """
    if not stages:
        return []
    count0 = len(patch_set(stages[0].omega, 0))
    rows = [EntropyRow(n=0, count=count0, theta=1, ratio=math.log(count0))]
    for st in stages:
        count = len(patch_set(st.omega, st.n))
        rows.append(
            EntropyRow(
                n=st.n,
                count=count,
                theta=1 << st.n,
                ratio=math.log(count) / (1 << st.n),
            )
        )
    for st, nxt in zip(stages, stages[1:]):
        before = len(patch_set(st.omega, st.n))
        after = len(patch_set(nxt.omega, st.n))
        if before != after:
            raise RuntimeError(
                f"patch count at radius {st.n} moved from {before} to {after} "
                f"between stages {st.n} and {nxt.n}"
            )
    return rows


def frequency(S: FinitePointSet, P: Patch) -> Fraction:
    """Exact frequency of ``P`` in ``S`` relative to the ambient ball.

    Counts group elements ``g`` with ``(S - g) ∩ A_m = P`` inside the
    ambient ball ``A_scale`` and divides by its Haar measure ``2**scale``.
    Candidates are enumerated as differences ``x - p``; since a patch
    contains zero, matches are necessarily anchors.

    Raises:
        ValueError: for an empty patch (the count would be infinite) or
            when ``S`` carries no ambient scale.
    """
    if not P.points:
        raise ValueError("frequency of empty patch undefined (infinite count)")
    if S.scale is None:
        raise ValueError("frequency needs a set with an ambient scale")
    a = S.scale
    m = P.radius_exp
    buckets = _buckets(S, m)
    target = P.points
    count = 0
    seen: set[Dyadic] = set()
    for x in S.points:
        for p in target:
            g = x - p
            if g in seen or not in_ball(g, a):
                continue
            seen.add(g)
            bucket = buckets.get(coset_rep(g, m))
            if bucket is not None and len(bucket) == len(target):
                if all(y - g == q for y, q in zip(bucket, target)):
                    count += 1
    return Fraction(count, 1 << a)


def frequency_sorted(
    S: FinitePointSet,
    region: Sequence[Dyadic],
    P: Patch,
    coset_exp: int,
) -> Fraction:
    """Frequency of ``P`` over a union of ``A_coset_exp`` cosets of ``S``.

    ``region`` lists canonical coset representatives drawn from the
    transversal of ``A_coset_exp`` inside the ambient ball of ``S``; the
    count is taken over ``C = ⋃ (rep + A_coset_exp)`` and divided by the
    Haar measure of ``C``.

    Raises:
        ValueError: for an empty patch or region, a representative
            outside the transversal, or a set without ambient scale.
    """
    if not P.points:
        raise ValueError("frequency of empty patch undefined (infinite count)")
    if S.scale is None:
        raise ValueError("frequency needs a set with an ambient scale")
    if not region:
        raise ValueError("empty region has no frequency")
    a = S.scale
    if not 0 <= coset_exp <= a:
        raise ValueError(f"coset exponent must lie in [0, {a}]")
    bound = Dyadic(1, coset_exp)
    reps = set()
    for rep in region:
        if rep.exp > a or rep < ZERO or not rep < bound:
            raise ValueError(f"representative {rep} outside transversal")
        reps.add(rep)
    m = P.radius_exp
    buckets = _buckets(S, m)
    target = P.points
    count = 0
    seen: set[Dyadic] = set()
    for x in S.points:
        for p in target:
            g = x - p
            if g in seen:
                continue
            seen.add(g)
            if coset_rep(g, coset_exp) not in reps:
                continue
            bucket = buckets.get(coset_rep(g, m))
            if bucket is not None and len(bucket) == len(target):
                if all(y - g == q for y, q in zip(bucket, target)):
                    count += 1
    return Fraction(count, len(reps) * (1 << coset_exp))
