"""Stagewise construction of well placed sets with controlled patch growth.

The driver starts from the full transversal of a small ball and repeatedly
applies an extension step.  One step takes a set ``F`` well placed in
``A_a`` containing zero, picks the smallest real radius exponent
``r >= n`` with ``F`` inside the open real interval ``(-2**r, 2**r)``, and
plants a translated copy of ``F`` at every coset representative
``g ∈ xi_{a+d}^a``.  Each copy keeps the core ``F ∩ A_n`` untouched and
shifts the outer part ``F \\ A_n`` by an integer ``v_g = 5 * 2**r * j``
(``j`` the real-order index of ``g``), so the copies agree on small balls
but differ far out.  The result is well placed in ``A_{a+d}``, restricts
to ``F`` on ``A_a``, and multiplies the number of distinct large patches
by at least ``2**d`` while the small-scale statistics stay put.

A schedule chooses the depth ``d_n`` of every step so that the patch
counting entropy of the limit set lands on prescribed upper and lower
targets; sparse spike steps push the upper target while the steady growth
floor sets the lower one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .balls import in_ball, transversal
from .dyadic import ZERO, Dyadic, normalize
from .pointset import FinitePointSet, point_set, well_placed

SPIKE_OFFSET = 2  # spike steps sit at j*(j+1)/2 + SPIKE_OFFSET, j = 1, 2, ...


def min_r(F: FinitePointSet, n: int) -> int:
    """Smallest ``r >= n`` with every point strictly inside real radius ``2**r``.

    For a nonzero canonical dyadic ``m / 2**e`` the smallest power of two
    exceeding its real magnitude is ``2**(bitlength(|m|) - e)``.
    """
    r = n
    for x in F:
        if x.num:
            need = abs(x.num).bit_length() - x.exp
            if need > r:
                r = need
    return r


@dataclass(frozen=True)
class ExtensionStep:
    """One extension step: parameters, offset assignment and result."""

    n: int
    a: int
    d: int
    r: int
    v_assignment: tuple[tuple[Dyadic, Dyadic], ...]
    result: FinitePointSet


def extend(F: FinitePointSet, n: int, a: int, d: int) -> ExtensionStep:
    """Extend ``F``, well placed in ``A_a``, to a well placed set in ``A_{a+d}``.

    Args:
        F: the set to extend; must be well placed in ``A_a`` and contain 0.
        n: core ball exponent; patches inside ``A_n`` are preserved.
        a: current ambient exponent, ``n + 2 <= a``.
        d: depth of the step, ``d >= 1``.

    Raises:
        ValueError: naming the violated precondition.
    """
    if d < 1:
        raise ValueError(f"extension precondition d >= 1 violated (d={d})")
    if n < 1:
        raise ValueError(f"extension precondition n >= 1 violated (n={n})")
    if n + 2 > a:
        raise ValueError(
            f"extension precondition n+2 <= a violated (n={n}, a={a})"
        )
    if not well_placed(F, a):
        raise ValueError("extension precondition violated: F is not well placed in A_a")
    if ZERO not in set(F.points):
        raise ValueError("extension precondition violated: 0 in F fails")

    r = min_r(F, n)
    core = [f for f in F if in_ball(f, n)]
    outer = [f for f in F if not in_ball(f, n)]

    reps = transversal(a + d, a)
    assignment = []
    pts = []
    for j, g in enumerate(reps):
        v = normalize((5 * j) << r, 0)
        assignment.append((g, v))
        for f in core:
            pts.append(g + f)
        for f in outer:
            pts.append(g + f + v)

    E = point_set(pts, scale=a + d)
    if len(E) != 1 << (a + d):
        raise AssertionError("extension lost points; construction is broken")
    return ExtensionStep(
        n=n, a=a, d=d, r=r, v_assignment=tuple(assignment), result=E
    )


@dataclass(frozen=True)
class StageSchedule:
    """Depth and ambient exponents per stage, 1-indexed.

    ``d`` and ``a`` carry a dummy zero at index 0 so that ``d[n]`` and
    ``a[n]`` read exactly like the mathematics.  ``spikes`` are the stage
    indices of upper-target steps.
    """

    r_target: float
    s_target: float
    d: tuple[int, ...]
    a: tuple[int, ...]
    spikes: frozenset[int]

    @property
    def n_max(self) -> int:
        return len(self.d) - 1


def spike_steps(n_max: int) -> frozenset[int]:
    """Stage indices ``j*(j+1)/2 + 2`` up to ``n_max``: sparse upper-target steps."""
    out = set()
    j = 1
    while True:
        step = j * (j + 1) // 2 + SPIKE_OFFSET
        if step > n_max:
            break
        out.add(step)
        j += 1
    return frozenset(out)


def schedule(
    r: float,
    s: float,
    n_max: int,
    d1: int = 1,
    d2: int = 2,
) -> StageSchedule:
    """Build the per-stage depth schedule for entropy targets ``(r, s)``.

    ``r`` bounds the upper and ``s`` the lower patch counting growth;
    ``math.inf`` is accepted for either.  Off spike steps use the growth
    factor ``2*s/ln 2``, spike steps ``2*r/ln 2``; an infinite target
    switches the step to the superexponential floor ``n * 2**n``.  Every
    depth is clamped from below by ``d_{n-1} + d_{n-2}`` and by ``a_{n-1}``
    so the extension stays admissible.

    Raises:
        ValueError: unless ``0 <= s <= r``, ``d1 >= 1``, ``d2 >= 2`` and
            ``n_max >= 1``.
    """
    if not (0 <= s <= r):
        raise ValueError(f"targets must satisfy 0 <= s <= r, got r={r}, s={s}")
    if d1 < 1 or d2 < 2:
        raise ValueError("initial depths must satisfy d1 >= 1 and d2 >= 2")
    if n_max < 1:
        raise ValueError("schedule needs at least one stage")

    ln2 = math.log(2)
    c_off = 0.0 if s == 0 else 2 * s / ln2
    c_spike = 2 * r / ln2 if r != math.inf else math.inf
    spikes = spike_steps(n_max)

    d = [0] * (n_max + 1)
    a = [0] * (n_max + 1)
    d[1] = d1
    if n_max >= 2:
        d[2] = d2
    a[1] = d2 + 1

    for n in range(2, n_max + 1):
        a[n] = a[n - 1] + d[n - 1]
        if n >= 3:
            floor = max(d[n - 1] + d[n - 2], a[n - 1])
            if s == math.inf:
                growth = n << n
            elif n in spikes:
                growth = (n << n) if r == math.inf else math.ceil(c_spike * (1 << n))
            else:
                growth = math.ceil(c_off * (1 << n))
            d[n] = max(floor, growth)

    for n in range(1, n_max + 1):
        if a[n] < n + 2:
            raise AssertionError(f"schedule produced a_{n} = {a[n]} < n + 2")
    for n in range(3, n_max + 1):
        if d[n] < d[n - 1] + d[n - 2] or d[n] < a[n - 1]:
            raise AssertionError(f"schedule floor violated at stage {n}")

    return StageSchedule(
        r_target=r, s_target=s, d=tuple(d), a=tuple(a), spikes=spikes
    )


@dataclass(frozen=True)
class StageSet:
    """One built stage: the set and the step data that leads out of it.

    ``r`` and ``v_assignment`` describe the extension applied to this
    stage; ``v_assignment`` is ``None`` on the last built stage.
    """

    n: int
    a: int
    d: int
    omega: FinitePointSet
    r: int | None
    v_assignment: tuple[tuple[Dyadic, Dyadic], ...] | None


@dataclass(frozen=True)
class BuildResult:
    stages: tuple[StageSet, ...]
    truncated: bool
    requested: int
    size_cap: int


def build(sched: StageSchedule, stages: int, size_cap: int) -> BuildResult:
    """Run the construction for ``stages`` stages under a point budget.

    The first stage is the full transversal of ``A_{a_1}``.  Construction
    stops early, flagged but without error, as soon as the next stage
    would exceed ``size_cap`` points.

    Raises:
        ValueError: if more stages are requested than the schedule holds.
    """
    if stages < 1:
        raise ValueError("at least one stage must be requested")
    if stages > sched.n_max:
        raise ValueError(
            f"schedule holds {sched.n_max} stages, cannot build {stages}"
        )
    omega = point_set(transversal(sched.a[1]), scale=sched.a[1])
    built: list[StageSet] = []
    truncated = False
    n = 1
    while True:
        if n == stages:
            built.append(
                StageSet(
                    n=n,
                    a=sched.a[n],
                    d=sched.d[n],
                    omega=omega,
                    r=min_r(omega, n),
                    v_assignment=None,
                )
            )
            break
        if (1 << sched.a[n + 1]) > size_cap:
            built.append(
                StageSet(
                    n=n,
                    a=sched.a[n],
                    d=sched.d[n],
                    omega=omega,
                    r=min_r(omega, n),
                    v_assignment=None,
                )
            )
            truncated = True
            break
        step = extend(omega, n, sched.a[n], sched.d[n])
        built.append(
            StageSet(
                n=n,
                a=sched.a[n],
                d=sched.d[n],
                omega=omega,
                r=step.r,
                v_assignment=step.v_assignment,
            )
        )
        omega = step.result
        n += 1
    return BuildResult(
        stages=tuple(built),
        truncated=truncated,
        requested=stages,
        size_cap=size_cap,
    )
