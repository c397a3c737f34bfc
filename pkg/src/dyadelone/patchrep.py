"""Patch representations up to a blur scale.

Two patches of equal radius are ``V_k`` close when each point of one has
a point of the other within 2-adic distance ``2**-k``.  The minimal
number of patches needed so that every patch in a family is close to a
chosen representative is the size of a minimum dominating set of the
closeness graph.  Small instances are solved exactly by branch and
bound; larger ones fall back to the greedy cover, always reported
together with an admissible lower bound from a packing of disjoint
closed neighbourhoods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .balls import coset_rep
from .dyadic import Dyadic
from .patches import Patch, patch_set

EXACT_LIMIT_DEFAULT = 24


def _vk_keys(P: Patch, k: int) -> frozenset[Dyadic]:
    return frozenset(coset_rep(p, -k) for p in P.points)


def v_close(P: Patch, Q: Patch, k: int) -> bool:
    """Mutual ``V_k`` closeness of two patches of the same radius.

    In the ultrametric, a point is within ``2**-k`` of another exactly
    when both share a ``V_k`` coset, so mutual closeness is equality of
    coset key sets.

    Raises:
        ValueError: if the radii differ.
    """
    if P.radius_exp != Q.radius_exp:
        raise ValueError(
            f"cannot compare patches of radii {P.radius_exp} and {Q.radius_exp}"
        )
    return _vk_keys(P, k) == _vk_keys(Q, k)


def _greedy_dominating(neigh: list[int], full: int) -> list[int]:
    chosen: list[int] = []
    undominated = full
    while undominated:
        best_v, best_gain = -1, -1
        for v, nb in enumerate(neigh):
            gain = bin(nb & undominated).count("1")
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen.append(best_v)
        undominated &= ~neigh[best_v]
    return chosen


def _packing_bound(neigh: list[int], undominated: int) -> int:
    """Vertices with pairwise disjoint closed neighbourhoods: each needs
    its own dominator, so the packing size bounds any dominating set."""
    bound = 0
    used = 0
    mask = undominated
    while mask:
        v = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        if neigh[v] & used:
            continue
        used |= neigh[v]
        bound += 1
    return bound


def _exact_dominating(neigh: list[int], full: int, start: list[int]) -> list[int]:
    best = list(start)

    def search(undominated: int, chosen: list[int]) -> None:
        nonlocal best
        if not undominated:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + _packing_bound(neigh, undominated) >= len(best):
            return
        # Branch on the undominated vertex with the fewest dominators.
        pick, pick_opts = -1, None
        mask = undominated
        while mask:
            v = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            opts = neigh[v]
            if pick_opts is None or bin(opts).count("1") < bin(pick_opts).count("1"):
                pick, pick_opts = v, opts
        opts = []
        m = pick_opts
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            opts.append(u)
        opts.sort(key=lambda u: -bin(neigh[u] & undominated).count("1"))
        for u in opts:
            chosen.append(u)
            search(undominated & ~neigh[u], chosen)
            chosen.pop()

    search(full, [])
    return best


@dataclass(frozen=True)
class RepResult:
    """Outcome of :func:`min_representation`.

    ``lower_bound <= count`` always, with equality certified when
    ``exact`` is set.
    """

    count: int
    representatives: tuple[Patch, ...]
    exact: bool
    lower_bound: int


def min_representation(
    patches: Mapping[Patch, int] | Iterable[Patch],
    k: int,
    exact_limit: int = EXACT_LIMIT_DEFAULT,
) -> RepResult:
    """Minimal family of representatives covering all patches up to ``V_k``.

    ``patches`` may be the dict returned by ``patch_set`` or any iterable;
    duplicates are merged.  Instances with at most ``exact_limit`` distinct
    patches are solved to optimality.
    """
    distinct: list[Patch] = []
    seen = set()
    for p in patches:
        if p not in seen:
            seen.add(p)
            distinct.append(p)
    n = len(distinct)
    if n == 0:
        return RepResult(count=0, representatives=(), exact=True, lower_bound=0)

    keys = [_vk_keys(p, k) for p in distinct]
    neigh = [0] * n
    for i in range(n):
        neigh[i] |= 1 << i
        for j in range(i + 1, n):
            if keys[i] == keys[j]:
                neigh[i] |= 1 << j
                neigh[j] |= 1 << i
    full = (1 << n) - 1

    greedy = _greedy_dominating(neigh, full)
    if n <= exact_limit:
        chosen = _exact_dominating(neigh, full, greedy)
        return RepResult(
            count=len(chosen),
            representatives=tuple(distinct[i] for i in sorted(chosen)),
            exact=True,
            lower_bound=len(chosen),
        )
    return RepResult(
        count=len(greedy),
        representatives=tuple(distinct[i] for i in sorted(greedy)),
        exact=False,
        lower_bound=_packing_bound(neigh, full),
    )


@dataclass(frozen=True)
class PatRow:
    n: int
    count: int
    exact: bool
    lower_bound: int
    ratio: float


def pat_series(stages: Sequence, k: int, exact_limit: int = EXACT_LIMIT_DEFAULT) -> list[PatRow]:
    """Blurred patch counts per stage at fixed scale ``V_k``.

    Row ``n`` reports the minimal ``V_k`` representation size of the
    radius ``n`` patches of stage ``n``, with the trivial radius zero row
    first; ``ratio`` is the natural log count over the ball measure.
    """
    if not stages:
        return []
    rows = []
    rep0 = min_representation(patch_set(stages[0].omega, 0), k, exact_limit)
    rows.append(
        PatRow(
            n=0,
            count=rep0.count,
            exact=rep0.exact,
            lower_bound=rep0.lower_bound,
            ratio=math.log(rep0.count),
        )
    )
    for st in stages:
        rep = min_representation(patch_set(st.omega, st.n), k, exact_limit)
        rows.append(
            PatRow(
                n=st.n,
                count=rep.count,
                exact=rep.exact,
                lower_bound=rep.lower_bound,
                ratio=math.log(rep.count) / (1 << st.n),
            )
        )
    return rows
