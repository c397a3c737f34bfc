"""Independent checks of the extension step guarantees.

Given the input set ``F``, the produced set ``E`` and the step parameters,
four clauses are certified:

(a) structure: ``E`` is well placed in ``A_{a+d}``, restricts to ``F`` on
    ``A_a``, and the offset assignment is injective with zero offset at
    the zero representative and all offsets inside ``V_n``.
(b) sorted patch counts: for every radius ``j <= n``, every patch, every
    coset scale ``k <= a`` and every coset pair ``(h, h + h')``, the
    number of anchors of ``F`` in ``h + A_k`` showing the patch equals
    the number of anchors of ``E`` in ``h + h' + A_k`` showing it.
(c) blurred equality: ``E`` agrees with the full translate family
    ``F + xi_{a+d}^a`` up to ``V_n``.
(d) patch growth: at radii ``n+1`` and ``n+2`` the set ``E`` has at
    least ``2**d`` and at most ``|Pat_F| + 2**(d+m)`` distinct patches.

Clause (b) ranges over a product grid; when the grid exceeds the sample
budget a seeded uniform sample of that size is checked instead and the
report says so.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .balls import coset_rep, in_ball, transversal
from .construct import ExtensionStep
from .dyadic import ZERO, Dyadic
from .patches import Patch, patch_map, patch_set
from .pointset import FinitePointSet, delta_v, point_set, well_placed


@dataclass(frozen=True)
class ExtensionReport:
    clause_a: bool
    clause_b: bool
    clause_c: bool
    clause_d: bool
    b_exhaustive: bool
    b_checked: int
    detail: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.clause_a and self.clause_b and self.clause_c and self.clause_d


def _count_tables(
    S: FinitePointSet, j: int, k_max: int
) -> tuple[dict[Patch, int], list[dict[tuple[Dyadic, Patch], int]]]:
    """Per coset scale ``k``, anchor counts keyed by (coset key, patch)."""
    pm = patch_map(S, j)
    patches: dict[Patch, int] = {}
    tables: list[dict[tuple[Dyadic, Patch], int]] = []
    for p in pm.values():
        patches[p] = patches.get(p, 0) + 1
    for k in range(k_max + 1):
        tbl: dict[tuple[Dyadic, Patch], int] = {}
        for anchor, p in pm.items():
            key = (coset_rep(anchor, k), p)
            tbl[key] = tbl.get(key, 0) + 1
        tables.append(tbl)
    return patches, tables


def verify_extension(
    F: FinitePointSet,
    step: ExtensionStep,
    sample_budget: int = 10_000_000,
    seed: int = 0,
) -> ExtensionReport:
    """Certify the four extension clauses for a completed step.

    ``sample_budget`` bounds the number of clause (b) grid points checked
    exhaustively; beyond it a seeded sample of the same size is drawn.
    """
    n, a, d = step.n, step.a, step.d
    E = step.result
    detail: list[str] = []

    # --- clause (a): structure ---
    fset = set(F.points)
    assignment = dict(step.v_assignment)
    ok_a = well_placed(E, a + d) and len(E) == 1 << (a + d)
    if ok_a:
        restricted = [x for x in E.points if in_ball(x, a)]
        ok_a = restricted == list(F.points)
    if ok_a:
        vs = list(assignment.values())
        ok_a = (
            assignment.get(ZERO) == ZERO
            and len(set(vs)) == len(vs)
            and all(in_ball(v, -n) for v in vs)
            and not (fset - set(E.points))
        )
    if not ok_a:
        detail.append("clause (a): structure check failed")

    # --- clause (b): sorted patch counts over the coset grid ---
    rng = random.Random(seed)
    hs = transversal(a)
    hps = transversal(a + d, a)
    ok_b = True
    checked = 0
    grid = 0
    per_j = []
    for j in range(n + 1):
        f_patches, f_tables = _count_tables(F, j, a)
        e_patches, e_tables = _count_tables(E, j, a)
        if set(f_patches) != set(e_patches):
            ok_b = False
            detail.append(f"clause (b): patch families differ at radius {j}")
        plist = list(e_patches)
        per_j.append((plist, f_tables, e_tables))
        grid += len(plist) * (a + 1) * len(hs) * len(hps)
    exhaustive = grid <= sample_budget

    shifted = [(h, h + hp) for h in hs for hp in hps]
    pair_keys = [
        [(coset_rep(h, k), coset_rep(sh, k)) for h, sh in shifted]
        for k in range(a + 1)
    ]

    if ok_b and exhaustive:
        for j in range(n + 1):
            plist, f_tables, e_tables = per_j[j]
            for p in plist:
                for k in range(a + 1):
                    tf, te = f_tables[k], e_tables[k]
                    for kh, ksh in pair_keys[k]:
                        checked += 1
                        if tf.get((kh, p), 0) != te.get((ksh, p), 0):
                            ok_b = False
                            detail.append(
                                f"clause (b): count mismatch at radius {j}, "
                                f"scale {k}"
                            )
                            break
                    if not ok_b:
                        break
                if not ok_b:
                    break
            if not ok_b:
                break
    elif ok_b:
        n_pairs = len(shifted)
        for _ in range(sample_budget):
            j = rng.randrange(n + 1)
            plist, f_tables, e_tables = per_j[j]
            p = plist[rng.randrange(len(plist))]
            k = rng.randrange(a + 1)
            kh, ksh = pair_keys[k][rng.randrange(n_pairs)]
            checked += 1
            if f_tables[k].get((kh, p), 0) != e_tables[k].get((ksh, p), 0):
                ok_b = False
                detail.append("clause (b): count mismatch in sampled grid")
                break

    # --- clause (c): blurred equality with the translate family ---
    translates = point_set(f + hp for f in F.points for hp in hps)
    ok_c = len(delta_v(E, translates, n)) == 0
    if not ok_c:
        detail.append("clause (c): blurred difference from translate family nonempty")

    # --- clause (d): patch growth at the two radii above the core ---
    ok_d = True
    for m in (n + 1, n + 2):
        ce = len(patch_set(E, m))
        cf = len(patch_set(F, m))
        if not (1 << d) <= ce <= cf + (1 << (d + m)):
            ok_d = False
            detail.append(
                f"clause (d): patch count {ce} at radius {m} outside "
                f"[{1 << d}, {cf + (1 << (d + m))}]"
            )

    return ExtensionReport(
        clause_a=ok_a,
        clause_b=ok_b,
        clause_c=ok_c,
        clause_d=ok_d,
        b_exhaustive=exhaustive,
        b_checked=checked,
        detail=tuple(detail),
    )
