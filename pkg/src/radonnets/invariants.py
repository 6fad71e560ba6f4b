"""Radon number, Helly number, and VC dimension of finite convexity spaces.

All three are computed exactly by constrained search:

* Radon: a set is shatterable when every bipartition has disjoint hulls;
  shatterability is downward monotone, so sets are grown by size with a
  frontier of still-shatterable sets.
* Helly: the Helly number of a family is the largest inclusion-minimal
  subfamily with empty intersection.  Minimal families intersect strictly
  smaller at every prefix in any order, which turns enumeration into a
  shrinking-intersection DFS with a permanent-redundancy prune.
* VC: downward-monotone frontier search on full shattering of traces.

Reported witnesses are the lexicographically least of maximum size, so
results are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .space import (
    ConsistencyError,
    ConvexFamily,
    ConvexitySpace,
    PointSet,
    halfspaces,
    is_separable,
)


@dataclass(frozen=True, slots=True)
class InvariantReport:
    radon: int
    helly: int
    vc: int
    separable: bool
    radon_witness: PointSet
    helly_witness: tuple[PointSet, ...]
    vc_witness: PointSet


def _hull_masks(space: ConvexitySpace) -> tuple[list[int], list[int]]:
    """Per-point bitsets over the family plus the family's masks.

    `point_rows[i]` has bit j set when convex set j contains point i, so
    the sets containing Y are the AND of Y's rows, and the hull of Y is
    the intersection of those sets.
    """
    masks = [s.mask for s in space.sets]
    n = space.ground.size
    point_rows = [0] * n
    for j, m in enumerate(masks):
        mm = m
        while mm:
            low = mm & -mm
            point_rows[low.bit_length() - 1] |= 1 << j
            mm ^= low
    return point_rows, masks


class _HullCache:
    def __init__(self, space: ConvexitySpace):
        self.full = space.full.mask
        self.point_rows, self.family = _hull_masks(space)
        self.all_rows = (1 << len(self.family)) - 1
        self.memo: dict[int, int] = {0: 0}

    def hull(self, y: int) -> int:
        got = self.memo.get(y)
        if got is not None:
            return got
        rows = self.all_rows
        m = y
        while m:
            low = m & -m
            rows &= self.point_rows[low.bit_length() - 1]
            m ^= low
        acc = self.full
        while rows:
            low = rows & -rows
            acc &= self.family[low.bit_length() - 1]
            rows ^= low
        self.memo[y] = acc
        return acc


def is_radon_shattered(space: ConvexitySpace, points: PointSet) -> bool:
    """Every bipartition of `points` has hulls with empty intersection.

    The hull of the empty part is empty, so one-sided splits are fine and
    the empty set and singletons are trivially shattered.
    """
    return _shattered(_HullCache(space), points.mask)


def _shattered(hc: _HullCache, y: int) -> bool:
    if y == 0 or y & (y - 1) == 0:
        return True
    # Fix the lowest point into part one so each unordered split comes up once.
    low = y & -y
    rest = y ^ low
    sub = rest
    while True:
        a = low | sub
        b = y ^ a
        if hc.hull(a) & hc.hull(b):
            return False
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return True


def radon_number(space: ConvexitySpace) -> tuple[int, PointSet]:
    """Smallest r such that every r-point multiset admits a Radon split.

    Equals one plus the largest shattered set size.  Returns the number
    and the lexicographically least shattered witness of maximum size.
    """
    hc = _HullCache(space)
    n = space.ground.size
    frontier = [0]
    best = 0
    # Frontier sets are shattered; extend by points above the max index so
    # each candidate set is generated exactly once, in lexicographic order.
    while frontier:
        nxt = []
        for y in frontier:
            top = y.bit_length()
            for i in range(top, n):
                cand = y | (1 << i)
                if _shattered(hc, cand):
                    nxt.append(cand)
        if nxt:
            best = nxt[0]
        frontier = nxt
    return best.bit_count() + 1, PointSet(best)


def helly_number(family: ConvexFamily | Sequence[PointSet]) -> tuple[int, tuple[PointSet, ...]]:
    """Largest inclusion-minimal subfamily with empty total intersection.

    When the whole family already intersects (including the vacuous case
    of no sets) there is no empty-intersection subfamily: the Helly
    number is 1 with an empty witness, meaning non-empty intersection is
    forced by singletons alone.

    The witness is the canonically least subfamily of maximum size.
    """
    sets = list(family.sets if isinstance(family, ConvexFamily) else canonicalized(family))
    masks = [s.mask for s in sets]
    k = len(masks)
    total = -1
    for m in masks:
        total &= m
    if k == 0 or total != 0:
        return 1, ()

    best_size = 0
    best: tuple[int, ...] = ()

    def minimal(prefix: list[int]) -> bool:
        # Every member must be essential: dropping it leaves a non-empty
        # intersection.  Computed with prefix/suffix intersection tables.
        k = len(prefix)
        pre = [-1] * (k + 1)
        for i, j in enumerate(prefix):
            pre[i + 1] = pre[i] & masks[j]
        suf = -1
        for i in range(k - 1, -1, -1):
            if pre[i] & suf == 0:
                return False
            suf &= masks[prefix[i]]
        return True

    # DFS over index-increasing prefixes whose running intersection shrinks
    # strictly at every step.  Strict shrinking is necessary for an
    # inclusion-minimal family in any order, so this enumerates a superset
    # of the minimal families; leaves are filtered by the direct minimality
    # check.  A member redundant against the current intersection stays
    # redundant forever (intersections only shrink), so it is dropped from
    # the candidate list passed down.
    def extend(prefix: list[int], inter: int, candidates: list[int]) -> None:
        nonlocal best_size, best
        if inter == 0:
            if len(prefix) > best_size and minimal(prefix):
                best_size = len(prefix)
                best = tuple(prefix)
            return
        live = [j for j in candidates if inter & masks[j] != inter]
        # Even if every live candidate is taken, each must strictly shrink
        # the intersection, and there are at most |inter| strict steps left.
        ceiling = len(prefix) + min(len(live), inter.bit_count())
        if ceiling <= best_size:
            return
        for pos, j in enumerate(live):
            nxt = inter & masks[j]
            if nxt == 0 and len(prefix) + 1 <= best_size:
                continue
            prefix.append(j)
            extend(prefix, nxt, live[pos + 1:])
            prefix.pop()

    extend([], -1, list(range(k)))
    return best_size, tuple(sets[j] for j in best)


def canonicalized(sets: Sequence[PointSet]) -> tuple[PointSet, ...]:
    return ConvexFamily(tuple(sets)).sets


def vc_dimension(family: ConvexFamily | Sequence[PointSet], ground_size: int) -> tuple[int, PointSet]:
    """Largest set whose every subset is a trace of the family."""
    masks = [s.mask for s in (family.sets if isinstance(family, ConvexFamily) else family)]
    frontier = [0]
    best = 0
    while frontier:
        nxt = []
        for y in frontier:
            top = y.bit_length()
            for i in range(top, ground_size):
                cand = y | (1 << i)
                if _traces_all(masks, cand):
                    nxt.append(cand)
        if nxt:
            best = nxt[0]
        frontier = nxt
    return best.bit_count(), PointSet(best)


def _traces_all(masks: list[int], y: int) -> bool:
    need = 1 << y.bit_count()
    seen = set()
    for m in masks:
        seen.add(m & y)
        if len(seen) == need:
            return True
    return need == 1 and len(seen) == 1


def analyze(space: ConvexitySpace) -> InvariantReport:
    """Radon number of the space plus Helly number and VC dimension of its
    half-space family.

    For separable spaces both half-space invariants are bounded by the
    Radon number minus one; a violation means a computation bug, reported
    as `ConsistencyError` rather than a wrong answer.
    """
    radon, radon_wit = radon_number(space)
    half = halfspaces(space, proper=False)
    helly, helly_wit = helly_number(half)
    vc, vc_wit = vc_dimension(half, space.ground.size)
    sep = is_separable(space).separable
    if sep:
        if helly > radon - 1:
            raise ConsistencyError(
                f"Helly number {helly} exceeds Radon bound {radon - 1} on a separable space"
            )
        if vc > radon - 1:
            raise ConsistencyError(
                f"VC dimension {vc} exceeds Radon bound {radon - 1} on a separable space"
            )
    return InvariantReport(radon, helly, vc, sep, radon_wit, helly_wit, vc_wit)
