"""Weak epsilon-nets by recursive Helly piercing and packing.

Given a separable convexity space whose half-space family has Helly
number h and VC dimension v, the builder returns a point set hitting
every convex set of measure at least eps:

* sets of conditional measure above 1 - 1/h all contain one common point
  (any h of them already intersect by mass, the rest is the Helly
  property), and separability transfers that piercing point to every
  equally dense convex set;
* the remaining dense sets are handled by choosing a maximal
  delta-separated packing A of the half-space family (delta-separated in
  symmetric-difference measure, so maximality makes A a delta-cover) and
  recursing on the measure conditioned to each packing element with the
  slightly amplified threshold eps * (1 + 1/(2h)).

The amplification gives a recursion depth of N(eps) = min { n :
eps * (1 + 1/(2h))^n > 1 - 1/h }; conditioning composes by intersection,
so subtrees are memoized on (support, level).  All threshold comparisons
are exact, done on integer weights over a common denominator.

The finished net is checked against every convex set of the space; a
failure (only possible when the space is not separable or the supplied
Helly number is wrong) raises `ConsistencyError` instead of returning a
bad net.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .space import (
    ConsistencyError,
    ConvexFamily,
    ConvexitySpace,
    Distribution,
    PointSet,
    masked_sum,
    measure,
    weight_tables,
)


class EmptyIntersection(ConsistencyError):
    """The family of very dense sets failed to intersect.

    Cannot happen when the supplied Helly number is genuine; it signals a
    wrong Helly number or a corrupted family.
    """


class ZeroMassCondition(ValueError):
    """Conditioning on a set of measure zero."""


class PackingBoundWarning(UserWarning):
    """A greedy packing exceeded the VC packing bound (4e^2/delta)^v."""


@dataclass(frozen=True, slots=True)
class NetParams:
    """Thresholds driving one level of the recursion."""

    eps: Fraction
    helly: int
    vc: int
    delta: Fraction
    eps_next: Fraction
    depth: int


def amplification_depth(eps: Fraction, helly: int) -> int:
    """Levels until the running threshold clears 1 - 1/h."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must satisfy 0 < eps <= 1")
    if helly < 1:
        raise ValueError("the Helly number is at least 1")
    target = 1 - Fraction(1, helly)
    factor = 1 + Fraction(1, 2 * helly)
    n = 0
    while eps <= target:
        eps *= factor
        n += 1
    return n


def net_params(eps: Fraction, helly: int, vc: int) -> NetParams:
    eps = Fraction(eps)
    if vc < 0:
        raise ValueError("the VC dimension is non-negative")
    depth = amplification_depth(eps, helly)
    return NetParams(
        eps=eps,
        helly=helly,
        vc=vc,
        delta=eps / (4 * helly * helly),
        eps_next=eps * (1 + Fraction(1, 2 * helly)),
        depth=depth,
    )


def piercing_point(space: ConvexitySpace, sets: Iterable[PointSet]) -> int:
    """Least-index point common to all given sets (all of X when none given)."""
    inter = space.full.mask
    for s in sets:
        inter &= s.mask
    if inter == 0:
        raise EmptyIntersection("the given sets have empty intersection")
    return (inter & -inter).bit_length() - 1


def conditional(mu: Distribution, points: PointSet) -> Distribution:
    total = measure(mu, points)
    if total == 0:
        raise ZeroMassCondition(f"{points} has measure zero")
    return Distribution(
        tuple(w / total if i in points else Fraction(0) for i, w in enumerate(mu.weights))
    )


def greedy_packing(family: ConvexFamily, mu: Distribution, delta: Fraction) -> ConvexFamily:
    """Maximal delta-separated subfamily, greedily in canonical order.

    Distance is the measure of the symmetric difference; selected members
    are pairwise more than delta apart, and by maximality every family
    member is within delta of a selected one (asserted).
    """
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    sets = family.sets
    dist = lambda a, b: measure(mu, a ^ b)
    chosen: list[PointSet] = []
    for s in sets:
        if all(dist(s, a) > delta for a in chosen):
            chosen.append(s)
    assert all(any(dist(s, a) <= delta for a in chosen) for s in sets), "packing is not a cover"
    return ConvexFamily(tuple(chosen))


@dataclass(frozen=True, slots=True)
class NetNode:
    """One recursion node: its piercing point, threshold, support, and the
    packing elements it recursed into (empty for base-case leaves)."""

    x0: int
    eps: Fraction
    support: PointSet
    packing: Optional[ConvexFamily]
    children: tuple[tuple[PointSet, "NetNode"], ...]


@dataclass(frozen=True, slots=True)
class WeakNet:
    points: PointSet
    trace: NetNode
    size_bound: float
    params: NetParams


class NetCheck(NamedTuple):
    ok: bool
    counterexample: Optional[PointSet]


def verify_weak_net(
    space: ConvexitySpace, mu: Distribution, eps: Fraction, points: PointSet
) -> NetCheck:
    """Exhaustively check that `points` meets every eps-dense convex set.

    The counterexample, if any, is the unpierced dense set of maximum
    measure, canonically least on ties.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must satisfy 0 < eps <= 1")
    nums, den = mu.integer_weights()
    tables = weight_tables(nums)
    lo_num, lo_den = eps.numerator, eps.denominator
    worst: Optional[PointSet] = None
    worst_w = -1
    for c in space.sets:
        if c.mask & points.mask:
            continue
        w = masked_sum(tables, c.mask)
        if w * lo_den >= lo_num * den and w > worst_w:
            worst, worst_w = c, w
    return NetCheck(worst is None, worst)


def size_bound_value(eps: Fraction, helly: int, vc: int) -> float:
    """(120 h^2 / eps) ** (4 h v ln(1/eps)), computed in log space."""
    base = math.log(120 * helly * helly / float(eps))
    exponent = 4 * helly * vc * math.log(1 / float(eps))
    log_bound = exponent * base
    return math.inf if log_bound > 700 else math.exp(log_bound)


_HAUSSLER_BASE = 4 * math.e * math.e


def build_weak_net(
    space: ConvexitySpace,
    family: ConvexFamily,
    mu: Distribution,
    eps: Fraction,
    *,
    helly: Optional[int] = None,
    vc: Optional[int] = None,
) -> WeakNet:
    """Weak eps-net for `mu` on `space`, built through `family`.

    `family` is normally the half-space family of the space.  Its Helly
    number and VC dimension are computed when not supplied; supplying
    them is an assertion, and a wrong Helly number surfaces as
    `EmptyIntersection` or a failed final verification, never as a bad
    net.  The returned net carries the recursion trace and the a-priori
    size bound (120 h^2 / eps)^(4 h v ln(1/eps)).
    """
    from .invariants import helly_number, vc_dimension

    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must satisfy 0 < eps <= 1")
    if mu.size != space.ground.size:
        raise ValueError("distribution size does not match the ground set")
    full = space.full.mask
    bmasks = [s.mask for s in family.sets]
    for s in family.sets:
        if s.mask & ~full:
            raise ValueError(f"family member {s} is not a subset of the ground set")
    h = helly_number(family)[0] if helly is None else helly
    v = vc_dimension(family, space.ground.size)[0] if vc is None else vc
    if h < 1:
        raise ValueError("the Helly number is at least 1")
    if v < 0:
        raise ValueError("the VC dimension is non-negative")

    params = net_params(eps, h, v)
    depth = params.depth
    grow = 1 + Fraction(1, 2 * h)
    eps_levels = [eps * grow**level for level in range(depth + 1)]
    deltas = [e / (4 * h * h) for e in eps_levels]

    nums, den = mu.integer_weights()
    tables = weight_tables(nums)
    wsum = lambda m: masked_sum(tables, m)
    support0 = mu.support().mask

    memo: dict[tuple[int, int], tuple[NetNode, int]] = {}

    def recurse(m: int, level: int) -> tuple[NetNode, int]:
        key = (m, level)
        got = memo.get(key)
        if got is not None:
            return got
        w_m = wsum(m)
        inter = full
        for b in bmasks:
            # mu_m(b) > 1 - 1/h, cross-multiplied.
            if h * wsum(b & m) > (h - 1) * w_m:
                inter &= b
        if inter == 0:
            raise EmptyIntersection(
                "dense half-spaces have empty intersection; the Helly number is wrong"
            )
        x0 = (inter & -inter).bit_length() - 1
        if level >= depth:
            node = NetNode(x0, eps_levels[level], PointSet(m), None, ())
            memo[key] = (node, 1 << x0)
            return node, 1 << x0
        d = deltas[level]
        p, q = d.numerator, d.denominator
        chosen: list[int] = []
        for b in bmasks:
            if all(q * wsum((b ^ a) & m) > p * w_m for a in chosen):
                chosen.append(b)
        cap = (_HAUSSLER_BASE / float(d)) ** v if v else 1.0
        if len(chosen) > cap:
            warnings.warn(
                f"packing of size {len(chosen)} exceeds the VC bound {cap:.3g}",
                PackingBoundWarning,
            )
        points = 1 << x0
        children = []
        for a in chosen:
            if wsum(a & m) > 0:
                child, cpts = recurse(m & a, level + 1)
                children.append((PointSet(a), child))
                points |= cpts
        node = NetNode(
            x0,
            eps_levels[level],
            PointSet(m),
            ConvexFamily.from_masks(chosen),
            tuple(children),
        )
        memo[key] = (node, points)
        return node, points

    root, points_mask = recurse(support0, 0)
    points = PointSet(points_mask)
    bound = size_bound_value(eps, h, v)
    if len(points) > bound:
        raise ConsistencyError(
            f"net has {len(points)} points, above the size bound {bound:.6g}"
        )
    check = verify_weak_net(space, mu, eps, points)
    if not check.ok:
        raise ConsistencyError(
            f"built net misses the dense convex set {check.counterexample}; "
            "the space is not separable or the Helly number is wrong"
        )
    return WeakNet(points, root, bound, params)
