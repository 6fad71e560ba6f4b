"""Shared corpus builders, naive reference oracles, and fixtures.

The naive functions re-implement the library's quantities straight from
their definitions, with none of the pruning or integer plumbing, so that
the fast implementations have something independent to disagree with.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from radonnets import (
    ConvexFamily,
    ConvexitySpace,
    Distribution,
    PointSet,
    amplification_depth,
    conditional,
    cylinder_space,
    greedy_packing,
    halfspaces,
    lattice_convex_space,
    linear_extension_space,
    measure,
    piercing_point,
    power_set_space,
    random_separable,
    subtree_space,
)


# --- corpus --------------------------------------------------------------------

POSET_BASES = {
    "poset-antichain-2": (("a", "b"), ()),
    "poset-antichain-3": (("a", "b", "c"), ()),
    "poset-antichain-4": (("a", "b", "c", "d"), ()),
    "poset-chain-3": (("a", "b", "c"), (("a", "b"), ("b", "c"))),
    "poset-vee-3": (("a", "b", "c"), (("a", "b"), ("a", "c"))),
    "poset-en-4": (("a", "b", "c", "d"), (("a", "c"), ("b", "c"), ("b", "d"))),
    "poset-diamond-4": (("a", "b", "c", "d"), (("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"))),
    "poset-twochains-4": (("a", "b", "c", "d"), (("a", "b"), ("c", "d"))),
}

GRID_DIMS = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]


def tree_edge_lists() -> list[tuple[str, list[tuple[str, str]]]]:
    """Every tree on 2..8 vertices up to isomorphism, 47 in total."""
    import networkx as nx

    out = []
    for n in range(2, 9):
        for i, tree in enumerate(nx.nonisomorphic_trees(n)):
            edges = [(str(u), str(v)) for u, v in sorted(tree.edges())]
            out.append((f"tree-{n}v-{i}", edges))
    return out


def build_corpus() -> list[tuple[str, ConvexitySpace]]:
    spaces: list[tuple[str, ConvexitySpace]] = []
    for m in range(1, 6):
        spaces.append((f"power-{m}", power_set_space(m)))
    for n in range(1, 4):
        spaces.append((f"cylinders-{n}", cylinder_space(n)))
    for name, edges in tree_edge_lists():
        spaces.append((name, subtree_space(edges)))
    for w, h in GRID_DIMS:
        spaces.append((f"lattice-{w}x{h}", lattice_convex_space(w, h)))
    for name, (elements, relations) in POSET_BASES.items():
        spaces.append((name, linear_extension_space(elements, relations)))
    for seed in range(200):
        spaces.append((f"random-{seed:03d}", random_separable(3 + seed % 4, seed)))
    return spaces


def seeded_distribution(size: int, tag: str) -> Distribution:
    """Random rational weights, reproducible from the tag."""
    rng = random.Random(tag)
    nums = [rng.randint(0, 6) for _ in range(size)]
    if not any(nums):
        nums[0] = 1
    return Distribution.from_integer_weights(nums)


def corpus_distributions(name: str, size: int) -> list[Distribution]:
    """The criterion set: uniform plus 25 seeded random distributions."""
    dists = [Distribution.uniform(size)]
    dists += [seeded_distribution(size, f"{name}/dist{i}") for i in range(25)]
    return dists


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, ConvexitySpace]]:
    return build_corpus()


@pytest.fixture(scope="session")
def small_corpus(corpus) -> list[tuple[str, ConvexitySpace]]:
    """Members small enough for the fully naive oracles."""
    return [(name, sp) for name, sp in corpus if sp.ground.size <= 6 and len(sp.convex) <= 70]


# --- naive oracles -------------------------------------------------------------


def naive_hull(space: ConvexitySpace, points: frozenset[int]) -> frozenset[int]:
    result = frozenset(range(space.ground.size))
    for s in space.sets:
        member = frozenset(s.indices)
        if points <= member:
            result &= member
    return result


def naive_shattered(space: ConvexitySpace, points: frozenset[int]) -> bool:
    pts = sorted(points)
    for r in range(len(pts) + 1):
        for left in combinations(pts, r):
            a = frozenset(left)
            b = points - a
            if naive_hull(space, a) & naive_hull(space, b):
                return False
    return True


def naive_radon(space: ConvexitySpace) -> int:
    n = space.ground.size
    for r in range(1, n + 2):
        if not any(
            naive_shattered(space, frozenset(c)) for c in combinations(range(n), r)
        ):
            return r
    raise AssertionError("unreachable: the full ground set bound failed")


def naive_helly(family: ConvexFamily, ground_size: int) -> int:
    # Full 2^|family| sweep; callers must keep the family small.
    members = [frozenset(s.indices) for s in family.sets]
    universe = frozenset(range(ground_size))
    best = 1
    for size in range(1, len(members) + 1):
        for combo in combinations(range(len(members)), size):
            inter = universe
            for j in combo:
                inter &= members[j]
            if inter:
                continue
            ok = True
            for drop in combo:
                rest = universe
                for j in combo:
                    if j != drop:
                        rest &= members[j]
                if not rest:
                    ok = False
                    break
            if ok:
                best = max(best, size)
    return best


def naive_vc(family: ConvexFamily, ground_size: int) -> int:
    masks = [s.mask for s in family.sets]
    best = 0
    for size in range(ground_size + 1):
        for combo in combinations(range(ground_size), size):
            y = 0
            for i in combo:
                y |= 1 << i
            if len({m & y for m in masks}) == 1 << size:
                best = max(best, size)
    return best


def naive_dense_sets(space: ConvexitySpace, mu: Distribution, eps: Fraction) -> list[PointSet]:
    return [s for s in space.sets if measure(mu, s) >= eps]


def naive_min_net(space: ConvexitySpace, mu: Distribution, eps: Fraction) -> int:
    targets = [s.mask for s in naive_dense_sets(space, mu, eps)]
    if not targets:
        return 0
    n = space.ground.size
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            picked = 0
            for i in combo:
                picked |= 1 << i
            if all(t & picked for t in targets):
                return size
    raise AssertionError("unreachable: the whole ground set hits everything")


def naive_chromatic(adjacency: tuple[int, ...]) -> int:
    n = len(adjacency)
    if n == 0:
        return 0

    def colorable(k: int) -> bool:
        colors = [-1] * n

        def go(v: int) -> bool:
            if v == n:
                return True
            used = {colors[u] for u in range(v) if (adjacency[v] >> u) & 1}
            for c in range(k):
                if c not in used:
                    colors[v] = c
                    if go(v + 1):
                        return True
            colors[v] = -1
            return False

        return go(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def reference_weak_net(
    space: ConvexitySpace,
    family: ConvexFamily,
    mu: Distribution,
    eps: Fraction,
    helly: int,
) -> PointSet:
    """The net recursion in plain rationals: no memo, no integer tables."""
    threshold = 1 - Fraction(1, helly)
    b0 = [b for b in family.sets if measure(mu, b) > threshold]
    x0 = piercing_point(space, b0)
    points = {x0}
    if amplification_depth(eps, helly) > 0:
        delta = eps / (4 * helly * helly)
        for a in greedy_packing(family, mu, delta):
            if measure(mu, a) > 0:
                child = reference_weak_net(
                    space,
                    family,
                    conditional(mu, a),
                    eps * (1 + Fraction(1, 2 * helly)),
                    helly,
                )
                points.update(child.indices)
    return PointSet.from_indices(points)
