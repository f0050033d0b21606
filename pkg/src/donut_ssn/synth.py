"""Synthetic benchmark networks: Poisson-scattered and clustered layouts,
both wired with distance-decay connection probabilities.

Given a spec and seed the output is fully deterministic (see rng.py for the
pinned generator). Node ids are "n0", "n1", ... in draw order; unordered
pairs are sampled exactly once in index order, so there are never duplicate
edges or self-loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .model import SpatialNetwork, validate_network
from .rng import SplitMix64

DEFAULT_CLUSTER_CENTERS: Tuple[Tuple[float, float], ...] = (
    (0.50, 0.85),
    (0.20, 0.75),
    (0.25, 0.25),
)


@dataclass(frozen=True)
class PoissonSpec:
    """Poisson point process over the unit square with exponential decay."""

    intensity: float = 100.0
    decay_scale: float = 0.15
    base_prob: float = 0.9
    seed: int = 0

    def __post_init__(self) -> None:
        if self.intensity <= 0.0:
            raise ValueError("intensity must be positive")
        _check_decay(self.decay_scale, self.base_prob)


@dataclass(frozen=True)
class ClusterSpec:
    """Gaussian clusters (clipped to the unit square) with exponential decay.

    The default centers sit north, north-west and south-west of the unit
    square's midpoint.
    """

    centers: Tuple[Tuple[float, float], ...] = DEFAULT_CLUSTER_CENTERS
    per_cluster_mean: float = 15.0
    spread: float = 0.05
    decay_scale: float = 0.10
    base_prob: float = 0.9
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.centers:
            raise ValueError("at least one cluster center is required")
        object.__setattr__(
            self, "centers", tuple((float(x), float(y)) for x, y in self.centers)
        )
        if self.per_cluster_mean <= 0.0:
            raise ValueError("per_cluster_mean must be positive")
        if self.spread <= 0.0:
            raise ValueError("spread must be positive")
        _check_decay(self.decay_scale, self.base_prob)


def _check_decay(decay_scale: float, base_prob: float) -> None:
    if decay_scale <= 0.0:
        raise ValueError("decay_scale must be positive")
    if not 0.0 < base_prob <= 1.0:
        raise ValueError("base_prob must be in (0, 1]")


def link_probability(distance: float, decay_scale: float, base_prob: float) -> float:
    """Connection probability base_prob * exp(-distance / decay_scale)."""
    return base_prob * math.exp(-distance / decay_scale)


def _decay_edges(
    coords: List[Tuple[float, float]],
    decay_scale: float,
    base_prob: float,
    rng: SplitMix64,
) -> List[Tuple[str, str]]:
    """One Bernoulli draw per unordered pair, in (i, j<i..n) index order."""
    edges = []
    n = len(coords)
    uniform = rng.uniform
    exp = math.exp
    for i in range(n):
        xi, yi = coords[i]
        for j in range(i + 1, n):
            dx = xi - coords[j][0]
            dy = yi - coords[j][1]
            p = base_prob * exp(-math.sqrt(dx * dx + dy * dy) / decay_scale)
            if uniform() < p:
                edges.append((f"n{i}", f"n{j}"))
    return edges


def _clip01(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else v


def generate_poisson(spec: PoissonSpec) -> SpatialNetwork:
    """Undirected planar network: Poisson(intensity) nodes uniform on
    [0,1]^2, pairs linked with probability link_probability(distance)."""
    rng = SplitMix64(spec.seed)
    n = rng.poisson(spec.intensity)
    coords = [(rng.uniform(), rng.uniform()) for _ in range(n)]
    edges = _decay_edges(coords, spec.decay_scale, spec.base_prob, rng)
    nodes = [(f"n{i}", x, y) for i, (x, y) in enumerate(coords)]
    return validate_network(nodes, edges, directed=False, geographic=False)


def generate_clustered(spec: ClusterSpec) -> SpatialNetwork:
    """Undirected planar network: per cluster, Poisson(per_cluster_mean)
    nodes at center + spread * N(0, I) clipped to the unit square; edges as
    in generate_poisson."""
    rng = SplitMix64(spec.seed)
    coords: List[Tuple[float, float]] = []
    for cx, cy in spec.centers:
        for _ in range(rng.poisson(spec.per_cluster_mean)):
            x = _clip01(cx + spec.spread * rng.gauss())
            y = _clip01(cy + spec.spread * rng.gauss())
            coords.append((x, y))
    edges = _decay_edges(coords, spec.decay_scale, spec.base_prob, rng)
    nodes = [(f"n{i}", x, y) for i, (x, y) in enumerate(coords)]
    return validate_network(nodes, edges, directed=False, geographic=False)
