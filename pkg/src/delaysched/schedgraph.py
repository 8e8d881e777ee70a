"""Scheduling graphs: feasible time slabs and feasible slab transitions.

Vertices are the |L| x T blocks that some collision-free schedule can
exhibit as a slab; edges are the block pairs it can exhibit consecutively.
Because a hyperedge only fires when *all* of its endpoints are active,
padding with zeros outside a window removes every out-of-window collision
opportunity, so membership reduces to independence in the induced window
graphs: a block is a vertex iff it is independent in the T-window, and a
pair is an edge iff the juxtaposed 2T-window matrix is independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .network import Network
from .schedule import PeriodicSchedule
from .window import WindowGraph, build_window

__all__ = [
    "SchedulingGraph",
    "MaximalEdgeGraph",
    "is_vertex",
    "has_edge",
    "build",
    "build_maximal",
    "schedule_is_path",
    "split_pair",
    "join_pair",
]


def split_pair(pair_bits: int, nbits: int) -> tuple[int, int]:
    """Split a juxtaposed 2T-window int into (left, right) T-blocks."""
    return pair_bits >> nbits, pair_bits & ((1 << nbits) - 1)


def join_pair(a: int, b: int, nbits: int) -> int:
    return (a << nbits) | b


@dataclass(frozen=True)
class SchedulingGraph:
    """Explicit vertex and adjacency representation for one window length."""

    network: Network
    T: int
    vertices: tuple[int, ...]
    adjacency: Mapping[int, tuple[int, ...]]

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.adjacency.values())

    def edges(self):
        for a in self.vertices:
            for b in self.adjacency[a]:
                yield a, b


@dataclass(frozen=True)
class MaximalEdgeGraph:
    """Dominance-maximal edges and their endpoint projections.

    The maximal edges are exactly the maximal independent sets of the
    doubled window, split into left/right halves.
    """

    network: Network
    T: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def successors(self, block: int) -> tuple[int, ...]:
        return tuple(b for a, b in self.edges if a == block)


def is_vertex(network: Network, block: int, T: int, window: WindowGraph | None = None) -> bool:
    window = window or build_window(network, T)
    return window.is_independent(block)


def has_edge(
    network: Network,
    a: int,
    b: int,
    T: int,
    double_window: WindowGraph | None = None,
) -> bool:
    double_window = double_window or build_window(network, 2 * T)
    nbits = len(network.links) * T
    return double_window.is_independent(join_pair(a, b, nbits))


def build(network: Network, T: int) -> SchedulingGraph:
    """Materialize the scheduling graph (within the brute-force cap)."""
    single = build_window(network, T)
    double = build_window(network, 2 * T)
    nbits = single.nbits
    vertices = tuple(single.independent_sets())
    adjacency = {}
    for a in vertices:
        shifted = a << nbits
        adjacency[a] = tuple(
            b for b in vertices if double.is_independent(shifted | b)
        )
    return SchedulingGraph(network, T, vertices, adjacency)


def build_maximal(network: Network, T: int) -> MaximalEdgeGraph:
    """Compute the maximal edges via the doubled window's maximal sets."""
    double = build_window(network, 2 * T)
    nbits = len(network.links) * T
    pairs = sorted(split_pair(m, nbits) for m in double.maximal_independent_sets())
    left = tuple(sorted({a for a, _ in pairs}))
    right = tuple(sorted({b for _, b in pairs}))
    return MaximalEdgeGraph(network, T, left, right, tuple(pairs))


def schedule_is_path(network: Network, s: PeriodicSchedule, T: int) -> bool:
    """Do the schedule's consecutive T-slabs all form scheduling-graph edges?

    The slab sequence has period lcm(P, T) / T, so checking one full slab
    period covers the whole schedule.
    """
    double = build_window(network, 2 * T)
    num_links = len(network.links)
    nbits = num_links * T
    slabs = math.lcm(s.period, T) // T
    for k in range(slabs):
        a = s.slab(T, k, num_links)
        b = s.slab(T, k + 1, num_links)
        if not double.is_independent(join_pair(a, b, nbits)):
            return False
    return True
