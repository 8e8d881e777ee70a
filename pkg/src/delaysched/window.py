"""Finite window graphs and their (maximal) independent sets.

The infinite periodic hypergraph of a network lives on ``links x Z``; the
window graph is its induced subgraph on timeslots ``0..T-1``.  Assignments
(binary |L| x T matrices) are packed into ints, column-major, with link 0
as the most significant bit of each column and column 0 as the most
significant column.  Dominance is then a bitwise test and juxtaposition a
shift-or.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator

from .errors import CapExceededError
from .network import Network

__all__ = [
    "WindowGraph",
    "build_window",
    "bit_position",
    "block_from_rows",
    "block_to_rows",
    "brute_force_cap",
]

DEFAULT_CAP_BITS = 24


def brute_force_cap() -> int:
    env = os.environ.get("DELAYSCHED_CAP_BITS")
    return int(env) if env else DEFAULT_CAP_BITS


def bit_position(link_index: int, t: int, num_links: int, T: int) -> int:
    """Bit index (from LSB) of matrix entry ``(link, t)``."""
    return (T - 1 - t) * num_links + (num_links - 1 - link_index)


def block_from_rows(rows, T: int) -> int:
    """Pack per-link 0/1 strings (one per link, length T) into an int."""
    L = len(rows)
    bits = 0
    for l, row in enumerate(rows):
        if len(row) != T:
            raise ValueError(f"row {l} has length {len(row)}, expected {T}")
        for t, ch in enumerate(row):
            if ch == "1":
                bits |= 1 << bit_position(l, t, L, T)
            elif ch != "0":
                raise ValueError(f"row {l} has non-binary character {ch!r}")
    return bits


def block_to_rows(bits: int, num_links: int, T: int) -> list[str]:
    return [
        "".join(
            "1" if bits >> bit_position(l, t, num_links, T) & 1 else "0"
            for t in range(T)
        )
        for l in range(num_links)
    ]


@dataclass(frozen=True)
class WindowGraph:
    """Induced hypergraph on ``links x {0..T-1}`` with bitmask edge forms."""

    network: Network
    T: int
    hyperedges: tuple[tuple[tuple[str, int], frozenset[tuple[str, int]]], ...]
    masks: tuple[int, ...] = field(repr=False)

    @property
    def nbits(self) -> int:
        return len(self.network.links) * self.T

    def position(self, link: str, t: int) -> int:
        return bit_position(
            self.network.link_index(link), t, len(self.network.links), self.T
        )

    def is_independent(self, bits: int) -> bool:
        """No hyperedge has its source and all its targets active."""
        return all(bits & m != m for m in self.masks)

    def independent_sets(self) -> Iterator[int]:
        """Yield every independent assignment once, in ascending bit order."""
        if self.nbits > brute_force_cap():
            raise CapExceededError(
                f"{self.nbits} bits exceeds brute-force cap {brute_force_cap()}"
            )
        yield from self._independent_rec(self.nbits - 1, 0, self._masks_by_min())

    def _masks_by_min(self) -> list[list[int]]:
        by_min: list[list[int]] = [[] for _ in range(self.nbits)]
        for m in self.masks:
            low = (m & -m).bit_length() - 1
            by_min[low].append(m)
        return by_min

    def _independent_rec(self, p, cur, by_min) -> Iterator[int]:
        if p < 0:
            yield cur
            return
        yield from self._independent_rec(p - 1, cur, by_min)
        nxt = cur | (1 << p)
        # A constraint whose lowest bit is p is fully decided here.
        if all(nxt & m != m for m in by_min[p]):
            yield from self._independent_rec(p - 1, nxt, by_min)

    def maximal_independent_sets(self) -> list[int]:
        """All inclusion-maximal independent assignments, sorted.

        Binary profiles reduce to maximal cliques of the complement of the
        pairwise conflict graph (pivoted Bron-Kerbosch); general profiles
        use branch and bound with an explicit maximality certificate.
        """
        if all(m.bit_count() <= 2 for m in self.masks):
            out = self._maximal_binary()
        else:
            out = self._maximal_hyper()
        return sorted(out)

    def _maximal_binary(self) -> list[int]:
        n = self.nbits
        universe = (1 << n) - 1
        adj = [0] * n
        for m in self.masks:
            if m & (m - 1) == 0:
                # Self-conflicting vertex can never be active.
                universe &= ~m
                continue
            lo = (m & -m).bit_length() - 1
            hi = m.bit_length() - 1
            adj[lo] |= 1 << hi
            adj[hi] |= 1 << lo
        # Complement adjacency restricted to usable vertices.
        comp = [
            (universe & ~(adj[v] | (1 << v))) if universe >> v & 1 else 0
            for v in range(n)
        ]
        out: list[int] = []

        def expand(r: int, p: int, x: int):
            if p == 0 and x == 0:
                out.append(r)
                return
            pivot_pool = p | x
            pivot = -1
            best = -1
            pool = pivot_pool
            while pool:
                u = (pool & -pool).bit_length() - 1
                pool &= pool - 1
                score = (p & comp[u]).bit_count()
                if score > best:
                    best, pivot = score, u
            cand = p & ~comp[pivot]
            while cand:
                v = (cand & -cand).bit_length() - 1
                vbit = cand & -cand
                cand &= cand - 1
                expand(r | vbit, p & comp[v], x & comp[v])
                p &= ~vbit
                x |= vbit

        expand(0, universe, 0)
        return out

    def _maximal_hyper(self) -> list[int]:
        n = self.nbits
        by_member: list[list[int]] = [[] for _ in range(n)]
        for m in self.masks:
            mm = m
            while mm:
                v = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                by_member[v].append(m)
        out: list[int] = []

        def certify(bits: int) -> bool:
            for v in range(n):
                if bits >> v & 1:
                    continue
                flipped = bits | (1 << v)
                if all(flipped & m != m for m in by_member[v]):
                    return False
            return True

        def walk(p: int, cur: int):
            if p < 0:
                if certify(cur):
                    out.append(cur)
                return
            walk(p - 1, cur)
            nxt = cur | (1 << p)
            if all(nxt & m != m for m in by_member[p]):
                walk(p - 1, nxt)

        walk(n - 1, 0)
        return out


def build_window(network: Network, T: int) -> WindowGraph:
    """Materialize the induced window graph on timeslots ``0..T-1``.

    A hyperedge is kept only if its source and every target fall inside
    the window; edges reaching outside are dropped entirely, matching the
    induced-subgraph definition.
    """
    if T < 1:
        raise ValueError("window length must be >= 1")
    L = len(network.links)
    edges = set()
    for link in network.links:
        for phi in network.profile(link):
            offsets = {lp: network.delay(link, lp) for lp in phi}
            for t in range(T):
                targets = frozenset((lp, t + d) for lp, d in offsets.items())
                if all(0 <= tt < T for _, tt in targets):
                    edges.add(((link, t), targets))
    ordered = tuple(sorted(edges, key=lambda e: (e[0], sorted(e[1]))))
    masks = []
    for (src, targets) in ordered:
        m = 1 << bit_position(network.link_index(src[0]), src[1], L, T)
        for (lp, tt) in targets:
            m |= 1 << bit_position(network.link_index(lp), tt, L, T)
        masks.append(m)
    return WindowGraph(network, T, ordered, tuple(dict.fromkeys(masks)))
