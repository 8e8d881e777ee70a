"""Periodic schedules, collision checking and exact rate vectors.

A schedule assigns each link an activity bit per timeslot over all of Z;
only periodic schedules are representable, so the activity of ``(l, t)``
is read from column ``t mod P``.  Rates are exact rationals: the limit
defining a link's rate collapses, for a periodic schedule, to the count
of collision-free active slots in one period over the period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .network import Network, character, is_binary
from .window import bit_position

__all__ = [
    "PeriodicSchedule",
    "is_collision_free_at",
    "verify",
    "rate_vector",
    "build_framed_schedule",
    "schedule_from_closed_path",
    "schedule_from_json",
    "schedule_to_json",
]


@dataclass(frozen=True)
class PeriodicSchedule:
    """Binary |L| x P matrix interpreted over all integer time."""

    period: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        for row in self.rows:
            if len(row) != self.period:
                raise ValueError("row length does not match period")

    def active(self, link_index: int, t: int) -> int:
        return self.rows[link_index][t % self.period]

    def slab(self, T: int, k: int, num_links: int) -> int:
        """Pack columns ``kT .. (k+1)T - 1`` into a block int."""
        bits = 0
        for l in range(num_links):
            for j in range(T):
                if self.active(l, k * T + j):
                    bits |= 1 << bit_position(l, j, num_links, T)
        return bits


def is_collision_free_at(network: Network, s: PeriodicSchedule, link: str, t: int) -> bool:
    """True iff every collision set of ``link`` has an inactive member at its offset."""
    for phi in network.profile(link):
        if all(
            s.active(network.link_index(lp), t + network.delay(link, lp))
            for lp in phi
        ):
            return False
    return True


def verify(network: Network, s: PeriodicSchedule) -> bool:
    """Collision-free over all of Z; by periodicity one period suffices."""
    for li, link in enumerate(network.links):
        for t in range(s.period):
            if s.rows[li][t] and not is_collision_free_at(network, s, link, t):
                return False
    return True


def rate_vector(network: Network, s: PeriodicSchedule) -> tuple[Fraction, ...]:
    """Per-link fraction of timeslots that are active and collision free."""
    rates = []
    for li, link in enumerate(network.links):
        good = sum(
            1
            for t in range(s.period)
            if s.rows[li][t] and is_collision_free_at(network, s, link, t)
        )
        rates.append(Fraction(good, s.period))
    return tuple(rates)


def _static_independent(network: Network, linkset: frozenset[str]) -> bool:
    return not any(
        phi <= linkset for l in linkset for phi in network.profile(l)
    )


def build_framed_schedule(
    network: Network,
    frames: Sequence[tuple[Iterable[str], int]],
    T_F: int,
) -> PeriodicSchedule:
    """Frame-synchronized schedule: guard slots silence the last D* slots.

    Each entry ``(links, repeats)`` contributes ``repeats`` frames in which
    exactly those links are active for the first ``T_F - D*`` slots.  The
    frame length must be at least ``2 D* + 1`` for binary profiles and
    ``3 D* + 1`` otherwise, and every frame's link set must be independent
    in the static conflict structure; both are enforced.
    """
    dstar = character(network)
    minimum = 2 * dstar + 1 if is_binary(network) else 3 * dstar + 1
    if T_F < minimum:
        raise ValueError(f"frame length {T_F} below minimum {minimum}")
    total_frames = sum(max(0, int(rep)) for _, rep in frames)
    if total_frames == 0:
        raise ValueError("frame list has no repeats")
    period = T_F * total_frames
    rows = [[0] * period for _ in network.links]
    frame_no = 0
    for links, repeats in frames:
        linkset = frozenset(links)
        unknown = linkset - set(network.links)
        if unknown:
            raise ValueError(f"frame references unknown links {sorted(unknown)}")
        if not _static_independent(network, linkset):
            raise ValueError(f"frame link set {sorted(linkset)} is not independent")
        for _ in range(int(repeats)):
            base = frame_no * T_F
            for link in linkset:
                li = network.link_index(link)
                for j in range(T_F - dstar):
                    rows[li][base + j] = 1
            frame_no += 1
    return PeriodicSchedule(period, tuple(tuple(r) for r in rows))


def schedule_from_closed_path(path: Sequence[int], T: int, num_links: int) -> PeriodicSchedule:
    """Period ``k*T`` schedule whose i-th length-T slab is the i-th block.

    ``path`` is a closed block sequence (first equals last); the closing
    block is not repeated in the period.
    """
    if len(path) < 2:
        raise ValueError("closed path needs at least two entries")
    if path[0] != path[-1]:
        raise ValueError("path is not closed")
    k = len(path) - 1
    period = k * T
    rows = [[0] * period for _ in range(num_links)]
    for i, block in enumerate(path[:-1]):
        for l in range(num_links):
            for j in range(T):
                if block >> bit_position(l, j, num_links, T) & 1:
                    rows[l][i * T + j] = 1
    return PeriodicSchedule(period, tuple(tuple(r) for r in rows))


def schedule_to_json(network: Network, s: PeriodicSchedule) -> dict:
    return {
        "period": s.period,
        "active": {
            link: [t for t in range(s.period) if s.rows[li][t]]
            for li, link in enumerate(network.links)
            if any(s.rows[li])
        },
    }


def schedule_from_json(network: Network, doc: Mapping) -> PeriodicSchedule:
    period = doc["period"]
    if not isinstance(period, int) or period < 1:
        raise ValueError(f"bad period {period!r}")
    rows = [[0] * period for _ in network.links]
    for link, slots in doc.get("active", {}).items():
        li = network.link_index(link)
        for t in slots:
            rows[li][t % period] = 1
    return PeriodicSchedule(period, tuple(tuple(r) for r in rows))
