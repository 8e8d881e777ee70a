"""Rate regions: generator sets, membership queries, and diagnostics.

Regions are stored purely by their generators (dominance-maximal exact
rational rate vectors), each with a witness cycle where one exists.
Membership of a vector means being dominated by a convex combination of
generators, decided by exact rational linear feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cycles import closed_path_rate, pareto_filter
from .exactlp import dominating_combination, max_symmetric_scale
from .network import Network, character, format_rate, is_binary, parse_rate
from .window import bit_position, block_from_rows, block_to_rows, build_window

__all__ = [
    "RegionDescription",
    "rate_of_closed_path",
    "region_from_cycles",
    "is_achievable",
    "achievability_certificate",
    "framed_region",
    "sandwich_check",
    "window_symmetric_rate",
    "region_regime",
    "region_to_json",
    "region_from_json",
]


@dataclass(frozen=True)
class RegionDescription:
    """V-representation of a region: pairwise non-dominated generators."""

    links: tuple[str, ...]
    T: int
    generators: tuple[tuple[Fraction, ...], ...]
    witnesses: tuple[tuple[int, ...] | None, ...]
    provenance: Mapping

    def __post_init__(self):
        if len(self.witnesses) != len(self.generators):
            raise ValueError("one witness slot per generator required")


def rate_of_closed_path(path: Sequence[int], T: int, num_links: int) -> tuple[Fraction, ...]:
    """Per-link activation average of a closed path, normalized per slot."""
    return closed_path_rate(path, T, num_links)


def region_regime(network: Network, T: int) -> str:
    """Whether cycle rates at this window length are achievable or only a bound."""
    dstar = character(network)
    exact = T >= dstar if is_binary(network) else T >= 2 * dstar
    return "exact" if exact else "outer-bound"


def _drop_convex_redundant(
    rates: list[tuple[Fraction, ...]]
) -> list[tuple[Fraction, ...]]:
    """Reduce to the unique irredundant generating set.

    A vector already dominated by a convex combination of the others adds
    nothing to the region; iterative removal is order-independent because
    extreme vectors can never become removable.
    """
    kept = list(rates)
    for rate in sorted(rates):
        if len(kept) <= 1:
            break
        others = [r for r in kept if r != rate]
        if dominating_combination(others, rate) is not None:
            kept = others
    return kept


def region_from_cycles(
    network: Network,
    cycles: Iterable[tuple[int, ...]],
    T: int,
    provenance: Mapping | None = None,
) -> RegionDescription:
    """Collapse a cycle set to the maximal rate vectors generating its hull."""
    num_links = len(network.links)
    kept = pareto_filter(cycles, T, num_links)
    by_rate: dict[tuple[Fraction, ...], tuple[int, ...]] = {}
    for cyc in kept:
        rate = closed_path_rate(cyc, T, num_links)
        if rate not in by_rate or cyc < by_rate[rate]:
            by_rate[rate] = cyc
    generators = tuple(sorted(_drop_convex_redundant(list(by_rate))))
    witnesses = tuple(by_rate[g] for g in generators)
    prov = dict(provenance or {})
    prov.setdefault("regime", region_regime(network, T))
    return RegionDescription(network.links, T, generators, witnesses, prov)


def achievability_certificate(
    region: RegionDescription, rate: Sequence[Fraction]
) -> list[Fraction] | None:
    if len(rate) != len(region.links):
        raise ValueError("rate dimension does not match region links")
    return dominating_combination(region.generators, tuple(Fraction(r) for r in rate))


def is_achievable(region: RegionDescription, rate: Sequence[Fraction]) -> bool:
    """Is the vector dominated by a convex combination of the generators?"""
    return achievability_certificate(region, rate) is not None


def framed_region(network: Network) -> RegionDescription:
    """Region of frame-synchronized scheduling.

    Its generators are the indicator vectors of the maximal independent
    sets of the static conflict structure; each one is witnessed by the
    constant schedule repeating that indicator.
    """
    zero_delays = {pair: 0 for pair in network.delays}
    static = Network(network.links, network.collisions, zero_delays)
    window = build_window(static, 1)
    indicators = window.maximal_independent_sets()
    generators = []
    witnesses = []
    for bits in sorted(indicators):
        rate = tuple(
            Fraction(int(row)) for row in block_to_rows(bits, len(network.links), 1)
        )
        generators.append(rate)
        witnesses.append((bits, bits))
    order = sorted(range(len(generators)), key=lambda i: generators[i])
    return RegionDescription(
        network.links,
        1,
        tuple(generators[i] for i in order),
        tuple(witnesses[i] for i in order),
        {"algorithm": "framed", "regime": "exact"},
    )


def sandwich_check(
    network: Network,
    T: int,
    inner: RegionDescription,
    outer: RegionDescription,
) -> bool:
    """True iff every inner generator is dominated within the outer region."""
    if inner.links != outer.links:
        raise ValueError("regions live on different link sets")
    return all(is_achievable(outer, g) for g in inner.generators)


def window_symmetric_rate(network: Network, T: int) -> Fraction:
    """Largest a with (a, ..., a) in the scaled window-region hull.

    Brute-forces the independent sets of the T-window, keeps their
    activation-count vectors, and maximizes the symmetric coordinate by
    exact LP under the T/(T+D*) guard-time factor.
    """
    window = build_window(network, T)
    num_links = len(network.links)
    row_masks = []
    for l in range(num_links):
        mask = 0
        for t in range(T):
            mask |= 1 << bit_position(l, t, num_links, T)
        row_masks.append(mask)
    sums = {
        tuple((bits & row_masks[l]).bit_count() for l in range(num_links))
        for bits in window.independent_sets()
    }
    # Dominated count vectors never help a >=-feasibility problem.
    loose = [
        s for s in sums
        if not any(s2 != s and all(a >= b for a, b in zip(s2, s)) for s2 in sums)
    ]
    vectors = [tuple(Fraction(v, T) for v in s) for s in sorted(loose)]
    dstar = character(network)
    return max_symmetric_scale(vectors, Fraction(T, T + dstar))


def region_to_json(region: RegionDescription) -> dict:
    num_links = len(region.links)
    gens = []
    for rate, witness in zip(region.generators, region.witnesses):
        entry: dict = {"rate": [format_rate(r) for r in rate]}
        if witness is not None:
            entry["witness"] = [
                block_to_rows(b, num_links, region.T) for b in witness
            ]
        gens.append(entry)
    return {
        "links": list(region.links),
        "T": region.T,
        "provenance": dict(region.provenance),
        "generators": gens,
    }


def region_from_json(doc: Mapping) -> RegionDescription:
    links = tuple(str(l) for l in doc["links"])
    T = int(doc["T"])
    generators = []
    witnesses = []
    for entry in doc["generators"]:
        generators.append(tuple(parse_rate(r) for r in entry["rate"]))
        witness = entry.get("witness")
        witnesses.append(
            tuple(block_from_rows(rows, T) for rows in witness)
            if witness is not None
            else None
        )
    return RegionDescription(
        links, T, tuple(generators), tuple(witnesses), dict(doc.get("provenance", {}))
    )
