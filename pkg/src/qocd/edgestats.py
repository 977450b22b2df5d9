"""Edge partitioning by covering and conditional weight statistics.

Given a covering, every directed edge falls in exactly one class: inter
(endpoints share no community), intra (identical membership sets), or mixed
(some but not all shared). Singleton memberships participate like any other,
so two distinct singletons always make an inter-edge. Weight distributions
conditioned on the class are summarized by counts, medians, fixed-width
histograms, and raw CCDF points so plots need not depend on binning.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .communities import Covering
from .weighting import WeightedDigraph


class EdgeClass(enum.Enum):
    INTER = "inter"
    INTRA = "intra"
    MIXED = "mixed"


def classify_edge(mu: frozenset, mf: frozenset) -> EdgeClass:
    """Classify an edge from its endpoints' membership-id sets."""
    if not mu or not mf:
        raise ValueError("membership sets must be non-empty")
    if not mu & mf:
        return EdgeClass.INTER
    if mu == mf:
        return EdgeClass.INTRA
    return EdgeClass.MIXED


def partition_edges(wg: WeightedDigraph, covering: Covering,
                    ) -> dict[tuple[str, str], EdgeClass]:
    """Class of every edge of the graph under the covering."""
    if not wg.nodes <= covering.universe:
        missing = sorted(wg.nodes - covering.universe)[0]
        raise ValueError(f"node {missing!r} has no covering membership")
    memberships = covering.all_memberships()
    return {
        (v, u): classify_edge(memberships[v], memberships[u])
        for v, u in wg.edges
    }


@dataclass(frozen=True)
class ClassStats:
    """Summary of the weights of one edge class."""

    count: int
    median: float | None
    histogram: tuple[np.ndarray, np.ndarray] | None  # (bin_edges, counts)
    ccdf: tuple[tuple[float, float], ...]  # (w, fraction strictly above w)


@dataclass(frozen=True)
class ConditionalWeightReport:
    scheme: str
    per_class: dict[EdgeClass, ClassStats]

    def to_summary(self) -> dict:
        out = {"scheme": self.scheme, "classes": {}}
        for cls in EdgeClass:
            stats = self.per_class[cls]
            entry = {"count": stats.count, "median": stats.median}
            if stats.histogram is not None:
                edges, counts = stats.histogram
                entry["histogram"] = {
                    "bin_edges": [float(e) for e in edges],
                    "counts": [int(c) for c in counts],
                }
            entry["ccdf"] = [[w, p] for w, p in stats.ccdf]
            out["classes"][cls.value] = entry
        return out


def median_low(values) -> float:
    """Median taking the lower of the two middle values for even counts."""
    ordered = sorted(values)
    if not ordered:
        raise ValueError("no values")
    return ordered[(len(ordered) - 1) // 2]


def weight_ccdf(values) -> tuple[tuple[float, float], ...]:
    """(w, fraction of values strictly greater than w) per distinct value."""
    arr = np.sort(np.asarray(list(values), dtype=np.float64))
    n = len(arr)
    if n == 0:
        return ()
    points = []
    for w in np.unique(arr):
        above = int(np.count_nonzero(arr > w))
        points.append((float(w), above / n))
    return tuple(points)


def conditional_weights(wg: WeightedDigraph,
                        classes: dict[tuple[str, str], EdgeClass],
                        bins: int = 50) -> ConditionalWeightReport:
    """Count, median, histogram, and CCDF of weights per edge class.

    Histograms share bin edges across classes (equal-width over the full
    observed weight range) so the three distributions are comparable.
    """
    missing = set(wg.edges) - set(classes)
    if missing:
        v, u = sorted(missing)[0]
        raise ValueError(f"edge ({v!r}, {u!r}) has no class")
    grouped: dict[EdgeClass, list[float]] = {cls: [] for cls in EdgeClass}
    for edge, cls in classes.items():
        grouped[cls].append(wg.weights[edge])
    all_weights = [w for ws in grouped.values() for w in ws]
    if all_weights:
        lo, hi = min(all_weights), max(all_weights)
        if lo == hi:
            hi = lo + 1.0
        edges = np.linspace(lo, hi, bins + 1)
    else:
        edges = None
    per_class = {}
    for cls, ws in grouped.items():
        if ws:
            hist = np.histogram(ws, bins=edges)[0] if edges is not None else None
            per_class[cls] = ClassStats(
                count=len(ws),
                median=median_low(ws),
                histogram=(edges, hist) if hist is not None else None,
                ccdf=weight_ccdf(ws),
            )
        else:
            per_class[cls] = ClassStats(count=0, median=None, histogram=None,
                                        ccdf=())
    return ConditionalWeightReport(scheme=wg.scheme, per_class=per_class)


def size_ccdf(covering: Covering) -> list[tuple[int, float]]:
    """(s, fraction of non-singleton communities larger than s) per size."""
    sizes = np.asarray(sorted(len(c) for c in covering.communities))
    total = len(sizes)
    if total == 0:
        return []
    out = []
    for s in np.unique(sizes):
        above = int(np.count_nonzero(sizes > s))
        out.append((int(s), above / total))
    return out
