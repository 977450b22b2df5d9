"""Entropy and transfer-entropy estimation on binary activity series.

Entropies are plug-in estimates in bits with the Miller-Madow bias
adjustment: H_adj = H_plugin + (observed_alphabet - 1) / (2n). Transfer
entropy from a source series y to a target series x at lag k is computed via
the joint-entropy decomposition

    TE = H[x_t, x_past] - H[x_past] - H[x_t, x_past, y_past] + H[x_past, y_past]

with each term adjusted using its own observed-alphabet count and the common
sample count n = T - k. A negative adjusted estimate is truncated to zero by
default; the raw value stays available via ``truncate=False``.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .activity import ActivitySeries
from .ingest import StructuralGraph


@dataclass(frozen=True)
class EntropyEstimate:
    """Plug-in and Miller-Madow entropy of one empirical distribution."""

    plugin: float
    miller_madow: float
    observed_alphabet: int
    samples: int


class WindowSample(NamedTuple):
    """One pooled sample: a future bit and the k-bit pasts of both series."""

    future: int
    x_past: tuple[int, ...]
    y_past: tuple[int, ...]


def plugin_entropy(symbols: Sequence | np.ndarray) -> EntropyEstimate:
    """Plug-in entropy (bits) of a discrete sample, with bias adjustment.

    Symbols may be anything hashable; frequencies are empirical.
    """
    counts = Counter(_iter_symbols(symbols))
    n = sum(counts.values())
    if n == 0:
        raise ValueError("no samples")
    probs = np.array(sorted(counts.values()), dtype=np.float64) / n
    plugin = float(-(probs * np.log2(probs)).sum())
    alphabet = len(counts)
    return EntropyEstimate(
        plugin=plugin,
        miller_madow=plugin + (alphabet - 1) / (2 * n),
        observed_alphabet=alphabet,
        samples=n,
    )


def _iter_symbols(symbols):
    if isinstance(symbols, np.ndarray):
        return (tuple(s) if isinstance(s, np.ndarray) else s.item()
                for s in symbols)
    return iter(symbols)


def as_bits(series: ActivitySeries | Sequence[int] | np.ndarray) -> np.ndarray:
    """Coerce an activity series or 0/1 sequence to a uint8 array."""
    bins = series.bins if isinstance(series, ActivitySeries) else series
    arr = np.asarray(bins)
    if arr.ndim != 1:
        raise ValueError("series must be one-dimensional")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("series values must be 0 or 1")
    return arr.astype(np.uint8)


def window_samples(x, y, k: int) -> list[WindowSample]:
    """Pool the n = T - k (future, x_past, y_past) windows of two series.

    Pooling across t is justified by assuming joint stationarity: the
    predictive distribution depends only on the past pattern, not on when it
    is observed.
    """
    xb, yb = as_bits(x), as_bits(y)
    if len(xb) != len(yb):
        raise ValueError(f"series lengths differ: {len(xb)} vs {len(yb)}")
    t_len = len(xb)
    if not 1 <= k < t_len:
        raise ValueError(f"lag k={k} must satisfy 1 <= k < T={t_len}")
    return [
        WindowSample(
            future=int(xb[t]),
            x_past=tuple(int(b) for b in xb[t - k:t]),
            y_past=tuple(int(b) for b in yb[t - k:t]),
        )
        for t in range(k, t_len)
    ]


def _past_codes(bits: np.ndarray, k: int) -> np.ndarray:
    """Pack each k-bit past window into an integer, one per sample."""
    t_len = len(bits)
    codes = np.zeros(t_len - k, dtype=np.int64)
    for j in range(1, k + 1):
        codes += bits[k - j:t_len - j].astype(np.int64) << (j - 1)
    return codes


def _entropy_from_codes(codes: np.ndarray, n: int) -> tuple[float, int]:
    """Plug-in entropy (bits) and observed-alphabet size of packed codes."""
    counts = np.bincount(codes)
    nz = counts[counts > 0]
    probs = nz / n
    return float(-(probs * np.log2(probs)).sum()), len(nz)


def transfer_entropy(x, y, k: int, truncate: bool = True) -> float:
    """Adjusted lag-k transfer entropy from source y to target x, in bits.

    x is the target (follower) series and y the source (followee) series.
    With ``truncate`` the estimate is floored at zero; otherwise the raw,
    possibly negative adjusted value is returned.
    """
    xb, yb = as_bits(x), as_bits(y)
    if len(xb) != len(yb):
        raise ValueError(f"series lengths differ: {len(xb)} vs {len(yb)}")
    t_len = len(xb)
    if not 1 <= k < t_len:
        raise ValueError(f"lag k={k} must satisfy 1 <= k < T={t_len}")
    xt = xb[k:].astype(np.int64)
    x_past = _past_codes(xb, k)
    y_past = _past_codes(yb, k)
    return _te_from_codes(xt, x_past, y_past, k, truncate)


def _te_from_codes(xt: np.ndarray, x_past: np.ndarray, y_past: np.ndarray,
                   k: int, truncate: bool) -> float:
    n = len(xt)
    h_xp, a_xp = _entropy_from_codes(x_past, n)
    h_xfp, a_xfp = _entropy_from_codes(xt + (x_past << 1), n)
    h_xyp, a_xyp = _entropy_from_codes(x_past + (y_past << k), n)
    h_xfyp, a_xfyp = _entropy_from_codes(xt + (x_past << 1) + (y_past << (k + 1)), n)
    raw = (h_xfp - h_xp - h_xfyp + h_xyp
           + (a_xfp - a_xp - a_xfyp + a_xyp) / (2 * n))
    if truncate and raw < 0.0:
        return 0.0
    return raw


def pairwise_transfer_entropy(graph: StructuralGraph,
                              series: dict[str, ActivitySeries],
                              k: int, truncate: bool = True,
                              threads: int = 1) -> dict[tuple[str, str], float]:
    """Transfer entropy along every follow edge, keyed by (followee, follower).

    The followee is the source and the follower the target, matching the
    direction information flows. Work is pure per edge, so the result is
    identical for any thread count.
    """
    for node in graph.nodes:
        if node not in series:
            raise ValueError(f"no activity series for node {node!r}")
    prepped: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    t_len = None
    for node in sorted(graph.nodes):
        bits = as_bits(series[node])
        if t_len is None:
            t_len = len(bits)
            if not 1 <= k < t_len:
                raise ValueError(f"lag k={k} must satisfy 1 <= k < T={t_len}")
        elif len(bits) != t_len:
            raise ValueError(f"series for node {node!r} has length "
                             f"{len(bits)}, expected {t_len}")
        prepped[node] = (bits[k:].astype(np.int64), _past_codes(bits, k))

    edges = sorted(graph.edges)

    def one(edge: tuple[str, str]) -> float:
        followee, follower = edge
        xt, x_past = prepped[follower]
        _, y_past = prepped[followee]
        return _te_from_codes(xt, x_past, y_past, k, truncate)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(one, edges))
    else:
        values = [one(e) for e in edges]
    return dict(zip(edges, values))


def lag_sweep(graph: StructuralGraph, series: dict[str, ActivitySeries],
              lags: Iterable[int] = range(1, 7), truncate: bool = True,
              threads: int = 1) -> dict[int, dict[tuple[str, str], float]]:
    """One pairwise transfer-entropy table per lag."""
    return {
        k: pairwise_transfer_entropy(graph, series, k, truncate=truncate,
                                     threads=threads)
        for k in lags
    }
