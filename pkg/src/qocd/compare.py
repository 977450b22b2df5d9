"""Normalized mutual information between two coverings.

Each covering becomes a stack of binary membership rows (one per community,
singletons included). For every row of one covering we ask how well the best
admissible row of the other predicts it, measured by normalized conditional
entropy; candidates that match the complement better than the community
itself are inadmissible. The score is 1 minus the average normalized
conditional entropy taken in both directions: 1 exactly for identical
coverings up to label order, 0 when neither side tells us anything about the
other.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .communities import Covering


class PairEntropies(NamedTuple):
    """Joint and marginal entropy pieces of two binary membership rows."""

    h00: float
    h01: float
    h10: float
    h11: float
    hx: float
    hy: float


def _h(count: int | np.ndarray, n: int):
    """-p log2 p for p = count/n, elementwise, with h(0) = 0."""
    p = np.asarray(count, dtype=np.float64) / n
    scalar = p.ndim == 0
    p = np.atleast_1d(p)
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = -p[nz] * np.log2(p[nz])
    return float(out[0]) if scalar else out


def pair_entropies(row_x: Sequence[int], row_y: Sequence[int]) -> PairEntropies:
    """Empirical joint-cell and marginal entropies of two membership rows."""
    x = np.asarray(row_x, dtype=bool)
    y = np.asarray(row_y, dtype=bool)
    if x.shape != y.shape or x.ndim != 1 or len(x) == 0:
        raise ValueError("rows must be equal-length, non-empty 1-D vectors")
    n = len(x)
    n11 = int(np.count_nonzero(x & y))
    n10 = int(np.count_nonzero(x & ~y))
    n01 = int(np.count_nonzero(~x & y))
    n00 = n - n11 - n10 - n01
    return PairEntropies(
        h00=float(_h(n00, n)),
        h01=float(_h(n01, n)),
        h10=float(_h(n10, n)),
        h11=float(_h(n11, n)),
        hx=float(_h(n11 + n10, n)) + float(_h(n01 + n00, n)),
        hy=float(_h(n11 + n01, n)) + float(_h(n10 + n00, n)),
    )


def conditional_term(row_x: Sequence[int], rows_y: Sequence[Sequence[int]],
                     ) -> float:
    """Normalized conditional entropy of one row given a whole covering.

    The candidate rows are screened: a row predicting the complement of
    ``row_x`` better than ``row_x`` itself (joint diagonal entropy not
    exceeding the off-diagonal) is inadmissible. With no admissible
    candidate the row is treated as unexplained, giving 1. Rows with zero
    marginal entropy carry no uncertainty and contribute 0.
    """
    best = None
    hx = None
    for row_y in rows_y:
        pe = pair_entropies(row_x, row_y)
        hx = pe.hx
        if pe.h11 + pe.h00 > pe.h01 + pe.h10:
            h_cond = max(0.0, pe.h00 + pe.h01 + pe.h10 + pe.h11 - pe.hy)
            if best is None or h_cond < best:
                best = h_cond
    if hx is None:
        hx = pair_entropies(row_x, row_x).hx
    if hx == 0.0:
        return 0.0
    term = hx if best is None else best
    return min(1.0, term / hx)


def membership_matrix(covering: Covering,
                      node_order: Sequence[str] | None = None) -> np.ndarray:
    """Binary rows, one per community followed by one per singleton."""
    order = sorted(covering.universe) if node_order is None else list(node_order)
    index = {node: i for i, node in enumerate(order)}
    rows = len(covering.communities) + len(covering.singletons)
    matrix = np.zeros((rows, len(order)), dtype=bool)
    for r, comm in enumerate(covering.communities):
        for node in comm:
            matrix[r, index[node]] = True
    for r, node in enumerate(covering.singletons, start=len(covering.communities)):
        matrix[r, index[node]] = True
    return matrix


def _mean_conditional_terms(x_rows: np.ndarray, y_rows: np.ndarray) -> float:
    """Average normalized conditional entropy of X rows given Y rows."""
    n = x_rows.shape[1]
    n11 = x_rows.astype(np.int64) @ y_rows.astype(np.int64).T
    sx = x_rows.sum(axis=1, dtype=np.int64)
    sy = y_rows.sum(axis=1, dtype=np.int64)
    n10 = sx[:, None] - n11
    n01 = sy[None, :] - n11
    n00 = n - n11 - n10 - n01
    h11, h10, h01, h00 = _h(n11, n), _h(n10, n), _h(n01, n), _h(n00, n)
    hx = _h(sx, n) + _h(n - sx, n)
    hy = _h(sy, n) + _h(n - sy, n)
    h_cond = np.maximum((h11 + h10) + (h01 + h00) - hy[None, :], 0.0)
    admissible = (h11 + h00) > (h01 + h10)
    h_cond = np.where(admissible, h_cond, np.inf)
    best = h_cond.min(axis=1)
    term = np.where(np.isfinite(best), best, hx)
    denom = np.where(hx > 0, hx, 1.0)
    normalized = np.where(hx > 0, np.minimum(term / denom, 1.0), 0.0)
    return float(normalized.mean())


def nmi(c1: Covering, c2: Covering) -> float:
    """Normalized mutual information between two coverings of one universe."""
    if c1.universe != c2.universe:
        raise ValueError("coverings must share the same universe")
    if not c1.universe:
        raise ValueError("coverings must be non-empty")
    order = sorted(c1.universe)
    x_rows = membership_matrix(c1, order)
    y_rows = membership_matrix(c2, order)
    return 1.0 - 0.5 * (_mean_conditional_terms(x_rows, y_rows)
                        + _mean_conditional_terms(y_rows, x_rows))


def nmi_matrix(coverings: dict[str, Covering]) -> tuple[list[str], np.ndarray]:
    """Symmetric NMI matrix over a labeled family of coverings."""
    labels = sorted(coverings)
    size = len(labels)
    matrix = np.zeros((size, size))
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if j < i:
                continue
            value = nmi(coverings[a], coverings[b])
            matrix[i, j] = matrix[j, i] = value
    return labels, matrix
