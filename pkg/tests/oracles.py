"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written the slow, obvious way (explicit
tuples, Counter, math.log2) and shares no code with the package internals.
"""

import math
from collections import Counter


def mm_entropy(symbols) -> float:
    """Plug-in entropy in bits plus the (A - 1) / 2n bias adjustment."""
    counts = Counter(symbols)
    n = sum(counts.values())
    h = -sum((c / n) * math.log2(c / n) for c in counts.values())
    return h + (len(counts) - 1) / (2 * n)


def brute_force_te(x, y, k: int) -> float:
    """Adjusted transfer entropy via the two-conditional-entropy form.

    Each conditional entropy is a difference of adjusted joint and marginal
    entropies over explicitly materialized past tuples.
    """
    x = [int(v) for v in x]
    y = [int(v) for v in y]
    fut, x_past, y_past = [], [], []
    for t in range(k, len(x)):
        fut.append(x[t])
        x_past.append(tuple(x[t - k:t]))
        y_past.append(tuple(y[t - k:t]))
    h_own = mm_entropy(list(zip(fut, x_past))) - mm_entropy(x_past)
    h_joint = (mm_entropy(list(zip(fut, x_past, y_past)))
               - mm_entropy(list(zip(x_past, y_past))))
    return h_own - h_joint


def _h(count: int, n: int) -> float:
    if count <= 0:
        return 0.0
    p = count / n
    return -p * math.log2(p)


def covering_rows(covering) -> list[tuple[int, ...]]:
    """Binary membership rows (communities then singletons) of a covering."""
    order = sorted(covering.universe)
    rows = []
    for comm in covering.communities:
        rows.append(tuple(1 if node in comm else 0 for node in order))
    for node in covering.singletons:
        rows.append(tuple(1 if other == node else 0 for other in order))
    return rows


def _row_term(row, others) -> float:
    n = len(row)
    ones = sum(row)
    hx = _h(ones, n) + _h(n - ones, n)
    if hx == 0.0:
        return 0.0
    best = None
    for other in others:
        n11 = sum(1 for a, b in zip(row, other) if a and b)
        n10 = sum(1 for a, b in zip(row, other) if a and not b)
        n01 = sum(1 for a, b in zip(row, other) if not a and b)
        n00 = n - n11 - n10 - n01
        if _h(n11, n) + _h(n00, n) > _h(n01, n) + _h(n10, n):
            joint = _h(n11, n) + _h(n10, n) + _h(n01, n) + _h(n00, n)
            hy = _h(n11 + n01, n) + _h(n10 + n00, n)
            cond = max(0.0, joint - hy)
            if best is None or cond < best:
                best = cond
    term = hx if best is None else best
    return min(1.0, term / hx)


def reference_nmi(c1, c2) -> float:
    """Direct, loop-based evaluation of the covering NMI."""
    rows_x = covering_rows(c1)
    rows_y = covering_rows(c2)
    tx = sum(_row_term(r, rows_y) for r in rows_x) / len(rows_x)
    ty = sum(_row_term(r, rows_x) for r in rows_y) / len(rows_y)
    return 1.0 - 0.5 * (tx + ty)


def reachable(edges, start) -> set:
    """Nodes reachable from start by BFS over a directed edge set."""
    adjacency = {}
    for v, u in edges:
        adjacency.setdefault(v, set()).add(u)
    seen = {start}
    queue = [start]
    while queue:
        node = queue.pop()
        for nxt in adjacency.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def brute_force_sccs(nodes, edges) -> list[frozenset]:
    """Strongly connected components via pairwise mutual reachability."""
    nodes = sorted(nodes)
    reach = {v: reachable(edges, v) for v in nodes}
    components = []
    assigned = set()
    for v in nodes:
        if v in assigned:
            continue
        comp = frozenset(u for u in nodes if u in reach[v] and v in reach[u])
        components.append(comp)
        assigned |= comp
    return components
