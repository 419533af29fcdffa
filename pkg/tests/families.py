"""Exhaustive small-graph families for the acceptance sweeps: isomorphism
class representatives, unlabeled trees, bipartite graphs by edge count, and
matching enumeration."""

import itertools

from lssideals.graphs import Graph


def graph_iso_classes(n: int) -> list[Graph]:
    """One representative per isomorphism class of graphs on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    pos = {p: k for k, p in enumerate(pairs)}
    tables = []
    for pi in itertools.permutations(range(n)):
        tables.append([pos[tuple(sorted((pi[a], pi[b])))] for a, b in pairs])
    seen: set[int] = set()
    reps = []
    for mask in range(1 << len(pairs)):
        if mask in seen:
            continue
        reps.append(mask)
        for tab in tables:
            img, rem = 0, mask
            while rem:
                low = rem & -rem
                img |= 1 << tab[low.bit_length() - 1]
                rem ^= low
            seen.add(img)
    return [
        Graph.of(n, [(pairs[k][0] + 1, pairs[k][1] + 1) for k in range(len(pairs)) if mask >> k & 1])
        for mask in reps
    ]


def _tree_certificate(adj: dict[int, set[int]]) -> str:
    """Canonical string: AHU encoding rooted at the tree's center(s)."""

    def encode(v, parent):
        return "(" + "".join(sorted(encode(w, v) for w in adj[v] if w != parent)) + ")"

    verts = set(adj)
    if len(verts) == 1:
        return "()"
    degree = {v: len(adj[v]) for v in verts}
    leaves = [v for v in verts if degree[v] <= 1]
    remaining = len(verts)
    while remaining > 2:
        nxt = []
        for v in leaves:
            remaining -= 1
            for w in adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
            degree[v] = 0
        leaves = nxt
    centers = [v for v in verts if degree[v] >= 1] or list(verts)
    return min(encode(c, None) for c in centers)


def all_trees(n: int) -> list[Graph]:
    """Unlabeled trees on exactly n vertices, grown by leaf attachment."""
    if n < 1:
        return []
    level = [{1: set()}]
    for size in range(2, n + 1):
        seen = set()
        nxt = []
        for adj in level:
            for v in list(adj):
                grown = {u: set(nb) for u, nb in adj.items()}
                grown[size] = {v}
                grown[v].add(size)
                cert = _tree_certificate(grown)
                if cert not in seen:
                    seen.add(cert)
                    nxt.append(grown)
        level = nxt
    out = []
    for adj in level:
        edges = {(min(u, v), max(u, v)) for u in adj for v in adj[u]}
        out.append(Graph.of(n, sorted(edges)))
    return out


def bipartite_classes(max_edges: int) -> list[tuple[Graph, frozenset[int], frozenset[int]]]:
    """Bipartite graphs with 1..max_edges edges and no isolated vertices, one
    per class up to row/column relabeling, with the construction's two sides.

    A graph is a multiset of nonzero column bitmasks over `a` rows; the DFS
    emits multisets in a fixed sorted order and marks every row permutation
    of a new class as seen, so later permuted copies are skipped cheaply.
    """
    out = []
    for a in range(1, max_edges + 1):
        cols_all = sorted(range(1, 1 << a), key=lambda m: (m.bit_count(), m))
        weights = [m.bit_count() for m in cols_all]
        full = (1 << a) - 1
        remaps = []
        for pi in itertools.permutations(range(a)):
            remaps.append(
                {m: sum(1 << pi[b] for b in range(a) if m >> b & 1) for m in cols_all}
            )
        seen: set[tuple[int, ...]] = set()
        sort_key = lambda m: (m.bit_count(), m)

        def emit(cols):
            key = tuple(cols)
            if key in seen:
                return
            for rm in remaps:
                seen.add(tuple(sorted((rm[c] for c in cols), key=sort_key)))
            edges = []
            for j, c in enumerate(cols):
                for i in range(a):
                    if c >> i & 1:
                        edges.append((i + 1, a + j + 1))
            G = Graph.of(a + len(cols), edges)
            left = frozenset(range(1, a + 1))
            right = frozenset(range(a + 1, a + len(cols) + 1))
            out.append((G, left, right))

        def dfs(start, cols, weight, cover):
            if cols and cover == full:
                emit(cols)
            for k in range(start, len(cols_all)):
                w = weights[k]
                if weight + w > max_edges:
                    break
                missing = (full & ~(cover | cols_all[k])).bit_count()
                if weight + w + missing > max_edges:
                    continue
                cols.append(cols_all[k])
                dfs(k, cols, weight + w, cover | cols_all[k])
                cols.pop()

        dfs(0, [], 0, 0)
    return out


def all_matchings(G: Graph) -> list[list[tuple[int, int]]]:
    """Every matching of G, the empty one included."""
    edges = list(G.sorted_edges())
    out = [[]]

    def dfs(start, cur, used):
        for k in range(start, len(edges)):
            i, j = edges[k]
            if used & (1 << i) or used & (1 << j):
                continue
            cur.append(edges[k])
            out.append(list(cur))
            dfs(k + 1, cur, used | (1 << i) | (1 << j))
            cur.pop()

    dfs(0, [], 0)
    return out
