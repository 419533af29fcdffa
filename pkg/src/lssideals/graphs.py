"""Finite simple graphs, clutters, and the subgraph queries the classifier relies on.

Vertices are labelled 1..n.  Everything here is exact and deterministic:
edges are kept as sorted tuples, iteration orders are canonical, and the
containment searches are plain backtracking (no isomorphism library).
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import lru_cache

Edge = tuple[int, int]


def _norm_edge(e) -> Edge:
    i, j = e
    i, j = int(i), int(j)
    if i == j:
        raise ValueError(f"loop edge {e!r} not allowed")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertex set {1, ..., n}."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"edge ({i},{j}) out of range 1..{self.n}")

    @classmethod
    def of(cls, n: int, edges=()) -> "Graph":
        return cls(n, frozenset(_norm_edge(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def as_clutter(self) -> "Clutter":
        return Clutter(self.n, frozenset(self.edges))


@dataclass(frozen=True)
class Clutter:
    """Antichain of nonempty vertex subsets of {1, ..., n} (edges as sorted tuples)."""

    n: int
    edges: frozenset[tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", frozenset(tuple(sorted(set(map(int, e)))) for e in self.edges)
        )
        for e in self.edges:
            if not e:
                raise ValueError("empty edge not allowed in a clutter")
            if e[0] < 1 or e[-1] > self.n:
                raise ValueError(f"edge {e} out of range 1..{self.n}")
        for a, b in itertools.combinations(self.edges, 2):
            if set(a) <= set(b) or set(b) <= set(a):
                raise ValueError(f"edges {a} and {b} violate the antichain condition")

    @classmethod
    def of(cls, n: int, edges) -> "Clutter":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.edges))

    def is_uniform_graph(self) -> bool:
        return all(len(e) == 2 for e in self.edges)

    def as_graph(self) -> Graph:
        if not self.is_uniform_graph():
            raise ValueError("clutter has an edge of size != 2")
        return Graph.of(self.n, self.edges)


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]


# ---------------------------------------------------------------------------
# named families


def complete_graph(n: int) -> Graph:
    """K_n."""
    return Graph.of(n, itertools.combinations(range(1, n + 1), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with left part 1..a and right part a+1..a+b."""
    if a < 0 or b < 0:
        raise ValueError("part sizes must be nonnegative")
    return Graph.of(a + b, ((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def crown_graph(d: int) -> Graph:
    """K_{d,d} minus a perfect matching; left part 1..d, right part d+1..2d."""
    if d < 1:
        raise ValueError("crown graph needs d >= 1")
    return Graph.of(
        2 * d, ((i, d + j) for i in range(1, d + 1) for j in range(1, d + 1) if i != j)
    )


def cycle_graph(n: int) -> Graph:
    """C_n for n >= 3."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.of(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def path_graph(n: int) -> Graph:
    """P_n: the path on n vertices."""
    if n < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph.of(n, [(i, i + 1) for i in range(1, n)])


def star_graph(b: int) -> Graph:
    """K_{1,b} with center 1."""
    return complete_bipartite(1, b)


_NAMED_RE = re.compile(r"^([KBCP])(\d+)(?:,(\d+))?$")


def named_graph(name: str) -> Graph:
    """Build a graph from a compact name: K5, K3,4, B4, C6, or P5."""
    m = _NAMED_RE.match(name.strip())
    if not m:
        raise ValueError(f"unrecognized graph name {name!r}")
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if kind == "K":
        return complete_bipartite(a, int(b)) if b is not None else complete_graph(a)
    if b is not None:
        raise ValueError(f"unrecognized graph name {name!r}")
    if kind == "B":
        return crown_graph(a)
    if kind == "C":
        return cycle_graph(a)
    return path_graph(a)


# ---------------------------------------------------------------------------
# basic queries


@lru_cache(maxsize=None)
def adjacency(G: Graph) -> tuple[frozenset[int], ...]:
    """Neighbor sets indexed by vertex (index 0 unused)."""
    nbrs: list[set[int]] = [set() for _ in range(G.n + 1)]
    for i, j in G.edges:
        nbrs[i].add(j)
        nbrs[j].add(i)
    return tuple(frozenset(s) for s in nbrs)


def degree(G: Graph, v: int) -> int:
    return len(adjacency(G)[v])


def max_degree(G) -> int:
    """Largest number of edges through a single vertex (graphs or clutters)."""
    counts: dict[int, int] = {}
    for e in G.edges:
        for v in e:
            counts[v] = counts.get(v, 0) + 1
    return max(counts.values(), default=0)


def support(G) -> frozenset[int]:
    """Vertices incident to at least one edge."""
    return frozenset(v for e in G.edges for v in e)


def is_matching(G) -> bool:
    """True iff the edge set is pairwise disjoint (works for graphs and clutters)."""
    seen: set[int] = set()
    for e in G.edges:
        for v in e:
            if v in seen:
                return False
            seen.add(v)
    return True


def is_forest(G: Graph) -> bool:
    """Cycle-freeness via union-find."""
    parent = list(range(G.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in sorted(G.edges):
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def is_connected(G: Graph, removed: frozenset[int] = frozenset()) -> bool:
    verts = [v for v in G.vertices() if v not in removed]
    if len(verts) <= 1:
        return True
    adj = adjacency(G)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def bipartition(G: Graph) -> Bipartition | None:
    """A two-coloring with every edge crossing, or None if an odd cycle exists."""
    color = [0] * (G.n + 1)
    adj = adjacency(G)
    for s in G.vertices():
        if color[s]:
            continue
        color[s] = 1
        queue = [s]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if color[w] == 0:
                    color[w] = -color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    left = frozenset(v for v in G.vertices() if color[v] == 1)
    return Bipartition(left, frozenset(G.vertices()) - left)


def complement(G: Graph) -> Graph:
    return Graph.of(
        G.n, (e for e in itertools.combinations(G.vertices(), 2) if e not in G.edges)
    )


def clique_number(G: Graph) -> int:
    """Exact maximum clique size by branch and bound."""
    adj = adjacency(G)
    order = sorted(G.vertices(), key=lambda v: -len(adj[v]))
    best = 1 if G.n >= 1 else 0

    def expand(clique_size: int, cands: list[int]) -> None:
        nonlocal best
        if clique_size + len(cands) <= best:
            return
        if not cands:
            best = max(best, clique_size)
            return
        for idx, v in enumerate(cands):
            if clique_size + len(cands) - idx <= best:
                return
            expand(clique_size + 1, [w for w in cands[idx + 1 :] if w in adj[v]])

    expand(0, order)
    return best


# ---------------------------------------------------------------------------
# cycle structure


def _biconnected_blocks(G: Graph) -> list[frozenset[Edge]]:
    """Edge sets of the biconnected blocks (Hopcroft-Tarjan, iterative)."""
    adj = adjacency(G)
    index = [0] * (G.n + 1)
    low = [0] * (G.n + 1)
    counter = itertools.count(1)
    blocks: list[frozenset[Edge]] = []
    estack: list[Edge] = []
    for root in G.vertices():
        if index[root]:
            continue
        stack: list[tuple[int, int, iter]] = [(root, 0, iter(sorted(adj[root])))]
        index[root] = low[root] = next(counter)
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                e = (min(u, w), max(u, w))
                if not index[w]:
                    estack.append(e)
                    index[w] = low[w] = next(counter)
                    stack.append((w, u, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if index[w] < index[u]:
                    estack.append(e)
                    low[u] = min(low[u], index[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= index[p]:
                    block: set[Edge] = set()
                    pe = (min(p, u), max(p, u))
                    while estack:
                        e = estack.pop()
                        block.add(e)
                        if e == pe:
                            break
                    if block:
                        blocks.append(frozenset(block))
    return blocks


def has_even_cycle(G: Graph) -> bool:
    """True iff some subgraph of G is a cycle of even length (>= 4)."""
    for block in _biconnected_blocks(G):
        if len(block) < 2:
            continue
        verts = sorted({v for e in block for v in e})
        sub = Graph.of(G.n, block)
        if bipartition(sub) is not None:
            # a bipartite block with a cycle only has even cycles
            if len(block) >= len(verts):
                return True
            continue
        if _even_cycle_in(adjacency(sub), verts):
            return True
    return False


def _even_cycle_in(adj, verts) -> bool:
    for s in verts:
        # simple paths from s through vertices > s; closing edge makes the cycle
        path = [s]
        on_path = {s}

        def dfs(u: int) -> bool:
            for w in sorted(adj[u]):
                if w == s and len(path) >= 4 and len(path) % 2 == 0:
                    return True
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    if dfs(w):
                        return True
                    path.pop()
                    on_path.remove(w)
            return False

        if dfs(s):
            return True
    return False


# ---------------------------------------------------------------------------
# containment searches (plain backtracking with degree pruning)


def contains_complete_bipartite(G: Graph, a: int, b: int) -> bool:
    """True iff G has disjoint vertex sets A, B with |A|=a, |B|=b and all of AxB present."""
    if a < 1 or b < 1:
        raise ValueError("part sizes must be positive")
    if a > b:
        a, b = b, a
    if a + b > G.n:
        return False
    adj = adjacency(G)
    good = [v for v in G.vertices() if len(adj[v]) >= b]
    for A in itertools.combinations(good, a):
        common: set[int] | None = None
        for v in A:
            common = set(adj[v]) if common is None else common & adj[v]
            if len(common) < b:
                break
        else:
            if len(common - set(A)) >= b:
                return True
    return False


def contains_crown(G: Graph, d: int) -> bool:
    """True iff G contains the crown graph on 2d vertices as a (not necessarily induced) subgraph."""
    if d < 1:
        raise ValueError("crown containment needs d >= 1")
    if 2 * d > G.n:
        return False
    if d == 1:
        return True  # two vertices, no required edges
    if d == 2:
        return any(
            set(e) & set(f) == set()
            for e, f in itertools.combinations(G.sorted_edges(), 2)
        )
    pattern = crown_graph(d)
    if G.m < pattern.m:
        return False
    padj = adjacency(pattern)
    gadj = adjacency(G)
    if sum(1 for v in G.vertices() if len(gadj[v]) >= d - 1) < 2 * d:
        return False
    # order pattern vertices so each new one sees many placed neighbors
    order: list[int] = [1]
    placed = {1}
    while len(order) < 2 * d:
        nxt = max(
            (v for v in pattern.vertices() if v not in placed),
            key=lambda v: (len(padj[v] & placed), -v),
        )
        order.append(nxt)
        placed.add(nxt)
    need_before = [padj[v] & set(order[:k]) for k, v in enumerate(order)]
    assign: dict[int, int] = {}
    used: set[int] = set()

    def place(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for cand in G.vertices():
            if cand in used or len(gadj[cand]) < d - 1:
                continue
            if all(assign[w] in gadj[cand] for w in need_before[k]):
                assign[v] = cand
                used.add(cand)
                if place(k + 1):
                    return True
                del assign[v]
                used.remove(cand)
        return False

    return place(0)


def connectivity_at_least(G: Graph, k: int) -> bool:
    """True iff G stays connected after deleting any k-1 vertices (needs n >= k+1)."""
    if k <= 0:
        return True
    if G.n <= k:
        raise ValueError(f"connectivity_at_least needs n >= k+1, got n={G.n}, k={k}")
    for removed in itertools.combinations(G.vertices(), k - 1):
        if not is_connected(G, frozenset(removed)):
            return False
    return True


# ---------------------------------------------------------------------------
# parsing and serialization


def graph_from_text(text: str) -> Graph:
    """Parse the line format: first line "n <count>", then one "i j" line per edge."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph description")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n" or not head[1].isdigit():
        raise ValueError(f"bad header line {lines[0]!r}, expected 'n <count>'")
    n = int(head[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValueError(f"bad edge line {ln!r}") from exc
    return Graph.of(n, edges)


def graph_to_text(G: Graph) -> str:
    lines = [f"n {G.n}"] + [f"{i} {j}" for i, j in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_from_json(data) -> Graph:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ValueError("graph JSON needs keys 'n' and 'edges'")
    return Graph.of(int(data["n"]), [tuple(e) for e in data["edges"]])


def graph_to_json(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def clutter_from_json(data) -> Clutter:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ValueError("clutter JSON needs keys 'n' and 'edges'")
    return Clutter(int(data["n"]), frozenset(tuple(e) for e in data["edges"]))


def clutter_to_json(H: Clutter) -> dict:
    return {"n": H.n, "edges": [list(e) for e in H.sorted_edges()]}
