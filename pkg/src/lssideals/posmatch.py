"""Positive matchings and pm-decompositions.

A matching M of a clutter H is positive when some vertex weighting makes
every edge of M strictly positive and every other edge strictly negative;
by scaling, the strict system is equivalent to sums >= 1 and <= -1, which
is what the exact rational solver below works with.  A pm-decomposition is
an ordered partition of the edges where each part is a positive matching
on the still-remaining edges; pmd(H) is the least number of parts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .feasibility import solve_inequalities
from .graphs import (
    Bipartition,
    Clutter,
    Graph,
    adjacency,
    bipartition,
    is_forest,
    max_degree,
    support,
)

EdgeT = tuple[int, ...]


class PmdBudgetExhausted(Exception):
    """Raised internally when the exact search runs out of its node budget."""


@dataclass(frozen=True)
class WeightCertificate:
    """Exact vertex weights certifying one part of a decomposition."""

    weights: tuple[tuple[int, Fraction], ...]

    @classmethod
    def of(cls, mapping) -> "WeightCertificate":
        return cls(tuple(sorted((int(v), Fraction(w)) for v, w in mapping.items())))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.weights)

    def edge_sum(self, edge) -> Fraction:
        d = dict(self.weights)
        return sum((d.get(v, Fraction(0)) for v in edge), Fraction(0))


@dataclass(frozen=True)
class PmDecomposition:
    parts: tuple[tuple[EdgeT, ...], ...]
    certificates: tuple[WeightCertificate, ...]

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class PmdResult:
    lower: int
    upper: int
    exact: bool
    decomposition: PmDecomposition | None
    nodes: int = 0

    @property
    def value(self) -> int | None:
        return self.upper if self.exact else None


def _as_clutter(H) -> Clutter:
    return H.as_clutter() if isinstance(H, Graph) else H


def _norm_part_edge(e) -> EdgeT:
    return tuple(sorted(set(map(int, e))))


def _disjoint(a: EdgeT, b: EdgeT) -> bool:
    return not (set(a) & set(b))


def _pairwise_disjoint(edges) -> bool:
    seen: set[int] = set()
    for e in edges:
        for v in e:
            if v in seen:
                return False
            seen.add(v)
    return True


# ---------------------------------------------------------------------------
# single positive matching


def _pm_feasible(M, others, n) -> dict[int, Fraction] | None:
    """Weights with sum >= 1 on M and <= -1 on others, or None.

    Shortcuts keep the solver off the hot path: the empty matching and single
    edges always work (any other edge has a vertex outside, by the antichain
    condition), and for graphs a pair of matched edges whose four endpoints
    carry two residual cross edges is refutable by adding up constraints.
    """
    M = list(M)
    if not M:
        return {v: Fraction(-1) for v in range(1, n + 1)}
    if len(M) == 1:
        big = Fraction(max(len(e) for e in others) + 1) if others else Fraction(2)
        w = {v: -big for v in range(1, n + 1)}
        for v in M[0]:
            w[v] = Fraction(1)
        return w
    if all(len(e) == 2 for e in M):
        other_set = set(others)
        for (a, b), (c, d) in itertools.combinations(M, 2):
            for x, y in (((a, c), (b, d)), ((a, d), (b, c))):
                e1 = (min(x), max(x))
                e2 = (min(y), max(y))
                if e1 in other_set and e2 in other_set:
                    return None
    rows = []
    mset = set(M)
    for A in M:
        row = [0] * (n + 1)
        for v in A:
            row[v - 1] = -1
        row[n] = -1
        rows.append(tuple(row))
    for B in others:
        if B in mset:
            continue
        row = [0] * (n + 1)
        for v in B:
            row[v - 1] = 1
        row[n] = -1
        rows.append(tuple(row))
    sol = solve_inequalities(rows, n)
    if sol is None:
        return None
    return {v: sol[v - 1] for v in range(1, n + 1)}


def is_positive_matching(H, M) -> WeightCertificate | None:
    """Certificate making M positive on H, or None (non-matchings get None)."""
    H = _as_clutter(H)
    M = [_norm_part_edge(e) for e in M]
    edge_set = set(H.edges)
    for e in M:
        if e not in edge_set:
            raise ValueError(f"{e} is not an edge of the clutter")
    if not _pairwise_disjoint(M):
        return None
    others = [e for e in H.sorted_edges() if e not in set(M)]
    w = _pm_feasible(M, others, H.n)
    return WeightCertificate.of(w) if w is not None else None


def is_positive_matching_bipartite(G: Graph, B: Bipartition, M) -> bool:
    """Orientation test: M edges left-to-right, the rest right-to-left; positive iff acyclic."""
    M = {_norm_part_edge(e) for e in M}
    for e in M:
        if e not in G.edges:
            raise ValueError(f"{e} is not an edge of the graph")
    if not _pairwise_disjoint(M):
        raise ValueError("M is not a matching")
    succ: dict[int, list[int]] = {v: [] for v in G.vertices()}
    for i, j in G.edges:
        left, right = (i, j) if i in B.left else (j, i)
        if left not in B.left or right not in B.right:
            raise ValueError("bipartition does not split every edge")
        if (min(i, j), max(i, j)) in M:
            succ[left].append(right)
        else:
            succ[right].append(left)
    state = {v: 0 for v in G.vertices()}  # 0 new, 1 active, 2 done
    for s in G.vertices():
        if state[s]:
            continue
        stack = [(s, iter(succ[s]))]
        state[s] = 1
        while stack:
            u, it = stack[-1]
            for w in it:
                if state[w] == 1:
                    return False
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(succ[w])))
                    break
            else:
                state[u] = 2
                stack.pop()
    return True


# ---------------------------------------------------------------------------
# decomposition verification


def pm_decomposition_defect(H, D: PmDecomposition) -> str | None:
    """First failure making D invalid for H, or None if it verifies."""
    H = _as_clutter(H)
    if len(D.parts) != len(D.certificates):
        return "certificate count does not match part count"
    all_edges = set(H.edges)
    listed = [tuple(sorted(set(e))) for part in D.parts for e in part]
    if len(listed) != len(set(listed)):
        return "parts overlap"
    if set(listed) != all_edges:
        return "parts do not cover the edge set exactly"
    residual = set(all_edges)
    for k, (part, cert) in enumerate(zip(D.parts, D.certificates), start=1):
        part_set = {tuple(sorted(set(e))) for e in part}
        if not _pairwise_disjoint(part_set):
            return f"part {k} is not a matching"
        for A in sorted(part_set):
            if cert.edge_sum(A) <= 0:
                return f"part {k}: edge {A} has weight sum {cert.edge_sum(A)} (needs > 0)"
        for B in sorted(residual - part_set):
            if cert.edge_sum(B) >= 0:
                return f"part {k}: residual edge {B} has weight sum {cert.edge_sum(B)} (needs < 0)"
        residual -= part_set
    return None


def verify_pm_decomposition(H, D: PmDecomposition) -> bool:
    """Exact check of the partition, matching, and strict sign conditions."""
    return pm_decomposition_defect(H, D) is None


# ---------------------------------------------------------------------------
# bounds


def pmd_bounds(G: Graph) -> tuple[int, int]:
    """(lower, upper) with lower = max degree; forests are exact."""
    if not G.edges:
        return (0, 0)
    delta = max_degree(G)
    if is_forest(G):
        return (delta, delta)
    nv = len(support(G))
    if bipartition(G) is not None:
        return (delta, min(nv - 1, G.m))
    return (delta, min(2 * nv - 3, G.m))


# ---------------------------------------------------------------------------
# greedy decompositions


def _incremental_certificate(n: int, residual, ordered_part) -> dict[int, Fraction]:
    """Weights for a part built edge by edge.

    ordered_part lists (edge, pivot) pairs; when an edge is added, its pivot
    vertex must sit in no other residual edge inside the touched vertex set,
    so raising the pivot weight keeps every earlier constraint intact while
    vertices outside the touched set are pushed far negative.
    """
    w = {v: Fraction(-1) for v in range(1, n + 1)}
    touched: set[int] = set()
    for edge, pivot in ordered_part:
        v1 = touched | set(edge)
        for B in residual:
            if pivot in B and set(B) <= v1 and tuple(B) != tuple(edge):
                raise ValueError(f"pivot {pivot} of {edge} is blocked by {tuple(B)}")
        w[pivot] = 1 - sum(w[i] for i in edge if i != pivot)
        big = 1 + n * max(max(abs(w[y]) for y in v1), Fraction(1))
        for x in range(1, n + 1):
            if x not in v1:
                w[x] = -big
        touched = v1
    return w


def _complete_slicing(n: int, labels: list[int]):
    """Parts for a complete graph on the given labels: pairs of equal index sum."""
    k = len(labels)
    parts = []
    for ell in range(1, 2 * k - 2):
        lo = max(1, ell + 2 - k)
        hi = (ell + 1) // 2
        part = [(i, ell + 2 - i) for i in range(hi, lo - 1, -1)]
        parts.append(part)
    out = []
    for ell, part in enumerate(parts, start=1):
        residual = [
            (labels[i - 1], labels[j - 1]) if labels[i - 1] < labels[j - 1]
            else (labels[j - 1], labels[i - 1])
            for i, j in itertools.combinations(range(1, k + 1), 2)
            if i + j >= ell + 2
        ]
        ordered = [
            (tuple(sorted((labels[i - 1], labels[j - 1]))), labels[i - 1])
            for i, j in part
        ]
        out.append((ordered, residual))
    return out


def _complete_bipartite_slicing(left: list[int], right: list[int]):
    """Parts for a complete bipartite graph: cross pairs of equal index sum."""
    m, n = len(left), len(right)
    out = []
    for ell in range(1, m + n):
        pairs = [
            (i, ell + 1 - i)
            for i in range(min(m, ell), max(1, ell + 1 - n) - 1, -1)
        ]
        ordered = [
            (tuple(sorted((left[i - 1], right[j - 1]))), left[i - 1]) for i, j in pairs
        ]
        residual = [
            tuple(sorted((left[i - 1], right[j - 1])))
            for i in range(1, m + 1)
            for j in range(1, n + 1)
            if i + j >= ell + 1
        ]
        out.append((ordered, residual))
    return out


def _forest_part_lists(G: Graph) -> list[list[EdgeT]]:
    """Max-degree many parts for a forest, built by leaf insertion."""
    edges = set(G.edges)
    deg: dict[int, int] = {}
    for i, j in edges:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1
    removal: list[tuple[int, int]] = []  # (other endpoint, leaf)
    live = set(edges)
    while live:
        leaf = max(v for v, d in deg.items() if d == 1)
        e = next(f for f in live if leaf in f)
        other = e[0] if e[1] == leaf else e[1]
        removal.append((other, leaf))
        live.remove(e)
        deg[leaf] -= 1
        deg[other] -= 1
        if deg[leaf] == 0:
            del deg[leaf]
        if deg[other] == 0:
            del deg[other]
    parts: list[list[EdgeT]] = []
    cur_deg: dict[int, int] = {}
    for other, leaf in reversed(removal):
        e = (min(other, leaf), max(other, leaf))
        du = cur_deg.get(other, 0)
        if du + 1 > len(parts):
            parts.append([e])
        else:
            covered = [{v for f in part for v in f} for part in parts]
            idx = next(k for k, cov in enumerate(covered) if other not in cov)
            parts[idx].append(e)
        cur_deg[other] = du + 1
        cur_deg[leaf] = cur_deg.get(leaf, 0) + 1
    return [sorted(p) for p in parts]


def greedy_pm_decomposition(H) -> PmDecomposition:
    """Decomposition with family slicings for complete and complete bipartite
    graphs, the leaf-insertion construction for forests, and otherwise a
    first-fit growth of positive matchings on the residual clutter."""
    H = _as_clutter(H)
    if not H.edges:
        return PmDecomposition((), ())
    n = H.n
    if H.is_uniform_graph():
        G = H.as_graph()
        sup = sorted(support(G))
        k = len(sup)
        if G.m == k * (k - 1) // 2 and k >= 2:
            sliced = _complete_slicing(n, sup)
            parts, certs = [], []
            for ordered, residual in sliced:
                w = _incremental_certificate(n, residual, ordered)
                parts.append(tuple(e for e, _ in ordered))
                certs.append(WeightCertificate.of(w))
            return PmDecomposition(tuple(parts), tuple(certs))
        bip = bipartition(G)
        if bip is not None:
            left = sorted(v for v in bip.left if v in set(sup))
            right = sorted(v for v in bip.right if v in set(sup))
            if left and right and G.m == len(left) * len(right):
                parts, certs = [], []
                for ordered, residual in _complete_bipartite_slicing(left, right):
                    w = _incremental_certificate(n, residual, ordered)
                    parts.append(tuple(e for e, _ in ordered))
                    certs.append(WeightCertificate.of(w))
                return PmDecomposition(tuple(parts), tuple(certs))
        if is_forest(G):
            part_lists = _forest_part_lists(G)
            residual = list(G.sorted_edges())
            parts, certs = [], []
            for plist in part_lists:
                w = _pm_feasible(plist, [e for e in residual if e not in set(plist)], n)
                assert w is not None, "forest part lost positivity"
                parts.append(tuple(plist))
                certs.append(WeightCertificate.of(w))
                residual = [e for e in residual if e not in set(plist)]
            return PmDecomposition(tuple(parts), tuple(certs))
    # general first-fit growth
    residual = list(H.sorted_edges())
    parts, certs = [], []
    while residual:
        M: list[EdgeT] = []
        cert: dict[int, Fraction] | None = None
        for e in residual:
            if M and not all(_disjoint(e, f) for f in M):
                continue
            trial = M + [e]
            w = _pm_feasible(trial, [f for f in residual if f not in set(trial)], n)
            if w is not None:
                M, cert = trial, w
        parts.append(tuple(M))
        certs.append(WeightCertificate.of(cert))
        residual = [e for e in residual if e not in set(M)]
    return PmDecomposition(tuple(parts), tuple(certs))


# ---------------------------------------------------------------------------
# exact pmd


def _automorphism_edge_perms(edges: list[EdgeT], n: int) -> list[tuple[int, ...]]:
    """Edge-index permutations induced by graph automorphisms (small n only)."""
    if n > 8 or not edges or any(len(e) != 2 for e in edges):
        return []
    index = {e: k for k, e in enumerate(edges)}
    eset = set(edges)
    perms = []
    for sigma in itertools.permutations(range(1, n + 1)):
        mapped = []
        ok = True
        for i, j in edges:
            a, b = sigma[i - 1], sigma[j - 1]
            f = (a, b) if a < b else (b, a)
            if f not in eset:
                ok = False
                break
            mapped.append(index[f])
        if ok:
            perms.append(tuple(mapped))
    return perms


def _max_matching_size(edges: tuple, memo: dict) -> int:
    if not edges:
        return 0
    if edges in memo:
        return memo[edges]
    if all(len(e) == 2 for e in edges):
        best = _max_matching_graph(edges)
    else:
        e = edges[0]
        best = _max_matching_size(edges[1:], memo)
        rest = tuple(f for f in edges[1:] if _disjoint(e, f))
        best = max(best, 1 + _max_matching_size(rest, memo))
    memo[edges] = best
    return best


def _max_matching_graph(edges: tuple) -> int:
    """Exact maximum matching of a 2-uniform edge list by bitmask DP."""
    verts = sorted({v for e in edges for v in e})
    pos = {v: k for k, v in enumerate(verts)}
    nbr: list[list[int]] = [[] for _ in verts]
    for a, b in edges:
        nbr[pos[a]].append(pos[b])
        nbr[pos[b]].append(pos[a])
    full = (1 << len(verts)) - 1
    memo: dict[int, int] = {}

    def rec(mask: int) -> int:
        if mask == full:
            return 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        k = 0
        while mask >> k & 1:
            k += 1
        best = rec(mask | 1 << k)
        for j in nbr[k]:
            if not mask >> j & 1:
                cand = 1 + rec(mask | 1 << k | 1 << j)
                if cand > best:
                    best = cand
        memo[mask] = best
        return best

    return rec(0)


class _ExactSearch:
    def __init__(self, H: Clutter, node_budget: int | None):
        self.n = H.n
        self.edges = list(H.sorted_edges())
        self.m = len(self.edges)
        self.node_budget = node_budget
        self.nodes = 0
        # enumeration work is metered too, so dense graphs with huge
        # matching counts hit the budget instead of stalling inside grow()
        self.ticks = 0
        self.tick_budget = None if node_budget is None else max(4096, node_budget * 64)
        self.edge_perms = _automorphism_edge_perms(self.edges, H.n)
        self.exact: dict[tuple, int] = {}
        self.failed: dict[tuple, int] = {}
        self.pm_cache: dict[tuple[frozenset, frozenset], bool] = {}
        self.nu_memo: dict = {}

    def tick(self):
        self.ticks += 1
        if self.tick_budget is not None and self.ticks > self.tick_budget:
            raise PmdBudgetExhausted()

    def canon(self, R: frozenset[int]) -> tuple:
        base = tuple(sorted(R))
        if not self.edge_perms:
            return base
        return min(tuple(sorted(p[i] for i in R)) for p in self.edge_perms)

    def lb(self, R: frozenset[int]) -> int:
        if not R:
            return 0
        counts: dict[int, int] = {}
        for i in R:
            for v in self.edges[i]:
                counts[v] = counts.get(v, 0) + 1
        delta = max(counts.values())
        nu = _max_matching_size(tuple(self.edges[i] for i in sorted(R)), self.nu_memo)
        return max(delta, -(-len(R) // nu))

    def positive(self, M: frozenset[int], R: frozenset[int]) -> bool:
        if len(M) <= 1:
            return True
        key = (M, R)
        hit = self.pm_cache.get(key)
        if hit is not None:
            return hit
        others = [self.edges[i] for i in sorted(R - M)]
        ans = _pm_feasible([self.edges[i] for i in sorted(M)], others, self.n) is not None
        self.pm_cache[key] = ans
        return ans

    def candidate_parts(self, R: frozenset[int]) -> list[frozenset[int]]:
        """Maximal positive matchings inside R, largest first."""
        idx = sorted(R)
        matchings: list[frozenset[int]] = []

        def grow(start: int, cur: list[int], verts: set[int]):
            self.tick()
            matchings.append(frozenset(cur))
            for pos in range(start, len(idx)):
                i = idx[pos]
                if verts & set(self.edges[i]):
                    continue
                cur.append(i)
                grow(pos + 1, cur, verts | set(self.edges[i]))
                cur.pop()

        grow(0, [], set())
        positives = [M for M in matchings if M and self.positive(M, R)]
        posset = set(positives)
        maximal = []
        for M in positives:
            verts = {v for i in M for v in self.edges[i]}
            extendable = False
            for i in idx:
                if i in M or (verts & set(self.edges[i])):
                    continue
                if (M | {i}) in posset:
                    extendable = True
                    break
            if not extendable:
                maximal.append(M)
        maximal.sort(key=lambda M: (-len(M), tuple(sorted(M))))
        return maximal

    def best_parts(self, R: frozenset[int], cap: int) -> int | None:
        """Least number of parts for R if it is <= cap, else None."""
        if not R:
            return 0
        if cap <= 0:
            return None
        lb = self.lb(R)
        if lb > cap:
            return None
        key = self.canon(R)
        if key in self.exact:
            val = self.exact[key]
            return val if val <= cap else None
        if self.failed.get(key, -1) >= cap:
            return None
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise PmdBudgetExhausted()
        best: int | None = None
        for M in self.candidate_parts(R):
            limit = (best - 2) if best is not None else (cap - 1)
            sub = self.best_parts(R - M, limit)
            if sub is not None:
                best = sub + 1
                if best == lb:
                    break
        if best is None:
            self.failed[key] = max(self.failed.get(key, -1), cap)
        else:
            self.exact[key] = best
        return best

    def rebuild(self, R: frozenset[int], target: int) -> list[frozenset[int]]:
        if not R:
            return []
        for M in self.candidate_parts(R):
            sub = self.best_parts(R - M, target - 1)
            if sub is not None and sub == target - 1:
                return [M] + self.rebuild(R - M, target - 1)
        raise AssertionError("rebuild failed to trace the optimal decomposition")


def exact_pmd(H, *, node_budget: int | None = None, max_parts: int | None = None) -> PmdResult:
    """Exact pmd by depth-first search over maximal positive matchings.

    Residual subproblems are memoized up to automorphisms of the input; the
    greedy decomposition seeds the upper bound.  With a node budget the
    search may stop early and report the interval found so far (exact=False);
    a part bound max_parts restricts how many parts are worth proving.
    """
    H = _as_clutter(H)
    greedy = greedy_pm_decomposition(H)
    upper = len(greedy.parts)
    if not H.edges:
        return PmdResult(0, 0, True, greedy)
    search = _ExactSearch(H, node_budget)
    full = frozenset(range(search.m))
    lower = search.lb(full)
    if upper == lower:
        return PmdResult(lower, upper, True, greedy)
    cap = upper - 1 if max_parts is None else min(upper - 1, max_parts)
    try:
        found = search.best_parts(full, cap)
    except PmdBudgetExhausted:
        return PmdResult(lower, upper, False, greedy, nodes=search.nodes)
    if found is None:
        if cap == upper - 1:
            return PmdResult(upper, upper, True, greedy, nodes=search.nodes)
        return PmdResult(max(lower, cap + 1), upper, False, greedy, nodes=search.nodes)
    search.ticks = 0
    try:
        part_sets = search.rebuild(full, found)
    except PmdBudgetExhausted:
        return PmdResult(found, upper, False, greedy, nodes=search.nodes)
    parts, certs = [], []
    residual = set(range(search.m))
    for M in part_sets:
        edges = tuple(search.edges[i] for i in sorted(M))
        others = [search.edges[i] for i in sorted(residual - M)]
        w = _pm_feasible(list(edges), others, search.n)
        assert w is not None, "optimal part lost positivity during rebuild"
        parts.append(edges)
        certs.append(WeightCertificate.of(w))
        residual -= M
    decomp = PmDecomposition(tuple(parts), tuple(certs))
    defect = pm_decomposition_defect(H, decomp)
    assert defect is None, f"exact search produced an invalid decomposition: {defect}"
    return PmdResult(found, found, True, decomp, nodes=search.nodes)
