import itertools
import random

import pytest

from lssideals.graphs import (
    Clutter,
    Graph,
    bipartition,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    max_degree,
    path_graph,
    star_graph,
    support,
)
from lssideals.posmatch import (
    PmDecomposition,
    WeightCertificate,
    _pm_feasible,
    exact_pmd,
    greedy_pm_decomposition,
    is_positive_matching,
    is_positive_matching_bipartite,
    pm_decomposition_defect,
    pmd_bounds,
    verify_pm_decomposition,
)


def random_graph(rng, n, lo=0, hi=None):
    pool = list(itertools.combinations(range(1, n + 1), 2))
    hi = len(pool) if hi is None else min(hi, len(pool))
    return Graph.of(n, rng.sample(pool, rng.randint(lo, hi)))


class TestPositiveMatching:
    def test_path_single_edge(self):
        cert = is_positive_matching(path_graph(3), [(1, 2)])
        assert cert is not None
        assert cert.edge_sum((1, 2)) > 0
        assert cert.edge_sum((2, 3)) < 0

    def test_k22_perfect_matching_fails(self):
        G = complete_bipartite(2, 2)
        assert is_positive_matching(G, [(1, 3), (2, 4)]) is None

    def test_single_edge_graph(self):
        G = Graph.of(2, [(1, 2)])
        assert is_positive_matching(G, [(1, 2)]) is not None

    def test_empty_matching(self):
        cert = is_positive_matching(complete_graph(3), [])
        assert cert is not None
        assert all(cert.edge_sum(e) < 0 for e in complete_graph(3).edges)

    def test_non_matching_gives_none(self):
        assert is_positive_matching(complete_graph(3), [(1, 2), (1, 3)]) is None

    def test_foreign_edge_rejected(self):
        with pytest.raises(ValueError):
            is_positive_matching(path_graph(3), [(1, 3)])

    def test_hypergraph_edges(self):
        H = Clutter.of(5, [(1, 2, 3), (3, 4), (4, 5)])
        cert = is_positive_matching(H, [(1, 2, 3), (4, 5)])
        assert cert is not None
        assert cert.edge_sum((1, 2, 3)) > 0
        assert cert.edge_sum((4, 5)) > 0
        assert cert.edge_sum((3, 4)) < 0


class TestBipartiteOracle:
    def test_k22_single_edge(self):
        G = complete_bipartite(2, 2)
        B = bipartition(G)
        assert is_positive_matching_bipartite(G, B, [(1, 3)])

    def test_k22_perfect_matching(self):
        G = complete_bipartite(2, 2)
        B = bipartition(G)
        assert not is_positive_matching_bipartite(G, B, [(1, 3), (2, 4)])

    def test_single_edge(self):
        G = Graph.of(2, [(1, 2)])
        assert is_positive_matching_bipartite(G, bipartition(G), [(1, 2)])

    def test_rejects_non_matching(self):
        G = complete_bipartite(2, 2)
        with pytest.raises(ValueError):
            is_positive_matching_bipartite(G, bipartition(G), [(1, 3), (1, 4)])

    def test_agrees_with_solver(self):
        rng = random.Random(41)
        for _ in range(40):
            n = rng.randint(2, 7)
            G = random_graph(rng, n, lo=1, hi=8)
            B = bipartition(G)
            if B is None:
                continue
            edges = G.sorted_edges()
            for size in range(0, 4):
                for M in itertools.combinations(edges, size):
                    seen = set()
                    if any(v in seen or seen.add(v) for e in M for v in e):
                        continue
                    lp = is_positive_matching(G, M) is not None
                    orient = is_positive_matching_bipartite(G, B, M)
                    assert lp == orient, (sorted(G.edges), M)


class TestRestriction:
    def test_positivity_depends_only_on_touched_vertices(self):
        rng = random.Random(13)
        for _ in range(30):
            G = random_graph(rng, rng.randint(3, 6), lo=1)
            edges = G.sorted_edges()
            size = rng.randint(1, 2)
            M = []
            seen = set()
            for e in edges:
                if len(M) < size and not (seen & set(e)):
                    M.append(e)
                    seen |= set(e)
            vm = {v for e in M for v in e}
            inside = [e for e in edges if set(e) <= vm]
            H = Clutter.of(G.n, inside) if inside else None
            if H is None:
                continue
            full = is_positive_matching(G, M) is not None
            restricted = is_positive_matching(H, M) is not None
            assert full == restricted


class TestVerifier:
    def test_overlapping_parts_rejected(self):
        G = Graph.of(2, [(1, 2)])
        cert = WeightCertificate.of({1: 1, 2: 1})
        D = PmDecomposition((((1, 2),), ((1, 2),)), (cert, cert))
        assert not verify_pm_decomposition(G, D)

    def test_single_edge(self):
        G = Graph.of(2, [(1, 2)])
        D = PmDecomposition((((1, 2),),), (WeightCertificate.of({1: 1, 2: 1}),))
        assert verify_pm_decomposition(G, D)

    def test_wrong_sign_detected(self):
        G = path_graph(3)
        bad = WeightCertificate.of({1: 1, 2: 1, 3: 1})
        good = WeightCertificate.of({2: 1, 3: 1, 1: -5})
        D = PmDecomposition((((1, 2),), ((2, 3),)), (bad, good))
        defect = pm_decomposition_defect(G, D)
        assert defect is not None and "residual" in defect

    def test_missing_edges_detected(self):
        G = path_graph(3)
        D = PmDecomposition((((1, 2),),), (WeightCertificate.of({1: 1, 2: 1, 3: -9}),))
        assert not verify_pm_decomposition(G, D)


class TestBounds:
    def test_examples(self):
        assert pmd_bounds(complete_bipartite(3, 3)) == (3, 5)
        assert pmd_bounds(path_graph(5)) == (2, 2)
        assert pmd_bounds(Graph.of(4, [])) == (0, 0)

    def test_general_bound(self):
        assert pmd_bounds(complete_graph(5)) == (4, 7)


class TestGreedy:
    def test_k4_slicing_has_five_parts(self):
        D = greedy_pm_decomposition(complete_graph(4))
        assert len(D) == 5
        assert verify_pm_decomposition(complete_graph(4), D)

    def test_kn_slicing_verifies(self):
        for n in range(2, 7):
            G = complete_graph(n)
            D = greedy_pm_decomposition(G)
            assert len(D) == 2 * n - 3 if n >= 3 else len(D) == 1
            assert verify_pm_decomposition(G, D)

    def test_kmn_slicing_verifies(self):
        for a, b in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3), (2, 4)]:
            G = complete_bipartite(a, b)
            D = greedy_pm_decomposition(G)
            assert len(D) == a + b - 1
            assert verify_pm_decomposition(G, D)

    def test_forest_gets_max_degree_parts(self):
        rng = random.Random(7)
        for _ in range(25):
            n = rng.randint(2, 9)
            verts = list(range(1, n + 1))
            rng.shuffle(verts)
            edges = [
                (verts[k], verts[rng.randrange(k)])
                for k in range(1, n)
                if rng.random() < 0.8
            ]
            G = Graph.of(n, edges)
            D = greedy_pm_decomposition(G)
            assert verify_pm_decomposition(G, D)
            assert len(D) == (max_degree(G) if edges else 0)

    def test_matching_is_one_part(self):
        G = Graph.of(6, [(1, 2), (3, 4), (5, 6)])
        D = greedy_pm_decomposition(G)
        assert len(D) == 1
        assert verify_pm_decomposition(G, D)

    def test_random_graphs_verify(self):
        rng = random.Random(11)
        for _ in range(15):
            G = random_graph(rng, rng.randint(3, 7), lo=1)
            D = greedy_pm_decomposition(G)
            assert verify_pm_decomposition(G, D)

    def test_hypergraph(self):
        H = Clutter.of(6, [(1, 2, 3), (3, 4), (4, 5, 6), (1, 6)])
        D = greedy_pm_decomposition(H)
        assert verify_pm_decomposition(H, D)


def oracle_pmd(G):
    """Reference search over residuals with parts ranging over all
    positive matchings, not only maximal ones."""
    edges = list(G.sorted_edges())
    m = len(edges)
    if m == 0:
        return 0

    def matchings(ridx):
        idx = sorted(ridx)
        out = []

        def grow(s, cur, verts):
            if cur:
                out.append(frozenset(cur))
            for p in range(s, len(idx)):
                i = idx[p]
                if verts & set(edges[i]):
                    continue
                cur.append(i)
                grow(p + 1, cur, verts | set(edges[i]))
                cur.pop()

        grow(0, [], set())
        return out

    level = {frozenset(range(m))}
    for parts in range(1, m + 1):
        nxt = set()
        for R in level:
            for M in matchings(R):
                others = [edges[i] for i in R - M]
                if _pm_feasible([edges[i] for i in M], others, G.n) is None:
                    continue
                R2 = R - M
                if not R2:
                    return parts
                nxt.add(R2)
        level = nxt
    raise AssertionError("unreachable: singleton parts always finish")


class TestExact:
    def test_known_values(self):
        for G, want in [
            (complete_bipartite(2, 2), 3),
            (complete_graph(3), 3),
            (star_graph(4), 4),
            (cycle_graph(5), 3),
            (complete_graph(4), 5),
        ]:
            r = exact_pmd(G)
            assert r.exact and r.value == want
            assert verify_pm_decomposition(G, r.decomposition)

    def test_matches_reference_search(self):
        rng = random.Random(23)
        for _ in range(20):
            G = random_graph(rng, rng.randint(3, 6), lo=1, hi=6)
            r = exact_pmd(G)
            assert r.exact
            assert r.value == oracle_pmd(G), sorted(G.edges)

    def test_bounds_hold(self):
        rng = random.Random(29)
        for _ in range(10):
            G = random_graph(rng, rng.randint(2, 6), lo=1, hi=7)
            r = exact_pmd(G)
            lo, hi = pmd_bounds(G)
            assert lo <= r.value <= hi

    def test_budget_exhaustion_reports_interval(self):
        r = exact_pmd(cycle_graph(4), node_budget=0)
        assert not r.exact
        assert r.lower <= 3 <= r.upper
        assert verify_pm_decomposition(cycle_graph(4), r.decomposition)

    def test_bounds_alone_can_close(self):
        # K_3 has only singleton positive matchings, so the matching-number
        # bound meets the greedy value and no search happens
        r = exact_pmd(complete_graph(3), max_parts=1)
        assert r.exact and r.value == 3 and r.nodes == 0

    def test_part_cap_below_value(self):
        r = exact_pmd(cycle_graph(4), max_parts=1)
        assert not r.exact
        assert r.lower >= 2 and r.upper == 3

    def test_part_cap_at_value_minus_one_proves_value(self):
        r = exact_pmd(cycle_graph(4), max_parts=2)
        assert r.exact and r.value == 3
