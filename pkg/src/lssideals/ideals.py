"""Generator constructions: edge ideals of squared inner products, their
twisted variants, patterned matrices, minors, and Pfaffians.

Everything returns a GeneratorSet: an ordered tuple of polynomials in a
shared space, tagged with what produced it.  Edge order is canonical
(sorted tuples), so generator order is reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Bipartition, Clutter, Graph, bipartition
from .polynomials import (
    Polynomial,
    VariableSpace,
    block_space,
    generic_space,
    skew_space,
    symmetric_space,
)


@dataclass(frozen=True)
class GeneratorSet:
    space: VariableSpace
    generators: tuple[Polynomial, ...]
    provenance: str

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _as_clutter(H) -> Clutter:
    return H.as_clutter() if isinstance(H, Graph) else H


def lss_generators(H, d: int) -> GeneratorSet:
    """One generator per edge: sum over layers l of the product of y[i,l]."""
    H = _as_clutter(H)
    if d < 1:
        raise ValueError("d must be >= 1")
    space = block_space(H.n, d)
    gens = []
    for edge in H.sorted_edges():
        terms = []
        for l in range(1, d + 1):
            exps = [0] * space.nvars
            for i in edge:
                exps[space.block_index(i, l)] += 1
            terms.append((tuple(exps), Fraction(1)))
        gens.append(Polynomial(space, tuple(terms)))
    return GeneratorSet(space, tuple(gens), f"lss(d={d})")


def twisted_lss_generators(G: Graph, d: int) -> GeneratorSet:
    """Per edge {i,j}: sum over k of y[i,2k-1]*y[j,2k] - y[i,2k]*y[j,2k-1]."""
    if d < 1:
        raise ValueError("d must be >= 1")
    space = block_space(G.n, 2 * d)
    gens = []
    for i, j in G.sorted_edges():
        terms = []
        for k in range(1, d + 1):
            a, b = 2 * k - 1, 2 * k
            e1 = [0] * space.nvars
            e1[space.block_index(i, a)] += 1
            e1[space.block_index(j, b)] += 1
            e2 = [0] * space.nvars
            e2[space.block_index(i, b)] += 1
            e2[space.block_index(j, a)] += 1
            terms.append((tuple(e1), Fraction(1)))
            terms.append((tuple(e2), Fraction(-1)))
        gens.append(Polynomial(space, tuple(terms)))
    return GeneratorSet(space, tuple(gens), f"twisted-lss(d={d})")


def twisted_to_plain_substitution(G: Graph, d: int, B: Bipartition | None = None):
    """Map twisted generators to the plain d'=2d ones for bipartite G.

    On the right side of the bipartition swap each layer pair:
    y[j,2k] -> y[j,2k-1] and y[j,2k-1] -> -y[j,2k].  Returns the dict of
    variable index -> replacement polynomial over block_space(n, 2d).
    """
    if B is None:
        B = bipartition(G)
    if B is None:
        raise ValueError("substitution needs a bipartite graph")
    space = block_space(G.n, 2 * d)
    mapping = {}
    for j in B.right:
        for k in range(1, d + 1):
            a, b = 2 * k - 1, 2 * k
            mapping[space.block_index(j, a)] = -Polynomial.variable(
                space, space.block_index(j, b)
            )
            mapping[space.block_index(j, b)] = Polynomial.variable(
                space, space.block_index(j, a)
            )
    return mapping


def product_entry_generators(G: Graph, d: int) -> GeneratorSet:
    """Edge polynomials read off as matrix-product entries.

    Plain route: entry (i,j) of Y*Y^T where Y is the n x d block matrix.
    For bipartite G the generators are also built from two separate factor
    blocks (Y for the left side, Z transposed for the right side) and
    renamed back; both routes must agree with lss_generators, and the tests
    hold them to that.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    space = block_space(G.n, d)
    Y = [
        [Polynomial.variable(space, space.block_index(i, l)) for l in range(1, d + 1)]
        for i in range(1, G.n + 1)
    ]
    gens = []
    for i, j in G.sorted_edges():
        entry = Polynomial.zero(space)
        for l in range(d):
            entry = entry + Y[i - 1][l] * Y[j - 1][l]
        gens.append(entry)
    return GeneratorSet(space, tuple(gens), f"product-entries(d={d})")


# ---------------------------------------------------------------------------
# matrix templates


@dataclass(frozen=True)
class MatrixTemplate:
    """Matrix of polynomials (variables, negated variables, or zero)."""

    kind: str
    rows: int
    cols: int
    space: VariableSpace
    entries: tuple[tuple[Polynomial, ...], ...]

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i - 1][j - 1]


def matrix_template(kind: str, G: Graph, sizes=None) -> MatrixTemplate:
    """Patterned matrix with zeros dictated by the edges of G.

    generic: rows are a bipartition's left side, columns its right side
    (sizes=(m, n) fixes them; G's vertices are 1..m then m+1..m+n) and the
    (i, j) entry dies when {i, m+j} is an edge.  symmetric/skew: n x n with
    entries (i, j) and (j, i) killed for edges {i, j}.  The edgeless graph
    gives the fully generic template.
    """
    if kind == "generic":
        if sizes is None:
            raise ValueError("generic templates need sizes=(m, n)")
        m, n = sizes
        if G.n != m + n:
            raise ValueError(f"graph has {G.n} vertices, expected {m + n}")
        for i, j in G.edges:
            if not (i <= m < j):
                raise ValueError(f"edge {(i, j)} does not cross the {m}+{n} split")
        space = generic_space(m, n)
        rows = []
        for i in range(1, m + 1):
            row = []
            for j in range(1, n + 1):
                if G.has_edge(i, m + j):
                    row.append(Polynomial.zero(space))
                else:
                    row.append(Polynomial.variable(space, space.entry_index(i, j)))
            rows.append(tuple(row))
        return MatrixTemplate(kind, m, n, space, tuple(rows))
    if kind == "symmetric":
        n = G.n
        space = symmetric_space(n)
        rows = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                if i != j and G.has_edge(i, j):
                    row.append(Polynomial.zero(space))
                else:
                    row.append(Polynomial.variable(space, space.entry_index(i, j)))
            rows.append(tuple(row))
        return MatrixTemplate(kind, n, n, space, tuple(rows))
    if kind == "skew":
        n = G.n
        space = skew_space(n)
        rows = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                if i == j or G.has_edge(i, j):
                    row.append(Polynomial.zero(space))
                elif i < j:
                    row.append(Polynomial.variable(space, space.entry_index(i, j)))
                else:
                    row.append(-Polynomial.variable(space, space.entry_index(j, i)))
            rows.append(tuple(row))
        return MatrixTemplate(kind, n, n, space, tuple(rows))
    raise ValueError(f"unknown template kind {kind!r}")


def block_matrix_template(n: int, d: int) -> MatrixTemplate:
    """The n x d matrix of block variables y[i,l] itself."""
    space = block_space(n, d)
    rows = tuple(
        tuple(
            Polynomial.variable(space, space.block_index(i, l))
            for l in range(1, d + 1)
        )
        for i in range(1, n + 1)
    )
    return MatrixTemplate("block", n, d, space, rows)


def _determinant(T: MatrixTemplate, row_idx, col_idx, cache) -> Polynomial:
    """Laplace expansion along the first listed row, memoized on the index pair."""
    key = (row_idx, col_idx)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if len(row_idx) == 1:
        out = T.entry(row_idx[0], col_idx[0])
    else:
        out = Polynomial.zero(T.space)
        r = row_idx[0]
        rest = row_idx[1:]
        for pos, c in enumerate(col_idx):
            a = T.entry(r, c)
            if a.is_zero():
                continue
            minor = _determinant(T, rest, col_idx[:pos] + col_idx[pos + 1:], cache)
            if pos % 2:
                out = out - a * minor
            else:
                out = out + a * minor
    cache[key] = out
    return out


def minor(T: MatrixTemplate, rows, cols) -> Polynomial:
    """Determinant of the submatrix on the given 1-based rows and columns."""
    rows = tuple(rows)
    cols = tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column index sets must have equal size")
    if not all(1 <= r <= T.rows for r in rows) or not all(1 <= c <= T.cols for c in cols):
        raise ValueError(f"indices out of range for {T.rows}x{T.cols}")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("repeated row or column index")
    return _determinant(T, rows, cols, {})


def minors(T: MatrixTemplate, t: int) -> GeneratorSet:
    """All t x t minors in row-major index order; zero minors are dropped."""
    if not (1 <= t <= min(T.rows, T.cols)):
        raise ValueError(f"minor size {t} out of range for {T.rows}x{T.cols}")
    cache: dict = {}
    gens = []
    for rows in itertools.combinations(range(1, T.rows + 1), t):
        for cols in itertools.combinations(range(1, T.cols + 1), t):
            det = _determinant(T, rows, cols, cache)
            if not det.is_zero():
                gens.append(det)
    return GeneratorSet(T.space, tuple(gens), f"minors(t={t})")


def _pfaffian(T: MatrixTemplate, idx, cache) -> Polynomial:
    """Pf of the principal submatrix on idx, expanding along its first row:
    Pf(A) = sum_j (-1)^j a_{1j} Pf(A without rows/cols 1, j)."""
    if not idx:
        return Polynomial.constant(T.space, 1)
    hit = cache.get(idx)
    if hit is not None:
        return hit
    out = Polynomial.zero(T.space)
    r = idx[0]
    for pos in range(1, len(idx)):
        a = T.entry(r, idx[pos])
        if a.is_zero():
            continue
        rest = tuple(v for q, v in enumerate(idx) if q not in (0, pos))
        term = a * _pfaffian(T, rest, cache)
        if pos % 2:
            out = out + term
        else:
            out = out - term
    cache[idx] = out
    return out


def pfaffians(T: MatrixTemplate, size: int) -> GeneratorSet:
    """Pfaffians of all principal size x size submatrices of a skew template."""
    if T.kind != "skew":
        raise ValueError("pfaffians need a skew template")
    if size % 2 or size < 2:
        raise ValueError("pfaffian size must be a positive even number")
    if size > T.rows:
        raise ValueError(f"size {size} exceeds matrix dimension {T.rows}")
    cache: dict = {}
    gens = []
    for idx in itertools.combinations(range(1, T.rows + 1), size):
        pf = _pfaffian(T, idx, cache)
        if not pf.is_zero():
            gens.append(pf)
    return GeneratorSet(T.space, tuple(gens), f"pfaffians(size={size})")


def expected_height(kind: str, m: int = 0, n: int = 0, d: int = 0) -> int:
    """Height of the fully generic minor/Pfaffian ideal: d-minors of a
    generic m x n or symmetric n x n matrix, or the 2d-Pfaffians of a skew
    n x n one, for d in the nondegenerate range."""
    if kind == "generic":
        if not (1 <= d <= min(m, n)):
            raise ValueError(f"need 1 <= d <= min(m, n) = {min(m, n)}")
        return (n + 1 - d) * (m + 1 - d)
    if kind == "symmetric":
        if not (1 <= d <= n):
            raise ValueError(f"need 1 <= d <= n = {n}")
        return math.comb(n - d + 2, 2)
    if kind == "skew":
        if not (1 <= d) or 2 * d > n:
            raise ValueError(f"need 1 <= d and 2d <= n = {n}")
        return math.comb(n - 2 * d + 2, 2)
    raise ValueError(f"unknown kind {kind!r}")


def stacked_minor_pool(n: int, d: int, t: int) -> GeneratorSet:
    """t x t minors of the n x d block-variable matrix; the witness pool."""
    return minors(block_matrix_template(n, d), t)
