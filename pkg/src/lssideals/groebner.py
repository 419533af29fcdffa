"""Exact Buchberger engine with elimination, colon ideals, and the two
certificate procedures built on top of it.

The core works on primitive integer polynomials (dict exponent -> int,
content stripped after every reduction) so no Fraction arithmetic happens
in the hot loop; pseudo-reduction scales the partial remainder instead of
dividing.  Public inputs and outputs stay exact-rational Polynomials.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .graphs import Clutter, Graph
from .ideals import GeneratorSet, lss_generators
from .polynomials import (
    DEGREVLEX,
    ExpT,
    MonomialOrder,
    Polynomial,
    VariableSpace,
    block_space,
    elimination_order,
    exps_coprime,
    exps_div,
    exps_divides,
    exps_lcm,
    exps_mul,
    initial_term,
    leading_exponents,
    order_from_decomposition,
)
from .posmatch import PmDecomposition, greedy_pm_decomposition, verify_pm_decomposition


class GBBudgetExhausted(Exception):
    """The pair-reduction budget ran out before the basis stabilized."""

    def __init__(self, pairs_done: int):
        super().__init__(f"pair budget exhausted after {pairs_done} reductions")
        self.pairs_done = pairs_done


@dataclass(frozen=True)
class GroebnerBasis:
    space: VariableSpace
    order: MonomialOrder
    basis: tuple[Polynomial, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def contains_one(self) -> bool:
        return any(b.is_constant() and not b.is_zero() for b in self.basis)


# ---------------------------------------------------------------------------
# integer core

IntPoly = dict[ExpT, int]


class _Entry:
    __slots__ = ("lm", "lc", "items")

    def __init__(self, terms: IntPoly, order: MonomialOrder):
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]
        self.items = tuple(terms.items())


def _strip_content(p: IntPoly) -> IntPoly:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            return p
    if g > 1:
        return {e: c // g for e, c in p.items()}
    return p


def _poly_to_int(f: Polynomial) -> IntPoly:
    den = 1
    for _, c in f.terms:
        den = den * c.denominator // gcd(den, c.denominator)
    p = {e: int(c * den) for e, c in f.terms}
    return _strip_content(p)


def _int_to_poly(p: IntPoly, space: VariableSpace) -> Polynomial:
    return Polynomial(space, tuple((e, Fraction(c)) for e, c in p.items()))


def _reduce_full(p: IntPoly, basis: list[_Entry], order: MonomialOrder) -> IntPoly:
    """Total pseudo-reduction of p modulo basis; primitive result."""
    work = dict(p)
    out: IntPoly = {}
    while work:
        e = max(work, key=order.key)
        c = work.pop(e)
        red = None
        for g in basis:
            if exps_divides(g.lm, e):
                red = g
                break
        if red is None:
            out[e] = c
            continue
        q = exps_div(e, red.lm)
        g0 = gcd(c, red.lc)
        a = red.lc // g0
        b = c // g0
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for k in work:
                work[k] *= a
            for k in out:
                out[k] *= a
        for eg, cg in red.items:
            if eg == red.lm:
                continue
            k = exps_mul(q, eg)
            v = work.get(k, 0) - b * cg
            if v:
                work[k] = v
            else:
                work.pop(k, None)
    return _strip_content(out)


def _spoly(f: _Entry, g: _Entry, tau: ExpT) -> IntPoly:
    g0 = gcd(f.lc, g.lc)
    a = g.lc // g0
    b = f.lc // g0
    qf = exps_div(tau, f.lm)
    qg = exps_div(tau, g.lm)
    p: IntPoly = {}
    for e, c in f.items:
        k = exps_mul(e, qf)
        p[k] = p.get(k, 0) + a * c
    for e, c in g.items:
        k = exps_mul(e, qg)
        v = p.get(k, 0) - b * c
        if v:
            p[k] = v
        else:
            p.pop(k, None)
    return p


def _buchberger_core(
    polys: list[IntPoly], order: MonomialOrder, pair_budget: int | None
) -> list[_Entry]:
    basis: list[_Entry] = []
    heap: list = []
    counter = itertools.count()
    treated: set[tuple[int, int]] = set()

    def push_pairs(j: int):
        for i in range(j):
            tau = exps_lcm(basis[i].lm, basis[j].lm)
            heapq.heappush(heap, (order.key(tau), next(counter), i, j, tau))

    for p in polys:
        p = _strip_content(dict(p))
        if not p:
            continue
        r = _reduce_full(p, basis, order)
        if r:
            basis.append(_Entry(r, order))
            push_pairs(len(basis) - 1)

    reductions = 0
    while heap:
        _, _, i, j, tau = heapq.heappop(heap)
        if exps_coprime(basis[i].lm, basis[j].lm):
            treated.add((i, j))
            continue
        chained = False
        for k in range(len(basis)):
            if k in (i, j) or not exps_divides(basis[k].lm, tau):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in treated and b in treated:
                chained = True
                break
        if chained:
            treated.add((i, j))
            continue
        if pair_budget is not None and reductions >= pair_budget:
            raise GBBudgetExhausted(reductions)
        reductions += 1
        r = _reduce_full(_spoly(basis[i], basis[j], tau), basis, order)
        treated.add((i, j))
        if r:
            basis.append(_Entry(r, order))
            push_pairs(len(basis) - 1)
    return basis


def _reduced_entries(basis: list[_Entry], order: MonomialOrder) -> list[_Entry]:
    minimal: list[_Entry] = []
    for g in sorted(basis, key=lambda e: order.key(e.lm)):
        if not any(exps_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    for idx in range(len(minimal)):
        others = [h for k, h in enumerate(minimal) if k != idx]
        r = _reduce_full(dict(minimal[idx].items), others, order)
        minimal[idx] = _Entry(r, order)
    return sorted(minimal, key=lambda e: order.key(e.lm))


def _gens_list(gens) -> tuple[VariableSpace, list[Polynomial]]:
    if isinstance(gens, GeneratorSet):
        space = gens.space
        polys = [f for f in gens.generators if not f.is_zero()]
    else:
        polys = list(gens)
        if not polys:
            raise ValueError("cannot infer the variable space from an empty list")
        space = polys[0].space
        polys = [f for f in polys if not f.is_zero()]
    for f in polys:
        if f.space != space:
            raise ValueError("generators live in different spaces")
    return space, polys


def buchberger(gens, order: MonomialOrder = DEGREVLEX, pair_budget: int | None = None) -> GroebnerBasis:
    """Reduced monic Groebner basis, deterministic normal pair selection."""
    space, polys = _gens_list(gens)
    core = _buchberger_core([_poly_to_int(f) for f in polys], order, pair_budget)
    reduced = _reduced_entries(core, order)
    monic = []
    for e in reduced:
        lc = Fraction(e.lc)
        monic.append(
            Polynomial(space, tuple((exps, Fraction(c) / lc) for exps, c in e.items))
        )
    return GroebnerBasis(space, order, tuple(monic))


# ---------------------------------------------------------------------------
# division against a finished basis


def _nf_terms(terms: dict[ExpT, Fraction], gb: GroebnerBasis) -> dict[ExpT, Fraction]:
    work = dict(terms)
    out: dict[ExpT, Fraction] = {}
    key = gb.order.key
    heads = [(leading_exponents(g, gb.order), g) for g in gb.basis]
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        hit = None
        for lm, g in heads:
            if exps_divides(lm, e):
                hit = (lm, g)
                break
        if hit is None:
            out[e] = c
            continue
        lm, g = hit
        q = exps_div(e, lm)
        for eg, cg in g.terms:
            if eg == lm:
                continue
            k = exps_mul(q, eg)
            v = work.get(k, Fraction(0)) - c * cg
            if v:
                work[k] = v
            else:
                work.pop(k, None)
    return out


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if f.space != gb.space:
        raise ValueError("polynomial and basis live in different spaces")
    return Polynomial(gb.space, tuple(_nf_terms(dict(f.terms), gb).items()))


def reduces_to_zero(f: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(f, gb).is_zero()


def _divide_exact(h: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """Quotient h/g when g divides h modulo nothing (remainder must vanish)."""
    lm = leading_exponents(g, order)
    lc = g.coefficient(lm)
    work = dict(h.terms)
    q: dict[ExpT, Fraction] = {}
    while work:
        e = max(work, key=order.key)
        c = work.pop(e)
        if not exps_divides(lm, e):
            raise ValueError("division is not exact")
        qe = exps_div(e, lm)
        factor = c / lc
        q[qe] = q.get(qe, Fraction(0)) + factor
        for eg, cg in g.terms:
            if eg == lm:
                continue
            k = exps_mul(qe, eg)
            v = work.get(k, Fraction(0)) - factor * cg
            if v:
                work[k] = v
            else:
                work.pop(k, None)
    return Polynomial(h.space, tuple(q.items()))


# ---------------------------------------------------------------------------
# elimination and colon ideals


def _project_space(space: VariableSpace, keep: list[int]) -> VariableSpace:
    names = tuple(space.names[k] for k in keep)
    if names == space.names[: space.base] and space.kind != "custom":
        return VariableSpace(space.kind, space.shape, names, space.base)
    base = sum(1 for k in keep if k < space.base)
    return VariableSpace("custom", (), names, base)


def eliminate(gens, drop, pair_budget: int | None = None) -> GeneratorSet:
    """Generators of the ideal's intersection with the subring avoiding `drop`."""
    space, polys = _gens_list(gens)
    drop_idx = sorted(d if isinstance(d, int) else space.index(d) for d in drop)
    if not polys:
        kept_space = _project_space(space, [k for k in range(space.nvars) if k not in drop_idx])
        return GeneratorSet(kept_space, (), "eliminate")
    order = elimination_order(space, drop_idx)
    gb = buchberger(polys, order, pair_budget)
    dropped = set(drop_idx)
    keep = [k for k in range(space.nvars) if k not in dropped]
    kept_space = _project_space(space, keep)
    out = []
    for g in gb.basis:
        lm = leading_exponents(g, order)
        if any(lm[k] for k in dropped):
            continue
        assert all(
            not any(e[k] for k in dropped) for e, _ in g.terms
        ), "elimination order let a dropped variable slip into a tail"
        out.append(
            Polynomial(
                kept_space,
                tuple((tuple(e[k] for k in keep), c) for e, c in g.terms),
            )
        )
    return GeneratorSet(kept_space, tuple(out), "eliminate")


def _fresh_aux_name(space: VariableSpace) -> str:
    for k in itertools.count():
        name = "t" if k == 0 else f"t{k}"
        if name not in space.names:
            return name


def _lift(f: Polynomial, ext: VariableSpace) -> Polynomial:
    pad = ext.nvars - f.space.nvars
    return Polynomial(ext, tuple((e + (0,) * pad, c) for e, c in f.terms))


def colon(J, g: Polynomial, pair_budget: int | None = None, verify: bool = True) -> GeneratorSet:
    """Generators of J : g via J cap (g) = eliminate(t*J + (1-t)*g, t)."""
    space, polys = _gens_list(J)
    if g.is_zero():
        raise ValueError("colon by the zero polynomial")
    if g.space != space:
        raise ValueError("polynomial lives outside the ideal's space")
    aux = _fresh_aux_name(space)
    ext = space.with_aux(aux)
    t = Polynomial.variable(ext, ext.nvars - 1)
    one = Polynomial.constant(ext, 1)
    lifted = [t * _lift(f, ext) for f in polys]
    lifted.append((one - t) * _lift(g, ext))
    intersection = eliminate(
        GeneratorSet(ext, tuple(lifted), "colon-intersection"),
        [ext.nvars - 1],
        pair_budget,
    )
    quotients = []
    seen = set()
    for h in intersection.generators:
        q = _divide_exact(h, g)
        q_can = _canonical_generator(q)
        if not q_can.is_zero() and q_can.terms not in seen:
            seen.add(q_can.terms)
            quotients.append(q_can)
    quotients.sort(key=lambda f: (f.total_degree(), f.terms))
    if verify and quotients:
        gbj = buchberger(polys, DEGREVLEX, pair_budget) if polys else None
        for q in quotients:
            if gbj is None:
                if not (q * g).is_zero():
                    raise AssertionError("colon produced a quotient outside the ideal")
            elif not reduces_to_zero(q * g, gbj):
                raise AssertionError("colon produced a quotient outside the ideal")
    return GeneratorSet(space, tuple(quotients), "colon")


def _canonical_generator(f: Polynomial) -> Polynomial:
    """Primitive integer coefficients with positive leading sign (degrevlex)."""
    if f.is_zero():
        return f
    p = _poly_to_int(f)
    lm = max(p, key=DEGREVLEX.key)
    if p[lm] < 0:
        p = {e: -c for e, c in p.items()}
    return _int_to_poly(p, f.space)


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class WitnessReport:
    provenance: str
    witness: Polynomial
    verdict: bool
    colon_once: GroebnerBasis
    colon_twice: GroebnerBasis
    separator: Polynomial | None

    def certifies_nonradical(self) -> bool:
        return self.verdict


def witness_test(J, g: Polynomial, pair_budget: int | None = None) -> WitnessReport:
    """Certify non-radicality when J : g and J : g^2 differ.

    J : g always sits inside J : g^2, so the verdict reduces to finding a
    generator of the latter missing from the former; that separator is
    re-checked by normal form and recorded in the report.
    """
    provenance = J.provenance if isinstance(J, GeneratorSet) else "ideal"
    c1 = colon(J, g, pair_budget)
    c2 = colon(c1, g, pair_budget)
    gb1 = buchberger(c1, DEGREVLEX, pair_budget) if len(c1) else _empty_gb(c1.space)
    gb2 = buchberger(c2, DEGREVLEX, pair_budget) if len(c2) else _empty_gb(c2.space)
    separator = None
    for h in c2.generators:
        if not reduces_to_zero(h, gb1):
            separator = h
            break
    return WitnessReport(provenance, g, separator is not None, gb1, gb2, separator)


def _empty_gb(space: VariableSpace) -> GroebnerBasis:
    return GroebnerBasis(space, DEGREVLEX, ())


def search_witness(J, pool, pair_budget: int | None = None):
    """First pool element certifying non-radicality, or None.

    Budget exhaustion on a candidate skips it (the candidate is neither
    confirmed nor refuted); a None return therefore means "no witness found
    within budget", not "radical".
    """
    candidates = pool.generators if isinstance(pool, GeneratorSet) else tuple(pool)
    for g in candidates:
        if g.is_zero():
            continue
        try:
            report = witness_test(J, g, pair_budget)
        except GBBudgetExhausted:
            continue
        if report.verdict:
            return g, report
    return None


# ---------------------------------------------------------------------------
# dimension and complete intersections


def _min_hitting_set(supports: list[frozenset[int]]) -> int:
    supports = [s for s in supports if s]
    filtered = []
    for s in sorted(supports, key=len):
        if not any(t <= s for t in filtered):
            filtered.append(s)
    memo: dict[frozenset, int] = {}

    def rec(rem: frozenset) -> int:
        if not rem:
            return 0
        hit = memo.get(rem)
        if hit is not None:
            return hit
        pivot = min(rem, key=len)
        best = None
        for v in sorted(pivot):
            rest = frozenset(s for s in rem if v not in s)
            sub = 1 + rec(rest)
            if best is None or sub < best:
                best = sub
        memo[rem] = best
        return best

    return rec(frozenset(filtered))


def quotient_dimension(gens, order: MonomialOrder = DEGREVLEX, pair_budget: int | None = None) -> int:
    """Krull dimension of S/I from the initial ideal: largest variable set
    meeting no minimal initial generator; dim S/(1) is -1 by convention."""
    space, polys = _gens_list(gens)
    if not polys:
        return space.nvars
    gb = buchberger(polys, order, pair_budget)
    supports = []
    for g in gb.basis:
        lm = leading_exponents(g, gb.order)
        sup = frozenset(k for k, e in enumerate(lm) if e)
        if not sup:
            return -1
        supports.append(sup)
    return space.nvars - _min_hitting_set(supports)


def is_complete_intersection_gb(gens, pair_budget: int | None = None) -> bool:
    """Codimension equals the number of (minimal) generators."""
    space, polys = _gens_list(gens)
    if not polys:
        return True
    dim = quotient_dimension(gens, DEGREVLEX, pair_budget)
    return space.nvars - dim == len(polys)


# ---------------------------------------------------------------------------
# radical complete intersection certificates


@dataclass(frozen=True)
class RadicalCiCertificate:
    decomposition: PmDecomposition
    order: MonomialOrder
    initials: tuple[tuple[tuple[int, ...], Polynomial], ...]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class CertificateFailure:
    edge: tuple[int, ...]
    reason: str

    def __bool__(self) -> bool:
        return False


def certify_radical_ci(H, d: int, D: PmDecomposition | None = None):
    """Term-order certificate that the edge ideal at level d is a radical
    complete intersection.

    Builds the weight order from the decomposition's certificates and checks
    the leading term of every edge generator is the squarefree product of
    that edge's variables in its own part's layer; distinct edges then have
    pairwise coprime initial monomials, which transfers squarefreeness and
    the regular-sequence property from the initial ideal.
    """
    H = H.as_clutter() if isinstance(H, Graph) else H
    if D is None:
        D = greedy_pm_decomposition(H)
    p = len(D.parts)
    if d < p:
        raise ValueError(f"need d >= parts: d={d}, parts={p}")
    if not verify_pm_decomposition(H, D):
        raise ValueError("decomposition does not verify against the clutter")
    space = block_space(H.n, d)
    order = order_from_decomposition(space, D)
    gens = lss_generators(H, d)
    part_of = {}
    for l, part in enumerate(D.parts, start=1):
        for e in part:
            part_of[tuple(sorted(e))] = l
    edges = H.sorted_edges()
    initials = []
    for edge, f in zip(edges, gens.generators):
        l = part_of[edge]
        expected = [0] * space.nvars
        for i in edge:
            expected[space.block_index(i, l)] = 1
        got = leading_exponents(f, order)
        if got != tuple(expected):
            return CertificateFailure(edge, "initial term escapes the part layer")
        initials.append((edge, initial_term(f, order)))
    seen = [e for _, t in initials for e, _ in t.terms]
    for a, b in itertools.combinations(seen, 2):
        if not exps_coprime(a, b):
            return CertificateFailure((), "initial monomials are not coprime")
    for e in seen:
        if any(x > 1 for x in e):
            return CertificateFailure((), "initial monomial is not squarefree")
    return RadicalCiCertificate(D, order, tuple(initials))
