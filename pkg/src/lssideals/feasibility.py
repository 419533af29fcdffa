"""Exact rational feasibility for systems of weak linear inequalities.

A system is a list of rows (a_1, ..., a_k, b) with integer or Fraction
entries, each encoding a_1 x_1 + ... + a_k x_k <= b.  The primary engine is
Fourier-Motzkin elimination with content normalization and row
deduplication; back-substitution recovers an explicit rational solution.
An exact phase-1 simplex (Bland's rule, guaranteed to terminate) is kept as
an independent fallback and cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Row = tuple  # (a_1, ..., a_k, b) of ints after normalization


def _normalize_row(coeffs, rhs) -> Row | None:
    """Scale to coprime integers; None means the row is trivially true; raises if 0 <= b fails."""
    fracs = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    if all(c == 0 for c in ints[:-1]):
        if ints[-1] < 0:
            raise _Infeasible()
        return None
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return tuple(c // g for c in ints)


class _Infeasible(Exception):
    pass


def solve_inequalities(rows, nvars: int) -> list[Fraction] | None:
    """Return one exact solution of the system, or None if it is infeasible."""
    try:
        system = set()
        for row in rows:
            if len(row) != nvars + 1:
                raise ValueError(f"row of length {len(row)}, expected {nvars + 1}")
            r = _normalize_row(row[:-1], row[-1])
            if r is not None:
                system.add(r)
    except _Infeasible:
        return None

    remaining = list(range(nvars))
    stages: list[tuple[int, list[Row]]] = []  # (variable, rows mentioning it at that stage)
    try:
        while remaining:
            var = _pick_variable(system, remaining)
            pos = [r for r in system if r[var] > 0]
            neg = [r for r in system if r[var] < 0]
            zero = [r for r in system if r[var] == 0]
            stages.append((var, pos + neg))
            new = set(zero)
            for p in pos:
                for q in neg:
                    combined = _combine(p, q, var)
                    if combined is not None:
                        new.add(combined)
            system = new
            remaining.remove(var)
    except _Infeasible:
        return None

    values: list[Fraction | None] = [None] * nvars
    for var, bounds in reversed(stages):
        lo, hi = None, None
        for r in bounds:
            rest = r[-1] - sum(
                Fraction(c) * values[k]
                for k, c in enumerate(r[:-1])
                if c != 0 and k != var
            )
            bound = Fraction(rest, r[var])
            if r[var] > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None and hi is None:
            values[var] = Fraction(0)
        elif lo is None:
            values[var] = hi - 1
        elif hi is None:
            values[var] = lo + 1
        else:
            assert lo <= hi, "bounds crossed despite feasible elimination"
            values[var] = (lo + hi) / 2
    return [v for v in values]


def _pick_variable(system, remaining) -> int:
    """Variable whose elimination creates the fewest product rows."""
    best, best_cost = remaining[0], None
    for var in remaining:
        pos = sum(1 for r in system if r[var] > 0)
        neg = sum(1 for r in system if r[var] < 0)
        cost = pos * neg - pos - neg
        if best_cost is None or cost < best_cost:
            best, best_cost = var, cost
    return best


def _combine(p: Row, q: Row, var: int) -> Row | None:
    """Positive combination of p (coef > 0) and q (coef < 0) cancelling var."""
    a, b = p[var], -q[var]
    row = [b * pc + a * qc for pc, qc in zip(p, q)]
    if all(c == 0 for c in row[:-1]):
        if row[-1] < 0:
            raise _Infeasible()
        return None
    g = 0
    for c in row:
        g = gcd(g, abs(c))
    return tuple(c // g for c in row)


# ---------------------------------------------------------------------------
# exact phase-1 simplex fallback


def solve_inequalities_simplex(rows, nvars: int) -> list[Fraction] | None:
    """Independent feasibility check: phase-1 simplex with Bland's rule.

    Free variables are split as x = u - v with u, v >= 0; one slack per row;
    rows with negative right-hand side get an artificial variable whose sum
    is minimized.  Returns a solution or None, exactly as solve_inequalities.
    """
    m = len(rows)
    if m == 0:
        return [Fraction(0)] * nvars
    neg = [i for i, row in enumerate(rows) if Fraction(row[-1]) < 0]
    art_col = {i: 2 * nvars + m + k for k, i in enumerate(neg)}
    ncols = 2 * nvars + m + len(neg)
    table: list[list[Fraction]] = []
    basis: list[int] = []
    for i, row in enumerate(rows):
        coeffs = [Fraction(c) for c in row[:-1]]
        rhs = Fraction(row[-1])
        line = coeffs + [-c for c in coeffs] + [Fraction(0)] * (m + len(neg)) + [rhs]
        line[2 * nvars + i] = Fraction(1)
        if rhs < 0:
            line = [-c for c in line]
            line[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(2 * nvars + i)
        table.append(line)

    if not neg:
        return _extract(table, basis, nvars, ncols)

    def reduced(j: int) -> Fraction:
        return sum(table[i][j] for i in range(m) if basis[i] >= 2 * nvars + m)

    while True:
        enter = next(
            (j for j in range(2 * nvars + m) if reduced(j) > 0), None
        )
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if table[i][enter] > 0:
                ratio = table[i][ncols] / table[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            break
        _pivot(table, basis, leave, enter, m)

    residual = sum(table[i][ncols] for i in range(m) if basis[i] >= 2 * nvars + m)
    if residual != 0:
        return None
    return _extract(table, basis, nvars, ncols)


def _pivot(table, basis, leave, enter, m):
    piv = table[leave][enter]
    table[leave] = [c / piv for c in table[leave]]
    for i in range(m):
        if i != leave and table[i][enter] != 0:
            f = table[i][enter]
            table[i] = [a - f * b for a, b in zip(table[i], table[leave])]
    basis[leave] = enter


def _extract(table, basis, nvars, ncols):
    vals = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        vals[b] = table[i][ncols]
    return [vals[k] - vals[nvars + k] for k in range(nvars)]
