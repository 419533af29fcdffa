"""Rule-based classification of radical, complete intersection, and prime
status for edge ideals at level d, with threshold bounds and transfer
reports to matrix coordinate sections.

Verdicts are three-valued.  Every rule encodes one proved statement; when
no rule reaches the query the verdict stays UNKNOWN rather than guessing.
Rules gated on the characteristic fire only when the field assumption
matches, and rules proved only in characteristic 0 stay silent otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .graphs import (
    Graph,
    bipartition,
    clique_number,
    contains_complete_bipartite,
    contains_crown,
    has_even_cycle,
    is_forest,
    is_matching,
    max_degree,
    support,
)
from .ideals import expected_height
from .posmatch import exact_pmd, greedy_pm_decomposition, pmd_bounds

PROPERTIES = ("radical", "ci", "prime")


class ClassifierContradiction(Exception):
    """A rule derived TRUE and FALSE for the same query; a rule is buggy."""


@dataclass(frozen=True)
class Verdict:
    value: str

    def __post_init__(self):
        if self.value not in ("TRUE", "FALSE", "UNKNOWN"):
            raise ValueError(f"bad verdict {self.value!r}")

    def is_true(self) -> bool:
        return self.value == "TRUE"

    def is_false(self) -> bool:
        return self.value == "FALSE"

    def is_decisive(self) -> bool:
        return self.value != "UNKNOWN"


TRUE = Verdict("TRUE")
FALSE = Verdict("FALSE")
UNKNOWN = Verdict("UNKNOWN")


@dataclass(frozen=True)
class Justification:
    rule: str
    cite: str
    evidence: str = ""

    def as_dict(self) -> dict:
        return {"rule": self.rule, "cite": self.cite, "evidence": self.evidence}


@dataclass(frozen=True)
class FieldAssumption:
    """Coefficient characteristic: 0, 2, an odd prime, or unspecified."""

    char: int | None = None

    def __post_init__(self):
        c = self.char
        if c is None or c == 0 or c == 2:
            return
        if c < 2 or any(c % q == 0 for q in range(2, int(c**0.5) + 1)):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @classmethod
    def unspecified(cls) -> "FieldAssumption":
        return cls(None)

    @classmethod
    def of(cls, text: str | int | None) -> "FieldAssumption":
        if text is None or text == "" or text == "unspecified":
            return cls(None)
        return cls(int(text))

    @property
    def known_not_two(self) -> bool:
        return self.char is not None and self.char != 2

    @property
    def is_zero(self) -> bool:
        return self.char == 0

    @property
    def is_two(self) -> bool:
        return self.char == 2

    def describe(self) -> str:
        if self.char is None:
            return "unspecified characteristic"
        return f"characteristic {self.char}"


@dataclass(frozen=True)
class AsymBounds:
    prop: str
    lower: int
    upper: int

    def as_dict(self) -> dict:
        return {"property": self.prop, "lower": self.lower, "upper": self.upper}


def w_of(n: int) -> int:
    """Largest w with C(w, 2) <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    w = 1
    while comb(w + 1, 2) <= n:
        w += 1
    return w


# ---------------------------------------------------------------------------
# rule table construction


class _Table:
    """Verdict store with contradiction detection and justification merge."""

    def __init__(self):
        self.cells: dict[tuple[str, int], tuple[bool, tuple[Justification, ...]]] = {}

    def set(self, prop: str, d: int, value: bool, justs: tuple[Justification, ...]) -> bool:
        cell = self.cells.get((prop, d))
        if cell is None:
            self.cells[(prop, d)] = (value, justs)
            return True
        if cell[0] != value:
            raise ClassifierContradiction(
                f"{prop} at d={d}: derived both TRUE and FALSE"
            )
        return False

    def get(self, prop: str, d: int):
        return self.cells.get((prop, d))


def _support_graph(G: Graph) -> Graph:
    verts = sorted(support(G))
    if len(verts) == G.n:
        return G
    relabel = {v: k + 1 for k, v in enumerate(verts)}
    return Graph.of(len(verts), [(relabel[i], relabel[j]) for i, j in G.sorted_edges()])


def _complete_bipartite_sides(S: Graph):
    B = bipartition(S)
    if B is None or S.m == 0:
        return None
    a, b = len(B.left), len(B.right)
    if S.m == a * b:
        return tuple(sorted((a, b)))
    return None


def _cite(rule: str) -> str:
    return {
        "R1": "at level 1 the ideal is radical; it is a complete intersection "
        "exactly for matchings and prime exactly for edgeless graphs",
        "R2": "at level 2 the ideal is radical away from characteristic 2; in "
        "characteristic 2 radicality is equivalent to bipartiteness",
        "R3": "at level 2 the ideal is prime exactly when the graph is a matching",
        "R4": "at level 2 the ideal is a complete intersection exactly when the "
        "graph contains neither K_{1,3} nor an even cycle",
        "R5": "at level 3 the ideal is prime exactly when the graph contains "
        "neither K_{1,3} nor K_{2,2}",
        "R6": "for forests the ideal is radical at every level, a complete "
        "intersection from the maximum degree on, and prime one level later",
        "R7": "for complete bipartite graphs the ideal is always radical, a "
        "complete intersection from m+n-1 on, and prime from m+n on",
        "R8": "from the positive matching decomposition number on the ideal is "
        "a radical complete intersection, and prime one level later",
        "R9": "a complete bipartite subgraph with more than d vertices forces a "
        "rank drop, so the ideal is not prime; with d+2 vertices it is not "
        "a complete intersection",
        "R10": "in characteristic 0 a crown subgraph blocks primality at its own "
        "level and the complete intersection property one level below",
        "R11": "in characteristic 0 a clique on w vertices forces minors of a "
        "generic matrix into the ideal, pushing both thresholds up",
        "R12": "prime implies complete intersection at the same level; a complete "
        "intersection stays one and becomes prime from the next level on",
    }[rule]


def _just(rule: str, evidence: str = "") -> Justification:
    return Justification(rule, _cite(rule), evidence)


@lru_cache(maxsize=4096)
def _analyze(G: Graph, char: int | None, d_cap: int) -> dict:
    S = _support_graph(G)
    F = FieldAssumption(char)
    table = _Table()

    matching = is_matching(S)
    forest = is_forest(S)
    delta = max_degree(S)
    bip = bipartition(S) is not None
    complete_bip = _complete_bipartite_sides(S)
    pmd_upper = min(pmd_bounds(S)[1], len(greedy_pm_decomposition(S.as_clutter()).parts))

    contains_kab = lru_cache(maxsize=None)(
        lambda a, b: contains_complete_bipartite(S, a, b)
    )
    crown = lru_cache(maxsize=None)(lambda k: contains_crown(S, k))
    alpha = clique_number(S) if F.is_zero and S.m else 0

    for d in range(1, d_cap + 1):
        if d == 1:
            table.set("radical", 1, True, (_just("R1"),))
            table.set("ci", 1, matching, (_just("R1", "matching" if matching else "two edges share a vertex"),))
            table.set("prime", 1, S.m == 0, (_just("R1", "edgeless" if S.m == 0 else f"{S.m} edges"),))
        if d == 2:
            if F.known_not_two:
                table.set("radical", 2, True, (_just("R2", F.describe()),))
            elif F.is_two:
                table.set("radical", 2, bip, (_just("R2", "bipartite" if bip else "odd cycle present"),))
            elif bip:
                table.set("radical", 2, True, (_just("R2", "bipartite, so radical in every characteristic"),))
            table.set("prime", 2, matching, (_just("R3", "matching" if matching else "two edges share a vertex"),))
            ci2 = not contains_kab(1, 3) and not has_even_cycle(S)
            ev = "no K_{1,3}, no even cycle" if ci2 else (
                "K_{1,3} found" if contains_kab(1, 3) else "even cycle found"
            )
            table.set("ci", 2, ci2, (_just("R4", ev),))
        if d == 3:
            p3 = not contains_kab(1, 3) and not contains_kab(2, 2)
            ev = "no K_{1,3}, no K_{2,2}" if p3 else (
                "K_{1,3} found" if contains_kab(1, 3) else "K_{2,2} found"
            )
            table.set("prime", 3, p3, (_just("R5", ev),))
        if forest:
            ev = f"forest with max degree {delta}"
            table.set("radical", d, True, (_just("R6", ev),))
            table.set("ci", d, d >= delta, (_just("R6", ev),))
            table.set("prime", d, d >= delta + 1, (_just("R6", ev),))
        if complete_bip:
            cm, cn = complete_bip
            ev = f"complete bipartite K_{{{cm},{cn}}}"
            table.set("radical", d, True, (_just("R7", ev),))
            table.set("ci", d, d >= cm + cn - 1, (_just("R7", ev),))
            table.set("prime", d, d >= cm + cn, (_just("R7", ev),))
        if d >= pmd_upper:
            ev = f"decomposition into {pmd_upper} positive matchings"
            table.set("radical", d, True, (_just("R8", ev),))
            table.set("ci", d, True, (_just("R8", ev),))
        if d >= pmd_upper + 1:
            table.set("prime", d, True, (_just("R8", f"decomposition into {pmd_upper} positive matchings"),))
        if S.m:
            for a in range(1, d // 2 + 2):
                b = d + 1 - a
                if b >= a and b <= S.n and contains_kab(a, b):
                    table.set("prime", d, False, (_just("R9", f"K_{{{a},{b}}} found"),))
                    break
            for a in range(1, d // 2 + 2):
                b = d + 2 - a
                if b >= a and b <= S.n and contains_kab(a, b):
                    table.set("ci", d, False, (_just("R9", f"K_{{{a},{b}}} found"),))
                    break
        if F.is_zero and S.m:
            if d > 3 and 2 * d <= S.n and crown(d):
                table.set("prime", d, False, (_just("R10", f"crown B_{d} found"),))
            if d > 2 and 2 * (d + 1) <= S.n and crown(d + 1):
                table.set("ci", d, False, (_just("R10", f"crown B_{d + 1} found"),))
        if alpha >= 2:
            ev = f"clique number {alpha}"
            if d <= alpha + comb(w_of(alpha + 1) - 2, 2) - 2:
                table.set("ci", d, False, (_just("R11", ev),))
            if d <= alpha + comb(w_of(alpha) - 2, 2) - 1:
                table.set("prime", d, False, (_just("R11", ev),))

    # persistence closure
    changed = True
    while changed:
        changed = False
        for d in range(1, d_cap + 1):
            prime = table.get("prime", d)
            ci = table.get("ci", d)
            if prime and prime[0]:
                if table.set("ci", d, True, prime[1] + (_just("R12", f"prime at d={d}"),)):
                    changed = True
            if ci and ci[0] and d + 1 <= d_cap:
                if table.set("ci", d + 1, True, ci[1] + (_just("R12", f"complete intersection at d={d}"),)):
                    changed = True
                if table.set("prime", d + 1, True, ci[1] + (_just("R12", f"complete intersection at d={d}"),)):
                    changed = True
            if ci and not ci[0]:
                if table.set("prime", d, False, ci[1] + (_just("R12", f"not a complete intersection at d={d}"),)):
                    changed = True
                if d - 1 >= 1 and table.set("ci", d - 1, False, ci[1] + (_just("R12", f"not a complete intersection at d={d}"),)):
                    changed = True
            if prime and not prime[0] and d - 1 >= 1:
                step = (_just("R12", f"not prime at d={d}"),)
                if table.set("prime", d - 1, False, prime[1] + step):
                    changed = True
                if table.set("ci", d - 1, False, prime[1] + step):
                    changed = True
    return table.cells


def _cap_for(G: Graph, d: int, F: FieldAssumption) -> int:
    S = _support_graph(G)
    pmd_upper = pmd_bounds(S)[1]
    cap = max(d, pmd_upper + 1, S.n)
    if F.is_zero and S.m:
        alpha = clique_number(S)
        cap = max(
            cap,
            alpha + comb(w_of(alpha) - 2, 2),
            alpha + comb(w_of(alpha + 1) - 2, 2),
        )
    return cap


def classify(
    G: Graph, d: int, prop: str, F: FieldAssumption = FieldAssumption(None)
) -> tuple[Verdict, tuple[Justification, ...]]:
    """Three-valued status of the level-d edge ideal property."""
    if prop not in PROPERTIES:
        raise ValueError(f"property must be one of {PROPERTIES}")
    if d < 1:
        raise ValueError("d must be >= 1")
    cells = _analyze(G, F.char, _cap_for(G, d, F))
    cell = cells.get((prop, d))
    if cell is None:
        return UNKNOWN, ()
    value, justs = cell
    return (TRUE if value else FALSE), justs


def asym_bounds(
    G: Graph,
    prop: str,
    F: FieldAssumption = FieldAssumption(None),
    pmd_node_budget: int | None = 20000,
) -> AsymBounds:
    """Bracket the level from which the property holds for good.

    The upper bound comes from the decomposition number (exact when the
    search finishes, its cheap upper bound otherwise), tightened to the
    first level a rule certifies TRUE; the lower bound is one above the
    largest level at which an obstruction rule says FALSE.
    """
    if prop not in ("ci", "prime"):
        raise ValueError("threshold bounds are defined for ci and prime")
    H = G.as_clutter()
    res = exact_pmd(H, node_budget=pmd_node_budget)
    pmd_value = res.value if res.exact else res.upper
    upper = max(1, pmd_value + (1 if prop == "prime" else 0))
    lower = 1
    for d in range(1, upper + 1):
        verdict, _ = classify(G, d, prop, F)
        if verdict.is_false():
            lower = d + 1
        elif verdict.is_true():
            upper = d
            break
    return AsymBounds(prop, lower, upper)


# ---------------------------------------------------------------------------
# transfer to matrix coordinate sections


@dataclass(frozen=True)
class TransferStatement:
    kind: str
    subject: str
    conclusion: str
    height: int | None
    source: str

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "subject": self.subject,
            "conclusion": self.conclusion,
            "source": self.source,
        }
        if self.height is not None:
            out["height"] = self.height
        return out


@dataclass(frozen=True)
class TransferReport:
    applicable: bool
    notes: tuple[str, ...]
    statements: tuple[TransferStatement, ...]

    def as_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "notes": list(self.notes),
            "statements": [s.as_dict() for s in self.statements],
        }


def transfer_report(
    G: Graph, d: int, F: FieldAssumption = FieldAssumption(0)
) -> TransferReport:
    """Statements about minor and Pfaffian coordinate sections implied by
    the edge ideal's status at level d (twisted variant at level 2d for the
    Pfaffian side of bipartite graphs).  Valid in characteristic 0 only."""
    if not F.is_zero:
        return TransferReport(
            False,
            ("the transfer statements assume characteristic 0; "
             f"input was {F.describe()}",),
            (),
        )
    n = G.n
    bip = bipartition(G)
    statements: list[TransferStatement] = []
    seen = set()

    def emit(kind, subject, conclusion, height, source):
        key = (kind, subject, conclusion)
        if key not in seen:
            seen.add(key)
            statements.append(TransferStatement(kind, subject, conclusion, height, source))

    def transfer_block(kind, subject_fmt, minor_size, verdicts, source_tag, sizes):
        sub = subject_fmt.format(minor_size)
        rad, ci, prime = verdicts
        if rad.is_true():
            emit(kind, sub, "radical", None, f"radical at {source_tag}")
        if ci.is_true():
            try:
                h = expected_height(kind, **sizes)
            except ValueError:
                h = None
            emit(kind, sub, "maximal height", h, f"complete intersection at {source_tag}")
        if prime.is_true():
            emit(kind, sub, "prime", None, f"prime at {source_tag}")

    verdicts_d = tuple(classify(G, d, p, F)[0] for p in PROPERTIES)

    if d + 1 <= n:
        transfer_block(
            "symmetric",
            "I_{}(X^sym)",
            d + 1,
            verdicts_d,
            f"level {d}",
            {"n": n, "d": d + 1},
        )
    if bip is not None:
        m_side, n_side = len(bip.left), len(bip.right)
        if d + 1 <= min(m_side, n_side):
            transfer_block(
                "generic",
                "I_{}(X^gen)",
                d + 1,
                verdicts_d,
                f"level {d}",
                {"m": m_side, "n": n_side, "d": d + 1},
            )
        if 2 * d + 2 <= n:
            verdicts_2d = tuple(classify(G, 2 * d, p, F)[0] for p in PROPERTIES)
            transfer_block(
                "skew",
                "Pf_{}(X^skew)",
                2 * d + 2,
                verdicts_2d,
                f"level {2 * d} (twisted form is a linear change of the plain one)",
                {"n": n, "d": d + 1},
            )

    if d == 1 or d == 2:
        size = d + 1
        if size <= n:
            emit("symmetric", f"I_{size}(X^sym)", "radical", None, "small minors are always radical")
        if bip is not None and size <= min(len(bip.left), len(bip.right)):
            emit("generic", f"I_{size}(X^gen)", "radical", None, "small minors are always radical")
    if d == 1 and 4 <= n:
        emit("skew", "Pf_4(X^skew)", "radical", None, "size-4 Pfaffians are always radical")

    notes = []
    if is_forest(G):
        delta = max_degree(G)
        notes.append(
            f"forest: every minor and Pfaffian section is radical; minors of "
            f"size at least {delta + 1} have maximal height and of size at "
            f"least {delta + 2} are prime"
        )
        if d + 1 <= n:
            emit("symmetric", f"I_{d + 1}(X^sym)", "radical", None, "forest")
            if d + 1 >= delta + 1:
                try:
                    h = expected_height("symmetric", n=n, d=d + 1)
                except ValueError:
                    h = None
                emit("symmetric", f"I_{d + 1}(X^sym)", "maximal height", h, "forest")
            if d + 1 >= delta + 2:
                emit("symmetric", f"I_{d + 1}(X^sym)", "prime", None, "forest")
        if bip is not None and 2 * d + 2 <= n:
            emit("skew", f"Pf_{2 * d + 2}(X^skew)", "radical", None, "forest")

    return TransferReport(True, tuple(notes), tuple(statements))
