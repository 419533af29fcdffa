"""Sparse multivariate polynomials over exact rationals.

Exponent vectors are dense tuples indexed by a VariableSpace; variable
counts stay small (tens) so density is cheap and keeps hashing and term
orders simple.  Orders are encoded as key functions on exponent tuples:
bigger key means bigger monomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

# ---------------------------------------------------------------------------
# variable spaces


@dataclass(frozen=True)
class VariableSpace:
    """Named variables with an optional structural layout.

    kind "block" lays out y[i,l] for i in [n], l in [d] (shape (n, d)),
    "generic" x[i,j] row-major (shape (m, n)), "symmetric" x[i,j] for i<=j,
    "skew" x[i,j] for i<j (shape (n,)), and "custom" is just a name list.
    Auxiliary variables (an elimination t, say) sit after the first
    `base` structural ones.
    """

    kind: str
    shape: tuple[int, ...]
    names: tuple[str, ...]
    base: int

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if not 0 <= self.base <= len(self.names):
            raise ValueError("base count out of range")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def aux(self) -> tuple[str, ...]:
        return self.names[self.base:]

    def index(self, name: str) -> int:
        idx = _name_index(self.names).get(name)
        if idx is None:
            raise ValueError(f"unknown variable {name!r}")
        return idx

    def with_aux(self, *extra: str) -> "VariableSpace":
        return VariableSpace(self.kind, self.shape, self.names + tuple(extra), self.base)

    def block_index(self, i: int, l: int) -> int:
        if self.kind != "block":
            raise ValueError("block_index needs a block layout")
        n, d = self.shape
        if not (1 <= i <= n and 1 <= l <= d):
            raise ValueError(f"y[{i},{l}] outside block {n}x{d}")
        return (i - 1) * d + (l - 1)

    def entry_index(self, i: int, j: int) -> int:
        if self.kind == "generic":
            m, n = self.shape
            if not (1 <= i <= m and 1 <= j <= n):
                raise ValueError(f"x[{i},{j}] outside {m}x{n}")
            return (i - 1) * n + (j - 1)
        if self.kind == "symmetric":
            (n,) = self.shape
            if i > j:
                i, j = j, i
            if not (1 <= i <= j <= n):
                raise ValueError(f"x[{i},{j}] outside symmetric {n}x{n}")
            return (i - 1) * (2 * n - i + 2) // 2 + (j - i)
        if self.kind == "skew":
            (n,) = self.shape
            if not (1 <= i < j <= n):
                raise ValueError(f"x[{i},{j}] needs i < j within {n}")
            return (i - 1) * (2 * n - i) // 2 + (j - i - 1)
        raise ValueError(f"no entry layout for kind {self.kind!r}")


@lru_cache(maxsize=None)
def _name_index(names: tuple[str, ...]) -> dict[str, int]:
    return {nm: k for k, nm in enumerate(names)}


def block_space(n: int, d: int, name: str = "y") -> VariableSpace:
    names = tuple(f"{name}[{i},{l}]" for i in range(1, n + 1) for l in range(1, d + 1))
    return VariableSpace("block", (n, d), names, len(names))


def generic_space(m: int, n: int, name: str = "x") -> VariableSpace:
    names = tuple(f"{name}[{i},{j}]" for i in range(1, m + 1) for j in range(1, n + 1))
    return VariableSpace("generic", (m, n), names, len(names))


def symmetric_space(n: int, name: str = "x") -> VariableSpace:
    names = tuple(
        f"{name}[{i},{j}]" for i in range(1, n + 1) for j in range(i, n + 1)
    )
    return VariableSpace("symmetric", (n,), names, len(names))


def skew_space(n: int, name: str = "x") -> VariableSpace:
    names = tuple(
        f"{name}[{i},{j}]" for i in range(1, n + 1) for j in range(i + 1, n + 1)
    )
    return VariableSpace("skew", (n,), names, len(names))


def custom_space(names) -> VariableSpace:
    names = tuple(names)
    return VariableSpace("custom", (), names, len(names))


# ---------------------------------------------------------------------------
# exponent helpers (shared with the Groebner engine)

ExpT = tuple[int, ...]


def exps_mul(a: ExpT, b: ExpT) -> ExpT:
    return tuple(x + y for x, y in zip(a, b))


def exps_divides(a: ExpT, b: ExpT) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exps_div(a: ExpT, b: ExpT) -> ExpT:
    return tuple(x - y for x, y in zip(a, b))


def exps_lcm(a: ExpT, b: ExpT) -> ExpT:
    return tuple(max(x, y) for x, y in zip(a, b))


def exps_coprime(a: ExpT, b: ExpT) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# polynomials


def _canonical_terms(terms) -> tuple[tuple[ExpT, Fraction], ...]:
    acc: dict[ExpT, Fraction] = {}
    for exps, c in terms:
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        c = Fraction(c)
        if c:
            acc[exps] = acc.get(exps, Fraction(0)) + c
    return tuple(sorted((e, c) for e, c in acc.items() if c))


@dataclass(frozen=True)
class Polynomial:
    space: VariableSpace
    terms: tuple[tuple[ExpT, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical_terms(self.terms))
        for exps, _ in self.terms:
            if len(exps) != self.space.nvars:
                raise ValueError("exponent vector length does not match the space")

    # constructors
    @classmethod
    def zero(cls, space: VariableSpace) -> "Polynomial":
        return cls(space, ())

    @classmethod
    def constant(cls, space: VariableSpace, c) -> "Polynomial":
        return cls(space, (((0,) * space.nvars, Fraction(c)),))

    @classmethod
    def variable(cls, space: VariableSpace, ref) -> "Polynomial":
        k = ref if isinstance(ref, int) else space.index(ref)
        exps = tuple(1 if j == k else 0 for j in range(space.nvars))
        return cls(space, ((exps, Fraction(1)),))

    @classmethod
    def monomial(cls, space: VariableSpace, exps, c=1) -> "Polynomial":
        return cls(space, ((tuple(exps), Fraction(c)),))

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def coefficient(self, exps: ExpT) -> Fraction:
        for e, c in self.terms:
            if e == exps:
                return c
        return Fraction(0)

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.space != other.space:
            raise ValueError("polynomials live in different variable spaces")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        return Polynomial(self.space, self.terms + other.terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.space, tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[ExpT, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = exps_mul(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.space, tuple(out.items()))

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.space, tuple((e, c * v) for e, v in self.terms))

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.space, 1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, mapping: dict[int, "Polynomial"]) -> "Polynomial":
        """Replace variable k by mapping[k] (a polynomial in the same space)."""
        out = Polynomial.zero(self.space)
        for exps, c in self.terms:
            term = Polynomial.constant(self.space, c)
            for k, e in enumerate(exps):
                if not e:
                    continue
                base = mapping.get(k)
                if base is None:
                    base = Polynomial.variable(self.space, k)
                term = term * base ** e
            out = out + term
        return out

    def __str__(self) -> str:
        return poly_to_text(self)


# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials; key() returns a sort key, larger = bigger.

    kinds: degrevlex, lex, weight (total degree, then exact rational weight
    rows, then a degrevlex tie-break), elim (variables in `drop` dominate,
    degrevlex inside each group).
    """

    kind: str
    weights: tuple[tuple[Fraction, ...], ...] = ()
    drop: tuple[int, ...] = ()

    def key(self, exps: ExpT):
        if self.kind == "degrevlex":
            return _degrevlex_key(exps)
        if self.kind == "lex":
            return tuple(exps)
        if self.kind == "weight":
            dots = tuple(
                sum(w * e for w, e in zip(row, exps) if e) for row in self.weights
            )
            return (sum(exps), dots, _degrevlex_key(exps))
        if self.kind == "elim":
            dropped = set(self.drop)
            first = tuple(e for k, e in enumerate(exps) if k in dropped)
            rest = tuple(e for k, e in enumerate(exps) if k not in dropped)
            return (_degrevlex_key(first), _degrevlex_key(rest))
        raise ValueError(f"unknown order kind {self.kind!r}")

    def greater(self, a: ExpT, b: ExpT) -> bool:
        return self.key(a) > self.key(b)


def _degrevlex_key(exps: ExpT):
    return (sum(exps), tuple(-e for e in reversed(exps)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination_order(space: VariableSpace, drop) -> MonomialOrder:
    idx = tuple(sorted(d if isinstance(d, int) else space.index(d) for d in drop))
    return MonomialOrder("elim", drop=idx)


def leading_exponents(f: Polynomial, order: MonomialOrder) -> ExpT:
    if f.is_zero():
        raise ValueError("zero polynomial has no leading term")
    return max((e for e, _ in f.terms), key=order.key)


def initial_term(f: Polynomial, order: MonomialOrder) -> Polynomial:
    e = leading_exponents(f, order)
    return Polynomial.monomial(f.space, e, f.coefficient(e))


def order_from_decomposition(space: VariableSpace, D) -> MonomialOrder:
    """Weight order whose rows replay the decomposition's certificates.

    Row l gives y[i,l] the part-l weight of vertex i and kills every other
    layer, so among the d layered monomials of an edge generator the layer
    of the edge's own part wins: earlier rows see a negative sum (the edge
    was still residual), the row of its part sees a positive one.
    """
    if space.kind != "block":
        raise ValueError("decomposition orders need a block layout")
    n, d = space.shape
    p = len(D.parts)
    if d < p:
        raise ValueError(f"order needs d >= parts, got d={d} < p={p}")
    if len(D.certificates) != p:
        raise ValueError("decomposition is missing certificates")
    rows = []
    for l, cert in enumerate(D.certificates, start=1):
        row = [Fraction(0)] * space.nvars
        for v, w in cert.weights:
            if 1 <= v <= n:
                row[space.block_index(v, l)] = Fraction(w)
        rows.append(tuple(row))
    return MonomialOrder("weight", weights=tuple(rows))


# ---------------------------------------------------------------------------
# multigrading


def multidegree_of(f: Polynomial, space: VariableSpace) -> tuple[int, ...] | None:
    """Common Z^n degree (one slot per row index i) or None if mixed."""
    if space.kind != "block":
        raise ValueError("multidegree needs a block layout")
    n, d = space.shape
    degs = set()
    for exps, _ in f.terms:
        vec = [0] * n
        for i in range(1, n + 1):
            vec[i - 1] = sum(exps[space.block_index(i, l)] for l in range(1, d + 1))
        degs.add(tuple(vec))
    if not degs:
        return (0,) * n
    if len(degs) == 1:
        return degs.pop()
    return None


# ---------------------------------------------------------------------------
# text and JSON forms

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*(?:\[\d+(?:,\d+)*\])?)"
    r"|(?P<op>[-+*^()]))"
)


def parse_polynomial(space: VariableSpace, text: str) -> Polynomial:
    """Parse sums of products like "2*y[1,1]*y[2,1] - 1/3*t^2"."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize {text[pos:]!r}")
            break
        pos = m.end()
        for group in ("num", "name", "op"):
            val = m.group(group)
            if val is not None:
                tokens.append((group, val))
                break
    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else (None, None)

    def take(expect=None):
        nonlocal k
        if k >= len(tokens):
            raise ValueError("unexpected end of polynomial text")
        kind, val = tokens[k]
        if expect is not None and val != expect:
            raise ValueError(f"expected {expect!r}, found {val!r}")
        k += 1
        return kind, val

    def parse_sum() -> Polynomial:
        nonlocal k
        acc = Polynomial.zero(space)
        sign = 1
        if peek()[1] in ("+", "-"):
            sign = -1 if take()[1] == "-" else 1
        while True:
            acc = acc + parse_product().scale(sign)
            nxt = peek()[1]
            if nxt == ")" or nxt is None:
                return acc
            if nxt not in ("+", "-"):
                raise ValueError(f"expected + or - before {nxt!r}")
            sign = -1 if take()[1] == "-" else 1

    def parse_product() -> Polynomial:
        acc = parse_factor()
        while peek()[1] == "*":
            take("*")
            acc = acc * parse_factor()
        return acc

    def parse_factor() -> Polynomial:
        kind, val = take()
        if val == "(":
            inner = parse_sum()
            take(")")
            base = inner
        elif kind == "num":
            base = Polynomial.constant(space, Fraction(val))
        elif kind == "name":
            if val not in _name_index(space.names):
                raise ValueError(f"unknown variable {val!r}")
            base = Polynomial.variable(space, val)
        else:
            raise ValueError(f"unexpected token {val!r}")
        if peek()[1] == "^":
            take("^")
            ekind, eval_ = take()
            if ekind != "num" or "/" in eval_:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(eval_)
        return base

    out = parse_sum()
    if k != len(tokens):
        raise ValueError(f"trailing tokens near {tokens[k]!r}")
    return out


def _monomial_text(space: VariableSpace, exps: ExpT) -> str:
    parts = []
    for name, e in zip(space.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_text(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    if f.is_zero():
        return "0"
    chunks = []
    for exps, c in sorted(f.terms, key=lambda t: order.key(t[0]), reverse=True):
        mono = _monomial_text(f.space, exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)


def poly_to_json(f: Polynomial) -> dict:
    return {
        "terms": [
            {"coeff": str(c), "exps": list(e)}
            for e, c in sorted(f.terms, key=lambda t: _degrevlex_key(t[0]), reverse=True)
        ]
    }


def poly_from_json(space: VariableSpace, obj: dict) -> Polynomial:
    return Polynomial(
        space,
        tuple((tuple(t["exps"]), Fraction(t["coeff"])) for t in obj["terms"]),
    )
