"""Virasoro bracket, PBW normal forms in U(Vir), multi-indices and their orders.

Generators are ``l_i`` (an ``int`` i) and the central ``c`` (the string ``"c"``).
A PBW monomial keeps its ``c``-power apart and lists the ``l``-factors with
strictly increasing index, so ``l[-3]^2 l[-1] l[0]`` is already normal.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .exactmath import ONE, ZERO, format_scalar, scalar

C = "c"


# ---------------------------------------------------------------------------
# Multi-indices
# ---------------------------------------------------------------------------


class MultiIndex:
    """A finitely supported vector (..., i_2, i_1) of non-negative integers.

    ``exps[s-1]`` is the entry at position ``s``; trailing zeros are trimmed,
    so equal multi-indices have equal representations.
    """

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[int] = ()):
        exps = list(exps)
        if any(e < 0 for e in exps):
            raise ValueError("multi-index entries must be non-negative")
        while exps and exps[-1] == 0:
            exps.pop()
        self.exps = tuple(exps)

    @classmethod
    def eps(cls, s: int) -> MultiIndex:
        if s < 1:
            raise ValueError("positions start at 1")
        return cls([0] * (s - 1) + [1])

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> MultiIndex:
        n = max((s for s, e in d.items() if e), default=0)
        return cls([d.get(s, 0) for s in range(1, n + 1)])

    def __getitem__(self, s: int) -> int:
        return self.exps[s - 1] if 1 <= s <= len(self.exps) else 0

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.exps == other.exps

    def __hash__(self):
        return hash(("MultiIndex", self.exps))

    def __repr__(self):
        if not self.exps:
            return "MultiIndex(0)"
        parts = [f"{e}*eps{s}" if e != 1 else f"eps{s}" for s, e in self.items()]
        return "MultiIndex(" + " + ".join(parts) + ")"

    def __add__(self, other: MultiIndex) -> MultiIndex:
        n = max(len(self.exps), len(other.exps))
        return MultiIndex(self[s] + other[s] for s in range(1, n + 1))

    def __sub__(self, other: MultiIndex) -> MultiIndex:
        n = max(len(self.exps), len(other.exps))
        return MultiIndex(self[s] - other[s] for s in range(1, n + 1))

    def __bool__(self):
        return bool(self.exps)

    def items(self):
        return [(s, e) for s, e in enumerate(self.exps, start=1) if e]

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def weight(self) -> int:
        return sum(s * e for s, e in enumerate(self.exps, start=1))

    @property
    def min_support(self) -> int:
        for s, e in enumerate(self.exps, start=1):
            if e:
                return s
        raise ValueError("the zero multi-index has empty support")

    def positions(self) -> tuple[int, ...]:
        """Support positions with multiplicity, ascending."""
        return tuple(s for s, e in enumerate(self.exps, start=1) for _ in range(e))

    def revlex_key(self) -> tuple:
        return revlex_key(self.positions())

    def principal_key(self) -> tuple:
        return (self.weight, self.degree, self.revlex_key())

    def to_word(self) -> tuple[int, ...]:
        """The negative-index word of l^i = ... l_{-2}^{i_2} l_{-1}^{i_1}."""
        return tuple(-s for s in reversed(self.positions()))

    @classmethod
    def from_word(cls, word: Iterable[int]) -> MultiIndex:
        d: dict[int, int] = defaultdict(int)
        for g in word:
            if g >= 0:
                raise ValueError("negative part words contain only negative indices")
            d[-g] += 1
        return cls.from_dict(d)


def revlex_key(positions: Iterable[int]) -> tuple:
    """Sort key realising the recursive reverse-lexicographic order.

    ``positions`` lists the support with multiplicity, ascending. A larger
    minimal position makes the element smaller, ties recurse after removing
    that position, and the empty vector is the minimum.
    """
    return tuple(-p for p in sorted(positions))


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def cmp_revlex(a: MultiIndex, b: MultiIndex) -> int:
    """-1, 0, 1 as a <, =, > b in the reverse-lexicographic order."""
    pa, pb = a.positions(), b.positions()
    for x, y in zip(pa, pb):
        if x != y:
            return -1 if x > y else 1
    return _sign(len(pa), len(pb))


def cmp_principal(a: MultiIndex, b: MultiIndex) -> int:
    """Compare by weight, then degree, then reverse-lex."""
    if a.weight != b.weight:
        return _sign(a.weight, b.weight)
    if a.degree != b.degree:
        return _sign(a.degree, b.degree)
    return cmp_revlex(a, b)


# ---------------------------------------------------------------------------
# PBW monomials and U(Vir)
# ---------------------------------------------------------------------------


class PBWMonomial(NamedTuple):
    cpow: int
    factors: tuple[tuple[int, int], ...]  # (index, exponent), indices increasing

    @classmethod
    def from_word(cls, cpow: int, word: Iterable[int]) -> PBWMonomial:
        return cls(cpow, word_to_factors(word))

    def word(self) -> tuple[int, ...]:
        return factors_to_word(self.factors)

    @property
    def degree(self) -> int:
        return self.cpow + sum(e for _, e in self.factors)


def word_to_factors(word: Iterable[int]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for g in word:
        if out and out[-1][0] == g:
            out[-1][1] += 1
        else:
            if out and out[-1][0] > g:
                raise ValueError("word is not in PBW order")
            out.append([g, 1])
    return tuple((g, e) for g, e in out)


def factors_to_word(factors) -> tuple[int, ...]:
    return tuple(g for g, e in factors for _ in range(e))


def central_coefficient(i: int) -> Fraction:
    return Fraction(i ** 3 - i, 12)


def _bracket_terms(i: int, j: int) -> list[tuple[object, Fraction]]:
    out = []
    if j != i:
        out.append((i + j, Fraction(j - i)))
    if i == -j and central_coefficient(i):
        out.append((C, central_coefficient(i)))
    return out


class UElement:
    """A finite Q-combination of PBW monomials; never stores zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[PBWMonomial, Fraction] | None = None):
        self.terms = {m: scalar(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> UElement:
        return cls()

    @classmethod
    def one(cls) -> UElement:
        return cls({PBWMonomial(0, ()): ONE})

    @classmethod
    def gen(cls, g) -> UElement:
        if g == C:
            return cls({PBWMonomial(1, ()): ONE})
        return cls({PBWMonomial(0, ((int(g), 1),)): ONE})

    @classmethod
    def constant(cls, a) -> UElement:
        return cls({PBWMonomial(0, ()): scalar(a)})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UElement.constant(other)
        return isinstance(other, UElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: UElement) -> UElement:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return UElement(out)

    def __neg__(self) -> UElement:
        return UElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: UElement) -> UElement:
        return self + (-other)

    def scale(self, a) -> UElement:
        a = scalar(a)
        return UElement({m: a * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, a):
        return self.scale(a)

    def __pow__(self, n: int) -> UElement:
        out = UElement.one()
        for _ in range(n):
            out = multiply(out, self)
        return out

    def __repr__(self):
        return f"UElement({format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _monomial_sort_key(mc[0]))

    def to_json(self) -> dict:
        return {
            "terms": [
                {"cpow": m.cpow, "factors": [[g, e] for g, e in m.factors], "coeff": format_scalar(c)}
                for m, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> UElement:
        out = UElement()
        for t in data["terms"]:
            m = PBWMonomial(int(t["cpow"]), tuple((int(g), int(e)) for g, e in t["factors"]))
            if any(e <= 0 for _, e in m.factors) or m.cpow < 0:
                raise ValueError("exponents must be positive")
            word_to_factors(m.word())  # validates ordering
            out = out + UElement({m: scalar(t["coeff"])})
        return out


def _monomial_sort_key(m: PBWMonomial):
    return (m.degree, m.cpow, m.factors)


def bracket(i, j) -> UElement:
    """[x, y] for generators x, y in {c} U {l_n}."""
    if i == C or j == C:
        return UElement()
    out = UElement()
    for g, a in _bracket_terms(int(i), int(j)):
        out = out + UElement.gen(g).scale(a)
    return out


@lru_cache(maxsize=None)
def _lmul(g: int, word: tuple[int, ...]) -> tuple[tuple[tuple[int, tuple[int, ...]], Fraction], ...]:
    """l_g * (l-word in PBW order) straightened; keys are (c-power, word)."""
    if not word or g <= word[0]:
        return (((0, (g,) + word), ONE),)
    w0, rest = word[0], word[1:]
    acc: dict[tuple[int, tuple[int, ...]], Fraction] = defaultdict(Fraction)
    # l_g l_w0 rest = l_w0 (l_g rest) + [l_g, l_w0] rest
    for (cp, w), a in _lmul(g, rest):
        for (cp2, w2), b in _lmul(w0, w):
            acc[(cp + cp2, w2)] += a * b
    for h, a in _bracket_terms(g, w0):
        if h == C:
            acc[(1, rest)] += a
        else:
            for (cp, w), b in _lmul(h, rest):
                acc[(cp, w)] += a * b
    return tuple((k, v) for k, v in acc.items() if v)


def straighten_word(word: Iterable[int]) -> dict[tuple[int, tuple[int, ...]], Fraction]:
    """Normal form of an arbitrary product of l-generators."""
    cur: dict[tuple[int, tuple[int, ...]], Fraction] = {(0, ()): ONE}
    for g in reversed(tuple(word)):
        nxt: dict[tuple[int, tuple[int, ...]], Fraction] = defaultdict(Fraction)
        for (cp, w), a in cur.items():
            for (cp2, w2), b in _lmul(g, w):
                nxt[(cp + cp2, w2)] += a * b
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def multiply(a: UElement, b: UElement) -> UElement:
    """Product in U(Vir), returned in PBW normal form."""
    acc: dict[PBWMonomial, Fraction] = defaultdict(Fraction)
    for m1, c1 in a.terms.items():
        w1 = m1.word()
        for m2, c2 in b.terms.items():
            for (cp, w), x in straighten_word(w1 + m2.word()).items():
                acc[PBWMonomial.from_word(m1.cpow + m2.cpow + cp, w)] += c1 * c2 * x
    return UElement(acc)


def commutator(a: UElement, b: UElement) -> UElement:
    return multiply(a, b) - multiply(b, a)


def iterated_ad(i: int, j: int, s: int) -> UElement:
    """ad(l_i)^s (l_j), by repeated commutators in U(Vir)."""
    if s < 0:
        raise ValueError("s must be non-negative")
    li = UElement.gen(i)
    x = UElement.gen(j)
    for _ in range(s):
        x = commutator(li, x)
    return x


def iterated_ad_closed_form(i: int, j: int, s: int) -> UElement:
    """prod_{t<s} (j + (t-1) i) * l_{j+s i}; valid when no central term arises."""
    coeff = ONE
    for t in range(s):
        coeff *= j + (t - 1) * i
    return UElement.gen(j + s * i).scale(coeff)


def central_free(i: int, j: int, s: int) -> bool:
    return all(j + t * i != -i for t in range(s))


# ---------------------------------------------------------------------------
# Text format (parsed back by virmod.parse)
# ---------------------------------------------------------------------------


def format_monomial(m: PBWMonomial) -> str:
    parts = []
    if m.cpow:
        parts.append("c" if m.cpow == 1 else f"c^{m.cpow}")
    for g, e in m.factors:
        parts.append(f"l[{g}]" if e == 1 else f"l[{g}]^{e}")
    return " * ".join(parts)


def format_linear(items) -> str:
    """Join (monomial text, coefficient) pairs as ``a * m + b * n - ...``."""
    out = []
    for k, (mono, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_scalar(a)} * {mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) or "0"


def format_element(x: UElement) -> str:
    return format_linear((format_monomial(m), c) for m, c in x.sorted_terms())
