"""Witt algebras w_n of derivations of Q[x_1..x_n], and lower central series."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .exactmath import ONE, ZERO, ExactMatrix, format_scalar, pivot_columns, rref, scalar


class WittBasisElt(NamedTuple):
    """x^m d/dx_i; ``i`` counts from 1."""

    i: int
    m: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.m)


def D(i: int, m) -> WittBasisElt:
    m = tuple(int(e) for e in m)
    if not 1 <= i <= len(m):
        raise ValueError(f"direction {i} outside 1..{len(m)}")
    if any(e < 0 for e in m):
        raise ValueError("exponents must be non-negative")
    return WittBasisElt(i, m)


class WittElement:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {b: scalar(c) for b, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, b: WittBasisElt, coeff=1) -> WittElement:
        return cls({b: coeff})

    def __add__(self, other: WittElement) -> WittElement:
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, ZERO) + c
        return WittElement(out)

    def __neg__(self):
        return WittElement({b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> WittElement:
        a = scalar(a)
        return WittElement({b: a * c for b, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, WittElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        body = ", ".join(f"{format_scalar(c)}*D{b.i}{b.m}" for b, c in sorted(self.terms.items()))
        return f"WittElement({body or '0'})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": b.i, "m": list(b.m), "coeff": format_scalar(c)}
                for b, c in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> WittElement:
        out = WittElement()
        for t in data["terms"]:
            out = out + WittElement({D(int(t["i"]), t["m"]): t["coeff"]})
        return out


def witt_bracket(a: WittBasisElt, b: WittBasisElt) -> WittElement:
    """[x^a d_i, x^b d_j] = b_i x^(a+b-e_i) d_j - a_j x^(a+b-e_j) d_i."""
    if a.n != b.n:
        raise ValueError("basis elements of different Witt algebras")
    i, j = a.i, b.i
    s = [x + y for x, y in zip(a.m, b.m)]
    out: dict[WittBasisElt, Fraction] = defaultdict(Fraction)
    if b.m[i - 1]:
        m = list(s)
        m[i - 1] -= 1
        out[WittBasisElt(j, tuple(m))] += b.m[i - 1]
    if a.m[j - 1]:
        m = list(s)
        m[j - 1] -= 1
        out[WittBasisElt(i, tuple(m))] -= a.m[j - 1]
    return WittElement(out)


def bracket_elements(x: WittElement, y: WittElement) -> WittElement:
    out = WittElement()
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            out = out + witt_bracket(a, b).scale(ca * cb)
    return out


# ---------------------------------------------------------------------------
# Derivations acting on polynomials (independent check of the bracket)
# ---------------------------------------------------------------------------

Poly = dict  # exponent tuple -> Fraction


def apply_derivation(d: WittBasisElt, p: Poly) -> Poly:
    out: dict = defaultdict(Fraction)
    for mono, c in p.items():
        e = mono[d.i - 1]
        if e:
            new = [x + y for x, y in zip(mono, d.m)]
            new[d.i - 1] -= 1
            out[tuple(new)] += c * e
    return {m: c for m, c in out.items() if c}


def apply_witt(x: WittElement, p: Poly) -> Poly:
    out: dict = defaultdict(Fraction)
    for d, c in x.terms.items():
        for m, v in apply_derivation(d, p).items():
            out[m] += c * v
    return {m: c for m, c in out.items() if c}


def commutator_on(a: WittBasisElt, b: WittBasisElt, p: Poly) -> Poly:
    """(a b - b a)(p) by composing the two derivations."""
    ab = apply_derivation(a, apply_derivation(b, p))
    ba = apply_derivation(b, apply_derivation(a, p))
    out = defaultdict(Fraction, ab)
    for m, c in ba.items():
        out[m] -= c
    return {m: c for m, c in out.items() if c}


def monomials_up_to(n: int, degree: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, left):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e)

    rec([], degree)
    return out


def matches_composition_oracle(a: WittBasisElt, b: WittBasisElt, degree: int = 4) -> bool:
    br = witt_bracket(a, b)
    for mono in monomials_up_to(a.n, degree):
        p = {mono: ONE}
        if apply_witt(br, p) != commutator_on(a, b, p):
            return False
    return True


# ---------------------------------------------------------------------------
# The two commutator shapes used for all-but-finitely-many generation
# ---------------------------------------------------------------------------


class Prop62Result(NamedTuple):
    result: WittElement
    target: WittBasisElt
    is_scalar_multiple: bool
    scalar: Fraction | None


def prop62_identity(i: int, j: int, m_prime, m_dprime, threshold: int = 0) -> Prop62Result:
    """Bracket realising D_i(m' + m'') from an element supported on direction j.

    Requires m' concentrated on coordinate j with m'_j > threshold and
    m''_j = 0. For i == j the bracket is [D_i(m' + e_i), D_i(m'')], otherwise
    [D_j(m'), D_i(m'' + e_j)].
    """
    mp = tuple(int(e) for e in m_prime)
    mpp = tuple(int(e) for e in m_dprime)
    n = len(mp)
    if len(mpp) != n or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("index or length mismatch")
    if any(e for s, e in enumerate(mp, start=1) if s != j):
        raise ValueError("m' must be supported on coordinate j only")
    if mp[j - 1] <= threshold:
        raise ValueError(f"need m'_j > {threshold}")
    if mpp[j - 1] != 0:
        raise ValueError("m'' must vanish at coordinate j")
    m = tuple(x + y for x, y in zip(mp, mpp))
    target = D(i, m)

    def plus_e(v, s):
        v = list(v)
        v[s - 1] += 1
        return tuple(v)

    if i == j:
        res = witt_bracket(D(i, plus_e(mp, i)), D(i, mpp))
    else:
        res = witt_bracket(D(j, mp), D(i, plus_e(mpp, j)))
    ok = set(res.terms) == {target}
    return Prop62Result(res, target, ok, res.terms.get(target) if ok else None)


# ---------------------------------------------------------------------------
# Lower central series of a graded family at truncation
# ---------------------------------------------------------------------------

Bracket = Callable[[int, int], dict]


def positive_virasoro_bracket(a: int, b: int) -> dict[int, Fraction]:
    """[l_a, l_b] = (b - a) l_{a+b} on Vir_+^(0) = span{l_i : i >= 1}."""
    return {a + b: Fraction(b - a)} if a != b else {}


class LCSTerm(NamedTuple):
    depth: int
    indices: frozenset
    codim: int
    coordinate: bool  # spanned by basis generators exactly


def lower_central_series(bracket: Bracket, generators: Iterable[int], depth: int,
                         index_bound: int) -> list[LCSTerm]:
    """n_0 = n, n_i = [n_{i-1}, n], inside the span of generators <= index_bound."""
    gens = sorted(g for g in generators if g <= index_bound)
    col = {g: n for n, g in enumerate(gens)}
    current = ExactMatrix([[ONE if c == r else ZERO for c in range(len(gens))] for r in range(len(gens))],
                          ncols=len(gens))
    out = [LCSTerm(0, frozenset(gens), 0, True)]
    for d in range(1, depth + 1):
        rows = []
        for row in current.rows:
            x = {gens[c]: v for c, v in enumerate(row) if v}
            for g in gens:
                acc = [ZERO] * len(gens)
                for a, ca in x.items():
                    for h, cb in bracket(a, g).items():
                        if h in col:
                            acc[col[h]] += ca * cb
                if any(acc):
                    rows.append(acc)
        current = rref(ExactMatrix(rows, ncols=len(gens))).nonzero_rows()
        piv = pivot_columns(current)
        coordinate = all(sum(1 for v in row if v) == 1 for row in current.rows)
        idx = frozenset(gens[c] for c in piv)
        out.append(LCSTerm(d, idx, len(gens) - len(idx), coordinate))
    return out
