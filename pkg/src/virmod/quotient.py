"""Quotient modules N = U(Vir_+)/I over the non-negative part.

I is the left ideal generated by ``l_s - lambda_s`` (s in S) and all ``l_j``
with j > k. A basis of N is given by the ordered monomials in the *free*
generators {0..k} \\ S applied to the cyclic vector ``1``; a monomial is
stored as the non-decreasing tuple of its indices, e.g. ``(0, 0, 2)`` for
``l_0^2 l_2 . 1``.

One data type covers every family: k = 2 with S = {1, 2} (:func:`ow_spec`),
S = {r+1..k} (:func:`lgz_spec`), S = {1, k} (:func:`gtilde_spec`), general
S inside {1..k} (:func:`q_spec`) and the one-dimensional highest-weight seed
(:func:`verma_spec`).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Iterable, NamedTuple

from .exactmath import ONE, ZERO, ExactMatrix, format_scalar, nullspace, scalar
from .lie import format_linear, revlex_key, word_to_factors


class ClaimViolation(RuntimeError):
    """A computation contradicted a claim it was built to certify."""


@dataclass(frozen=True)
class QuotientSpec:
    k: int
    S: frozenset
    lam: tuple = field(repr=False)  # sorted (s, lambda_s) pairs

    def __init__(self, k: int, S: Iterable[int], lam: dict):
        S = frozenset(int(s) for s in S)
        lam = {int(s): scalar(v) for s, v in lam.items()}
        if k < 0:
            raise ValueError("k must be non-negative")
        if not S <= set(range(k + 1)):
            raise ValueError(f"S must be a subset of {{0..{k}}}")
        missing = S - lam.keys()
        if missing:
            raise ValueError(f"lambda missing on {sorted(missing)}")
        extra = lam.keys() - S
        if extra:
            raise ValueError(f"lambda given outside S at {sorted(extra)}")
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "lam", tuple(sorted(lam.items())))

    @property
    def lam_map(self) -> dict[int, Fraction]:
        return dict(self.lam)

    def lam_at(self, s: int) -> Fraction:
        return self.lam_map[s]

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.k + 1) if i not in self.S)

    def __repr__(self):
        lam = ", ".join(f"{s}: {format_scalar(v)}" for s, v in self.lam)
        return f"QuotientSpec(k={self.k}, S={sorted(self.S)}, lam={{{lam}}})"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "S": sorted(self.S),
            "lambda": {str(s): format_scalar(v) for s, v in self.lam},
        }

    @classmethod
    def from_json(cls, data: dict) -> QuotientSpec:
        return cls(int(data["k"]), data["S"], {int(s): v for s, v in data["lambda"].items()})


def ow_spec(lam1, lam2) -> QuotientSpec:
    return QuotientSpec(2, {1, 2}, {1: lam1, 2: lam2})


def lgz_spec(k: int, lam: dict) -> QuotientSpec:
    """S = {r+1, ..., k} with r = ceil(k/2) - 1."""
    r = ceil(k / 2) - 1
    S = range(r + 1, k + 1)
    return QuotientSpec(k, S, {s: lam.get(s, 0) for s in S})


def gtilde_spec(k: int, lam1, lamk) -> QuotientSpec:
    if k < 2:
        raise ValueError("G~ needs k > 1")
    return QuotientSpec(k, {1, k}, {1: lam1, k: lamk})


def q_spec(k: int, S: Iterable[int], lam: dict) -> QuotientSpec:
    S = set(S)
    if 0 in S:
        raise ValueError("Q modules use S inside {1..k}")
    return QuotientSpec(k, S, lam)


def verma_spec(lam0) -> QuotientSpec:
    return QuotientSpec(0, {0}, {0: lam0})


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


def word_weight(word: tuple[int, ...]) -> int:
    return sum(word)


class NElement:
    """An element of N: map from basis monomials (index tuples) to scalars."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: QuotientSpec, terms: dict | None = None):
        self.spec = spec
        self.terms = {tuple(w): scalar(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def cyclic(cls, spec: QuotientSpec) -> NElement:
        return cls(spec, {(): ONE})

    @classmethod
    def monomial(cls, spec: QuotientSpec, word: Iterable[int], coeff=1) -> NElement:
        word = tuple(sorted(word))
        bad = set(word) - set(spec.free)
        if bad:
            raise ValueError(f"indices {sorted(bad)} are not free for {spec}")
        return cls(spec, {word: scalar(coeff)})

    def _check(self, other: NElement):
        if other.spec != self.spec:
            raise ValueError("elements of different quotient modules")

    def __add__(self, other: NElement) -> NElement:
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return NElement(self.spec, out)

    def __neg__(self):
        return NElement(self.spec, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> NElement:
        a = scalar(a)
        return NElement(self.spec, {w: a * c for w, c in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, NElement) and self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def max_weight(self) -> int:
        return max((word_weight(w) for w in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: n_order_key(wc[0]))

    def __repr__(self):
        return f"NElement({format_nelement(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"factors": [[g, e] for g, e in word_to_factors(w)], "coeff": format_scalar(c)}
                for w, c in self.sorted_terms()
            ]
        }


def n_order_key(word: tuple[int, ...]):
    """Deterministic basis order: weight, degree, then the word itself."""
    return (word_weight(word), len(word), word)


def format_word(word: tuple[int, ...]) -> str:
    return " * ".join(f"l[{g}]" if e == 1 else f"l[{g}]^{e}" for g, e in word_to_factors(word))


def format_nelement(v: NElement) -> str:
    return format_linear((format_word(w), c) for w, c in v.sorted_terms())


# ---------------------------------------------------------------------------
# The action
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _act_word(spec: QuotientSpec, j: int, word: tuple[int, ...]) -> tuple:
    free = spec.free
    if not word:
        if j in free:
            return (((j,), ONE),)
        if j in spec.S:
            lam = spec.lam_at(j)
            return (((), lam),) if lam else ()
        return ()
    g, rest = word[0], word[1:]
    if j in free and j <= g:
        return (((j,) + word, ONE),)
    acc: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    # l_j l_g rest = l_g (l_j rest) + (g - j) l_{j+g} rest; g is free and every
    # index in l_j rest is >= g, so l_g lands in front
    for w, a in _act_word(spec, j, rest):
        for w2, b in _act_word(spec, g, w):
            acc[w2] += a * b
    if g != j:
        for w, a in _act_word(spec, j + g, rest):
            acc[w] += (g - j) * a
    return tuple((w, c) for w, c in acc.items() if c)


def act(spec: QuotientSpec, j: int, v: NElement) -> NElement:
    """The class of l_j . v in N."""
    if j < 0:
        raise ValueError("only l_j with j >= 0 act on N")
    if v.spec != spec:
        raise ValueError("element belongs to a different quotient module")
    acc: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for w, c in v.terms.items():
        for w2, a in _act_word(spec, j, w):
            acc[w2] += c * a
    return NElement(spec, acc)


def act_word_on(spec: QuotientSpec, word: Iterable[int], v: NElement) -> NElement:
    """Apply l_{w_1} l_{w_2} ... l_{w_n} to v (rightmost factor first)."""
    for g in reversed(tuple(word)):
        v = act(spec, g, v)
    return v


def basis_words(spec: QuotientSpec, max_weight: int, max_degree: int | None = None) -> list[tuple[int, ...]]:
    """Basis monomials with weight <= max_weight and degree <= max_degree."""
    if max_degree is None:
        max_degree = max_weight
    out = []
    free = spec.free

    def rec(start: int, prefix: tuple[int, ...], wt: int):
        out.append(prefix)
        if len(prefix) == max_degree:
            return
        for idx in range(start, len(free)):
            g = free[idx]
            if wt + g <= max_weight:
                rec(idx, prefix + (g,), wt + g)

    rec(0, (), 0)
    return sorted(out, key=n_order_key)


# ---------------------------------------------------------------------------
# Conditions and hypotheses
# ---------------------------------------------------------------------------


class Conditions(NamedTuple):
    condI: bool
    condII: bool
    condIII: bool


def validate_spec(spec: QuotientSpec) -> Conditions:
    S, k, lam = spec.S, spec.k, spec.lam_map
    c1 = k in S and lam[k] != 0
    c2 = all(
        i + j > k or (i + j in S and lam[i + j] == 0)
        for i, j in itertools.permutations(sorted(S), 2)
    )
    c3 = all(k - j in S for j in range(1, k + 1) if j not in S)
    return Conditions(c1, c2, c3)


def theorem1_hypotheses(spec: QuotientSpec) -> bool:
    """l_k injective (lambda_k != 0 for these families) and l_i N = 0 for i > k."""
    return spec.k >= 1 and spec.k in spec.S and spec.lam_at(spec.k) != 0


def kernel_dimension(spec: QuotientSpec, j: int, max_weight: int, max_degree: int | None = None) -> int:
    """dim ker(l_j) restricted to the span of low basis monomials."""
    words = basis_words(spec, max_weight, max_degree)
    images = [act(spec, j, NElement(spec, {w: ONE})) for w in words]
    cols = sorted({w for im in images for w in im.terms}, key=n_order_key)
    # one row per target monomial, one column per source monomial
    mat = ExactMatrix([[im.terms.get(w, ZERO) for im in images] for w in cols], ncols=len(words))
    return nullspace(mat).nrows


# ---------------------------------------------------------------------------
# Whittaker vectors and the reducibility witness
# ---------------------------------------------------------------------------


def is_whittaker_closed(spec: QuotientSpec, v: NElement) -> bool:
    """l_i v = lambda_i v for i in S and l_j v = 0 for k < j <= k + weight(v)."""
    if not v:
        raise ValueError("the zero vector is not a witness")
    for i in sorted(spec.S):
        if act(spec, i, v) != v.scale(spec.lam_at(i)):
            return False
    for j in range(spec.k + 1, spec.k + v.max_weight() + 1):
        if act(spec, j, v):
            return False
    return True


class RemarkParameters(NamedTuple):
    r: int
    case: int  # 1 or 2
    s: int | None


def remark_parameters(spec: QuotientSpec) -> RemarkParameters:
    conds = validate_spec(spec)
    if conds.condIII:
        raise ValueError("spec satisfies condition (III): no witness exists by construction")
    k, S = spec.k, spec.S
    if k not in S or spec.lam_at(k) == 0:
        raise ValueError("the witness needs k in S and lambda_k != 0")
    if any(spec.lam_at(i) != 0 for i in S if i != k):
        raise ValueError("the witness needs lambda_i = 0 for i in S other than k")
    r = min(r for r in range(1, k) if r not in S and k - r not in S)
    if r % 2 == 0 and r // 2 in S:
        return RemarkParameters(r, 2, r // 2)
    return RemarkParameters(r, 1, None)


def remark_witness(spec: QuotientSpec) -> NElement:
    """A nonzero non-cyclic Whittaker vector when condition (III) fails."""
    r, case, s = remark_parameters(spec)
    k = spec.k
    one = NElement.cyclic(spec)
    if case == 1:
        return act(spec, k - r, one)
    lamk = spec.lam_at(k)
    sq = act_word_on(spec, (k - s, k - s), one)
    lin = act(spec, k - 2 * s, one)
    return sq.scale(k - 3 * s) - lin.scale(2 * lamk * (k - 2 * s))


# ---------------------------------------------------------------------------
# The relations of G~ and the quotient G
# ---------------------------------------------------------------------------


def grel_coefficients(k: int, lam_k) -> dict[int, Fraction]:
    """a_2..a_{k-2} from (j-1) a_j = j a_{j+1} + (k-2) lambda_k, a_{k-2} = 2(k-2)lambda_k/(k-3)."""
    if k < 4:
        raise ValueError("the relations need k >= 4")
    lam_k = scalar(lam_k)
    if lam_k == 0:
        raise ValueError("lambda_k must be nonzero")
    a = {k - 2: Fraction(2 * (k - 2)) * lam_k / (k - 3)}
    for j in range(k - 3, 1, -1):
        a[j] = (j * a[j + 1] + (k - 2) * lam_k) / (j - 1)
    return dict(sorted(a.items()))


def grel_relations(k: int, lam: dict) -> list[NElement]:
    """a_j l_j - l_{j+1} l_{k-1} (j = 2..k-2) as elements of G~."""
    if k < 4:
        raise ValueError("the relations need k >= 4; for k = 3 the module G~ is simple")
    lam = {int(s): scalar(v) for s, v in lam.items()}
    spec = gtilde_spec(k, lam.get(1, 0), lam[k])
    a = grel_coefficients(k, lam[k])
    one = NElement.cyclic(spec)
    rels = []
    for j in range(2, k - 1):
        rel = act(spec, j, one).scale(a[j]) - act_word_on(spec, (j + 1, k - 1), one)
        if not rel:
            raise ClaimViolation(f"relation {j} vanishes in G~")
        rels.append(rel)
    return rels


class GQuotient:
    """G = G~/I' for k = 4, basis l_0^a l_2^b l_3^e (e in {0, 1}).

    ``coefficient`` is the reduction l_3^2 -> coefficient * l_2; leaving it
    at None uses a_2 from the recursion.
    """

    def __init__(self, lam: dict, coefficient=None):
        lam = {int(s): scalar(v) for s, v in lam.items()}
        self.k = 4
        self.spec = gtilde_spec(4, lam.get(1, 0), lam[4])
        self.coefficient = (
            grel_coefficients(4, lam[4])[2] if coefficient is None else scalar(coefficient)
        )
        self._memo: dict[tuple[int, ...], dict] = {}

    def _reduce_word(self, word: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
        if word.count(3) < 2:
            return {word: ONE}
        if word in self._memo:
            return self._memo[word]
        prefix = list(word)
        prefix.remove(3)
        prefix.remove(3)
        seed = NElement(self.spec, {(2,): self.coefficient})
        image = act_word_on(self.spec, prefix, seed)
        out = self.reduce(image).terms
        self._memo[word] = out
        return out

    def reduce(self, v: NElement) -> NElement:
        acc: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for w, c in v.terms.items():
            for w2, a in self._reduce_word(w).items():
                acc[w2] += c * a
        return NElement(self.spec, acc)

    def act(self, j: int, v: NElement) -> NElement:
        return self.reduce(act(self.spec, j, v))

    def basis(self, bound: int) -> list[tuple[int, ...]]:
        return [w for w in basis_words(self.spec, bound, bound) if w.count(3) <= 1]


def quotient_consistency(k: int, lam: dict, degree_bound: int, coefficient=None) -> bool:
    """Check the commutator identities of G~/I' on low basis vectors (k = 4 only)."""
    if k != 4:
        raise ValueError("the reduced basis is only available for k = 4")
    G = GQuotient(lam, coefficient)
    for w in G.basis(degree_bound):
        v = NElement(G.spec, {w: ONE})
        for i in range(0, 2 * k + 1):
            vi = G.act(i, v)
            for j in range(i + 1, 2 * k + 1):
                lhs = G.act(i, G.act(j, v)) - G.act(j, vi)
                if lhs != G.act(i + j, v).scale(j - i):
                    return False
    return True


# ---------------------------------------------------------------------------
# Descent to the cyclic vector
# ---------------------------------------------------------------------------


def highest_term(v: NElement) -> tuple[int, ...]:
    """Maximum of the support in the order min-support-first, then recursive."""
    if not v:
        raise ValueError("zero element has no highest term")
    return max(v.terms, key=revlex_key)


class DescentResult(NamedTuple):
    witness: NElement
    steps: int


def simplicity_descent(spec: QuotientSpec, v: NElement, budget: int = 1000) -> DescentResult:
    """Apply (l_{k-p} - lambda_{k-p}) until only the cyclic vector is left.

    p is the smallest index of the highest term; each step must remove one
    factor l_p from that term, otherwise :class:`ClaimViolation` is raised.
    """
    if not v:
        raise ValueError("descent needs a nonzero element")
    steps = 0
    while set(v.terms) != {()}:
        if steps >= budget:
            raise ClaimViolation(f"descent did not finish within {budget} steps")
        top = highest_term(v)
        p = top[0]
        g = spec.k - p
        if g not in spec.S:
            raise ClaimViolation(f"l_{g} is not among the scalar generators (p = {p})")
        nv = act(spec, g, v) - v.scale(spec.lam_at(g))
        if not nv:
            raise ClaimViolation(f"(l_{g} - lambda_{g}) killed {format_nelement(v)}")
        if highest_term(nv) != top[1:]:
            raise ClaimViolation(
                f"highest term went from {top} to {highest_term(nv)}, expected {top[1:]}"
            )
        v = nv
        steps += 1
    return DescentResult(v, steps)
