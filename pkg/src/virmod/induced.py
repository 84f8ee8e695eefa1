"""Induced modules Ind_theta(N) = U(Vir) (x)_{U(Vir_+)} N / (c - theta).

Every element is stored in the normal form ``sum_i l^i (x) v_i`` as a map
``(MultiIndex, N-monomial) -> coefficient``. The leading-term machinery and
the descent below check, step by step, that acting with ``l_{k+p}`` strictly
lowers the weight of the leading term.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .exactmath import ONE, ZERO, ExactMatrix, format_scalar, in_span, rref, scalar
from .lie import C, MultiIndex, UElement, _bracket_terms, _lmul, format_linear, word_to_factors
from .quotient import (
    ClaimViolation,
    NElement,
    QuotientSpec,
    _act_word,
    act,
    format_word,
    n_order_key,
    theorem1_hypotheses,
    word_weight,
)


@lru_cache(maxsize=None)
def _multiindex(word: tuple[int, ...]) -> MultiIndex:
    return MultiIndex.from_word(word)


@lru_cache(maxsize=None)
def _negword(m: MultiIndex) -> tuple[int, ...]:
    return m.to_word()


class InducedElement:
    """An element of Ind_theta(N) in normal form."""

    __slots__ = ("theta", "spec", "terms")

    def __init__(self, theta, spec: QuotientSpec, terms: dict | None = None):
        self.theta = scalar(theta)
        self.spec = spec
        out = {}
        for (m, w), c in (terms or {}).items():
            if c:
                if not isinstance(m, MultiIndex):
                    m = MultiIndex(m)
                out[(m, tuple(w))] = scalar(c)
        self.terms = out

    @classmethod
    def cyclic(cls, theta, spec: QuotientSpec) -> InducedElement:
        return cls(theta, spec, {(MultiIndex(), ()): ONE})

    @classmethod
    def from_nelement(cls, theta, v: NElement) -> InducedElement:
        """The copy 1 (x) v of v in the induced module."""
        return cls(theta, v.spec, {(MultiIndex(), w): c for w, c in v.terms.items()})

    @classmethod
    def basis(cls, theta, spec, m: MultiIndex, word=(), coeff=1) -> InducedElement:
        return cls(theta, spec, {(m, tuple(word)): coeff})

    def _check(self, other: InducedElement):
        if other.theta != self.theta:
            raise ValueError(
                f"cannot mix central charges {format_scalar(self.theta)} and {format_scalar(other.theta)}"
            )
        if other.spec != self.spec:
            raise ValueError("elements induced from different modules")

    def __add__(self, other: InducedElement) -> InducedElement:
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ZERO) + c
        return InducedElement(self.theta, self.spec, out)

    def __neg__(self):
        return InducedElement(self.theta, self.spec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> InducedElement:
        a = scalar(a)
        return InducedElement(self.theta, self.spec, {k: a * c for k, c in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, InducedElement)
            and self.theta == other.theta
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.theta, self.spec, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> set[MultiIndex]:
        return {m for m, _ in self.terms}

    def component(self, m: MultiIndex) -> NElement:
        """The N-coefficient v_i of l^i."""
        return NElement(self.spec, {w: c for (mm, w), c in self.terms.items() if mm == m})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: basis_key(kc[0]))

    def __repr__(self):
        return f"InducedElement({format_induced(self)!r}, theta={format_scalar(self.theta)})"

    def to_json(self) -> dict:
        return {
            "theta": format_scalar(self.theta),
            "spec": self.spec.to_json(),
            "terms": [
                {
                    "factors": [[g, e] for g, e in word_to_factors(_negword(m))],
                    "nfactors": [[g, e] for g, e in word_to_factors(w)],
                    "coeff": format_scalar(c),
                }
                for (m, w), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> InducedElement:
        spec = QuotientSpec.from_json(data["spec"])
        terms: dict = defaultdict(Fraction)
        for t in data["terms"]:
            neg = tuple(g for g, e in t["factors"] for _ in range(int(e)))
            nw = tuple(int(g) for g, e in t["nfactors"] for _ in range(int(e)))
            terms[(_multiindex(neg), nw)] += scalar(t["coeff"])
        return cls(data["theta"], spec, terms)


def basis_key(key) -> tuple:
    """Principal order on the multi-index, then the N-basis order."""
    m, w = key
    return (m.principal_key(), n_order_key(w))


def format_induced(v: InducedElement) -> str:
    items = []
    for (m, w), c in v.sorted_terms():
        neg = format_word(_negword(m)) or "1"
        items.append((f"{neg} ⊗ {format_word(w) or '1'}", c))
    return format_linear(items)


# ---------------------------------------------------------------------------
# The action
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ind_act(spec: QuotientSpec, theta: Fraction, j: int, neg: tuple, nw: tuple) -> tuple:
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    if j < 0:
        # negative generators only reorder among themselves, no central terms
        for (_, w), a in _lmul(j, neg):
            acc[(w, nw)] += a
    elif not neg:
        for w, a in _act_word(spec, j, nw):
            acc[((), w)] += a
    else:
        g, rest = neg[0], neg[1:]
        # l_j l_g rest = l_g (l_j rest) + [l_j, l_g] rest
        for (n1, w1), a in _ind_act(spec, theta, j, rest, nw):
            for key, b in _ind_act(spec, theta, g, n1, w1):
                acc[key] += a * b
        for h, a in _bracket_terms(j, g):
            if h == C:
                acc[(rest, nw)] += a * theta
            else:
                for key, b in _ind_act(spec, theta, h, rest, nw):
                    acc[key] += a * b
    return tuple((key, c) for key, c in acc.items() if c)


def ind_act(j, v: InducedElement) -> InducedElement:
    """The action of l_j (or of c, which acts as theta) on v."""
    if j == C:
        return v.scale(v.theta)
    j = int(j)
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for (m, w), c in v.terms.items():
        for (neg, w2), a in _ind_act(v.spec, v.theta, j, _negword(m), w):
            acc[(_multiindex(neg), w2)] += c * a
    return InducedElement(v.theta, v.spec, acc)


def apply_u(u: UElement, v: InducedElement) -> InducedElement:
    """u . v for u in U(Vir), with c acting as theta."""
    out = InducedElement(v.theta, v.spec)
    for mono, coeff in u.terms.items():
        x = v
        for g in reversed(mono.word()):
            x = ind_act(g, x)
        out = out + x.scale(coeff * v.theta ** mono.cpow)
    return out


def apply_u_to_n(u: UElement, v: NElement) -> NElement:
    """u . v for u in U(Vir_+); c and negative generators are rejected."""
    out = NElement(v.spec)
    for mono, coeff in u.terms.items():
        if mono.cpow:
            raise ValueError("c is not an element of Vir_+")
        x = v
        for g in reversed(mono.word()):
            if g < 0:
                raise ValueError(f"l[{g}] does not act on N")
            x = act(v.spec, g, x)
        out = out + x.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# Leading terms and the descent
# ---------------------------------------------------------------------------


def leading_term(v: InducedElement) -> MultiIndex:
    if not v:
        raise ValueError("the zero element has no leading term")
    return max(v.support(), key=MultiIndex.principal_key)


class Theorem1Step(NamedTuple):
    p: int
    image: InducedElement
    nonzero: bool
    leading_check: bool
    weight_drop: bool

    @property
    def ok(self) -> bool:
        return self.nonzero and self.leading_check and self.weight_drop


def theorem1_step(v: InducedElement) -> Theorem1Step:
    """Act by l_{k+p}, p the smallest position of the leading term, and check the claims."""
    if not theorem1_hypotheses(v.spec):
        raise ValueError(f"{v.spec} does not satisfy the hypotheses of the simplicity theorem")
    top = leading_term(v)
    if top.weight == 0:
        raise ValueError("already in 1 ⊗ N")
    p = top.min_support
    image = ind_act(v.spec.k + p, v)
    if not image:
        return Theorem1Step(p, image, False, False, False)
    new = leading_term(image)
    return Theorem1Step(p, image, True, new == top - MultiIndex.eps(p), new.weight < top.weight)


class DescentOutcome(NamedTuple):
    bottom: InducedElement
    steps: int


def descend(v: InducedElement, budget: int | None = None) -> DescentOutcome:
    """Iterate :func:`theorem1_step` until the leading term has weight 0."""
    if not v:
        raise ValueError("descent needs a nonzero element")
    if budget is None:
        budget = leading_term(v).weight
    steps = 0
    while leading_term(v).weight > 0:
        if steps >= budget:
            raise ClaimViolation(f"no bottom reached within {budget} steps")
        st = theorem1_step(v)
        if not st.ok:
            raise ClaimViolation(
                f"step {steps + 1} on {format_induced(v)}: nonzero={st.nonzero}, "
                f"leading={st.leading_check}, weight_drop={st.weight_drop}"
            )
        v = st.image
        steps += 1
    return DescentOutcome(v, steps)


# ---------------------------------------------------------------------------
# Truncated submodule closures
# ---------------------------------------------------------------------------


def _element_key_info(v):
    if isinstance(v, InducedElement):
        def wd(key):
            m, w = key
            return m.weight + word_weight(w), m.degree + len(w)
        return wd, basis_key, (MultiIndex(), ())
    def wd(w):
        return word_weight(w), len(w)
    return wd, n_order_key, ()


def _apply_op(j: int, v):
    if isinstance(v, InducedElement):
        return ind_act(j, v)
    return act(v.spec, j, v)


class Closure:
    """Result of :func:`truncated_closure`: an exact basis over labelled columns."""

    def __init__(self, columns: list, basis: ExactMatrix, generators: Sequence, ops: Sequence[int],
                 weight_bound: int, cyclic_key, in_slice):
        self.columns = columns
        self.basis = basis
        self.generators = list(generators)
        self.ops = list(ops)
        self.weight_bound = weight_bound
        self._cyclic_key = cyclic_key
        self._in_slice = in_slice

    @property
    def dimension(self) -> int:
        return self.basis.nrows

    def contains(self, v) -> bool:
        index = {key: n for n, key in enumerate(self.columns)}
        vec = [ZERO] * len(self.columns)
        for key, c in v.terms.items():
            if key not in index:
                return False
            vec[index[key]] = c
        return in_span(vec, self.basis)

    @property
    def contains_cyclic(self) -> bool:
        if self._cyclic_key not in self.columns:
            return False
        vec = [ONE if key == self._cyclic_key else ZERO for key in self.columns]
        return in_span(vec, self.basis)

    def certificate(self) -> dict:
        return {
            "generators": [g.to_json() for g in self.generators],
            "ops": self.ops,
            "weight_bound": self.weight_bound,
            "dimension": self.dimension,
            "contains_cyclic": self.contains_cyclic,
        }


def truncated_closure(generators: Sequence, ops: Iterable[int], weight_bound: int) -> Closure:
    """Span of the generators closed under ``ops``, inside the low slice.

    The slice consists of basis vectors with weight and degree at most
    ``weight_bound``. Images leaving the slice are kept for elimination, so
    combinations whose high parts cancel are still found. Every vector of the
    result lies in the generated submodule, so a missing vector (such as the
    cyclic one) is evidence of properness, never a false witness.
    """
    ops = list(ops)
    generators = list(generators)
    if not generators:
        return Closure([], ExactMatrix([], ncols=0), [], ops, weight_bound, None, None)
    wd, order, cyclic_key = _element_key_info(generators[0])

    def in_slice(key) -> bool:
        w, d = wd(key)
        return w <= weight_bound and d <= weight_bound

    def pivot_rank(key):
        # out-of-slice keys are eliminated first
        return (0 if in_slice(key) else 1, order(key))

    pivots: dict = {}  # pivot key -> reduced vector (dict)
    queue: list[dict] = []

    def insert(vec: dict):
        vec = {k: c for k, c in vec.items() if c}
        while vec:
            p = max(vec, key=pivot_rank)
            if p not in pivots:
                pivots[p] = vec
                if in_slice(p):
                    queue.append(vec)
                return
            b = pivots[p]
            f = vec[p] / b[p]
            for k, c in b.items():
                vec[k] = vec.get(k, ZERO) - f * c
            vec = {k: c for k, c in vec.items() if c}

    for g in generators:
        insert(dict(g.terms))
    template = generators[0]
    while queue:
        vec = queue.pop()
        if isinstance(template, InducedElement):
            elt = InducedElement(template.theta, template.spec, vec)
        else:
            elt = NElement(template.spec, vec)
        for j in ops:
            insert(dict(_apply_op(j, elt).terms))

    rows = [v for p, v in pivots.items() if in_slice(p)]
    columns = sorted({k for v in rows for k in v}, key=order)
    mat = ExactMatrix(
        [[v.get(k, ZERO) for k in columns] for v in rows], ncols=len(columns)
    )
    basis = rref(mat).nonzero_rows()
    return Closure(columns, basis, generators, ops, weight_bound, cyclic_key, in_slice)
