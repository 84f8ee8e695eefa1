"""The solvable quotients a_n = Vir_+ / Vir_+^(n) and modules over b = a_1, c = a_2.

Modules are given by explicit operators on a countable basis indexed by
0, 1, 2, ...; all checks run on a finite window of basis vectors.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, NamedTuple

from .exactmath import ONE, ZERO, scalar
from .quotient import NElement, QuotientSpec, act

DEFAULT_WINDOW = 12

Vector = dict  # basis index -> Fraction
Operator = Callable[[int], Vector]


class TruncatedAlgebra:
    """Basis l_0..l_n with [l_i, l_j] = (j - i) l_{i+j} when i + j <= n, else 0."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n

    @property
    def generators(self) -> range:
        return range(self.n + 1)

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        if i + j <= self.n and i != j:
            return {i + j: Fraction(j - i)}
        return {}

    def __repr__(self):
        return f"TruncatedAlgebra(n={self.n})"

    def check_antisymmetry(self) -> bool:
        return all(
            self.bracket(i, j) == {g: -c for g, c in self.bracket(j, i).items()}
            for i, j in itertools.product(self.generators, repeat=2)
        )

    def check_jacobi(self) -> bool:
        def br(x: dict, y: dict) -> dict:
            out: dict[int, Fraction] = defaultdict(Fraction)
            for a, ca in x.items():
                for b, cb in y.items():
                    for g, c in self.bracket(a, b).items():
                        out[g] += ca * cb * c
            return {g: c for g, c in out.items() if c}

        for i, j, k in itertools.product(self.generators, repeat=3):
            li, lj, lk = {i: ONE}, {j: ONE}, {k: ONE}
            total: dict[int, Fraction] = defaultdict(Fraction)
            for part in (br(li, br(lj, lk)), br(lj, br(lk, li)), br(lk, br(li, lj))):
                for g, c in part.items():
                    total[g] += c
            if any(total.values()):
                return False
        return True


B_ALGEBRA = TruncatedAlgebra(1)
C_ALGEBRA = TruncatedAlgebra(2)


def _add(acc: dict, vec: Vector, coeff=ONE):
    for b, c in vec.items():
        acc[b] = acc.get(b, ZERO) + coeff * c


def _clean(vec: dict) -> Vector:
    return {b: c for b, c in vec.items() if c}


@dataclass
class TruncatedModule:
    algebra: TruncatedAlgebra
    actions: dict  # generator -> Operator on basis indices
    name: str = "module"
    notes: list = field(default_factory=list)

    def apply(self, g: int, vec: Vector) -> Vector:
        op = self.actions.get(g)
        if op is None:
            return {}
        acc: dict = {}
        for b, c in vec.items():
            _add(acc, op(b), c)
        return _clean(acc)

    def apply_element(self, x: dict[int, Fraction], vec: Vector) -> Vector:
        """Act by a linear combination of generators."""
        acc: dict = {}
        for g, c in x.items():
            _add(acc, self.apply(g, vec), c)
        return _clean(acc)


def validate_module(m: TruncatedModule, window: int = DEFAULT_WINDOW) -> bool:
    """rho(l_i) rho(l_j) - rho(l_j) rho(l_i) = rho([l_i, l_j]) on basis vectors 0..window-1."""
    gens = list(m.algebra.generators)
    for b in range(window):
        e = {b: ONE}
        for i, j in itertools.combinations(gens, 2):
            lhs: dict = {}
            _add(lhs, m.apply(i, m.apply(j, e)))
            _add(lhs, m.apply(j, m.apply(i, e)), -ONE)
            if _clean(lhs) != m.apply_element(m.algebra.bracket(i, j), e):
                return False
    return True


# ---------------------------------------------------------------------------
# Shipped b-modules
# ---------------------------------------------------------------------------


def shift_family(lam1, shift=-1) -> TruncatedModule:
    """C[l_0] with l_0 acting by multiplication and l_1 f(l_0) = lam1 f(l_0 + shift).

    ``shift = -1`` is the simple b-module of the k = 1 quotient family; any
    other shift breaks the bracket and serves as a negative control.
    """
    lam1 = scalar(lam1)
    shift = scalar(shift)

    def rho0(n: int) -> Vector:
        return {n + 1: ONE}

    def rho1(n: int) -> Vector:
        # (l_0 + shift)^n = sum_t C(n, t) shift^(n-t) l_0^t
        return _clean({t: lam1 * comb(n, t) * shift ** (n - t) for t in range(n + 1)})

    return TruncatedModule(B_ALGEBRA, {0: rho0, 1: rho1}, name=f"shift({lam1}, {shift})")


def quotient_b_module(lam1) -> TruncatedModule:
    """The same module realised through the quotient engine with k = 1, S = {1}."""
    spec = QuotientSpec(1, {1}, {1: lam1})

    def op(g):
        def rho(n: int) -> Vector:
            image = act(spec, g, NElement(spec, {(0,) * n: ONE}))
            return {len(w): c for w, c in image.terms.items()}
        return rho

    return TruncatedModule(B_ALGEBRA, {0: op(0), 1: op(1)}, name=f"quotient(k=1, lam1={lam1})")


def zero_module(n: int = 0) -> TruncatedModule:
    alg = TruncatedAlgebra(n)
    return TruncatedModule(alg, {g: (lambda b: {}) for g in alg.generators}, name=f"zero(a_{n})")


# ---------------------------------------------------------------------------
# Pullbacks to c
# ---------------------------------------------------------------------------


def _compose(*ops: Operator) -> Operator:
    def rho(n: int) -> Vector:
        vec: dict = {n: ONE}
        for op in reversed(ops):
            acc: dict = {}
            for b, c in vec.items():
                _add(acc, op(b), c)
            vec = _clean(acc)
        return vec
    return rho


def _scaled(op: Operator, a) -> Operator:
    a = scalar(a)
    return lambda n: _clean({b: a * c for b, c in op(n).items()})


def _check_b(L: TruncatedModule):
    if L.algebra.n != 1:
        raise ValueError("pullbacks start from a b-module")


def phi_pullback(lam, L: TruncatedModule) -> TruncatedModule:
    """l_0 -> l_0, l_1 -> l_1, l_2 -> lam * l_1^2."""
    _check_b(L)
    lam = scalar(lam)
    r0, r1 = L.actions[0], L.actions[1]
    r2 = _scaled(_compose(r1, r1), lam) if lam else (lambda n: {})
    return TruncatedModule(C_ALGEBRA, {0: r0, 1: r1, 2: r2}, name=f"phi_{lam}({L.name})")


def psi_candidate(L: TruncatedModule, alpha) -> TruncatedModule:
    """l_0 -> alpha * l_0, l_1 -> 0, l_2 -> l_1."""
    _check_b(L)
    r0, r1 = L.actions[0], L.actions[1]
    return TruncatedModule(
        C_ALGEBRA,
        {0: _scaled(r0, alpha), 1: (lambda n: {}), 2: r1},
        name=f"psi[{alpha}]({L.name})",
    )


PSI_CANDIDATES = (Fraction(1, 2), Fraction(2))


def psi_pullback(L: TruncatedModule, window: int = DEFAULT_WINDOW) -> TruncatedModule:
    """The psi pullback with the l_0 coefficient fixed by the bracket check.

    The printed coefficient 1/2 is tried first; it fails [l_0, l_2] = 2 l_2,
    and 2 is used instead. The outcome of each attempt is kept in ``notes``.
    """
    notes = []
    for alpha in PSI_CANDIDATES:
        cand = psi_candidate(L, alpha)
        ok = validate_module(cand, window)
        notes.append(f"l_0 -> {alpha} l_0: {'validates' if ok else 'fails the bracket check'}")
        if ok:
            cand.notes = notes
            cand.alpha = alpha
            return cand
    raise RuntimeError("no psi coefficient validates: " + "; ".join(notes))


class Classification(NamedTuple):
    case: str  # "l2-kills", "l1-kills", "scalar", "inconclusive"
    scalar: Fraction | None = None


def classify_c_module(N: TruncatedModule, window: int = DEFAULT_WINDOW) -> Classification:
    """Which of the three annihilator identities holds on the window."""
    if N.algebra.n != 2:
        raise ValueError("classification applies to c-modules")
    basis = [{b: ONE} for b in range(window)]
    if all(not N.apply(2, e) for e in basis):
        return Classification("l2-kills")
    if all(not N.apply(1, e) for e in basis):
        return Classification("l1-kills")
    # solve rho(l_1)^2 = lam rho(l_2) exactly on the window
    lam = None
    pairs = [(N.apply(1, N.apply(1, e)), N.apply(2, e)) for e in basis]
    for lhs, rhs in pairs:
        for b, c in rhs.items():
            lam = lhs.get(b, ZERO) / c
            break
        if lam is not None:
            break
    if lam is None:
        return Classification("inconclusive")
    for lhs, rhs in pairs:
        if lhs != _clean({b: lam * c for b, c in rhs.items()}):
            return Classification("inconclusive")
    return Classification("scalar", lam)
