"""Named verification suites.

A suite is a list of cases; each case carries its inputs, the claim it
checks, and a pure check function. Running a suite evaluates every case and
reports the failing ones, sorted by case id.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exactmath import format_scalar
from .induced import InducedElement, descend, theorem1_step, truncated_closure
from .lie import (
    C,
    MultiIndex,
    PBWMonomial,
    UElement,
    _bracket_terms,
    bracket,
    central_free,
    commutator,
    format_element,
    iterated_ad,
    iterated_ad_closed_form,
    multiply,
)
from .parse import parse
from .quotient import (
    NElement,
    QuotientSpec,
    basis_words,
    format_nelement,
    grel_relations,
    gtilde_spec,
    is_whittaker_closed,
    lgz_spec,
    ow_spec,
    q_spec,
    quotient_consistency,
    remark_parameters,
    remark_witness,
    simplicity_descent,
    validate_spec,
)
from .solvable import (
    DEFAULT_WINDOW,
    classify_c_module,
    phi_pullback,
    psi_candidate,
    psi_pullback,
    quotient_b_module,
    shift_family,
    validate_module,
)
from .witt import (
    D,
    lower_central_series,
    matches_composition_oracle,
    positive_virasoro_bracket,
    prop62_identity,
    bracket_elements,
    WittElement,
)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    max_weight: int = 6
    samples: int = 100


@dataclass(frozen=True)
class Case:
    case_id: str
    inputs: dict
    claim: str
    check: Callable[[], tuple[bool, str]]


@dataclass
class SuiteReport:
    suite: str
    cases: int
    failures: list
    seed: int
    wall_time: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        # wall time is left out so that reports are reproducible byte for byte
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "seed": self.seed,
            "notes": self.notes,
        }


def _ok(flag: bool, detail: str = "") -> tuple[bool, str]:
    return bool(flag), detail


def _rand_scalar(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if q or not nonzero:
            return q


# ---------------------------------------------------------------------------
# core-axioms
# ---------------------------------------------------------------------------


def _lie_br(x: dict, y: dict) -> dict:
    out: dict = defaultdict(Fraction)
    for a, ca in x.items():
        for b, cb in y.items():
            if a == C or b == C:
                continue
            for g, c in _bracket_terms(a, b):
                out[g] += ca * cb * c
    return {g: c for g, c in out.items() if c}


def _core_axioms(cfg: SuiteConfig):
    idx = range(-8, 9)
    cases = []
    claim_anti = "the bracket is antisymmetric"
    claim_jac = "the bracket satisfies the Jacobi identity"
    claim_u = "l_i l_j - l_j l_i equals the bracket in the enveloping algebra"

    def anti(i, j):
        x, y = _lie_br({i: 1}, {j: 1}), _lie_br({j: 1}, {i: 1})
        return _ok(x == {g: -c for g, c in y.items()})

    gens = {i: UElement.gen(i) for i in idx}

    def jac(i, j, k):
        # nested commutators computed with the straightening product
        x, y, z = gens[i], gens[j], gens[k]
        total = (commutator(x, commutator(y, z)) + commutator(y, commutator(z, x))
                 + commutator(z, commutator(x, y)))
        return _ok(not total, format_element(total))

    def in_u(i, j):
        return _ok(commutator(UElement.gen(i), UElement.gen(j)) == bracket(i, j))

    for i, j in itertools.product(idx, repeat=2):
        cases.append(Case(f"anti/{i:+03d}/{j:+03d}", {"i": i, "j": j}, claim_anti,
                          lambda i=i, j=j: anti(i, j)))
        cases.append(Case(f"u/{i:+03d}/{j:+03d}", {"i": i, "j": j}, claim_u,
                          lambda i=i, j=j: in_u(i, j)))
    for i, j, k in itertools.product(idx, repeat=3):
        cases.append(Case(f"jacobi/{i:+03d}/{j:+03d}/{k:+03d}", {"i": i, "j": j, "k": k}, claim_jac,
                          lambda i=i, j=j, k=k: jac(i, j, k)))
    return cases, []


# ---------------------------------------------------------------------------
# pbw
# ---------------------------------------------------------------------------


def random_uelement(rng: random.Random, max_terms: int = 4, max_index: int = 6,
                    max_length: int = 3, max_cpow: int = 1) -> UElement:
    """A random element given directly by normal-form monomials."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        word = sorted(rng.randint(-max_index, max_index) for _ in range(rng.randint(0, max_length)))
        terms[PBWMonomial.from_word(rng.randint(0, max_cpow), word)] = _rand_scalar(rng)
    return UElement(terms)


def _pbw(cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    cases = []

    def assoc(a, b, c):
        lhs = multiply(multiply(a, b), c)
        rhs = multiply(a, multiply(b, c))
        return _ok(lhs == rhs, "" if lhs == rhs else format_element(lhs - rhs))

    def roundtrip(e):
        text = format_element(e)
        back = parse(text)
        return _ok(back == e, text)

    for n in range(200):
        a, b, c = (random_uelement(rng, max_length=2) for _ in range(3))
        cases.append(Case(
            f"assoc/{n:03d}",
            {"a": format_element(a), "b": format_element(b), "c": format_element(c)},
            "multiplication is associative",
            lambda a=a, b=b, c=c: assoc(a, b, c),
        ))
    for n in range(500):
        e = random_uelement(rng, max_cpow=2)
        cases.append(Case(f"roundtrip/{n:03d}", {"e": format_element(e)},
                          "parsing the printed form gives the element back",
                          lambda e=e: roundtrip(e)))
    return cases, []


# ---------------------------------------------------------------------------
# lemma37
# ---------------------------------------------------------------------------


def _lemma37(cfg: SuiteConfig):
    cases = []
    for i, j, s in itertools.product(range(1, 6), range(-10, 11), range(1, 6)):
        if not central_free(i, j, s):
            continue

        def check(i=i, j=j, s=s):
            got, want = iterated_ad(i, j, s), iterated_ad_closed_form(i, j, s)
            return _ok(got == want, f"{format_element(got)} vs {format_element(want)}")

        cases.append(Case(f"ad/{i}/{j:+03d}/{s}", {"i": i, "j": j, "s": s},
                          "ad(l_i)^s l_j is the product formula times l_(j+si)", check))
    return cases, []


# ---------------------------------------------------------------------------
# theorem1
# ---------------------------------------------------------------------------


def theorem1_specs() -> dict[str, QuotientSpec]:
    return {
        "OW(1,1)": ow_spec(1, 1),
        "OW(0,1)": ow_spec(0, 1),
        "K3(1,1)": lgz_spec(3, {2: 1, 3: 1}),
        "Q5{2,4,5}": q_spec(5, {2, 4, 5}, {2: 1, 4: 0, 5: 1}),
    }


def random_multiindex(rng: random.Random, max_weight: int) -> MultiIndex:
    """A nonzero multi-index of weight at most ``max_weight``."""
    budget = rng.randint(1, max_weight)
    word = []
    while budget:
        s = rng.randint(1, budget)
        word.append(s)
        budget -= s
    return MultiIndex.from_word(-s for s in word)


def random_induced(rng: random.Random, spec: QuotientSpec, theta, max_weight: int,
                   max_terms: int = 4) -> InducedElement:
    nwords = basis_words(spec, 3, max_degree=2)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[(random_multiindex(rng, max_weight), rng.choice(nwords))] = _rand_scalar(rng)
    return InducedElement(theta, spec, terms)


def _theorem1(cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    cases = []
    for name, spec in theorem1_specs().items():
        for theta in (Fraction(0), Fraction(1, 2)):
            for n in range(cfg.samples):
                v = random_induced(rng, spec, theta, cfg.max_weight)

                def check(v=v):
                    st = theorem1_step(v)
                    if not st.ok:
                        return _ok(False, f"nonzero={st.nonzero} leading={st.leading_check} "
                                          f"weight_drop={st.weight_drop}")
                    out = descend(v)
                    return _ok(bool(out.bottom), f"{out.steps} steps")

                cases.append(Case(
                    f"{name}/theta={format_scalar(theta)}/{n:03d}",
                    {"spec": spec.to_json(), "v": v.to_json()},
                    "acting by l_(k+p) removes eps_p from the leading term and the descent reaches 1 (x) N",
                    check,
                ))
    return cases, []


# ---------------------------------------------------------------------------
# lemma31
# ---------------------------------------------------------------------------


def random_nelement(rng: random.Random, spec: QuotientSpec, max_weight: int,
                    max_degree: int = 4, max_terms: int = 4) -> NElement:
    words = basis_words(spec, max_weight, max_degree=max_degree)
    return NElement(spec, {rng.choice(words): _rand_scalar(rng)
                           for _ in range(rng.randint(1, max_terms))})


def _descent_cases(rng, label, spec, cfg, claim):
    cases = []
    for n in range(cfg.samples):
        v = random_nelement(rng, spec, cfg.max_weight)

        def check(v=v):
            res = simplicity_descent(spec, v)
            return _ok(set(res.witness.terms) == {()}, f"{res.steps} steps")

        cases.append(Case(f"{label}/{n:03d}", {"spec": spec.to_json(), "v": v.to_json()}, claim, check))
    return cases


def _lemma31(cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    claim = "each step removes the smallest factor of the highest term and ends at a nonzero constant"
    cases = []
    for label, spec in (("K3", lgz_spec(3, {2: 1, 3: 1})),
                        ("Q5{2,4,5}", q_spec(5, {2, 4, 5}, {2: 1, 4: 0, 5: 1}))):
        cases += _descent_cases(rng, label, spec, cfg, claim)
    return cases, []


# ---------------------------------------------------------------------------
# grel
# ---------------------------------------------------------------------------


def _grel(cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    cases = []
    for lam4 in (Fraction(1), Fraction(2)):
        lam = {1: Fraction(1), 4: lam4}
        spec = gtilde_spec(4, 1, lam4)
        inputs = {"k": 4, "lambda": {"1": "1", "4": format_scalar(lam4)}}
        tag = f"k4/lam4={format_scalar(lam4)}"

        def rel_nonzero(lam4=lam4, lam=lam, spec=spec):
            rels = grel_relations(4, lam)
            want = NElement(spec, {(2,): 4 * lam4, (3, 3): -1})
            return _ok(rels == [want] and all(rels), format_nelement(rels[0]))

        def consistent(lam=lam):
            return _ok(quotient_consistency(4, lam, 5))

        def corrupted(lam=lam, lam4=lam4):
            return _ok(not quotient_consistency(4, lam, 5, coefficient=4 * lam4 + 1))

        def proper(lam=lam):
            cl = truncated_closure(grel_relations(4, lam), range(0, 5), 8)
            return _ok(cl.dimension > 0 and not cl.contains_cyclic, f"dimension {cl.dimension}")

        cases += [
            Case(f"{tag}/relation", inputs, "the relation a_2 l_2 - l_3^2 is nonzero", rel_nonzero),
            Case(f"{tag}/consistency", inputs, "the reduced quotient is a module up to weight 5", consistent),
            Case(f"{tag}/corrupted", inputs, "a wrong reduction coefficient breaks the module axioms", corrupted),
            Case(f"{tag}/closure", inputs, "the submodule generated by the relation misses the cyclic vector", proper),
        ]
    spec3 = gtilde_spec(3, 1, 1)
    cases += _descent_cases(rng, "k3-descent", spec3, SuiteConfig(cfg.seed, cfg.max_weight, 20),
                            "for k = 3 the descent ends at a nonzero constant")
    return cases, []


# ---------------------------------------------------------------------------
# remark39
# ---------------------------------------------------------------------------


def remark39_specs(max_k: int = 7) -> list[QuotientSpec]:
    """Every S in {1..k}, k <= max_k, with lambda_k = 1, other lambdas 0,
    satisfying (I) and (II) but not (III)."""
    out = []
    for k in range(1, max_k + 1):
        rest = range(1, k)
        for r in range(len(rest) + 1):
            for sub in itertools.combinations(rest, r):
                S = set(sub) | {k}
                spec = q_spec(k, S, {s: (1 if s == k else 0) for s in S})
                cond = validate_spec(spec)
                if cond.condI and cond.condII and not cond.condIII:
                    out.append(spec)
    return out


def _remark39(cfg: SuiteConfig):
    cases = []
    for spec in remark39_specs():
        def check(spec=spec):
            w = remark_witness(spec)
            cyclic_multiple = set(w.terms) <= {()}
            return _ok(bool(w) and not cyclic_multiple and is_whittaker_closed(spec, w),
                       f"{remark_parameters(spec).case}: {format_nelement(w)}")

        label = "-".join(str(s) for s in sorted(spec.S))
        cases.append(Case(f"k{spec.k}/S{label}", {"spec": spec.to_json()},
                          "the witness is a nonzero non-cyclic Whittaker vector", check))
    return cases, []


# ---------------------------------------------------------------------------
# prop25
# ---------------------------------------------------------------------------


def _prop25(cfg: SuiteConfig):
    w = DEFAULT_WINDOW
    cases = []
    notes = []
    bases = {"shift(1)": shift_family(1), "shift(-3/2)": shift_family(Fraction(-3, 2)),
             "quotient(2)": quotient_b_module(2)}
    for name, L in bases.items():
        cases.append(Case(f"{name}/b-module", {"L": name}, "the b-module validates",
                          lambda L=L: _ok(validate_module(L, w))))
        cases.append(Case(f"{name}/phi0", {"L": name}, "phi_0 pullbacks are killed by l_2",
                          lambda L=L: _ok(classify_c_module(phi_pullback(0, L), w).case == "l2-kills")))

        def psi(L=L):
            m = psi_pullback(L, w)
            return _ok(classify_c_module(m, w).case == "l1-kills" and m.alpha == 2, "; ".join(m.notes))

        cases.append(Case(f"{name}/psi", {"L": name}, "psi pullbacks are killed by l_1", psi))
        cases.append(Case(f"{name}/psi-half", {"L": name, "alpha": "1/2"},
                          "the coefficient 1/2 on l_0 fails the bracket check",
                          lambda L=L: _ok(not validate_module(psi_candidate(L, Fraction(1, 2)), w))))
        for mu in (Fraction(1), Fraction(1, 3), Fraction(-2)):
            def phi(L=L, mu=mu):
                m = phi_pullback(mu, L)
                cl = classify_c_module(m, w)
                return _ok(validate_module(m, w) and cl.case == "scalar" and cl.scalar * mu == 1,
                           f"{cl.case} {cl.scalar}")

            cases.append(Case(f"{name}/phi/{format_scalar(mu)}", {"L": name, "mu": format_scalar(mu)},
                              "phi_mu pullbacks satisfy l_1^2 = (1/mu) l_2", phi))
    notes.extend(psi_pullback(shift_family(1), w).notes)
    return cases, notes


# ---------------------------------------------------------------------------
# witt-prop62
# ---------------------------------------------------------------------------


def _random_exponent(rng: random.Random, n: int, total: int) -> tuple[int, ...]:
    m = [0] * n
    for _ in range(rng.randint(0, total)):
        m[rng.randrange(n)] += 1
    return tuple(m)


def _compositions(n: int, total: int):
    """Exponent vectors of length n with entries summing to at most total."""
    for m in itertools.product(range(total + 1), repeat=n):
        if sum(m) <= total:
            yield m


def _witt(cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    cases = []
    for n in range(200):
        dim = rng.randint(1, 3)
        a = D(rng.randint(1, dim), _random_exponent(rng, dim, 4))
        b = D(rng.randint(1, dim), _random_exponent(rng, dim, 4))
        cases.append(Case(f"oracle/{n:03d}", {"a": [a.i, list(a.m)], "b": [b.i, list(b.m)]},
                          "the bracket formula agrees with composing derivations",
                          lambda a=a, b=b: _ok(matches_composition_oracle(a, b))))
    for n in range(50):
        dim = rng.randint(1, 3)
        x, y, z = (WittElement.basis(D(rng.randint(1, dim), _random_exponent(rng, dim, 3)))
                   for _ in range(3))

        def jacobi(x=x, y=y, z=z):
            total = (bracket_elements(x, bracket_elements(y, z))
                     + bracket_elements(y, bracket_elements(z, x))
                     + bracket_elements(z, bracket_elements(x, y)))
            anti = bracket_elements(x, y) + bracket_elements(y, x)
            return _ok(not total and not anti)

        cases.append(Case(f"jacobi/{n:03d}", {"x": x.to_json(), "y": y.to_json(), "z": z.to_json()},
                          "the bracket is antisymmetric and satisfies Jacobi", jacobi))
    for dim in (2, 3):
        for i, j in itertools.product(range(1, dim + 1), repeat=2):
            for mj in range(1, 5):
                for rest in _compositions(dim, 4 - mj):
                    if rest[j - 1]:
                        continue
                    mp = tuple(mj if s == j - 1 else 0 for s in range(dim))

                    def check(i=i, j=j, mp=mp, rest=rest):
                        r = prop62_identity(i, j, mp, rest)
                        return _ok(r.is_scalar_multiple and r.scalar != 0, repr(r.result))

                    cases.append(Case(
                        f"prop62/n{dim}/i{i}/j{j}/{mp}/{rest}",
                        {"i": i, "j": j, "m_prime": list(mp), "m_dprime": list(rest)},
                        "the commutator is a nonzero multiple of D_i(m' + m'')",
                        check,
                    ))
    return cases, []


# ---------------------------------------------------------------------------
# qnilp
# ---------------------------------------------------------------------------


def _qnilp(cfg: SuiteConfig):
    bound, depth = 30, 10
    memo: list = []

    def series():
        if not memo:
            memo.append(lower_central_series(positive_virasoro_bracket, range(1, bound + 1), depth, bound))
        return memo[0]

    cases = []

    def term0():
        t = series()[0]
        return _ok(t.indices == frozenset(range(1, bound + 1)) and t.codim == 0)

    cases.append(Case("n0", {"bound": bound}, "the series starts at the whole algebra", term0))
    for i in range(1, depth + 1):
        def check(i=i):
            t = series()[i]
            want = frozenset(range(i + 2, bound + 1))
            return _ok(t.indices == want and t.codim == i + 1 and t.coordinate,
                       f"codim {t.codim}")

        cases.append(Case(f"n{i:02d}", {"bound": bound, "i": i},
                          "n_i is spanned by l_m with m >= i + 2", check))
    return cases, []


SUITES: dict[str, Callable[[SuiteConfig], tuple[list[Case], list[str]]]] = {
    "core-axioms": _core_axioms,
    "pbw": _pbw,
    "lemma37": _lemma37,
    "theorem1": _theorem1,
    "lemma31": _lemma31,
    "grel": _grel,
    "remark39": _remark39,
    "prop25": _prop25,
    "witt-prop62": _witt,
    "qnilp": _qnilp,
}


def build_suite(name: str, config: SuiteConfig | None = None) -> tuple[list[Case], list[str]]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; valid names: {', '.join(SUITES)}")
    return SUITES[name](config or SuiteConfig())


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    config = config or SuiteConfig()
    start = time.perf_counter()
    cases, notes = build_suite(name, config)
    failures = []
    for case in sorted(cases, key=lambda c: c.case_id):
        try:
            ok, detail = case.check()
        except Exception as exc:  # a raised claim violation is a failure, not a crash
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            failures.append({"case": case.case_id, "inputs": case.inputs,
                             "claim": case.claim, "detail": detail})
    return SuiteReport(name, len(cases), failures, config.seed,
                       time.perf_counter() - start, list(notes))
