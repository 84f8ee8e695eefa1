import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings

from virmod.quotient import (
    ClaimViolation,
    GQuotient,
    NElement,
    QuotientSpec,
    act,
    act_word_on,
    basis_words,
    grel_coefficients,
    grel_relations,
    gtilde_spec,
    is_whittaker_closed,
    kernel_dimension,
    lgz_spec,
    ow_spec,
    q_spec,
    quotient_consistency,
    remark_parameters,
    remark_witness,
    simplicity_descent,
    theorem1_hypotheses,
    validate_spec,
    verma_spec,
)

from strategies import nelements

OW = ow_spec(Fraction(3, 2), 2)
K3 = lgz_spec(3, {2: 5, 3: 7})
Q5 = q_spec(5, {2, 4, 5}, {2: 1, 4: 0, 5: 1})
SHIPPED = {
    "OW": OW,
    "K3": K3,
    "Q5": Q5,
    "G3": gtilde_spec(3, 1, 2),
    "G4": gtilde_spec(4, 1, 1),
}


def mono(spec, *word, coeff=1):
    return NElement.monomial(spec, word, coeff)


# --- spec construction and serialisation -----------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        QuotientSpec(3, {4}, {4: 1})
    with pytest.raises(ValueError):
        QuotientSpec(3, {2, 3}, {3: 1})


def test_spec_json_roundtrip():
    data = {"k": 5, "S": [2, 4, 5], "lambda": {"2": "1", "4": "0", "5": "1"}}
    spec = QuotientSpec.from_json(data)
    assert spec == Q5
    assert spec.to_json() == data


def test_lgz_spec_shape():
    assert K3.S == frozenset({2, 3})
    assert lgz_spec(4, {4: 1}).S == frozenset({2, 3, 4})
    assert K3.free == (0, 1)


# --- conditions ------------------------------------------------------------


def test_condition_examples():
    assert validate_spec(Q5) == (True, True, True)
    k8 = q_spec(8, {3, 4, 6, 7, 8}, {3: 1, 4: 1, 6: 1, 7: 0, 8: 1})
    assert validate_spec(k8) == (True, True, True)
    k4 = q_spec(4, {3, 4}, {3: 0, 4: 1})
    assert validate_spec(k4) == (True, True, False)


def test_condition_II_needs_vanishing_lambda():
    k8 = q_spec(8, {3, 4, 6, 7, 8}, {3: 1, 4: 1, 6: 1, 7: 1, 8: 1})
    assert not validate_spec(k8).condII


def test_simplicity_hypotheses():
    assert theorem1_hypotheses(OW)
    assert not theorem1_hypotheses(verma_spec(3))
    assert not theorem1_hypotheses(q_spec(5, {2, 4, 5}, {2: 1, 4: 0, 5: 0}))


# --- the action ---------------------------------------------------------------


def test_ow_action_examples():
    lam1 = OW.lam_at(1)
    assert act(OW, 1, mono(OW, 0)) == mono(OW, 0, coeff=lam1) - mono(OW, coeff=lam1)
    for v in (mono(OW), mono(OW, 0, 0), mono(OW, 0, 0, 0)):
        assert not act(OW, 3, v)


def test_k_action_example():
    lam2, lam3 = K3.lam_at(2), K3.lam_at(3)
    assert act(K3, 2, mono(K3, 1)) == mono(K3, 1, coeff=lam2) - mono(K3, coeff=lam3)


def test_negative_generator_rejected():
    with pytest.raises(ValueError):
        act(OW, -1, mono(OW))


def _ow_oracle(spec, i, n):
    """l_i l_0^n = (l_0 - i)^n l_i, so l_i . l_0^n = lambda_i (l_0 - i)^n."""
    lam = spec.lam_at(i)
    return NElement(spec, {(0,) * t: lam * comb(n, t) * (-i) ** (n - t) for t in range(n + 1)})


@pytest.mark.parametrize("i", [1, 2])
def test_ow_action_matches_shift_formula(i):
    for n in range(8):
        assert act(OW, i, mono(OW, *([0] * n))) == _ow_oracle(OW, i, n)


def test_action_on_cyclic_vector():
    for name, spec in SHIPPED.items():
        one = NElement.cyclic(spec)
        for s in spec.S:
            assert act(spec, s, one) == one.scale(spec.lam_at(s)), name
        for j in range(spec.k + 1, spec.k + 4):
            assert not act(spec, j, one), name
        for f in spec.free:
            assert act(spec, f, one) == mono(spec, f), name


@pytest.mark.parametrize("name", sorted(SHIPPED))
def test_module_axiom(name):
    spec = SHIPPED[name]
    top = 2 * spec.k + 2

    @settings(max_examples=8, deadline=None)
    @given(nelements(spec, max_weight=6, max_degree=3, max_terms=3))
    def check(v):
        for i, j in itertools.combinations(range(top + 1), 2):
            lhs = act(spec, i, act(spec, j, v)) - act(spec, j, act(spec, i, v))
            assert lhs == act(spec, i + j, v).scale(j - i), (i, j)

    check()


def test_verma_seed_is_one_dimensional():
    spec = verma_spec(5)
    one = NElement.cyclic(spec)
    assert act(spec, 0, one) == one.scale(5)
    assert not act(spec, 1, one)
    assert basis_words(spec, 6, 6) == [()]


@pytest.mark.parametrize("name", sorted(SHIPPED))
def test_top_generator_is_injective(name):
    spec = SHIPPED[name]
    assert validate_spec(spec).condI
    assert kernel_dimension(spec, spec.k, 6, 3) == 0


def test_kernel_detects_non_injective():
    # l_3 kills N entirely when k = 2
    assert kernel_dimension(OW, 3, 2, 2) == len(basis_words(OW, 2, 2))


# --- Whittaker vectors and witnesses ---------------------------------------


def test_whittaker_examples():
    k4 = q_spec(4, {3, 4}, {3: 0, 4: 1})
    assert is_whittaker_closed(k4, NElement.cyclic(k4))
    assert is_whittaker_closed(k4, mono(k4, 2))
    assert not is_whittaker_closed(OW, mono(OW, 0))
    with pytest.raises(ValueError):
        is_whittaker_closed(OW, NElement(OW))


def test_remark_witness_case1():
    k4 = q_spec(4, {3, 4}, {3: 0, 4: 1})
    assert remark_parameters(k4) == (2, 1, None)
    assert remark_witness(k4) == mono(k4, 2)


def test_remark_witness_case2():
    k6 = q_spec(6, {1, 6}, {1: 0, 6: 1})
    assert remark_parameters(k6) == (2, 2, 1)
    w = remark_witness(k6)
    assert w == mono(k6, 5, 5, coeff=3) - mono(k6, 4, coeff=8)
    assert is_whittaker_closed(k6, w)


def test_remark_witness_case2_by_hand():
    # recompute the witness from left multiplication alone
    k6 = q_spec(6, {1, 6}, {1: 0, 6: 1})
    one = NElement.cyclic(k6)
    w = act_word_on(k6, (5, 5), one).scale(3) - act(k6, 4, one).scale(8)
    for i in (1, 6):
        assert act(k6, i, w) == w.scale(k6.lam_at(i))


def test_remark_witness_rejects_condition_III():
    with pytest.raises(ValueError):
        remark_witness(Q5)


# --- relations of G~ ----------------------------------------------------------


def test_grel_coefficients():
    assert grel_coefficients(4, 1) == {2: 4}
    assert grel_coefficients(5, 1) == {2: 9, 3: 3}
    assert grel_coefficients(5, 2) == {2: 18, 3: 6}
    with pytest.raises(ValueError):
        grel_coefficients(3, 1)


@pytest.mark.parametrize("k", [4, 5, 6, 7])
def test_grel_recursion_holds(k):
    lam = Fraction(3, 2)
    a = grel_coefficients(k, lam)
    assert a[k - 2] == 2 * (k - 2) * lam / (k - 3)
    for j in range(2, k - 2):
        assert (j - 1) * a[j] == j * a[j + 1] + (k - 2) * lam


def test_grel_relations():
    spec4 = gtilde_spec(4, 1, 2)
    assert grel_relations(4, {1: 1, 4: 2}) == [mono(spec4, 2, coeff=8) - mono(spec4, 3, 3)]
    spec5 = gtilde_spec(5, 1, 1)
    assert grel_relations(5, {1: 1, 5: 1}) == [
        mono(spec5, 2, coeff=9) - mono(spec5, 3, 4),
        mono(spec5, 3, coeff=3) - mono(spec5, 4, 4),
    ]
    with pytest.raises(ValueError):
        grel_relations(3, {1: 1, 3: 1})


@pytest.mark.parametrize("lam4", [1, 2, Fraction(-1, 3)])
def test_relation_reduces_to_zero(lam4):
    lam = {1: 1, 4: lam4}
    (rel,) = grel_relations(4, lam)
    assert rel
    assert not GQuotient(lam).reduce(rel)


def test_quotient_consistency():
    assert quotient_consistency(4, {1: 1, 4: 1}, 5)
    assert quotient_consistency(4, {1: 1, 4: 1}, 0)
    assert not quotient_consistency(4, {1: 1, 4: 1}, 5, coefficient=5)
    with pytest.raises(ValueError):
        quotient_consistency(5, {1: 1, 5: 1}, 3)


# --- simplicity descent ------------------------------------------------------


def test_descent_examples():
    one = NElement.cyclic(OW)
    assert simplicity_descent(OW, one) == (one, 0)
    res = simplicity_descent(OW, mono(OW, 0))
    assert set(res.witness.terms) == {()} and res.steps <= 1
    assert res.witness == one.scale(-2 * OW.lam_at(2))
    res = simplicity_descent(K3, mono(K3, 0, 1))
    assert set(res.witness.terms) == {()}
    with pytest.raises(ValueError):
        simplicity_descent(OW, NElement(OW))


@pytest.mark.parametrize("name", ["OW", "K3", "Q5", "G3"])
def test_descent_on_random_elements(name):
    spec = SHIPPED[name]

    @settings(max_examples=40, deadline=None)
    @given(nelements(spec, max_weight=6, max_degree=4))
    def check(v):
        res = simplicity_descent(spec, v)
        assert set(res.witness.terms) == {()}

    check()


def test_descent_flags_missing_generator():
    # S = {3, 4} lacks l_2 = l_{k-2}, needed to strip a factor l_2
    k4 = q_spec(4, {3, 4}, {3: 0, 4: 1})
    with pytest.raises(ClaimViolation):
        simplicity_descent(k4, mono(k4, 2))
