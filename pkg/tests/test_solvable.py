from fractions import Fraction

import pytest
from hypothesis import given, settings

from virmod.solvable import (
    B_ALGEBRA,
    C_ALGEBRA,
    TruncatedAlgebra,
    TruncatedModule,
    classify_c_module,
    phi_pullback,
    psi_candidate,
    psi_pullback,
    quotient_b_module,
    shift_family,
    validate_module,
    zero_module,
)

from strategies import fractions, nonzero_fractions


@pytest.mark.parametrize("n", range(9))
def test_truncated_algebra_axioms(n):
    a = TruncatedAlgebra(n)
    assert a.check_antisymmetry()
    assert a.check_jacobi()


def test_truncated_bracket_table():
    assert C_ALGEBRA.bracket(0, 2) == {2: 2}
    assert C_ALGEBRA.bracket(1, 2) == {}
    assert B_ALGEBRA.bracket(0, 1) == {1: 1}
    with pytest.raises(ValueError):
        TruncatedAlgebra(-1)


def test_validate_examples():
    assert validate_module(shift_family(3))
    assert not validate_module(shift_family(3, shift=1))
    assert validate_module(zero_module(0))


def test_shift_family_matches_quotient_engine():
    for lam1 in (1, Fraction(-2, 3)):
        a, b = shift_family(lam1), quotient_b_module(lam1)
        for g in (0, 1):
            for n in range(10):
                assert a.actions[g](n) == b.actions[g](n)


def test_phi_examples():
    L = shift_family(1)
    m0 = phi_pullback(0, L)
    assert all(not m0.apply(2, {n: 1}) for n in range(12))
    m1 = phi_pullback(1, L)
    # rho(l_2) f = f(l_0 - 2)
    assert m1.apply(2, {2: 1}) == {2: 1, 1: -4, 0: 4}


@settings(max_examples=30, deadline=None)
@given(nonzero_fractions, fractions)
def test_phi_pullback_validates(lam1, lam):
    assert validate_module(phi_pullback(lam, shift_family(lam1)))


def test_psi_pullback():
    L = shift_family(2)
    m = psi_pullback(L)
    assert m.alpha == 2
    assert all(not m.apply(1, {n: 1}) for n in range(12))
    assert "fails" in m.notes[0] and "validates" in m.notes[1]


def test_psi_coefficients_pinned_both_ways():
    L = shift_family(Fraction(5, 3))
    assert validate_module(psi_candidate(L, 2))
    assert not validate_module(psi_candidate(L, Fraction(1, 2)))


def test_psi_pullback_raises_when_nothing_validates():
    with pytest.raises(RuntimeError):
        psi_pullback(shift_family(1, shift=1))


def test_pullbacks_need_b_modules():
    with pytest.raises(ValueError):
        phi_pullback(1, zero_module(2))


def test_classifier_examples():
    L = shift_family(1)
    assert classify_c_module(phi_pullback(0, L)).case == "l2-kills"
    assert classify_c_module(psi_pullback(L)).case == "l1-kills"
    for mu in (1, Fraction(1, 3), -2):
        cl = classify_c_module(phi_pullback(mu, L))
        assert cl.case == "scalar" and cl.scalar * mu == 1


@settings(max_examples=30, deadline=None)
@given(nonzero_fractions, nonzero_fractions)
def test_classifier_inverts_phi(lam1, mu):
    cl = classify_c_module(phi_pullback(mu, shift_family(lam1)))
    assert cl.case == "scalar" and cl.scalar * mu == 1


def test_classifier_inconclusive():
    # l_1 acts by the shift, l_2 by multiplication: l_1^2 is not a multiple of l_2
    L = shift_family(1)
    odd = TruncatedModule(C_ALGEBRA, {0: L.actions[0], 1: L.actions[1], 2: L.actions[0]})
    assert classify_c_module(odd).case == "inconclusive"
    with pytest.raises(ValueError):
        classify_c_module(L)
