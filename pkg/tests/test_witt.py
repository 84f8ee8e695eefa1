from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virmod.witt import (
    D,
    WittElement,
    bracket_elements,
    commutator_on,
    lower_central_series,
    matches_composition_oracle,
    positive_virasoro_bracket,
    prop62_identity,
    witt_bracket,
)


@st.composite
def basis_elts(draw, n=None, max_total=4):
    n = n or draw(st.integers(1, 3))
    m = draw(st.lists(st.integers(0, max_total), min_size=n, max_size=n).filter(lambda m: sum(m) <= max_total))
    return D(draw(st.integers(1, n)), m)


@st.composite
def pairs(draw):
    n = draw(st.integers(1, 3))
    return draw(basis_elts(n)), draw(basis_elts(n))


@st.composite
def triples(draw):
    n = draw(st.integers(1, 3))
    return tuple(draw(basis_elts(n, 3)) for _ in range(3))


def test_bracket_examples():
    assert witt_bracket(D(1, (0,)), D(1, (1,))) == WittElement.basis(D(1, (0,)))
    a = D(2, (1, 2))
    assert not witt_bracket(a, a)
    for s in range(5):
        assert witt_bracket(D(1, (s, 0)), D(2, (2, 0))) == WittElement.basis(D(2, (s + 1, 0)), 2)


def test_oracle_small_example():
    # [d_1, x_1 d_1] applied to x_1^3 is 3 x_1^2
    p = {(3,): Fraction(1)}
    assert commutator_on(D(1, (0,)), D(1, (1,)), p) == {(2,): 3}


@settings(max_examples=200, deadline=None)
@given(pairs())
def test_bracket_matches_oracle(ab):
    assert matches_composition_oracle(*ab)


@settings(max_examples=60, deadline=None)
@given(triples())
def test_antisymmetry_and_jacobi(xyz):
    x, y, z = (WittElement.basis(b) for b in xyz)
    assert not (bracket_elements(x, y) + bracket_elements(y, x))
    total = bracket_elements(x, bracket_elements(y, z)) + bracket_elements(y, bracket_elements(z, x)) \
        + bracket_elements(z, bracket_elements(x, y))
    assert not total


def test_mismatched_dimensions():
    with pytest.raises(ValueError):
        witt_bracket(D(1, (1,)), D(1, (1, 0)))
    with pytest.raises(ValueError):
        D(3, (1, 1))


def test_json():
    x = WittElement({D(1, (3, 2)): 1})
    assert x.to_json() == {"terms": [{"i": 1, "m": [3, 2], "coeff": "1"}]}
    assert WittElement.from_json(x.to_json()) == x


def test_commutator_identity_examples():
    r = prop62_identity(1, 1, (3, 0), (0, 2))
    assert r.target == D(1, (3, 2)) and r.is_scalar_multiple and r.scalar == -4
    r = prop62_identity(1, 2, (0, 3), (2, 0))
    assert r.target == D(1, (2, 3)) and r.is_scalar_multiple and r.scalar == 1


def test_commutator_identity_hypotheses():
    with pytest.raises(ValueError):
        prop62_identity(1, 1, (3, 1), (0, 2))  # m' not concentrated on j
    with pytest.raises(ValueError):
        prop62_identity(1, 1, (3, 0), (1, 2))  # m'' meets coordinate j
    with pytest.raises(ValueError):
        prop62_identity(1, 1, (2, 0), (0, 1), threshold=2)


def test_commutator_identity_flag_reads_the_result():
    # the flag is read off the computed bracket, not assumed
    r = prop62_identity(2, 1, (1, 0), (0, 0))
    assert r.is_scalar_multiple == (set(r.result.terms) == {r.target})
    assert r.result == WittElement.basis(D(2, (1, 0)))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n), st.integers(1, n), st.integers(1, 4),
    st.lists(st.integers(0, 3), min_size=n, max_size=n))))
def test_commutator_identity_scalars(data):
    n, i, j, mj, rest = data
    rest[j - 1] = 0
    mp = tuple(mj if s == j - 1 else 0 for s in range(n))
    r = prop62_identity(i, j, mp, rest)
    assert r.is_scalar_multiple
    # the nonzero scalars are -(m_i + 1) for i == j and 1 otherwise
    assert r.scalar == (-(mj + 1) if i == j else 1)


def test_lower_central_series_of_positive_part():
    series = lower_central_series(positive_virasoro_bracket, range(1, 31), 10, 30)
    assert series[0].indices == frozenset(range(1, 31)) and series[0].codim == 0
    for i in range(1, 11):
        assert series[i].indices == frozenset(range(i + 2, 31))
        assert series[i].codim == i + 1
        assert series[i].coordinate
    for a, b in zip(series, series[1:]):
        assert b.indices < a.indices


def test_lower_central_series_depth_zero():
    series = lower_central_series(positive_virasoro_bracket, range(1, 11), 0, 10)
    assert len(series) == 1 and series[0].indices == frozenset(range(1, 11))


def test_lower_central_series_of_abelian_family():
    series = lower_central_series(lambda a, b: {}, range(1, 6), 2, 5)
    assert series[1].indices == frozenset() and series[1].codim == 5
