from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from block_atlas.drinfeld import (FactorizationError, PolyTuple, SpectralCharacter,
                                  SpectralPoint, block_label, dual, from_coefficients, lambda_pi,
                                  multiply, same_block, spectral_character)
from block_atlas.gamma import gamma_group
from block_atlas.rootsys import build

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]


def pt(lie_type, *pairs):
    return PolyTuple.from_factors(lie_type, pairs)


def test_from_coefficients_examples():
    got = from_coefficients("A1", [[1, -3, 2]])
    assert got == pt("A1", (1, (1,)), (2, (1,)))
    assert got.to_coefficients() == [[1, -3, 2]]
    assert from_coefficients("A3", [[1], [1], [1]]) == PolyTuple.empty("A3")
    assert from_coefficients("A2", [[1, -2, 1], [1]]) == pt("A2", (1, (2, 0)))


def test_from_coefficients_rejections():
    with pytest.raises(FactorizationError, match="constant term"):
        from_coefficients("A1", [[2, 1]])
    with pytest.raises(FactorizationError, match="factored form"):
        from_coefficients("A1", [[1, 0, 1]])
    with pytest.raises(FactorizationError):
        from_coefficients("A2", [[1]])


def test_rational_points_with_denominators():
    got = from_coefficients("A1", [[1, Fraction(-1, 2)]])
    assert got == pt("A1", (Fraction(1, 2), (1,)))


def test_zero_is_not_a_spectral_point():
    with pytest.raises(ValueError):
        SpectralPoint(0)


def test_multiply_examples():
    p = pt("A1", (1, (1,)))
    assert multiply(p, PolyTuple.empty("A1")) == p
    assert multiply(p, p) == pt("A1", (1, (2,)))
    assert len(multiply(p, pt("A1", (2, (1,)))).factors) == 2


def test_dual_examples():
    assert dual(pt("A2", ("a", (1, 0)))) == pt("A2", ("a", (0, 1)))
    p = pt("B3", (3, (1, 0, 2)), ("z", (0, 1, 1)))
    assert dual(p) == p
    assert dual(PolyTuple.empty("E6")) == PolyTuple.empty("E6")


def test_spectral_character_examples():
    assert spectral_character(pt("A1", ("a", (2,)))).is_zero()
    chi = spectral_character(pt("A1", (1, (1,)), (2, (1,))))
    assert chi(1).residues == (1,) and chi(2).residues == (1,) and chi(3).is_identity()
    merged = pt("A2", ("a", (1, 0)), ("a", (1, 0)))
    assert spectral_character(merged)("a").residues == (2,)


def test_lambda_pi_examples():
    assert lambda_pi(PolyTuple.empty("A2")) == (0, 0)
    assert lambda_pi(pt("A1", (1, (1,)), (2, (1,)))) == (2,)
    assert lambda_pi(pt("A2", (1, (1, 0)), (2, (0, 1)))) == (1, 1)


def test_same_block_examples():
    assert same_block(pt("A1", ("a", (2,))), PolyTuple.empty("A1"))
    assert not same_block(pt("A1", (1, (1,))), pt("A1", (2, (1,))))
    p = pt("C3", (5, (1, 1, 0)))
    assert same_block(p, p)


def test_block_label_examples():
    assert block_label(pt("A1", ("a", (3,)))) == [(SpectralPoint("a"), (1,))]
    assert block_label(PolyTuple.empty("A4")) == []
    assert block_label(pt("A2", ("a", (1, 1)))) == []


def test_json_round_trip_with_symbolic_points():
    p = pt("D4", ("z1", (1, 0, 0, 1)), (Fraction(-3, 7), (0, 2, 0, 0)))
    assert PolyTuple.from_json(p.to_json()) == p
    assert PolyTuple.from_json({"coeffs": [[1, -3, 2]]}, "A1") == pt("A1", (1, (1,)), (2, (1,)))


def test_points_are_canonically_ordered():
    p = pt("A1", ("b", (1,)), (3, (1,)), ("a", (1,)), (-1, (2,)))
    assert [str(x) for x in p.points] == ["-1", "3", "a", "b"]


# --- randomized properties -------------------------------------------------

POINTS = st.one_of(
    st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda x: x != 0),
    st.sampled_from(["z1", "z2", "w"]),
)


@st.composite
def tuples(draw, lie_type):
    n = build(lie_type).rank
    pairs = draw(st.lists(st.tuples(POINTS, st.lists(st.integers(0, 3), min_size=n, max_size=n)),
                          max_size=4))
    return PolyTuple.from_factors(lie_type, pairs)


@pytest.mark.parametrize("lie_type", TYPES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_character_is_additive(lie_type, data):
    a, b = data.draw(tuples(lie_type)), data.draw(tuples(lie_type))
    assert spectral_character(multiply(a, b)) == spectral_character(a) + spectral_character(b)


@pytest.mark.parametrize("lie_type", TYPES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_dual_negates_character(lie_type, data):
    a = data.draw(tuples(lie_type))
    assert spectral_character(dual(a)) == -spectral_character(a)
    assert dual(dual(a)) == a


@pytest.mark.parametrize("lie_type", ["A1", "A2", "B2", "G2"])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_coefficient_round_trip(lie_type, data):
    n = build(lie_type).rank
    rational = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(lambda x: x != 0)
    pairs = data.draw(st.lists(st.tuples(rational, st.lists(st.integers(0, 2), min_size=n,
                                                            max_size=n)), max_size=3))
    a = PolyTuple.from_factors(lie_type, pairs)
    assert from_coefficients(lie_type, a.to_coefficients()) == a


def test_character_group_laws():
    g = gamma_group(build("D4"))
    x = SpectralCharacter.from_values("D4", [(1, e) for e in g.elements()[:2]])
    assert (x + -x).is_zero()
    assert x + SpectralCharacter.zero("D4") == x


def test_mismatched_types_are_rejected():
    with pytest.raises(ValueError):
        multiply(PolyTuple.empty("A1"), PolyTuple.empty("A2"))
    with pytest.raises(ValueError):
        pt("A2", (1, (1,)))
    with pytest.raises(ValueError):
        pt("A2", (1, (1, -1)))
