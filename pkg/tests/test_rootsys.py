from fractions import Fraction

import pytest

from block_atlas.rootsys import CLASSICAL_ROOT_COUNT, LieType, LieTypeError, build
from block_atlas.tensor_oracle import weyl_dim

ALL_TYPES = ["A1", "A2", "A5", "B2", "B3", "B6", "C2", "C3", "C5", "D4", "D5", "D6",
             "E6", "E7", "E8", "F4", "G2"]


@pytest.mark.parametrize("name", ALL_TYPES)
def test_root_count(name):
    rs = build(name)
    lt = rs.lie_type
    assert len(rs.positive_roots) == CLASSICAL_ROOT_COUNT[lt.family](lt.rank)


@pytest.mark.parametrize("name", ALL_TYPES)
def test_theta_is_the_unique_maximal_root(name):
    rs = build(name)
    for beta in rs.positive_roots:
        assert all(t >= b for t, b in zip(rs.theta, beta))
    # adjoint dimension = rank + number of roots
    assert weyl_dim(rs, rs.theta_weight) == rs.rank + 2 * len(rs.positive_roots)


def test_a2_cartan_and_theta():
    rs = build("A2")
    assert rs.cartan == ((2, -1), (-1, 2))
    assert rs.theta == (1, 1)


def test_a1():
    rs = build("A1")
    assert rs.cartan == ((2,),)
    assert rs.theta_weight == (2,)


def test_g2_labeling():
    rs = build("G2")
    assert rs.simple_root(1) == (2, -1)
    assert rs.simple_root(2) == (-3, 2)
    assert rs.theta == (3, 2)
    assert rs.shaded_nodes == (1,)
    assert weyl_dim(rs, (0, 1)) == 14


def test_weight_to_root_coords():
    assert build("A2").weight_to_root_coords((1, 0)) == (Fraction(2, 3), Fraction(1, 3))
    assert build("A1").weight_to_root_coords((2,)) == (1,)
    assert build("E7").weight_to_root_coords((0,) * 7) == (0,) * 7


def test_dominance():
    a2 = build("A2")
    assert a2.dominance_ge(a2.theta_weight, (0, 0))
    assert not a2.dominance_ge((1, 0), (0, 0))
    assert build("A1").dominance_ge((3,), (1,))


def test_minus_w0():
    a2 = build("A2")
    assert a2.minus_w0((1, 0)) == (0, 1)
    b3 = build("B3")
    assert b3.minus_w0((1, 2, 3)) == (1, 2, 3)
    assert build("E6").minus_w0((0,) * 6) == (0,) * 6


@pytest.mark.parametrize("name", ["A3", "A4", "D5", "E6", "D4", "E7"])
def test_minus_w0_preserves_dimension_and_is_an_involution(name):
    rs = build(name)
    for i in range(rs.rank):
        lam = tuple(int(k == i) for k in range(rs.rank))
        dual = rs.minus_w0(lam)
        assert rs.minus_w0(dual) == lam
        assert weyl_dim(rs, dual) == weyl_dim(rs, lam)


def test_minus_w0_agrees_with_the_longest_element():
    for name in ["A4", "D5", "E6", "D6"]:
        rs = build(name)
        for i in range(rs.rank):
            lam = tuple(int(k == i) for k in range(rs.rank))
            assert rs.to_dominant(tuple(-c for c in lam)) == rs.minus_w0(lam)


@pytest.mark.parametrize("text", ["D3", "D2", "B1", "C1", "E5", "E9", "F3", "G3", "A0", "H3", "Z"])
def test_inadmissible_types_are_rejected(text):
    with pytest.raises(LieTypeError):
        LieType.parse(text)


def test_d3_message_mentions_the_coincidence():
    with pytest.raises(LieTypeError, match="coincide"):
        LieType("D", 3)


def test_bourbaki_relabel_is_a_permutation():
    for name in ["E6", "E7", "E8", "F4", "A3"]:
        lt = LieType.parse(name)
        assert sorted(lt.bourbaki_labels()) == list(range(1, lt.rank + 1))


def test_shaded_nodes():
    assert build("D4").shaded_nodes == (3, 4)
    assert build("D5").shaded_nodes == (5,)
    assert build("B4").shaded_nodes == (4,)
    assert build("C4").shaded_nodes == (1,)


def test_pairing_of_simple_coroots_matches_cartan():
    rs = build("F4")
    for i in range(4):
        for j in range(4):
            beta = tuple(int(k == i) for k in range(4))
            omega_j = tuple(int(k == j) for k in range(4))
            assert rs.pairing(omega_j, beta) == int(i == j)
