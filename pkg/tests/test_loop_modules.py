from fractions import Fraction

import pytest

from block_atlas.drinfeld import SpectralCharacter
from block_atlas.gamma import GammaElement
from block_atlas.irreps import build_irrep
from block_atlas.linalg import QMatrix
from block_atlas.loop_modules import (HomVanishesError, MixedCharacterError, NonEquivariantError,
                                      acts_as_zero, check_lie_action, direct_sum,
                                      equivariant_projection, evaluation_module, exact_sequence,
                                      extension_module, irreducibility_report, is_irreducible,
                                      is_nonsplit, jet_annihilator_check, laurent,
                                      spectral_character_of, tensor_product)
from block_atlas.rootsys import build
from block_atlas.tensor_oracle import adjoint_tensor_multiplicity

A1 = build("A1")
A2 = build("A2")


def _ev(rs, lam, a):
    return evaluation_module(build_irrep(rs, lam), a)


def test_laurent_parsing():
    assert laurent("(t - 3)**2") == {2: 1, 1: -6, 0: 9}
    assert laurent("t**-2 + 1/2") == {-2: 1, 0: Fraction(1, 2)}
    with pytest.raises(ValueError):
        laurent("sqrt(t)")


def test_evaluation_at_one_ignores_the_power():
    m = _ev(A2, (1, 1), 1)
    for r in range(-2, 3):
        assert m.action("x1+", r) == m.action("x1+", 0)


def test_evaluation_scales_by_powers_of_the_point():
    m = _ev(A1, (2,), Fraction(3, 2))
    x = m.action("x1-", 0)
    assert m.action("x1-", 2) == x.scale(Fraction(9, 4))
    assert m.action("x1-", -1) == x.scale(Fraction(2, 3))
    assert jet_annihilator_check(m, {1: 1})
    assert m.laurent_action("h1", {1: 1}) == m.action("h1", 0).scale(Fraction(3, 2))
    assert check_lie_action(m)


def test_bracket_map_for_the_adjoint():
    p = equivariant_projection(A1, (2,), (2,))
    assert p.multiplicity == 1
    src = p.source
    blocks = [p.block(b) for b in range(3)]
    # p(x (x) v) = c [x, v]: every block is the same multiple of the action of x
    ratios = set()
    for b in range(3):
        act = src.basis_action[b]
        for i, j, val in act.nonzero():
            ratios.add(blocks[b][i, j] / val)
        for i, j, val in blocks[b].nonzero():
            assert act[i, j] != 0
    assert len(ratios) == 1 and 0 not in ratios


def test_projection_examples():
    p = equivariant_projection(A1, (3,), (1,))
    assert not p.matrix.is_zero()
    with pytest.raises(HomVanishesError, match="Hom vanishes"):
        equivariant_projection(A1, (1,), (4,))


@pytest.mark.parametrize("lam, mu", [((1, 1), (1, 1)), ((2, 2), (1, 1)), ((1, 1), (0, 0)),
                                     ((3, 0), (1, 1))])
def test_projection_multiplicity_matches_oracle(lam, mu):
    p = equivariant_projection(A2, lam, mu)
    assert p.multiplicity == adjoint_tensor_multiplicity(A2, lam, mu)


def test_extension_module_properties():
    m = extension_module(A1, (3,), (1,), 2)
    assert m.dim == 6
    assert check_lie_action(m)
    assert exact_sequence(m)
    assert is_nonsplit(m)
    assert acts_as_zero(m, "(t - 2)**2")
    assert jet_annihilator_check(m, "t**2 - 1/t")
    assert not acts_as_zero(m, "t - 2")


def test_constant_jet_acts_as_x():
    m = extension_module(A1, (2,), (2,), 5)
    for name in ("x1+", "x1-", "h1"):
        assert m.laurent_action(name, {0: 1}) == m.action(name, 0)


def test_zero_projection_gives_the_split_module():
    src, tgt = build_irrep(A1, (3,)), build_irrep(A1, (1,))
    zero = QMatrix.zeros(tgt.dim, 3 * src.dim)
    m = extension_module(A1, (3,), (1,), 2, p=zero)
    assert check_lie_action(m)
    assert not is_nonsplit(m)


def test_scaled_projection_still_gives_a_nonsplit_module():
    p = equivariant_projection(A2, (1, 1), (1, 1))
    m = extension_module(A2, (1, 1), (1, 1), -1, p=p.scaled(Fraction(-7, 3)))
    assert check_lie_action(m) and is_nonsplit(m)


def test_scaling_is_a_change_of_basis():
    c = Fraction(5, 2)
    p = equivariant_projection(A1, (2,), (2,))
    m1 = extension_module(A1, (2,), (2,), 3, p=p)
    m2 = extension_module(A1, (2,), (2,), 3, p=p.scaled(c))
    d = QMatrix.block([[QMatrix.identity(3), None], [None, QMatrix.identity(3).scale(c)]],
                      [3, 3], [3, 3])
    for name in ("x1+", "x1-", "h1"):
        for r in range(-2, 3):
            assert m2.action(name, r) @ d == d @ m1.action(name, r)


def test_non_equivariant_map_is_rejected():
    p = equivariant_projection(A1, (3,), (1,)).matrix
    bad = p + QMatrix.from_entries(p.shape[0], p.shape[1], {(0, 0): 1})
    with pytest.raises(NonEquivariantError):
        extension_module(A1, (3,), (1,), 2, p=bad)


def test_irreducibility_examples():
    v = build_irrep(A1, (1,))
    generic = tensor_product(evaluation_module(v, 1), evaluation_module(v, 2))
    assert is_irreducible(generic)
    same = tensor_product(evaluation_module(v, 3), evaluation_module(v, 3))
    report = irreducibility_report(same)
    assert not report.irreducible and report.certain
    w = report.witness
    assert 0 < w.shape[1] < same.dim
    assert is_irreducible(_ev(A1, (0,), 4))


def test_extension_is_reducible_with_the_submodule_as_witness():
    m = extension_module(A1, (2,), (2,), 1)
    report = irreducibility_report(m)
    assert not report.irreducible
    assert report.witness.shape[1] == 3


def test_large_irreducible_uses_singular_line():
    m = _ev(A2, (2, 2), 2)
    report = irreducibility_report(m)
    assert report.irreducible and report.certain


def test_spectral_character_examples():
    assert spectral_character_of(extension_module(A1, (2,), (2,), 4)).is_zero()
    chi = spectral_character_of(extension_module(A1, (3,), (1,), 4))
    assert chi == SpectralCharacter.from_values("A1", [(4, GammaElement((1,), (2,)))])
    ev = spectral_character_of(_ev(A1, (1,), Fraction(-1, 3)))
    assert ev(Fraction(-1, 3)).residues == (1,)


def test_mixed_character_is_reported():
    mixed = direct_sum(_ev(A1, (1,), 2), _ev(A1, (0,), 2))
    with pytest.raises(MixedCharacterError) as info:
        spectral_character_of(mixed)
    first, second = info.value.pair
    assert first != second


def test_json_export():
    data = _ev(A1, (1,), 2).to_json()
    assert data["dim"] == 2 and data["points"] == [{"rat": [2, 1]}]
    assert len(data["generators"]) == 3 * 5
