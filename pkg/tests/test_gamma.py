import itertools
import random

import pytest

from block_atlas.gamma import (GammaElement, class_of, gamma_group, lambda_gamma, project,
                               smith_normal_form)
from block_atlas.rootsys import build


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@pytest.mark.parametrize("name", ["A3", "B4", "D4", "D5", "E6", "F4", "G2"])
def test_smith_form_factorisation(name):
    rs = build(name)
    d, u, v = smith_normal_form(rs.cartan)
    prod = _matmul(_matmul(u, [list(r) for r in rs.cartan]), v)
    n = rs.rank
    assert prod == [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in zip(d, d[1:]):
        assert b % a == 0


def test_smith_form_random_matrices():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 5)
        m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        d, u, v = smith_normal_form(m)
        prod = _matmul(_matmul(u, m), v)
        assert all(prod[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        assert [prod[i][i] for i in range(n)] == list(d)


@pytest.mark.parametrize("name, group", [
    ("A3", "Z4"), ("D4", "Z2xZ2"), ("E8", "0"), ("A1", "Z2"), ("B5", "Z2"),
    ("C3", "Z2"), ("D5", "Z4"), ("D6", "Z2xZ2"), ("E6", "Z3"), ("E7", "Z2"),
    ("F4", "0"), ("G2", "0"),
])
def test_group_names(name, group):
    assert gamma_group(build(name)).name() == group


def test_project_examples():
    a2 = build("A2")
    assert project(a2, (0, 1)).residues == (2,)
    assert project(a2, a2.theta_weight).is_identity()
    assert project(build("A1"), (2,)).is_identity()


@pytest.mark.parametrize("name", ["A3", "B3", "C4", "D4", "D5", "E6", "E7"])
def test_project_is_a_homomorphism_with_kernel_q(name):
    rs = build(name)
    rng = random.Random(name)
    for _ in range(30):
        a = tuple(rng.randint(-4, 4) for _ in range(rs.rank))
        b = tuple(rng.randint(-4, 4) for _ in range(rs.rank))
        s = tuple(x + y for x, y in zip(a, b))
        assert project(rs, s) == project(rs, a) + project(rs, b)
        assert project(rs, a).is_identity() == rs.in_root_lattice(a)


@pytest.mark.parametrize("name", ["A4", "B3", "D4", "D5", "E6", "E7"])
def test_shaded_weights_generate(name):
    rs = build(name)
    g = gamma_group(rs)
    gens = [project(rs, tuple(int(k == s - 1) for k in range(rs.rank))) for s in rs.shaded_nodes]
    reached = {g.identity()}
    frontier = [g.identity()]
    while frontier:
        x = frontier.pop()
        for y in gens:
            z = x + y
            if z not in reached:
                reached.add(z)
                frontier.append(z)
    assert len(reached) == g.order == len(g.elements())


def test_lambda_gamma_examples():
    a2 = build("A2")
    assert lambda_gamma(a2, GammaElement((2,), (3,))) == (2, 0)
    d4 = build("D4")
    assert lambda_gamma(d4, project(d4, (1, 0, 0, 0))) == (0, 0, 1, 1)
    for name in ["A2", "D4", "E8", "G2"]:
        rs = build(name)
        assert lambda_gamma(rs, gamma_group(rs).identity()) == (0,) * rs.rank


@pytest.mark.parametrize("name", ["A3", "B4", "C3", "D4", "D5", "D6", "E6", "E7"])
def test_lambda_gamma_is_a_section_supported_on_shaded_nodes(name):
    rs = build(name)
    for gamma in gamma_group(rs).elements():
        lam = lambda_gamma(rs, gamma)
        assert project(rs, lam) == gamma
        assert all(c == 0 or (i + 1) in rs.shaded_nodes for i, c in enumerate(lam))


def test_class_of_is_constant_on_cosets():
    rs = build("A3")
    for lam in itertools.product(range(3), repeat=3):
        shifted = tuple(x + y for x, y in zip(lam, rs.theta_weight))
        assert class_of(rs, lam) == class_of(rs, shifted)
