"""Independent multiplicity oracle.

Weyl's dimension formula, Freudenthal's recursion for weight
multiplicities, and the Brauer-Klimyk rule specialised to tensoring with
the adjoint module.  Every linking step in :mod:`block_atlas.linking` is
certified here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import kernels
from .gamma import project
from .rootsys import RootSystem, Weight, is_dominant


class NotDominantError(ValueError):
    pass


def _require_dominant(lam: Sequence[int]) -> None:
    if not is_dominant(lam):
        raise NotDominantError(f"weight {tuple(lam)} is not dominant")


def weyl_dim(rs: RootSystem, lam: Sequence[int]) -> int:
    """Dimension of ``V(lam)``."""
    _require_dominant(lam)
    shifted = [c + 1 for c in lam]
    num = Fraction(1)
    for beta in rs.positive_roots:
        num *= rs.pairing(shifted, beta) / rs.pairing(rs.rho, beta)
    assert num.denominator == 1
    return int(num)


@dataclass(frozen=True)
class WeightSystem:
    """Weight multiplicities of ``V(highest)``, stored on dominant weights."""

    rs: RootSystem
    highest: Weight
    dominant: dict[Weight, int]

    def multiplicity(self, mu: Sequence[int]) -> int:
        return self.dominant.get(self.rs.to_dominant(mu), 0)

    def orbit(self, mu: Sequence[int]) -> list[Weight]:
        """W-orbit of a dominant weight, by breadth-first simple reflections."""
        start = tuple(mu)
        seen = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for i in range(1, self.rs.rank + 1):
                if w[i - 1] > 0:
                    r = self.rs.reflect(w, i)
                    if r not in seen:
                        seen.add(r)
                        queue.append(r)
        return sorted(seen, reverse=True)

    def items(self) -> Iterator[tuple[Weight, int]]:
        """All weights with their multiplicities (expands orbits)."""
        for mu, m in self.dominant.items():
            for w in self.orbit(mu):
                yield w, m

    def dimension(self) -> int:
        return sum(m * len(self.orbit(mu)) for mu, m in self.dominant.items())


def dominant_weights_below(rs: RootSystem, lam: Sequence[int]) -> list[Weight]:
    """Dominant weights of ``V(lam)``, highest first (by depth below ``lam``)."""
    lam = tuple(lam)
    roots = rs.positive_roots_omega
    depth = {lam: 0}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for beta in roots:
            nu = tuple(a - b for a, b in zip(mu, beta))
            if is_dominant(nu) and nu not in depth:
                depth[nu] = -1
                queue.append(nu)
    out = list(depth)
    heights = {mu: sum(rs.weight_to_root_coords([a - b for a, b in zip(lam, mu)]))
               for mu in out}
    out.sort(key=lambda mu: (heights[mu], tuple(-c for c in mu)))
    return out


@lru_cache(maxsize=256)
def _weight_system(rs: RootSystem, lam: Weight) -> WeightSystem:
    doms = dominant_weights_below(rs, lam)
    known = set(doms)
    roots = [(b, rs.root_to_weight(b)) for b in rs.positive_roots]
    rho = rs.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_top = rs.inner(lr, lr)
    mult: dict[Weight, int] = {lam: 1}
    for mu in doms[1:]:
        total = Fraction(0)
        for _, a_w in roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a_w))
                dom = rs.to_dominant(nu)
                if dom not in known:
                    break
                m = mult.get(dom, 0)
                if m:
                    total += m * rs.inner(nu, a_w)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = norm_top - rs.inner(mr, mr)
        val = 2 * total / denom
        assert val.denominator == 1 and val >= 0, (mu, val)
        if val:
            mult[mu] = int(val)
    return WeightSystem(rs, lam, mult)


def weight_multiplicities(rs: RootSystem, lam: Sequence[int]) -> WeightSystem:
    """Freudenthal multiplicities of every dominant weight of ``V(lam)``."""
    _require_dominant(lam)
    return _weight_system(rs, tuple(lam))


def kostant_zero_weight(rs: RootSystem, nu: Sequence[int]) -> bool:
    """Whether the zero weight occurs in ``V(nu)``."""
    return weight_multiplicities(rs, nu).multiplicity((0,) * rs.rank) > 0


@lru_cache(maxsize=65536)
def _adjoint_tensor(rs: RootSystem, mu: Weight, backend: str | None) -> dict[Weight, int]:
    weights = [w for w, _ in rs.adjoint_weights]
    mults = [m for _, m in rs.adjoint_weights]
    return kernels.adjoint_decomposition(mu, weights, mults, rs.cartan, backend=backend)


def adjoint_tensor_decomposition(rs: RootSystem, mu: Sequence[int],
                                 backend: str | None = None) -> dict[Weight, int]:
    """Decomposition of ``g (x) V(mu)`` as ``{nu: multiplicity}``."""
    _require_dominant(mu)
    return dict(_adjoint_tensor(rs, tuple(mu), backend))


def adjoint_tensor_multiplicity(rs: RootSystem, mu: Sequence[int], nu: Sequence[int],
                                backend: str | None = None) -> int:
    """Multiplicity of ``V(nu)`` in ``g (x) V(mu)``."""
    _require_dominant(mu)
    _require_dominant(nu)
    return _adjoint_tensor(rs, tuple(mu), backend).get(tuple(nu), 0)


@lru_cache(maxsize=None)
def _adjoint_weight_set(rs: RootSystem) -> frozenset[Weight]:
    return frozenset(w for w, _ in rs.adjoint_weights)


def hom_nonzero(rs: RootSystem, mu: Sequence[int], nu: Sequence[int],
                backend: str | None = None) -> bool:
    """Whether ``Hom_g(g (x) V(mu), V(nu))`` is nonzero."""
    _require_dominant(mu)
    _require_dominant(nu)
    diff = tuple(b - a for a, b in zip(mu, nu))
    if diff not in _adjoint_weight_set(rs):
        return False
    if project(rs, mu) != project(rs, nu):  # implied by the line above; cheap guard
        return False
    return adjoint_tensor_multiplicity(rs, mu, nu, backend) > 0
