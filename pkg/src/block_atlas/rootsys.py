"""Root systems of the finite-type simple Lie algebras.

Node numbering follows the labeling used throughout this package (see
``BOURBAKI_LABELS`` for the translation to Bourbaki's plates):

* ``A_n``: chain ``1 - 2 - ... - n``.
* ``B_n``: chain, node ``n`` short.
* ``C_n``: chain, node ``n`` long.
* ``D_n``: chain ``1 - ... - (n-1)``, node ``n`` attached to ``n-2``.
* ``E_6``: chain ``1 - ... - 5``, node 6 attached to node 3.
* ``E_7``: chain ``1 - ... - 6``, node 7 attached to node 4.
* ``E_8``: chain ``1 - ... - 7``, node 8 attached to node 5.
* ``F_4``: ``1 - 2 => 3 - 4`` with nodes 1, 2 short.
* ``G_2``: node 1 short, node 2 long.

Weights are integer tuples in the fundamental-weight basis, root vectors
integer tuples in the simple-root basis.  All arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

Weight = tuple[int, ...]
RootVector = tuple[int, ...]

_ADMISSIBLE = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# package label i -> Bourbaki label, listed for nodes 1..n
BOURBAKI_LABELS: dict[str, tuple[int, ...]] = {
    "E6": (1, 3, 4, 5, 6, 2),
    "E7": (7, 6, 5, 4, 3, 1, 2),
    "E8": (8, 7, 6, 5, 4, 3, 1, 2),
    "F4": (4, 3, 2, 1),
}


class LieTypeError(ValueError):
    """Raised for an unknown family or an inadmissible rank."""


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in _ADMISSIBLE:
            raise LieTypeError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not _ADMISSIBLE[self.family](self.rank):
            raise LieTypeError(
                f"rank {self.rank} is not admissible for family {self.family}"
                + (" (D2, D3 coincide with A-series types and are rejected)"
                   if self.family == "D" and self.rank in (2, 3) else "")
            )

    @classmethod
    def parse(cls, text: str) -> LieType:
        m = re.fullmatch(r"\s*([A-Ga-g])(\d+)\s*", text)
        if m is None:
            raise LieTypeError(f"cannot parse Lie type {text!r}; expected e.g. 'A2', 'E7'")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    def bourbaki_labels(self) -> tuple[int, ...]:
        """Bourbaki node number for each of our nodes 1..n."""
        return BOURBAKI_LABELS.get(str(self), tuple(range(1, self.rank + 1)))


def _diagram(lt: LieType) -> tuple[list[tuple[int, int]], list[int]]:
    """Edges (0-based) and half squared lengths of the simple roots."""
    n, f = lt.rank, lt.family
    edges = [(i, i + 1) for i in range(n - 1)]
    half_len = [1] * n
    if f == "B":
        half_len = [2] * (n - 1) + [1]
    elif f == "C":
        half_len = [1] * (n - 1) + [2]
    elif f == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif f == "E":
        branch = {6: 2, 7: 3, 8: 4}[n]
        edges = [(i, i + 1) for i in range(n - 2)] + [(branch, n - 1)]
    elif f == "F":
        half_len = [1, 1, 2, 2]
    elif f == "G":
        half_len = [1, 3]
    return edges, half_len


def _cartan(lt: LieType) -> tuple[tuple[int, ...], ...]:
    edges, d = _diagram(lt)
    n = lt.rank
    # symmetrized form (alpha_i, alpha_j)
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        b[i][i] = 2 * d[i]
    for i, j in edges:
        b[i][j] = b[j][i] = -max(d[i], d[j])
    return tuple(tuple(2 * b[i][j] // (2 * d[i]) for j in range(n)) for i in range(n))


def _positive_roots(cartan: Sequence[Sequence[int]]) -> list[RootVector]:
    """Closure of the simple roots under root strings, sorted by height."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # <beta, alpha_i^vee>
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in roots:
                        break
                    q += 1
                if q - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), tuple(-c for c in r)))


def _invert(m: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


_SHADED = {
    "A": lambda n: (1,),
    "B": lambda n: (n,),
    "C": lambda n: (1,),
    "D": lambda n: (n - 1, n) if n % 2 == 0 else (n,),
    "E": lambda n: (1,),
    "F": lambda n: (1,),
    "G": lambda n: (1,),
}


@dataclass(frozen=True)
class RootSystem:
    """Cached combinatorics of one simple type.

    ``cartan[i][j] = alpha_j(h_i)``, so column ``j`` holds ``alpha_j`` in the
    fundamental-weight basis.  ``shaded_nodes`` and ``dual_perm`` are 1-based.
    """

    lie_type: LieType
    cartan: tuple[tuple[int, ...], ...]
    half_lengths: tuple[int, ...]
    positive_roots: tuple[RootVector, ...]
    theta: RootVector
    shaded_nodes: tuple[int, ...]
    dual_perm: tuple[int, ...]
    _inverse: tuple[tuple[Fraction, ...], ...] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    def __str__(self) -> str:
        return str(self.lie_type)

    # --- coordinate changes -------------------------------------------------
    def root_to_weight(self, beta: Sequence[int]) -> Weight:
        """Express a root-lattice vector in the fundamental-weight basis."""
        n = self.rank
        return tuple(sum(self.cartan[i][j] * beta[j] for j in range(n)) for i in range(n))

    def simple_root(self, i: int) -> Weight:
        """``alpha_i`` (1-based) in the fundamental-weight basis."""
        return tuple(row[i - 1] for row in self.cartan)

    @cached_property
    def positive_roots_omega(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(b) for b in self.positive_roots)

    @cached_property
    def theta_weight(self) -> Weight:
        return self.root_to_weight(self.theta)

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def adjoint_weights(self) -> tuple[tuple[Weight, int], ...]:
        """Weights of the adjoint module with multiplicities (roots, then zero)."""
        pos = self.positive_roots_omega
        out = [(w, 1) for w in pos] + [(tuple(-c for c in w), 1) for w in pos]
        out.append(((0,) * self.rank, self.rank))
        return tuple(out)

    def weight_to_root_coords(self, w: Sequence[int]) -> tuple[Fraction, ...]:
        """``C^{-1} w``; all entries integral iff ``w`` lies in the root lattice."""
        n = self.rank
        return tuple(sum((self._inverse[i][j] * w[j] for j in range(n)), Fraction(0))
                     for i in range(n))

    def in_root_lattice(self, w: Sequence[int]) -> bool:
        return all(x.denominator == 1 for x in self.weight_to_root_coords(w))

    def dominance_ge(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        """True iff ``lam - mu`` is a non-negative integer combination of simple roots."""
        diff = [a - b for a, b in zip(lam, mu)]
        return all(x.denominator == 1 and x >= 0 for x in self.weight_to_root_coords(diff))

    def minus_w0(self, lam: Sequence[int]) -> Weight:
        """Highest weight of the dual of ``V(lam)``."""
        out = [0] * self.rank
        for i, c in enumerate(lam):
            out[self.dual_perm[i] - 1] = c
        return tuple(out)

    # --- symmetric form -----------------------------------------------------
    def pairing(self, lam: Sequence[int], beta: Sequence[int]) -> Fraction:
        """``<lam, beta^vee>`` for a weight ``lam`` and a root vector ``beta``."""
        sq = sum(beta[i] * beta[j] * self.half_lengths[i] * self.cartan[i][j]
                 for i in range(self.rank) for j in range(self.rank))
        # (beta, beta) = sq; (lam, beta) = sum_i beta_i d_i lam_i
        ip = sum(beta[i] * self.half_lengths[i] * lam[i] for i in range(self.rank))
        return Fraction(2 * ip, sq)

    def inner(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        """Invariant form on weights, normalised so short simple roots have (a, a) = 2."""
        x = self.weight_to_root_coords(mu)
        return sum((x[j] * self.half_lengths[j] * lam[j] for j in range(self.rank)),
                   Fraction(0))

    def reflect(self, lam: Sequence[int], i: int) -> Weight:
        """Simple reflection ``s_i`` (1-based) applied to a weight."""
        c = lam[i - 1]
        a = self.simple_root(i)
        return tuple(x - c * y for x, y in zip(lam, a))

    def to_dominant(self, lam: Sequence[int]) -> Weight:
        v = list(lam)
        n = self.rank
        while True:
            for i in range(n):
                if v[i] < 0:
                    c = v[i]
                    for k in range(n):
                        v[k] -= c * self.cartan[k][i]
                    break
            else:
                return tuple(v)


@lru_cache(maxsize=None)
def build(lie_type: LieType | str) -> RootSystem:
    """Construct (and cache) the root system of ``lie_type``."""
    lt = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
    cartan = _cartan(lt)
    _, d = _diagram(lt)
    roots = _positive_roots(cartan)
    theta = roots[-1]
    n = lt.rank
    rs = RootSystem(
        lie_type=lt,
        cartan=cartan,
        half_lengths=tuple(d),
        positive_roots=tuple(roots),
        theta=theta,
        shaded_nodes=_SHADED[lt.family](n),
        dual_perm=(0,) * n,
        _inverse=_invert(cartan),
    )
    perm = []
    for i in range(n):
        neg = tuple(-int(j == i) for j in range(n))
        dom = rs.to_dominant(neg)
        perm.append(dom.index(1) + 1)
    object.__setattr__(rs, "dual_perm", tuple(perm))
    return rs


def is_dominant(lam: Sequence[int]) -> bool:
    return all(c >= 0 for c in lam)


CLASSICAL_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}
