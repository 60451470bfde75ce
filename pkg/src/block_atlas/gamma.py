"""The finite abelian group P/Q of weight classes modulo the root lattice."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .rootsys import RootSystem, Weight


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Return ``(d, u, v)`` with ``u @ m @ v = diag(d)``, ``u, v`` unimodular.

    ``d`` is non-negative with ``d[0] | d[1] | ...``.  Plain integer
    elimination; intended for the small Cartan matrices used here.
    """
    n, k = len(m), len(m[0])
    a = [list(row) for row in m]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(n, k)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, k) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, n):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, k):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, k)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    d = [a[i][i] for i in range(min(n, k))]
    return d, u, v


@dataclass(frozen=True)
class GammaElement:
    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "residues", tuple(r % d for r, d in zip(self.residues, self.moduli)))

    def __add__(self, other: GammaElement) -> GammaElement:
        return GammaElement(tuple(a + b for a, b in zip(self.residues, other.residues)),
                            self.moduli)

    def __neg__(self) -> GammaElement:
        return GammaElement(tuple(-a for a in self.residues), self.moduli)

    def __sub__(self, other: GammaElement) -> GammaElement:
        return self + (-other)

    def is_identity(self) -> bool:
        return not any(self.residues)

    def to_json(self) -> dict:
        return {"residues": list(self.residues), "invariant_factors": list(self.moduli)}


@dataclass(frozen=True)
class GammaGroup:
    invariant_factors: tuple[int, ...]  # nontrivial factors only, d_1 | d_2 | ...
    transform: tuple[tuple[int, ...], ...]  # rows: omega-coords -> residues

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def identity(self) -> GammaElement:
        return GammaElement((0,) * len(self.invariant_factors), self.invariant_factors)

    def elements(self) -> list[GammaElement]:
        return [GammaElement(r, self.invariant_factors)
                for r in itertools.product(*(range(d) for d in self.invariant_factors))]

    def name(self) -> str:
        if not self.invariant_factors:
            return "0"
        return "x".join(f"Z{d}" for d in self.invariant_factors)


def _unit_inverse_matrix(m: list[list[int]], d: int) -> list[list[int]] | None:
    """Inverse of a square integer matrix modulo ``d``, or None if singular."""
    k = len(m)
    a = [[x % d for x in row] + [int(i == j) for j in range(k)] for i, row in enumerate(m)]
    for col in range(k):
        piv = None
        for r in range(col, k):
            try:
                inv = pow(a[r][col], -1, d)
            except ValueError:
                continue
            piv = r
            break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        a[col] = [(x * inv) % d for x in a[col]]
        for r in range(k):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % d for x, y in zip(a[r], a[col])]
    return [row[k:] for row in a]


@lru_cache(maxsize=None)
def gamma_group(rs: RootSystem) -> GammaGroup:
    """Invariant factors of ``P/Q`` from the Smith form of the Cartan matrix.

    The residue coordinates are normalised so that the fundamental weights
    of the shaded nodes map to the standard generators whenever that is
    possible (it is for every simple type).
    """
    d, u, _ = smith_normal_form(rs.cartan)
    keep = [i for i, x in enumerate(d) if x != 1]
    factors = tuple(d[i] for i in keep)
    rows = [list(u[i]) for i in keep]
    if factors and len(set(factors)) == 1 and len(factors) == len(rs.shaded_nodes):
        dd = factors[0]
        # images of the shaded fundamental weights, as columns
        img = [[rows[r][s - 1] for s in rs.shaded_nodes] for r in range(len(rows))]
        inv = _unit_inverse_matrix(img, dd)
        if inv is not None:
            rows = [[sum(inv[r][k] * rows[k][j] for k in range(len(rows))) % dd
                     for j in range(rs.rank)] for r in range(len(rows))]
    rows = [[x % f for x in row] for row, f in zip(rows, factors)]
    return GammaGroup(factors, tuple(tuple(r) for r in rows))


def project(rs: RootSystem, lam: Sequence[int]) -> GammaElement:
    """Image of a weight in ``P/Q``."""
    g = gamma_group(rs)
    res = tuple(sum(c * x for c, x in zip(row, lam)) for row in g.transform)
    return GammaElement(res, g.invariant_factors)


def lambda_gamma(rs: RootSystem, gamma: GammaElement) -> Weight:
    """Minimal dominant representative of ``gamma`` supported on the shaded nodes.

    Minimises the coefficient sum, then lexicographically in node order.
    """
    g = gamma_group(rs)
    bound = max(g.invariant_factors, default=1)
    best = None
    shaded = rs.shaded_nodes
    for coeffs in itertools.product(range(bound), repeat=len(shaded)):
        lam = [0] * rs.rank
        for node, c in zip(shaded, coeffs):
            lam[node - 1] = c
        lam = tuple(lam)
        if project(rs, lam) == gamma:
            key = (sum(coeffs), lam)
            if best is None or key < best:
                best = key
    if best is None:
        raise ValueError(f"no shaded representative for {gamma} in {rs}")
    return best[1]


def class_of(rs: RootSystem, lam: Sequence[int]) -> Weight:
    """Shorthand for ``lambda_gamma(project(lam))``."""
    return lambda_gamma(rs, project(rs, lam))
