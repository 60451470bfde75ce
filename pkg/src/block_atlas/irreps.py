"""Irreducible g-modules as exact matrices, and a concrete model of g.

``V(lam)`` is spanned level by level by lowering words applied to the
highest-weight vector.  A candidate ``f_i b`` is compared with the
vectors already chosen through its images under all raising operators:
below the highest weight that map is injective, so linear dependence can
be decided one level up without a bilinear form.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .linalg import QMatrix, commutator, dense_rref, linear_combination
from .rootsys import RootSystem, Weight, is_dominant
from .tensor_oracle import weyl_dim

DEFAULT_DIM_CAP = 64


class DimensionCapError(ValueError):
    pass


def dim_cap() -> int:
    raw = os.environ.get("BLOCK_ATLAS_DIM_CAP")
    return int(raw) if raw else DEFAULT_DIM_CAP


Vec = dict[int, Fraction]


def _axpy(acc: Vec, c: Fraction, v: Vec) -> None:
    for k, x in v.items():
        s = acc.get(k, 0) + c * x
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class Irrep:
    rs: RootSystem
    highest: Weight
    weights: tuple[Weight, ...]
    parents: tuple[tuple[int, int] | None, ...]  # basis vector t = f_i (vector b)
    e: tuple[QMatrix, ...]
    f: tuple[QMatrix, ...]
    h: tuple[QMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.weights)

    def generator(self, name: str) -> QMatrix:
        kind, i = _parse_generator(name)
        return {"e": self.e, "f": self.f, "h": self.h}[kind][i - 1]

    @cached_property
    def basis_action(self) -> tuple[QMatrix, ...]:
        """Matrices of every basis element of :func:`lie_model` on this module."""
        return lie_model(self.rs).represent(self.e, self.f, self.h)


def _parse_generator(name: str) -> tuple[str, int]:
    if name.startswith("h"):
        return "h", int(name[1:])
    if name.startswith("x") and name[-1] in "+-":
        return ("e" if name[-1] == "+" else "f"), int(name[1:-1])
    raise ValueError(f"unknown generator {name!r}")


def generator_names(rank: int) -> list[str]:
    return [f"{k}{i}{s}" for k, s in (("x", "+"), ("x", "-")) for i in range(1, rank + 1)] + \
        [f"h{i}" for i in range(1, rank + 1)]


def build_irrep(rs: RootSystem, lam: Sequence[int], cap: int | None = None) -> Irrep:
    """Exact matrices of ``e_i, f_i, h_i`` on ``V(lam)``."""
    lam = tuple(int(c) for c in lam)
    if len(lam) != rs.rank or not is_dominant(lam):
        raise ValueError(f"{lam} is not a dominant weight of {rs}")
    cap = dim_cap() if cap is None else cap
    expected = weyl_dim(rs, lam)
    if expected > cap:
        raise DimensionCapError(f"dim V{lam} = {expected} exceeds the cap {cap}")
    return _build(rs, lam, expected)


@lru_cache(maxsize=512)
def _build(rs: RootSystem, lam: Weight, expected: int) -> Irrep:
    n = rs.rank
    alphas = [rs.simple_root(i) for i in range(1, n + 1)]
    weights: list[Weight] = [lam]
    parents: list[tuple[int, int] | None] = [None]
    e_cols: list[list[Vec]] = [[{}] for _ in range(n)]  # e_cols[j][t] = e_{j+1} v_t
    f_cols: list[dict[int, Vec]] = [{} for _ in range(n)]  # filled one level later
    level = [0]
    while level:
        groups: dict[Weight, list[tuple[int, int]]] = {}
        for b in level:
            for i in range(n):
                nu = tuple(x - y for x, y in zip(weights[b], alphas[i]))
                groups.setdefault(nu, []).append((i, b))
        new_level: list[int] = []
        for nu, cands in groups.items():
            images = []
            for i, b in cands:
                img: dict[int, Fraction] = {}  # key j * N + index
                for j in range(n):
                    v: Vec = {}
                    for c, x in e_cols[j][b].items():
                        _axpy(v, x, f_cols[i][c])
                    if i == j and weights[b][i]:
                        _axpy(v, Fraction(weights[b][i]), {b: Fraction(1)})
                    for k, x in v.items():
                        img[j * (1 << 20) + k] = x
                images.append(img)
            keys = sorted({k for img in images for k in img})
            pos = {k: r for r, k in enumerate(keys)}
            pivots, deps = dense_rref([{pos[k]: x for k, x in img.items()} for img in images],
                                      len(keys))
            fresh = {}
            for p in pivots:
                i, b = cands[p]
                t = len(weights)
                weights.append(nu)
                parents.append((i, b))
                for j in range(n):
                    e_cols[j].append({k - j * (1 << 20): x for k, x in images[p].items()
                                      if k // (1 << 20) == j})
                f_cols[i][b] = {t: Fraction(1)}
                fresh[p] = t
                new_level.append(t)
            for q, coeffs in deps.items():
                i, b = cands[q]
                f_cols[i][b] = {fresh[p]: c for p, c in coeffs.items()}
        level = new_level
    dim = len(weights)
    if dim != expected:
        raise AssertionError(f"built {dim} vectors for V{lam}, Weyl formula gives {expected}")
    e = tuple(QMatrix.from_columns(dim, e_cols[j]) for j in range(n))
    f = tuple(QMatrix.from_columns(dim, [f_cols[i].get(t, {}) for t in range(dim)])
              for i in range(n))
    h = tuple(QMatrix.from_entries(dim, dim, {(t, t): weights[t][i] for t in range(dim)})
              for i in range(n))
    return Irrep(rs, lam, tuple(weights), tuple(parents), e, f, h)


# --- the Lie algebra itself ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class LieAlgebraModel:
    """Basis ``e_beta`` (beta > 0), ``h_i``, ``f_beta`` built from nested brackets.

    ``e_beta = [e_i, e_{beta - a_i}]`` for the smallest admissible ``i``, and
    likewise for ``f``.  Structure constants are read off the adjoint module.
    """

    rs: RootSystem
    labels: tuple[str, ...]
    words: tuple[tuple, ...]
    weights: tuple[Weight, ...]
    structure: dict[tuple[int, int], dict[int, Fraction]]
    ad: tuple[QMatrix, ...]
    form: QMatrix  # trace form of the adjoint representation

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, name: str) -> int:
        return self.labels.index(name)

    def generator_indices(self) -> list[int]:
        return [self.index(g) for g in generator_names(self.rs.rank)]

    def bracket(self, a: int, b: int) -> dict[int, Fraction]:
        return self.structure.get((a, b), {})

    def represent(self, e: Sequence[QMatrix], f: Sequence[QMatrix],
                  h: Sequence[QMatrix]) -> tuple[QMatrix, ...]:
        out: list[QMatrix] = []
        for word in self.words:
            kind, i, parent = word
            if kind == "h":
                out.append(h[i - 1])
            elif parent is None:
                out.append((e if kind == "e" else f)[i - 1])
            else:
                gen = (e if kind == "e" else f)[i - 1]
                out.append(commutator(gen, out[parent]))
        return tuple(out)


def _root_label(kind: str, beta: Sequence[int]) -> str:
    if sum(beta) == 1:
        return f"x{beta.index(1) + 1}{'+' if kind == 'e' else '-'}"
    return f"x{'+' if kind == 'e' else '-'}[{','.join(map(str, beta))}]"


@lru_cache(maxsize=None)
def lie_model(rs: RootSystem) -> LieAlgebraModel:
    n = rs.rank
    roots = sorted(rs.positive_roots, key=lambda b: (sum(b), tuple(-c for c in b)))
    root_pos = {b: k for k, b in enumerate(roots)}
    labels: list[str] = []
    words: list[tuple] = []
    weights: list[Weight] = []
    npos = len(roots)
    for kind, offset, sign in (("e", 0, 1), ("f", npos + n, -1)):
        for beta in roots:
            if sum(beta) == 1:
                words.append((kind, beta.index(1) + 1, None))
            else:
                i = next(i for i in range(n) if beta[i] > 0 and
                         tuple(c - (k == i) for k, c in enumerate(beta)) in root_pos)
                gamma = tuple(c - (k == i) for k, c in enumerate(beta))
                words.append((kind, i + 1, offset + root_pos[gamma]))
            labels.append(_root_label(kind, beta))
            weights.append(tuple(sign * x for x in rs.root_to_weight(beta)))
        if kind == "e":
            for i in range(1, n + 1):
                words.append(("h", i, None))
                labels.append(f"h{i}")
                weights.append((0,) * n)

    adj = _build(rs, rs.theta_weight, weyl_dim(rs, rs.theta_weight))
    proto = LieAlgebraModel(rs, tuple(labels), tuple(words), tuple(weights), {}, (), QMatrix.zeros(0, 0))
    mats = proto.represent(adj.e, adj.f, adj.h)
    d = len(mats)
    by_weight: dict[Weight, list[int]] = {}
    for k, w in enumerate(weights):
        by_weight.setdefault(w, []).append(k)
    structure: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(d):
        for b in range(d):
            c = commutator(mats[a], mats[b])
            if c.is_zero():
                continue
            w = tuple(x + y for x, y in zip(weights[a], weights[b]))
            coeffs = _express(c, [mats[k] for k in by_weight.get(w, [])])
            if coeffs is None:
                raise AssertionError(f"[{labels[a]}, {labels[b]}] not in the span of weight {w}")
            structure[(a, b)] = {by_weight[w][k]: x for k, x in coeffs.items() if x}
    ad = tuple(QMatrix.from_columns(d, [structure.get((a, b), {}) for b in range(d)])
               for a in range(d))
    form = QMatrix.from_entries(d, d, {(a, b): (ad[a] @ ad[b]).trace()
                                       for a in range(d) for b in range(d)})
    return LieAlgebraModel(rs, tuple(labels), tuple(words), tuple(weights), structure, ad, form)


def _express(target: QMatrix, basis: list[QMatrix]) -> dict[int, Fraction] | None:
    """Coefficients of ``target`` on linearly independent ``basis`` matrices."""
    if not basis:
        return None
    cols = [{i * target.shape[1] + j: x for i, j, x in m.nonzero()} for m in basis]
    tgt = {i * target.shape[1] + j: x for i, j, x in target.nonzero()}
    keys = sorted({k for c in cols for k in c} | set(tgt))
    pos = {k: r for r, k in enumerate(keys)}
    pivots, deps = dense_rref([{pos[k]: x for k, x in c.items()} for c in cols + [tgt]], len(keys))
    last = len(cols)
    if last in pivots:
        return None
    coeffs = deps[last]
    check = linear_combination(((coeffs.get(k, 0), basis[k]) for k in range(len(basis))),
                               target.shape)
    return coeffs if check == target else None
