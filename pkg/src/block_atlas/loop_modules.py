"""Finite-dimensional loop algebra modules given by first-order jet data.

A module is described by finitely many spectral points ``c`` and, for each
basis element ``x`` of g, two matrices ``A_c(x)`` and ``B_c(x)``:

    x (x) t^r  acts as  sum_c  c^r A_c(x) + r c^(r-1) B_c(x).

Evaluation modules have ``B = 0``.  The extension modules ``V(lam, mu, a)``
live on ``V(lam) + V(mu)`` and carry the derivative term in ``B``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .drinfeld import SpectralCharacter, SpectralPoint
from .gamma import project
from .irreps import (DimensionCapError, Irrep, LieAlgebraModel, build_irrep, dim_cap,
                     generator_names, lie_model)
from .linalg import (QMatrix, Span, commutator, linear_combination, sparse_consistent,
                     sparse_nullspace)
from .rootsys import RootSystem, Weight

__all__ = [
    "DimensionCapError", "HomVanishesError", "NonEquivariantError", "MixedCharacterError",
    "Irrep", "Jet", "LoopModule", "ExtensionModule", "Projection", "AxiomReport",
    "SequenceReport", "IrreducibilityReport", "build_irrep", "evaluation_module",
    "equivariant_projection", "extension_module", "check_lie_action", "exact_sequence",
    "jet_annihilator_check", "acts_as_zero", "is_nonsplit", "is_irreducible",
    "irreducibility_report", "spectral_character_of", "tensor_product", "direct_sum",
    "laurent", "dim_cap",
]

POWERS = range(-2, 3)


class HomVanishesError(ValueError):
    pass


class NonEquivariantError(ValueError):
    pass


class MixedCharacterError(ValueError):
    def __init__(self, first: SpectralCharacter, second: SpectralCharacter, where: tuple) -> None:
        self.pair = (first, second)
        self.where = where
        super().__init__(f"constituents carry different spectral characters: "
                         f"{first.to_json()['support']} vs {second.to_json()['support']}")


def _point(a) -> Fraction:
    p = SpectralPoint.of(a)
    if not p.is_rational:
        raise ValueError(f"module construction needs a rational point, got {p}")
    return p.value


@dataclass(frozen=True, eq=False)
class Jet:
    point: Fraction
    value: tuple[QMatrix, ...]
    slope: tuple[QMatrix, ...] | None = None


@dataclass(frozen=True, eq=False)
class LoopModule:
    rs: RootSystem
    dim: int
    jets: tuple[Jet, ...]

    @property
    def points(self) -> tuple[Fraction, ...]:
        return tuple(j.point for j in self.jets)

    @property
    def model(self) -> LieAlgebraModel:
        return lie_model(self.rs)

    def _index(self, x: int | str) -> int:
        return x if isinstance(x, int) else self.model.index(x)

    def action(self, x: int | str, r: int) -> QMatrix:
        """Matrix of ``x (x) t^r``."""
        b = self._index(x)
        terms = []
        for jet in self.jets:
            c = jet.point
            terms.append((c ** r, jet.value[b]))
            if jet.slope is not None and r:
                terms.append((r * c ** (r - 1), jet.slope[b]))
        return linear_combination(terms, (self.dim, self.dim))

    def laurent_action(self, x: int | str, f: Mapping[int, Fraction]) -> QMatrix:
        """Matrix of ``x (x) f`` for a Laurent polynomial ``{power: coefficient}``."""
        return linear_combination(((c, self.action(x, r)) for r, c in f.items()),
                                  (self.dim, self.dim))

    def jet_action(self, x: int | str, f: Mapping[int, Fraction]) -> QMatrix:
        """``sum_c f(c) A_c(x) + f'(c) B_c(x)``."""
        b = self._index(x)
        terms = []
        for jet in self.jets:
            val, der = _evaluate(f, jet.point)
            terms.append((val, jet.value[b]))
            if jet.slope is not None:
                terms.append((der, jet.slope[b]))
        return linear_combination(terms, (self.dim, self.dim))

    def to_json(self, powers: Iterable[int] = POWERS) -> dict:
        gens = []
        for name in generator_names(self.rs.rank):
            for r in powers:
                gens.append({"name": name, "power": r, "matrix": self.action(name, r).to_json()})
        return {"type": str(self.rs.lie_type), "dim": self.dim,
                "points": [SpectralPoint(c).to_json() for c in self.points], "generators": gens}


def _evaluate(f: Mapping[int, Fraction], c: Fraction) -> tuple[Fraction, Fraction]:
    val = sum((Fraction(k) * c ** r for r, k in f.items()), Fraction(0))
    der = sum((Fraction(k) * r * c ** (r - 1) for r, k in f.items() if r), Fraction(0))
    return val, der


def laurent(expr, t: sympy.Symbol | None = None) -> dict[int, Fraction]:
    """Laurent polynomial in ``t`` as ``{power: coefficient}``."""
    t = t or sympy.Symbol("t")
    expr = sympy.expand(sympy.sympify(expr))
    out: dict[int, Fraction] = {}
    for term in sympy.Add.make_args(expr):
        coeff, power = term.as_coeff_exponent(t)
        if not (coeff.is_Rational and power.is_Integer) or coeff.has(t):
            raise ValueError(f"{term} is not a rational Laurent monomial in {t}")
        out[int(power)] = out.get(int(power), Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return {k: v for k, v in out.items() if v}


def evaluation_module(irrep: Irrep, a) -> LoopModule:
    """Pull back ``irrep`` along ``x (x) t^r -> a^r x``."""
    return LoopModule(irrep.rs, irrep.dim, (Jet(_point(a), irrep.basis_action),))


# --- Lie-action axiom ---------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    failure: tuple[str, str, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_lie_action(m: LoopModule, powers: Iterable[int] = POWERS) -> AxiomReport:
    """``[x t^r, y t^s]`` acts as ``[x, y] t^(r+s)`` for generator pairs, exactly.

    Commutators of the jet matrices are formed once; every ``(r, s)`` is then
    an exact linear combination of them.
    """
    g = m.model
    gens = g.generator_indices()
    powers = list(powers)
    shape = (m.dim, m.dim)
    cache: dict[tuple[int, int], QMatrix] = {}

    def act(b: int, k: int) -> QMatrix:
        if (b, k) not in cache:
            cache[(b, k)] = m.action(b, k)
        return cache[(b, k)]

    for ia, a in enumerate(gens):
        for b in gens[ia:]:
            pieces = []
            for J in m.jets:
                for K in m.jets:
                    pieces.append((J.point, K.point, 0, 0, commutator(J.value[a], K.value[b])))
                    if K.slope is not None:
                        pieces.append((J.point, K.point, 0, 1, commutator(J.value[a], K.slope[b])))
                    if J.slope is not None:
                        pieces.append((J.point, K.point, 1, 0, commutator(J.slope[a], K.value[b])))
                    if J.slope is not None and K.slope is not None:
                        pieces.append((J.point, K.point, 1, 1, commutator(J.slope[a], K.slope[b])))
            br = g.bracket(a, b)
            for r in powers:
                for s in powers:
                    terms = []
                    for c, d, dj, dk, mat in pieces:
                        cr = r * c ** (r - 1) if dj else c ** r
                        ds = s * d ** (s - 1) if dk else d ** s
                        terms.append((cr * ds, mat))
                    lhs = linear_combination(terms, shape)
                    rhs = linear_combination(((x, act(e, r + s)) for e, x in br.items()), shape)
                    if lhs != rhs:
                        return AxiomReport(False, (g.labels[a], g.labels[b], r, s))
    return AxiomReport(True)


# --- equivariant maps g (x) V(lam) -> V(mu) ------------------------------------

@dataclass(frozen=True, eq=False)
class Projection:
    """A g-map ``p: g (x) V(lam) -> V(mu)``; column ``b * dim V(lam) + t`` is ``p(x_b (x) v_t)``."""

    source: Irrep
    target: Irrep
    matrix: QMatrix
    multiplicity: int

    def block(self, b: int) -> QMatrix:
        d = self.source.dim
        return self.matrix[:, b * d:(b + 1) * d]

    def scaled(self, c) -> Projection:
        return Projection(self.source, self.target, self.matrix.scale(c), self.multiplicity)


def _is_equivariant(g: LieAlgebraModel, src: Irrep, tgt: Irrep, p: QMatrix) -> bool:
    ident_g = QMatrix.identity(g.dim)
    ident_v = QMatrix.identity(src.dim)
    for name in generator_names(g.rs.rank):
        y = g.index(name)
        lhs = p @ (g.ad[y].kron(ident_v) + ident_g.kron(src.basis_action[y]))
        if lhs != tgt.basis_action[y] @ p:
            return False
    return True


def equivariant_projection(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                           cap: int | None = None) -> Projection:
    """A nonzero g-map ``g (x) V(lam) -> V(mu)``.

    Such maps correspond, through the invariant form on g, to g-maps
    ``V(lam) -> g (x) V(mu)``, which are fixed by the image of the highest
    weight vector: a vector of weight ``lam`` killed by every ``e_i``.  The
    first basis vector of that solution space is used; the assembled map is
    then checked against every generator.
    """
    src = build_irrep(rs, lam, cap)
    tgt = build_irrep(rs, mu, cap)
    return _solve_projection(src, tgt)


@lru_cache(maxsize=512)
def _solve_projection(src: Irrep, tgt: Irrep) -> Projection:
    rs = src.rs
    g = lie_model(rs)
    lam = src.highest
    du = tgt.dim
    unknowns = [(b, w) for b in range(g.dim) for w in range(du)
                if tuple(x + y for x, y in zip(g.weights[b], tgt.weights[w])) == lam]
    rows: dict[tuple, dict[int, Fraction]] = {}
    for i in range(1, rs.rank + 1):
        a = g.index(f"x{i}+")
        adc = g.ad[a].columns_sparse()
        uc = tgt.e[i - 1].columns_sparse()
        for k, (b, w) in enumerate(unknowns):
            for b2, x in adc[b].items():
                row = rows.setdefault((i, b2, w), {})
                row[k] = row.get(k, 0) + x
            for w2, x in uc[w].items():
                row = rows.setdefault((i, b, w2), {})
                row[k] = row.get(k, 0) + x
    null = sparse_nullspace(list(rows.values()), len(unknowns)) if unknowns else []
    if not null:
        raise HomVanishesError(f"Hom vanishes: no nonzero g-map g (x) V{lam} -> V{tgt.highest}")

    f_ad = [g.ad[g.index(f"x{i}-")].columns_sparse() for i in range(1, rs.rank + 1)]
    f_u = [tgt.f[i].columns_sparse() for i in range(rs.rank)]

    def lower(i: int, vec: dict[tuple[int, int], Fraction]) -> dict[tuple[int, int], Fraction]:
        out: dict[tuple[int, int], Fraction] = {}
        for (b, w), x in vec.items():
            for b2, y in f_ad[i][b].items():
                out[(b2, w)] = out.get((b2, w), 0) + x * y
            for w2, y in f_u[i][w].items():
                out[(b, w2)] = out.get((b, w2), 0) + x * y
        return {k: v for k, v in out.items() if v}

    phi = [{unknowns[k]: x for k, x in null[0].items()}]
    for t in range(1, src.dim):
        i, parent = src.parents[t]
        phi.append(lower(i, phi[parent]))
    form = g.form.columns_sparse()
    dv = src.dim
    entries: dict[tuple[int, int], Fraction] = {}
    for t, vec in enumerate(phi):
        for (b2, w), x in vec.items():
            for b, k in form[b2].items():
                key = (w, b * dv + t)
                entries[key] = entries.get(key, 0) + k * x
    p = QMatrix.from_entries(du, g.dim * dv, entries)
    if p.is_zero() or not _is_equivariant(g, src, tgt, p):
        raise AssertionError("assembled map failed the equivariance check")
    return Projection(src, tgt, p, len(null))


# --- extension modules --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtensionModule(LoopModule):
    source: Irrep  # V(lam), the quotient
    target: Irrep  # V(mu), the submodule
    point: Fraction
    projection: QMatrix

    @property
    def lam(self) -> Weight:
        return self.source.highest

    @property
    def mu(self) -> Weight:
        return self.target.highest

    def inclusion(self) -> QMatrix:
        dl, du = self.source.dim, self.target.dim
        return QMatrix.block([[None], [QMatrix.identity(du)]], [dl, du], [du])

    def quotient_map(self) -> QMatrix:
        dl, du = self.source.dim, self.target.dim
        return QMatrix.block([[QMatrix.identity(dl), None]], [dl], [dl, du])


def extension_module(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], a,
                     p: Projection | QMatrix | None = None, cap: int | None = None
                     ) -> ExtensionModule:
    """``V(lam) + V(mu)`` with ``x t^r (v, w) = (a^r x v, a^r x w + r a^(r-1) p(x (x) v))``.

    ``p = None`` solves for a projection; a zero matrix gives the split module.
    """
    a = _point(a)
    src = build_irrep(rs, lam, cap)
    tgt = build_irrep(rs, mu, cap)
    g = lie_model(rs)
    if p is None:
        p = equivariant_projection(rs, lam, mu, cap)
    mat = p.matrix if isinstance(p, Projection) else p
    if mat.shape != (tgt.dim, g.dim * src.dim):
        raise ValueError(f"projection has shape {mat.shape}, expected {(tgt.dim, g.dim * src.dim)}")
    if not mat.is_zero() and not _is_equivariant(g, src, tgt, mat):
        raise NonEquivariantError("p is not a g-module map g (x) V(lam) -> V(mu)")
    dl, du = src.dim, tgt.dim
    sizes = [dl, du]
    value = tuple(QMatrix.block([[src.basis_action[b], None], [None, tgt.basis_action[b]]],
                                sizes, sizes) for b in range(g.dim))
    slope = tuple(QMatrix.block([[None, None], [mat[:, b * dl:(b + 1) * dl], None]], sizes, sizes)
                  for b in range(g.dim))
    return ExtensionModule(rs, dl + du, (Jet(a, value, slope),), src, tgt, a, mat)


@dataclass(frozen=True)
class SequenceReport:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def exact_sequence(m: ExtensionModule, powers: Iterable[int] = POWERS) -> SequenceReport:
    """Check ``0 -> V(mu, a) -> m -> V(lam, a) -> 0`` with the explicit maps."""
    iota, pi = m.inclusion(), m.quotient_map()
    sub = evaluation_module(m.target, m.point)
    quo = evaluation_module(m.source, m.point)
    if not (pi @ iota).is_zero():
        return SequenceReport(False, "composite is nonzero")
    if iota.rank() != m.target.dim or pi.rank() != m.source.dim:
        return SequenceReport(False, "inclusion not injective or quotient not surjective")
    if m.target.dim + m.source.dim != m.dim:
        return SequenceReport(False, "dimensions do not add up")
    for name in generator_names(m.rs.rank):
        for r in powers:
            x = m.action(name, r)
            if x @ iota != iota @ sub.action(name, r):
                return SequenceReport(False, f"inclusion fails to intertwine {name} t^{r}")
            if pi @ x != quo.action(name, r) @ pi:
                return SequenceReport(False, f"quotient map fails to intertwine {name} t^{r}")
    return SequenceReport(True)


def jet_annihilator_check(m: LoopModule, f: Mapping[int, Fraction] | object) -> bool:
    """``x (x) f`` acts through the value and first derivative of ``f`` at the points."""
    f = laurent(f) if not isinstance(f, Mapping) else {int(k): Fraction(v) for k, v in f.items()}
    for name in generator_names(m.rs.rank):
        if m.laurent_action(name, f) != m.jet_action(name, f):
            return False
    return True


def acts_as_zero(m: LoopModule, f: Mapping[int, Fraction] | object) -> bool:
    f = laurent(f) if not isinstance(f, Mapping) else {int(k): Fraction(v) for k, v in f.items()}
    return all(m.laurent_action(name, f).is_zero() for name in generator_names(m.rs.rank))


def is_nonsplit(m: ExtensionModule, powers: Iterable[int] = (-1, 0, 1)) -> bool:
    """True iff the ``V(mu)`` summand has no invariant complement.

    A complement is the graph of some ``S: V(lam) -> V(mu)``; invariance under
    ``X = [[X11, 0], [X21, X22]]`` reads ``X22 S - S X11 + X21 = 0``.  The
    ``h_i (x) 1`` equations force ``S`` to preserve weights, so only those
    entries are kept as unknowns.
    """
    dl, du = m.source.dim, m.target.dim
    unknowns = [(w, v) for w in range(du) for v in range(dl)
                if m.target.weights[w] == m.source.weights[v]]
    col = {u: k for k, u in enumerate(unknowns)}
    by_w: dict[int, list[int]] = {}
    by_v: dict[int, list[int]] = {}
    for w, v in unknowns:
        by_w.setdefault(w, []).append(v)
        by_v.setdefault(v, []).append(w)
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for name in generator_names(m.rs.rank):
        for r in powers:
            x = m.action(name, r)
            if not x[:dl, dl:].is_zero():
                raise ValueError("the V(mu) summand is not a submodule")
            x11 = x[:dl, :dl].columns_sparse()
            x22 = x[dl:, dl:].columns_sparse()
            x21 = x[dl:, :dl]
            eq: dict[tuple[int, int], dict[int, Fraction]] = {}
            for (w2, v), k in col.items():
                for w, val in x22[w2].items():
                    row = eq.setdefault((w, v), {})
                    row[k] = row.get(k, 0) + val
            x11_rows: dict[int, dict[int, Fraction]] = {}
            for v, column in enumerate(x11):
                for v2, val in column.items():
                    x11_rows.setdefault(v2, {})[v] = val
            for (w, v2), k in col.items():
                for v, val in x11_rows.get(v2, {}).items():
                    row = eq.setdefault((w, v), {})
                    row[k] = row.get(k, 0) - val
            const = {(w, v): val for w, v, val in x21.nonzero()}
            for key in set(eq) | set(const):
                rows.append(eq.get(key, {}))
                rhs.append(-const.get(key, Fraction(0)))
    return not sparse_consistent(rows, rhs, len(unknowns))


# --- constructions --------------------------------------------------------------

def _merge(m1: LoopModule, m2: LoopModule, combine) -> tuple[Jet, ...]:
    if m1.rs != m2.rs:
        raise ValueError("modules over different algebras")
    d = m1.model.dim
    z1 = QMatrix.zeros(m1.dim, m1.dim)
    z2 = QMatrix.zeros(m2.dim, m2.dim)
    j1 = {j.point: j for j in m1.jets}
    j2 = {j.point: j for j in m2.jets}
    jets = []
    for c in sorted(set(j1) | set(j2)):
        a, b = j1.get(c), j2.get(c)
        value = tuple(combine(a.value[k] if a else z1, b.value[k] if b else z2) for k in range(d))
        if (a and a.slope) or (b and b.slope):
            slope = tuple(combine(a.slope[k] if a and a.slope else z1,
                                  b.slope[k] if b and b.slope else z2) for k in range(d))
        else:
            slope = None
        jets.append(Jet(c, value, slope))
    return tuple(jets)


def tensor_product(m1: LoopModule, m2: LoopModule) -> LoopModule:
    i1, i2 = QMatrix.identity(m1.dim), QMatrix.identity(m2.dim)
    jets = _merge(m1, m2, lambda x, y: x.kron(i2) + i1.kron(y))
    return LoopModule(m1.rs, m1.dim * m2.dim, jets)


def direct_sum(m1: LoopModule, m2: LoopModule) -> LoopModule:
    sizes = [m1.dim, m2.dim]
    jets = _merge(m1, m2, lambda x, y: QMatrix.block([[x, None], [None, y]], sizes, sizes))
    return LoopModule(m1.rs, m1.dim + m2.dim, jets)


# --- irreducibility -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IrreducibilityReport:
    irreducible: bool
    certain: bool
    witness: QMatrix | None = None  # columns span a proper nonzero submodule
    method: str = ""

    def verdict(self) -> str:
        if not self.irreducible:
            return "definitely reducible"
        return "irreducible" if self.certain else "probably irreducible"


def _spanning_operators(m: LoopModule) -> list[QMatrix]:
    # jets of order <= 1 at k points: powers 0 .. 2k-1 span every x (x) t^r
    k = max(len(m.jets), 1)
    return [m.action(name, r) for name in generator_names(m.rs.rank) for r in range(2 * k)]


def _spin(ops: list[list[dict[int, Fraction]]], v: Sequence[Fraction], n: int) -> Span:
    span = Span(n)
    queue = [list(v)]
    span.add(v)
    while queue:
        u = queue.pop()
        for cols in ops:
            out = [Fraction(0)] * n
            for j, x in enumerate(u):
                if x:
                    for i, y in cols[j].items():
                        out[i] += x * y
            if span.add(out):
                queue.append(out)
    return span


def _raising_kernel(m: LoopModule) -> QMatrix:
    k = max(len(m.jets), 1)
    mats = [m.action(f"x{i}+", r) for i in range(1, m.rs.rank + 1) for r in range(2 * k)]
    stacked = QMatrix.block([[x] for x in mats], [m.dim] * len(mats), [m.dim])
    return stacked.nullspace()


def _burnside_dimension(ops: list[QMatrix], n: int) -> int:
    span = Span(n * n)
    basis = [QMatrix.identity(n)]
    span.add([x for row in basis[0].to_fractions() for x in row])
    frontier = list(basis)
    while frontier:
        new = []
        for mat in frontier:
            for g in ops:
                prod = g @ mat
                if span.add([x for row in prod.to_fractions() for x in row]):
                    new.append(prod)
        frontier = new
    return len(span)


def irreducibility_report(m: LoopModule, seed: int = 0, trials: int = 8,
                          exhaustive_dim: int = 12) -> IrreducibilityReport:
    """Seeded cyclic-vector test with an exact fallback in small dimension.

    Every nonzero submodule contains a vector killed by all ``e_i (x) t^r``,
    so candidate generators are drawn from that joint kernel.  A vector
    there that fails to generate the module is a witness of reducibility.
    For ``dim <= exhaustive_dim`` the algebra spanned by the action is
    compared with the full matrix algebra (Burnside), which is decisive.
    """
    n = m.dim
    if n <= 1:
        return IrreducibilityReport(True, True, None, "dimension")
    mats = _spanning_operators(m)
    ops = [x.columns_sparse() for x in mats]
    kernel = _raising_kernel(m)
    kvecs = [[kernel[i, j] for i in range(n)] for j in range(kernel.shape[1])]
    rng = random.Random(seed)
    candidates = list(kvecs)
    if len(kvecs) > 1:
        for _ in range(trials):
            coeffs = [rng.randint(-9, 9) for _ in kvecs]
            candidates.append([sum((c * v[i] for c, v in zip(coeffs, kvecs)), Fraction(0))
                               for i in range(n)])
    for v in candidates:
        if not any(v):
            continue
        span = _spin(ops, v, n)
        if len(span) < n:
            return IrreducibilityReport(False, True, span.basis_matrix(), "cyclic vector")
    if n <= exhaustive_dim:
        full = _burnside_dimension(mats, n) == n * n
        return IrreducibilityReport(full, True, None, "burnside")
    if len(kvecs) == 1:
        return IrreducibilityReport(True, True, None, "unique singular line")
    return IrreducibilityReport(True, False, None, "cyclic vector")


def is_irreducible(m: LoopModule, seed: int = 0) -> bool:
    return irreducibility_report(m, seed).irreducible


# --- spectral character -------------------------------------------------------

def _joint_eigen(ops: list[sympy.Matrix], basis: sympy.Matrix) -> list[tuple[tuple, int]]:
    m = basis.shape[1]
    if not ops:
        return [((), m)]
    gram = (basis.T * basis).inv()
    restricted = gram * basis.T * ops[0] * basis
    lam = sympy.Symbol("lam")
    roots = sympy.roots(restricted.charpoly(lam).as_expr(), lam)
    if sum(roots.values()) != m or not all(r.is_Rational for r in roots):
        raise ValueError("spectrum is not rational; points must be rational")
    out = []
    for r, mult in sorted(roots.items(), key=lambda kv: kv[0]):
        shifted = (restricted - r * sympy.eye(m)) ** mult
        sub = basis * sympy.Matrix.hstack(*shifted.nullspace())
        for tail, d in _joint_eigen(ops[1:], sub):
            out.append(((r,) + tail, d))
    return out


def spectral_character_of(m: LoopModule) -> SpectralCharacter:
    """Spectral character read from the joint spectrum of ``h_i (x) t^k``.

    On a constituent ``tensor_c V(lam_c)`` at distinct points ``c``, the
    joint eigenvalues are ``sum_c c^k nu_c(h_i)`` with ``nu_c`` a weight of
    ``V(lam_c)``, hence ``nu_c = lam_c`` mod Q.  The ``nu_c`` are recovered
    by solving over the known points for ``k = 1..K``.
    """
    rs = m.rs
    pts = m.points
    if not pts:
        return SpectralCharacter.zero(rs.lie_type)
    n = rs.rank
    hs = [m.action(f"h{i}", 0) for i in range(1, n + 1)]
    blocks: dict[Weight, list[int]] = {}
    for t in range(m.dim):
        blocks.setdefault(tuple(int(h[t, t]) for h in hs), []).append(t)
    for h in hs:
        if any(i != j for i, j, _ in h.nonzero()):
            raise ValueError("h_i must act diagonally in the module basis")
    ops = [m.action(f"h{i}", k) for i in range(1, n + 1) for k in range(1, len(pts) + 1)]
    vander = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) ** k for c in pts]
                           for k in range(1, len(pts) + 1)])
    vinv = vander.inv()
    seen: dict[SpectralCharacter, tuple] = {}
    for wt, idx in sorted(blocks.items()):
        local = [sympy.Matrix([[op[i, j] for j in idx] for i in idx]) for op in ops]
        for values, _ in _joint_eigen(local, sympy.eye(len(idx))):
            nus = [[0] * n for _ in pts]
            for i in range(n):
                rhs = sympy.Matrix(values[i * len(pts):(i + 1) * len(pts)])
                sol = vinv * rhs
                for c in range(len(pts)):
                    if not sol[c].is_Integer:
                        raise ValueError(f"non-integral weight {sol[c]} at point {pts[c]}")
                    nus[c][i] = int(sol[c])
            chi = SpectralCharacter.from_values(
                rs.lie_type, ((SpectralPoint(c), project(rs, nu)) for c, nu in zip(pts, nus)))
            seen.setdefault(chi, (wt, values))
            if len(seen) > 1:
                (c1, w1), (c2, w2) = list(seen.items())[:2]
                raise MixedCharacterError(c1, c2, (w1, w2))
    return next(iter(seen))
