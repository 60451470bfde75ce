"""Exact rational matrices.

:class:`QMatrix` stores an integer numerator array and one positive
denominator.  Products use float64 BLAS only when a bound on the partial
sums proves the result exact, then int64, then Python integers.  Row
reduction, nullspaces and solving go through sympy's ``DomainMatrix``
over ``QQ``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

_FLOAT_EXACT = 1 << 52
_INT_SAFE = 1 << 62


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _INT_SAFE:
        return a.astype(np.int64)
    return a


def _widen(a: np.ndarray, bound: int) -> np.ndarray:
    return a.astype(object) if bound >= _INT_SAFE and a.dtype != object else a


def _gcd_all(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return reduce(math.gcd, (int(x) for x in a.flat), 0)
    return int(np.gcd.reduce(a.ravel()))


def _int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    bound = _maxabs(a) * _maxabs(b) * max(a.shape[-1], 1)
    if a.dtype != object and b.dtype != object:
        if bound < _FLOAT_EXACT:
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        if bound < _INT_SAFE:
            return a @ b
    return _shrink(a.astype(object) @ b.astype(object))


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


class QMatrix:
    """Immutable exact rational matrix ``num / den``."""

    __slots__ = ("num", "den")

    def __init__(self, num: np.ndarray, den: int = 1) -> None:
        num = np.asarray(num)
        if num.dtype != object:
            num = num.astype(np.int64)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(_gcd_all(num), den)
        if g > 1:
            num = num // g
            den //= g
        num = _shrink(num)
        num.setflags(write=False)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    # construction
    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> QMatrix:
        fr = [[to_fraction(Fraction(x) if isinstance(x, str) else x) for x in row] for row in rows]
        ncols = len(fr[0]) if fr else 0
        return cls._from_fraction_grid(fr, len(fr), ncols)

    @classmethod
    def from_entries(cls, rows: int, cols: int,
                     entries: Mapping[tuple[int, int], object]) -> QMatrix:
        den = 1
        fr = {k: to_fraction(v) for k, v in entries.items() if v}
        for v in fr.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        big = any(abs(v.numerator) * (den // v.denominator) >= _INT_SAFE for v in fr.values())
        num = np.zeros((rows, cols), dtype=object if big else np.int64)
        for (i, j), v in fr.items():
            num[i, j] = v.numerator * (den // v.denominator)
        return cls(num, den)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]]) -> QMatrix:
        return cls.from_entries(rows, len(columns),
                                {(i, j): v for j, col in enumerate(columns) for i, v in col.items()})

    @classmethod
    def _from_fraction_grid(cls, fr, rows, cols) -> QMatrix:
        return cls.from_entries(rows, cols, {(i, j): fr[i][j] for i in range(rows)
                                             for j in range(cols) if fr[i][j]})

    @classmethod
    def from_domain(cls, m: DomainMatrix) -> QMatrix:
        rows, cols = m.shape
        entries = {(i, j): to_fraction(v) for i, row in m.to_sdm().items() for j, v in row.items()}
        return cls.from_entries(rows, cols, entries)

    @classmethod
    def block(cls, grid: Sequence[Sequence[QMatrix | None]], row_sizes: Sequence[int],
              col_sizes: Sequence[int]) -> QMatrix:
        """Block matrix; ``None`` entries are zero blocks."""
        den = 1
        for row in grid:
            for b in row:
                if b is not None:
                    den = den * b.den // math.gcd(den, b.den)
        parts = []
        for row, r in zip(grid, row_sizes):
            line = []
            for b, c in zip(row, col_sizes):
                if b is None:
                    line.append(np.zeros((r, c), dtype=np.int64))
                else:
                    line.append(_widen(b.num, _maxabs(b.num) * (den // b.den)) * (den // b.den))
            parts.append(line)
        if any(p.dtype == object for line in parts for p in line):
            parts = [[p.astype(object) for p in line] for line in parts]
        return cls(np.block(parts), den)

    # inspection
    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    def __getitem__(self, key) -> Fraction | QMatrix:
        i, j = key
        if isinstance(i, slice) or isinstance(j, slice):
            return QMatrix(self.num[i, j], self.den)
        return Fraction(int(self.num[i, j]), self.den)

    def take(self, rows: Sequence[int], cols: Sequence[int]) -> QMatrix:
        return QMatrix(self.num[np.ix_(list(rows), list(cols))], self.den)

    def is_zero(self) -> bool:
        return not self.num.any()

    def nonzero(self) -> Iterable[tuple[int, int, Fraction]]:
        for i, j in zip(*np.nonzero(self.num)):
            yield int(i), int(j), Fraction(int(self.num[i, j]), self.den)

    def columns_sparse(self) -> list[dict[int, Fraction]]:
        cols: list[dict[int, Fraction]] = [{} for _ in range(self.shape[1])]
        for i, j, v in self.nonzero():
            cols[j][i] = v
        return cols

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(int(x), self.den) for x in row] for row in self.num]

    def to_domain(self) -> DomainMatrix:
        rows, cols = self.shape
        sdm: dict[int, dict[int, object]] = {}
        for i, j, v in self.nonzero():
            sdm.setdefault(i, {})[j] = QQ(v.numerator, v.denominator)
        return DomainMatrix(sdm, (rows, cols), QQ)

    def to_json(self) -> list[list[list[int]]]:
        return [[[f.numerator, f.denominator] for f in row] for row in self.to_fractions()]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Sequence[int]]]) -> QMatrix:
        return cls.from_rows([[Fraction(int(n), int(d)) for n, d in row] for row in data])

    def __repr__(self) -> str:
        return f"QMatrix(shape={self.shape}, den={self.den})"

    # arithmetic
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.den == other.den
                and bool(np.array_equal(self.num, other.num)))

    __hash__ = None  # type: ignore[assignment]

    def _aligned(self, other: QMatrix) -> tuple[np.ndarray, np.ndarray, int]:
        den = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        bound = _maxabs(self.num) * fa + _maxabs(other.num) * fb
        return _widen(self.num, bound) * fa, _widen(other.num, bound) * fb, den

    def __add__(self, other: QMatrix) -> QMatrix:
        a, b, den = self._aligned(other)
        return QMatrix(a + b, den)

    def __sub__(self, other: QMatrix) -> QMatrix:
        a, b, den = self._aligned(other)
        return QMatrix(a - b, den)

    def __neg__(self) -> QMatrix:
        return QMatrix(-self.num, self.den)

    def scale(self, c) -> QMatrix:
        c = to_fraction(c) if not isinstance(c, Fraction) else c
        if c == 0:
            return QMatrix.zeros(*self.shape)
        bound = _maxabs(self.num) * abs(c.numerator)
        return QMatrix(_widen(self.num, bound) * c.numerator, self.den * c.denominator)

    def __mul__(self, c) -> QMatrix:
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: QMatrix) -> QMatrix:
        return QMatrix(_int_matmul(self.num, other.num), self.den * other.den)

    @property
    def T(self) -> QMatrix:
        return QMatrix(self.num.T.copy(), self.den)

    def kron(self, other: QMatrix) -> QMatrix:
        bound = _maxabs(self.num) * _maxabs(other.num)
        a = _widen(self.num, bound)
        b = _widen(other.num, bound)
        if a.dtype == object or b.dtype == object:
            a, b = a.astype(object), b.astype(object)
        return QMatrix(np.kron(a, b), self.den * other.den)

    def trace(self) -> Fraction:
        return Fraction(int(sum(int(x) for x in np.diagonal(self.num))), self.den)

    def rank(self) -> int:
        return self.to_domain().rank()

    def nullspace(self) -> QMatrix:
        """Columns spanning the right kernel (reduced echelon basis)."""
        rows, cols = self.shape
        if rows == 0:
            return QMatrix.identity(cols)
        ns = self.to_domain().nullspace()
        if ns.shape[0] == 0:
            return QMatrix.zeros(cols, 0)
        return QMatrix.from_domain(ns).T


def commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    return a @ b - b @ a


def linear_combination(terms: Iterable[tuple[object, QMatrix]], shape: tuple[int, int]) -> QMatrix:
    """``sum c_k M_k`` with exact rational coefficients, on a common denominator."""
    terms = [(to_fraction(c), m) for c, m in terms if c]
    if not terms:
        return QMatrix.zeros(*shape)
    den = 1
    for c, m in terms:
        d = m.den * c.denominator
        den = den * d // math.gcd(den, d)
    factors = [c.numerator * (den // (m.den * c.denominator)) for c, m in terms]
    bound = sum(_maxabs(m.num) * abs(f) for (_, m), f in zip(terms, factors))
    acc = None
    for (_, m), f in zip(terms, factors):
        part = _widen(m.num, bound) * f
        acc = part if acc is None else (acc.astype(object) if part.dtype == object else acc) + part
    return QMatrix(acc, den)


def sparse_nullspace(rows: Sequence[Mapping[int, Fraction]], nvars: int) -> list[dict[int, Fraction]]:
    """Kernel basis of a sparse homogeneous system, as sparse vectors."""
    if nvars == 0:
        return []
    sdm = {}
    for k, row in enumerate(rows):
        entries = {j: QQ(v.numerator, v.denominator) for j, v in row.items() if v}
        if entries:
            sdm[len(sdm)] = entries
    if not sdm:
        return [{j: Fraction(1)} for j in range(nvars)]
    m = DomainMatrix(sdm, (len(sdm), nvars), QQ)
    ns = m.nullspace()
    out = []
    for _, row in sorted(ns.to_sdm().items()):
        out.append({j: to_fraction(v) for j, v in row.items()})
    return out


def sparse_consistent(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction],
                      nvars: int) -> bool:
    """Whether ``A x = b`` has a solution (``A`` given by sparse rows)."""
    sdm = {}
    for k, (row, b) in enumerate(zip(rows, rhs)):
        entries = {j: QQ(v.numerator, v.denominator) for j, v in row.items() if v}
        if b:
            entries[nvars] = QQ(b.numerator, b.denominator)
        if entries:
            if nvars not in entries or len(entries) > 1:
                sdm[len(sdm)] = entries
            else:
                return False  # 0 = b with b != 0
    if not sdm:
        return True
    m = DomainMatrix(sdm, (len(sdm), nvars + 1), QQ)
    _, pivots = m.rref()
    return nvars not in pivots


def dense_rref(columns: Sequence[Mapping[int, Fraction]], nrows: int
               ) -> tuple[list[int], dict[int, dict[int, Fraction]]]:
    """Greedy independent subset of sparse column vectors.

    Returns the indices of the pivot columns and, for every other column,
    its coefficients on the pivot columns.
    """
    ncols = len(columns)
    sdm: dict[int, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                sdm.setdefault(i, {})[j] = QQ(v.numerator, v.denominator)
    if not sdm:
        return [], {j: {} for j in range(ncols)}
    m = DomainMatrix(sdm, (nrows, ncols), QQ)
    r, pivots = m.rref()
    pivots = list(pivots)
    r_sdm = r.to_sdm()
    deps = {}
    for j in range(ncols):
        if j in pivots:
            continue
        deps[j] = {pivots[k]: to_fraction(r_sdm[k][j]) for k in range(len(pivots))
                   if k in r_sdm and j in r_sdm[k]}
    return pivots, deps


class Span:
    """Incrementally grown subspace of ``Q^n`` in echelon form."""

    def __init__(self, n: int) -> None:
        self.n = n
        self._rows: dict[int, list[Fraction]] = {}  # pivot -> row, pivot entry 1
        self.vectors: list[list[Fraction]] = []  # accepted vectors, original form

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        v = list(v)
        for p, row in self._rows.items():
            c = v[p]
            if c:
                for k in range(self.n):
                    if row[k]:
                        v[k] -= c * row[k]
        return v

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert ``v``; returns False if it was already in the span."""
        r = self.reduce(v)
        p = next((k for k, x in enumerate(r) if x), None)
        if p is None:
            return False
        inv = 1 / r[p]
        r = [x * inv for x in r]
        for q, row in self._rows.items():
            c = row[p]
            if c:
                self._rows[q] = [a - c * b for a, b in zip(row, r)]
        self._rows[p] = r
        self.vectors.append(list(v))
        return True

    def basis_matrix(self) -> QMatrix:
        """Accepted vectors as columns."""
        return QMatrix.from_columns(self.n, [{i: x for i, x in enumerate(v) if x}
                                             for v in self.vectors])


def apply(m: QMatrix, v: Sequence[Fraction]) -> list[Fraction]:
    """``m @ v`` for a Fraction vector."""
    out = [Fraction(0)] * m.shape[0]
    for i, j, x in m.nonzero():
        if v[j]:
            out[i] += x * v[j]
    return out
