"""Tuples of Drinfeld polynomials, their factorisation, and spectral characters.

A tuple ``pi = (pi_1, ..., pi_n)`` of polynomials with constant term 1 is
stored in factored form: a map from spectral points ``a`` to dominant
weights ``lam``, meaning ``pi = prod_a pi_{lam, a}`` with
``pi_{lam, a, i} = (1 - a u)^{lam(h_i)}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .gamma import GammaElement, class_of, gamma_group, project
from .rootsys import LieType, Weight, build, is_dominant


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralPoint:
    """A nonzero complex number known exactly: a rational or an opaque label."""

    value: Fraction | str

    def __post_init__(self) -> None:
        v = self.value
        if isinstance(v, str):
            if not v:
                raise ValueError("empty spectral label")
            return
        v = Fraction(v)
        if v == 0:
            raise ValueError("spectral points lie in C^x; 0 is not allowed")
        object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, x: SpectralPoint | Fraction | int | str) -> SpectralPoint:
        if isinstance(x, SpectralPoint):
            return x
        if isinstance(x, str):
            try:
                return cls(Fraction(x))
            except ValueError:
                return cls(x)
        return cls(Fraction(x))

    @property
    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)

    def sort_key(self) -> tuple:
        if self.is_rational:
            return (0, self.value, "")
        return (1, Fraction(0), self.value)

    def __lt__(self, other: SpectralPoint) -> bool:
        return self.sort_key() < other.sort_key()

    def to_json(self) -> dict:
        if self.is_rational:
            return {"rat": [self.value.numerator, self.value.denominator]}
        return {"sym": self.value}

    @classmethod
    def from_json(cls, data: Mapping) -> SpectralPoint:
        if "rat" in data:
            num, den = data["rat"]
            return cls(Fraction(int(num), int(den)))
        if "sym" in data:
            return cls(str(data["sym"]))
        raise ValueError(f"bad spectral point {data!r}")

    def __str__(self) -> str:
        return str(self.value)


def _lie_type(t: LieType | str) -> LieType:
    return LieType.parse(t) if isinstance(t, str) else t


@dataclass(frozen=True)
class PolyTuple:
    lie_type: LieType
    factors: tuple[tuple[SpectralPoint, Weight], ...]

    @classmethod
    def from_factors(cls, lie_type: LieType | str,
                     pairs: Iterable[tuple[object, Sequence[int]]]) -> PolyTuple:
        """Canonical tuple from ``(point, weight)`` pairs; repeated points merge."""
        lt = _lie_type(lie_type)
        acc: dict[SpectralPoint, list[int]] = {}
        for point, lam in pairs:
            lam = tuple(int(c) for c in lam)
            if len(lam) != lt.rank:
                raise ValueError(f"{lt} weights have {lt.rank} coordinates, got {lam}")
            if not is_dominant(lam):
                raise ValueError(f"factor weight {lam} is not dominant")
            slot = acc.setdefault(SpectralPoint.of(point), [0] * lt.rank)
            for k, c in enumerate(lam):
                slot[k] += c
        items = sorted((p, tuple(w)) for p, w in acc.items() if any(w))
        return cls(lt, tuple(items))

    @classmethod
    def empty(cls, lie_type: LieType | str) -> PolyTuple:
        return cls(_lie_type(lie_type), ())

    def as_dict(self) -> dict[SpectralPoint, Weight]:
        return dict(self.factors)

    @property
    def points(self) -> tuple[SpectralPoint, ...]:
        return tuple(p for p, _ in self.factors)

    def to_json(self) -> dict:
        return {"type": str(self.lie_type),
                "factors": [{"point": p.to_json(), "weight": list(w)} for p, w in self.factors]}

    @classmethod
    def from_json(cls, data: Mapping | str, lie_type: LieType | str | None = None) -> PolyTuple:
        if isinstance(data, str):
            data = json.loads(data)
        lie_type = data.get("type", lie_type)
        if lie_type is None:
            raise ValueError("polynomial tuple has no type")
        if "coeffs" in data:
            return from_coefficients(lie_type, data["coeffs"])
        return cls.from_factors(
            lie_type, ((SpectralPoint.from_json(f["point"]), f["weight"]) for f in data["factors"]))

    def to_coefficients(self) -> list[list[Fraction]]:
        """Expanded coefficient lists, constant term first (rational points only)."""
        u = sympy.Symbol("u")
        out = []
        for i in range(self.lie_type.rank):
            poly = sympy.Integer(1)
            for p, w in self.factors:
                if not p.is_rational:
                    raise FactorizationError(f"point {p} is symbolic; no coefficient form")
                a = sympy.Rational(p.value.numerator, p.value.denominator)
                poly *= (1 - a * u) ** w[i]
            coeffs = sympy.Poly(sympy.expand(poly), u).all_coeffs()[::-1]
            out.append([Fraction(int(c.p), int(c.q)) for c in coeffs])
        return out


def from_coefficients(lie_type: LieType | str,
                      polys: Sequence[Sequence[object]]) -> PolyTuple:
    """Factor a tuple given by coefficient lists ``[c_0, c_1, ...]`` with ``c_0 = 1``.

    Every root must be rational; otherwise supply the factored form.
    """
    lt = _lie_type(lie_type)
    if len(polys) != lt.rank:
        raise FactorizationError(f"{lt} needs {lt.rank} polynomials, got {len(polys)}")
    u = sympy.Symbol("u")
    pairs: list[tuple[SpectralPoint, list[int]]] = []
    for i, coeffs in enumerate(polys):
        cs = [sympy.Rational(str(Fraction(c))) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs or cs[0] != 1:
            raise FactorizationError(f"polynomial {i + 1} must have constant term 1")
        poly = sympy.Poly(sum(c * u**k for k, c in enumerate(cs)), u, domain="QQ")
        _, factors = sympy.factor_list(poly)
        for f, mult in factors:
            if f.degree() != 1:
                raise FactorizationError(
                    f"polynomial {i + 1} has a factor {f.as_expr()} without rational roots; "
                    "supply the tuple in factored form")
            c1, c0 = f.all_coeffs()
            a = Fraction(-int(sympy.numer(c1 / c0)), int(sympy.denom(c1 / c0)))
            w = [0] * lt.rank
            w[i] = int(mult)
            pairs.append((SpectralPoint(a), w))
    return PolyTuple.from_factors(lt, pairs)


def _same_type(a: PolyTuple, b: PolyTuple) -> None:
    if a.lie_type != b.lie_type:
        raise ValueError(f"types differ: {a.lie_type} vs {b.lie_type}")


def multiply(pi: PolyTuple, other: PolyTuple) -> PolyTuple:
    _same_type(pi, other)
    return PolyTuple.from_factors(pi.lie_type, pi.factors + other.factors)


def dual(pi: PolyTuple) -> PolyTuple:
    """Replace every factor weight by ``-w0`` of it; points are unchanged."""
    rs = build(pi.lie_type)
    return PolyTuple.from_factors(pi.lie_type, ((p, rs.minus_w0(w)) for p, w in pi.factors))


def lambda_pi(pi: PolyTuple) -> Weight:
    total = [0] * pi.lie_type.rank
    for _, w in pi.factors:
        for k, c in enumerate(w):
            total[k] += c
    return tuple(total)


@dataclass(frozen=True)
class SpectralCharacter:
    """Finitely supported map from spectral points to ``P/Q``."""

    lie_type: LieType
    support: tuple[tuple[SpectralPoint, GammaElement], ...]

    @classmethod
    def from_values(cls, lie_type: LieType | str,
                    pairs: Iterable[tuple[object, GammaElement]]) -> SpectralCharacter:
        lt = _lie_type(lie_type)
        acc: dict[SpectralPoint, GammaElement] = {}
        for p, g in pairs:
            p = SpectralPoint.of(p)
            acc[p] = acc[p] + g if p in acc else g
        return cls(lt, tuple(sorted(((p, g) for p, g in acc.items() if not g.is_identity()),
                                    key=lambda t: t[0].sort_key())))

    @classmethod
    def zero(cls, lie_type: LieType | str) -> SpectralCharacter:
        return cls(_lie_type(lie_type), ())

    def __call__(self, point: object) -> GammaElement:
        point = SpectralPoint.of(point)
        for p, g in self.support:
            if p == point:
                return g
        return gamma_group(build(self.lie_type)).identity()

    def __add__(self, other: SpectralCharacter) -> SpectralCharacter:
        if self.lie_type != other.lie_type:
            raise ValueError(f"types differ: {self.lie_type} vs {other.lie_type}")
        return SpectralCharacter.from_values(self.lie_type, self.support + other.support)

    def __neg__(self) -> SpectralCharacter:
        return SpectralCharacter(self.lie_type, tuple((p, -g) for p, g in self.support))

    def is_zero(self) -> bool:
        return not self.support

    def to_json(self) -> dict:
        return {"type": str(self.lie_type),
                "support": [{"point": p.to_json(), "class": list(g.residues)}
                            for p, g in self.support],
                "invariant_factors": list(gamma_group(build(self.lie_type)).invariant_factors)}


def spectral_character(pi: PolyTuple) -> SpectralCharacter:
    rs = build(pi.lie_type)
    return SpectralCharacter.from_values(pi.lie_type, ((p, project(rs, w)) for p, w in pi.factors))


def same_block(pi1: PolyTuple, pi2: PolyTuple) -> bool:
    """Whether ``V(pi1)`` and ``V(pi2)`` lie in the same block."""
    _same_type(pi1, pi2)
    return spectral_character(pi1) == spectral_character(pi2)


def block_label(pi: PolyTuple) -> list[tuple[SpectralPoint, Weight]]:
    """Canonical name of the block of ``V(pi)``: minimal shaded weight per support point."""
    rs = build(pi.lie_type)
    return [(p, class_of(rs, w)) for p, w in pi.factors if not project(rs, w).is_identity()]


def block_label_json(label: list[tuple[SpectralPoint, Weight]]) -> list[dict]:
    return [{"point": p.to_json(), "weight": list(w)} for p, w in label]
