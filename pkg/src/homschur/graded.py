"""Exact graded linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` throughout.  A :class:`Basis` names a
finite set of keys with integer degrees; a :class:`GradedVector` is a sparse
combination of those keys.  Finite chain complexes and their Betti numbers
over Q live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .errors import AmbientMismatch, ComplexInvalid, HomschurError

Rational = Fraction
Key = Hashable


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: they would silently break exactness.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact scalar: {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Basis:
    """Finite graded basis: key -> degree, shifted down by ``shift``.

    Two bases are equal when they carry the same name, keys, intrinsic
    degrees and shift.
    """

    __slots__ = ("name", "_degrees", "shift", "_hash", "_sorted")

    def __init__(self, name: Hashable, degrees: Mapping[Key, int], shift: int = 0):
        self.name = name
        self._degrees = dict(degrees)
        self.shift = shift
        self._hash = None
        self._sorted = None

    def degree(self, key: Key) -> int:
        return self._degrees[key] - self.shift

    def intrinsic_degree(self, key: Key) -> int:
        return self._degrees[key]

    def __contains__(self, key) -> bool:
        return key in self._degrees

    def __len__(self) -> int:
        return len(self._degrees)

    def keys(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(self._degrees)
        return list(self._sorted)

    def shifted(self, n: int) -> "Basis":
        return Basis(self.name, self._degrees, self.shift + n)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Basis):
            return NotImplemented
        return (
            self.name == other.name
            and self.shift == other.shift
            and self._degrees == other._degrees
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.name, self.shift, frozenset(self._degrees.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Basis({self.name!r}, {len(self)} keys, shift={self.shift})"


class GradedVector:
    """Sparse exact linear combination of basis keys.  Immutable."""

    __slots__ = ("basis", "_terms")

    def __init__(self, basis: Basis, terms: Mapping[Key, object] | None = None):
        self.basis = basis
        clean = {}
        for k, c in (terms or {}).items():
            c = as_rational(c)
            if c == 0:
                continue
            if k not in basis:
                raise HomschurError(f"key {k!r} not in {basis!r}")
            clean[k] = c
        self._terms = clean

    @classmethod
    def _trusted(cls, basis: Basis, terms: dict) -> "GradedVector":
        v = cls.__new__(cls)
        v.basis = basis
        v._terms = terms
        return v

    @classmethod
    def basis_vector(cls, basis: Basis, key: Key) -> "GradedVector":
        return cls(basis, {key: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        """Terms sorted by the global key order."""
        return sorted(self._terms.items())

    def coeff(self, key: Key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int | None:
        """The common degree of all terms, or None if inhomogeneous or zero."""
        degs = {self.basis.degree(k) for k in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_parts(self) -> dict[int, "GradedVector"]:
        parts: dict[int, dict] = {}
        for k, c in self._terms.items():
            parts.setdefault(self.basis.degree(k), {})[k] = c
        return {d: GradedVector._trusted(self.basis, t) for d, t in parts.items()}

    def _check(self, other: "GradedVector") -> None:
        if self.basis != other.basis:
            raise AmbientMismatch(f"{self.basis!r} vs {other.basis!r}")

    def __add__(self, other: "GradedVector") -> "GradedVector":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "GradedVector":
        return GradedVector._trusted(self.basis, {k: -c for k, c in self._terms.items()})

    def __rmul__(self, scalar) -> "GradedVector":
        s = as_rational(scalar)
        if s == 0:
            return GradedVector._trusted(self.basis, {})
        return GradedVector._trusted(self.basis, {k: s * c for k, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedVector):
            return NotImplemented
        return self.basis == other.basis and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*{k!r}" for k, c in self.items())


def linear_combine(pairs: Iterable[tuple[object, GradedVector]]) -> GradedVector:
    pairs = list(pairs)
    if not pairs:
        raise HomschurError("linear_combine needs at least one vector to fix the ambient basis")
    basis = pairs[0][1].basis
    acc: dict = {}
    for scalar, v in pairs:
        if v.basis != basis:
            raise AmbientMismatch(f"{basis!r} vs {v.basis!r}")
        s = as_rational(scalar)
        if s == 0:
            continue
        for k, c in v._terms.items():
            acc[k] = acc.get(k, 0) + s * c
    return GradedVector._trusted(basis, {k: c for k, c in acc.items() if c != 0})


def shift_degrees(v: GradedVector, n: int) -> GradedVector:
    """Regard ``v`` as an element of V[n]: degree d becomes d - n."""
    return GradedVector._trusted(v.basis.shifted(n), dict(v._terms))


# -- chain complexes -------------------------------------------------------


@dataclass(frozen=True)
class ChainComplex:
    """Finite complex over Q.

    ``basis`` carries every cell with its degree; ``differential`` maps a cell
    key to its boundary (absent means zero).
    """

    basis: Basis
    differential: Mapping[Key, GradedVector] = field(default_factory=dict)

    @classmethod
    def from_cells(cls, cells: Mapping[int, Iterable[Key]], boundary: Mapping[Key, Mapping[Key, object]], name="complex"):
        degrees = {k: d for d, keys in cells.items() for k in keys}
        basis = Basis(name, degrees)
        diff = {k: GradedVector(basis, terms) for k, terms in boundary.items()}
        return cls(basis, {k: v for k, v in diff.items() if v})

    def d(self, v: GradedVector) -> GradedVector:
        acc: dict = {}
        for k, c in v._terms.items():
            img = self.differential.get(k)
            if img is None:
                continue
            for k2, c2 in img._terms.items():
                acc[k2] = acc.get(k2, 0) + c * c2
        return GradedVector._trusted(self.basis, {k: c for k, c in acc.items() if c != 0})

    def cells(self, degree: int) -> list:
        return [k for k in self.basis.keys() if self.basis.degree(k) == degree]

    def degrees(self) -> list[int]:
        return sorted({self.basis.degree(k) for k in self.basis.keys()})


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = ""
    offender: object = None

    def __bool__(self) -> bool:
        return self.ok


OK = ValidationReport(True)


def validate_complex(C: ChainComplex) -> ValidationReport:
    for k in C.basis.keys():
        img = C.differential.get(k)
        if img is None:
            continue
        if img.basis != C.basis:
            return ValidationReport(False, f"boundary of {k!r} lives in a foreign basis", k)
        want = C.basis.degree(k) - 1
        for k2 in img._terms:
            if C.basis.degree(k2) != want:
                return ValidationReport(
                    False, f"d({k!r}) has term {k2!r} in degree {C.basis.degree(k2)}, expected {want}", k
                )
    for k in C.basis.keys():
        img = C.differential.get(k)
        if img is None:
            continue
        dd = C.d(img)
        if dd:
            return ValidationReport(False, f"d(d({k!r})) = {dd!r} != 0", k)
    return OK


def matrix_rank(rows: list[list[Fraction]]) -> int:
    """Rank by exact Gaussian elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank]
        inv = 1 / Fraction(p[col])
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            if f:
                f *= inv
                row = m[r]
                for c in range(col, ncols):
                    if p[c]:
                        row[c] -= f * p[c]
        rank += 1
        if rank == len(m):
            break
    return rank


def differential_matrix(C: ChainComplex, degree: int) -> list[list[Fraction]]:
    """Matrix of d: C_degree -> C_{degree-1}, one row per source cell."""
    src = C.cells(degree)
    dst = C.cells(degree - 1)
    return [[C.differential[k].coeff(t) if k in C.differential else Fraction(0) for t in dst] for k in src]


def homology_betti(C: ChainComplex) -> dict[int, int]:
    report = validate_complex(C)
    if not report:
        raise ComplexInvalid(report.message)
    ranks = {}
    degrees = C.degrees()
    for d in degrees:
        ranks[d] = matrix_rank(differential_matrix(C, d)) if C.cells(d - 1) else 0
    betti = {}
    for d in degrees:
        dim = len(C.cells(d))
        betti[d] = dim - ranks[d] - ranks.get(d + 1, 0)
    return betti


def euler_characteristic(values: Mapping[int, int]) -> int:
    return sum((-1) ** (d % 2) * n for d, n in values.items())
