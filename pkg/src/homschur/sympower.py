"""Graded symmetric powers S^m(A) as S_m-coinvariants.

A class is stored by canonical representatives: tuples of basis keys of the
ambient space, sorted by the global key order, with the Koszul sign absorbed
into the coefficient.  Two ambient spaces are supported: the matrix algebra
HG(c, c) (:class:`HGAlgebra`) and the module sum of H(c[i])
(:class:`ModuleSpace`).

The product

    a . b = k * sum over sigma of sgn(a, b, sigma) (a_1 b_{s(1)}) x ... x (a_m b_{s(m)}),
    s = sigma^{-1},

uses ``k = 1/m!`` under the ``averaged`` convention and ``k = 1`` under
``orbit_sum``.  The sign exponent is evaluated literally (see
:func:`printed_sign`); :func:`sign_comparison` reports how it differs from
the standard Koszul sign when degrees are odd.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ArityMismatch,
    ConventionMismatch,
    HomschurError,
    IndexMismatch,
    NotHomogeneous,
    ParityViolation,
    SymArityExceeded,
)
from .graded import GradedVector, as_rational
from .homatrix import CobordismElement, HomMatrix, IndexMap, Representation

AVERAGED = "averaged"
ORBIT_SUM = "orbit_sum"
CONVENTIONS = (AVERAGED, ORBIT_SUM)
DEFAULT_MAX_ARITY = 8


def normalize_convention(name: str) -> str:
    name = name.replace("-", "_")
    if name not in CONVENTIONS:
        raise ConventionMismatch(f"unknown convention {name!r}")
    return name


# -- permutations ---------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """Bijection of range(m), stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise HomschurError(f"{self.images!r} is not a permutation")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(m)))

    @classmethod
    def all(cls, m: int) -> Iterable["Permutation"]:
        for p in itertools.permutations(range(m)):
            yield cls(p)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, s in enumerate(self.images):
            inv[s] = i
        return Permutation(tuple(inv))

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j] for j in other.images))


def koszul_sign_oracle(degrees: Sequence[int], sigma: Permutation) -> int:
    """Product over inversions i < j, sigma(i) > sigma(j) of (-1)^(d_i d_j)."""
    sign = 1
    m = len(degrees)
    for i in range(m):
        for j in range(i + 1, m):
            if sigma(i) > sigma(j) and degrees[i] % 2 and degrees[j] % 2:
                sign = -sign
    return sign


def sorting_permutation(keys: Sequence) -> Permutation:
    """sigma with sigma(i) = position of factor i after a stable sort."""
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    images = [0] * len(keys)
    for pos, i in enumerate(order):
        images[i] = pos
    return Permutation(tuple(images))


def canonicalize(keys: Sequence, degrees: Sequence[int]):
    """Sort a tensor of basis factors into canonical form.

    Returns ``(sign, sorted_keys)``, or ``None`` when the class is zero
    because an odd factor repeats.  The sign is accumulated by adjacent
    transpositions (insertion sort), so it is computed independently of
    :func:`koszul_sign_oracle`.
    """
    ks = list(keys)
    ds = list(degrees)
    if len(ks) != len(ds):
        raise ArityMismatch("keys and degrees differ in length")
    sign = 1
    for i in range(1, len(ks)):
        j = i
        while j > 0 and ks[j - 1] > ks[j]:
            if ds[j - 1] % 2 and ds[j] % 2:
                sign = -sign
            ks[j - 1], ks[j] = ks[j], ks[j - 1]
            ds[j - 1], ds[j] = ds[j], ds[j - 1]
            j -= 1
    for i in range(1, len(ks)):
        if ks[i] == ks[i - 1] and ds[i] % 2:
            return None
    return sign, tuple(ks)


# -- ambient spaces ---------------------------------------------------------------


class HGAlgebra:
    """HG(c, c) with basis keys ``(row, col, path)``."""

    kind = "hg"

    def __init__(self, c: IndexMap):
        self.c = c
        self.category = c.category

    def degree(self, key) -> int:
        i, j, path = key
        C = self.category
        return C.hom(self.c[j], self.c[i]).degree(path) - C.dim(self.c[i])

    def multiply(self, a, b) -> dict:
        k, j, x = a
        j2, i, y = b
        if j != j2:
            return {}
        c = self.c
        out = self.category.compose_basis(c[j], c[k], x, c[i], y)
        return {(k, i, z): cf for z, cf in out.items()}

    def coerce(self, x) -> dict:
        if isinstance(x, HomMatrix):
            if x.source != self.c or x.target != self.c:
                raise IndexMismatch("matrix does not lie in HG(c, c)")
            return x.terms()
        return {tuple(k): as_rational(v) for k, v in dict(x).items()}

    def __eq__(self, other) -> bool:
        return isinstance(other, HGAlgebra) and self.c == other.c

    def __hash__(self) -> int:
        return hash(("hg", self.c))

    def __repr__(self) -> str:
        return f"HG{self.c.objects}"


class ModuleSpace:
    """Sum of the object modules H(c[i]) with basis keys ``(slot, key)``."""

    kind = "module"

    def __init__(self, rep: Representation, c: IndexMap):
        self.rep = rep
        self.c = c
        self.basis = rep.direct_sum(c)

    def degree(self, key) -> int:
        return self.basis.degree(key)

    def act(self, akey, vkey) -> dict:
        i, j, path = akey
        slot, k = vkey
        if slot != j:
            return {}
        c = self.c
        out = self.rep.module(c[j]).act_basis(c[i], path, k)
        return {(i, w): cf for w, cf in out.items()}

    def coerce(self, x) -> dict:
        if isinstance(x, GradedVector):
            if x.basis != self.basis:
                raise IndexMismatch("vector does not lie in this module sum")
            return x.terms
        return {tuple(k): as_rational(v) for k, v in dict(x).items()}

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleSpace) and self.rep is other.rep and self.c == other.c

    def __hash__(self) -> int:
        return hash(("module", id(self.rep), self.c))

    def __repr__(self) -> str:
        return f"V{self.c.objects}"


# -- symmetric tensors ---------------------------------------------------------------


class SymElement:
    """Exact combination of canonical symmetric tensor classes."""

    __slots__ = ("space", "m", "convention", "_terms")

    def __init__(self, space, m: int, convention: str = AVERAGED, terms=None):
        if m < 1:
            raise ArityMismatch("m must be at least 1")
        self.space = space
        self.m = m
        self.convention = normalize_convention(convention)
        acc: dict = {}
        for keys, c in (terms or {}).items():
            keys = tuple(keys)
            if len(keys) != m:
                raise ArityMismatch(f"tensor of length {len(keys)} in S^{m}")
            canon = canonicalize(keys, [space.degree(k) for k in keys])
            if canon is None:
                continue
            sign, ck = canon
            acc[ck] = acc.get(ck, 0) + sign * as_rational(c)
        self._terms = {k: c for k, c in acc.items() if c != 0}

    @classmethod
    def _trusted(cls, space, m, convention, terms):
        s = cls.__new__(cls)
        s.space, s.m, s.convention, s._terms = space, m, convention, terms
        return s

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "SymElement") -> None:
        if self.m != other.m:
            raise ArityMismatch(f"S^{self.m} vs S^{other.m}")
        if self.convention != other.convention:
            raise ConventionMismatch(f"{self.convention} vs {other.convention}")
        if self.space != other.space:
            raise IndexMismatch(f"{self.space!r} vs {other.space!r}")

    def __add__(self, other: "SymElement") -> "SymElement":
        self._check(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return SymElement._trusted(self.space, self.m, self.convention, {k: c for k, c in acc.items() if c})

    def __sub__(self, other: "SymElement") -> "SymElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "SymElement":
        s = as_rational(scalar)
        return SymElement._trusted(
            self.space, self.m, self.convention, {k: s * c for k, c in self._terms.items()} if s else {}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymElement):
            return NotImplemented
        return (
            self.space == other.space
            and self.m == other.m
            and self.convention == other.convention
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.space, self.m, self.convention, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{k!r}" for k, c in self.items()) or "0"
        return f"SymElement(S^{self.m} {self.space!r}, {self.convention}: {body})"


def sym_class(space, factors: Sequence, convention: str = AVERAGED) -> SymElement:
    """Class of the tensor of ``factors`` (matrices or vectors).

    Each factor must have a single degree parity.  Full homogeneity is too
    strong: the identity of HG(c, c) has effective degree -dim(c[i]) in slot
    i, which varies with i.
    """
    expanded = []
    for idx, f in enumerate(factors):
        terms = space.coerce(f)
        parities = {space.degree(k) % 2 for k in terms}
        if len(parities) > 1:
            raise NotHomogeneous(f"factor {idx} mixes even and odd degrees")
        expanded.append(sorted(terms.items()))
    acc: dict = {}
    for combo in itertools.product(*expanded):
        keys = tuple(k for k, _ in combo)
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        acc[keys] = acc.get(keys, 0) + coeff
    return SymElement(space, len(factors), convention, acc)


def printed_sign(deg_a: Sequence[int], deg_b: Sequence[int], sigma: Permutation) -> int:
    """(-1)^e with e = sum_{i>j} |a_i b_{s(j)}| + sum_{i<j, sigma(i)>sigma(j)} |b_i b_j|.

    ``s`` is the inverse of ``sigma`` and the degree of a product is read as
    the sum of the degrees of its factors.
    """
    m = len(deg_a)
    inv = sigma.inverse()
    e = 0
    for i in range(m):
        for j in range(i):
            e += deg_a[i] + deg_b[inv(j)]
    for i in range(m):
        for j in range(i + 1, m):
            if sigma(i) > sigma(j):
                e += deg_b[i] + deg_b[j]
    return -1 if e % 2 else 1


def standard_koszul_sign(deg_a: Sequence[int], deg_b: Sequence[int], sigma: Permutation) -> int:
    """Koszul sign of moving a_1..a_m b_1..b_m to a_1 b_{s(1)} ... a_m b_{s(m)}."""
    m = len(deg_a)
    images = [2 * i for i in range(m)] + [2 * sigma(l) + 1 for l in range(m)]
    return koszul_sign_oracle(list(deg_a) + list(deg_b), Permutation(tuple(images)))


def sign_comparison(deg_a: Sequence[int], deg_b: Sequence[int]) -> list[dict]:
    """Printed sign against the standard Koszul sign for every sigma."""
    rows = []
    for sigma in Permutation.all(len(deg_a)):
        p = printed_sign(deg_a, deg_b, sigma)
        s = standard_koszul_sign(deg_a, deg_b, sigma)
        rows.append({"sigma": list(sigma.images), "printed": p, "standard": s, "agree": p == s})
    return rows


def _check_arity(m: int, max_arity: int) -> None:
    if m > max_arity:
        raise SymArityExceeded(f"m = {m} exceeds the enumeration cap {max_arity}")


def _signed_sum(x: SymElement, y_terms, m, pair_product, deg_a, deg_b, out_space, out_degree) -> dict:
    perms = [(s, s.inverse()) for s in Permutation.all(m)]
    acc: dict = {}
    for akeys, ac in x._terms.items():
        da = [deg_a(k) for k in akeys]
        for bkeys, bc in y_terms.items():
            db = [deg_b(k) for k in bkeys]
            base = ac * bc
            for sigma, inv in perms:
                factors = []
                for i in range(m):
                    f = pair_product(akeys[i], bkeys[inv(i)])
                    if not f:
                        break
                    factors.append(sorted(f.items()))
                else:
                    sign = printed_sign(da, db, sigma)
                    for combo in itertools.product(*factors):
                        keys = tuple(k for k, _ in combo)
                        canon = canonicalize(keys, [out_degree(k) for k in keys])
                        if canon is None:
                            continue
                        s2, ck = canon
                        coeff = base * sign * s2
                        for _, c in combo:
                            coeff *= c
                        acc[ck] = acc.get(ck, 0) + coeff
    scale = Fraction(1, math.factorial(m)) if x.convention == AVERAGED else Fraction(1)
    return {k: c * scale for k, c in acc.items() if c != 0}


def sym_product(a: SymElement, b: SymElement, *, max_arity: int = DEFAULT_MAX_ARITY) -> SymElement:
    a._check(b)
    _check_arity(a.m, max_arity)
    A = a.space
    if not hasattr(A, "multiply"):
        raise HomschurError(f"{A!r} is not an algebra")
    terms = _signed_sum(a, b._terms, a.m, A.multiply, A.degree, A.degree, A, A.degree)
    return SymElement._trusted(A, a.m, a.convention, terms)


def sym_act(a: SymElement, v: SymElement, *, max_arity: int = DEFAULT_MAX_ARITY) -> SymElement:
    if a.m != v.m:
        raise ArityMismatch(f"S^{a.m} acting on S^{v.m}")
    if a.convention != v.convention:
        raise ConventionMismatch(f"{a.convention} vs {v.convention}")
    if not isinstance(a.space, HGAlgebra) or not isinstance(v.space, ModuleSpace):
        raise HomschurError("sym_act needs a Schur element and an element of S^m V")
    if a.space.c != v.space.c:
        raise IndexMismatch("Schur element and vector use different index maps")
    _check_arity(a.m, max_arity)
    V = v.space
    terms = _signed_sum(a, v._terms, a.m, V.act, a.space.degree, V.degree, V, V.degree)
    return SymElement._trusted(V, v.m, v.convention, terms)


def even_mode_violations(e: CobordismElement) -> list[str]:
    C = e.index.category
    out = [f"object {x!r} has odd dimension" for x in dict.fromkeys(e.index) if C.dim(x) % 2]
    for i, ti in enumerate(e.t):
        for k in ti.terms:
            if ti.basis.degree(k) % 2:
                out.append(f"t[{i}] has a term {k!r} of odd degree {ti.basis.degree(k)}")
    return out


def schur_include(e: CobordismElement, m: int | None = None, convention: str = AVERAGED, *, even_mode: bool = True) -> SymElement:
    """Class of E_{alpha(1),1}(t_1) x ... x E_{alpha(n),n}(t_n) in Schur_n(c, c)."""
    n = len(e.index)
    if m is None:
        m = n
    if m != n:
        raise ArityMismatch(f"inclusion needs m = n; got m = {m}, n = {n}")
    if even_mode:
        bad = even_mode_violations(e)
        if bad:
            raise ParityViolation("; ".join(bad))
    A = HGAlgebra(e.index)
    factors = [{(e.alpha[i], i, k): cf for k, cf in ti.terms.items()} for i, ti in enumerate(e.t)]
    return sym_class(A, factors, convention)
