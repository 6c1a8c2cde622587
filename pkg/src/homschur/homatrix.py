"""Homological matrices, their representation on object modules, and
cobordism elements (generalized permutation matrices).

Indices are 0-based.  Entry ``(i, j)`` of a matrix in HG(c, d) is a morphism
from ``c[j]`` to ``d[i]``; its effective degree is the intrinsic degree minus
``dim(d[i])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .category import IDENTITY, GradedCategory, compose_morphisms
from .errors import (
    CompositionMismatch,
    HomschurError,
    IndexMismatch,
    ModuleInvalid,
    ModuleUndefined,
    TruncationOverflow,
    UnknownObject,
)
from .graded import OK, Basis, GradedVector, ValidationReport, as_rational


class IndexMap:
    """The map c: [n] -> objects, tied to one category."""

    __slots__ = ("category", "objects")

    def __init__(self, category: GradedCategory, objects: Sequence[str]):
        objects = tuple(objects)
        if not objects:
            raise HomschurError("an index map needs n >= 1")
        for x in objects:
            if x not in category.objects:
                raise UnknownObject(x)
        self.category = category
        self.objects = objects

    def __len__(self) -> int:
        return len(self.objects)

    def __getitem__(self, i: int) -> str:
        return self.objects[i]

    def __iter__(self):
        return iter(self.objects)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexMap):
            return NotImplemented
        return self.category is other.category and self.objects == other.objects

    def __hash__(self) -> int:
        return hash((id(self.category), self.objects))

    def __repr__(self) -> str:
        return f"IndexMap{self.objects}"


class HomMatrix:
    """Element of HG(source, target) with sparse entries."""

    __slots__ = ("source", "target", "_entries")

    def __init__(self, source: IndexMap, target: IndexMap, entries: Mapping[tuple[int, int], GradedVector] | None = None):
        if source.category is not target.category:
            raise IndexMismatch("source and target index maps use different categories")
        C = source.category
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < len(target) and 0 <= j < len(source)):
                raise IndexMismatch(f"entry ({i}, {j}) outside a {len(target)}x{len(source)} matrix")
            if v.basis != C.hom(source[j], target[i]):
                raise CompositionMismatch(
                    f"entry ({i}, {j}) must lie in hom({source[j]!r}, {target[i]!r}), got {v.basis!r}"
                )
            if v:
                clean[(i, j)] = v
        self.source = source
        self.target = target
        self._entries = clean

    @classmethod
    def _trusted(cls, source, target, entries):
        A = cls.__new__(cls)
        A.source, A.target, A._entries = source, target, entries
        return A

    @property
    def category(self) -> GradedCategory:
        return self.source.category

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    def entry(self, i: int, j: int) -> GradedVector:
        v = self._entries.get((i, j))
        if v is None:
            return self.category.zero(self.source[j], self.target[i])
        return v

    def entries(self) -> dict[tuple[int, int], GradedVector]:
        return dict(sorted(self._entries.items()))

    def terms(self) -> dict[tuple, Fraction]:
        """Flattened view: (row, col, path key) -> coefficient."""
        return {(i, j, k): c for (i, j), v in sorted(self._entries.items()) for k, c in v.items()}

    def effective_degree(self, i: int, j: int, key) -> int:
        C = self.category
        return C.hom(self.source[j], self.target[i]).degree(key) - C.dim(self.target[i])

    def degree(self) -> int | None:
        """Common effective degree of all terms, or None."""
        degs = set()
        for (i, j), v in self._entries.items():
            for k in v._terms:
                degs.add(v.basis.degree(k) - self.category.dim(self.target[i]))
        return degs.pop() if len(degs) == 1 else None

    def is_zero(self) -> bool:
        return not self._entries

    def _same_space(self, other: "HomMatrix") -> None:
        if self.source != other.source or self.target != other.target:
            raise IndexMismatch("matrices live in different HG spaces")

    def __add__(self, other: "HomMatrix") -> "HomMatrix":
        self._same_space(other)
        out = dict(self._entries)
        for ij, v in other._entries.items():
            out[ij] = out[ij] + v if ij in out else v
        return HomMatrix._trusted(self.source, self.target, {k: v for k, v in out.items() if v})

    def __sub__(self, other: "HomMatrix") -> "HomMatrix":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "HomMatrix":
        s = as_rational(scalar)
        return HomMatrix._trusted(
            self.source, self.target, {ij: s * v for ij, v in self._entries.items()} if s else {}
        )

    def __matmul__(self, other: "HomMatrix") -> "HomMatrix":
        return hg_product(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomMatrix):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.terms().items())))

    def __repr__(self) -> str:
        body = ", ".join(f"({i},{j}): {v!r}" for (i, j), v in sorted(self._entries.items()))
        return f"HomMatrix({self.source.objects} -> {self.target.objects}; {body})"


def single_entry(source: IndexMap, target: IndexMap, i: int, j: int, morphism: GradedVector) -> HomMatrix:
    """E_{i,j}(morphism)."""
    return HomMatrix(source, target, {(i, j): morphism})


def hg_zero(source: IndexMap, target: IndexMap) -> HomMatrix:
    return HomMatrix._trusted(source, target, {})


def hg_identity(c: IndexMap) -> HomMatrix:
    C = c.category
    return HomMatrix._trusted(c, c, {(i, i): C.identity(x) for i, x in enumerate(c)})


def hg_product(A: HomMatrix, B: HomMatrix) -> HomMatrix:
    """(AB)_{ki} = sum_j A_{kj} o B_{ji}; B is applied first."""
    if A.source != B.target:
        raise IndexMismatch(f"cannot multiply: A has source {A.source!r}, B has target {B.target!r}")
    C = A.category
    b_rows: dict[int, list] = {}
    for (j, i), v in B._entries.items():
        b_rows.setdefault(j, []).append((i, v))
    out: dict[tuple[int, int], GradedVector] = {}
    for (k, j), a in A._entries.items():
        for i, b in b_rows.get(j, ()):
            term = compose_morphisms(C, a, b)
            if not term:
                continue
            prev = out.get((k, i))
            out[(k, i)] = term if prev is None else prev + term
    return HomMatrix._trusted(B.source, A.target, {ij: v for ij, v in out.items() if v})


# -- object modules ----------------------------------------------------------


@dataclass(frozen=True)
class ObjectModule:
    """Stand-in for H(x), degrees shifted down by dim(x).

    ``action`` maps ``(y, morphism key, basis key)`` to the image in the
    module of ``y``, as a ``{key: coeff}`` dict.  Absent entries act by zero
    except for the identity, which acts as the identity.
    """

    object: str
    basis: Basis
    action: Mapping

    def act_basis(self, y: str, mkey, vkey) -> dict:
        hit = self.action.get((y, mkey, vkey))
        if hit is not None:
            return hit
        if mkey == IDENTITY and y == self.object:
            return {vkey: Fraction(1)}
        return {}


class Representation:
    """A family of object modules, validated against composition."""

    def __init__(self, category: GradedCategory, modules: Mapping[str, ObjectModule], *, validate: bool = True):
        self.category = category
        self.modules = dict(modules)
        for x, mod in self.modules.items():
            if x not in category.objects:
                raise UnknownObject(x)
            if mod.object != x:
                raise ModuleInvalid(f"module registered under {x!r} declares object {mod.object!r}")
        if validate:
            report = validate_representation(self)
            if not report:
                raise ModuleInvalid(report.message)

    def module(self, x: str) -> ObjectModule:
        try:
            return self.modules[x]
        except KeyError:
            raise ModuleUndefined(f"no module declared for object {x!r}") from None

    def act(self, m: GradedVector, v: GradedVector) -> GradedVector:
        """Action of a morphism x -> y on an element of H(x)."""
        x, y = self.category.endpoints(m)
        src, dst = self.module(x), self.module(y)
        if v.basis != src.basis:
            raise CompositionMismatch(f"vector does not lie in H({x!r})")
        acc: dict = {}
        for mk, mc in m._terms.items():
            for vk, vc in v._terms.items():
                for wk, wc in src.act_basis(y, mk, vk).items():
                    acc[wk] = acc.get(wk, 0) + mc * vc * wc
        return GradedVector._trusted(dst.basis, {k: c for k, c in acc.items() if c != 0})

    def direct_sum(self, c: IndexMap) -> Basis:
        """Basis of the sum of H(c[i]); keys are ``(i, key)``."""
        if c.category is not self.category:
            raise IndexMismatch("index map belongs to another category")
        degrees = {}
        for i, x in enumerate(c):
            b = self.module(x).basis
            for k in b.keys():
                degrees[(i, k)] = b.degree(k)
        return Basis(("sum", c.objects), degrees)

    def component(self, c: IndexMap, v: GradedVector, i: int) -> GradedVector:
        b = self.module(c[i]).basis
        return GradedVector._trusted(b, {k: cf for (j, k), cf in v._terms.items() if j == i})


def make_module(category: GradedCategory, x: str, basis: Mapping, action: Mapping | None = None) -> ObjectModule:
    """Build H(x) from ``{key: intrinsic degree}``; degrees shift down by dim(x)."""
    b = Basis(("H", x), dict(basis), shift=category.dim(x))
    clean = {}
    for (y, mk, vk), out in (action or {}).items():
        mk = tuple(mk)
        if mk not in category.hom(x, y):
            raise ModuleInvalid(f"action names unknown morphism {mk!r} in hom({x!r},{y!r})")
        if vk not in b:
            raise ModuleInvalid(f"action names unknown vector {vk!r} of H({x!r})")
        clean[(y, mk, vk)] = {k: as_rational(c) for k, c in out.items() if as_rational(c) != 0}
    return ObjectModule(x, b, clean)


def representation_from_generators(category: GradedCategory, bases: Mapping[str, Mapping], generator_actions: Mapping) -> Representation:
    """Extend generator actions of a free category to every path.

    ``generator_actions[g]`` maps a basis key of H(source(g)) to
    ``{key: coeff}`` in H(target(g)).
    """
    if category.kind != "free":
        raise HomschurError("generator actions only determine a module over a free category")
    unknown = set(generator_actions) - set(category.generators)
    if unknown:
        raise ModuleInvalid(f"actions for unknown generators {sorted(unknown)}")
    raw = {x: {} for x in bases}
    for (x, y) in category.hom_pairs():
        if x not in bases or y not in bases:
            continue
        for key in category.hom(x, y).keys():
            if key == IDENTITY:
                continue
            for vk in bases[x]:
                vec = {vk: Fraction(1)}
                for gid in reversed(key):
                    mat = generator_actions.get(gid, {})
                    nxt: dict = {}
                    for k, c in vec.items():
                        for k2, c2 in mat.get(k, {}).items():
                            nxt[k2] = nxt.get(k2, 0) + c * as_rational(c2)
                    vec = {k: c for k, c in nxt.items() if c != 0}
                if vec:
                    raw[x][(y, key, vk)] = vec
    modules = {x: make_module(category, x, bases[x], raw[x]) for x in bases}
    return Representation(category, modules)


def validate_representation(rep: Representation) -> ValidationReport:
    C = rep.category
    for x, mod in rep.modules.items():
        for (y, mk, vk), out in mod.action.items():
            if y not in rep.modules:
                return ValidationReport(False, f"action into undeclared module H({y!r})", (x, y, mk))
            tgt = rep.modules[y].basis
            for k in out:
                if k not in tgt:
                    return ValidationReport(False, f"action image key {k!r} not in H({y!r})", (x, y, mk, vk))
        for vk in mod.basis.keys():
            if mod.act_basis(x, IDENTITY, vk) != {vk: 1}:
                return ValidationReport(False, f"identity of {x!r} does not fix {vk!r}", (x, vk))
    objs = [x for x in C.objects if x in rep.modules]
    for x in objs:
        for y in objs:
            for z in objs:
                for fk in C.hom(x, y).keys():
                    for gk in C.hom(y, z).keys():
                        try:
                            gf = C.compose_basis(y, z, gk, x, fk)
                        except TruncationOverflow:
                            continue
                        for vk in rep.modules[x].basis.keys():
                            left: dict = {}
                            for k, c in gf.items():
                                for wk, wc in rep.modules[x].act_basis(z, k, vk).items():
                                    left[wk] = left.get(wk, 0) + c * wc
                            right: dict = {}
                            for uk, uc in rep.modules[x].act_basis(y, fk, vk).items():
                                for wk, wc in rep.modules[y].act_basis(z, gk, uk).items():
                                    right[wk] = right.get(wk, 0) + uc * wc
                            left = {k: c for k, c in left.items() if c}
                            right = {k: c for k, c in right.items() if c}
                            if left != right:
                                return ValidationReport(
                                    False,
                                    f"action incompatible with composition on ({gk!r}, {fk!r}, {vk!r})",
                                    (gk, fk, vk),
                                )
    return OK


def hg_act(rep: Representation, A: HomMatrix, v: GradedVector) -> GradedVector:
    """(Av)_i = sum_j A_ij . v_j on the direct sum of object modules."""
    c = A.source
    if A.target != c:
        raise IndexMismatch("hg_act needs a square matrix in HG(c, c)")
    V = rep.direct_sum(c)
    if v.basis != V:
        raise IndexMismatch("vector does not lie in the direct sum over this index map")
    comps: dict[int, dict] = {}
    for (j, k), cf in v._terms.items():
        comps.setdefault(j, {})[k] = cf
    acc: dict = {}
    for (i, j), a in A._entries.items():
        vj = comps.get(j)
        if not vj:
            continue
        src = rep.module(c[j])
        rep.module(c[i])
        for mk, mc in a._terms.items():
            for vk, vc in vj.items():
                for wk, wc in src.act_basis(c[i], mk, vk).items():
                    acc[(i, wk)] = acc.get((i, wk), 0) + mc * vc * wc
    return GradedVector._trusted(V, {k: cf for k, cf in acc.items() if cf != 0})


# -- cobordism elements ---------------------------------------------------------


class CobordismElement:
    """A pair (alpha, t): alpha a permutation of range(n), t[i] in hom(c[i], c[alpha[i]])."""

    __slots__ = ("index", "alpha", "t")

    def __init__(self, index: IndexMap, alpha: Sequence[int], t: Sequence[GradedVector]):
        alpha = tuple(alpha)
        n = len(index)
        if sorted(alpha) != list(range(n)):
            raise HomschurError(f"alpha={alpha!r} is not a permutation of range({n})")
        if len(t) != n:
            raise HomschurError(f"expected {n} morphisms, got {len(t)}")
        C = index.category
        for i, ti in enumerate(t):
            if ti.basis != C.hom(index[i], index[alpha[i]]):
                raise CompositionMismatch(
                    f"t[{i}] must lie in hom({index[i]!r}, {index[alpha[i]]!r})"
                )
        self.index = index
        self.alpha = alpha
        self.t = tuple(t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CobordismElement):
            return NotImplemented
        return self.index == other.index and self.alpha == other.alpha and self.t == other.t

    def __hash__(self) -> int:
        return hash((self.index, self.alpha, self.t))

    def __repr__(self) -> str:
        return f"CobordismElement(alpha={self.alpha}, t={list(self.t)})"


def cob_identity(c: IndexMap) -> CobordismElement:
    return CobordismElement(c, range(len(c)), [c.category.identity(x) for x in c])


def cob_compose(second: CobordismElement, first: CobordismElement) -> CobordismElement:
    """(beta, s) o (alpha, t) = (beta alpha, u) with u_i = s_{alpha(i)} o t_i."""
    if second.index != first.index:
        raise CompositionMismatch("cobordism elements over different index maps")
    C = first.index.category
    alpha, beta = first.alpha, second.alpha
    u = [compose_morphisms(C, second.t[alpha[i]], first.t[i]) for i in range(len(alpha))]
    return CobordismElement(first.index, [beta[alpha[i]] for i in range(len(alpha))], u)


def cob_to_matrix(e: CobordismElement) -> HomMatrix:
    """Generalized permutation matrix with t_i at (alpha(i), i)."""
    return HomMatrix(e.index, e.index, {(e.alpha[i], i): ti for i, ti in enumerate(e.t)})
