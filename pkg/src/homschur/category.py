"""Finitely presented graded categories.

Morphism keys are tuples of symbols.  In a free category the key of a path
is written in composition order: applying ``f`` then ``g`` gives the key
``("g", "f")``, and the identity of every object has the reserved key ``()``.
A morphism is a :class:`~homschur.graded.GradedVector` over the basis of its
hom-space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import CompositionMismatch, HomschurError, TruncationOverflow, UnknownObject
from .graded import OK, Basis, GradedVector, ValidationReport

IDENTITY = ()


@dataclass(frozen=True)
class ObjectDecl:
    id: str
    dim: int = 0


@dataclass(frozen=True)
class MorphGenerator:
    id: str
    source: str
    target: str
    degree: int = 0


class GradedCategory:
    """Objects, graded hom bases and a bilinear composition law.

    Use :func:`build_free_category` or :func:`build_table_category` rather
    than the constructor.
    """

    def __init__(self, objects, homs, compose_basis, *, generators=(), max_path_length=None, kind="table", table=None):
        self.objects: dict[str, ObjectDecl] = {o.id: o for o in objects}
        self.generators: dict[str, MorphGenerator] = {g.id: g for g in generators}
        self._homs: dict[tuple[str, str], Basis] = homs
        self._compose_basis = compose_basis
        self.max_path_length = max_path_length
        self.kind = kind
        self.table = table

    def dim(self, x: str) -> int:
        return self._object(x).dim

    def _object(self, x: str) -> ObjectDecl:
        try:
            return self.objects[x]
        except KeyError:
            raise UnknownObject(x) from None

    def hom(self, x: str, y: str) -> Basis:
        self._object(x)
        self._object(y)
        basis = self._homs.get((x, y))
        if basis is None:
            basis = Basis(("hom", x, y), {})
        return basis

    def hom_pairs(self) -> list[tuple[str, str]]:
        return sorted(self._homs)

    def endpoints(self, v: GradedVector) -> tuple[str, str]:
        name = v.basis.name
        if not (isinstance(name, tuple) and len(name) == 3 and name[0] == "hom"):
            raise CompositionMismatch(f"{v.basis!r} is not a hom-space")
        if self._homs.get((name[1], name[2]), Basis(name, {})) != v.basis:
            raise CompositionMismatch(f"{v.basis!r} does not belong to this category")
        return name[1], name[2]

    def morphism(self, x: str, y: str, terms: Mapping | None = None) -> GradedVector:
        return GradedVector(self.hom(x, y), terms or {})

    def identity(self, x: str) -> GradedVector:
        return GradedVector(self.hom(x, x), {IDENTITY: 1})

    def zero(self, x: str, y: str) -> GradedVector:
        return GradedVector(self.hom(x, y), {})

    def compose_basis(self, y: str, z: str, gkey, x: str, fkey) -> dict:
        """Composite of basis elements g in hom(y,z) and f in hom(x,y)."""
        return self._compose_basis(x, y, z, gkey, fkey)

    def __repr__(self) -> str:
        return f"GradedCategory({self.kind}, objects={list(self.objects)})"


def _check_objects(objects) -> list[ObjectDecl]:
    out = []
    seen = set()
    for o in objects:
        if not isinstance(o, ObjectDecl):
            o = ObjectDecl(*o) if isinstance(o, tuple) else ObjectDecl(**o)
        if o.id in seen:
            raise HomschurError(f"duplicate object {o.id!r}")
        if o.dim < 0:
            raise HomschurError(f"object {o.id!r} has negative dimension")
        seen.add(o.id)
        out.append(o)
    return out


def build_free_category(objects, generators, max_path_length: int) -> GradedCategory:
    """Truncated free path category on a graded quiver."""
    if max_path_length < 1:
        raise HomschurError("max_path_length must be at least 1")
    objs = _check_objects(objects)
    ids = {o.id for o in objs}
    gens = []
    seen = set()
    for g in generators:
        if not isinstance(g, MorphGenerator):
            g = MorphGenerator(*g) if isinstance(g, tuple) else MorphGenerator(**g)
        if g.id in seen:
            raise HomschurError(f"duplicate generator {g.id!r}")
        for end in (g.source, g.target):
            if end not in ids:
                raise UnknownObject(f"generator {g.id!r} refers to undeclared object {end!r}")
        seen.add(g.id)
        gens.append(g)

    degrees: dict[tuple[str, str], dict] = {(o.id, o.id): {IDENTITY: 0} for o in objs}
    # frontier: paths in application order, as (source, target, key, degree)
    frontier = [(g.source, g.target, (g.id,), g.degree) for g in gens]
    length = 1
    while frontier and length <= max_path_length:
        nxt = []
        for src, tgt, key, deg in frontier:
            degrees.setdefault((src, tgt), {})[key] = deg
            if length < max_path_length:
                for g in gens:
                    if g.source == tgt:
                        nxt.append((src, g.target, (g.id,) + key, deg + g.degree))
        frontier = nxt
        length += 1

    homs = {pair: Basis(("hom",) + pair, d) for pair, d in degrees.items()}

    def compose(x, y, z, gkey, fkey):
        key = gkey + fkey
        if len(key) > max_path_length:
            raise TruncationOverflow(
                f"composite {key!r} has length {len(key)} > {max_path_length}"
            )
        return {key: Fraction(1)}

    return GradedCategory(
        objs, homs, compose, generators=gens, max_path_length=max_path_length, kind="free"
    )


def build_table_category(objects, homs: Mapping, table: Mapping) -> GradedCategory:
    """Category given by structure constants.

    ``homs`` maps ``(x, y)`` to ``{key: degree}``; each ``hom(x, x)`` gets the
    identity key ``()`` in degree 0 if it is missing.  ``table`` maps
    ``(x, y, z, gkey, fkey)`` to ``{key: coeff}`` in ``hom(x, z)``.  Pairs not
    in the table compose to zero, except that identities act as units unless
    the table says otherwise.
    """
    objs = _check_objects(objects)
    ids = {o.id for o in objs}
    degrees: dict[tuple[str, str], dict] = {(o.id, o.id): {IDENTITY: 0} for o in objs}
    for (x, y), basis in homs.items():
        if x not in ids or y not in ids:
            raise UnknownObject(f"hom({x!r}, {y!r}) refers to an undeclared object")
        for k, d in basis.items():
            degrees.setdefault((x, y), {})[tuple(k)] = int(d)
    bases = {pair: Basis(("hom",) + pair, d) for pair, d in degrees.items()}
    frozen = {}
    for (x, y, z, gk, fk), out in table.items():
        for a, b in ((x, y), (y, z), (x, z)):
            if a not in ids or b not in ids:
                raise UnknownObject(f"table entry over undeclared object in {(x, y, z)!r}")
        gk, fk = tuple(gk), tuple(fk)
        if gk not in bases.get((y, z), ()) or fk not in bases.get((x, y), ()):
            raise HomschurError(f"table entry {(x, y, z, gk, fk)!r} names unknown basis keys")
        clean = {}
        for k, c in out.items():
            k = tuple(k)
            if k not in bases.get((x, z), ()):
                raise HomschurError(f"table value key {k!r} not in hom({x!r}, {z!r})")
            c = Fraction(c)
            if c:
                clean[k] = c
        frozen[(x, y, z, gk, fk)] = clean

    def compose(x, y, z, gkey, fkey):
        hit = frozen.get((x, y, z, gkey, fkey))
        if hit is not None:
            return dict(hit)
        if gkey == IDENTITY and y == z:
            return {fkey: Fraction(1)}
        if fkey == IDENTITY and x == y:
            return {gkey: Fraction(1)}
        return {}

    return GradedCategory(objs, bases, compose, kind="table", table=frozen)


def compose_morphisms(C: GradedCategory, g: GradedVector, f: GradedVector) -> GradedVector:
    """g after f, extended bilinearly from the basis table."""
    y, z = C.endpoints(g)
    x, y2 = C.endpoints(f)
    if y != y2:
        raise CompositionMismatch(f"cannot compose hom({y!r},{z!r}) after hom({x!r},{y2!r})")
    acc: dict = {}
    for gk, gc in g._terms.items():
        for fk, fc in f._terms.items():
            for k, c in C.compose_basis(y, z, gk, x, fk).items():
                acc[k] = acc.get(k, 0) + gc * fc * c
    return GradedVector._trusted(C.hom(x, z), {k: c for k, c in acc.items() if c != 0})


def validate_category(C: GradedCategory) -> ValidationReport:
    pairs = C.hom_pairs()
    by_source: dict[str, list[str]] = {}
    for x, y in pairs:
        by_source.setdefault(x, []).append(y)

    def basis_comp(x, y, z, gk, fk):
        try:
            return C.compose_basis(y, z, gk, x, fk)
        except TruncationOverflow:
            return None

    for x, y in pairs:
        if x == y and IDENTITY not in C.hom(x, x):
            return ValidationReport(False, f"hom({x!r},{x!r}) lacks an identity", (x,))
        hxy = C.hom(x, y)
        for fk in hxy.keys():
            f = {fk: Fraction(1)}
            if C.compose_basis(y, y, IDENTITY, x, fk) != f:
                return ValidationReport(False, f"id_{y} o {fk!r} != {fk!r}", (y, x, fk))
            if C.compose_basis(x, y, fk, x, IDENTITY) != f:
                return ValidationReport(False, f"{fk!r} o id_{x} != {fk!r}", (x, y, fk))

    for x, y in pairs:
        for z in by_source.get(y, []):
            for fk in C.hom(x, y).keys():
                for gk in C.hom(y, z).keys():
                    out = basis_comp(x, y, z, gk, fk)
                    if out is None:
                        continue
                    want = C.hom(y, z).degree(gk) + C.hom(x, y).degree(fk)
                    hxz = C.hom(x, z)
                    for k in out:
                        if hxz.degree(k) != want:
                            return ValidationReport(
                                False,
                                f"degree violation: |{gk!r} o {fk!r}| has term {k!r} of degree "
                                f"{hxz.degree(k)}, expected {want}",
                                (gk, fk),
                            )

    for x, y in pairs:
        for z in by_source.get(y, []):
            for w in by_source.get(z, []):
                for fk in C.hom(x, y).keys():
                    for gk in C.hom(y, z).keys():
                        gf = basis_comp(x, y, z, gk, fk)
                        if gf is None:
                            continue
                        for hk in C.hom(z, w).keys():
                            if C.kind == "free" and len(hk) + len(gk) + len(fk) > C.max_path_length:
                                continue
                            hg = basis_comp(y, z, w, hk, gk)
                            if hg is None:
                                continue
                            left = _apply_left(C, basis_comp, x, z, w, hk, gf)
                            right = _apply_right(C, basis_comp, x, y, w, hg, fk)
                            if left is None or right is None:
                                continue
                            if left != right:
                                return ValidationReport(
                                    False,
                                    f"associativity violation on ({hk!r}, {gk!r}, {fk!r}): "
                                    f"(h o g) o f = {right!r}, h o (g o f) = {left!r}",
                                    (hk, gk, fk),
                                )
    return OK


def _apply_left(C, comp, x, z, w, hk, gf):
    # h o (g o f)
    acc = {}
    for k, c in gf.items():
        out = comp(x, z, w, hk, k)
        if out is None:
            return None
        for k2, c2 in out.items():
            acc[k2] = acc.get(k2, 0) + c * c2
    return {k: c for k, c in acc.items() if c != 0}


def _apply_right(C, comp, x, y, w, hg, fk):
    # (h o g) o f
    acc = {}
    for k, c in hg.items():
        out = comp(x, y, w, k, fk)
        if out is None:
            return None
        for k2, c2 in out.items():
            acc[k2] = acc.get(k2, 0) + c * c2
    return {k: c for k, c in acc.items() if c != 0}


def parity_violations(C: GradedCategory) -> list[str]:
    """Odd object dimensions or odd hom-basis degrees (even-mode check)."""
    out = [f"object {o.id!r} has odd dimension {o.dim}" for o in C.objects.values() if o.dim % 2]
    for x, y in C.hom_pairs():
        b = C.hom(x, y)
        for k in b.keys():
            if b.degree(k) % 2:
                out.append(f"hom({x!r},{y!r}) basis {k!r} has odd degree {b.degree(k)}")
    return out
