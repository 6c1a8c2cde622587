"""Seeded random instances and the randomized law suite.

Every generator takes an explicit :class:`random.Random`; nothing here reads
ambient entropy.  Each law computes both sides independently and returns a
short failure description, or ``None`` when the law holds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .category import (
    GradedCategory,
    build_free_category,
    compose_morphisms,
    validate_category,
)
from .graded import ChainComplex, GradedVector, euler_characteristic, homology_betti, validate_complex
from .homatrix import (
    CobordismElement,
    HomMatrix,
    IndexMap,
    Representation,
    cob_compose,
    cob_identity,
    cob_to_matrix,
    hg_act,
    hg_identity,
    hg_product,
    representation_from_generators,
)
from .operad import UNIT, IntervalConfig, LittleInterval, operad_compose, theta_compose, validate_config
from .sympower import (
    AVERAGED,
    CONVENTIONS,
    ORBIT_SUM,
    HGAlgebra,
    ModuleSpace,
    Permutation,
    SymElement,
    canonicalize,
    koszul_sign_oracle,
    schur_include,
    sorting_permutation,
    sym_act,
    sym_product,
)


def rand_q(rng: random.Random, num: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_nonzero_q(rng: random.Random, num: int = 5, den: int = 4) -> Fraction:
    while True:
        q = rand_q(rng, num, den)
        if q:
            return q


# -- categories, matrices, modules ----------------------------------------------------


def random_free_category(rng, *, max_objects=4, max_basis=20, max_path_length=3, even=False) -> GradedCategory:
    """Random truncated free category whose hom bases stay below ``max_basis``."""
    degrees = (-2, 0, 2) if even else (-1, 0, 1, 2)
    while True:
        n_obj = rng.randint(1, max_objects)
        objs = [(f"o{i}", rng.choice((0, 2)) if even else rng.randint(0, 3)) for i in range(n_obj)]
        n_gen = rng.randint(n_obj, 2 * n_obj + 1)
        gens = [
            (f"g{k}", f"o{rng.randrange(n_obj)}", f"o{rng.randrange(n_obj)}", rng.choice(degrees))
            for k in range(n_gen)
        ]
        C = build_free_category(objs, gens, max_path_length)
        if all(len(C.hom(x, y)) <= max_basis for x, y in C.hom_pairs()):
            return C


def short_keys(C: GradedCategory, x: str, y: str, max_len: int = 1) -> list:
    return [k for k in C.hom(x, y).keys() if len(k) <= max_len]


def random_morphism(rng, C, x, y, *, max_len=1, max_terms=2, homogeneous=False) -> GradedVector:
    keys = short_keys(C, x, y, max_len)
    if not keys:
        return C.zero(x, y)
    if homogeneous:
        b = C.hom(x, y)
        deg = b.degree(rng.choice(keys))
        keys = [k for k in keys if b.degree(k) == deg]
    picks = rng.sample(keys, min(len(keys), rng.randint(1, max_terms)))
    return C.morphism(x, y, {k: rand_nonzero_q(rng) for k in picks})


def random_index(rng, C, n) -> IndexMap:
    objs = sorted(C.objects)
    return IndexMap(C, [rng.choice(objs) for _ in range(n)])


def random_matrix(rng, c: IndexMap, d: IndexMap, *, density=0.8, max_len=1) -> HomMatrix:
    C = c.category
    entries = {}
    for i in range(len(d)):
        for j in range(len(c)):
            if rng.random() < density:
                v = random_morphism(rng, C, c[j], d[i], max_len=max_len)
                if v:
                    entries[(i, j)] = v
    return HomMatrix(c, d, entries)


def random_representation(rng, C: GradedCategory, *, max_dim=3, even=False) -> Representation:
    degrees = (0, 2) if even else (0, 1, 2)
    bases = {
        x: {f"v{k}": rng.choice(degrees) for k in range(rng.randint(1, max_dim))} for x in sorted(C.objects)
    }
    acts = {}
    for g in sorted(C.generators.values(), key=lambda g: g.id):
        acts[g.id] = {
            vk: {wk: rand_q(rng, 3, 2) for wk in sorted(bases[g.target])} for vk in sorted(bases[g.source])
        }
    return representation_from_generators(C, bases, acts)


def random_vector(rng, rep: Representation, c: IndexMap) -> GradedVector:
    V = rep.direct_sum(c)
    keys = V.keys()
    picks = rng.sample(keys, rng.randint(1, len(keys)))
    return GradedVector(V, {k: rand_nonzero_q(rng) for k in picks})


def random_cobordism(rng, c: IndexMap, *, max_len=1, tries=20) -> CobordismElement:
    C = c.category
    n = len(c)
    alpha = None
    for _ in range(tries):
        alpha = list(range(n))
        rng.shuffle(alpha)
        if all(short_keys(C, c[i], c[alpha[i]], max_len) for i in range(n)):
            break
    t = [random_morphism(rng, C, c[i], c[alpha[i]], max_len=max_len, homogeneous=True) for i in range(n)]
    return CobordismElement(c, alpha, t)


def random_sym(rng, space, m, convention, *, max_terms=2, max_len=1) -> SymElement:
    if isinstance(space, HGAlgebra):
        c, C = space.c, space.category
        pool = [
            (i, j, k)
            for i in range(len(c))
            for j in range(len(c))
            for k in short_keys(C, c[j], c[i], max_len)
        ]
    else:
        pool = space.basis.keys()
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        keys = tuple(rng.choice(pool) for _ in range(m))
        terms[keys] = terms.get(keys, 0) + rand_nonzero_q(rng)
    return SymElement(space, m, convention, terms)


# -- complexes ---------------------------------------------------------------------------------


def _unitriangular(rng, n, lower):
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if (i > j) if lower else (i < j):
                M[i][j] = Fraction(rng.randint(-2, 2))
    return M


def _matmul(A, B):
    if not A or not B:
        return [[Fraction(0)] * (len(B[0]) if B else 0) for _ in A]
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))] for i in range(len(A))]


def _inverse(M):
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def random_complex(rng, *, top=3, max_gens=2) -> tuple[ChainComplex, dict[int, int]]:
    """Random valid complex with known Betti numbers.

    Built as homology generators plus contractible pairs, then disguised by a
    random change of basis in every degree.
    """
    homology = {d: rng.randint(0, max_gens) for d in range(top + 1)}
    pairs = {d: rng.randint(0, max_gens) for d in range(1, top + 1)}  # pairs d -> d-1
    cells: dict[int, list] = {d: [] for d in range(top + 1)}
    for d in range(top + 1):
        cells[d].extend(("h", k) for k in range(homology[d]))
    for d in range(1, top + 1):
        for k in range(pairs[d]):
            src, dst = ("p", d, k), ("q", d, k)
            cells[d].append(src)
            cells[d - 1].append(dst)
    # standard differential matrices D_d: C_d -> C_{d-1}; rows index C_{d-1}
    D = {}
    for d in range(1, top + 1):
        rows, cols = cells[d - 1], cells[d]
        D[d] = [[Fraction(int(c[0] == "p" and r == ("q",) + c[1:])) for c in cols] for r in rows]
    P = {}
    for d in range(top + 1):
        n = len(cells[d])
        P[d] = _matmul(_unitriangular(rng, n, True), _unitriangular(rng, n, False)) if n else []
    names = {d: [f"c{d}_{k}" for k in range(len(cells[d]))] for d in range(top + 1)}
    boundary = {}
    for d in range(1, top + 1):
        if not cells[d] or not cells[d - 1]:
            continue
        M = _matmul(_matmul(P[d - 1], D[d]), _inverse(P[d]))
        for col, name in enumerate(names[d]):
            terms = {names[d - 1][r]: M[r][col] for r in range(len(M)) if M[r][col]}
            if terms:
                boundary[name] = terms
    cx = ChainComplex.from_cells({d: names[d] for d in names if names[d]}, boundary)
    betti = {d: homology[d] for d in names if names[d]}
    return cx, betti


def mutate_complex(rng, cx: ChainComplex) -> ChainComplex | None:
    """Break d^2 = 0 or the degree rule; None if ``cx`` offers no handle."""
    basis = cx.basis
    candidates = []
    for k, img in cx.differential.items():
        for k2 in img.terms:
            if cx.cells(basis.degree(k2) - 1):
                candidates.append((k, k2))
    boundary = {k: dict(v.terms) for k, v in cx.differential.items()}
    if candidates and rng.random() < 0.7:
        # changing d(k2) by delta changes d(d(k)) by coeff * delta != 0
        _, k2 = rng.choice(sorted(candidates, key=repr))
        target = rng.choice(cx.cells(basis.degree(k2) - 1))
        row = boundary.setdefault(k2, {})
        row[target] = row.get(target, 0) + rand_nonzero_q(rng)
        if row[target] == 0:
            row[target] = Fraction(1)
    else:
        keys = basis.keys()
        k = rng.choice(keys)
        wrong = [t for t in keys if basis.degree(t) != basis.degree(k) - 1]
        if not wrong:
            return None
        t = rng.choice(wrong)
        row = boundary.setdefault(k, {})
        row[t] = row.get(t, 0) + 1
        if row[t] == 0:
            row[t] = Fraction(1)
    cells: dict = {}
    for k in basis.keys():
        cells.setdefault(basis.degree(k), []).append(k)
    return ChainComplex.from_cells(cells, boundary)


# -- interval configurations ------------------------------------------------------------------


def random_config(rng, n: int) -> IntervalConfig:
    """n disjoint closed intervals strictly inside (-1, 1), left to right."""
    points = set()
    while len(points) < 2 * n:
        points.add(Fraction(rng.randint(-999, 999), 1000))
    pts = sorted(points)
    out = []
    for i in range(n):
        a, b = pts[2 * i], pts[2 * i + 1]
        out.append(LittleInterval((a + b) / 2, (b - a) / 2))
    return IntervalConfig(tuple(out))


# -- laws --------------------------------------------------------------------------------------


def law_rational_arithmetic(rng):
    big = 10**30
    a, b, c = (Fraction(rng.randint(-big, big), rng.randint(1, big)) for _ in range(3))
    if (a + b) + c != a + (b + c) or a * (b + c) != a * b + a * c:
        return f"rational laws fail on {a}, {b}, {c}"


def law_category_associativity(rng):
    C = random_free_category(rng)
    report = validate_category(C)
    if not report:
        return report.message


def _hg_setting(rng, even=False):
    C = random_free_category(rng, max_path_length=4, even=even)
    return C


def law_hg_associativity(rng):
    C = _hg_setting(rng)
    c, d, e, f = (random_index(rng, C, rng.randint(1, 3)) for _ in range(4))
    A, B, D = random_matrix(rng, e, f), random_matrix(rng, d, e), random_matrix(rng, c, d)
    if hg_product(hg_product(A, B), D) != hg_product(A, hg_product(B, D)):
        return "(AB)C != A(BC)"


def law_hg_units(rng):
    C = _hg_setting(rng)
    c, d = random_index(rng, C, rng.randint(1, 3)), random_index(rng, C, rng.randint(1, 3))
    A = random_matrix(rng, c, d, max_len=4)
    if hg_product(hg_identity(d), A) != A or hg_product(A, hg_identity(c)) != A:
        return "identity matrix is not a unit"


def law_representation(rng):
    C = _hg_setting(rng)
    rep = random_representation(rng, C)
    c = random_index(rng, C, rng.randint(1, 3))
    A, B = random_matrix(rng, c, c), random_matrix(rng, c, c)
    v = random_vector(rng, rep, c)
    if hg_act(rep, hg_product(A, B), v) != hg_act(rep, A, hg_act(rep, B, v)):
        return "rho(AB) != rho(A) rho(B)"


def law_cobordism_functor(rng):
    C = _hg_setting(rng)
    c = random_index(rng, C, rng.randint(1, 4))
    a, b = random_cobordism(rng, c), random_cobordism(rng, c)
    if cob_to_matrix(cob_compose(b, a)) != hg_product(cob_to_matrix(b), cob_to_matrix(a)):
        return "cob_to_matrix is not functorial"
    if cob_compose(cob_identity(c), a) != a or cob_compose(a, cob_identity(c)) != a:
        return "identity cobordism is not a unit"


def law_koszul_oracle(rng):
    m = rng.randint(1, 6)
    keys = [rng.randint(0, 4) for _ in range(m)]
    degrees = {}
    for k in set(keys):
        degrees[k] = rng.randint(-3, 3)
    degs = [degrees[k] for k in keys]
    canon = canonicalize(keys, degs)
    repeated_odd = any(keys.count(k) > 1 and degrees[k] % 2 for k in set(keys))
    if repeated_odd:
        return None if canon is None else f"repeated odd factor not zero: {keys} {degs}"
    if canon is None:
        return f"spurious zero for {keys} {degs}"
    sign, ks = canon
    if list(ks) != sorted(keys):
        return "canonical form not sorted"
    if sign != koszul_sign_oracle(degs, sorting_permutation(keys)):
        return f"sign disagrees with oracle on {keys} {degs}"


def _schur_setting(rng, m):
    C = random_free_category(rng, max_objects=2, max_path_length=m, even=True)
    c = random_index(rng, C, rng.randint(1, 2))
    return C, c


def law_sym_associativity(rng, m=2, convention=AVERAGED):
    C, c = _schur_setting(rng, 3)
    A = HGAlgebra(c)
    x, y, z = (random_sym(rng, A, m, convention) for _ in range(3))
    if sym_product(sym_product(x, y), z) != sym_product(x, sym_product(y, z)):
        return f"S^{m} product not associative ({convention})"


def law_sym_module(rng, m=2, convention=AVERAGED):
    C, c = _schur_setting(rng, 2)
    rep = random_representation(rng, C, max_dim=2, even=True)
    A, V = HGAlgebra(c), ModuleSpace(rep, c)
    a, b = random_sym(rng, A, m, convention), random_sym(rng, A, m, convention)
    v = random_sym(rng, V, m, convention)
    if sym_act(sym_product(a, b), v) != sym_act(a, sym_act(b, v)):
        return f"S^{m} V is not a module ({convention})"


def law_schur_inclusion(rng, n=2):
    C = random_free_category(rng, max_objects=2, max_path_length=2, even=True)
    c = random_index(rng, C, n)
    a, b = random_cobordism(rng, c), random_cobordism(rng, c)
    ab = cob_compose(a, b)
    for conv in CONVENTIONS:
        lhs = sym_product(schur_include(a, convention=conv), schur_include(b, convention=conv))
        rhs = schur_include(ab, convention=conv)
        scale = Fraction(1, math.factorial(n)) if conv == AVERAGED else Fraction(1)
        if lhs != scale * rhs:
            return f"inclusion fails under {conv}"


def law_operad(rng):
    k = rng.randint(1, 3)
    outer = random_config(rng, k)
    inners = [random_config(rng, rng.randint(1, 3)) for _ in range(k)]
    leaves = [[random_config(rng, rng.randint(1, 2)) for _ in range(b.arity)] for b in inners]
    flat = [x for group in leaves for x in group]
    left = operad_compose(operad_compose(outer, inners), flat)
    right = operad_compose(outer, [operad_compose(b, g) for b, g in zip(inners, leaves)])
    if left != right:
        return "operad composition not associative"
    if operad_compose(outer, [UNIT] * k) != outer or operad_compose(UNIT, [outer]) != outer:
        return "unit law fails"
    for cfg in (left, operad_compose(outer, inners)):
        if not validate_config(cfg):
            return "composition left the space of configurations"


def law_theta(rng):
    C = _hg_setting(rng)
    k = rng.randint(1, 3)
    idx = [random_index(rng, C, rng.randint(1, 2)) for _ in range(k + 1)]
    mats = [random_matrix(rng, idx[i + 1], idx[i]) for i in range(k)]
    results = {theta_compose(random_config(rng, k), mats) for _ in range(3)}
    if len(results) != 1:
        return "theta depends on the configuration"


def law_complex(rng):
    cx, betti = random_complex(rng)
    if not validate_complex(cx):
        return "generated complex rejected"
    got = homology_betti(cx)
    if got != betti:
        return f"betti {got} != {betti}"
    dims = {d: len(cx.cells(d)) for d in cx.degrees()}
    if euler_characteristic(dims) != euler_characteristic(got):
        return "Euler identity fails"
    bad = mutate_complex(rng, cx)
    if bad is not None and validate_complex(bad):
        return "d^2 != 0 mutant accepted"


@dataclass(frozen=True)
class Law:
    name: str
    check: Callable
    weight: int = 1  # trials are divided by this for expensive laws


LAWS = [
    Law("rational-arithmetic", law_rational_arithmetic),
    Law("category-associativity", law_category_associativity),
    Law("hg-associativity", law_hg_associativity),
    Law("hg-units", law_hg_units),
    Law("hg-representation", law_representation),
    Law("cobordism-functoriality", law_cobordism_functor),
    Law("koszul-oracle", law_koszul_oracle),
    Law("sym-associativity-averaged", lambda r: law_sym_associativity(r, 2, AVERAGED), 2),
    Law("sym-associativity-orbit-sum", lambda r: law_sym_associativity(r, 2, ORBIT_SUM), 2),
    Law("schur-module", lambda r: law_sym_module(r, 2, AVERAGED), 2),
    Law("schur-inclusion", law_schur_inclusion, 2),
    Law("operad-axioms", law_operad),
    Law("theta-independence", law_theta),
    Law("chain-complexes", law_complex),
]


def run_laws(seed: int, trials: int, laws=None) -> list[dict]:
    """Run each law ``trials // weight`` times from its own seeded stream."""
    out = []
    for law in laws or LAWS:
        rng = random.Random(f"{seed}:{law.name}")
        n = max(1, trials // law.weight)
        failures = []
        for t in range(n):
            msg = law.check(rng)
            if msg:
                failures.append({"trial": t, "detail": msg})
        out.append({"law": law.name, "trials": n, "failures": failures, "ok": not failures})
    return out
