"""Exact homological matrices, Schur algebras and the little-intervals operad."""

from .category import (
    GradedCategory,
    MorphGenerator,
    ObjectDecl,
    build_free_category,
    build_table_category,
    compose_morphisms,
    validate_category,
)
from .errors import *  # noqa: F401,F403
from .graded import (
    Basis,
    ChainComplex,
    GradedVector,
    homology_betti,
    linear_combine,
    shift_degrees,
    validate_complex,
)
from .homatrix import (
    CobordismElement,
    HomMatrix,
    IndexMap,
    ObjectModule,
    Representation,
    cob_compose,
    cob_identity,
    cob_to_matrix,
    hg_act,
    hg_identity,
    hg_product,
    make_module,
    representation_from_generators,
    single_entry,
)
from .operad import UNIT, IntervalConfig, LittleInterval, operad_compose, theta_compose, validate_config
from .sympower import (
    AVERAGED,
    ORBIT_SUM,
    HGAlgebra,
    ModuleSpace,
    Permutation,
    SymElement,
    canonicalize,
    koszul_sign_oracle,
    schur_include,
    sym_act,
    sym_class,
    sym_product,
)

__version__ = "0.1.0"
