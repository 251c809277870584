"""Finite gaunt 2-categories, the oplax tensor of simplices, double
categories of lax squares, and exhaustive verification of the pushout and
universal-property laws relating them."""

from .fincat import BudgetError, CatFunctor, FinCat, cat_functors, discrete_cat, ordinal, poset_cat
from .shapes import build_globular_sum, default_site, dual, format_gs, glob, parse_gs, simplex
from .twocat import (
    TwoCat,
    TwoFunctor,
    are_isomorphic_twocats,
    cartesian_product,
    enumerate_functors,
    is_gaunt,
    tau0,
    tau1,
    tau1_cat,
)
from .presheaf import (
    DiagramSpec,
    SetPresheaf,
    are_isomorphic,
    finite_colimit,
    is_complete,
    is_segal_theta2,
    nerve,
)
from .gray import (
    tensor,
    tensor_many,
    tensor_simplices,
    tensor_triple,
    verify_crush_product,
    verify_duality,
    verify_funny_equation,
    verify_quotient_prop,
    verify_rigidity,
    verify_square_colimit,
    verify_step2,
    verify_triple_gaunt,
)
from .double import (
    DoubleCat,
    DoubleFunctor,
    are_isomorphic_double,
    cech_nerve,
    completeness,
    dualize,
    enumerate_double_functors,
    grid,
    inclusion,
    level_count,
    product,
    squares,
    verify_adjunction_counts,
    verify_cech_squares,
    verify_double_pushouts,
    verify_step3,
)
from .companion import (
    CompanionWitness,
    HypothesisViolation,
    admits_companion,
    comp_core,
    comp_subobject,
    companion_horizontals,
    find_companions,
    is_companion_pair,
    verify_comp_core,
    verify_universal_property,
)
from .config import DEFAULTS, Config
from .checks import REGISTRY, run_all, run_check, write_reports

__version__ = "0.1.0"
