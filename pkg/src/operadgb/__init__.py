"""Computer algebra for shuffle operads: Groebner bases, free resolutions
of monomial quotients, matchings for explicit homology classes, and the
deformed differential computing Quillen homology in general."""

from .trees import (
    Generator,
    TreeMonomial,
    ShuffleSurjection,
    Occurrence,
    Element,
    UNIT,
    canonical_form,
    canonical_form_signed,
    corolla,
    compose,
    ns_compose,
    divisor_occurrences,
    substitute,
    relabel_leaves,
    relabel_element,
    enumerate_shuffle_surjections,
    count_shuffle_surjections,
    enumerate_trees,
    format_tree,
    format_element,
)
from .orders import MonomialOrder, leading_term, make_monic, check_admissibility
from .groebner import (
    Presentation,
    GroebnerBasis,
    SCM,
    reduce_element,
    small_common_multiples,
    s_polynomials,
    buchberger,
    interreduce,
    is_groebner,
    normal_monomials,
    hilbert,
)
from .resolution import MarkedComplex, ResolutionGenerator, HomologyTable, abelianized_homology
from .morse import (
    staircase_numbering,
    numbering_is_staircase,
    build_matching,
    matching_is_acyclic,
    critical_cells,
    homology_oracle,
)
from .perturb import PerturbedComplex, quillen_homology, expand_in_generators
from .koszul import pbw_koszul_check, PBW_KOSZUL, NOT_QUADRATIC, INCONCLUSIVE
from .algebra import algebra_to_operad
from .parser import parse_presentation, format_presentation, ParseError
from . import builtins

__all__ = [name for name in dir() if not name.startswith("_")]
