"""Exact decision procedures for higher Segal conditions on finite objects.

The package works with truncated simplicial sets and pre-augmented
bisimplicial sets whose levels are finite sets (or finite groupoids),
where every comparison map of a Segal-type condition is decidable by
direct enumeration:

* validation of simplicial and bisimplicial identities;
* the two triangulation families of 2-Segal comparison maps, and the
  unitality squares;
* the stable augmented double Segal battery (row/column gluing,
  stability, augmentation) for set- and groupoid-valued objects;
* the path construction, the grid (S-dot) construction, and the
  unit/counit comparison maps of the equivalence between the two sides;
* nerves of finite categories, exact-sequence nerves of finite
  proto-exact categories, and Hall structure constants.

All verdicts are exact: conditions whose instances lie outside the
truncation are reported ``partial``, never guessed.
"""

from .checks import check_2segal, check_augmentation_retract, check_sadss, check_unital
from .exactnerve import (
    ProtoExactData,
    builtin_pointed_sets,
    category_isos,
    nerve_exact,
    nerve_exact_augmentation,
    nerve_exact_diagram,
    validate_proto_exact,
)
from .groupoids import (
    FiniteGroupoid,
    GroupoidFunctor,
    GroupoidSigmaDiagram,
    IsoComma,
    check_sadss_groupoid,
    compose_groupoid_functors,
    discrete_groupoid,
    groupoid_diagram_of_preaug,
    identity_groupoid_functor,
    is_equivalence,
    iso_comma,
    validate_groupoid,
    validate_groupoid_diagram,
)
from .hall import StructureConstants, check_associativity, structure_constants
from .pathconstr import path_of_map, path_of_sset, path_standard_simplex
from .preaug import (
    PreaugBisimplicialSet,
    PreaugMap,
    hom_preaug,
    hom_preaug_naive,
    naive_search_space,
    restrict_truncation,
)
from .report import CheckReport, Instance, merge_subreports, report_from_failures
from .search import enumerate_valid_structures, find_minimal_non_2segal
from .sconstr import (
    counit_report,
    counit_tables,
    first_row_bijection,
    roundtrip_verify,
    sdot,
    sdot_with_maps,
    unit_report,
    unit_tables,
)
from .sset import (
    FiniteCategoryData,
    SimplicialMap,
    TruncatedSimplicialSet,
    hom_simplicial,
    nerve_category,
    poset_category,
    standard_simplex,
    validate_category,
    validate_simplicial,
)

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "FiniteCategoryData",
    "FiniteGroupoid",
    "GroupoidFunctor",
    "GroupoidSigmaDiagram",
    "Instance",
    "IsoComma",
    "PreaugBisimplicialSet",
    "PreaugMap",
    "ProtoExactData",
    "SimplicialMap",
    "StructureConstants",
    "TruncatedSimplicialSet",
    "builtin_pointed_sets",
    "category_isos",
    "check_2segal",
    "check_associativity",
    "check_augmentation_retract",
    "check_sadss",
    "check_sadss_groupoid",
    "check_unital",
    "compose_groupoid_functors",
    "counit_report",
    "counit_tables",
    "discrete_groupoid",
    "enumerate_valid_structures",
    "find_minimal_non_2segal",
    "first_row_bijection",
    "groupoid_diagram_of_preaug",
    "hom_preaug",
    "hom_preaug_naive",
    "hom_simplicial",
    "identity_groupoid_functor",
    "is_equivalence",
    "iso_comma",
    "merge_subreports",
    "naive_search_space",
    "nerve_category",
    "nerve_exact",
    "nerve_exact_augmentation",
    "nerve_exact_diagram",
    "path_of_map",
    "path_of_sset",
    "path_standard_simplex",
    "poset_category",
    "report_from_failures",
    "restrict_truncation",
    "roundtrip_verify",
    "sdot",
    "sdot_with_maps",
    "standard_simplex",
    "structure_constants",
    "unit_report",
    "unit_tables",
    "validate_category",
    "validate_groupoid",
    "validate_groupoid_diagram",
    "validate_proto_exact",
    "validate_simplicial",
]
