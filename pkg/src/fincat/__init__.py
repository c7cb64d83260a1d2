"""fincat: a finite-model engine for categories and the set constructions
underneath them.

Everything is exact and deterministic: quotients of equivalence relations,
disjoint unions with assembled empty-detectors, sections-as-products,
function spaces, category validation, skeleton extraction with verified
witnesses, functor-category enumeration, and a symbolic three-valued size
calculus for domains too large to enumerate.
"""

from .domain import (
    NO,
    YES,
    BinaryFn,
    Bit,
    Detector,
    EqualityPairing,
    FiniteCollection,
    LogicalDomain,
    Powerset,
    empty_detector,
    make_domain,
    powerset,
)
from .constructions import (
    LEX,
    DisjointUnion,
    EquivalenceRelation,
    EquivClass,
    Fiber,
    FnMap,
    FunctionSpace,
    IndexedFamily,
    SectionSet,
    TieBreak,
    choose_section,
    disjoint_union,
    equiv_class,
    equiv_classes,
    fiber,
    fiber_domain,
    fiber_membership,
    function_space,
    product_domain,
    pushforward_detector,
    quotient,
    quotient_map,
    sections,
)
from .category import (
    Category,
    Functor,
    Morphism,
    NaturalTransformation,
    TotalMorphisms,
    require_valid,
    require_valid_functor,
    total_morphisms,
    validate_category,
    validate_functor,
    validate_nat_transformation,
)
from .skeleton import (
    IsoClasses,
    IsoRelation,
    SkeletonIso,
    SkeletonResult,
    build_skeleton,
    find_inverse,
    induced_iso_map,
    is_isomorphism,
    iso_classes,
    iso_subcategory,
    skeleton_uniqueness,
    verify_skeleton,
)
from .functorcat import (
    FunctorCategory,
    enumerate_functors,
    enumerate_nat_transformations,
    functor_category,
    nat_equiv_classes,
)
from .sizecalc import (
    EvalResult,
    Injection,
    RuleTrace,
    SizeScript,
    SizeTag,
    apply_injection_rules,
    eval_size,
    knowledge_leq,
    replay,
)
from .parser import ParseError, SkeletonWitness, parse_path, parse_text
from .emit import emit, emit_witness, skeleton_witness
from .report import Finding, Report, SourceSpan
from . import errors

__version__ = "0.1.0"
