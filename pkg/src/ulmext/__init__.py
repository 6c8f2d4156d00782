"""Borel complexity of the extension-classification problem.

Given, prime by prime, a countable abelian p-group C (the quotient side)
and a reduced p-group A (the coefficient side), classify how hard it is to
decide whether two extensions of C by A are isomorphic: the exact potential
complexity class of the isomorphism relation and where it lands against the
eventual-equality benchmarks. Groups enter as finite layer-by-layer
descriptions of their Ulm invariants, so the whole pipeline is symbolic and
exact; the `oracle` subpackage provides independent brute-force checks at
finite scale.

The surface syntax lives in `ulmext.dsl`, the command line in `ulmext.cli`
(installed as `ulmext`).
"""

from .classifier import (
    CASE_TAGS,
    BenchmarkLevel,
    ClassificationResult,
    ComplexityClass,
    ProblemSpec,
    benchmark_from_class,
    class_for_case,
    class_leq,
    classify,
    e0_conditions,
    is_legal_class,
    mu_p,
    per_prime_class,
    product_class,
)
from .dsl import (
    SCHEMA_VERSION,
    SpecDocument,
    SpecParseError,
    document_from_json,
    document_to_json,
    parse_document,
    parse_spec,
    serialize_spec,
    spec_to_json,
)
from .ordinals import (
    INFINITE,
    OMEGA,
    ONE,
    ZERO,
    ExtendedCount,
    Ordinal,
    OrdinalParseError,
    ord_add,
    ord_compare,
    ord_parse,
    ord_to_text,
)
from .profiles import (
    CyclicLayer,
    PGroupDesc,
    SplitFamily,
    UlmProfile,
    cardinality,
    direct_sum,
    is_bounded,
    is_zero,
    split_omega,
    ulm_length,
    ulm_subgroup,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CASE_TAGS",
    "INFINITE",
    "OMEGA",
    "ONE",
    "SCHEMA_VERSION",
    "ZERO",
    "BenchmarkLevel",
    "ClassificationResult",
    "ComplexityClass",
    "CyclicLayer",
    "ExtendedCount",
    "Ordinal",
    "OrdinalParseError",
    "PGroupDesc",
    "ProblemSpec",
    "SpecDocument",
    "SpecParseError",
    "SplitFamily",
    "UlmProfile",
    "benchmark_from_class",
    "cardinality",
    "class_for_case",
    "class_leq",
    "classify",
    "direct_sum",
    "document_from_json",
    "document_to_json",
    "e0_conditions",
    "is_bounded",
    "is_legal_class",
    "is_zero",
    "mu_p",
    "ord_add",
    "ord_compare",
    "ord_parse",
    "ord_to_text",
    "parse_document",
    "parse_spec",
    "per_prime_class",
    "product_class",
    "serialize_spec",
    "spec_to_json",
    "split_omega",
    "ulm_length",
    "ulm_subgroup",
    "validate",
]
