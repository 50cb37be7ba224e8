"""Symmetric-union knot diagrams: construction, invariants, group certificates."""

from .construct import (
    ConstructError,
    NotAKnot,
    NotEvenType,
    NotPlanarInsertion,
    SymUnionSpec,
    build_all_zero_replacement,
    build_symmetric_union,
    glued_pair,
    parse_spec,
    replace_tangle,
    to_spec_doc,
)
from .diagram import (
    Crossing,
    DiagramError,
    PlanarDiagram,
    connected_sum,
    faces,
    mirror,
    parse_pd,
    renumber_edges,
    reverse,
    to_doc,
    to_text,
    unknot,
    writhe,
)
from .group import (
    WirtingerPresentation,
    build_epimorphism,
    certify_epimorphism,
    exponent_sum,
    free_reduce,
    longitude_word,
    meridian_image,
    verify_homomorphism,
    verify_longitude_trivial,
    verify_surjective,
    wirtinger,
)
from .invariant import (
    CancelToken,
    Cancelled,
    TooLarge,
    UnsupportedLinkCase,
    alexander_fox,
    alexander_region,
    jones,
    kauffman_bracket,
    region_matrix,
    verify_fraction_formula,
    verify_fraction_region,
    verify_product_formula,
)
from .poly import (
    ConwayPoly,
    LaurentPoly,
    alexander_from_conway,
    conway_from_alexander,
    is_monic,
    normalize_alexander,
    parse_poly,
)
from .report import CheckResult, VerificationReport
from .tangle import (
    Tangle,
    denominator,
    horizontal_twists,
    is_even_type,
    kt_tangle,
    numerator,
    parse_tangle,
    rational_tangle,
    rotate_pi,
    tangle_fraction,
    tangle_sum,
    to_tangle_doc,
    vertical_stack,
    vertical_twists,
)

__version__ = "0.1.0"

__all__ = [
    "CancelToken",
    "Cancelled",
    "CheckResult",
    "ConstructError",
    "ConwayPoly",
    "Crossing",
    "DiagramError",
    "LaurentPoly",
    "NotAKnot",
    "NotEvenType",
    "NotPlanarInsertion",
    "PlanarDiagram",
    "SymUnionSpec",
    "Tangle",
    "TooLarge",
    "UnsupportedLinkCase",
    "VerificationReport",
    "WirtingerPresentation",
    "alexander_fox",
    "alexander_from_conway",
    "alexander_region",
    "build_all_zero_replacement",
    "build_epimorphism",
    "build_symmetric_union",
    "certify_epimorphism",
    "connected_sum",
    "conway_from_alexander",
    "denominator",
    "exponent_sum",
    "faces",
    "free_reduce",
    "glued_pair",
    "horizontal_twists",
    "is_even_type",
    "is_monic",
    "jones",
    "kauffman_bracket",
    "kt_tangle",
    "longitude_word",
    "meridian_image",
    "mirror",
    "normalize_alexander",
    "numerator",
    "parse_pd",
    "parse_poly",
    "parse_spec",
    "parse_tangle",
    "rational_tangle",
    "region_matrix",
    "renumber_edges",
    "replace_tangle",
    "reverse",
    "rotate_pi",
    "tangle_fraction",
    "tangle_sum",
    "to_doc",
    "to_spec_doc",
    "to_tangle_doc",
    "to_text",
    "unknot",
    "verify_fraction_formula",
    "verify_fraction_region",
    "verify_homomorphism",
    "verify_longitude_trivial",
    "verify_product_formula",
    "verify_surjective",
    "vertical_stack",
    "vertical_twists",
    "wirtinger",
    "writhe",
]
