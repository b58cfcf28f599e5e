"""Exact unipotent factorization toolkit for SL2(C).

Alternating words of elementary matrices, the product map Phi_N and its
submersivity locus, closed-form fiber solvers, conserved-quantity vector
field flows, constant-matrix and Cohn-matrix factorization algorithms, and
the winding-number certificate that separates 4-factor continuous from
4-factor holomorphic factorizations.
"""

from .exact_algebra import (
    ExactComplex,
    MultiPoly,
    Rational,
    format_exact,
    parse_exact,
    poly_diff,
    poly_equal,
    poly_eval,
    poly_from_json,
    poly_ring_op,
    poly_to_json,
)
from .word_core import (
    ElementaryFactor,
    FunctionHandle,
    PhiTemplate,
    SL2,
    Word,
    eval_word,
    expand_phi,
    format_point,
    in_singular_set,
    middle_Q,
    middle_Q_brute,
    sl2_from_json,
    sl2_to_json,
    word_from_json,
    word_inverse,
    word_to_json,
)
from .submersion_spray import (
    FlowResult,
    TangentFrame,
    VectorFieldSpec,
    check_lemma_submersive,
    flow_rk4,
    frame_minor_det,
    frame_rank,
    sl2_jacobian,
    v_field_spec,
    vfield_apply,
    w_field_spec,
)
from .fiber_solver import (
    FiberCompletion,
    InteriorPoint,
    complete_generic_even,
    complete_nongeneric_even,
    complete_odd,
    f5_param,
    fiber_transport_dim1,
    fiber_transport_dim2,
    interior_sample,
)
from .factorizer import (
    BUILTIN_ENTRIES,
    CohnTarget,
    Factorization,
    can_factor_three,
    cohn_eval,
    cohn_family_4,
    cohn_family_relations,
    cohn_holo_5,
    cohn_holo_5_word,
    factor_constant,
    factor_count_bound,
    factor_offdiag_zero,
    factor_unit_corner,
    pad_avoid_singular,
)
from .obstruction import (
    Certificate,
    LoopSamples,
    axis_continuation_degrees,
    certificate_from_json,
    circle_winding,
    cohn_continuous_section,
    continuous_section_h3,
    divisor_degrees,
    holo_obstruction_certificate,
    sample_loop,
    section_degree_on_fiber,
    section_near_D1,
    shrinking_circle_degrees,
    winding_number,
)
from ._verify import verify_suite
from .errors import (
    InadequateSamplingError,
    PreconditionError,
    SamplingBudgetError,
    VerificationError,
)

__all__ = [
    "ExactComplex", "MultiPoly", "Rational", "format_exact", "parse_exact",
    "poly_diff", "poly_equal", "poly_eval", "poly_from_json", "poly_ring_op",
    "poly_to_json",
    "ElementaryFactor", "FunctionHandle", "PhiTemplate", "SL2", "Word",
    "eval_word", "expand_phi", "format_point", "in_singular_set", "middle_Q",
    "middle_Q_brute", "sl2_from_json", "sl2_to_json", "word_from_json",
    "word_inverse", "word_to_json",
    "FlowResult", "TangentFrame", "VectorFieldSpec",
    "check_lemma_submersive", "flow_rk4", "frame_minor_det", "frame_rank",
    "sl2_jacobian", "v_field_spec", "vfield_apply", "w_field_spec",
    "FiberCompletion", "InteriorPoint", "complete_generic_even",
    "complete_nongeneric_even", "complete_odd", "f5_param",
    "fiber_transport_dim1", "fiber_transport_dim2", "interior_sample",
    "BUILTIN_ENTRIES", "CohnTarget", "Factorization", "can_factor_three",
    "cohn_eval", "cohn_family_4", "cohn_family_relations", "cohn_holo_5",
    "cohn_holo_5_word", "factor_constant", "factor_count_bound",
    "factor_offdiag_zero", "factor_unit_corner", "pad_avoid_singular",
    "Certificate", "LoopSamples", "axis_continuation_degrees",
    "certificate_from_json", "circle_winding", "cohn_continuous_section",
    "continuous_section_h3", "divisor_degrees",
    "holo_obstruction_certificate", "sample_loop", "section_degree_on_fiber",
    "section_near_D1", "shrinking_circle_degrees", "winding_number",
    "verify_suite",
    "InadequateSamplingError", "PreconditionError", "SamplingBudgetError",
    "VerificationError",
]

__version__ = "0.1.0"
