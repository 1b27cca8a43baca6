"""Finite-depth computations in the universal two-family shift."""

from .freegroup import (
    IDENTITY,
    Letter,
    Signature,
    SignatureError,
    Word,
    WordFormatError,
    ball,
    ball_size,
    f2_image,
    invert,
    letters,
    multiply,
    parse_word,
    positive_letters,
    reduce_word,
    word_str,
)
from .config import (
    C1,
    C2,
    Configuration,
    DepthError,
    DomainError,
    ResourceCutoffError,
    Undetermined,
    ValidationReport,
    classify_pattern,
    enumerate_omega,
    equal_at_depth,
    in_domain,
    translate,
    truncate,
    validate,
)
from .efunc import (
    ConditionReport,
    EFunctionError,
    ExtendedEFunction,
    PartialEFunction,
    check_conditions,
    deepen,
    empty_efunction,
    enumerate_pef,
    extend_forced,
    in_basic_open,
    omega,
    phi,
    psi,
)
from .action import (
    AlternatingForm,
    DepthShortfallError,
    NotAlternatingError,
    act,
    act_oracle,
    alternating_form,
)
from .model import (
    ModelPoint,
    TapeExhaustedError,
    fixed_point,
    gamma,
    h_inv,
    h_map,
    points_agree,
    theta_point,
    v_inv,
    v_map,
)
from .analysis import (
    EmptyDomain,
    FreenessCertificate,
    IsotropyWitness,
    NoRepeatWithinDepthError,
    Witness,
    certify_freeness,
    depth_isotropy_check,
    free_subgroup_witness,
    freeness_witness,
    isotropy_chain,
    orbit,
)
from .matrep import (
    PartialIsometrySet,
    RelationReport,
    TameResult,
    TraceReport,
    check_R,
    check_R_projections,
    is_partial_isometry,
    tame_check,
    trace_bound_constant,
    trace_obstruction,
)

__version__ = "0.1.0"
