"""Theta characteristic calculus over F2 and numerical verification of
theta-constant determinant identities at genus 3.
"""

from .chars import (
    F2Vector,
    FundamentalSystem,
    GenusMismatchError,
    IntCharacteristic,
    QuadForm,
    add_vector,
    all_forms,
    arf,
    arf_sum3,
    diff_forms,
    eval_at_formsum,
    evaluate_form,
    even_count,
    even_forms,
    is_azygetic,
    is_fundamental,
    lift01,
    odd_count,
    odd_forms,
    pairing,
    reference_fundamental_system,
    shift_system,
    sum3,
    zero_form,
    zero_vector,
)
from .aronhold import (
    AronholdBasis,
    WeberFamily,
    aronhold_conjugate,
    aronhold_to_fundamental,
    basis_for_pair,
    enumerate_aronhold_sets,
    family_from_fundamental,
    form_sum,
    is_aronhold,
    vector_sum,
    weber_systems,
)
from .symplectic import (
    NotSymplecticError,
    SymplecticMapF2,
    SymplecticMapZ,
    act_f2,
    act_f2_vec,
    act_z,
    find_sigma,
    lift_sp,
    phi_transform,
    random_symplectic_f2,
    random_symplectic_z,
)
from .theta import (
    DEFAULT_CONFIG,
    RiemannMatrix,
    ThetaEvalConfig,
    auto_radius,
    jacobian_nullwert,
    theta,
    theta_grad,
    theta_null,
)
from .verify import (
    BitangentFrame,
    JacobiCheckResult,
    TauRejectedError,
    TauValidation,
    VerificationError,
    WeberResult,
    bitangent_frame,
    det3,
    family_for_pair,
    iota,
    iota_value,
    jacobi_check,
    random_fundamental_system,
    random_tau,
    reference_family,
    s_value,
    sign_transport,
    validate_tau,
    weber_sign,
    weber_verify,
)
from .formats import (
    InputFormatError,
    format_quadform,
    format_system,
    load_system,
    load_tau,
    parse_quadform,
    parse_system,
    sample_tau,
    save_tau,
)

__version__ = "0.1.0"
