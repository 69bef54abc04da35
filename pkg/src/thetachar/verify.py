"""Numerical verification pipeline for genus-3 Riemann matrices: theta-null
validation, bitangent coefficient frames, Riemann-Jacobi quotients, the
reference-family sign product, and the quartic theta-quotient determinant
identity with its sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .aronhold import (
    AronholdBasis,
    WeberFamily,
    basis_for_pair,
    family_from_fundamental,
    weber_systems,
)
from .chars import (
    FundamentalSystem,
    QuadForm,
    arf,
    even_forms,
    lift01,
    odd_forms,
    reference_fundamental_system,
    sum3,
    zero_form,
)
from .symplectic import (
    SymplecticMapZ,
    find_sigma,
    lift_sp,
    phi_transform,
    random_symplectic_f2,
    act_f2,
)
from .theta import (
    DEFAULT_CONFIG,
    RiemannMatrix,
    ThetaEvalConfig,
    jacobian_nullwert,
    theta_grad,
    theta_null,
)

__all__ = [
    "TauRejectedError",
    "VerificationError",
    "TauValidation",
    "validate_tau",
    "require_valid_tau",
    "random_tau",
    "random_fundamental_system",
    "BitangentFrame",
    "bitangent_frame",
    "det3",
    "JacobiCheckResult",
    "jacobi_check",
    "s_value",
    "iota_value",
    "iota",
    "weber_sign",
    "sign_transport",
    "WeberResult",
    "weber_verify",
    "reference_family",
    "family_for_pair",
]

DEFAULT_NULL_THRESHOLD = 1e-6
DEFAULT_TOLERANCE = 1e-6


class TauRejectedError(ValueError):
    """Riemann matrix rejected: some even theta constant is numerically zero."""


class VerificationError(RuntimeError):
    """A verified identity missed its tolerance."""


@dataclass(frozen=True)
class TauValidation:
    ok: bool
    min_even_null: float
    vanishing: QuadForm | None
    threshold: float


def validate_tau(tau: RiemannMatrix, cfg: ThetaEvalConfig = DEFAULT_CONFIG,
                 threshold: float = DEFAULT_NULL_THRESHOLD) -> TauValidation:
    """Accept a genus-3 matrix iff all 36 even theta constants stay above the
    threshold in absolute value (rejection names the vanishing form)."""
    if tau.g != 3:
        raise ValueError("validation is defined for genus 3")
    worst = None
    worst_abs = math.inf
    for q in even_forms(3):
        value = abs(theta_null(lift01(q), tau, cfg))
        if value < worst_abs:
            worst_abs = value
            worst = q
    ok = worst_abs > threshold
    return TauValidation(ok, worst_abs, None if ok else worst, threshold)


def require_valid_tau(tau: RiemannMatrix, cfg: ThetaEvalConfig = DEFAULT_CONFIG,
                      threshold: float = DEFAULT_NULL_THRESHOLD) -> None:
    check = validate_tau(tau, cfg, threshold)
    if not check.ok:
        raise TauRejectedError(
            f"even theta constant {check.vanishing} has modulus "
            f"{check.min_even_null:.3e} <= {threshold:.1e}"
        )


def random_tau(rng, scale: float = 0.1, max_tries: int = 50,
               cfg: ThetaEvalConfig = DEFAULT_CONFIG,
               threshold: float = DEFAULT_NULL_THRESHOLD) -> RiemannMatrix:
    """i*I + scale * (random complex symmetric), resampled until validation
    passes and the smallest eigenvalue of the imaginary part stays >= 0.5."""
    for _ in range(max_tries):
        s = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        s = (s + s.T) / 2
        m = 1j * np.eye(3) + scale * s
        m = (m + m.T) / 2
        if np.linalg.eigvalsh(m.imag).min() < 0.5:
            continue
        tau = RiemannMatrix(m)
        if validate_tau(tau, cfg, threshold).ok:
            return tau
    raise RuntimeError(f"no valid matrix found in {max_tries} tries")


def random_fundamental_system(rng) -> FundamentalSystem:
    """Image of the reference system under a random symplectic map."""
    sigma = random_symplectic_f2(3, rng)
    ref = reference_fundamental_system()
    return FundamentalSystem(3, tuple(act_f2(sigma, q) for q in ref))


# ---------------------------------------------------------------------------
# Bitangent coefficient frame.


@dataclass(frozen=True)
class BitangentFrame:
    """Coefficient row vectors of the 28 bitangent lines at a fixed tau.

    With omega1 = identity each row is exactly the theta gradient of the
    canonical lift of the odd form; any invertible omega1 (and any nonzero
    per-row rescaling) cancels in the verified quotients.
    """

    tau: RiemannMatrix
    omega1: np.ndarray
    beta: dict

    def rescaled(self, q: QuadForm, factor: complex) -> "BitangentFrame":
        new = dict(self.beta)
        new[q] = new[q] * factor
        return replace(self, beta=new)


def bitangent_frame(tau: RiemannMatrix, omega1: np.ndarray | None = None,
                    cfg: ThetaEvalConfig = DEFAULT_CONFIG,
                    threshold: float = DEFAULT_NULL_THRESHOLD) -> BitangentFrame:
    """Gradient rows times omega1^-1 for all 28 odd forms at a validated tau."""
    require_valid_tau(tau, cfg, threshold)
    if omega1 is None:
        omega1 = np.eye(3, dtype=complex)
    omega1 = np.asarray(omega1, dtype=complex)
    inv = np.linalg.inv(omega1)
    beta = {}
    for q in odd_forms(3):
        row = theta_grad(lift01(q), tau, cfg) @ inv
        if np.abs(row).max() < 1e-8:
            raise TauRejectedError(f"gradient of odd form {q} is numerically zero")
        beta[q] = row
    return BitangentFrame(tau, omega1, beta)


def det3(frame: BitangentFrame, qa: QuadForm, qb: QuadForm, qc: QuadForm) -> complex:
    """Determinant of three bitangent coefficient rows; antisymmetric."""
    forms = (qa, qb, qc)
    if len(set(forms)) != 3:
        raise ValueError("forms must be distinct")
    for q in forms:
        if arf(q) != 1:
            raise ValueError("determinant rows are indexed by odd forms")
    return complex(np.linalg.det(np.stack([frame.beta[q] for q in forms])))


# ---------------------------------------------------------------------------
# Riemann-Jacobi quotient.


@dataclass(frozen=True)
class JacobiCheckResult:
    system: FundamentalSystem
    s_value: complex
    sign: int
    residual: float


def s_value(system: FundamentalSystem, tau: RiemannMatrix,
            cfg: ThetaEvalConfig = DEFAULT_CONFIG) -> complex:
    """Quotient of the degree-3 gradient determinant of the first three forms
    by the product of the last five theta constants (canonical lifts)."""
    chars = [lift01(q) for q in system.forms]
    num = jacobian_nullwert(chars[:3], tau, cfg)
    den = 1.0 + 0j
    for ch in chars[3:]:
        den *= theta_null(ch, tau, cfg)
    return num / den


def jacobi_check(system: FundamentalSystem, tau: RiemannMatrix,
                 cfg: ThetaEvalConfig = DEFAULT_CONFIG,
                 tol: float = DEFAULT_TOLERANCE) -> JacobiCheckResult:
    """Check that the quotient lands on +1 or -1 within tol."""
    value = s_value(system, tau, cfg)
    sign = 1 if abs(value - 1) <= abs(value + 1) else -1
    residual = abs(value - sign)
    if residual > tol:
        raise VerificationError(
            f"quotient {value} is {residual:.3e} away from {sign:+d} (tol {tol:.1e})"
        )
    return JacobiCheckResult(system, value, sign, residual)


def iota_value(family: WeberFamily, tau: RiemannMatrix,
               cfg: ThetaEvalConfig = DEFAULT_CONFIG) -> complex:
    """Product over the family of numerator quotients over denominator ones."""
    out = 1.0 + 0j
    for num, den in zip(family.numerators, family.denominators):
        out *= s_value(num, tau, cfg) / s_value(den, tau, cfg)
    return out


def iota(family: WeberFamily, tau: RiemannMatrix,
         cfg: ThetaEvalConfig = DEFAULT_CONFIG,
         tol: float = DEFAULT_TOLERANCE) -> int:
    """The +-1 sign carried by a family of eight fundamental systems."""
    value = iota_value(family, tau, cfg)
    sign = 1 if abs(value - 1) <= abs(value + 1) else -1
    residual = abs(value - sign)
    if residual > tol:
        raise VerificationError(
            f"family product {value} is {residual:.3e} away from {sign:+d}"
        )
    return sign


# ---------------------------------------------------------------------------
# Sign determination.


def weber_sign(q_s: QuadForm, q_t: QuadForm) -> int:
    """(-1)^arf(q0 + q_s + q_t) for distinct even forms; symmetric."""
    if q_s.g != q_t.g:
        raise ValueError("genus mismatch")
    if q_s == q_t:
        raise ValueError("forms must be distinct")
    if arf(q_s) != 0 or arf(q_t) != 0:
        raise ValueError("both forms must be even")
    return -1 if arf(sum3(zero_form(q_s.g), q_s, q_t)) else 1


def sign_transport(base: FundamentalSystem,
                   sigma_z: SymplecticMapZ | None = None) -> int:
    """Sign of the eight-system family of `base`, computed exactly.

    Transports the reference family (whose sign is +1) onto the family of
    `base` by an integer symplectic lift and reads the parity of the phase
    exponents of the two last-slot characteristics.
    """
    ref = reference_fundamental_system()
    if sigma_z is None:
        sigma_z = lift_sp(find_sigma(ref, base))
    n8 = lift01(ref.forms[-1])
    n8p = lift01(sum3(ref.forms[0], ref.forms[1], ref.forms[2]))
    delta = 8 * (phi_transform(n8p, sigma_z) - phi_transform(n8, sigma_z))
    if delta.denominator != 1:
        raise RuntimeError("phase exponent difference is not an integer")
    return -1 if int(delta) % 2 else 1


# ---------------------------------------------------------------------------
# The quartic theta-quotient identity.


@dataclass(frozen=True)
class WeberResult:
    q_s: QuadForm
    q_t: QuadForm
    lhs: complex
    rhs: complex
    sign: int
    relative_error: float


def _det_quotient(frame: BitangentFrame, basis: AronholdBasis,
                  q_s: QuadForm) -> complex:
    q1, q2, q3 = basis.forms[:3]
    pair = lambda a, b: sum3(q_s, a, b)
    q12, q13, q23 = pair(q1, q2), pair(q1, q3), pair(q2, q3)
    num = (
        det3(frame, q1, q2, q3)
        * det3(frame, q1, q12, q13)
        * det3(frame, q12, q2, q23)
        * det3(frame, q13, q23, q3)
    )
    den = (
        det3(frame, q23, q13, q12)
        * det3(frame, q23, q3, q2)
        * det3(frame, q3, q13, q1)
        * det3(frame, q2, q1, q12)
    )
    return num / den


def weber_verify(q_s: QuadForm, q_t: QuadForm, tau: RiemannMatrix,
                 cfg: ThetaEvalConfig = DEFAULT_CONFIG,
                 tol: float = DEFAULT_TOLERANCE,
                 basis: AronholdBasis | None = None,
                 frame: BitangentFrame | None = None,
                 omega1: np.ndarray | None = None) -> WeberResult:
    """Compare the fourth power of the theta-constant quotient of two even
    forms against the signed quotient of eight bitangent determinants."""
    if arf(q_s) != 0 or arf(q_t) != 0 or q_s.g != 3 or q_t.g != 3:
        raise ValueError("two even genus-3 forms required")
    if q_s == q_t:
        raise ValueError("forms must be distinct")
    if basis is None:
        basis = basis_for_pair(q_s, q_t)
    else:
        if basis.total() != q_s or sum3(*basis.forms[:3]) != q_t:
            raise ValueError("basis does not match the requested pair")
    if frame is None:
        frame = bitangent_frame(tau, omega1, cfg)
    lhs = (theta_null(lift01(q_s), tau, cfg) / theta_null(lift01(q_t), tau, cfg)) ** 4
    sign = weber_sign(q_s, q_t)
    rhs = sign * _det_quotient(frame, basis, q_s)
    rel = abs(lhs - rhs) / abs(lhs)
    if rel > tol:
        raise VerificationError(
            f"determinant quotient misses theta quotient by {rel:.3e} (tol {tol:.1e})"
        )
    return WeberResult(q_s, q_t, lhs, rhs, sign, rel)


def reference_family() -> WeberFamily:
    """Eight-system family derived from the reference fundamental system."""
    return family_from_fundamental(reference_fundamental_system())


def family_for_pair(q_s: QuadForm, q_t: QuadForm) -> WeberFamily:
    """Eight-system family for a pair of distinct even forms."""
    return weber_systems(basis_for_pair(q_s, q_t), q_t)
