"""Symplectic maps over F2 and over Z, their actions on quadratic forms and
integer characteristics, and the transvection-based lift from Sp(2g, F2) to
Sp(2g, Z).

Matrices act on stacked column vectors (lam; mu).  Integer matrices are kept
as object arrays of Python ints so all arithmetic stays exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chars import (
    F2Vector,
    FundamentalSystem,
    IntCharacteristic,
    QuadForm,
    diff_forms,
)

__all__ = [
    "NotSymplecticError",
    "SymplecticMapF2",
    "SymplecticMapZ",
    "act_f2",
    "act_f2_vec",
    "act_z",
    "phi_transform",
    "find_sigma",
    "lift_sp",
    "transvection_factors",
    "random_symplectic_f2",
    "random_symplectic_z",
]


class NotSymplecticError(ValueError):
    """Matrix does not satisfy the symplectic block relations."""


def _gram(g: int) -> np.ndarray:
    # pairing matrix [[0, I], [-I, 0]] (over F2 the signs are immaterial)
    j = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        j[i, g + i] = 1
        j[g + i, i] = -1
    return j


def _is_symplectic_f2(m: np.ndarray, g: int) -> bool:
    m = m.astype(np.int64)
    a, b = m[:g, :g], m[:g, g:]
    c, d = m[g:, :g], m[g:, g:]
    eye = np.eye(g, dtype=np.int64)
    if ((a.T @ d + c.T @ b) % 2 != eye).any():
        return False
    ac = (a.T @ c) % 2
    bd = (b.T @ d) % 2
    return (ac == ac.T).all() and (bd == bd.T).all()


def _is_symplectic_z(m: np.ndarray, g: int) -> bool:
    a, b = m[:g, :g], m[:g, g:]
    c, d = m[g:, :g], m[g:, g:]
    eye = np.eye(g, dtype=object)
    if (a.T @ d - c.T @ b != eye).any():
        return False
    ac = a.T @ c
    bd = b.T @ d
    return (ac == ac.T).all() and (bd == bd.T).all()


@dataclass(frozen=True)
class SymplecticMapF2:
    """Element of Sp(2g, F2) stored as a 2g x 2g bit matrix."""

    g: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.uint8) % 2
        if m.shape != (2 * self.g, 2 * self.g):
            raise ValueError(f"matrix must be {2 * self.g} x {2 * self.g}")
        if not _is_symplectic_f2(m, self.g):
            raise NotSymplecticError("matrix is not symplectic over F2")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, g: int) -> "SymplecticMapF2":
        return cls(g, np.eye(2 * g, dtype=np.uint8))

    @classmethod
    def transvection(cls, v: F2Vector) -> "SymplecticMapF2":
        """Transvection x -> x + <x,v> v."""
        return cls(v.g, _transvection_matrix_z(v) % 2)

    def blocks(self):
        g = self.g
        m = self.matrix
        return m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:]

    def compose(self, other: "SymplecticMapF2") -> "SymplecticMapF2":
        if self.g != other.g:
            raise ValueError("genus mismatch")
        return SymplecticMapF2(self.g, (self.matrix @ other.matrix) % 2)

    def __matmul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        return (
            isinstance(other, SymplecticMapF2)
            and self.g == other.g
            and (self.matrix == other.matrix).all()
        )


@dataclass(frozen=True)
class SymplecticMapZ:
    """Element of Sp(2g, Z); entries are exact Python ints."""

    g: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(
            [[int(x) for x in row] for row in np.asarray(self.matrix)], dtype=object
        )
        if m.shape != (2 * self.g, 2 * self.g):
            raise ValueError(f"matrix must be {2 * self.g} x {2 * self.g}")
        if not _is_symplectic_z(m, self.g):
            raise NotSymplecticError("matrix is not symplectic over Z")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, g: int) -> "SymplecticMapZ":
        return cls(g, np.eye(2 * g, dtype=object))

    @classmethod
    def transvection(cls, v: F2Vector) -> "SymplecticMapZ":
        """Integer symplectic transvection for a 0/1 direction vector."""
        return cls(v.g, _transvection_matrix_z(v))

    def blocks(self):
        g = self.g
        m = self.matrix
        return m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:]

    def compose(self, other: "SymplecticMapZ") -> "SymplecticMapZ":
        if self.g != other.g:
            raise ValueError("genus mismatch")
        return SymplecticMapZ(self.g, self.matrix @ other.matrix)

    def __matmul__(self, other):
        return self.compose(other)

    def reduce(self) -> SymplecticMapF2:
        return SymplecticMapF2(self.g, (self.matrix % 2).astype(np.uint8))

    def __eq__(self, other):
        return (
            isinstance(other, SymplecticMapZ)
            and self.g == other.g
            and (self.matrix == other.matrix).all()
        )


def _transvection_matrix_z(v: F2Vector) -> np.ndarray:
    g = v.g
    col = np.array([*v.lam, *v.mu], dtype=object).reshape(-1, 1)
    return np.eye(2 * g, dtype=object) - col @ col.T @ _gram(g)


# ---------------------------------------------------------------------------
# Actions.


def act_f2_vec(sigma: SymplecticMapF2, v: F2Vector) -> F2Vector:
    """Image of a vector under the symplectic map."""
    if sigma.g != v.g:
        raise ValueError("genus mismatch")
    g = v.g
    stacked = np.array([*v.lam, *v.mu], dtype=np.uint8)
    out = (sigma.matrix @ stacked) % 2
    return F2Vector(g, tuple(int(x) for x in out[:g]), tuple(int(x) for x in out[g:]))


def act_f2(sigma: SymplecticMapF2, q: QuadForm) -> QuadForm:
    """Pullback action on forms: (sigma . q)(sigma v) = q(v).

    In coordinates the characteristic maps through the reversed block matrix
    [[d, c], [b, a]] plus the diagonal shift (diag(c d^T), diag(a b^T)).
    """
    if sigma.g != q.g:
        raise ValueError("genus mismatch")
    a, b, c, d = (blk.astype(np.int64) for blk in sigma.blocks())
    eps = np.array(q.eps, dtype=np.int64)
    eps_p = np.array(q.eps_prime, dtype=np.int64)
    top = (d @ eps + c @ eps_p + np.diag(c @ d.T)) % 2
    bot = (b @ eps + a @ eps_p + np.diag(a @ b.T)) % 2
    return QuadForm(q.g, tuple(int(x) for x in top), tuple(int(x) for x in bot))


def act_z(sigma: SymplecticMapZ, q: IntCharacteristic) -> IntCharacteristic:
    """Integer action [[d, -c], [-b, a]] plus the diagonal shift.

    Reduces mod 2 to the F2 action on the underlying quadratic forms.
    """
    if sigma.g != q.g:
        raise ValueError("genus mismatch")
    a, b, c, d = sigma.blocks()
    eps = np.array(q.eps, dtype=object)
    eps_p = np.array(q.eps_prime, dtype=object)
    top = d @ eps - c @ eps_p + np.diag(c @ d.T)
    bot = -b @ eps + a @ eps_p + np.diag(a @ b.T)
    return IntCharacteristic(q.g, tuple(int(x) for x in top), tuple(int(x) for x in bot))


def phi_transform(q: IntCharacteristic, sigma: SymplecticMapZ) -> Fraction:
    """Exact characteristic-dependent phase exponent of the theta
    transformation under sigma; a rational with denominator dividing 8.

    Only parities of 8*phi are consumed downstream, which makes the result
    insensitive to the transpose ambiguity of the doubled cross terms.
    """
    if sigma.g != q.g:
        raise ValueError("genus mismatch")
    a, b, c, d = sigma.blocks()
    eps = np.array(q.eps, dtype=object)
    eps_p = np.array(q.eps_prime, dtype=object)
    shift = np.diag(a @ b.T)
    t1 = int(eps @ (b.T @ d) @ eps)
    t2 = int(eps @ (b.T @ c) @ eps_p)
    t3 = int(eps_p @ (a.T @ c) @ eps_p)
    t4 = int(shift @ (d.T @ eps - c @ eps_p))
    return Fraction(-(t1 - 2 * t2 + t3 - 2 * t4), 8)


# ---------------------------------------------------------------------------
# Constructive solve: map one fundamental system onto another.


def _gf2_inv(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    work = np.concatenate([m.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, n):
            if work[r, col]:
                piv = r
                break
        if piv is None:
            raise np.linalg.LinAlgError("matrix is singular over F2")
        work[[row, piv]] = work[[piv, row]]
        for r in range(n):
            if r != row and work[r, col]:
                work[r] ^= work[row]
        row += 1
    return work[:, n:]


def _stack(v: F2Vector) -> np.ndarray:
    return np.array([*v.lam, *v.mu], dtype=np.uint8)


def find_sigma(source: FundamentalSystem, target: FundamentalSystem) -> SymplecticMapF2:
    """Symplectic map sending the source fundamental system onto the target,
    element by element.

    Built by solving the linear system on the azygetic vector bases formed by
    differences with the last form; equal Gram matrices make the solution
    symplectic, and the composition law forces the last form to follow.  The
    element-wise mapping is verified before returning.
    """
    if source.g != target.g:
        raise ValueError("genus mismatch")
    g = source.g
    u = np.stack(
        [_stack(diff_forms(q, source.forms[-1])) for q in source.forms[: 2 * g]], axis=1
    )
    w = np.stack(
        [_stack(diff_forms(q, target.forms[-1])) for q in target.forms[: 2 * g]], axis=1
    )
    jf2 = np.abs(_gram(g)).astype(np.uint8)
    gram_u = (u.T @ jf2 @ u) % 2
    gram_w = (w.T @ jf2 @ w) % 2
    if (gram_u != gram_w).any():
        raise RuntimeError("azygetic Gram matrices differ; systems incompatible")
    sigma = SymplecticMapF2(g, (w @ _gf2_inv(u)) % 2)
    for q_src, q_tgt in zip(source.forms, target.forms):
        if act_f2(sigma, q_src) != q_tgt:
            raise RuntimeError("constructed map fails to match the systems")
    return sigma


# ---------------------------------------------------------------------------
# Transvection decomposition and the lift to Sp(2g, Z).


def _all_vectors(g: int):
    for bits in itertools.product((0, 1), repeat=2 * g):
        if any(bits):
            yield F2Vector(g, bits[:g], bits[g:])


def _pair_bits(x: np.ndarray, y: np.ndarray, g: int) -> int:
    return (int(x[:g] @ y[g:]) + int(x[g:] @ y[:g])) & 1


def _find_bridge(g: int, conditions) -> F2Vector:
    # smallest vector z with <z, vec> = parity for every (vec, parity) given
    for z in _all_vectors(g):
        zs = _stack(z)
        if all(_pair_bits(zs, vec, g) == par for vec, par in conditions):
            return z
    raise RuntimeError("no bridge vector found; decomposition failed")


def _steps_to(g: int, x: np.ndarray, t: np.ndarray, extra) -> list[F2Vector]:
    """Transvection directions mapping column x to column t while pairing
    trivially with everything in `extra` (pairs of (vector, parity))."""
    if (x == t).all():
        return []
    if _pair_bits(x, t, g) == 1:
        v = (x ^ t).astype(np.uint8)
        return [F2Vector(g, tuple(v[:g]), tuple(v[g:]))]
    conditions = [(x, 1), (t, 1)] + list(extra)
    z = _stack(_find_bridge(g, conditions))
    v1 = (x ^ z).astype(np.uint8)
    v2 = (z ^ t).astype(np.uint8)
    return [
        F2Vector(g, tuple(v1[:g]), tuple(v1[g:])),
        F2Vector(g, tuple(v2[:g]), tuple(v2[g:])),
    ]


def transvection_factors(sigma: SymplecticMapF2) -> list[F2Vector]:
    """Direction vectors v_1..v_k with sigma = T(v_1) ... T(v_k) over F2."""
    g = sigma.g
    work = sigma.matrix.copy()
    recorded: list[F2Vector] = []

    def apply(v: F2Vector) -> None:
        nonlocal work
        t = _transvection_matrix_z(v) % 2
        work = (t.astype(np.uint8) @ work) % 2
        recorded.append(v)

    for i in range(g):
        e_i = np.zeros(2 * g, dtype=np.uint8)
        e_i[i] = 1
        f_i = np.zeros(2 * g, dtype=np.uint8)
        f_i[g + i] = 1
        fixed = []
        for j in range(i):
            for pos in (j, g + j):
                unit = np.zeros(2 * g, dtype=np.uint8)
                unit[pos] = 1
                fixed.append((unit, 0))
        for v in _steps_to(g, work[:, i].copy(), e_i, fixed):
            apply(v)
        # bridge vectors for the f-column must also pair 1 with e_i so the
        # resulting transvection directions pair 0 with it
        for v in _steps_to(g, work[:, g + i].copy(), f_i, fixed + [(e_i, 1)]):
            apply(v)

    if (work != np.eye(2 * g, dtype=np.uint8)).any():
        raise RuntimeError("transvection decomposition did not reach identity")
    # T(v)^2 = id over F2, so sigma is the recorded product in the same order
    return recorded


def lift_sp(sigma: SymplecticMapF2) -> SymplecticMapZ:
    """Integer symplectic lift of an F2 symplectic map.

    Decomposes into transvections over F2 and multiplies their integer
    transvection matrices; both the block relations over Z and the mod-2
    round trip are verified before returning.
    """
    factors = transvection_factors(sigma)
    lifted = SymplecticMapZ.identity(sigma.g)
    for v in factors:
        lifted = lifted @ SymplecticMapZ.transvection(v)
    if lifted.reduce() != sigma:
        raise RuntimeError("integer lift does not reduce to the input map")
    return lifted


# ---------------------------------------------------------------------------
# Random elements (seeded, for tests and batch verification).


def _random_direction(g: int, rng) -> F2Vector:
    while True:
        bits = rng.integers(0, 2, size=2 * g)
        if bits.any():
            return F2Vector(g, tuple(int(b) for b in bits[:g]),
                            tuple(int(b) for b in bits[g:]))


def random_symplectic_f2(g: int, rng, n_factors: int = 20) -> SymplecticMapF2:
    """Product of random transvections over F2."""
    out = SymplecticMapF2.identity(g)
    for _ in range(n_factors):
        out = out @ SymplecticMapF2.transvection(_random_direction(g, rng))
    return out


def random_symplectic_z(g: int, rng, n_factors: int = 12) -> SymplecticMapZ:
    """Product of random integer transvections (exact arithmetic)."""
    out = SymplecticMapZ.identity(g)
    for _ in range(n_factors):
        out = out @ SymplecticMapZ.transvection(_random_direction(g, rng))
    return out
