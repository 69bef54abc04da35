"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import itertools
import math

import numpy as np

from thetachar import (
    AronholdBasis,
    IntCharacteristic,
    RiemannMatrix,
    ThetaEvalConfig,
    act_z,
    aronhold_to_fundamental,
    arf,
    arf_sum3,
    auto_radius,
    enumerate_aronhold_sets,
    eval_at_formsum,
    even_count,
    even_forms,
    iota_value,
    is_aronhold,
    is_azygetic,
    is_fundamental,
    jacobi_check,
    lift01,
    odd_count,
    odd_forms,
    phi_transform,
    random_fundamental_system,
    random_symplectic_z,
    reference_family,
    shift_system,
    sum3,
    theta,
    theta_grad,
    theta_null,
    weber_sign,
    weber_verify,
)
from thetachar.chars import all_forms, form_index
from thetachar.theta import DEFAULT_CONFIG
from thetachar.verify import bitangent_frame

from test_theta import direct_theta_g1


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, detail


# -- 1 -----------------------------------------------------------------------


def test_criterion_1_characteristic_counts():
    ok = True
    for g in (1, 2, 3):
        even = sum(1 for q in all_forms(g) if arf(q) == 0)
        odd = 4**g - even
        ok &= even == even_count(g) == 2 ** (g - 1) * (2**g + 1)
        ok &= odd == odd_count(g) == 2 ** (g - 1) * (2**g - 1)
    _report(1, ok, "even/odd characteristic counts match the closed forms at g=1,2,3")


# -- 2 -----------------------------------------------------------------------


def test_criterion_2_composition_law_exhaustive():
    # all 64^3 triples at genus 3, vectorized over packed characteristics
    idx = np.arange(64)
    eps = (idx[:, None] >> np.arange(3)) & 1
    epsp = (idx[:, None] >> (3 + np.arange(3))) & 1
    arfs = (eps * epsp).sum(1) % 2

    i, j, k = (a.reshape(-1) for a in np.meshgrid(idx, idx, idx, indexing="ij"))
    ei, ej, ek = eps[i], eps[j], eps[k]
    pi_, pj, pk = epsp[i], epsp[j], epsp[k]

    arf_sum = (((ei ^ ej ^ ek) * (pi_ ^ pj ^ pk)).sum(1)) % 2
    pair = (((pi_ ^ pj) * (ei ^ ek)).sum(1) + ((ei ^ ej) * (pi_ ^ pk)).sum(1)) % 2
    first = (arfs[i] + arfs[j] + arfs[k] + pair) % 2
    fails_first = int((arf_sum != first).sum())

    lam = pj ^ pk
    mu = ej ^ ek
    value = ((ei * lam).sum(1) + (pi_ * mu).sum(1) + (lam * mu).sum(1)) % 2
    second = (arf_sum + arfs[i]) % 2
    fails_second = int((value != second).sum())

    # tie the vectorized check to the library operations on a sample
    rng = np.random.default_rng(2)
    forms = all_forms(3)
    fails_api = 0
    for _ in range(500):
        a, b, c = (forms[t] for t in rng.integers(0, 64, 3))
        if arf_sum3(a, b, c) != arf(sum3(a, b, c)):
            fails_api += 1
        if eval_at_formsum(a, b, c) != (arf_sum3(a, b, c) + arf(a)) % 2:
            fails_api += 1

    ok = fails_first == fails_second == fails_api == 0
    _report(2, ok, f"composition-law identities hold on all 64^3 triples "
                   f"(failures: {fails_first}/{fails_second}/{fails_api})")


# -- 3 -----------------------------------------------------------------------


def test_criterion_3_aronhold_enumeration():
    odd = odd_forms(3)
    n = len(odd)

    # independent oracle: scan every 7-subset of the 28 odd forms, with a
    # flat-table triple prefilter and the full definition check on survivors
    table = bytearray(n**3)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if arf_sum3(odd[a], odd[b], odd[c]) == 0:
                    table[(a * n + b) * n + c] = 1
    triple_slots = list(itertools.combinations(range(7), 3))
    oracle_hits = []
    for combo in itertools.combinations(range(n), 7):
        for a, b, c in triple_slots:
            if not table[(combo[a] * n + combo[b]) * n + combo[c]]:
                break
        else:
            if is_aronhold([odd[t] for t in combo]):
                oracle_hits.append(tuple(odd[t] for t in combo))

    sets = enumerate_aronhold_sets()
    ok = len(oracle_hits) == len(sets) == 288
    key = lambda s: tuple(form_index(q) for q in s)
    ok &= sorted(oracle_hits, key=key) == sorted((tuple(s) for s in sets), key=key)

    azygetic_ok = all(is_azygetic(s) for s in sets)
    construction_ok = True
    for s in sets:
        basis = AronholdBasis(3, s)
        system = aronhold_to_fundamental(basis)
        if not is_fundamental(system.forms):
            construction_ok = False
            break
        for i in range(3):
            if not is_fundamental(shift_system(system, i).forms):
                construction_ok = False
                break

    ok &= azygetic_ok and construction_ok
    _report(3, ok, f"brute-force oracle and enumeration both find 288 Aronhold "
                   f"sets; all azygetic; all derived systems fundamental")


# -- 4 -----------------------------------------------------------------------


def test_criterion_4_genus1_jacobi():
    worst = 0.0
    for t in (1j, 2j, 0.3 + 1.1j):
        tau = RiemannMatrix(np.array([[t]]))
        one_one = IntCharacteristic(1, (1,), (1,))
        lhs = theta_grad(one_one, tau)[0] / math.pi
        rhs = -(
            theta_null(IntCharacteristic(1, (0,), (0,)), tau)
            * theta_null(IntCharacteristic(1, (1,), (0,)), tau)
            * theta_null(IntCharacteristic(1, (0,), (1,)), tau)
        )
        worst = max(worst, abs(lhs - rhs))
    _report(4, worst < 1e-10, f"genus-1 derivative identity, worst residual {worst:.2e}")


# -- 5 -----------------------------------------------------------------------


def test_criterion_5_quotients_on_random_systems(tau1, tau2):
    rng = np.random.default_rng(42)
    worst = 0.0
    sign_stable = True
    for _ in range(50):
        system = random_fundamental_system(rng)
        r1 = jacobi_check(system, tau1)
        r2 = jacobi_check(system, tau2)
        worst = max(worst, r1.residual, r2.residual)
        sign_stable &= r1.sign == r2.sign
    ok = worst < 1e-6 and sign_stable
    _report(5, ok, f"50 random systems: worst residual {worst:.2e}, "
                   f"signs stable across the two shipped matrices: {sign_stable}")


# -- 6 -----------------------------------------------------------------------


def test_criterion_6_reference_family_sign(tau1):
    value = iota_value(reference_family(), tau1)
    residual = abs(value - 1)
    _report(6, residual < 1e-6,
            f"reference eight-system family product = +1, residual {residual:.2e}")


# -- 7 -----------------------------------------------------------------------


def test_criterion_7_quartic_quotient_identity(tau1, tau2):
    rng = np.random.default_rng(7)
    evens = even_forms(3)
    pairs = []
    while len(pairs) < 10:
        i, j = rng.integers(0, 36, 2)
        if i != j and (i, j) not in pairs:
            pairs.append((i, j))
    worst = 0.0
    signs_ok = True
    for tau in (tau1, tau2):
        frame = bitangent_frame(tau)
        for i, j in pairs:
            res = weber_verify(evens[i], evens[j], tau, frame=frame)
            worst = max(worst, res.relative_error)
            signs_ok &= res.sign == weber_sign(evens[i], evens[j])
    ok = worst < 1e-6 and signs_ok
    _report(7, ok, f"10 pairs x 2 matrices: worst relative error {worst:.2e}, "
                   f"signs match the closed form: {signs_ok}")


# -- 8 -----------------------------------------------------------------------


def test_criterion_8_phase_parity_exact():
    rng = np.random.default_rng(8)
    zero = IntCharacteristic(3, (0, 0, 0), (0, 0, 0))
    canonical = IntCharacteristic(3, (1, 1, 1), (1, 0, 1))
    evens = even_forms(3)
    failures = 0
    for trial in range(1000):
        sigma = random_symplectic_z(3, rng)
        if trial % 2 == 0:
            probe = canonical
        else:
            probe = lift01(evens[rng.integers(0, 36)])
        delta = 8 * (phi_transform(probe, sigma) - phi_transform(zero, sigma))
        if delta.denominator != 1:
            failures += 1
            continue
        img0 = act_z(sigma, zero)
        img1 = act_z(sigma, probe)
        total = IntCharacteristic(
            3,
            tuple(x + y for x, y in zip(img0.eps, img1.eps)),
            tuple(x + y for x, y in zip(img0.eps_prime, img1.eps_prime)),
        )
        if int(delta) % 2 != arf(total.reduce()):
            failures += 1
    _report(8, failures == 0,
            f"phase-exponent parity identity exact on 1000 random maps "
            f"({failures} failures)")


# -- 9 -----------------------------------------------------------------------


def test_criterion_9_numerical_hygiene(tau1):
    rng = np.random.default_rng(9)
    tau = tau1.entries
    checks = []

    # parity under z -> -z
    worst = 0.0
    for _ in range(10):
        q = all_forms(3)[rng.integers(0, 64)]
        z = rng.standard_normal(3) * 0.2 + 1j * rng.standard_normal(3) * 0.1
        worst = max(worst, abs(
            theta(lift01(q), -z, tau1) - (-1) ** arf(q) * theta(lift01(q), z, tau1)
        ))
    checks.append(("parity", worst, 1e-8))

    # quasi-periodicity under half-period shifts
    worst = 0.0
    for _ in range(10):
        eps = rng.integers(0, 2, 3)
        epsp = rng.integers(0, 2, 3)
        lam = rng.integers(-2, 3, 3)
        mu = rng.integers(-2, 3, 3)
        z = rng.standard_normal(3) * 0.1 + 1j * rng.standard_normal(3) * 0.05
        shift = (lam + tau @ mu) / 2
        factor = np.exp(2j * np.pi * (
            -(mu @ (epsp + lam)) / 4 - (mu @ z) / 2 - (mu @ tau @ mu) / 8
        ))
        lhs = theta(IntCharacteristic(3, tuple(eps), tuple(epsp)), z + shift, tau1)
        rhs = factor * theta(
            IntCharacteristic(3, tuple(eps + mu), tuple(epsp + lam)), z, tau1
        )
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    checks.append(("quasi-periodicity", worst, 1e-8))

    # characteristic shifts by even integers only flip a sign
    worst = 0.0
    for _ in range(10):
        eps = rng.integers(0, 2, 3)
        epsp = rng.integers(0, 2, 3)
        m = rng.integers(-2, 3, 3)
        n = rng.integers(-2, 3, 3)
        base = theta(IntCharacteristic(3, tuple(eps), tuple(epsp)), np.zeros(3), tau1)
        shifted = theta(
            IntCharacteristic(3, tuple(eps + 2 * m), tuple(epsp + 2 * n)),
            np.zeros(3), tau1,
        )
        worst = max(worst, abs(shifted - (-1) ** int(n @ eps) * base))
    checks.append(("characteristic shift sign", worst, 1e-10))

    # diagonal matrices factor into scalar series
    taus = (1.1j, 0.3 + 1.2j, -0.2 + 0.9j)
    diag = RiemannMatrix(np.diag(taus))
    worst = 0.0
    for q in (even_forms(3)[3], even_forms(3)[25], odd_forms(3)[10]):
        value = theta(lift01(q), np.zeros(3), diag)
        oracle = 1.0 + 0j
        for i in range(3):
            oracle *= direct_theta_g1(q.eps[i], q.eps_prime[i], 0.0, taus[i])
        worst = max(worst, abs(value - oracle))
    checks.append(("diagonal factorization", worst, 1e-10))

    # gradients against central differences
    h = 1e-5
    worst = 0.0
    for q in odd_forms(3)[:3]:
        grad = theta_grad(lift01(q), tau1)
        for i in range(3):
            step = np.zeros(3, dtype=complex)
            step[i] = h
            fd = (theta(lift01(q), step, tau1) - theta(lift01(q), -step, tau1)) / (2 * h)
            worst = max(worst, abs(fd - grad[i]) / abs(grad[i]))
    checks.append(("gradient vs finite differences", worst, 1e-6))

    # doubling the lattice radius barely moves anything
    radius = auto_radius(tau1.y_min, 3, DEFAULT_CONFIG.target_tail)
    cfg1 = ThetaEvalConfig(radius=radius)
    cfg2 = ThetaEvalConfig(radius=2 * radius)
    worst = 0.0
    for q in even_forms(3)[:8]:
        worst = max(worst, abs(
            theta_null(lift01(q), tau1, cfg1) - theta_null(lift01(q), tau1, cfg2)
        ))
    checks.append(("radius doubling", worst, 1e-14))

    ok = all(value < bound for _, value, bound in checks)
    detail = ", ".join(f"{name} {value:.1e}<{bound:.0e}" for name, value, bound in checks)
    _report(9, ok, detail)
