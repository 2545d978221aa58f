"""Tests for kernel reconstruction, constraints, and the four-current response."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import floats

from ohmcov import (
    NATURAL,
    FourCurrent,
    FrameMismatch,
    FullResponse4,
    PotentialSet,
    StaticFrequency,
    UnitsConfig,
    Wavevector4,
    apply_response,
    chi_from_sigma,
    constraint_residual,
    gauge_shift,
    reconstruct_full,
    sigma_from_chi,
)

from conftest import rand_sigma

KW = Wavevector4(1.0, np.array([1.0, 0.0, 0.0]))


def rand_potential(rng, kw):
    z = rng.uniform(-1.0, 1.0, 4) + 1j * rng.uniform(-1.0, 1.0, 4)
    return PotentialSet(z[0], z[1:], kw)


def test_chi_from_sigma_identity():
    np.testing.assert_array_equal(chi_from_sigma(np.eye(3), 1.0), 1j * np.eye(3))
    np.testing.assert_array_equal(chi_from_sigma(np.eye(3), 2.0), 2j * np.eye(3))


def test_chi_from_sigma_hand_value():
    sigma = np.zeros((3, 3), dtype=complex)
    sigma[0, 1] = 3.0 - 4.0j
    chi = chi_from_sigma(sigma, 0.5)
    assert chi[0, 1] == 2.0 + 1.5j


def test_static_frequency_rejected():
    for omega in (0.0, 5e-15, -5e-15):
        with pytest.raises(StaticFrequency):
            chi_from_sigma(np.eye(3), omega)
        with pytest.raises(StaticFrequency):
            sigma_from_chi(np.eye(3), omega)
        with pytest.raises(StaticFrequency):
            reconstruct_full(np.eye(3), Wavevector4(omega, np.zeros(3)))


@given(floats(0.1, 10.0))
def test_chi_sigma_round_trip(omega):
    rng = np.random.default_rng(3)
    sigma = rand_sigma(rng)
    back = sigma_from_chi(chi_from_sigma(sigma, omega), omega)
    assert np.max(np.abs(back - sigma)) < 1e-15


def test_reconstruct_identity_kernel():
    full = reconstruct_full(np.eye(3), KW)
    m = full.entries
    assert m[0, 0] == -1.0
    assert m[0, 1] == 1.0
    assert m[1, 0] == -1.0
    np.testing.assert_array_equal(m[1:, 1:], np.eye(3))
    # k has no y or z component, so the rest of the border vanishes
    np.testing.assert_array_equal(m[0, 2:], np.zeros(2))
    np.testing.assert_array_equal(m[2:, 0], np.zeros(2))


def test_reconstruct_zero_k_leaves_border_empty(rng):
    sigma = rand_sigma(rng)
    full = reconstruct_full(sigma, Wavevector4(2.0, np.zeros(3)))
    np.testing.assert_array_equal(full.entries[0, :], np.zeros(4))
    np.testing.assert_array_equal(full.entries[1:, 0], np.zeros(3))
    np.testing.assert_array_equal(full.entries[1:, 1:], sigma)


def test_reconstruct_satisfies_constraints(rng):
    for _ in range(200):
        kw = Wavevector4(rng.uniform(0.1, 10.0), rng.uniform(-5.0, 5.0, 3))
        full = reconstruct_full(rand_sigma(rng), kw)
        r_left, r_right = constraint_residual(full)
        assert r_left < 1e-13
        assert r_right < 1e-13


def test_reconstruct_under_other_units(rng):
    units = UnitsConfig(2.0)
    kw = Wavevector4(3.0, np.array([0.4, -0.2, 0.9]))
    full = reconstruct_full(rand_sigma(rng), kw, units)
    r_left, r_right = constraint_residual(full, units)
    assert max(r_left, r_right) < 1e-13


def test_constraint_residual_detects_perturbation(rng):
    full = reconstruct_full(rand_sigma(rng), KW)
    bad = full.entries.copy()
    bad[0, 0] += 1.0
    r_left, r_right = constraint_residual(FullResponse4(bad, KW))
    assert r_left > 1e-3
    assert r_right > 1e-3


def test_constraint_residual_zero_kernel():
    full = FullResponse4(np.zeros((4, 4), dtype=complex), KW)
    assert constraint_residual(full) == (0.0, 0.0)


def test_apply_response_identity_kernel_example():
    full = reconstruct_full(np.eye(3), KW)
    pot = PotentialSet(0.0, np.array([1.0, 0.0, 0.0], dtype=complex), KW)
    out = apply_response(full, pot)
    np.testing.assert_array_equal(out.jvec, np.array([1.0, 0.0, 0.0], dtype=complex))
    assert out.rho == 1.0
    # continuity for this point: omega rho = k . j
    assert out.at.omega * out.rho == np.dot(KW.kvec, out.jvec)


def test_apply_response_matches_brute_force(rng):
    kw = Wavevector4(1.7, np.array([0.3, -1.1, 0.6]))
    full = reconstruct_full(rand_sigma(rng), kw)
    pot = rand_potential(rng, kw)
    out = apply_response(full, pot)
    a4 = np.concatenate(([pot.phi / NATURAL.c], pot.avec))
    j4 = np.zeros(4, dtype=complex)
    for mu in range(4):
        for nu in range(4):
            j4[mu] += full.entries[mu, nu] * a4[nu]
    np.testing.assert_allclose(out.four(NATURAL), j4, rtol=1e-14, atol=1e-16)


def test_apply_response_zero_potential():
    full = reconstruct_full(np.eye(3), KW)
    pot = PotentialSet(0.0, np.zeros(3, dtype=complex), KW)
    out = apply_response(full, pot)
    np.testing.assert_array_equal(out.jvec, np.zeros(3))
    assert out.rho == 0.0


def test_apply_response_kills_pure_gauge(rng):
    kw = Wavevector4(2.3, np.array([1.2, 0.1, -0.4]))
    full = reconstruct_full(rand_sigma(rng), kw)
    f = 0.8 - 0.3j
    pot = PotentialSet(1j * kw.omega * f, 1j * kw.kvec * f, kw)
    out = apply_response(full, pot)
    scale = np.max(np.abs(full.entries)) * max(abs(f), 1.0)
    assert np.max(np.abs(out.four(NATURAL))) < 1e-13 * scale


def test_apply_response_frame_mismatch(rng):
    full = reconstruct_full(rand_sigma(rng), KW)
    pot = rand_potential(rng, Wavevector4(2.0, np.array([1.0, 0.0, 0.0])))
    with pytest.raises(FrameMismatch):
        apply_response(full, pot)


def test_gauge_shift_zero_and_additivity(rng):
    pot = rand_potential(rng, KW)
    same = gauge_shift(pot, 0.0)
    assert same.phi == pot.phi
    np.testing.assert_array_equal(same.avec, pot.avec)
    f1, f2 = 0.4 + 0.2j, -1.1 + 0.9j
    twice = gauge_shift(gauge_shift(pot, f1), f2)
    once = gauge_shift(pot, f1 + f2)
    assert twice.phi == pytest.approx(once.phi, rel=1e-15)
    np.testing.assert_allclose(twice.avec, once.avec, rtol=1e-15)


def test_gauge_invariance_of_response(rng):
    for _ in range(100):
        kw = Wavevector4(rng.uniform(0.1, 10.0), rng.uniform(-5.0, 5.0, 3))
        full = reconstruct_full(rand_sigma(rng), kw)
        pot = rand_potential(rng, kw)
        f = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        base = apply_response(full, pot).four(NATURAL)
        shifted = apply_response(full, gauge_shift(pot, f)).four(NATURAL)
        scale = np.max(np.abs(base)) + np.max(np.abs(pot.four(NATURAL))) + 1e-14
        assert np.max(np.abs(shifted - base)) / scale < 1e-13


def test_continuity_of_response_current(rng):
    for _ in range(100):
        kw = Wavevector4(rng.uniform(0.1, 10.0), rng.uniform(-5.0, 5.0, 3))
        full = reconstruct_full(rand_sigma(rng), kw)
        out = apply_response(full, rand_potential(rng, kw))
        lhs = kw.omega * out.rho
        rhs = np.dot(kw.kvec, out.jvec)
        scale = abs(kw.omega) * abs(out.rho) + float(np.abs(kw.kvec) @ np.abs(out.jvec)) + 1e-14
        assert abs(lhs - rhs) / scale < 1e-12


def test_four_vector_packing_with_c():
    units = UnitsConfig(2.0)
    kw = Wavevector4(1.0, np.array([0.2, 0.0, 0.0]))
    pot = PotentialSet(3.0 + 1.0j, np.array([1.0, 2.0, 3.0], dtype=complex), kw)
    np.testing.assert_array_equal(pot.four(units), [1.5 + 0.5j, 1.0, 2.0, 3.0])
    cur = FourCurrent(0.5j, np.array([1.0, 0.0, 0.0], dtype=complex), kw)
    np.testing.assert_array_equal(cur.four(units), [1.0j, 1.0, 0.0, 0.0])
