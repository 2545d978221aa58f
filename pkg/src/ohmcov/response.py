"""Four-dimensional response kernel built from a spatial conductivity.

The kernel chi carries one upper and one lower index, chi^mu_nu, and maps
a four-potential to an induced four-current, j^mu = chi^mu_nu A^nu.  Its
spatial 3x3 block determines everything else: current conservation and
gauge invariance pin the first row and column to

    chi^0_0 = -(c^2/omega^2) k^T chi k        chi^0_l = (c/omega) (k^T chi)_l
    chi^j_0 = -(c/omega) (chi k)_j            chi^j_l = chi_jl

so that k_mu chi^mu_nu = 0 and chi^mu_nu k^nu = 0 with k_mu = (-omega/c, k)
and k^nu = (omega/c, k).

Fourier convention: fields go like exp(+i k.x - i omega t), so spatial
derivatives map to +i k, time derivatives to -i omega, and the spatial
block relates to the conductivity through chi = i omega sigma.

Spatial tensors are plain complex (3, 3) ndarrays throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FrameMismatch, InvariantViolation, StaticFrequency
from .minkowski import NATURAL, UnitsConfig, Wavevector4

__all__ = [
    "STATIC_OMEGA_FLOOR",
    "FullResponse4",
    "PotentialSet",
    "FourCurrent",
    "chi_from_sigma",
    "sigma_from_chi",
    "reconstruct_full",
    "constraint_residual",
    "apply_response",
    "gauge_shift",
]

# Below this |omega| the 1/omega formulas are refused, not regularized.
STATIC_OMEGA_FLOOR = 1e-14


def _spatial(tensor: np.ndarray) -> np.ndarray:
    t = np.asarray(tensor, dtype=complex)
    if t.shape != (3, 3):
        raise InvariantViolation(f"spatial tensor must be 3x3, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise InvariantViolation("spatial tensor entries must be finite")
    return t


def require_dynamic(omega: float) -> None:
    """Reject frequencies too close to zero for 1/omega to mean anything."""
    if abs(omega) < STATIC_OMEGA_FLOOR:
        raise StaticFrequency(f"|omega| = {abs(omega)!r} is below the static floor {STATIC_OMEGA_FLOOR:.1e}")


def chi_from_sigma(sigma: np.ndarray, omega: float) -> np.ndarray:
    """Spatial response block chi = i omega sigma."""
    require_dynamic(omega)
    return 1j * omega * _spatial(sigma)


def sigma_from_chi(chi_spatial: np.ndarray, omega: float) -> np.ndarray:
    """Conductivity sigma = chi / (i omega), the inverse of chi_from_sigma."""
    require_dynamic(omega)
    return _spatial(chi_spatial) / (1j * omega)


@dataclass(frozen=True)
class FullResponse4:
    """4x4 response kernel chi^mu_nu together with its sample point.

    Construction does not force the row/column constraints; they hold for
    every kernel built by reconstruct_full, and constraint_residual
    measures how badly an arbitrary kernel breaks them.
    """

    entries: np.ndarray
    at: Wavevector4

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (4, 4):
            raise InvariantViolation(f"response kernel must be 4x4, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvariantViolation("response kernel entries must be finite")
        object.__setattr__(self, "entries", m)

    @property
    def spatial(self) -> np.ndarray:
        """The 3x3 block chi^j_l."""
        return self.entries[1:, 1:]


def reconstruct_full(chi_spatial: np.ndarray, kw: Wavevector4, units: UnitsConfig = NATURAL) -> FullResponse4:
    """Extend a spatial block to the full kernel fixed by current
    conservation and gauge invariance."""
    require_dynamic(kw.omega)
    chi = _spatial(chi_spatial)
    k = kw.kvec
    ratio = units.c / kw.omega
    chi_k = chi @ k
    kt_chi = k @ chi
    full = np.empty((4, 4), dtype=complex)
    full[0, 0] = -(ratio**2) * (k @ chi_k)
    full[0, 1:] = ratio * kt_chi
    full[1:, 0] = -ratio * chi_k
    full[1:, 1:] = chi
    return FullResponse4(full, kw)


def constraint_residual(full: FullResponse4, units: UnitsConfig = NATURAL) -> tuple[float, float]:
    """Max-abs residuals of (k_mu chi^mu_nu, chi^mu_nu k^nu), normalized
    by the largest kernel entry.  Both are zero for a conserving, gauge
    invariant kernel; (0, 0) is returned for the zero kernel."""
    m = full.entries
    norm = float(np.max(np.abs(m)))
    if norm == 0.0:
        return (0.0, 0.0)
    w_over_c = full.at.omega / units.c
    k_lower = np.concatenate(([-w_over_c], full.at.kvec))
    k_upper = np.concatenate(([w_over_c], full.at.kvec))
    r_left = float(np.max(np.abs(k_lower @ m))) / norm
    r_right = float(np.max(np.abs(m @ k_upper))) / norm
    return (r_left, r_right)


@dataclass(frozen=True)
class PotentialSet:
    """Scalar and vector potential amplitudes at one sample point."""

    phi: complex
    avec: np.ndarray
    at: Wavevector4

    def __post_init__(self) -> None:
        phi = complex(self.phi)
        a = np.asarray(self.avec, dtype=complex)
        if a.shape != (3,):
            raise InvariantViolation(f"vector potential must be a 3-vector, got shape {a.shape}")
        if not (np.isfinite(phi.real) and np.isfinite(phi.imag) and np.all(np.isfinite(a))):
            raise InvariantViolation("potential amplitudes must be finite")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "avec", a)

    def four(self, units: UnitsConfig = NATURAL) -> np.ndarray:
        """Contravariant components (phi/c, A)."""
        return np.concatenate(([self.phi / units.c], self.avec))


@dataclass(frozen=True)
class FourCurrent:
    """Charge and current density amplitudes; the four-vector is (c rho, j)."""

    rho: complex
    jvec: np.ndarray
    at: Wavevector4

    def __post_init__(self) -> None:
        rho = complex(self.rho)
        j = np.asarray(self.jvec, dtype=complex)
        if j.shape != (3,):
            raise InvariantViolation(f"current density must be a 3-vector, got shape {j.shape}")
        if not (np.isfinite(rho.real) and np.isfinite(rho.imag) and np.all(np.isfinite(j))):
            raise InvariantViolation("current amplitudes must be finite")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "jvec", j)

    def four(self, units: UnitsConfig = NATURAL) -> np.ndarray:
        return np.concatenate(([units.c * self.rho], self.jvec))


def apply_response(full: FullResponse4, pot: PotentialSet, units: UnitsConfig = NATURAL) -> FourCurrent:
    """Induced four-current j^mu = chi^mu_nu A^nu.

    The potential must be sampled at the kernel's own (k, omega) point.
    """
    if pot.at != full.at:
        raise FrameMismatch(f"potential at {pot.at!r} but kernel at {full.at!r}")
    j4 = full.entries @ pot.four(units)
    return FourCurrent(rho=j4[0] / units.c, jvec=j4[1:], at=full.at)


def gauge_shift(pot: PotentialSet, f: complex) -> PotentialSet:
    """Shift the potential by the gradient of f exp(+i k.x - i omega t):
    phi -> phi + i omega f, A -> A + i k f."""
    w = pot.at.omega
    k = pot.at.kvec
    return PotentialSet(phi=pot.phi + 1j * w * f, avec=pot.avec + 1j * k * f, at=pot.at)
