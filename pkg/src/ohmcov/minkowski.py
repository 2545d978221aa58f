"""Minkowski geometry and the Lorentz group O(1,3).

Conventions used throughout the package:

* metric eta = diag(-1, +1, +1, +1);
* four-vectors are stored contravariant, time component first, so the
  wave four-vector of a sample point is (omega/c, k);
* a boost with velocity v has gamma = 1/sqrt(1 - |v|^2/c^2) and spatial
  block Lhat = 1 + (gamma - 1) v v^T / |v|^2 (the identity when v = 0).

All types are immutable values and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDecomposition,
    InvariantViolation,
    NotOrthogonal,
    SpeedLimit,
)

__all__ = [
    "ETA",
    "GROUP_TOL",
    "SPEED_MARGIN",
    "UnitsConfig",
    "NATURAL",
    "SI",
    "Wavevector4",
    "BoostParams",
    "LorentzMatrix",
    "PARITY_FLIP",
    "TIME_FLIP",
    "boost_matrix",
    "rotation_embed",
    "compose",
    "inverse",
    "transform_wavevector",
    "decompose",
]

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
ETA.setflags(write=False)

# |v|/c must stay below 1 - SPEED_MARGIN so gamma stays representable.
SPEED_MARGIN = 1e-12

# Group membership tolerance, absolute on the unit-scale metric residual.
GROUP_TOL = 1e-12

# Gate for user-supplied rotation matrices (looser than GROUP_TOL; a
# rotation that fails this was never orthogonal to begin with).
ROTATION_TOL = 1e-10


@dataclass(frozen=True)
class UnitsConfig:
    """Unit system; only the speed of light enters the formulas."""

    c: float = 1.0

    def __post_init__(self) -> None:
        c = float(self.c)
        if not (np.isfinite(c) and c > 0.0):
            raise InvariantViolation(f"speed of light must be finite and positive, got {self.c!r}")
        object.__setattr__(self, "c", c)


NATURAL = UnitsConfig(c=1.0)
SI = UnitsConfig(c=299_792_458.0)


@dataclass(frozen=True, eq=False)
class Wavevector4:
    """A sample point (k, omega) in reciprocal space.

    omega may be zero at the type level; operations that divide by omega
    reject such points with StaticFrequency.
    """

    omega: float
    kvec: np.ndarray

    def __post_init__(self) -> None:
        omega = float(self.omega)
        kvec = np.asarray(self.kvec, dtype=float)
        if kvec.shape != (3,):
            raise InvariantViolation(f"kvec must be a 3-vector, got shape {kvec.shape}")
        if not (np.isfinite(omega) and np.all(np.isfinite(kvec))):
            raise InvariantViolation("wavevector components must be finite")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "kvec", kvec)

    def four(self, units: UnitsConfig = NATURAL) -> np.ndarray:
        """Contravariant components (omega/c, kx, ky, kz)."""
        return np.concatenate(([self.omega / units.c], self.kvec))

    def minkowski_norm(self, units: UnitsConfig = NATURAL) -> float:
        """-omega^2/c^2 + |k|^2; invariant under every Lorentz transform."""
        return float(-((self.omega / units.c) ** 2) + self.kvec @ self.kvec)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Wavevector4):
            return NotImplemented
        return self.omega == other.omega and np.array_equal(self.kvec, other.kvec)

    def __neg__(self) -> "Wavevector4":
        return Wavevector4(-self.omega, -self.kvec)

    def __repr__(self) -> str:  # keep error messages readable
        k = ", ".join(repr(x) for x in self.kvec)
        return f"Wavevector4(omega={self.omega!r}, kvec=[{k}])"


@dataclass(frozen=True)
class BoostParams:
    """Velocity parameterization of a pure boost; gamma and the spatial
    block are derived once at construction."""

    v: np.ndarray
    units: UnitsConfig = NATURAL
    gamma: float = field(init=False)
    lambda_hat: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.v, dtype=float)
        if v.shape != (3,):
            raise InvariantViolation(f"velocity must be a 3-vector, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvariantViolation("velocity components must be finite")
        c = self.units.c
        speed = float(np.sqrt(v @ v))
        if speed / c > 1.0 - SPEED_MARGIN:
            raise SpeedLimit(f"|v| = {speed!r} is at or above the speed of light c = {c!r}")
        gamma = 1.0 / np.sqrt(1.0 - (speed / c) ** 2)
        if speed > 0.0:
            lhat = np.eye(3) + (gamma - 1.0) * np.outer(v, v) / (speed * speed)
        else:
            lhat = np.eye(3)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "gamma", float(gamma))
        object.__setattr__(self, "lambda_hat", lhat)

    @property
    def lambda_hat_inv(self) -> np.ndarray:
        """Inverse spatial block, 1 + (1/gamma - 1) v v^T / |v|^2."""
        v = self.v
        v2 = float(v @ v)
        if v2 == 0.0:
            return np.eye(3)
        return np.eye(3) + (1.0 / self.gamma - 1.0) * np.outer(v, v) / v2

    def matrix(self) -> "LorentzMatrix":
        """The 4x4 boost, [[gamma, -gamma v^T/c], [-gamma v/c, Lhat]]."""
        c = self.units.c
        m = np.empty((4, 4))
        m[0, 0] = self.gamma
        m[0, 1:] = -self.gamma * self.v / c
        m[1:, 0] = -self.gamma * self.v / c
        m[1:, 1:] = self.lambda_hat
        return LorentzMatrix(m)


@dataclass(frozen=True)
class LorentzMatrix:
    """Real 4x4 element of O(1,3); membership is checked at construction."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=float)
        if m.shape != (4, 4):
            raise InvariantViolation(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvariantViolation("matrix entries must be finite")
        resid = float(np.max(np.abs(m.T @ ETA @ m - ETA)))
        if resid > GROUP_TOL:
            raise InvariantViolation(f"matrix is not in O(1,3): metric residual {resid:.3e} exceeds {GROUP_TOL:.1e}")
        object.__setattr__(self, "entries", m)

    @property
    def proper(self) -> bool:
        """True when det = +1 (orientation preserving)."""
        return bool(np.linalg.det(self.entries) > 0.0)

    @property
    def orthochronous(self) -> bool:
        """True when the transform preserves the direction of time."""
        # |entry[0,0]| >= 1 for any member of O(1,3), so the sign decides.
        return bool(self.entries[0, 0] > 0.0)


def boost_matrix(v: np.ndarray, units: UnitsConfig = NATURAL) -> LorentzMatrix:
    """Pure boost with velocity v; the identity when v = 0."""
    return BoostParams(v, units).matrix()


def rotation_embed(rot: np.ndarray) -> LorentzMatrix:
    """Embed a spatial orthogonal matrix as a Lorentz transform fixing time."""
    r = np.asarray(rot, dtype=float)
    if r.shape != (3, 3):
        raise InvariantViolation(f"rotation must be a 3x3 matrix, got shape {r.shape}")
    defect = float(np.max(np.abs(r.T @ r - np.eye(3))))
    if defect > ROTATION_TOL:
        raise NotOrthogonal(f"R^T R deviates from the identity by {defect:.3e}")
    m = np.eye(4)
    m[1:, 1:] = r
    return LorentzMatrix(m)


# Discrete elements: spatial inversion and time reversal.
PARITY_FLIP = LorentzMatrix(np.diag([1.0, -1.0, -1.0, -1.0]))
TIME_FLIP = LorentzMatrix(np.diag([-1.0, 1.0, 1.0, 1.0]))


def compose(a: LorentzMatrix, b: LorentzMatrix) -> LorentzMatrix:
    """Matrix product a b (apply b first)."""
    return LorentzMatrix(a.entries @ b.entries)


def inverse(lam: LorentzMatrix) -> LorentzMatrix:
    """Group inverse eta Lambda^T eta; exact, no linear solve involved."""
    return LorentzMatrix(ETA @ lam.entries.T @ ETA)


def transform_wavevector(lam: LorentzMatrix, kw: Wavevector4, units: UnitsConfig = NATURAL) -> Wavevector4:
    """Apply the 4x4 matrix to (omega/c, k).

    For a pure boost this reduces to k' = Lhat k - gamma omega v / c^2 and
    omega' = gamma (omega - v.k).
    """
    four = lam.entries @ kw.four(units)
    return Wavevector4(units.c * four[0], four[1:])


def decompose(
    lam: LorentzMatrix, units: UnitsConfig = NATURAL
) -> tuple[np.ndarray, np.ndarray, int, int]:
    """Factor lam = T^t . boost(v) . rotation_embed(R) . P^p.

    T and P are the time and parity flips; the returned integers t, p are
    +1 when the corresponding flip is absent and -1 when present.  v is
    read off the time column of the proper orthochronous representative.

    Raises DegenerateDecomposition when that column encodes a speed too
    close to c for the boost factor to be representable.
    """
    m = lam.entries
    time_reversal = 1
    if m[0, 0] < 0.0:
        m = TIME_FLIP.entries @ m
        time_reversal = -1
    parity = 1
    if np.linalg.det(m) < 0.0:
        m = m @ PARITY_FLIP.entries
        parity = -1
    gamma = m[0, 0]
    v = -units.c * m[1:, 0] / gamma
    speed = float(np.sqrt(v @ v))
    if not np.isfinite(speed) or speed / units.c > 1.0 - SPEED_MARGIN:
        raise DegenerateDecomposition(f"time column encodes |v|/c = {speed / units.c!r}, too close to 1")
    boost = BoostParams(v, units).matrix()
    rot = (inverse(boost).entries @ m)[1:, 1:]
    return rot, v, parity, time_reversal
