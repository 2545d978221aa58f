"""Conductivity models and their on-disk format.

Four model kinds cover the cases the command line tool needs:

* ``constant-scalar``  sigma(k, omega) = sigma0 * identity
* ``drude``            sigma(omega) = sigma0 / (1 - i omega tau) * identity
* ``diagonal``         independent xx, yy, zz entries, each a constant or
                       its own Drude pole
* ``tabulated``        explicit samples on a set of k points, interpolated
                       linearly in omega at fixed k (nearest k otherwise)

Models are stored as JSON documents.  Field names are case sensitive and
complex numbers are written as two-element [re, im] arrays::

    {"type": "constant-scalar", "sigma0": [2.0, 0.0]}
    {"type": "drude", "sigma0": [1.0, 0.0], "tau": 0.5}
    {"type": "diagonal", "entries": [[1.0, 0.0],
                                     {"sigma0": [2.0, 0.0], "tau": 0.3},
                                     [0.5, -0.1]]}
    {"type": "tabulated", "interpolation": "linear-in-omega",
     "samples": [{"omega": 1.0, "k": [0.0, 0.0, 0.0],
                  "sigma": [[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                            [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
                            [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]]}]}

A tabulated model may carry ``"real_fields": true``, promising that it
describes a response to real fields; construction then checks the reality
condition sigma(-k, -omega) = conj(sigma(k, omega)) on every pair of
mirrored nodes present in the table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .errors import InvariantViolation, OutOfRange, ParseError
from .response import require_dynamic
from .minkowski import Wavevector4

__all__ = [
    "MaterialModel",
    "ConstantScalar",
    "Drude",
    "DiagonalAnisotropic",
    "Tabulated",
    "RealityReport",
    "check_reality",
    "load_model",
    "save_model",
    "model_to_dict",
    "model_from_dict",
]

REALITY_TOL = 1e-10

_INTERPOLATIONS = ("linear-in-omega", "nearest")


class MaterialModel:
    """Base class; concrete models implement evaluate(kw) -> 3x3 complex."""

    def evaluate(self, kw: Wavevector4) -> np.ndarray:
        raise NotImplementedError


def _drude_scalar(sigma0: complex, tau: float, omega: float) -> complex:
    return sigma0 / (1.0 - 1j * omega * tau)


@dataclass(frozen=True)
class ConstantScalar(MaterialModel):
    """Isotropic, dispersionless conductivity."""

    sigma0: complex

    def __post_init__(self) -> None:
        s = complex(self.sigma0)
        if not (np.isfinite(s.real) and np.isfinite(s.imag)):
            raise InvariantViolation("sigma0 must be finite")
        object.__setattr__(self, "sigma0", s)

    def evaluate(self, kw: Wavevector4) -> np.ndarray:
        require_dynamic(kw.omega)
        return self.sigma0 * np.eye(3, dtype=complex)


@dataclass(frozen=True)
class Drude(MaterialModel):
    """Single-pole isotropic conductivity sigma0 / (1 - i omega tau)."""

    sigma0: complex
    tau: float

    def __post_init__(self) -> None:
        s = complex(self.sigma0)
        tau = float(self.tau)
        if not (np.isfinite(s.real) and np.isfinite(s.imag)):
            raise InvariantViolation("sigma0 must be finite")
        if not (np.isfinite(tau) and tau > 0.0):
            raise InvariantViolation(f"relaxation time must be positive, got {self.tau!r}")
        object.__setattr__(self, "sigma0", s)
        object.__setattr__(self, "tau", tau)

    def evaluate(self, kw: Wavevector4) -> np.ndarray:
        require_dynamic(kw.omega)
        return _drude_scalar(self.sigma0, self.tau, kw.omega) * np.eye(3, dtype=complex)


AxisEntry = Union[complex, Drude]


@dataclass(frozen=True)
class DiagonalAnisotropic(MaterialModel):
    """Diagonal tensor; each axis entry is a constant or a Drude pole."""

    entries: tuple[AxisEntry, AxisEntry, AxisEntry]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        if len(entries) != 3:
            raise InvariantViolation(f"need exactly 3 axis entries, got {len(entries)}")
        normalized = []
        for i, e in enumerate(entries):
            if isinstance(e, Drude):
                normalized.append(e)
                continue
            z = complex(e)
            if not (np.isfinite(z.real) and np.isfinite(z.imag)):
                raise InvariantViolation(f"axis entry {i} must be finite")
            normalized.append(z)
        object.__setattr__(self, "entries", tuple(normalized))

    def evaluate(self, kw: Wavevector4) -> np.ndarray:
        require_dynamic(kw.omega)
        diag = [
            _drude_scalar(e.sigma0, e.tau, kw.omega) if isinstance(e, Drude) else e
            for e in self.entries
        ]
        return np.diag(np.asarray(diag, dtype=complex))

    @property
    def sx(self) -> AxisEntry:
        return self.entries[0]

    @property
    def sy(self) -> AxisEntry:
        return self.entries[1]

    @property
    def sz(self) -> AxisEntry:
        return self.entries[2]


class Tabulated(MaterialModel):
    """Explicit samples; linear in omega at fixed k, nearest in k.

    samples: iterable of (Wavevector4, 3x3 complex tensor) pairs.  The
    (k, omega) keys must be distinct.  interpolation selects how omega is
    handled within the nearest k column: "linear-in-omega" interpolates
    between the bracketing nodes, "nearest" snaps to the closest node.
    Either way omega must lie inside the sampled span of that column.
    """

    def __init__(self, samples, interpolation: str = "linear-in-omega", real_fields: bool = False):
        if interpolation not in _INTERPOLATIONS:
            raise InvariantViolation(f"interpolation must be one of {_INTERPOLATIONS}, got {interpolation!r}")
        seen: dict[tuple, np.ndarray] = {}
        cleaned: list[tuple[Wavevector4, np.ndarray]] = []
        for kw, sigma in samples:
            if not isinstance(kw, Wavevector4):
                kw = Wavevector4(*kw)
            s = np.asarray(sigma, dtype=complex)
            if s.shape != (3, 3):
                raise InvariantViolation(f"tabulated tensor at {kw!r} must be 3x3, got shape {s.shape}")
            if not np.all(np.isfinite(s)):
                raise InvariantViolation(f"tabulated tensor at {kw!r} has non-finite entries")
            key = (kw.omega, *kw.kvec.tolist())
            if key in seen:
                raise InvariantViolation(f"duplicate sample point {kw!r}")
            seen[key] = s
            cleaned.append((kw, s))
        if not cleaned:
            raise InvariantViolation("tabulated model needs at least one sample")
        self.samples = tuple(cleaned)
        self.interpolation = interpolation
        self.real_fields = bool(real_fields)
        # group by k point, sorted in omega, for evaluation
        columns: dict[tuple, list[tuple[float, np.ndarray]]] = {}
        for kw, s in cleaned:
            columns.setdefault(tuple(kw.kvec.tolist()), []).append((kw.omega, s))
        self._kpoints = np.array(sorted(columns.keys()))
        self._columns = {}
        for kpt, rows in columns.items():
            rows.sort(key=lambda r: r[0])
            self._columns[kpt] = (np.array([r[0] for r in rows]), [r[1] for r in rows])
        if self.real_fields:
            self._check_mirrored_nodes(seen)

    def _check_mirrored_nodes(self, seen: dict[tuple, np.ndarray]) -> None:
        for key, s in seen.items():
            mirror = tuple(-x for x in key)
            if mirror not in seen:
                continue
            dev = float(np.max(np.abs(seen[mirror] - np.conj(s))))
            if dev > REALITY_TOL:
                raise InvariantViolation(
                    f"reality condition broken at omega={key[0]!r}, k={list(key[1:])!r}: deviation {dev:.3e}"
                )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tabulated):
            return NotImplemented
        if self.interpolation != other.interpolation or self.real_fields != other.real_fields:
            return False
        if len(self.samples) != len(other.samples):
            return False
        return all(
            a[0] == b[0] and np.array_equal(a[1], b[1])
            for a, b in zip(self.samples, other.samples)
        )

    def __repr__(self) -> str:
        return (
            f"Tabulated({len(self.samples)} samples, interpolation={self.interpolation!r}, "
            f"real_fields={self.real_fields!r})"
        )

    def evaluate(self, kw: Wavevector4) -> np.ndarray:
        require_dynamic(kw.omega)
        dists = np.linalg.norm(self._kpoints - kw.kvec, axis=1)
        kpt = tuple(self._kpoints[int(np.argmin(dists))].tolist())
        omegas, tensors = self._columns[kpt]
        w = kw.omega
        if w < omegas[0] or w > omegas[-1]:
            raise OutOfRange(
                f"omega = {w!r} outside the tabulated span [{omegas[0]!r}, {omegas[-1]!r}] at k = {list(kpt)!r}"
            )
        exact = np.nonzero(omegas == w)[0]
        if exact.size:
            return tensors[int(exact[0])].copy()
        if self.interpolation == "nearest":
            return tensors[int(np.argmin(np.abs(omegas - w)))].copy()
        hi = int(np.searchsorted(omegas, w))
        lo = hi - 1
        t = (w - omegas[lo]) / (omegas[hi] - omegas[lo])
        return (1.0 - t) * tensors[lo] + t * tensors[hi]


@dataclass(frozen=True)
class RealityReport:
    """Outcome of a reality-condition sweep; empty violations means pass."""

    violations: tuple
    tol: float = REALITY_TOL

    @property
    def passed(self) -> bool:
        return not self.violations


def check_reality(model: MaterialModel, sample_points, tol: float = REALITY_TOL) -> RealityReport:
    """Check sigma(-k, -omega) = conj(sigma(k, omega)) entrywise at each
    given point.  The model must be evaluable at every point and at its
    negation; violations are reported, not raised."""
    violations = []
    for kw in sample_points:
        if not isinstance(kw, Wavevector4):
            kw = Wavevector4(*kw)
        dev = float(np.max(np.abs(model.evaluate(-kw) - np.conj(model.evaluate(kw)))))
        if dev > tol:
            violations.append((kw, dev))
    return RealityReport(violations=tuple(violations), tol=tol)


# ---------------------------------------------------------------------------
# serialization


def _want(doc: dict, key: str, where: str):
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    return doc[key]


def _no_extras(doc: dict, allowed: set, where: str) -> None:
    extras = set(doc) - allowed
    if extras:
        raise ParseError(f"{where}: unknown field(s) {sorted(extras)!r}")


def _as_real(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a real number, got {x!r}")
    return float(x)


def _as_pair(x, where: str) -> complex:
    if not (isinstance(x, (list, tuple)) and len(x) == 2):
        raise ParseError(f"{where}: expected a [re, im] pair, got {x!r}")
    return complex(_as_real(x[0], where + "[0]"), _as_real(x[1], where + "[1]"))


def _as_vec3(x, where: str) -> list[float]:
    if not (isinstance(x, (list, tuple)) and len(x) == 3):
        raise ParseError(f"{where}: expected a 3-vector, got {x!r}")
    return [_as_real(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _as_tensor(x, where: str) -> np.ndarray:
    if not (isinstance(x, (list, tuple)) and len(x) == 3):
        raise ParseError(f"{where}: expected 3 rows, got {x!r}")
    rows = []
    for i, row in enumerate(x):
        if not (isinstance(row, (list, tuple)) and len(row) == 3):
            raise ParseError(f"{where}[{i}]: expected 3 entries, got {row!r}")
        rows.append([_as_pair(e, f"{where}[{i}][{j}]") for j, e in enumerate(row)])
    return np.array(rows, dtype=complex)


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def model_from_dict(doc: dict, where: str = "model") -> MaterialModel:
    """Build a model from a parsed document; raises ParseError on shape
    problems and InvariantViolation on bad values."""
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object, got {type(doc).__name__}")
    kind = _want(doc, "type", where)
    if kind == "constant-scalar":
        _no_extras(doc, {"type", "sigma0"}, where)
        return ConstantScalar(_as_pair(_want(doc, "sigma0", where), f"{where}.sigma0"))
    if kind == "drude":
        _no_extras(doc, {"type", "sigma0", "tau"}, where)
        return Drude(
            _as_pair(_want(doc, "sigma0", where), f"{where}.sigma0"),
            _as_real(_want(doc, "tau", where), f"{where}.tau"),
        )
    if kind == "diagonal":
        _no_extras(doc, {"type", "entries"}, where)
        entries = _want(doc, "entries", where)
        if not (isinstance(entries, (list, tuple)) and len(entries) == 3):
            raise ParseError(f"{where}.entries: expected 3 axis entries, got {entries!r}")
        axes = []
        for i, e in enumerate(entries):
            spot = f"{where}.entries[{i}]"
            if isinstance(e, dict):
                _no_extras(e, {"sigma0", "tau"}, spot)
                axes.append(Drude(_as_pair(_want(e, "sigma0", spot), spot + ".sigma0"),
                                  _as_real(_want(e, "tau", spot), spot + ".tau")))
            else:
                axes.append(_as_pair(e, spot))
        return DiagonalAnisotropic(tuple(axes))
    if kind == "tabulated":
        _no_extras(doc, {"type", "interpolation", "real_fields", "samples"}, where)
        samples_doc = _want(doc, "samples", where)
        if not isinstance(samples_doc, (list, tuple)):
            raise ParseError(f"{where}.samples: expected an array")
        samples = []
        for i, entry in enumerate(samples_doc):
            spot = f"{where}.samples[{i}]"
            if not isinstance(entry, dict):
                raise ParseError(f"{spot}: expected an object")
            _no_extras(entry, {"omega", "k", "sigma"}, spot)
            kw = Wavevector4(
                _as_real(_want(entry, "omega", spot), spot + ".omega"),
                _as_vec3(_want(entry, "k", spot), spot + ".k"),
            )
            samples.append((kw, _as_tensor(_want(entry, "sigma", spot), spot + ".sigma")))
        interpolation = doc.get("interpolation", "linear-in-omega")
        if not isinstance(interpolation, str):
            raise ParseError(f"{where}.interpolation: expected a string")
        real_fields = doc.get("real_fields", False)
        if not isinstance(real_fields, bool):
            raise ParseError(f"{where}.real_fields: expected a boolean")
        return Tabulated(samples, interpolation=interpolation, real_fields=real_fields)
    raise ParseError(
        f"{where}.type: unknown model type {kind!r}; "
        "expected constant-scalar, drude, diagonal, or tabulated"
    )


def model_to_dict(model: MaterialModel) -> dict:
    """Inverse of model_from_dict; the dict round-trips losslessly."""
    if isinstance(model, ConstantScalar):
        return {"type": "constant-scalar", "sigma0": _pair(model.sigma0)}
    if isinstance(model, Drude):
        return {"type": "drude", "sigma0": _pair(model.sigma0), "tau": model.tau}
    if isinstance(model, DiagonalAnisotropic):
        entries = [
            {"sigma0": _pair(e.sigma0), "tau": e.tau} if isinstance(e, Drude) else _pair(e)
            for e in model.entries
        ]
        return {"type": "diagonal", "entries": entries}
    if isinstance(model, Tabulated):
        samples = [
            {
                "omega": kw.omega,
                "k": kw.kvec.tolist(),
                "sigma": [[_pair(z) for z in row] for row in s],
            }
            for kw, s in model.samples
        ]
        return {
            "type": "tabulated",
            "interpolation": model.interpolation,
            "real_fields": model.real_fields,
            "samples": samples,
        }
    raise InvariantViolation(f"cannot serialize {type(model).__name__}")


def load_model(source) -> MaterialModel:
    """Load a model from a path or an open text stream."""
    if hasattr(source, "read"):
        text = source.read()
        where = getattr(source, "name", "model")
    else:
        where = str(source)
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"{where}: cannot read model file: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return model_from_dict(doc, where=where)


def save_model(model: MaterialModel, dest) -> None:
    """Write a model to a path or an open text stream."""
    doc = model_to_dict(model)
    if hasattr(dest, "write"):
        json.dump(doc, dest, indent=2)
        dest.write("\n")
    else:
        with open(dest, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
