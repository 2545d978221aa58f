"""Command line front end.

Subcommands: transform (one point), sweep (a grid to CSV or JSON),
ohm (moving-medium current at one point), verify (randomized self checks).

Data goes to stdout or --output; diagnostics go to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage or configuration error,
3 domain error (resonance, static frequency, out-of-range point).

Options may come from flags or from a JSON config file (--config) with
keys c, model, velocity, grid {omega, k}, output {format, path}, seed,
samples, E; flags win over the file.  "model" is a path to a model
document or the document itself inlined.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from itertools import product
from pathlib import Path

import numpy as np

from .errors import (
    BoostResonance,
    InvariantViolation,
    OhmcovError,
    OutOfRange,
    ParseError,
    SpeedLimit,
    StaticFrequency,
)
from .materials import MaterialModel, Tabulated, load_model, model_from_dict
from .minkowski import BoostParams, UnitsConfig, Wavevector4, boost_matrix, transform_wavevector
from .ohm import fields_from_electric, generalized_ohm, textbook_ohm, textbook_ohm_nr
from .transform import FrameSample, boost_sigma_direct, transform_sigma_oracle
from .verify import rel_error, run_all

__all__ = ["main", "load_sweep_csv", "tabulated_from_sweep"]

SWEEP_COLUMNS = (
    ["omega", "kx", "ky", "kz", "omega_prime", "kpx", "kpy", "kpz"]
    + [f"sp{i}{j}_{p}" for i in range(3) for j in range(3) for p in ("re", "im")]
    + ["residual"]
)

_CONFIG_KEYS = {"c", "model", "velocity", "grid", "output", "seed", "samples", "E"}

ISOTROPY_RTOL = 1e-12


class ConfigError(OhmcovError):
    """Bad or missing command line / config file input."""


# ---------------------------------------------------------------------------
# small parsing helpers


def _floats(text: str, n: int, name: str) -> list[float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ConfigError(f"{name}: expected {n} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from exc


def _float_list(text: str, name: str) -> list[float]:
    try:
        return [float(p.strip()) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from exc


def _vec_list(text: str, name: str) -> list[list[float]]:
    return [_floats(part, 3, name) for part in text.split(";") if part.strip()]


def _load_config(path: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be an object")
    extras = set(doc) - _CONFIG_KEYS
    if extras:
        raise ConfigError(f"{path}: unknown config key(s) {sorted(extras)!r}")
    doc["__dir__"] = str(Path(path).parent)
    return doc


def _resolve_units(args, cfg: dict) -> UnitsConfig:
    if args.c is not None:
        return UnitsConfig(args.c)
    if "c" in cfg:
        if not isinstance(cfg["c"], (int, float)) or isinstance(cfg["c"], bool):
            raise ConfigError(f"config key 'c' must be a number, got {cfg['c']!r}")
        return UnitsConfig(float(cfg["c"]))
    return UnitsConfig()


def _resolve_model(args, cfg: dict) -> MaterialModel:
    if args.model is not None:
        return load_model(args.model)
    spec = cfg.get("model")
    if spec is None:
        raise ConfigError("no conductivity model given (use --model or the 'model' config key)")
    if isinstance(spec, dict):
        return model_from_dict(spec)
    if isinstance(spec, str):
        path = Path(spec)
        if not path.is_absolute():
            path = Path(cfg.get("__dir__", ".")) / path
        return load_model(path)
    raise ConfigError(f"config key 'model' must be a path or an inline model, got {spec!r}")


def _resolve_velocity(args, cfg: dict) -> np.ndarray:
    if args.velocity is not None:
        return np.array(_floats(args.velocity, 3, "--velocity"))
    if "velocity" in cfg:
        v = cfg["velocity"]
        if not (isinstance(v, list) and len(v) == 3 and all(isinstance(x, (int, float)) for x in v)):
            raise ConfigError(f"config key 'velocity' must be a 3-vector, got {v!r}")
        return np.array([float(x) for x in v])
    return np.zeros(3)


def _resolve_grid(args, cfg: dict) -> tuple[list[float], list[list[float]]]:
    grid = cfg.get("grid", {})
    if grid and not isinstance(grid, dict):
        raise ConfigError(f"config key 'grid' must be an object, got {grid!r}")
    omegas = _float_list(args.omega, "--omega") if args.omega is not None else grid.get("omega", [])
    ks = _vec_list(args.k, "--k") if args.k is not None else grid.get("k", [])
    if not isinstance(omegas, list) or not all(isinstance(w, (int, float)) for w in omegas):
        raise ConfigError("grid omega values must be numbers")
    kvecs = []
    for kv in ks:
        if not (isinstance(kv, list) and len(kv) == 3 and all(isinstance(x, (int, float)) for x in kv)):
            raise ConfigError(f"grid k entries must be 3-vectors, got {kv!r}")
        kvecs.append([float(x) for x in kv])
    return [float(w) for w in omegas], kvecs


def _resolve_single_point(args, cfg: dict) -> Wavevector4:
    omegas, ks = _resolve_grid(args, cfg)
    if len(omegas) != 1 or len(ks) != 1:
        raise ConfigError("this command needs exactly one omega and one k")
    return Wavevector4(omegas[0], ks[0])


def _resolve_output(args, cfg: dict, default_format: str) -> tuple[str, str | None]:
    out = cfg.get("output", {})
    if out and not isinstance(out, dict):
        raise ConfigError(f"config key 'output' must be an object, got {out!r}")
    fmt = args.format or out.get("format", default_format)
    if fmt not in ("csv", "structured"):
        raise ConfigError(f"output format must be csv or structured, got {fmt!r}")
    path = args.output or out.get("path")
    return fmt, path


def _resolve_efield(args, cfg: dict) -> np.ndarray:
    if args.E is not None:
        return np.asarray(_floats(args.E, 3, "--E"), dtype=complex)
    e = cfg.get("E")
    if e is None:
        raise ConfigError("ohm needs an electric field amplitude (--E or the 'E' config key)")
    if not (isinstance(e, list) and len(e) == 3):
        raise ConfigError(f"config key 'E' must hold 3 components, got {e!r}")
    out = []
    for i, comp in enumerate(e):
        if isinstance(comp, (int, float)) and not isinstance(comp, bool):
            out.append(complex(comp))
        elif isinstance(comp, list) and len(comp) == 2:
            out.append(complex(float(comp[0]), float(comp[1])))
        else:
            raise ConfigError(f"E[{i}] must be a number or a [re, im] pair, got {comp!r}")
    return np.asarray(out, dtype=complex)


# ---------------------------------------------------------------------------
# output helpers


def _pairs(matrix: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix, dtype=complex)]


def _vec_pairs(vec: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec, dtype=complex)]


def _flat_pairs(matrix: np.ndarray) -> list[float]:
    out = []
    for row in np.asarray(matrix, dtype=complex):
        for z in row:
            out.extend((float(z.real), float(z.imag)))
    return out


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _point_fields(kw: Wavevector4, kw_p: Wavevector4) -> list[float]:
    return [kw.omega, *kw.kvec.tolist(), kw_p.omega, *kw_p.kvec.tolist()]


# ---------------------------------------------------------------------------
# subcommands


def _transform_point(model: MaterialModel, kw: Wavevector4, v: np.ndarray, units: UnitsConfig):
    """Shared by transform and sweep: evaluate, boost, cross check."""
    sample = FrameSample(model.evaluate(kw), kw)
    direct = boost_sigma_direct(sample, v, units)
    oracle = transform_sigma_oracle(sample, boost_matrix(v, units), units)
    residual = max(rel_error(direct.sigma, oracle.sigma), rel_error(direct.at.four(units), oracle.at.four(units)))
    return sample, direct, residual


def cmd_transform(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    units = _resolve_units(args, cfg)
    model = _resolve_model(args, cfg)
    v = _resolve_velocity(args, cfg)
    kw = _resolve_single_point(args, cfg)
    fmt, path = _resolve_output(args, cfg, default_format="structured")

    try:
        sample, direct, residual = _transform_point(model, kw, v, units)
    except (BoostResonance, StaticFrequency, OutOfRange) as exc:
        raise type(exc)(f"at omega={kw.omega!r} k={kw.kvec.tolist()!r}: {exc}") from exc
    gamma = BoostParams(v, units).gamma
    if fmt == "structured":
        record = {
            "omega": kw.omega,
            "k": kw.kvec.tolist(),
            "omega_prime": direct.at.omega,
            "k_prime": direct.at.kvec.tolist(),
            "gamma": gamma,
            "sigma": _pairs(sample.sigma),
            "sigma_prime": _pairs(direct.sigma),
            "residual": residual,
        }
        _emit(json.dumps(record, indent=2) + "\n", path)
    else:
        header = (
            ["omega", "kx", "ky", "kz", "omega_prime", "kpx", "kpy", "kpz", "gamma"]
            + [f"s{i}{j}_{p}" for i in range(3) for j in range(3) for p in ("re", "im")]
            + [f"sp{i}{j}_{p}" for i in range(3) for j in range(3) for p in ("re", "im")]
            + ["residual"]
        )
        row = (
            _point_fields(kw, direct.at)
            + [gamma]
            + _flat_pairs(sample.sigma)
            + _flat_pairs(direct.sigma)
            + [residual]
        )
        _emit(_csv_text(header, [row]), path)
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    units = _resolve_units(args, cfg)
    model = _resolve_model(args, cfg)
    v = _resolve_velocity(args, cfg)
    omegas, ks = _resolve_grid(args, cfg)
    if not omegas or not ks:
        raise ConfigError("sweep needs at least one omega and one k (--omega/--k or the 'grid' config key)")
    fmt, path = _resolve_output(args, cfg, default_format="csv")
    BoostParams(v, units)  # reject superluminal input before looping

    rows = []
    records = []
    skipped = []
    for w, kv in product(omegas, ks):
        kw = Wavevector4(w, kv)
        try:
            _, direct, residual = _transform_point(model, kw, v, units)
        except (BoostResonance, StaticFrequency, OutOfRange) as exc:
            skipped.append((kw, f"{type(exc).__name__}: {exc}"))
            continue
        rows.append(_point_fields(kw, direct.at) + _flat_pairs(direct.sigma) + [residual])
        records.append(
            {
                "omega": kw.omega,
                "k": kw.kvec.tolist(),
                "omega_prime": direct.at.omega,
                "k_prime": direct.at.kvec.tolist(),
                "sigma_prime": _pairs(direct.sigma),
                "residual": residual,
            }
        )
    for kw, reason in skipped:
        print(f"skipped omega={kw.omega!r} k={kw.kvec.tolist()!r}: {reason}", file=sys.stderr)
    if not rows:
        print("sweep produced no rows: every grid point was skipped", file=sys.stderr)
        return 3
    if fmt == "csv":
        _emit(_csv_text(SWEEP_COLUMNS, rows), path)
    else:
        doc = {
            "rows": records,
            "skipped": [
                {"omega": kw.omega, "k": kw.kvec.tolist(), "reason": reason} for kw, reason in skipped
            ],
        }
        _emit(json.dumps(doc, indent=2) + "\n", path)
    return 0


def cmd_ohm(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    units = _resolve_units(args, cfg)
    model = _resolve_model(args, cfg)
    v = _resolve_velocity(args, cfg)
    kw = _resolve_single_point(args, cfg)
    evec = _resolve_efield(args, cfg)
    fmt, path = _resolve_output(args, cfg, default_format="structured")

    bp = BoostParams(v, units)
    kw_p = transform_wavevector(bp.matrix(), kw, units)
    try:
        sigma_p = model.evaluate(kw_p)
        fields = fields_from_electric(evec, kw)
        gen = generalized_ohm(sigma_p, v, fields, units)
    except (BoostResonance, StaticFrequency, OutOfRange) as exc:
        raise type(exc)(f"at omega={kw.omega!r} k={kw.kvec.tolist()!r}: {exc}") from exc

    s0 = complex(np.trace(sigma_p)) / 3.0
    iso_defect = float(np.max(np.abs(sigma_p - s0 * np.eye(3))))
    scalar = iso_defect <= ISOTROPY_RTOL * max(abs(s0), 1e-14)
    if args.textbook and not scalar:
        raise ConfigError(
            f"textbook formula requires a scalar conductivity; got anisotropy {iso_defect:.3e} at {kw_p!r}"
        )
    textbook = None
    if scalar:
        tb = textbook_ohm(s0, v, fields, units)
        nr = textbook_ohm_nr(s0, v, fields)
        textbook = {
            "drift": _vec_pairs(tb),
            "nonrel_drift": _vec_pairs(nr),
            "diff_generalized_textbook": float(np.max(np.abs(gen.drift_current - tb))),
            "diff_generalized_nonrel": float(np.max(np.abs(gen.drift_current - nr))),
            "diff_textbook_nonrel": float(np.max(np.abs(tb - nr))),
        }
    else:
        print("conductivity is not scalar at the boosted point; textbook outputs omitted", file=sys.stderr)

    if fmt == "structured":
        record = {
            "omega": kw.omega,
            "k": kw.kvec.tolist(),
            "omega_prime": kw_p.omega,
            "k_prime": kw_p.kvec.tolist(),
            "gamma": bp.gamma,
            "j": _vec_pairs(gen.jvec),
            "rho": [float(gen.rho.real), float(gen.rho.imag)],
            "drift": _vec_pairs(gen.drift_current),
            "textbook": textbook,
        }
        _emit(json.dumps(record, indent=2) + "\n", path)
    else:
        header = (
            ["omega", "kx", "ky", "kz", "omega_prime", "kpx", "kpy", "kpz", "gamma"]
            + [f"j{a}_{p}" for a in "xyz" for p in ("re", "im")]
            + ["rho_re", "rho_im"]
            + [f"drift{a}_{p}" for a in "xyz" for p in ("re", "im")]
            + [f"tb{a}_{p}" for a in "xyz" for p in ("re", "im")]
            + [f"nr{a}_{p}" for a in "xyz" for p in ("re", "im")]
            + ["diff_generalized_textbook", "diff_generalized_nonrel", "diff_textbook_nonrel"]
        )
        row = _point_fields(kw, kw_p) + [bp.gamma]
        for z in gen.jvec:
            row.extend((float(z.real), float(z.imag)))
        row.extend((float(gen.rho.real), float(gen.rho.imag)))
        for z in gen.drift_current:
            row.extend((float(z.real), float(z.imag)))
        if textbook is None:
            row.extend([""] * 15)
        else:
            for key in ("drift", "nonrel_drift"):
                for re_im in textbook[key]:
                    row.extend(re_im)
            row.extend(
                (
                    textbook["diff_generalized_textbook"],
                    textbook["diff_generalized_nonrel"],
                    textbook["diff_textbook_nonrel"],
                )
            )
        _emit(_csv_text(header, [row]), path)
    return 0


def cmd_verify(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    units = _resolve_units(args, cfg)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    samples = args.samples if args.samples is not None else int(cfg.get("samples", 1000))
    if samples <= 0:
        raise ConfigError(f"samples must be positive, got {samples}")
    fmt, path = _resolve_output(args, cfg, default_format="structured")

    fault = 1e-6 if args.inject_fault else 0.0
    results = run_all(seed, samples, units, fault=fault)
    if fmt == "structured":
        doc = {
            "seed": seed,
            "samples": samples,
            "passed": all(r.passed for r in results),
            "suites": [
                {
                    "name": r.name,
                    "samples": r.samples,
                    "max_residual": r.max_residual,
                    "tolerance": r.tolerance,
                    "passed": r.passed,
                    "seconds": r.seconds,
                }
                for r in results
            ],
        }
        _emit(json.dumps(doc, indent=2) + "\n", path)
    else:
        header = ["name", "samples", "max_residual", "tolerance", "passed", "seconds"]
        rows = [[r.name, r.samples, r.max_residual, r.tolerance, r.passed, r.seconds] for r in results]
        _emit(_csv_text(header, rows), path)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# sweep output as a tabulated model


def load_sweep_csv(source) -> list[dict]:
    """Parse sweep CSV back into records with complex sigma_prime tensors."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or list(reader.fieldnames) != SWEEP_COLUMNS:
        raise ParseError(f"not a sweep table: header {reader.fieldnames!r}")
    records = []
    for row in reader:
        sigma = np.array(
            [
                [complex(float(row[f"sp{i}{j}_re"]), float(row[f"sp{i}{j}_im"])) for j in range(3)]
                for i in range(3)
            ]
        )
        records.append(
            {
                "at": Wavevector4(float(row["omega"]), [float(row[a]) for a in ("kx", "ky", "kz")]),
                "at_prime": Wavevector4(
                    float(row["omega_prime"]), [float(row[a]) for a in ("kpx", "kpy", "kpz")]
                ),
                "sigma_prime": sigma,
                "residual": float(row["residual"]),
            }
        )
    return records


def tabulated_from_sweep(records, interpolation: str = "nearest") -> Tabulated:
    """Turn sweep output into a tabulated model keyed at the boosted points."""
    return Tabulated(
        [(r["at_prime"], r["sigma_prime"]) for r in records],
        interpolation=interpolation,
    )


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ohmcov",
        description="Transform conductivity tensors between inertial frames and check the result.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--c", type=float, help="speed of light (default 1)")
        p.add_argument("--output", help="write data here instead of stdout")
        p.add_argument("--format", choices=("csv", "structured"), help="output format")

    def pointful(p: argparse.ArgumentParser) -> None:
        common(p)
        p.add_argument("--model", help="conductivity model file")
        p.add_argument("--velocity", help="frame velocity vx,vy,vz")
        p.add_argument("--omega", help="comma-separated frequencies")
        p.add_argument("--k", help="semicolon-separated k vectors, each kx,ky,kz")

    p = sub.add_parser("transform", help="boost the conductivity at one point")
    pointful(p)
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("sweep", help="boost the conductivity over a grid")
    pointful(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("ohm", help="moving-medium current response at one point")
    pointful(p)
    p.add_argument("--E", help="electric field amplitude ex,ey,ez (real; use a config file for complex)")
    p.add_argument("--textbook", action="store_true", help="fail instead of skipping the textbook formula when the conductivity is not scalar")
    p.set_defaults(handler=cmd_ohm)

    p = sub.add_parser("verify", help="run the randomized self checks")
    common(p)
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--samples", type=int, help="samples per suite (default 1000)")
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="perturb the boost law by 1e-6 to prove the checks can fail",
    )
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, ParseError, InvariantViolation, SpeedLimit, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BoostResonance, StaticFrequency, OutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
