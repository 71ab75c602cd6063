"""Command-line front end with reproducible, machine-readable runs.

Configs are flat ``key = value`` text files; command-line flags override file
values.  Every JSON report embeds the resolved config and the package
version, uses 17-significant-digit floats with sorted keys, and is emitted as
a single newline-terminated document, so identical runs are byte-identical.
Exit codes: 0 success, 1 config error, 2 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .errors import (
    AmbiguousFlux,
    AssumptionViolated,
    BandVortexError,
    ConfigError,
    IllConditioned,
    NonIntegerWinding,
    NotConverging,
    QuadratureNotConverged,
)
from .models import (
    CanonicalModelSpec,
    HaldaneParams,
    Momentum,
    analytic_curvature,
    canonical_hamiltonian,
    haldane_gap_report,
    haldane_hamiltonian,
    monolayer_fullzone,
    multilayer_hamiltonian,
    multilayer_section,
)
from .hermitian2 import eig2
from .pseudospin import (
    LoopSample,
    berry_phase,
    equator_check,
    field_loop,
    great_circle_fit,
    loop_trace_rows,
    pole_basis,
    pwn_equals_vorticity,
    sphere_trace,
    winding_number,
)
from .vorticity import (
    build_cube_mesh,
    canonical_field,
    compute_vorticity,
    export_mesh_record,
    gauge_conjugation_sweep,
    haldane_field,
    monolayer_field,
    multilayer_field,
)
from .wannier import (
    build_cutoff,
    canonical_wannier_profile,
    decay_fit,
    profile_prefactor_limit,
)
from .distcurv import RadialTestFunction, delta_limit_check

THREADS_ENV = "BAND_VORTEX_THREADS"


# ---------------------------------------------------------------------------
# Deterministic serialization
# ---------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} in report")
    return format(x, ".17g")


def render_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    if isinstance(obj, dict):
        items = ",".join(
            f"{json.dumps(str(k))}:{render_json(obj[k])}" for k in sorted(obj)
        )
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(render_json(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return render_json({"re": obj.real, "im": obj.imag})
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _fmt_complex(v: complex) -> str:
    return f"{_fmt_float(v.real)}{'+' if v.imag >= 0 else '-'}{_fmt_float(abs(v.imag))}j"


def write_csv(path: str, header, rows) -> None:
    """CSV with ',' separator, '.' decimal, 17-significant-digit floats."""
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = []
            for v in row:
                if isinstance(v, complex):
                    cells.append(_fmt_complex(v))
                elif isinstance(v, float):
                    cells.append(_fmt_float(v))
                else:
                    cells.append(str(v))
            fh.write(",".join(cells) + "\n")


def _emit(report: dict, out_path) -> None:
    text = render_json(report) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Config handling
# ---------------------------------------------------------------------------


def _cast_band(text) -> int:
    mapping = {"+": 1, "+1": 1, "1": 1, "plus": 1, "-": -1, "-1": -1, "minus": -1}
    key = str(text).strip().lower()
    if key not in mapping:
        raise ConfigError(f"band must be one of {sorted(mapping)}, got {text!r}")
    return mapping[key]


def _cast_bool(text) -> bool:
    key = str(text).strip().lower()
    if key in ("true", "1", "yes"):
        return True
    if key in ("false", "0", "no"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


_COMMON_SCHEMA = {
    "threads": int,
    "seed": int,
    "out": str,
}

_SCHEMAS = {
    "vorticity": {
        **_COMMON_SCHEMA,
        "model": str,
        "n": int,
        "band": _cast_band,
        "m": int,
        "t1": float,
        "t2": float,
        "phi": float,
        "M": float,
        "corner": str,
        "radius": float,
        "mu_max": float,
        "subdivisions": int,
        "max_refine": int,
        "gauge_trials": int,
        "mesh_out": str,
    },
    "pwn": {
        **_COMMON_SCHEMA,
        "model": str,
        "n": int,
        "band": _cast_band,
        "m": int,
        "t1": float,
        "t2": float,
        "phi": float,
        "M": float,
        "corner": str,
        "radius": float,
        "samples": int,
        "mu_max": float,
        "tol_component": float,
        "check_vorticity": _cast_bool,
        "trace_out": str,
    },
    "wannier": {
        **_COMMON_SCHEMA,
        "n": int,
        "p": int,
        "rho": float,
        "r_support": float,
        "smoothness": int,
        "x_min": float,
        "x_max": float,
        "points": int,
        "fit_min": float,
        "fit_max": float,
        "csv_out": str,
    },
    "delta": {
        **_COMMON_SCHEMA,
        "n": int,
        "band": _cast_band,
        "f0": float,
        "rho_f": float,
        "r_f": float,
        "annular": _cast_bool,
        "mu_start": float,
        "mu_count": int,
        "mu_list": str,
    },
    "dump-model": {
        **_COMMON_SCHEMA,
        "model": str,
        "n": int,
        "band": _cast_band,
        "m": int,
        "t1": float,
        "t2": float,
        "phi": float,
        "M": float,
        "q1": float,
        "q2": float,
        "mu": float,
    },
}

_DEFAULTS = {
    "vorticity": {
        "model": "canonical", "n": 1, "band": 1, "m": 1,
        "t1": 1.0, "t2": 0.25, "phi": 0.0, "M": 0.0, "corner": "K",
        "radius": 0.5, "mu_max": 0.5, "subdivisions": 1, "max_refine": 6,
        "gauge_trials": 0, "mesh_out": None,
        "threads": None, "seed": 0, "out": None,
    },
    "pwn": {
        "model": "multilayer", "n": 1, "band": 1, "m": 1,
        "t1": 1.0, "t2": 0.25, "phi": 0.0, "M": 0.0, "corner": "K",
        "radius": 0.05, "samples": 256, "mu_max": 0.5, "tol_component": 1e-9,
        "check_vorticity": False, "trace_out": None,
        "threads": None, "seed": 0, "out": None,
    },
    "wannier": {
        "n": 1, "p": 0, "rho": 0.5, "r_support": 1.0, "smoothness": 3,
        "x_min": 50.0, "x_max": 500.0, "points": 16,
        "fit_min": 50.0, "fit_max": 500.0, "csv_out": None,
        "threads": None, "seed": 0, "out": None,
    },
    "delta": {
        "n": 1, "band": 1, "f0": 1.0, "rho_f": 0.5, "r_f": 0.9,
        "annular": False, "mu_start": 0.1, "mu_count": 4, "mu_list": None,
        "threads": None, "seed": 0, "out": None,
    },
    "dump-model": {
        "model": "canonical", "n": 1, "band": 1, "m": 1,
        "t1": 1.0, "t2": 0.25, "phi": 0.0, "M": 0.0,
        "q1": 0.1, "q2": 0.0, "mu": 0.0,
        "threads": None, "seed": 0, "out": None,
    },
}


def load_config_file(path: str, schema: dict) -> dict:
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, text = (part.strip() for part in line.split("=", 1))
        if key not in schema:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        caster = schema[key]
        try:
            values[key] = caster(text)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
    return values


def resolve_config(command: str, args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS[command])
    if getattr(args, "config", None):
        cfg.update(load_config_file(args.config, _SCHEMAS[command]))
    for key in _SCHEMAS[command]:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            caster = _SCHEMAS[command][key]
            cfg[key] = caster(cli_value) if caster in (_cast_band, _cast_bool) else cli_value
    if cfg.get("threads") is None:
        cfg["threads"] = int(os.environ.get(THREADS_ENV, "0"))
    if cfg["threads"] < 0:
        raise ConfigError("threads must be >= 0")
    if cfg["threads"] == 0:
        cfg["threads"] = os.cpu_count() or 1
    return cfg


def _config_record(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if k != "out"}


def _report(command: str, cfg: dict, result: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "config": _config_record(cfg),
        "result": result,
    }


# ---------------------------------------------------------------------------
# Model resolution helpers
# ---------------------------------------------------------------------------


def _haldane_params(cfg) -> HaldaneParams:
    return HaldaneParams(cfg["t1"], cfg["t2"], cfg["phi"], cfg["M"])


def _vorticity_field(cfg):
    model = cfg["model"]
    if model == "canonical":
        return canonical_field(CanonicalModelSpec(cfg["n"], cfg["band"], cfg["m"]))
    if model == "multilayer":
        return multilayer_field(cfg["m"], cfg["band"])
    if model == "monolayer-fullzone":
        return monolayer_field(cfg["band"], corner=cfg["corner"])
    if model == "haldane":
        return haldane_field(_haldane_params(cfg), cfg["band"], corner=cfg["corner"])
    raise ConfigError(f"unknown model {cfg['model']!r}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_vorticity(cfg: dict) -> int:
    if cfg["radius"] <= 0 or cfg["mu_max"] <= 0:
        raise ConfigError("radius and mu_max must be positive")
    projector_field = _vorticity_field(cfg)
    result_obj = compute_vorticity(
        projector_field,
        radius=cfg["radius"],
        mu_max=cfg["mu_max"],
        subdivisions=cfg["subdivisions"],
        max_levels=cfg["max_refine"],
    )
    result = {
        "n_v": result_obj.vorticity,
        "ch1": result_obj.integer,
        "raw": result_obj.raw,
        "residue": result_obj.residue,
        "refinement_level": result_obj.refinement_level,
        "deformation": projector_field.deformation,
    }
    final_subdiv = cfg["subdivisions"] * 2**result_obj.refinement_level
    mesh = build_cube_mesh(
        (*projector_field.singular_point, 0.0),
        (0.5 * cfg["radius"], 0.5 * cfg["radius"], 0.5 * cfg["mu_max"]),
        final_subdiv,
    )
    if cfg["gauge_trials"] > 0:
        sweep = gauge_conjugation_sweep(
            projector_field, mesh, trials=cfg["gauge_trials"], seed=cfg["seed"]
        )
        result["gauge_sweep"] = {
            "trials": sweep.trials,
            "all_equal": sweep.all_equal,
            "max_distance": sweep.max_distance,
            "max_intertwining_residual": sweep.max_residual,
        }
    if cfg["mesh_out"]:
        with open(cfg["mesh_out"], "w") as fh:
            fh.write(render_json(export_mesh_record(projector_field, mesh)) + "\n")
    _emit(_report("vorticity", cfg, result), cfg["out"])
    return 0 if result_obj.residue < 0.05 else 2


def _pwn_loop(cfg):
    model = cfg["model"]
    if model == "multilayer":
        m, band = cfg["m"], cfg["band"]
        return LoopSample.from_section(
            lambda th: multilayer_section(m, band, Momentum.from_polar(1.0, th)),
            cfg["samples"],
        ), None
    if model == "constant":
        vec = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
        return LoopSample.from_section(lambda th: vec, cfg["samples"]), None
    if model == "canonical":
        projector_field = canonical_field(CanonicalModelSpec(cfg["n"], cfg["band"], cfg["m"]))
        basis = pole_basis(projector_field, cfg["mu_max"])
        return field_loop(projector_field, cfg["radius"], cfg["samples"], basis=basis), projector_field
    if model == "haldane":
        projector_field = haldane_field(_haldane_params(cfg), cfg["band"], corner=cfg["corner"])
        return field_loop(projector_field, cfg["radius"], cfg["samples"]), projector_field
    raise ConfigError(f"unknown model {model!r}")


def cmd_pwn(cfg: dict) -> int:
    loop, _field = _pwn_loop(cfg)
    eq = equator_check(loop)
    circle = great_circle_fit(sphere_trace(loop))
    result = {
        "equator": {"max_deviation": eq.max_deviation, "passes": eq.passes, "tol": eq.tol},
        "great_circle_rms": circle.rms_deviation,
    }
    try:
        n_w = winding_number(loop, cfg["tol_component"])
        result["n_w"] = n_w
        result["assumption_violated"] = False
    except AssumptionViolated as exc:
        n_w = None
        result["n_w"] = None
        result["assumption_violated"] = True
        result["assumption_violated_at"] = exc.index
    result["pwn_ill_defined"] = bool(
        result["assumption_violated"] or circle.rms_deviation > 1e-6
    )
    hol = berry_phase(loop)
    result["berry_phase"] = hol
    if n_w is not None and eq.passes:
        result["berry_phase_expected"] = complex(
            math.cos(math.pi * n_w), -math.sin(math.pi * n_w)
        )
    if cfg["check_vorticity"]:
        if cfg["model"] == "canonical":
            rep = pwn_equals_vorticity(
                CanonicalModelSpec(cfg["n"], cfg["band"], cfg["m"]),
                radius=cfg["radius"], mu_max=cfg["mu_max"], n_samples=cfg["samples"],
            )
        elif cfg["model"] == "multilayer":
            rep = pwn_equals_vorticity(
                cfg["m"], radius=cfg["radius"], mu_max=cfg["mu_max"], n_samples=cfg["samples"]
            )
        else:
            raise ConfigError("check_vorticity supports canonical and multilayer models")
        result["vorticity_check"] = {
            "n_w": rep.n_w,
            "n_v": rep.n_v,
            "signed_equal": rep.signed_equal,
            "abs_equal": rep.abs_equal,
            "pole_convention": rep.pole_convention,
        }
    if cfg["trace_out"]:
        write_csv(
            cfg["trace_out"],
            ("theta", "nx", "ny", "nz", "psi1", "psi2"),
            loop_trace_rows(loop),
        )
    _emit(_report("pwn", cfg, result), cfg["out"])
    return 0


def cmd_wannier(cfg: dict) -> int:
    if not (0.0 < cfg["rho"] < cfg["r_support"]):
        raise ConfigError("need 0 < rho < r_support")
    if cfg["n"] == 0:
        raise ConfigError("winding n must be nonzero")
    if cfg["p"] not in (0, 1):
        raise ConfigError("p must be 0 or 1")
    if cfg["points"] < 8 or cfg["x_min"] <= 0 or cfg["x_max"] <= cfg["x_min"]:
        raise ConfigError("need points >= 8 and 0 < x_min < x_max")
    cutoff = build_cutoff(cfg["rho"], cfg["r_support"], cfg["smoothness"])
    grid = np.geomspace(cfg["x_min"], cfg["x_max"], cfg["points"])
    profile = canonical_wannier_profile(cfg["n"], cfg["p"], cutoff, grid, threads=cfg["threads"])
    fit = decay_fit(profile.x, profile.envelope, (cfg["fit_min"], cfg["fit_max"]))
    power = cfg["p"] + 2
    limit = profile_prefactor_limit(cfg["n"], cfg["p"])
    result = {
        "slope": fit.slope,
        "prefactor": fit.prefactor,
        "residual": fit.residual,
        "window": list(fit.window),
        "prefactor_limit": limit,
        "scaled_envelope_last": float(profile.envelope[-1] * profile.x[-1] ** power),
        "cutoff_coeffs": list(cutoff.coeffs),
    }
    if cfg["csv_out"]:
        rows = [
            (float(x), float(wc), float(ws), float(env), float(env * x * x))
            for x, wc, ws, env in zip(profile.x, profile.w_cos, profile.w_sin, profile.envelope)
        ]
        write_csv(cfg["csv_out"], ("x", "w_cos", "w_sin", "envelope", "x2_envelope"), rows)
    _emit(_report("wannier", cfg, result), cfg["out"])
    return 0


def cmd_delta(cfg: dict) -> int:
    if cfg["mu_list"]:
        mus = [float(tok) for tok in cfg["mu_list"].split(",") if tok.strip()]
    else:
        if cfg["mu_start"] <= 0 or cfg["mu_count"] < 1:
            raise ConfigError("need mu_start > 0 and mu_count >= 1")
        mus = [cfg["mu_start"] * 0.5**j for j in range(cfg["mu_count"])]
    if len(mus) < 4:
        raise ConfigError("mu sequence must have at least 4 entries")
    if cfg["annular"]:
        r = cfg["r_f"]
        f = RadialTestFunction.annular(0.25 * r, 0.5 * r, 0.7 * r, r, cfg["f0"])
    else:
        if not (0.0 < cfg["rho_f"] < cfg["r_f"]):
            raise ConfigError("need 0 < rho_f < r_f")
        f = RadialTestFunction.from_cutoff(build_cutoff(cfg["rho_f"], cfg["r_f"], 2), cfg["f0"])
    report_obj = delta_limit_check(cfg["n"], cfg["band"], f, mus, threads=cfg["threads"])
    result = {
        "mu": list(report_obj.mu_values),
        "pairings_above": list(report_obj.pairings_above),
        "pairings_below": list(report_obj.pairings_below),
        "limit_above": report_obj.limit_above,
        "limit_below": report_obj.limit_below,
        "limit": report_obj.limit,
        "target": report_obj.target,
        "deviation": report_obj.deviation,
        "orders": list(report_obj.orders),
    }
    _emit(_report("delta", cfg, result), cfg["out"])
    return 0


def cmd_dump_model(cfg: dict) -> int:
    q = Momentum(cfg["q1"], cfg["q2"])
    mu = cfg["mu"]
    model = cfg["model"]
    curvature = None
    if model == "canonical":
        spec = CanonicalModelSpec(cfg["n"], cfg["band"], cfg["m"])
        h = canonical_hamiltonian(spec, q, mu)
        if not (q.is_origin and mu == 0.0):
            curvature = analytic_curvature(spec, q, mu)
    elif model == "multilayer":
        h = multilayer_hamiltonian(cfg["m"], q)
    elif model == "monolayer-fullzone":
        h = monolayer_fullzone(np.array([cfg["q1"], cfg["q2"]]))
    elif model == "haldane":
        h = haldane_hamiltonian(_haldane_params(cfg), np.array([cfg["q1"], cfg["q2"]]))
    else:
        raise ConfigError(f"unknown model {model!r}")
    res = eig2(h)
    result = {
        "hamiltonian": [[h[0, 0], h[0, 1]], [h[1, 0], h[1, 1]]],
        "e_minus": res.e_minus,
        "e_plus": res.e_plus,
        "v_minus": list(res.v_minus),
        "v_plus": list(res.v_plus),
        "degenerate": res.degenerate,
    }
    if curvature is not None:
        result["curvature_rtheta"] = curvature[0]
        result["curvature_thetamu"] = curvature[1]
    if model == "haldane":
        gaps = haldane_gap_report(_haldane_params(cfg))
        result["gap_minima"] = {
            name: {"gap": rec["gap"], "k": list(rec["k"])} for name, rec in gaps.items()
        }
    _emit(_report("dump-model", cfg, result), cfg["out"])
    return 0


_HANDLERS = {
    "vorticity": cmd_vorticity,
    "pwn": cmd_pwn,
    "wannier": cmd_wannier,
    "delta": cmd_delta,
    "dump-model": cmd_dump_model,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandvortex",
        description="Vorticity, pseudospin winding and localized-state decay "
        "for 2D band crossings",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--threads", type=int, help=f"worker threads (0 = auto; env {THREADS_ENV})")
        p.add_argument("--seed", type=int, help="seed for randomized sweeps")

    def add_model(p, models):
        p.add_argument("--model", choices=models)
        p.add_argument("--n", type=int, help="winding of the canonical model")
        p.add_argument("--band", help="band sign: + or -")
        p.add_argument("--m", type=int, help="layer count / dispersion exponent")
        p.add_argument("--t1", type=float)
        p.add_argument("--t2", type=float)
        p.add_argument("--phi", type=float)
        p.add_argument("--M", type=float)
        p.add_argument("--corner", choices=("K", "K_prime"))

    p = sub.add_parser("vorticity", help="plaquette Chern number / vorticity of a model field")
    add_common(p)
    add_model(p, ("canonical", "multilayer", "monolayer-fullzone", "haldane"))
    p.add_argument("--radius", type=float)
    p.add_argument("--mu-max", dest="mu_max", type=float)
    p.add_argument("--subdivisions", type=int)
    p.add_argument("--max-refine", dest="max_refine", type=int)
    p.add_argument("--gauge-trials", dest="gauge_trials", type=int)
    p.add_argument("--mesh-out", dest="mesh_out")

    p = sub.add_parser("pwn", help="pseudospin winding number and loop diagnostics")
    add_common(p)
    add_model(p, ("canonical", "multilayer", "haldane", "constant"))
    p.add_argument("--radius", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--mu-max", dest="mu_max", type=float)
    p.add_argument("--tol-component", dest="tol_component", type=float)
    p.add_argument("--check-vorticity", dest="check_vorticity", action="store_const", const="true")
    p.add_argument("--trace-out", dest="trace_out")

    p = sub.add_parser("wannier", help="radial decay profile and power-law fit")
    add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--r-support", dest="r_support", type=float)
    p.add_argument("--smoothness", type=int)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--fit-min", dest="fit_min", type=float)
    p.add_argument("--fit-max", dest="fit_max", type=float)
    p.add_argument("--csv-out", dest="csv_out")

    p = sub.add_parser("delta", help="distributional limit of the smoothed curvature")
    add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--band")
    p.add_argument("--f0", type=float)
    p.add_argument("--rho-f", dest="rho_f", type=float)
    p.add_argument("--r-f", dest="r_f", type=float)
    p.add_argument("--annular", action="store_const", const="true")
    p.add_argument("--mu-start", dest="mu_start", type=float)
    p.add_argument("--mu-count", dest="mu_count", type=int)
    p.add_argument("--mu-list", dest="mu_list")

    p = sub.add_parser("dump-model", help="evaluate one model at a single point")
    add_common(p)
    add_model(p, ("canonical", "multilayer", "monolayer-fullzone", "haldane"))
    p.add_argument("--q1", type=float)
    p.add_argument("--q2", type=float)
    p.add_argument("--mu", type=float)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args.command, args)
        return _HANDLERS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (AmbiguousFlux, QuadratureNotConverged, NonIntegerWinding, NotConverging, IllConditioned) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except BandVortexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
