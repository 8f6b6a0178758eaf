"""Batch front-end: reproducible experiment runs with manifest/results artifacts.

Every run resolves its configuration (plain key=value config file, overridden
by command-line flags), validates it, and writes into the output directory:

    manifest.json   the full resolved configuration (re-runnable)
    results.json    command results, fixed key order
    samples.csv     per-sample data, when the command produces samples
    plotdata.csv    two-column x,y data ready for any plotting tool

Unknown config keys are hard errors.  All randomness flows from the single
64-bit seed through the block-splitting scheme in selfapprox.sampling, so
`selfapprox rerun manifest.json` reproduces results.json byte-identically at
any --threads setting.  SELFAPPROX_OUTPUT_DIR overrides the output directory.
"""

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .characters import character_from_id, enumerate_characters
from .density import (
    ShiftFamily,
    convergence_diagnostic,
    density_from_samples,
    sample_g,
)
from .diophantine import (
    KroneckerTarget,
    find_rational_relations,
    find_tau_in_set,
    measure_kronecker_density,
)
from .errors import DomainError
from .lfunc import DEFAULT_CONFIG, EvaluatorConfig, StripRegion, hurwitz_zeta
from .meanvalue import b2_ladder, carlson_mean_value

COMMANDS = (
    "scan-density",
    "dist-fn",
    "kronecker",
    "find-tau",
    "mean-value",
    "b2",
    "relations",
    "selfcheck",
)

# command -> ordered parameter schema: name -> (parser, default); default None
# with no entry in the config means the parameter is required.
_SCHEMAS = {
    "relations": {
        "shifts": (str, None),
        "mode": (str, "exact"),
        "tolerance": (float, 1e-10),
        "coeff_cap": (int, 10**6),
    },
    "kronecker": {
        "d": (str, "1"),
        "a": (int, 1),
        "delta": (float, None),
        "primes_upto": (float, None),
        "T": (float, None),
        "samples": (float, None),
        "stratified": (int, 0),
    },
    "find-tau": {
        "d": (str, "1"),
        "a": (int, 1),
        "delta": (float, None),
        "primes_upto": (float, None),
        "bound": (float, None),
        "strategy": (str, "grid"),
        "max_results": (int, 10000),
    },
    "scan-density": {
        "d": (str, None),
        "chars": (str, None),
        "eps": (float, None),
        "T": (float, None),
        "samples": (float, 256),
        "sigma_range": (str, "0.65,0.75"),
        "t_range": (str, "-0.5,0.5"),
        "margin": (float, 0.02),
        "grid": (str, "3x3"),
        "refine": (int, 1),
    },
    "dist-fn": {
        "d": (str, None),
        "chars": (str, None),
        "T_ladder": (str, None),
        "samples": (float, 256),
        "sigma_range": (str, "0.65,0.75"),
        "t_range": (str, "-0.5,0.5"),
        "margin": (float, 0.02),
        "grid": (str, "3x3"),
    },
    "mean-value": {
        "char": (str, None),
        "sigma": (float, 0.75),
        "t": (float, 0.0),
        "y": (float, 20),
        "x": (float, 1.0),
        "T": (float, 5000),
        "samples": (float, 50000),
    },
    "b2": {
        "d": (str, None),
        "chars": (str, None),
        "N_ladder": (str, "10,100,1000"),
        "T": (float, 2000),
        "samples": (float, 1000),
        "sigma_range": (str, "0.65,0.75"),
        "t_range": (str, "-0.5,0.5"),
        "margin": (float, 0.02),
        "grid": (str, "3x3"),
    },
    "selfcheck": {},
}


def _parse_floats(text):
    return [float(x) for x in text.split(",") if x.strip() != ""]


def _parse_region(params) -> StripRegion:
    slo, shi = _parse_floats(params["sigma_range"])
    tlo, thi = _parse_floats(params["t_range"])
    gs, gt = (int(x) for x in params["grid"].split("x"))
    return StripRegion(slo, shi, tlo, thi, margin=params["margin"], grid_sigma=gs, grid_t=gt)


def _parse_family(params) -> ShiftFamily:
    shifts = tuple(_parse_floats(params["d"]))
    chars = tuple(character_from_id(c.strip()) for c in params["chars"].split(","))
    return ShiftFamily(shifts, chars)


def _read_config_file(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key = value")
            key, val = (part.strip() for part in line.split("=", 1))
            out[key] = val
    return out


def _resolve_params(command: str, file_cfg: dict, overrides: dict) -> dict:
    schema = _SCHEMAS[command]
    unknown = set(file_cfg) - set(schema)
    if unknown:
        raise DomainError(f"unknown config keys for {command}: {sorted(unknown)}")
    params = {}
    for name, (parse, default) in schema.items():
        if name in overrides and overrides[name] is not None:
            raw = overrides[name]
        elif name in file_cfg:
            raw = file_cfg[name]
        elif default is not None:
            raw = default
        else:
            raise DomainError(f"missing required parameter {name!r} for {command}")
        params[name] = parse(raw) if isinstance(raw, str) else parse(raw)
    return params


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode()


def _write_artifacts(outdir, manifest, results, samples=None, plotdata=None):
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "manifest.json"), "wb") as fh:
        fh.write(_json_bytes(manifest))
    with open(os.path.join(outdir, "results.json"), "wb") as fh:
        fh.write(_json_bytes(results))
    if samples is not None:
        header, rows = samples
        with open(os.path.join(outdir, "samples.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    if plotdata is not None:
        with open(os.path.join(outdir, "plotdata.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y"])
            writer.writerows(plotdata)


def _run_relations(params, seed, threads):
    shift_strs = [s.strip() for s in params["shifts"].split(",")]
    if params["mode"] == "exact":
        shifts = [Fraction(s) for s in shift_strs]
    else:
        shifts = [float(s) for s in shift_strs]
    rel = find_rational_relations(
        shifts, mode=params["mode"], tolerance=params["tolerance"], coeff_cap=params["coeff_cap"]
    )
    results = {
        "independent_indices": list(rel.independent_indices),
        "dependent_indices": list(rel.dependent_indices),
        "a": rel.denominator,
        "coefficients": [list(row) for row in rel.coefficients],
        "A": rel.bound_A,
        "mode": rel.mode,
    }
    return results, None, None


def _make_target(params) -> KroneckerTarget:
    return KroneckerTarget(
        shifts=tuple(_parse_floats(params["d"])),
        denominator=params["a"],
        delta=params["delta"],
        prime_bound=params["primes_upto"],
    )


def _run_kronecker(params, seed, threads):
    target = _make_target(params)
    density, (lo, hi) = measure_kronecker_density(
        target, params["T"], int(params["samples"]), seed, stratified=bool(params["stratified"])
    )
    results = {
        "density": density,
        "ci_lo": lo,
        "ci_hi": hi,
        "expected_density": target.expected_density,
        "l": len(target.shifts),
        "M": target.n_primes,
    }
    return results, None, None


def _run_find_tau(params, seed, threads):
    target = _make_target(params)
    hits = find_tau_in_set(
        target, params["bound"], strategy=params["strategy"], max_results=params["max_results"]
    )
    results = {
        "n_hits": len(hits),
        "expected_density": target.expected_density,
        "note": "" if hits else "no hits found; try a larger bound",
    }
    plot = [(repr(float(t)), repr(i / max(len(hits), 1))) for i, t in enumerate(hits)]
    samples = (["tau"], [[repr(float(t))] for t in hits])
    return results, samples, plot


def _run_scan_density(params, seed, threads):
    family = _parse_family(params)
    region = _parse_region(params)
    taus, g, deltas = sample_g(
        family, region, DEFAULT_CONFIG, params["T"], int(params["samples"]), seed,
        refine=bool(params["refine"]), threads=threads,
    )
    est = density_from_samples(g, params["eps"], params["T"])
    results = {
        "epsilon": est.epsilon,
        "horizon": est.horizon,
        "n_samples": est.n_samples,
        "hits": est.hits,
        "density": est.density,
        "ci_lo": est.ci_lo,
        "ci_hi": est.ci_hi,
        "shifts": list(family.shifts),
        "characters": [c.label for c in family.characters],
        "region": {
            "sigma_lo": region.sigma_lo, "sigma_hi": region.sigma_hi,
            "t_lo": region.t_lo, "t_hi": region.t_hi,
            "margin": region.margin,
            "grid_sigma": region.grid_sigma, "grid_t": region.grid_t,
        },
    }
    samples = (
        ["tau", "g_value", "refine_delta"],
        [[repr(float(a)), repr(float(b)), repr(float(c))] for a, b, c in zip(taus, g, deltas)],
    )
    # density as a function of eps, from the same sample set
    sorted_g = np.sort(g)
    plot = [
        (repr(float(x)), repr(float(np.count_nonzero(sorted_g < x) / len(g))))
        for x in np.linspace(0, float(sorted_g[-1]) * 1.05 + 1e-9, 101)
    ]
    return results, samples, plot


def _run_dist_fn(params, seed, threads):
    family = _parse_family(params)
    region = _parse_region(params)
    ladder = _parse_floats(params["T_ladder"])
    report = convergence_diagnostic(
        family, region, DEFAULT_CONFIG, ladder, int(params["samples"]), seed, threads=threads
    )
    # plot data: consecutive sup-distance against the larger horizon
    plot = [
        (repr(float(T)), repr(float(dist)))
        for T, dist in zip(report["T_ladder"][1:], report["distances"])
    ]
    return report, None, plot


def _run_mean_value(params, seed, threads):
    chi = character_from_id(params["char"])
    res = carlson_mean_value(
        chi,
        complex(params["sigma"], params["t"]),
        params["y"],
        params["x"],
        params["T"],
        int(params["samples"]),
        seed,
        threads=threads,
    )
    results = {
        "empirical": res.empirical,
        "theoretical": res.theoretical,
        "stderr": res.stderr,
        "relative_gap": res.relative_gap,
    }
    return results, None, None


def _run_b2(params, seed, threads):
    family = _parse_family(params)
    region = _parse_region(params)
    ladder = [int(x) for x in params["N_ladder"].split(",")]
    out = b2_ladder(
        family, ladder, params["T"], region,
        n_samples=int(params["samples"]), seed=seed, threads=threads,
    )
    results = {
        "N_ladder": ladder,
        "estimates": [est for est, _ in out],
        "stderrs": [se for _, se in out],
    }
    plot = [(repr(float(n)), repr(float(est))) for n, (est, _) in zip(ladder, out)]
    return results, None, plot


def _run_selfcheck(params, seed, threads):
    checks = {}
    cs = enumerate_characters(12)
    checks["characters_mod_12"] = len(cs) == 4
    z2 = hurwitz_zeta(2.0 + 0j, 1.0)
    checks["zeta_2"] = abs(z2 - 1.6449340668482264) < 1e-10
    rel = find_rational_relations([1, Fraction(1, 2)])
    checks["relation_half"] = rel.denominator == 2 and rel.coefficients == ((1,),)
    target = KroneckerTarget((1.0,), 1, 0.25, 2)
    density, _ = measure_kronecker_density(target, 1e4, 20000, seed)
    checks["kronecker_volume"] = abs(density - 0.5) < 0.02
    results = {"checks": checks, "passed": all(checks.values())}
    return results, None, None


_RUNNERS = {
    "relations": _run_relations,
    "kronecker": _run_kronecker,
    "find-tau": _run_find_tau,
    "scan-density": _run_scan_density,
    "dist-fn": _run_dist_fn,
    "mean-value": _run_mean_value,
    "b2": _run_b2,
    "selfcheck": _run_selfcheck,
}


def run(command: str, params: dict, seed: int, output_dir: str, threads: int = 1) -> int:
    """Execute one resolved command and write its artifacts."""
    manifest = {
        "command": command,
        "seed": seed,
        "threads": threads,
        "params": params,
        "version": __version__,
    }
    results, samples, plot = _RUNNERS[command](params, seed, threads)
    _write_artifacts(output_dir, manifest, results, samples, plot)
    return 0


def _fail(message: str, code: int = 2) -> int:
    sys.stderr.write(json.dumps({"error": message}) + "\n")
    return code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="selfapprox",
        description="Numerical experiments on self-approximation of Dirichlet L-functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output-dir", default="runs/out")
    common.add_argument("--threads", type=int, default=1)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        for key in _SCHEMAS[name]:
            p.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)
    rerun = sub.add_parser("rerun")
    rerun.add_argument("manifest")
    rerun.add_argument("--output-dir", default=None)
    rerun.add_argument("--threads", type=int, default=None)

    args = parser.parse_args(argv)
    try:
        if args.command == "rerun":
            with open(args.manifest) as fh:
                manifest = json.load(fh)
            outdir = args.output_dir or os.path.dirname(os.path.abspath(args.manifest))
            outdir = os.environ.get("SELFAPPROX_OUTPUT_DIR", outdir)
            threads = args.threads if args.threads is not None else manifest.get("threads", 1)
            return run(
                manifest["command"], manifest["params"], manifest["seed"], outdir, threads
            )
        file_cfg = _read_config_file(args.config) if args.config else {}
        overrides = {key: getattr(args, key) for key in _SCHEMAS[args.command]}
        params = _resolve_params(args.command, file_cfg, overrides)
        outdir = os.environ.get("SELFAPPROX_OUTPUT_DIR", args.output_dir)
        return run(args.command, params, args.seed, outdir, args.threads)
    except DomainError as exc:
        return _fail(str(exc))
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(str(exc), code=3)


if __name__ == "__main__":
    sys.exit(main())
