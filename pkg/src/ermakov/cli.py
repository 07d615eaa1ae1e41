"""Command-line front end.

    ermakov --config run.json [--task NAME] [--out DIR] [--strict] [--threads N]

The config is one JSON document.  ``potential`` and ``grid`` describe the
problem; the remaining keys depend on the task:

solve-emp          ``energy``; optional ``amplitude``
transform          ``energy``; optional ``amplitude``; the potential must be
                   the ``V`` side of a superpotential entry
chain              ``energy`` and either ``generator`` (reducible, with
                   ``c``) or ``transforms`` (list of steps); optional
                   ``amplitude``; with ``generator`` an optional
                   ``potential`` names the input potential explicitly
spectrum           ``n_max``, ``energy_range``; optional ``scan_steps``,
                   ``rho0_prime``
invariant          ``energy``, ``psi`` (``psi0``, ``psi0_prime``); optional
                   ``amplitude``
verify-squarewell  nothing; ``--config`` may be omitted

``amplitude`` is ``{"method": "pair", "coefficients": [A, B, C]}`` (default
``[1, 1, 0]``, rescaled to satisfy the Wronskian constraint) or
``{"method": "integrate", "rho0": ..., "rho0_prime": ...}``.

Exit status: 0 ok, 1 numerical failure, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

import numpy as np

from . import io
from .catalog import build_generating_function, build_potential, build_superpotential
from .darboux import (
    TransformSpec,
    apply_transforms,
    auxiliary_equality_profile,
    transform_chain_two,
    transform_first_order,
    transform_inverse,
)
from .diagnostics import lewis_invariant, quantum_number
from .emp import EmpCoefficients, amplitude_phase_wavefunction, emp_from_pair, emp_residual, integrate_emp
from .errors import ConfigError, ErmakovError, InputNotSolutionWarning
from .grid import Grid, Interval
from .potentials import partner_pair_first_order, reducible_superpotentials
from .quantization import default_initial_amplitude, find_bound_states
from .schrodinger import integrate_pair, integrate_wavefunction, map_wavefunction_first
from .verify import format_table, run_checks

log = logging.getLogger("ermakov")

TASKS = ("solve-emp", "transform", "chain", "spectrum", "invariant", "verify-squarewell")
EXIT_OK, EXIT_NUMERICAL, EXIT_CONFIG = 0, 1, 2


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _field(cfg: dict, key: str, kind=(int, float)):
    if key not in cfg:
        raise ConfigError(f"task {cfg.get('task')!r} needs {key!r}")
    value = cfg[key]
    if kind == (int, float) and (isinstance(value, bool) or not isinstance(value, kind)):
        raise ConfigError(f"{key!r} must be a number, got {value!r}")
    if kind != (int, float) and not isinstance(value, kind):
        raise ConfigError(f"{key!r} has the wrong type: {value!r}")
    return value


def _grid(cfg: dict, domain: Interval) -> Grid:
    spec = cfg.get("grid", {})
    if not isinstance(spec, dict):
        raise ConfigError("'grid' must be an object")
    try:
        interval = Interval(
            float(spec.get("lo", domain.lo)),
            float(spec.get("hi", domain.hi)),
            float(spec.get("margin", domain.margin)),
        )
        return Grid(interval, int(spec.get("points", 4001)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad grid: {exc}") from None


def _problem(cfg: dict, uses_w: bool = False):
    """Potential, superpotential (or None) and grid.

    Tasks that evaluate ``W`` take its domain margin by default, since the
    potential itself may be regular where ``W`` is not.
    """
    pot = _field(cfg, "potential", dict)
    v, w = build_potential(pot)
    domain = v.domain
    if uses_w and w is not None and w.domain.margin > domain.margin:
        domain = w.domain
    return v, w, _grid(cfg, domain)


def _amplitude(cfg: dict, v, energy: float, grid: Grid):
    spec = cfg.get("amplitude", {"method": "pair"})
    method = spec.get("method", "pair")
    if method == "pair":
        coeffs = spec.get("coefficients", [1.0, 1.0, 0.0])
        if not (isinstance(coeffs, list) and len(coeffs) == 3):
            raise ConfigError("'coefficients' must be [A, B, C]")
        pair = integrate_pair(v, energy, grid)
        try:
            coeff = EmpCoefficients.normalized(*map(float, coeffs), pair.wronskian)
        except ErmakovError as exc:
            raise ConfigError(str(exc)) from None
        return emp_from_pair(pair, coeff)
    if method == "integrate":
        rho0 = spec.get("rho0")
        rho0 = default_initial_amplitude(v, energy, grid) if rho0 is None else float(rho0)
        return integrate_emp(v, energy, grid, rho0, float(spec.get("rho0_prime", 0.0)))
    raise ConfigError(f"unknown amplitude method {method!r}")


def task_solve_emp(cfg, out: Path, args) -> dict:
    v, _, grid = _problem(cfg)
    energy = float(_field(cfg, "energy"))
    rho = _amplitude(cfg, v, energy, grid)
    io.emp_to_csv(out / "emp.csv", rho, v)
    io.wavefunction_to_csv(out / "psi.csv", amplitude_phase_wavefunction(rho))
    return {"task": "solve-emp", "E": energy, "N": quantum_number(rho).N, "residual": emp_residual(rho, v)}


def task_transform(cfg, out: Path, args) -> dict:
    v, w, grid = _problem(cfg, uses_w=True)
    if w is None:
        raise ConfigError("transform needs the 'V' side of a superpotential potential")
    energy = float(_field(cfg, "energy"))
    shift = float(cfg["potential"].get("shift", 0.0))
    _, vt = partner_pair_first_order(w, shift)
    rho = _amplitude(cfg, v, energy, grid)
    rho_t = transform_first_order(rho, w, shift=shift, strict=args.strict)
    back = transform_inverse(rho_t, w, shift=shift, strict=args.strict)
    io.emp_to_csv(out / "emp_in.csv", rho, v)
    io.emp_to_csv(out / "emp_out.csv", rho_t, vt)
    n_in, n_out = quantum_number(rho).N, quantum_number(rho_t).N
    return {
        "task": "transform",
        "E": energy,
        "N_in": n_in,
        "N_out": n_out,
        "N_shift": n_in - n_out,
        "residual_in": emp_residual(rho, v),
        "residual_out": emp_residual(rho_t, vt),
        "round_trip": float(np.max(np.abs(back.rho - rho.rho))),
        "auxiliary": float(np.max(np.abs(auxiliary_equality_profile(rho, rho_t, w)))),
    }


def _step(spec: dict) -> TransformSpec:
    if not isinstance(spec, dict):
        raise ConfigError("each transform step must be an object")
    order = spec.get("order")
    shift = float(spec.get("shift", 0.0))
    if order == 1:
        return TransformSpec(1, w=build_superpotential(_field(spec, "superpotential", dict)), shift=shift)
    if order == 2:
        return TransformSpec(2, g=build_generating_function(_field(spec, "generator", dict)), shift=shift)
    raise ConfigError(f"transform order must be 1 or 2, got {order!r}")


def task_chain(cfg, out: Path, args) -> dict:
    energy = float(_field(cfg, "energy"))
    if "generator" in cfg:
        g = build_generating_function(_field(cfg, "generator", dict))
        if not g.is_reducible:
            raise ConfigError("a two-step chain generator needs 'c'")
        w, wt = reducible_superpotentials(g)
        v, _ = partner_pair_first_order(w)
        grid = _grid(cfg, g.domain)
        # W built from f has a removable singularity wherever f = 0; an
        # explicit input potential keeps the integrator away from it
        v_in = build_potential(cfg["potential"])[0] if "potential" in cfg else v
        rho = _amplitude(cfg, v_in, energy, grid)
        direct = transform_chain_two(rho, g, strict=args.strict)
        mid = transform_first_order(rho, w, strict=args.strict)
        composed = transform_first_order(mid, wt, shift=g.c, strict=args.strict)
        stages = [rho, mid, composed]
        pots = [v_in, partner_pair_first_order(w)[1], partner_pair_first_order(wt, g.c)[1]]
        extra = {"direct_vs_composed": float(np.max(np.abs(direct.rho - composed.rho) / np.maximum(1.0, direct.rho)))}
    else:
        steps = [_step(s) for s in _field(cfg, "transforms", list)]
        if not steps:
            raise ConfigError("'transforms' is empty")
        v = steps[0].potentials()[0]
        grid = _grid(cfg, v.domain)
        rho = _amplitude(cfg, v, energy, grid)
        stages = apply_transforms(rho, steps, strict=args.strict)
        pots = [v] + [s.potentials()[1] for s in steps]
        extra = {}
    records = []
    for i, (st, pot) in enumerate(zip(stages, pots)):
        io.emp_to_csv(out / f"stage_{i}.csv", st, pot)
        records.append({"stage": i, "N": quantum_number(st).N, "residual": emp_residual(st, pot)})
    return {"task": "chain", "E": energy, "stages": records, **extra}


def task_spectrum(cfg, out: Path, args) -> dict:
    v, _, grid = _problem(cfg)
    n_max = _field(cfg, "n_max", int)
    rng = _field(cfg, "energy_range", list)
    if len(rng) != 2:
        raise ConfigError("'energy_range' must be [lo, hi]")
    try:
        rep = find_bound_states(
            v, n_max, (float(rng[0]), float(rng[1])), grid,
            scan_steps=int(cfg.get("scan_steps", 40)),
            rho0_prime=float(cfg.get("rho0_prime", 0.0)),
            threads=args.threads,
        )
    except ValueError as exc:
        if isinstance(exc, ErmakovError):
            raise
        raise ConfigError(str(exc)) from None
    io.spectrum_to_csv(out / "spectrum.csv", rep)
    return {"task": "spectrum", **io.spectrum_record(rep)}


def task_invariant(cfg, out: Path, args) -> dict:
    v, w, grid = _problem(cfg, uses_w=True)
    energy = float(_field(cfg, "energy"))
    psi_spec = _field(cfg, "psi", dict)
    psi = integrate_wavefunction(v, energy, grid, float(_field(psi_spec, "psi0")),
                                 float(_field(psi_spec, "psi0_prime")))
    rho = _amplitude(cfg, v, energy, grid)
    inv = lewis_invariant(psi, rho)
    report = {"task": "invariant", "E": energy, "N": quantum_number(rho).N, **io.invariant_record(inv)}
    io.wavefunction_to_csv(out / "psi.csv", psi)
    if w is not None:
        shift = float(cfg["potential"].get("shift", 0.0))
        rho_t = transform_first_order(rho, w, shift=shift, strict=args.strict)
        psi_t = map_wavefunction_first(psi, w, shift=shift)
        inv_t = lewis_invariant(psi_t, rho_t)
        report["partner"] = io.invariant_record(inv_t)
        report["partner"]["N"] = quantum_number(rho_t).N
        report["relative_change"] = abs(inv_t.value - inv.value) / abs(inv.value)
    return report


def task_verify(cfg, out: Path, args) -> dict:
    checks = run_checks(threads=args.threads)
    print(format_table(checks))
    return {
        "task": "verify-squarewell",
        "checks": [{"name": c.name, "value": c.value, "tolerance": c.tolerance, "passed": c.passed}
                   for c in checks],
        "passed": all(c.passed for c in checks),
    }


HANDLERS = {
    "solve-emp": task_solve_emp,
    "transform": task_transform,
    "chain": task_chain,
    "spectrum": task_spectrum,
    "invariant": task_invariant,
    "verify-squarewell": task_verify,
}


def run(cfg: dict, args) -> int:
    task = cfg.get("task")
    if task not in TASKS:
        raise ConfigError(f"unknown or missing task {task!r}; choose from {TASKS}")
    out = Path(args.out or cfg.get("out", "ermakov-out"))
    report = HANDLERS[task](cfg, out, args)
    io.write_json(out / "report.json", report)
    if task == "verify-squarewell" and not report["passed"]:
        return EXIT_NUMERICAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ermakov", description="EMP amplitudes, Darboux transforms and Milne quantization")
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--task", choices=TASKS, help="override the task named in the config")
    p.add_argument("--out", help="output directory (default: config 'out' or ./ermakov-out)")
    p.add_argument("--strict", action="store_true", help="treat inputs that fail their EMP residual check as errors")
    p.add_argument("--threads", type=int, default=1, help="worker threads for energy scans")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        cfg = load_config(args.config) if args.config else {}
        if args.task:
            cfg["task"] = args.task
        with warnings.catch_warnings():
            if args.strict:
                warnings.simplefilter("error", InputNotSolutionWarning)
            return run(cfg, args)
    except ConfigError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ErmakovError, InputNotSolutionWarning) as exc:
        code = getattr(exc, "code", "INPUT_NOT_SOLUTION")
        print(f"error [{code}]: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
