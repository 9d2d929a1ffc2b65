"""Command-line front end tying the library into reproduction recipes.

    ptgpe <mode> [--config FILE] [--set section.key=value ...] [--out DIR]

Modes: solve, stability, map, evolve, excite.  Exit codes: 0 ok,
2 config error, 3 numerical failure, 4 run flagged as blown up
(outputs are still written).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import MODES, RunConfig, parse_config
from .errors import ConfigError, InconsistentConstraints, PtgpeError
from .evolution import FieldState, ParameterSchedule, ScheduledParam, evolve, perturb
from .model import SolitonSolution, poynting, power, sample_soliton, solve_amplitudes
from .outputs import (
    write_eigenvalues_csv,
    write_manifest,
    write_map_csv,
    write_profile_csv,
    write_snapshots,
    write_trace_csv,
)
from .stability import scan_map, stability_report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_BLOWUP = 4

# constraint mismatches below this are reported as warnings instead of
# refusing the run, so parameter values rounded to a few digits still run
CONSTRAINT_WARN_TOL = 5e-2


def _solve_with_warning(config: RunConfig) -> SolitonSolution:
    try:
        return solve_amplitudes(config.model, config.amplitude)
    except InconsistentConstraints as exc:
        if exc.mismatch >= CONSTRAINT_WARN_TOL:
            raise
        print(f"warning: {exc} (proceeding; component-1 constraint wins)", file=sys.stderr)
        return solve_amplitudes(config.model, config.amplitude, rel_tol=CONSTRAINT_WARN_TOL)


def _write_profile(config: RunConfig, sol: SolitonSolution, outputs: list[Path]) -> None:
    phi1, phi2 = sample_soliton(sol, config.grid)
    s1 = poynting(phi1, config.grid)
    s2 = poynting(phi2, config.grid)
    path = config.out_dir / "profile.csv"
    write_profile_csv(config.grid, phi1, phi2, s1, s2, path)
    outputs.append(path)


def _run_solve(config: RunConfig) -> int:
    sol = _solve_with_warning(config)
    outputs: list[Path] = []
    _write_profile(config, sol, outputs)
    phi1, phi2 = sample_soliton(sol, config.grid)
    p1, p2 = power(phi1, config.grid), power(phi2, config.grid)
    results = {
        "amp1": sol.amp1,
        "amp2": sol.amp2,
        "P1": p1,
        "P2": p2,
        "P": p1 + p2,
    }
    manifest = config.out_dir / "manifest.json"
    write_manifest(config, results, outputs, {"completed": True}, manifest)
    print(
        f"solve: A1={sol.amp1:.6g} A2={sol.amp2:.6g} P1={p1:.6g} P2={p2:.6g} "
        f"-> {config.out_dir}"
    )
    return EXIT_OK


def _run_stability(config: RunConfig) -> int:
    sol = _solve_with_warning(config)
    report = stability_report(sol, config.grid, threshold=config.threshold)
    outputs: list[Path] = []
    _write_profile(config, sol, outputs)
    eig_path = config.out_dir / "eigenvalues.csv"
    write_eigenvalues_csv(report.eigenvalues, eig_path)
    outputs.append(eig_path)
    results = {
        "amp1": sol.amp1,
        "amp2": sol.amp2,
        "max_im": report.max_im,
        "classification": report.classification,
        "threshold": report.threshold,
        "zero_mode_residuals": list(report.zero_mode_residuals),
    }
    manifest = config.out_dir / "manifest.json"
    write_manifest(config, results, outputs, {"completed": True}, manifest)
    print(
        f"stability: {report.classification} (max |Im| = {report.max_im:.6g}, "
        f"threshold {report.threshold:g}) -> {config.out_dir}"
    )
    return EXIT_OK


def _run_map(config: RunConfig) -> int:
    result = scan_map(
        config.map_v,
        config.map_w,
        config.model,
        config.amplitude,
        config.grid,
        threshold=config.threshold,
    )
    map_path = config.out_dir / "map.csv"
    write_map_csv(result, map_path)
    ok = int(np.sum(result.status == "ok"))
    stable = int(np.sum((result.status == "ok") & (result.max_im <= config.threshold)))
    results = {
        "cells": result.cell_count(),
        "ok_cells": ok,
        "stable_cells": stable,
        "unstable_cells": ok - stable,
    }
    manifest = config.out_dir / "manifest.json"
    write_manifest(config, results, [map_path], {"completed": True}, manifest)
    print(
        f"map: {result.cell_count()} cells ({ok} ok, {stable} stable at "
        f"threshold {config.threshold:g}) -> {config.out_dir}"
    )
    return EXIT_OK


def _run_evolution(config: RunConfig) -> int:
    sol = _solve_with_warning(config)
    phi1, phi2 = sample_soliton(sol, config.grid)
    state = FieldState(t=0.0, psi1=phi1, psi2=phi2)
    if config.noise_amplitude > 0:
        state = perturb(
            state,
            amplitude=config.noise_amplitude,
            seed=config.seed,
            complex_noise=config.complex_noise,
        )
    if config.mode == "excite":
        params = ParameterSchedule(
            base=config.model,
            ramps={
                name: ScheduledParam(initial, final, config.ramp_end, config.hold_end)
                for name, (initial, final) in config.schedules.items()
            },
        )
    else:
        params = config.model
    trace = evolve(
        state,
        params,
        config.grid,
        dt=config.dt,
        t_end=config.t_end,
        sample_every=config.sample_every,
        snapshot_times=config.snapshot_times,
    )
    outputs: list[Path] = []
    trace_path = config.out_dir / "trace.csv"
    write_trace_csv(trace, trace_path)
    outputs.append(trace_path)
    outputs.extend(write_snapshots(trace, config.grid, config.out_dir))
    results = {
        "amp1": sol.amp1,
        "amp2": sol.amp2,
        "P_initial": float(trace.power_total[0]) if trace.power_total.size else None,
        "P_final": float(trace.power_total[-1]) if trace.power_total.size else None,
        "t_final": float(trace.times[-1]) if trace.times.size else None,
    }
    flags = {
        "completed": trace.completed,
        "incomplete": not trace.completed,
        "blew_up": trace.blew_up,
        "blow_up_time": trace.blow_up_time,
    }
    manifest = config.out_dir / "manifest.json"
    write_manifest(config, results, outputs, flags, manifest)
    if trace.blew_up:
        print(
            f"{config.mode}: BLEW UP at t={trace.blow_up_time:.6g}; partial trace "
            f"written -> {config.out_dir}"
        )
        return EXIT_BLOWUP
    print(
        f"{config.mode}: reached t={trace.times[-1]:.6g}, P(end)={trace.power_total[-1]:.6g} "
        f"-> {config.out_dir}"
    )
    return EXIT_OK


def run(config: RunConfig) -> int:
    """Dispatch a validated config to its pipeline; returns the exit code."""
    config.out_dir.mkdir(parents=True, exist_ok=True)
    if config.mode == "solve":
        return _run_solve(config)
    if config.mode == "stability":
        return _run_stability(config)
    if config.mode == "map":
        return _run_map(config)
    return _run_evolution(config)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ptgpe",
        description="Solitons of coupled Gross-Pitaevskii equations with "
        "PT-symmetric Scarf-II potentials",
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", type=Path, default=None, help="INI-style run recipe")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override a config value (repeatable)",
    )
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    args = parser.parse_args(argv)

    try:
        config = parse_config(args.mode, path=args.config, overrides=args.overrides, out_dir=args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        return run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PtgpeError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        # keep whatever was written and record why the run stopped
        try:
            write_manifest(
                config,
                {"error": str(exc)},
                [],
                {"completed": False, "incomplete": True},
                config.out_dir / "manifest.json",
            )
        except OSError:
            pass
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
