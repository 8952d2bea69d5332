"""Command-line surface tying the engines together.

Subcommands: flux, simulate, iv, pump-sweep, fit, presets.  Exit codes:
0 on success, 1 on domain/validation errors, 2 on usage errors.  Sweep
concurrency is capped by the QPV_THREADS environment variable (default:
machine parallelism); results do not depend on the worker count.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import ingest_config, system_from_config, system_to_config
from .csv_io import (
    RunManifest,
    emit_iv_csv,
    emit_pump_csv,
    emit_trace_csv,
    read_pump_csv,
)
from .dynamics import integrate_rk4, steady_state_direct, uniform_state
from .errors import DomainError, QpvError
from .observables import current, voltage
from .presets import PRESETS, build_preset, preset_config_model_b
from .rate_network import LevelSystem, build_rate_matrix
from .sweeps import fit_saturation_arrays, iv_sweep, max_power_point, pump_sweep


def _resolve_model(
    source: str, pump_rate: float | None, gamma_load: float | None, chi: float | None
) -> LevelSystem:
    """Build a LevelSystem from a preset name or a config file path."""
    if source in PRESETS:
        kwargs = {}
        if gamma_load is not None:
            kwargs["gamma_load_per_s"] = gamma_load
        if chi is not None:
            kwargs["chi"] = chi
        return build_preset(source, pump_rate, **kwargs)
    path = Path(source)
    if not path.exists():
        raise DomainError(
            f"{source!r} is neither a preset ({', '.join(sorted(PRESETS))}) "
            "nor an existing config file"
        )
    system = ingest_config(path)
    if pump_rate is not None:
        system = system.with_total_pump_rate(pump_rate)
    if gamma_load is not None or chi is not None:
        system = system.with_gamma_load(
            system.extraction.gamma_load_per_s if gamma_load is None else gamma_load,
            chi,
        )
    return system


def _template_for(source: str, gamma_load: float | None, chi: float | None):
    return lambda wp: _resolve_model(source, wp, gamma_load, chi)


def _manifest(args, system: LevelSystem, sweep_parameters: dict) -> RunManifest:
    return RunManifest(
        command_line=list(sys.argv),
        model_source=args.model,
        resolved_config=system_to_config(system),
        sweep_parameters=sweep_parameters,
        assumptions=list(system.assumptions),
        artifact_version=__version__,
    )


def _cmd_flux(args) -> int:
    from .radiometry import planck_photon_flux, pump_rate_to_area

    flux = planck_photon_flux(args.egap, args.temp)
    print(f"band_gap_ev = {args.egap}")
    print(f"temperature_k = {args.temp}")
    print(f"flux_per_m2_s = {flux.flux_per_m2_s:.6e}")
    if args.pump_rate is not None:
        area = pump_rate_to_area(args.pump_rate, args.egap, args.temp)
        print(f"pump_rate_per_s = {args.pump_rate}")
        print(f"area_m2 = {area.area_m2:.6e}")
        print(f"note: {area.note}")
    return 0


def _cmd_presets(args) -> int:
    for name in sorted(PRESETS):
        entry = PRESETS[name]
        print(f"{name}: {entry['description']}")
    if args.show_config:
        example = preset_config_model_b(1e12, gamma_load_per_s=1e12)
        print("\nexample config (model_b at W_p = 1e12, Gamma = 1e12):")
        print(json.dumps(example, indent=2))
    return 0


def _cmd_simulate(args) -> int:
    system = _resolve_model(args.model, args.wp, args.gamma, args.chi)
    matrix = build_rate_matrix(system)
    if args.trace:
        import numpy as np

        max_decay = float(np.max(np.abs(np.diag(matrix.entries))))
        dt = args.dt if args.dt is not None else (0.05 / max_decay if max_decay else 1.0)
        state = uniform_state(matrix.level_names)
        states = [state]
        for _ in range(args.steps):
            state = integrate_rk4(matrix, state, dt, 1)
            states.append(state)
        emit_trace_csv(states, args.trace)
        manifest = _manifest(args, system, {"dt_s": dt, "steps": args.steps})
        manifest.write_alongside(args.trace)
        print(f"wrote {len(states)} trace rows to {args.trace}")
        return 0
    report = steady_state_direct(matrix)
    print(f"method = {report.method}")
    print(f"residual_per_s = {report.residual_per_s:.6e}")
    for name, population in report.state.as_dict().items():
        print(f"P_{name} = {population:.12e}")
    if system.extraction.gamma_load_per_s > 0:
        amps = current(report.state, system.extraction)
        volts = voltage(report.state, system)
        print(f"current_a = {amps:.6e}")
        print(f"voltage_v = {volts:.6e}")
        print(f"power_w = {amps * volts:.6e}")
    return 0


def _cmd_iv(args) -> int:
    system = _resolve_model(args.model, args.wp, None, args.chi)
    curve = iv_sweep(system, None, args.gamma_min, args.gamma_max, args.points)
    emit_iv_csv(curve, args.out)
    manifest = _manifest(
        args,
        system,
        {
            "pump_rate_per_s": curve.pump_rate_per_s,
            "gamma_min_per_s": args.gamma_min,
            "gamma_max_per_s": args.gamma_max,
            "n_points": args.points,
        },
    )
    manifest.write_alongside(args.out)
    print(f"wrote {len(curve.points)} I-V points to {args.out}")
    return 0


def _cmd_pump_sweep(args) -> int:
    template = _template_for(args.model, None, args.chi)
    sweep = pump_sweep(template, args.wp_min, args.wp_max, args.points)
    emit_pump_csv(sweep, args.out)
    system = _resolve_model(args.model, args.wp_min, None, args.chi)
    manifest = _manifest(
        args,
        system,
        {
            "wp_min_per_s": args.wp_min,
            "wp_max_per_s": args.wp_max,
            "n_points": args.points,
            "config_resolved_at": "wp_min",
        },
    )
    manifest.write_alongside(args.out)
    print(f"wrote {len(sweep.points)} pump-sweep points to {args.out}")
    return 0


def _cmd_fit(args) -> int:
    wp, power = read_pump_csv(args.infile)
    fit = fit_saturation_arrays(wp, power)
    print(f"a = {fit.a:.10e}")
    print(f"b = {fit.b:.10e}")
    print(f"rms_residual = {fit.rms_residual:.6e}")
    print(f"iterations = {fit.iterations}")
    print(f"converged = {fit.converged}")
    return 0


def _cmd_mpp(args) -> int:
    template = _template_for(args.model, None, args.chi)
    point = max_power_point(template, args.wp)
    print(f"wp_per_s = {point.pump_rate_per_s:.6e}")
    print(f"pmax_w = {point.max_power_w:.6e}")
    print(f"v_mpp_v = {point.v_mpp_v:.6e}")
    print(f"gamma_mpp_per_s = {point.gamma_mpp_per_s:.6e}")
    print(f"efficiency = {point.efficiency:.6e}")
    if point.multimodal:
        print("note: coarse scan saw multiple local maxima (multimodal)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpvsim",
        description="Rate-equation photocell simulator: steady states, I-V curves, "
        "pump sweeps, and saturation fits.",
    )
    parser.add_argument("--version", action="version", version=f"qpvsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flux", help="blackbody photon flux above a band gap")
    p.add_argument("--egap", type=float, required=True, help="band gap [eV]")
    p.add_argument("--temp", type=float, required=True, help="source temperature [K]")
    p.add_argument("--pump-rate", type=float, help="pump rate [1/s] to convert to an area")
    p.set_defaults(handler=_cmd_flux)

    p = sub.add_parser("presets", help="list built-in models")
    p.add_argument("--show-config", action="store_true", help="print an example config")
    p.set_defaults(handler=_cmd_presets)

    p = sub.add_parser("simulate", help="steady state or time trace of one model")
    p.add_argument("--model", required=True, help="preset name or config path")
    p.add_argument("--wp", type=float, help="total pump rate [1/s]")
    p.add_argument("--gamma", type=float, help="load extraction rate [1/s]")
    p.add_argument("--chi", type=float, help="recombination ratio chi")
    p.add_argument("--trace", help="write a time-trace CSV to this path")
    p.add_argument("--dt", type=float, help="trace step [s] (default 0.05/max|diag|)")
    p.add_argument("--steps", type=int, default=1000, help="trace steps")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("iv", help="I-V / P-V curve over a load sweep")
    p.add_argument("--model", required=True)
    p.add_argument("--wp", type=float, help="total pump rate [1/s]")
    p.add_argument("--chi", type=float)
    p.add_argument("--gamma-min", type=float, required=True)
    p.add_argument("--gamma-max", type=float, required=True)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(handler=_cmd_iv)

    p = sub.add_parser("pump-sweep", help="max power and efficiency vs pump rate")
    p.add_argument("--model", required=True)
    p.add_argument("--chi", type=float)
    p.add_argument("--wp-min", type=float, required=True)
    p.add_argument("--wp-max", type=float, required=True)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(handler=_cmd_pump_sweep)

    p = sub.add_parser("mpp", help="maximum-power point at one pump rate")
    p.add_argument("--model", required=True)
    p.add_argument("--wp", type=float, required=True)
    p.add_argument("--chi", type=float)
    p.set_defaults(handler=_cmd_mpp)

    p = sub.add_parser("fit", help="fit P = a*W/(W+b) to a pump-sweep CSV")
    p.add_argument("--in", dest="infile", required=True, help="pump-sweep CSV path")
    p.set_defaults(handler=_cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except QpvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
