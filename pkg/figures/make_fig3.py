#!/usr/bin/env python3
"""Dual-axis figure of maximum power (dashed, left) and efficiency
(solid, right) against the pump rate, from a pump-sweep CSV.  Optionally
overlays a fitted saturation curve a*W/(W+b)."""

import argparse
import sys

import matplotlib.pyplot as plt

from figlib import (
    FigureInputError,
    apply_style,
    read_pump_csv,
    saturation_curve,
)


def make_figure(input_path, out_path, fit_a=None, fit_b=None):
    apply_style()
    data = read_pump_csv(input_path)
    fig, ax_power = plt.subplots(figsize=(5.2, 3.8))
    ax_efficiency = ax_power.twinx()

    wp = data["wp_per_s"]
    ax_power.plot(wp, data["pmax_w"] * 1e6, "r--", label=r"$P_{\max}$")
    ax_efficiency.plot(wp, data["efficiency"], "b-", label=r"efficiency $\eta$")
    if fit_a is not None and fit_b is not None:
        ax_power.plot(
            wp,
            saturation_curve(wp, fit_a, fit_b) * 1e6,
            "k:",
            label=rf"fit $aW_p/(W_p+b)$",
        )

    ax_power.set_xscale("log")
    ax_power.set_xlabel(r"$W_p$ [s$^{-1}$]")
    ax_power.set_ylabel(r"$P_{\max}$ [$\mu$W]", color="r")
    ax_efficiency.set_ylabel(r"$\eta$", color="b")
    ax_efficiency.grid(False)
    lines_p, labels_p = ax_power.get_legend_handles_labels()
    lines_e, labels_e = ax_efficiency.get_legend_handles_labels()
    ax_power.legend(lines_p + lines_e, labels_p + labels_e, loc="center left")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--inputs", nargs=1, required=True, help="pump-sweep CSV")
    parser.add_argument("--out", required=True)
    parser.add_argument("--fit-a", type=float, help="fitted a (output power units)")
    parser.add_argument("--fit-b", type=float, help="fitted b (pump-rate units)")
    args = parser.parse_args(argv)
    if (args.fit_a is None) != (args.fit_b is None):
        parser.error("--fit-a and --fit-b must be given together")
    try:
        make_figure(args.inputs[0], args.out, args.fit_a, args.fit_b)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
