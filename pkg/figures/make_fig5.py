#!/usr/bin/env python3
"""I-V and P-V comparison of coupled (solid) versus uncoupled (dashed)
donor models, one pair of line styles per pump rate."""

import argparse
import sys

import matplotlib.pyplot as plt

from figlib import (
    FigureInputError,
    apply_style,
    positive_voltage_branch,
    pump_rate_label,
    read_iv_csv,
)


def plot_curves(ax_current, ax_power, paths, style, tag):
    for path in paths:
        data = positive_voltage_branch(read_iv_csv(path))
        if data["voltage_v"].size == 0:
            raise FigureInputError(f"{path}: no points with V >= 0")
        order = data["voltage_v"].argsort()
        volts = data["voltage_v"][order]
        label = f"{tag}, {pump_rate_label(path)}"
        ax_current.plot(volts, data["current_a"][order] * 1e6, style, label=label)
        ax_power.plot(volts, data["power_w"][order] * 1e6, style, label=label)


def make_figure(coupled_paths, uncoupled_paths, out_path):
    apply_style()
    fig, (ax_current, ax_power) = plt.subplots(1, 2)
    plot_curves(ax_current, ax_power, coupled_paths, "-", "coupled")
    plot_curves(ax_current, ax_power, uncoupled_paths, "--", "uncoupled")
    ax_current.set_xlabel("V [V]")
    ax_current.set_ylabel(r"I [$\mu$A]")
    ax_current.set_title("(a) current")
    ax_power.set_xlabel("V [V]")
    ax_power.set_ylabel(r"P [$\mu$W]")
    ax_power.set_title("(b) power")
    ax_current.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--coupled", nargs="+", required=True, help="coupled-model I-V CSVs")
    parser.add_argument("--uncoupled", nargs="+", required=True, help="uncoupled-model I-V CSVs")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    try:
        make_figure(args.coupled, args.uncoupled, args.out)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
