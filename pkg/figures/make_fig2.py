#!/usr/bin/env python3
"""Two-panel I-V and P-V figure from one or more load-sweep CSVs,
one curve per pump rate."""

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


def make_figure(input_paths, out_path):
    apply_style()
    fig, (ax_current, ax_power) = plt.subplots(1, 2)
    for path in input_paths:
        data = positive_voltage_branch(read_iv_csv(path))
        if data["voltage_v"].size == 0:
            raise FigureInputError(f"{path}: no points with V >= 0")
        label = pump_rate_label(path)
        order = data["voltage_v"].argsort()
        volts = data["voltage_v"][order]
        ax_current.plot(volts, data["current_a"][order] * 1e6, label=label)
        ax_power.plot(volts, data["power_w"][order] * 1e6, label=label)
    ax_current.set_xlabel("V [V]")
    ax_current.set_ylabel(r"I [$\mu$A]")
    ax_current.set_title("(a) current")
    ax_power.set_xlabel("V [V]")
    ax_power.set_ylabel(r"P [$\mu$W]")
    ax_power.set_title("(b) power")
    if len(input_paths) > 1:
        ax_current.legend()
        ax_power.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--inputs", nargs="+", required=True, help="I-V sweep CSVs")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        make_figure(args.inputs, args.out)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
