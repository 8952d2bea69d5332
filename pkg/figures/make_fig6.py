#!/usr/bin/env python3
"""Two-panel comparison of coupled (solid) and uncoupled (dashed) donor
models: (a) maximum power and (b) efficiency versus pump rate, with
optional saturation-fit overlays."""

import argparse
import sys

import matplotlib.pyplot as plt

from figlib import (
    FigureInputError,
    apply_style,
    read_pump_csv,
    saturation_curve,
)


def make_figure(coupled_path, uncoupled_path, out_path, fits):
    apply_style()
    coupled = read_pump_csv(coupled_path)
    uncoupled = read_pump_csv(uncoupled_path)
    fig, (ax_power, ax_efficiency) = plt.subplots(1, 2)

    for data, style, tag in ((coupled, "-", "coupled"), (uncoupled, "--", "uncoupled")):
        ax_power.plot(data["wp_per_s"], data["pmax_w"] * 1e6, style, label=tag)
        ax_efficiency.plot(data["wp_per_s"], data["efficiency"], style, label=tag)
    for tag, fit in fits.items():
        if fit is not None:
            a, b = fit
            wp = (coupled if tag == "coupled" else uncoupled)["wp_per_s"]
            ax_power.plot(
                wp, saturation_curve(wp, a, b) * 1e6, ":", label=f"{tag} fit"
            )

    ax_power.set_xscale("log")
    ax_power.set_xlabel(r"$W_p$ [s$^{-1}$]")
    ax_power.set_ylabel(r"$P_m$ [$\mu$W]")
    ax_power.set_title("(a) maximum power")
    ax_power.legend()
    ax_efficiency.set_xscale("log")
    ax_efficiency.set_xlabel(r"$W_p$ [s$^{-1}$]")
    ax_efficiency.set_ylabel(r"$\eta$")
    ax_efficiency.set_title("(b) efficiency")
    ax_efficiency.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--coupled", required=True, help="coupled pump-sweep CSV")
    parser.add_argument("--uncoupled", required=True, help="uncoupled pump-sweep CSV")
    parser.add_argument("--out", required=True)
    parser.add_argument("--fit-coupled", nargs=2, type=float, metavar=("A", "B"))
    parser.add_argument("--fit-uncoupled", nargs=2, type=float, metavar=("A", "B"))
    args = parser.parse_args(argv)
    fits = {"coupled": args.fit_coupled, "uncoupled": args.fit_uncoupled}
    try:
        make_figure(args.coupled, args.uncoupled, args.out, fits)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
