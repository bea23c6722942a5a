#!/usr/bin/env python3
"""Quick-look plots from golden-scenario outputs (matplotlib required).

Usage: python scripts/plot_results.py --results out --save figs
Reads out/fig5_hom_*/hom_scan.csv and out/fig6_sweep/sweep.csv as produced
by scripts/run_golden.py.
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_scan(path):
    curves = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            c = curves.setdefault(row["state_label"], {"tau": [], "rate": [], "std": []})
            c["tau"].append(float(row["tau_fs"]))
            c["rate"].append(float(row["rate_normalized"]))
            c["std"].append(float(row.get("rate_std", 0.0)))
    return curves


def plot_scans(results: Path, save: Path):
    names = ["fig5_hom_glass", "fig5_hom_aperture"]
    titles = ["no aperture", "through aperture"]
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, name, title in zip(axes, names, titles):
        path = results / name / "hom_scan.csv"
        if not path.exists():
            ax.set_title(f"{title} (missing)")
            continue
        for label, c in sorted(read_scan(path).items()):
            ax.errorbar(c["tau"], c["rate"], yerr=c["std"], fmt="o-", ms=3, label=label)
        ax.set_xlabel("delay (fs)")
        ax.set_title(title)
        ax.legend()
    axes[0].set_ylabel("normalized cross-circular rate")
    fig.tight_layout()
    fig.savefig(save / "hom_scans.png", dpi=150)
    print(f"wrote {save / 'hom_scans.png'}")


def plot_sweep(results: Path, save: Path):
    path = results / "fig6_sweep" / "sweep.csv"
    if not path.exists():
        return
    bars = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            key = int(row["aperture_index"])
            bars.setdefault(row["state_label"], {})[key] = (
                float(row["visibility"]),
                float(row["visibility_std"]),
            )
    fig, ax = plt.subplots(figsize=(6, 4))
    width = 0.35
    for i, (label, points) in enumerate(sorted(bars.items())):
        xs = sorted(points)
        vals = [points[x][0] for x in xs]
        errs = [points[x][1] for x in xs]
        ax.bar([x + i * width for x in xs], vals, width, yerr=errs, label=label)
    ax.set_xlabel("aperture index")
    ax.set_ylabel("interference visibility")
    ax.legend()
    fig.tight_layout()
    fig.savefig(save / "aperture_sweep.png", dpi=150)
    print(f"wrote {save / 'aperture_sweep.png'}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--results", default="out", help="run_golden output root")
    parser.add_argument("--save", default="figs", help="directory for PNGs")
    args = parser.parse_args()
    results, save = Path(args.results), Path(args.save)
    save.mkdir(parents=True, exist_ok=True)
    plot_scans(results, save)
    plot_sweep(results, save)


if __name__ == "__main__":
    main()
