#!/usr/bin/env python3
"""Plot the sweep CSVs produced by `mdbell sweep`.

The package itself stays dependency-free; this helper needs matplotlib
and numpy.  Example:

    mdbell sweep --figure fig3 --out fig3.csv
    python docs/plot_figures.py fig3.csv out.png
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def read_rows(path):
    with open(path, newline="") as fp:
        reader = csv.reader(fp)
        header = next(reader)
        rows = list(reader)
    return header, rows


def value(cell):
    return np.nan if cell == "NA" else float(cell)


def plot_square(header, rows, ax):
    m1 = sorted({float(r[0]) for r in rows})
    m2 = sorted({float(r[1]) for r in rows})
    grid = np.full((len(m2), len(m1)), np.nan)
    index1 = {v: i for i, v in enumerate(m1)}
    index2 = {v: i for i, v in enumerate(m2)}
    for r in rows:
        grid[index2[float(r[1])], index1[float(r[0])]] = value(r[2])
    im = ax.pcolormesh(m1, m2, grid, shading="nearest")
    ax.figure.colorbar(im, ax=ax, label=header[2])
    ax.set_xlabel(header[0])
    ax.set_ylabel(header[1])


def plot_curves(header, rows, ax):
    xs = np.array([float(r[0]) for r in rows])
    for col in range(1, len(header)):
        ys = np.array([value(r[col]) for r in rows])
        ax.plot(xs, ys, label=header[col])
    ax.set_xlabel(header[0])
    ax.set_ylabel("bits")
    ax.legend()


def plot_grouped(header, rows, ax):
    # fig8 style: leading `curve` column groups rows, x then values.
    groups = {}
    for r in rows:
        groups.setdefault(r[0], []).append(r[1:])
    for name, sub in groups.items():
        xs = np.array([float(r[0]) for r in sub])
        ys = np.array([value(r[1]) for r in sub])
        ax.plot(xs, ys, label=name)
    ax.set_xlabel("x")
    ax.set_ylabel("bits")
    ax.legend()


def main():
    if len(sys.argv) != 3:
        sys.exit(f"usage: {sys.argv[0]} SWEEP_CSV OUTPUT_IMAGE")
    header, rows = read_rows(sys.argv[1])
    fig, ax = plt.subplots(figsize=(6, 5))
    if header[0] == "curve":
        plot_grouped(header, rows, ax)
    elif header[:2] == ["m1", "m2"]:
        plot_square(header, rows, ax)
    else:
        plot_curves(header, rows, ax)
    fig.tight_layout()
    fig.savefig(sys.argv[2], dpi=150)
    print(f"wrote {sys.argv[2]}")


if __name__ == "__main__":
    main()
