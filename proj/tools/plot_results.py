#!/usr/bin/env python3
# Copyright 2026 The WCN Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Plots the CSVs written by `wcn run`.

Usage: plot_results.py RUN_DIR [--out FILE]

The experiment is read from RUN_DIR/manifest.json.
"""

import argparse
import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def plot_fig5(run_dir, ax):
    df = pd.read_csv(os.path.join(run_dir, "fig5.csv"))
    grid = df.pivot(index="eta11", columns="rho1", values="alpha1")
    im = ax.imshow(grid.values, origin="lower", aspect="auto", vmin=0, vmax=1,
                   extent=[grid.columns.min(), grid.columns.max(),
                           grid.index.min(), grid.index.max()])
    ax.set_xlabel("rho_1")
    ax.set_ylabel("eta_11")
    ax.set_title("Bill probability of subscriber 1")
    plt.colorbar(im, ax=ax)


def plot_scatter(run_dir, name, x, ax):
    df = pd.read_csv(os.path.join(run_dir, name + ".csv"))
    ax.scatter(df[x], df["alpha"], s=8)
    ax.set_xlabel(x)
    ax.set_ylabel("Bill probability")


def plot_fig10(run_dir, ax):
    df = pd.read_csv(os.path.join(run_dir, "fig10.csv"))
    for beta, part in df.groupby("beta"):
        ax.plot(part["groups"], part["revenue"], marker="o", label=f"beta={beta:g}")
    ax.set_xlabel("number of price groups")
    ax.set_ylabel("revenue")
    ax.legend()


def plot_cycle(run_dir, ax):
    df = pd.read_csv(os.path.join(run_dir, "appendixI_mixed.csv"))
    ax.bar(df["subscriber"].astype(int).astype(str), df["alpha"])
    ax.set_xlabel("subscriber")
    ax.set_ylabel("Bill probability")
    ax.set_ylim(0, 1)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("run_dir")
    parser.add_argument("--out", help="image file (default RUN_DIR/plot.png)")
    args = parser.parse_args()

    with open(os.path.join(args.run_dir, "manifest.json")) as f:
        experiment = json.load(f)["experiment"]

    fig, ax = plt.subplots(figsize=(6, 4.5))
    if experiment == "fig5":
        plot_fig5(args.run_dir, ax)
    elif experiment == "fig6":
        plot_scatter(args.run_dir, "fig6", "popularity", ax)
    elif experiment == "fig7":
        plot_scatter(args.run_dir, "fig7", "rho", ax)
    elif experiment == "fig10":
        plot_fig10(args.run_dir, ax)
    elif experiment == "appendixI":
        plot_cycle(args.run_dir, ax)
    else:
        raise SystemExit(f"don't know how to plot {experiment!r}")
    fig.tight_layout()
    out = args.out or os.path.join(args.run_dir, "plot.png")
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
