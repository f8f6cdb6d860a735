"""Curvature of the degree-3 and degree-4 Blaschke ellipses with foci 0 and 0.5, as CSV."""

import math
import sys

import numpy as np

from blaschke import blaschke3_ellipse, blaschke4_ellipse, curvature, curvature_bounds


def main(n=400):
    e3 = blaschke3_ellipse(0, 0.5).ellipse
    e4 = blaschke4_ellipse(0.5, 0.5, 0).ellipse
    for name, E in (("ellipse3", e3), ("ellipse4", e4)):
        lo, hi = curvature_bounds(E)
        print(f"# {name}: M={E.major:.15g} m={E.minor:.15g} bounds=({lo:.15g}, {hi:.15g})")
    t = 2 * math.pi * np.arange(n) / n
    k3, k4 = curvature(e3, t), curvature(e4, t)
    out = sys.stdout
    out.write("t,kappa3,kappa4\n")
    for row in zip(t, k3, k4):
        out.write(",".join(f"{x:.17g}" for x in row) + "\n")


if __name__ == "__main__":
    main()
