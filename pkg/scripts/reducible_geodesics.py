"""Geodesic incidence and angle checks for conjugated power maps over a grid of (a, n)."""

import cmath

from blaschke import conjugate_power, is_reducible, opposite_pair_geodesics
from blaschke.reducible import angle_comparison


def main():
    print(f"{'a':>16} {'n':>2} {'reducible':>9} {'|xi - a|':>9} {'geodesic dev':>12} {'angle err':>9}")
    for r in (0.2, 0.5, 0.8):
        for t in (0.3, 1.9, 4.0):
            a = r * cmath.exp(1j * t)
            for n in (2, 4, 6, 8):
                B = conjugate_power(a, n)
                v = is_reducible(B)
                dev = opposite_pair_geodesics(B, a).max_deviation
                zs, roots = angle_comparison(B, a)
                err = max(abs(x - y) for x, y in zip(zs, roots))
                print(f"{a:16.4f} {n:2d} {str(v.reducible):>9} {abs(v.conjugate_point - a):9.1e} {dev:12.1e} {err:9.1e}")


if __name__ == "__main__":
    main()
