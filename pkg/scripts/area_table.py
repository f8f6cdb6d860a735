"""Total power-circle area against the closed form for foci +-a, plus the off-center families."""

import argparse
import math
import time

from blaschke import BlaschkeProduct, invariant_total_area, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    print(f"{'zeros':>34}  {'mean/pi':>18}  {'closed/pi':>18}  {'spread':>9}")
    start = time.perf_counter()
    for k in range(10):
        a = k / 10
        rep = sweep(BlaschkeProduct((0, a, -a)), args.samples, args.seed)
        print(f"{f'0, {a}, -{a}':>34}  {rep.mean / math.pi:18.15f}  {invariant_total_area(a) / math.pi:18.15f}  {rep.spread:9.2e}")
    others = {
        "0, 0, 0.5": (0, 0, 0.5),
        "0, 0, 0.1": (0, 0, 0.1),
        "0, sqrt2/3 - i/3, -sqrt2/3 - i/3": (0, math.sqrt(2) / 3 - 1j / 3, -math.sqrt(2) / 3 - 1j / 3),
    }
    for label, zeros in others.items():
        rep = sweep(BlaschkeProduct(zeros), args.samples, args.seed)
        print(f"{label:>34}  {rep.mean / math.pi:18.15f}  {'-':>18}  {rep.spread:9.2e}")
    print(f"elapsed {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
