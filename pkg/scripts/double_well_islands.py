#!/usr/bin/env python3
"""Island structure of the weakly kicked two-harmonic (double-well) map.

Equal-sign harmonics stabilize the origin (low wavenumbers); opposite signs
move the stable points out to x = +-arccos(k1/(4|k2|)), favoring
intermediate wavenumbers.
"""

import argparse

import numpy as np

from kickedchain import DoubleWellMap, fixed_point_stability, map_step


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k1", type=float, default=0.35)
    ap.add_argument("--k2", type=float, default=None, help="defaults to +-k1")
    args = ap.parse_args()

    for k2 in [args.k2] if args.k2 is not None else [args.k1, -args.k1]:
        spec = DoubleWellMap(k1=args.k1, k2=k2)
        print(f"\nk1 = {args.k1}, k2 = {k2}:")
        for fp in fixed_point_stability(spec):
            print(
                f"  x* = {fp.x:8.5f}  trace = {fp.trace:+8.4f}  {fp.stability}"
            )
        x, p = 0.1, 0.0
        max_p = 0.0
        for _ in range(10000):
            x, p = map_step(x, p, spec)
            max_p = max(max_p, abs(p))
        print(f"  orbit from (0.1, 0): max |p| over 10^4 steps = {max_p:.3f}")


if __name__ == "__main__":
    main()
