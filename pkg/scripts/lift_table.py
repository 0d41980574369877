"""Lift chain limit volumes to dimensions 3..d via the hypersurface product."""
import argparse

from toric_volume._format import exact
from toric_volume.accumulation import build_chain
from toric_volume.germ import REFERENCE_GERM
from toric_volume.volume import lift_to_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-d", type=int, default=6)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()

    g = REFERENCE_GERM
    dims = range(3, args.max_d + 1)
    print("n   " + "".join(f"d={d:<14}" for d in dims))
    for n in range(1, args.max_n + 1):
        v = g.vol_x - build_chain(n, g).limit_value
        print(f"{n:<4}" + "".join(f"{exact(lift_to_dimension(d, v)):<16}" for d in dims))


if __name__ == "__main__":
    main()
