"""Print decreasing volume chains over the reference germ, one block per n."""
import argparse

from toric_volume._format import approx, exact
from toric_volume.accumulation import build_chain, sample_values, verify_certificate
from toric_volume.germ import REFERENCE_GERM


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--samples", type=int, default=6)
    ap.add_argument("--digits", type=int, default=10)
    args = ap.parse_args()

    g = REFERENCE_GERM
    for n in range(1, args.max_n + 1):
        cert = build_chain(n, g)
        assert verify_certificate(cert, args.samples)
        top = cert.levels()[0]
        print(f"n={n}  limit ({top.limit_weights.to_text()})  vol -> {exact(g.vol_x - top.limit_value)}")
        for m, v in zip(top.valid_ms(args.samples), sample_values(top, args.samples, as_volumes=True, g=g)):
            print(f"  m={m:<4} vol={exact(v):<28} ~{approx(v, args.digits)}")


if __name__ == "__main__":
    main()
