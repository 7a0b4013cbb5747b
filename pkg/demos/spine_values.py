"""First-contact points of the strongly admissible sets, their margins, and sampled
values of the max-parabolic function on the two 3-cells."""
import argparse
import random

from picard import spine
from picard.configurations import ConfigClass, STRONGLY_ADMISSIBLE


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100, help="points per 3-cell")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("set    y          beta                    r          f      best other")
    for tag in STRONGLY_ADMISSIBLE:
        rep = spine.admissibility_report(tag)
        z = rep.point
        print(f"{tag.value:6s} {z.y:.6f}  {z.beta.real:+.6f}{z.beta.imag:+.6f}i  {z.r:+.6f}  "
              f"{rep.value:.4f} {rep.best_outside:.4f}")

    rng = random.Random(args.seed)
    for tag in (ConfigClass.J2_1, ConfigClass.J2_2):
        vals = [v for _, v in spine.sample_cell_values(tag, args.samples, rng)]
        print(f"{tag.value}: {len(vals)} samples, values in [{min(vals):.4f}, {max(vals):.4f}]")
    print(f"lower bounds: 5^(-1/4) = {5 ** -0.25:.4f}, 1/sqrt(2) = {2 ** -0.5:.4f}")


if __name__ == "__main__":
    main()
