"""Cohomology of the group with coefficients in Sym^n of the standard module, with the
two upper bounds for h^3."""
import argparse

from picard.cohomology import assemble, cohomology, h3_bounds
from picard.representations import symn_rep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    print(" n  h0 h1 h2 h3   dim E-E^ew  dim(E+ & E-)")
    for n in range(1, args.max_n + 1):
        rep = symn_rep(n)
        res = cohomology(rep, assemble(rep))
        b = h3_bounds(rep, res)
        h = " ".join(f"{x:2d}" for x in res.dims)
        print(f"{n:2d}  {h}   {b.rank_bound:10d}  {b.eigen_bound:12d}")


if __name__ == "__main__":
    main()
