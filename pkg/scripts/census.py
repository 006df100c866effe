"""Print component counts per relative Euler class for small surfaces."""
import argparse

from psl2reps.components import census, signatures_in_range


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--chi-min", type=int, default=-4)
    parser.add_argument("--p-max", type=int, default=6)
    parser.add_argument("--boundary", default="tp", choices=["all", "hyp", "mixed", "tp"])
    args = parser.parse_args()
    for sig in signatures_in_range(args.chi_min, -1, args.p_max):
        doc = census(sig, args.boundary)
        rows = " ".join(f"{r['n']}:{r['count']}" for r in doc["per_n"] if r["count"])
        print(f"g={sig.g} p={sig.p} chi={sig.chi} total={doc['total']}  {rows}")


if __name__ == "__main__":
    main()
