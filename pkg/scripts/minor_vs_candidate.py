"""Small-n study of the minimal simple-process schedules.

For every permutation of n <= 6 keys and a few short increment sequences,
compares the least total T' with Shellsort's T, the greedy displacement
candidate with the lexicographically first minimum, and the per-pass digit
bounds h_{k-1}/h_k.
"""
import argparse
import json

from shellsort_lab.verify import claims_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    report = claims_suite(args.max_n)
    cols = ["n", "increments", "checked", "minor_total_equal_T", "digit_bound_violations",
            "bounded_minimum_missing", "max_digit_bound_ratio", "candidate_agreement_rate"]
    print("\t".join(cols))
    for case in report["cases"]:
        print("\t".join(str(case[c]) for c in cols))
    print(json.dumps(report["counterexample"]))


if __name__ == "__main__":
    main()
