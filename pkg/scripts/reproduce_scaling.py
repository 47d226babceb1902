"""Monte Carlo scaling runs for every family; writes a JSONL store and a fit CSV.

    python scripts/reproduce_scaling.py --out results/ --trials 30 --seed 42
"""
import argparse
import csv
import io
from pathlib import Path

from shellsort_lab import analytics
from shellsort_lab.cli import fit_rows
from shellsort_lab.increments import GENERATED

GRIDS = {
    "knuth2": [2000, 4000, 8000, 16000, 32000, 64000],
    "default": [2**e for e in range(10, 17)],
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--families", nargs="*", default=list(GENERATED))
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    store = out / "scaling.jsonl"
    records = []
    for fam in args.families:
        for n in GRIDS.get(fam, GRIDS["default"]):
            r = analytics.mc_estimate(fam, n, args.trials, args.seed)
            print(f"{fam:>20} n={n:>6} mean_T={r.mean_T:>14.1f} T/LB={r.lb_ratio:.4f}")
            records.append(r)
    analytics.append_records(store, records)

    buf = io.StringIO()
    rows = fit_rows(records)
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    (out / "fits.csv").write_text(buf.getvalue())
    print(buf.getvalue())


if __name__ == "__main__":
    main()
