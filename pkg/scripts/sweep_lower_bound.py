"""GRQ versus the optimum on the adversarial family, B = 2..B_MAX.

    python scripts/sweep_lower_bound.py --b-max 40 --eps-micro 1 > sweep.csv
"""

import argparse
import sys

from bounded_buffer.harness import sweep_csv, sweep_lower_bound


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--b-max", type=int, default=24)
    ap.add_argument("--eps-micro", type=int, default=1)
    ap.add_argument("--mode", default="per-arrival", choices=["per-arrival", "post-delivery"])
    args = ap.parse_args()
    rows = sweep_lower_bound(2, args.b_max, args.eps_micro, args.mode)
    sys.stdout.write(sweep_csv(rows))
    worst = max(rows, key=lambda r: r.measured_ratio)
    print(f"# worst measured ratio {float(worst.measured_ratio):.6f} at B={worst.buffer}",
          file=sys.stderr)


if __name__ == "__main__":
    main()
