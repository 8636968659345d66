"""Time every protocol back to back on one machine.

Runs each protocol for a fixed iteration count at matching parameters and
prints a single table: mean per session plus the slowest phase. The pad-swap
row is the headline; the others show what the group and homomorphic
operations cost at the same message size.
"""

import argparse
import sys

sys.path.insert(0, "src")

from otkit.cli import bench_protocol
from otkit.harness import PROTOCOLS

# duq-mr pays for 4 Paillier inner products per session; keep its count low
ITERS = {"supersonic": 5000, "np-ot": 200, "dq-ot": 200, "duq-ot": 200,
         "comp-np": 50, "dq-mr": 100, "duq-mr": 20}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group-bits", type=int, default=512)
    ap.add_argument("--sigma", type=int, default=128)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"group {args.group_bits} bits, sigma {args.sigma} bits")
    print(f"{'protocol':<12} {'iters':>6} {'mean ms':>12}  slowest phase")
    reports = {}
    for protocol in PROTOCOLS:
        ns = argparse.Namespace(
            seed=args.seed, sigma=args.sigma, lambda_bits=128,
            group_bits=args.group_bits, paillier_bits=None, toy=False,
        )
        r = bench_protocol(protocol, ITERS[protocol], ns)
        reports[protocol] = r
        label, seconds = max(r.phases, key=lambda kv: kv[1])
        print(f"{protocol:<12} {r.iterations:>6} {r.mean_seconds * 1000:>12.4f}"
              f"  {label} ({seconds * 1000:.4f} ms)")
    ratio = reports["np-ot"].mean_seconds / reports["supersonic"].mean_seconds
    print(f"\npad swap vs group-based base transfer: {ratio:.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
