"""End-to-end planner throughput with and without the compiled kernels.

    python3 benchmarks/bench_planner.py [--n 500]

The JIT switch is read at import time, so each mode runs in a fresh
interpreter.
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from l2plan import kernels
from l2plan.core import Query
from l2plan.planner import plan
n, seed = int(sys.argv[1]), int(sys.argv[2])
kernels.warmup()
rng = np.random.default_rng(seed)
def disk(r):
    while True:
        x = rng.uniform(-r, r, 2)
        if x @ x <= r * r:
            return x
out = {}
for mode in ("free", "zero", "vector"):
    qs = [Query.make(disk(2), disk(1), disk(2), disk(1) if mode == "vector" else mode, 1, 1) for _ in range(n)]
    t0 = time.perf_counter()
    total = sum(plan(q).total_time for q in qs)
    out[mode] = {"seconds": time.perf_counter() - t0, "checksum": total}
print(json.dumps(out))
"""


def run(n, seed, disable):
    env = dict(os.environ, L2PLAN_DISABLE_JIT="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", CHILD, str(n), str(seed)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    fast = run(args.n, args.seed, False)
    slow = run(args.n, args.seed, True)
    print(f"{args.n} queries per goal mode")
    print(f"{'mode':<8}{'jit [s]':>10}{'python [s]':>12}{'speedup':>10}  checksum match")
    for mode in fast:
        f, s = fast[mode], slow[mode]
        same = abs(f["checksum"] - s["checksum"]) <= 1e-9 * abs(s["checksum"])
        print(f"{mode:<8}{f['seconds']:>10.3f}{s['seconds']:>12.3f}{s['seconds'] / f['seconds']:>10.1f}  {same}")


if __name__ == "__main__":
    main()
