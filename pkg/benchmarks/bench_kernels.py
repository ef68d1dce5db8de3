"""Time the compiled kernels against their interpreted versions.

    python3 benchmarks/bench_kernels.py [--repeat 2000]

Each kernel is called on the same inputs through the numba dispatcher and
through ``.py_func``; results must agree before timings are reported. With
``L2PLAN_DISABLE_JIT=1`` both columns run the same plain function.
"""

import argparse
import time

import numpy as np

from l2plan import kernels
from l2plan._jit import JIT_ENABLED


def cases(rng, n):
    for _ in range(n):
        p = rng.uniform(-2, 2, 2)
        w = rng.uniform(0.05, 0.9)
        yield p, w


def run(name, fn, argsets):
    t0 = time.perf_counter()
    out = [fn(*a) for a in argsets]
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    kernels.warmup()

    coast, stop, newton, phi = [], [], [], []
    for p, w in cases(rng, args.repeat):
        coast.append((0.3, p[0], p[1], w, 1.0, 12))
        stop.append((0.3, 1.0, p[0], p[1], w, 40))
        x0 = np.array([0.0, 1.0, np.pi, 1.0])
        newton.append((x0, p[0], p[1], w, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1e-12, 100))
        phi.append((0.0, -p[0], -p[1], w, 0.0, 0.0, 0.0, 1.0, 1.0, 100))

    table = [("coast_polish", kernels.coast_polish, coast),
             ("stop_polish", kernels.stop_polish, stop),
             ("newton4", kernels.newton4, newton),
             ("phi_newton", kernels.phi_newton, phi)]
    print(f"jit enabled: {JIT_ENABLED}, {args.repeat} calls per kernel")
    print(f"{'kernel':<14}{'jit [ms]':>12}{'python [ms]':>14}{'speedup':>10}")
    for name, fn, argsets in table:
        fast, t_fast = run(name, fn, argsets)
        slow, t_slow = run(name, fn.py_func, argsets)
        for a, b in zip(fast, slow):
            a = np.concatenate([np.ravel(x) for x in (a if isinstance(a, tuple) else (a,))])
            b = np.concatenate([np.ravel(x) for x in (b if isinstance(b, tuple) else (b,))])
            if not np.allclose(a, b, rtol=1e-9, atol=1e-12):
                raise SystemExit(f"{name}: compiled and interpreted results differ")
        print(f"{name:<14}{1e3 * t_fast:>12.2f}{1e3 * t_slow:>14.2f}{t_slow / t_fast:>10.1f}")


if __name__ == "__main__":
    main()
