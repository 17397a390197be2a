"""Compare the numba kernels with the pure-Python fallback.

Each backend runs in its own interpreter because the choice is made at import
time (TWOCOUNTERS_NO_NUMBA=1 selects the fallback). The first call of every
workload is timed separately so JIT compilation does not skew the steady-state
numbers.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "zlk tc(8)": ("zlk", 8),
    "pp tc(6)": ("pp", 6),
    "dp tc(6)": ("dp", 6),
    "rr tc(6)": ("rr", 6),
    "tl tc(6)": ("tl", 6),
    "oracle x100": ("oracle", 100),
}


def child(repeat):
    import numpy as np

    from twocounters import _accel
    from twocounters.generator import generate_two_counters
    from twocounters.oracle import oracle_solve
    from twocounters.randomgames import random_corpus
    from twocounters.solvers import solve

    def work(kind, n):
        if kind == "oracle":
            for g in random_corpus(11, n, max_vertices=8):
                oracle_solve(g)
            return n
        return solve(generate_two_counters(n).game, kind).value

    out = {"backend": _accel.backend_name(), "rows": {}}
    for name, (kind, n) in WORKLOADS.items():
        t0 = time.perf_counter()
        value = work(kind, n)
        first = time.perf_counter() - t0
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            work(kind, n)
            times.append(time.perf_counter() - t0)
        out["rows"][name] = {"value": value, "first": first, "best": float(np.min(times))}
    print(json.dumps(out))


def run_backend(disable, repeat):
    env = dict(os.environ)
    if disable:
        env["TWOCOUNTERS_NO_NUMBA"] = "1"
    else:
        env.pop("TWOCOUNTERS_NO_NUMBA", None)
    proc = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        child(args.repeat)
        return

    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    print(f"{'workload':<12} {'value':>7} {fast['backend']:>10} {'(first)':>9} {slow['backend']:>10} {'speedup':>8}")
    for name in WORKLOADS:
        f, s = fast["rows"][name], slow["rows"][name]
        if f["value"] != s["value"]:
            sys.exit(f"backends disagree on {name}: {f['value']} vs {s['value']}")
        print(f"{name:<12} {f['value']:>7} {f['best']:>9.4f}s {f['first']:>8.2f}s {s['best']:>9.4f}s "
              f"{s['best'] / max(f['best'], 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
