#!/usr/bin/env python3
"""Compare the exact-scalar backends on the hot kernels.

The package selects gmpy2's C-implemented rationals at import when available
and falls back to the stdlib Fraction otherwise.  This script re-executes
itself once per backend (the choice is made at import, so each measurement
needs a fresh interpreter) and reports wall times for representative exact
workloads: Pfaffians, Bareiss determinants, canonical forms, and a symbolic
identity expansion.

Usage: python benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def workload():
    from sympjoint.exact import ExactMatrix, Rat, SkewMatrix, det, pfaffian
    from sympjoint.invariants import random_config
    from sympjoint.normal_form import canonical, genericity
    from sympjoint.poly import verify_pfaffian_expansion

    rng = random.Random(12345)
    timings = {}

    skews = [
        SkewMatrix(
            10,
            {(i, j): Rat(rng.randint(-99, 99)) for i in range(10) for j in range(i + 1, 10)},
        )
        for _ in range(20)
    ]
    start = time.perf_counter()
    for s in skews:
        pfaffian(s)
    timings["pfaffian dim 10 x20"] = time.perf_counter() - start

    mats = [
        ExactMatrix([[Rat(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(8)] for _ in range(8)])
        for _ in range(40)
    ]
    start = time.perf_counter()
    for m in mats:
        det(m)
    timings["bareiss det 8x8 x40"] = time.perf_counter() - start

    configs = []
    while len(configs) < 30:
        cfg = random_config(2, 6, rng)
        if genericity(cfg).generic:
            configs.append(cfg)
    start = time.perf_counter()
    for cfg in configs:
        canonical(cfg)
    timings["canonical n=2 m=6 x30"] = time.perf_counter() - start

    start = time.perf_counter()
    verify_pfaffian_expansion(2)
    timings["pfaffian expansion n=2"] = time.perf_counter() - start

    return timings


def run_worker(backend, repeat):
    env = dict(os.environ, SYMPJOINT_RAT_BACKEND=backend)
    cmd = [sys.executable, os.path.abspath(__file__), "--worker", "--repeat", str(repeat)]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        best = {}
        for _ in range(args.repeat):
            for name, t in workload().items():
                best[name] = min(best.get(name, float("inf")), t)
        import sympjoint

        print(json.dumps({"backend": sympjoint.BACKEND, "timings": best}))
        return

    results = {}
    for backend in ("gmpy2", "fraction"):
        try:
            data = run_worker(backend, args.repeat)
        except subprocess.CalledProcessError as exc:
            print(f"{backend}: unavailable ({exc.stderr.strip().splitlines()[-1]})")
            continue
        results[data["backend"]] = data["timings"]

    if not results:
        return
    names = sorted(next(iter(results.values())))
    width = max(len(n) for n in names)
    header = f"{'kernel':<{width}}" + "".join(f"{b:>12}" for b in results)
    if len(results) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name in names:
        row = f"{name:<{width}}"
        for timings in results.values():
            row += f"{timings[name]:>11.3f}s"
        if len(results) == 2:
            a, b = (results[k][name] for k in results)
            row += f"{b / a:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
