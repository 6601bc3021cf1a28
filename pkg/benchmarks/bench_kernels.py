"""Benchmark the compiled pivot kernel against the pure-Python one.

Two workloads:

* full: coupling feasibility with four interior connection targets at
  denominator 10^6, the worst case the CLI produces (no presolve applies,
  the kernel walks the full 256-column tableau).
* identity: the presolved identity-coupling check (16 columns after the
  zero-forcing pass), the shape the big campaigns hammer.

Arithmetic backends are selected the same way the library selects them, by
re-executing this script with SPINCOUPLE_RATIONAL / SPINCOUPLE_KERNEL set,
so each (kernel, arithmetic) cell runs in a clean interpreter.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--inner N]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def workload_full(inner: int) -> float:
    from fractions import Fraction

    from spincouple import ConnectionVector, coupling_exists, sample_uniform_marginal_scenario

    targets = ConnectionVector(
        Fraction(707107, 1000000),
        Fraction(-333333, 1000000),
        Fraction(5, 8),
        Fraction(141421, 1000000),
    )
    t0 = time.perf_counter()
    for k in range(inner):
        s = sample_uniform_marginal_scenario(1234, k)
        coupling_exists(s, targets)
    return (time.perf_counter() - t0) / inner


def workload_identity(inner: int) -> float:
    from spincouple import identity_coupling_exists, sample_uniform_marginal_scenario

    t0 = time.perf_counter()
    for k in range(inner):
        s = sample_uniform_marginal_scenario(1234, k)
        identity_coupling_exists(s)
    return (time.perf_counter() - t0) / inner


WORKLOADS = {"full": workload_full, "identity": workload_identity}


def run_child(kernel: str, rational: str, workload: str, repeat: int, inner: int) -> dict:
    env = dict(os.environ)
    env["SPINCOUPLE_KERNEL"] = kernel
    env["SPINCOUPLE_RATIONAL"] = rational
    cmd = [
        sys.executable, os.path.abspath(__file__),
        "--child", workload, "--repeat", str(repeat), "--inner", str(inner),
    ]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True)
    if out.returncode != 0:
        return {"error": out.stderr.strip().splitlines()[-1] if out.stderr else "failed"}
    return json.loads(out.stdout)


def child_main(workload: str, repeat: int, inner: int) -> None:
    from spincouple import kernel_backend

    fn = WORKLOADS[workload]
    fn(max(1, inner // 4))  # warm up
    times = [fn(inner) for _ in range(repeat)]
    print(json.dumps({"backend": kernel_backend(), "per_solve_s": statistics.median(times)}))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--inner", type=int, default=20)
    ap.add_argument("--child", choices=list(WORKLOADS), default=None)
    args = ap.parse_args()

    if args.child:
        child_main(args.child, args.repeat, args.inner)
        return

    cells = [
        ("compiled", "gmpy2"),
        ("pure", "gmpy2"),
        ("pure", "fraction"),
    ]
    for workload in WORKLOADS:
        print(f"workload: {workload}")
        baseline = None
        for kernel, rational in cells:
            res = run_child(kernel, rational, workload, args.repeat, args.inner)
            if "error" in res:
                print(f"  {kernel:8s} + {rational:8s}  unavailable ({res['error']})")
                continue
            ms = res["per_solve_s"] * 1000.0
            if baseline is None:
                baseline = ms
            print(
                f"  {res['backend']:18s} {ms:9.2f} ms/solve   x{ms / baseline:.2f} vs first row"
            )
        print()


if __name__ == "__main__":
    main()
