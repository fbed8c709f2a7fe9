"""Time the sweep kernels on both backends.

    python benchmarks/bench_kernels.py [--full]

``--full`` adds the 4x4 box [-3, 3] (about 2.8e8 matrices; numba only, the
numpy path would take tens of minutes).
"""

from __future__ import annotations

import argparse
import time

from logk3.kernels import marked_point_cases, marked_point_sweep, nd_sweep


def _time(fn, repeat: int, warm: bool):
    if warm:
        fn()  # JIT compilation
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--full", action="store_true")
    args = parser.parse_args()

    both = ("numba", "numpy")
    grid = marked_point_cases(500, 40)
    # (label, fn(backend) -> comparable result, backends, repeats)
    cases = [
        ("nd 3x3 [-3,3]", lambda use: nd_sweep(3, -3, 3, use=use).mismatches, both, 3),
        ("nd 4x4 [-1,1]", lambda use: nd_sweep(4, -1, 1, use=use).mismatches, both, 3),
        ("nd 4x4 [-2,2]", lambda use: nd_sweep(4, -2, 2, use=use).mismatches, both, 1),
        ("marked N<=500", lambda use: int((marked_point_sweep(grid, use) < 0).sum()), both, 3),
    ]
    if args.full:
        cases.append(("nd 4x4 [-3,3]", lambda use: nd_sweep(4, -3, 3, use=use).mismatches, ("numba",), 1))

    print(f"{'case':<16} {'backend':<7} {'seconds':>9}  result")
    for label, fn, backends, repeat in cases:
        results = {}
        for use in backends:
            secs, out = _time(lambda: fn(use), repeat, warm=use == "numba")
            results[use] = out
            print(f"{label:<16} {use:<7} {secs:9.3f}  {out}")
        if len(set(results.values())) > 1:
            print(f"  backends disagree on {label}: {results}")
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
