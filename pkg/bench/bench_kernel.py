"""Benchmark the compiled counting kernel against the pure-Python fallback.

Runs the same profile sweep through both kernels, checks that every row
agrees, and reports wall-clock times and the speedup.

    python3 bench/bench_kernel.py --n 5 --max-magnitude 5
"""

import argparse
import time

from hypertrees import _kernel_py
from hypertrees.hypergraphs import assignment_count, iter_profiles

try:
    from hypertrees import _kernel
except ImportError:
    _kernel = None


def run(kernel, n: int, profiles) -> tuple[float, list[tuple[int, int, int]]]:
    rows = []
    start = time.perf_counter()
    for profile in profiles:
        rows.append(kernel.count_profile(n, profile.sizes()))
    return time.perf_counter() - start, rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5, help="labeled vertices")
    parser.add_argument(
        "--max-magnitude", type=int, default=5,
        help="sweep every edge profile up to this magnitude",
    )
    parser.add_argument(
        "--repeat", type=int, default=3, help="take the best of this many passes"
    )
    args = parser.parse_args()

    profiles = [
        p for p in iter_profiles(args.max_magnitude, max_size=args.n)
    ]
    total = sum(assignment_count(args.n, p) for p in profiles)
    print(
        f"n={args.n}, magnitude <= {args.max_magnitude}: "
        f"{len(profiles)} profiles, {total:,} labeled hypergraphs"
    )

    pure_time = min(
        run(_kernel_py, args.n, profiles)[0] for _ in range(args.repeat)
    )
    _, pure_rows = run(_kernel_py, args.n, profiles)
    print(f"pure python: {pure_time:8.3f} s")

    if _kernel is None:
        print("compiled kernel not built; install normally to compare")
        return

    compiled_time = min(
        run(_kernel, args.n, profiles)[0] for _ in range(args.repeat)
    )
    _, compiled_rows = run(_kernel, args.n, profiles)
    if compiled_rows != pure_rows:
        raise SystemExit("kernel disagreement; benchmark aborted")
    print(f"compiled:    {compiled_time:8.3f} s")
    print(f"speedup:     {pure_time / compiled_time:8.1f}x  (rows agree)")


if __name__ == "__main__":
    main()
