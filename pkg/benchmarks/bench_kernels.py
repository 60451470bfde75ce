"""Time the compiled and pure-Python Klimyk kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--types E8,E6,D7] [--bound 1] [--repeat 3]
"""

from __future__ import annotations

import argparse
import itertools
import time

from block_atlas import kernels
from block_atlas.rootsys import build


def _workload(name: str, bound: int):
    rs = build(name)
    weights = [w for w, _ in rs.adjoint_weights]
    mults = [m for _, m in rs.adjoint_weights]
    box = list(itertools.product(range(bound + 1), repeat=rs.rank))
    return rs.cartan, weights, mults, box


def _run(backend: str, cartan, weights, mults, box) -> tuple[float, list[dict]]:
    start = time.perf_counter()
    out = [kernels.adjoint_decomposition(mu, weights, mults, cartan, backend=backend) for mu in box]
    return time.perf_counter() - start, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--types", default="E8,E7,E6,D7,F4")
    parser.add_argument("--bound", type=int, default=1)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if kernels.BACKEND != "compiled":
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    print(f"{'type':5} {'weights':>8} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name in args.types.split(","):
        cartan, weights, mults, box = _workload(name, args.bound)
        best = {}
        results = {}
        for backend in ("python", "compiled"):
            times = []
            for _ in range(args.repeat):
                t, results[backend] = _run(backend, cartan, weights, mults, box)
                times.append(t)
            best[backend] = min(times)
        if results["python"] != results["compiled"]:
            raise SystemExit(f"{name}: backends disagree")
        ratio = best["python"] / best["compiled"]
        print(f"{name:5} {len(box):8d} {best['python']:10.3f} {best['compiled']:11.3f} {ratio:7.1f}x")


if __name__ == "__main__":
    main()
