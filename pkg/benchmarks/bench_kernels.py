"""Time the compiled and pure-Python Bessel kernels against each other.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--number 200]

Each case calls ``jy_orders(z, nmax, want_y)`` (all integer orders up to
``nmax`` in one sweep).  The script also reports the largest relative
disagreement between the two backends so a speedup never hides a
numerical regression.
"""

from __future__ import annotations

import argparse
import importlib
import timeit

import numpy as np

CASES = [
    # (label, z, nmax, want_y)
    ("small real, J only", 2.5, 10, False),
    ("disk interior, n kR", 34.65, 20, True),
    ("large real", 150.0, 40, True),
    ("complex, lower half", 10.5 - 0.3j, 15, True),
    ("complex, resonance", 8.45 - 2.4e-4j, 14, True),
    ("high order", 60.0, 120, True),
]


def _max_rel(a, b) -> float:
    worst = 0.0
    for xa, xb in zip(a, b):
        if xa is None:
            continue
        xa, xb = np.asarray(xa), np.asarray(xb)
        scale = np.maximum(np.abs(xb), 1e-14 * np.max(np.abs(xb)))
        worst = max(worst, float(np.max(np.abs(xa - xb) / scale)))
    return worst


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args()

    py = importlib.import_module("sysbath.specfun._pykernels")
    try:
        cy = importlib.import_module("sysbath.specfun._ckernels")
    except ImportError:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1

    head = f"{'case':24s} {'python us':>10s} {'cython us':>10s} {'speedup':>8s} {'max rel diff':>13s}"
    print(head)
    print("-" * len(head))
    for label, z, nmax, want_y in CASES:
        times = {}
        for name, mod in (("py", py), ("cy", cy)):
            t = timeit.repeat(lambda: mod.jy_orders(z, nmax, want_y), repeat=args.repeat, number=args.number)
            times[name] = min(t) / args.number * 1e6
        diff = _max_rel(cy.jy_orders(z, nmax, want_y), py.jy_orders(z, nmax, want_y))
        print(f"{label:24s} {times['py']:10.2f} {times['cy']:10.2f} "
              f"{times['py'] / times['cy']:7.1f}x {diff:13.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
