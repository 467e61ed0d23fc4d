"""Compare the compiled kernels with the numpy/Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Both backends are imported side by side, so the comparison runs in one
process regardless of EUDES_PURE_PYTHON.
"""

from __future__ import annotations

import argparse
import json
import statistics
import time

import numpy as np

from eudes._kernels import _pykernels

try:
    from eudes._kernels import _ckernels
except ImportError:   # no compiled build
    _ckernels = None


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng: np.random.Generator):
    for n, nrel in ((27, 3), (26, 7), (120, 6), (300, 8)):
        labels = rng.integers(0, nrel, size=(n, n)).astype(np.int32)
        yield f"count_triples n={n} relations={nrel}", "count_triples", (labels, nrel)
    for kind, hi in (("a", 10 ** 5), ("b", 10 ** 5), ("a", 10 ** 6)):
        yield f"square_scan kind={kind} up to {hi:.0e}", "square_scan", (kind, 2, hi)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="emit one JSON object per case")
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    rows = []
    for name, fn, fargs in cases(rng):
        py = _best(lambda: getattr(_pykernels, fn)(*fargs), args.repeat)
        cy = None
        if _ckernels is not None:
            a, b = getattr(_pykernels, fn)(*fargs), getattr(_ckernels, fn)(*fargs)
            same = np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b
            if not same:
                raise SystemExit(f"backends disagree on {name}")
            cy = _best(lambda: getattr(_ckernels, fn)(*fargs), args.repeat)
        rows.append({"case": name, "python_s": py, "cython_s": cy,
                     "speedup": None if cy is None else py / cy})
    if args.json:
        for r in rows:
            print(json.dumps(r))
        return
    print(f"{'case':42s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for r in rows:
        cy = "n/a" if r["cython_s"] is None else f"{r['cython_s'] * 1e3:8.2f}ms"
        sp = "" if r["speedup"] is None else f"{r['speedup']:7.1f}x"
        print(f"{r['case']:42s} {r['python_s'] * 1e3:8.2f}ms {cy:>10s} {sp:>8s}")
    if any(r["speedup"] for r in rows):
        print(f"median speedup {statistics.median(r['speedup'] for r in rows if r['speedup']):.1f}x")


if __name__ == "__main__":
    main()
