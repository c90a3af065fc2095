"""Compare the numba and numpy search kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each kernel is
warmed up once (numba compiles on first call) and then timed; the outputs of
the two backends are checked for equality before timing is reported.
"""

import argparse
import time

import numpy as np

from freecircle import _kernels
from freecircle.search import SearchBox, _PlumbingShells


def _shells(backend, first, last, box):
    shells = _PlumbingShells(box, jobs=1, backend=backend)
    return np.concatenate([shells.shell(t)[1] for t in range(first, last + 1)])


def _cp2(backend, E):
    k = _kernels.get_backend(backend)
    rows = _kernels.collect(k.cp2_scan, (E * E - 1) // 4, E, -E, E)
    rows = rows[np.lexsort(rows.T[::-1])]
    return np.concatenate([rows, k.cp2_classes(rows)], axis=1)


CASES = {
    "plumbing shells 40..44, box (500, 64)": lambda b: _shells(b, 40, 44, SearchBox(500, 64)),
    "cp2 scan + classes, lambda <= 3000": lambda b: _cp2(b, 3000),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = sorted(_kernels.BACKENDS)
    print(f"backends: {', '.join(backends)} (default {_kernels.DEFAULT_BACKEND})")
    for name, case in CASES.items():
        results = {}
        for b in backends:
            case(b)  # warm-up / JIT compile
            results[b] = best_of(lambda: case(b), args.repeat)
        outs = [out for _, out in results.values()]
        same = all(o.shape == outs[0].shape and (o == outs[0]).all() for o in outs)
        line = "  ".join(f"{b} {t * 1000:8.1f} ms" for b, (t, _) in results.items())
        speedup = ""
        if "numba" in results:
            speedup = f"  speedup x{results['numpy'][0] / results['numba'][0]:.1f}"
        print(f"{name:42s} {line}{speedup}  outputs {'agree' if same else 'DIFFER'}")


if __name__ == "__main__":
    main()
