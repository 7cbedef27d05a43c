"""Time the compiled kernels against the numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--scale 1]

Prints one line per kernel with the best-of-``repeat`` wall time for each
backend, the speedup, and the largest absolute difference between the two
outputs.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ucfourier import kernels
from ucfourier.constructions import random_trig_poly, salem_g
from ucfourier.trigpoly import grid_size, multiply, synthesize


def _cases(scale: int):
    K = 256 * scale
    p = random_trig_poly(K, 1)
    M = grid_size(K)
    small = random_trig_poly(24 * scale, 2)
    Ms = grid_size(small.degree)
    m = salem_g(32 * scale)
    f = random_trig_poly(64 * scale, 3)
    mf = multiply(m, f)
    Mc = grid_size(mf.degree)
    mgrid = synthesize(m, Mc).samples
    x = synthesize(p, M).samples
    th = np.linspace(0, 2 * np.pi, 20000)
    ts = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    edges = np.concatenate([np.linspace(-np.pi, np.pi, 33)] * ts.size)
    offsets = np.arange(ts.size + 1) * 33
    g = salem_g(16 * scale)
    return {
        f"scan_partial_sums K={K}": lambda b: kernels.scan_partial_sums(p.coeffs, M, backend=b),
        f"scan_asym K={small.degree}": lambda b: kernels.scan_asym(
            small.coeffs, Ms, small.degree, small.degree, backend=b),
        f"scan_commutator K={mf.degree}": lambda b: kernels.scan_commutator(
            mgrid, f.coeffs, mf.coeffs, 2 * mf.degree, backend=b),
        f"shift_sup M={M}": lambda b: kernels.shift_sup(x, M // 2, backend=b),
        f"horner K={K} x{th.size}": lambda b: kernels.horner(p.coeffs, th, backend=b),
        f"dini_panels K={g.degree}": lambda b: kernels.dini_panels(
            g.coeffs, ts, edges, offsets, 1e-8, backend=b),
    }


def _best(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=int, default=1)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not available; only the python backend can be timed")
    print(f"{'kernel':32s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup   max diff")
    for name, run in _cases(args.scale).items():
        times, outs = [], []
        for b in backends:
            t, out = _best(lambda: run(b), args.repeat)
            times.append(t)
            outs.append(np.asarray(out))
        line = f"{name:32s} " + " ".join(f"{t:10.4f}" for t in times)
        if len(backends) == 2:
            diff = float(np.max(np.abs(outs[0] - outs[1])))
            line += f"   {times[1] / times[0]:7.1f}x   {diff:.1e}"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
