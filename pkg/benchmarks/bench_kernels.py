#!/usr/bin/env python3
"""Benchmark the numba series kernels against the numpy fallback.

Times the reciprocal of a purity denominator (the dominant cost of every
purity evaluation) and one product of two such series, for a few Fock
states, on both code paths in the same process.  Results are also checked
for agreement.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --states 2,2,2 3,3,3 --repeat 5
    python3 benchmarks/bench_kernels.py --output bench.json
"""

import argparse
import json
import time

import numpy as np

from trio_osc import _kernels
from trio_osc._accel import NUMBA_AVAILABLE
from trio_osc.purity import omega_denominator


def _numba_mul(f, g):
    fv, fi = _kernels._support(f)
    gv, gi = _kernels._support(g)
    shape = f.shape
    out = _kernels._mul_nb(fv, fi, gv, gi, _kernels._multi_table(shape), np.asarray(shape, dtype=np.int64) - 1, f.size)
    return out.reshape(shape)


def _numba_reciprocal(f):
    fv, fi = _kernels._support(f)
    return _kernels._reciprocal_nb(fv, fi, float(f.flat[0]), _kernels._multi_table(f.shape), f.size).reshape(f.shape)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_state(state, repeat):
    n, m, l = state
    caps = (n, m, l, n, m, l)
    den = omega_denominator("z", 0.4, caps).coeffs
    other = omega_denominator("x", 0.4, caps).coeffs
    row = {"state": list(state), "coefficients": int(den.size)}
    cases = {
        "reciprocal": (lambda: _kernels._reciprocal_np(den), lambda: _numba_reciprocal(den)),
        "mul": (lambda: _kernels._mul_np(den, other), lambda: _numba_mul(den, other)),
    }
    for name, (np_fn, nb_fn) in cases.items():
        t_np, r_np = best_of(np_fn, repeat)
        row[f"{name}_numpy_s"] = t_np
        if NUMBA_AVAILABLE:
            nb_fn()  # compile
            t_nb, r_nb = best_of(nb_fn, repeat)
            row[f"{name}_numba_s"] = t_nb
            row[f"{name}_speedup"] = t_np / t_nb if t_nb > 0 else float("inf")
            row[f"{name}_max_diff"] = float(np.max(np.abs(r_np - r_nb)))
    return row


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--states", nargs="+", default=["1,1,1", "2,2,2", "3,2,3", "3,3,3"])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--output", help="write results as JSON")
    args = p.parse_args()

    if not NUMBA_AVAILABLE:
        print("numba disabled or missing: timing the numpy path only")
    rows = [bench_state(tuple(int(k) for k in s.split(",")), args.repeat) for s in args.states]
    for r in rows:
        line = f"{str(tuple(r['state'])):>10}  size {r['coefficients']:>7}"
        for name in ("reciprocal", "mul"):
            line += f"  {name}: numpy {r[name + '_numpy_s'] * 1e3:8.2f} ms"
            if NUMBA_AVAILABLE:
                line += f" numba {r[name + '_numba_s'] * 1e3:8.2f} ms (x{r[name + '_speedup']:.1f}, diff {r[name + '_max_diff']:.1e})"
        print(line)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
