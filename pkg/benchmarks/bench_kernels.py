"""Compare the compiled and pure-Python eigen kernels.

Times ``eigh`` on random symmetric matrices for both backends (with numpy's
LAPACK ``eigh`` as a reference), then times a full ``chi_v`` solve under
each backend in a fresh interpreter, since the backend is fixed at import.

Usage::

    python3 benchmarks/bench_kernels.py [--sizes 10 40 100] [--repeat 5] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from vclab.linalg import kernels

SOLVE_SNIPPET = """
import time
from vclab import graphs as gr
from vclab.linalg import BACKEND
from vclab.vectorcoloring import chi_v
G = gr.categorical_product(gr.petersen(), gr.cycle({cycle}))
t0 = time.perf_counter()
res = chi_v(G)
print(BACKEND, time.perf_counter() - t0, repr(res.t))
"""


def _random_symmetric(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    return 0.5 * (A + A.T)


def bench_eigh(sizes, repeat: int) -> list[dict]:
    rows = []
    for n in sizes:
        A = _random_symmetric(n, n)
        row = {"n": n}
        impls = {"python": kernels.python_eigh, "numpy": lambda a: np.linalg.eigh(a)}
        if kernels.compiled_eigh is not None:
            impls["compiled"] = kernels.compiled_eigh
        for name, fn in impls.items():
            number = max(1, int(200 / max(n, 1)))
            best = min(timeit.repeat(lambda: fn(A), number=number, repeat=repeat)) / number
            row[name] = best
        w_ref = np.linalg.eigvalsh(A)
        row["python_err"] = float(np.abs(kernels.python_eigh(A)[0] - w_ref).max())
        if kernels.compiled_eigh is not None:
            row["compiled_err"] = float(np.abs(kernels.compiled_eigh(A)[0] - w_ref).max())
        rows.append(row)
    return rows


def bench_solve(cycle: int) -> list[dict]:
    rows = []
    for pure in ("0", "1"):
        env = dict(os.environ, VCLAB_PURE_PYTHON=pure)
        out = subprocess.run(
            [sys.executable, "-c", SOLVE_SNIPPET.format(cycle=cycle)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        ).stdout.split()
        rows.append({"backend": out[0], "seconds": float(out[1]), "t": float(out[2])})
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 25, 50, 100, 150])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--cycle", type=int, default=7, help="solve Petersen x C_k")
    ap.add_argument("--json", dest="json_path")
    args = ap.parse_args(argv)

    eig_rows = bench_eigh(args.sizes, args.repeat)
    print(f"eigh backend at import: {kernels.BACKEND}")
    print(f"{'n':>5} {'compiled [ms]':>14} {'python [ms]':>12} {'numpy [ms]':>11} {'speedup':>8}")
    for r in eig_rows:
        comp = r.get("compiled")
        speed = r["python"] / comp if comp else float("nan")
        comp_s = f"{1e3 * comp:14.3f}" if comp else f"{'n/a':>14}"
        print(f"{r['n']:5d} {comp_s} {1e3 * r['python']:12.3f} {1e3 * r['numpy']:11.3f} {speed:8.1f}")

    solve_rows = bench_solve(args.cycle)
    print(f"\nchi_v(Petersen x C_{args.cycle}):")
    for r in solve_rows:
        print(f"  {r['backend']:>8}: {r['seconds']:.3f} s  (t = {r['t']:.9f})")

    if args.json_path:
        with open(args.json_path, "w") as fh:
            json.dump({"eigh": eig_rows, "solve": solve_rows}, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
