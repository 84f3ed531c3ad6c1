"""Compare the numba and numpy backends of the hot kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Each kernel is checked for identical output on both backends before timing.
Numba timings exclude the first (compiling) call.  ``--end-to-end`` also
times ``verify-paper --p 5`` in a fresh process under each setting of
FERMAT_GALOIS_NUMBA.
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from fermat_galois._kernels import HAVE_NUMBA, NUMBA_KERNELS, NUMPY_KERNELS
from fermat_galois.cohomology import build_complex
from fermat_galois.fermat_zeta import finite_field
from fermat_galois.modular import prime_context


def workloads(rng):
    out = {}
    for p in (7, 13):
        a, b = rng.integers(0, p, (2, p, p, p))
        out[f"convolve AS-ring p={p}"] = ("convolve", (a, b, p, 3, True))
        a, b = rng.integers(0, p * p, (2, p, p, 1))
        out[f"convolve lift p={p}"] = ("convolve", (a, b, p * p, 0, False))
    for p in (5, 7):
        d1 = np.array(build_complex(p).D1)
        inv = np.array(prime_context(p).inverses)
        out[f"rref D1 p={p} {d1.shape[0]}x{d1.shape[1]}"] = ("rref", (d1, p, inv))
    for p, ell, f in ((7, 29, 1), (3, 7, 3)):
        fld = finite_field(ell, f)
        pw = fld.power(np.arange(fld.q), p)
        tg = fld.add(np.full(fld.q, 1), fld.neg(pw))
        out[f"count_pairs q={fld.q}"] = ("count_pairs", (pw, tg))
    return out


def _call(table, name, args):
    if name == "rref":
        m = args[0].copy()
        return table[name](m, *args[1:]), m
    return table[name](*args)


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(a, b) for a, b in zip(x, y))
    return np.array_equal(np.asarray(x), np.asarray(y))


def bench_kernels(repeat: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    print(f"{'workload':<34}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for label, (name, args) in workloads(rng).items():
        ref = _call(NUMPY_KERNELS, name, args)
        t_np = min(timeit.repeat(lambda: _call(NUMPY_KERNELS, name, args), number=1, repeat=repeat))
        if HAVE_NUMBA:
            got = _call(NUMBA_KERNELS, name, args)  # compiles
            if not _same(ref, got):
                raise SystemExit(f"backends disagree on {label}")
            t_nb = min(timeit.repeat(lambda: _call(NUMBA_KERNELS, name, args), number=1, repeat=repeat))
            print(f"{label:<34}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{label:<34}{t_np * 1e3:>12.3f}{'n/a':>12}{'':>10}")


def bench_end_to_end() -> None:
    for flag in ("0", "1"):
        env = {**os.environ, "FERMAT_GALOIS_NUMBA": flag}
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-m", "fermat_galois", "verify-paper", "--p", "5"],
                       env=env, check=True, capture_output=True)
        backend = "numba" if flag == "1" else "numpy"
        print(f"verify-paper --p 5 [{backend}]: {time.perf_counter() - t0:.2f} s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    bench_kernels(args.repeat, args.seed)
    if args.end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
