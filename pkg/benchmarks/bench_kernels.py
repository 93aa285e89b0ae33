"""Time the numba kernels against the pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--sizes 8 32 96] [--repeat 5]

Each kernel is warmed up once before timing, so JIT compilation is not
counted.  Reported times are the best of ``--repeat`` runs.
"""
import argparse
import timeit

import numpy as np

from gvsm import _accel, _kernels


def cases(n, rng):
    a = rng.normal(size=(n, n))
    sym = a + a.T
    lu_a, perm, _ = _kernels.NUMPY_KERNELS["lu"](a)
    rhs = rng.normal(size=(n, 4))
    hess = _kernels.NUMPY_KERNELS["hessenberg"](a)
    return {
        "matmul": (a, a),
        "lu": (a,),
        "lu_solve": (lu_a, perm, rhs),
        "jacobi": (sym, 1e-12, 100),
        "rref": (a, 1e-9),
        "hessenberg": (a,),
        "hqr": (hess, 60),
    }


def best_time(fn, args, repeat):
    fn(*args)
    runs = timeit.repeat(lambda: fn(*args), number=1, repeat=repeat)
    return min(runs)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[8, 32, 96])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<11} {'n':>4} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.sizes:
        for name, call_args in cases(n, rng).items():
            t_jit = best_time(_kernels.JIT_KERNELS[name], call_args, args.repeat)
            t_np = best_time(_kernels.NUMPY_KERNELS[name], call_args, args.repeat)
            print(f"{name:<11} {n:>4} {t_jit * 1e3:>10.3f} {t_np * 1e3:>10.3f} {t_np / t_jit:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
