"""Time the Cayley propagation loop: numba kernel vs pure numpy.

    python benchmarks/bench_kernels.py [--steps 2000] [--dims 4 6 16 64 256]
"""
import argparse
import time

import numpy as np

from iswhm import _kernels
from iswhm.operators import TruncationSpec, build_HD, build_HI
from iswhm.poly import parse


def case(dim):
    # one variable truncated at P = dim levels; x - 16 keeps H_D entries modest
    spec = TruncationSpec(1, dim)
    hd = build_HD(parse("x - 16"), spec).diagonal()
    hi = build_HI(spec).matrix.real.copy()
    psi = np.full(dim, 1 / np.sqrt(dim), dtype=complex)
    return psi, hi, hd


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--dims", type=int, nargs="+", default=[4, 6, 16, 64, 256])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _kernels.propagate_numba is None:
        print("numba unavailable (or ISWHM_DISABLE_NUMBA set); timing numpy only")
    else:
        psi, hi, hd = case(2)
        t0 = time.perf_counter()
        _kernels.propagate_numba(psi, hi, hd, 2.0, 1.0, 0, 1)
        print(f"numba first call (compile or cache load): {time.perf_counter() - t0:.2f}s")

    print(f"{'dim':>6} {'steps':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'max |diff|':>11}")
    for dim in args.dims:
        psi, hi, hd = case(dim)
        steps = args.steps if dim <= 64 else max(10, args.steps // 20)
        T = float(steps)
        t_np, a = best_of(lambda: _kernels.propagate_numpy(psi, hi, hd, T, 1.0, 0, steps), args.repeat)
        if _kernels.propagate_numba is None:
            print(f"{dim:>6} {steps:>6} {t_np:>10.4f} {'-':>10} {'-':>8} {'-':>11}")
            continue
        t_nb, b = best_of(lambda: _kernels.propagate_numba(psi, hi, hd, T, 1.0, 0, steps), args.repeat)
        print(f"{dim:>6} {steps:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x "
              f"{np.max(np.abs(a - b)):>11.1e}")


if __name__ == "__main__":
    main()
