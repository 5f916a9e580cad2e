"""Hot loops of the adiabatic evolution.

Two interchangeable implementations of the Cayley propagation loop live here:
a numba ``@njit`` kernel and a plain numpy one. The numba path is used when
numba imports cleanly and ``ISWHM_DISABLE_NUMBA`` is unset (or "0").
"""
import os

import numpy as np

_DISABLED = os.environ.get("ISWHM_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by ISWHM_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def propagate_numpy(psi, hi, hd_diag, T, dt, start, stop, midpoint=False):
    """Advance ``psi`` from step ``start`` to step ``stop`` (exclusive).

    Step j solves (I + i/2 H dt) psi' = (I - i/2 H dt) psi with
    H = (1 - s) hi + s diag(hd_diag) and s = j*dt/T (or (j + 1/2)*dt/T).
    """
    dim = psi.shape[0]
    psi = psi.astype(np.complex128, copy=True)
    eye = np.eye(dim)
    half = 0.5j * dt
    shift = 0.5 if midpoint else 0.0
    for j in range(start, stop):
        s = (j + shift) * dt / T
        h = (1.0 - s) * hi
        h[np.diag_indices(dim)] += s * hd_diag
        rhs = psi - half * (h @ psi)
        psi = np.linalg.solve(eye + half * h, rhs)
    return psi


if HAVE_NUMBA:

    @njit(cache=True)
    def _propagate_jit(psi, hi, hd_diag, T, dt, start, stop, midpoint):
        dim = psi.shape[0]
        out = psi.copy()
        a = np.empty((dim, dim), dtype=np.complex128)
        rhs = np.empty(dim, dtype=np.complex128)
        half = 0.5j * dt
        shift = 0.5 if midpoint else 0.0
        for j in range(start, stop):
            s = (j + shift) * dt / T
            for r in range(dim):
                acc = 0.0j
                for c in range(dim):
                    hrc = (1.0 - s) * hi[r, c]
                    if r == c:
                        hrc += s * hd_diag[r]
                    a[r, c] = half * hrc
                    acc += hrc * out[c]
                a[r, r] += 1.0
                rhs[r] = out[r] - half * acc
            out = np.linalg.solve(a, rhs)
        return out

    def propagate_numba(psi, hi, hd_diag, T, dt, start, stop, midpoint=False):
        return _propagate_jit(
            np.ascontiguousarray(psi, dtype=np.complex128),
            np.ascontiguousarray(hi, dtype=np.float64),
            np.ascontiguousarray(hd_diag, dtype=np.float64),
            float(T), float(dt), int(start), int(stop), bool(midpoint),
        )

    propagate = propagate_numba
else:
    propagate_numba = None
    propagate = propagate_numpy


def backend() -> str:
    return "numba" if propagate is not propagate_numpy else "numpy"
