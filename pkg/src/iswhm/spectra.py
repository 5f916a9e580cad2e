"""Bottom of the spectrum of Hermitian operators, and the ground-energy flow E0(t)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import scipy.linalg

from .operators import TruncatedOperator

DENSE_MAX_DIM = 64
RESIDUAL_TOL = 1e-10


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralSample:
    t: float
    s: float
    e0: float
    gap: float


def _as_matrix(h) -> np.ndarray:
    m = h.matrix if isinstance(h, TruncatedOperator) else np.asarray(h)
    if np.iscomplexobj(m) and not np.any(m.imag):
        m = m.real
    return m


def _lowest_two_dense(m: np.ndarray) -> Tuple[float, float]:
    w = np.linalg.eigvalsh(m)
    return float(w[0]), float(w[1]) if len(w) > 1 else float(w[0])


def _try_cholesky(m: np.ndarray, sigma: float):
    try:
        return scipy.linalg.cho_factor(m - sigma * np.eye(m.shape[0]), lower=True)
    except np.linalg.LinAlgError:
        return None


def _lowest_two_inverse(m: np.ndarray, tol: float, max_iter: int | None,
                        bisect_steps: int = 16) -> Tuple[float, float]:
    # The shift must stay below e0 so that H - sigma I is positive definite.
    # Start from the Gershgorin bound, then tighten it by bisection against the
    # smallest diagonal entry (an upper bound on e0), using Cholesky success as
    # the definiteness test. Block inverse iteration with Rayleigh-Ritz follows.
    dim = m.shape[0]
    absrow = np.sum(np.abs(m), axis=1)
    diag = np.real(np.diagonal(m))
    scale = max(1.0, float(np.max(absrow)))
    lo = float(np.min(diag - (absrow - np.abs(diag)))) - 1e-3 * scale
    hi = float(np.min(diag))
    factor = _try_cholesky(m, lo)
    if factor is None:
        raise ConvergenceError("Gershgorin shift failed to give a positive definite matrix")
    for _ in range(bisect_steps):
        mid = 0.5 * (lo + hi)
        f = _try_cholesky(m, mid)
        if f is None:
            hi = mid
        else:
            lo, factor = mid, f

    block = min(dim, 8)
    rng = np.random.default_rng(12345)
    x = rng.standard_normal((dim, block))
    if np.iscomplexobj(m):
        x = x + 1j * rng.standard_normal((dim, block))
    x, _ = np.linalg.qr(x)

    # 1e-10 absolute unless roundoff in H itself (~eps * |H|) makes that unreachable
    threshold = max(tol, 64 * np.finfo(float).eps * scale)
    limit = max_iter if max_iter is not None else 10 * dim
    for _ in range(limit):
        y = scipy.linalg.cho_solve(factor, x)
        q, _ = np.linalg.qr(y)
        hq = m @ q
        theta, w = np.linalg.eigh(q.conj().T @ hq)
        x = q @ w
        r = hq @ w - x * theta
        res = np.linalg.norm(r[:, :2], axis=0)
        if np.all(res <= threshold):
            return float(theta[0]), float(theta[1])
    raise ConvergenceError(f"inverse iteration did not converge in {limit} iterations")


def smallest_eigenvalue(h, method: str = "auto", tol: float = RESIDUAL_TOL, max_iter: int | None = None):
    """Return (e0, gap) for a Hermitian operator: its lowest eigenvalue and e1 - e0.

    ``method`` is "dense", "inverse" or "auto" (dense up to 64x64). A 1x1
    operator has no second eigenvalue and reports gap 0.
    """
    m = _as_matrix(h)
    if m.shape[0] == 1:
        return float(np.real(m[0, 0])), 0.0
    if method == "auto":
        method = "dense" if m.shape[0] <= DENSE_MAX_DIM else "inverse"
    if method == "dense":
        e0, e1 = _lowest_two_dense(m)
    elif method == "inverse":
        e0, e1 = _lowest_two_inverse(m, tol, max_iter)
    else:
        raise ValueError(f"unknown method {method!r}")
    return e0, max(0.0, e1 - e0)


def interpolated_ground(hi: np.ndarray, hd_diag: np.ndarray, s: float) -> Tuple[float, float]:
    """(e0, gap) of (1 - s) hi + s diag(hd_diag) from raw arrays."""
    m = (1.0 - s) * hi
    m[np.diag_indices(m.shape[0])] += s * hd_diag
    return smallest_eigenvalue(m)


def sample_steps(n_steps: int, stride: int) -> List[int]:
    """Step indices 0, stride, 2*stride, ... always ending at n_steps."""
    steps = list(range(0, n_steps, stride))
    steps.append(n_steps)
    return steps


def spectral_flow(p, spec, params, hi_form: str = "complement_projector") -> List[SpectralSample]:
    """E0 and gap of H_A(tau/T) sampled every ``params.e0_stride`` steps, endpoints included."""
    from .operators import build_HD, build_HI

    hd = build_HD(p, spec).diagonal()
    hi = build_HI(spec, hi_form).matrix.real.copy()
    out = []
    for j in sample_steps(params.n_steps, params.e0_stride):
        t = j * params.dt
        s = min(1.0, t / params.T)
        e0, gap = interpolated_ground(hi, hd, s)
        out.append(SpectralSample(t=t, s=s, e0=e0, gap=gap))
    return out
