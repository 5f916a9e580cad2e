"""Adiabatic evolution under H_A(t/T) with the Cayley (Crank-Nicolson) step."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import _kernels
from .operators import BasisIndexer, TruncatedOperator, TruncationSpec, build_HD, build_HI
from .poly import Polynomial, print_canonical
from .spectra import interpolated_ground

NORM_TOL = 1e-9


@dataclass(frozen=True)
class EvolutionState:
    t: float
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class EvolutionParams:
    """T is the total time, dt the step; strides count steps.

    ``midpoint`` evaluates s at the middle of each step instead of its start.
    """

    T: float
    dt: float = 1.0
    e0_stride: Optional[int] = None
    record_stride: Optional[int] = None
    midpoint: bool = False

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (self.T >= self.dt and math.isfinite(self.T)):
            raise ValueError(f"T must be >= dt > 0, got T={self.T}, dt={self.dt}")
        ratio = self.T / self.dt
        if abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ValueError(f"T={self.T} is not an integer multiple of dt={self.dt}")
        n = int(round(ratio))
        if self.e0_stride is None:
            object.__setattr__(self, "e0_stride", max(1, n // 500))
        if self.record_stride is None:
            object.__setattr__(self, "record_stride", max(1, -(-n // 2000)))
        if self.e0_stride < 1 or self.record_stride < 1:
            raise ValueError("strides must be >= 1")

    @property
    def n_steps(self) -> int:
        return int(round(self.T / self.dt))


@dataclass
class TraceRow:
    t: float
    probabilities: np.ndarray
    expectations: np.ndarray
    e0: Optional[float] = None


@dataclass
class EvolutionTrace:
    rows: List[TraceRow]
    params: EvolutionParams
    equation: str
    variables: tuple
    spec: TruncationSpec
    hi_form: str = "complement_projector"
    final_state: Optional[EvolutionState] = field(default=None, repr=False)

    @property
    def final(self) -> TraceRow:
        return self.rows[-1]

    def level_labels(self) -> List[str]:
        idx = BasisIndexer(self.spec)
        return ["_".join(str(n) for n in lv) for lv in idx.all_levels()]

    def emergence_time(self) -> Optional[float]:
        """Earliest recorded t from which the argmax state never changes again."""
        final = int(np.argmax(self.final.probabilities))
        t = None
        for row in reversed(self.rows):
            if int(np.argmax(row.probabilities)) != final:
                break
            t = row.t
        return t

    def header(self) -> List[str]:
        return (["t", "E0"] + [f"exp_{v}" for v in self.variables]
                + [f"p_{lab}" for lab in self.level_labels()])

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(self.header())
        for row in self.rows:
            w.writerow([_fmt(row.t), "" if row.e0 is None else _fmt(row.e0)]
                       + [_fmt(x) for x in row.expectations]
                       + [_fmt(x) for x in row.probabilities])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def uniform_initial_state(dim: int) -> EvolutionState:
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    return EvolutionState(0.0, np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128))


def cayley_step(state: EvolutionState, hA: TruncatedOperator, dt: float) -> EvolutionState:
    """One step psi' = (I + i/2 H dt)^-1 (I - i/2 H dt) psi."""
    psi = np.asarray(state.amplitudes, dtype=np.complex128)
    if psi.shape != (hA.dim,):
        raise ValueError(f"state has length {psi.shape[0]}, operator has dim {hA.dim}")
    half = 0.5j * dt * hA.matrix
    eye = np.eye(hA.dim)
    try:
        new = np.linalg.solve(eye + half, psi - half @ psi)
    except np.linalg.LinAlgError as exc:  # cannot happen for Hermitian H and real dt
        raise RuntimeError("singular Cayley system; operator is not Hermitian?") from exc
    return EvolutionState(state.t + dt, new)


def _expectations(probs: np.ndarray, squares: np.ndarray) -> np.ndarray:
    return probs @ squares


def run_evolution(p: Polynomial, spec: TruncationSpec, params: EvolutionParams,
                  hi_form: str = "complement_projector") -> EvolutionTrace:
    """Evolve the uniform state through H_A(tau/T), tau = 0, dt, ..., T - dt.

    Rows are recorded every ``record_stride`` steps and wherever E0 is sampled
    (every ``e0_stride`` steps); the row at t = T is always present and always
    carries E0.
    """
    hd = build_HD(p, spec).diagonal()
    hi_op = build_HI(spec, hi_form)
    hi = hi_op.matrix.real.copy()
    squares = BasisIndexer(spec).level_table().astype(float) ** 2

    n = params.n_steps
    marks = set(range(0, n, params.record_stride)) | set(range(0, n, params.e0_stride)) | {n}
    psi = uniform_initial_state(spec.dim).amplitudes
    rows = []
    prev = 0
    for j in sorted(marks):
        if j > prev:
            psi = _kernels.propagate(psi, hi, hd, params.T, params.dt, prev, j, params.midpoint)
            prev = j
            if not np.all(np.isfinite(psi)):
                raise FloatingPointError(f"non-finite amplitude at step {j}")
        probs = np.abs(psi) ** 2
        total = probs.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise FloatingPointError(f"norm drifted to {math.sqrt(total)!r} at step {j}")
        e0 = None
        if j % params.e0_stride == 0 or j == n:
            e0 = interpolated_ground(hi, hd, min(1.0, j * params.dt / params.T))[0]
        rows.append(TraceRow(j * params.dt, probs, _expectations(probs, squares), e0))

    return EvolutionTrace(
        rows=rows, params=params, equation=print_canonical(p), variables=p.variables,
        spec=spec, hi_form=hi_form, final_state=EvolutionState(n * params.dt, psi),
    )
