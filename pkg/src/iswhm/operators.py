"""Truncated operators on the P^k-dimensional tensor space of well levels.

Natural units throughout: the energy prefactor hbar^2 pi^2 / (2 m L^2) is 1,
so the well Hamiltonian and M coincide and level n has energy n^2.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .poly import Polynomial, evaluate, print_canonical

DEFAULT_MAX_DIM = 4096
HI_FORMS = ("complement_projector", "ones", "laplacian")


class DimensionCapError(ValueError):
    pass


@dataclass(frozen=True)
class TruncationSpec:
    """k tensor factors, each truncated to levels 1..P."""

    k: int
    P: int
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.P < 1:
            raise ValueError(f"P must be >= 1, got {self.P}")
        if self.dim > self.max_dim:
            raise DimensionCapError(
                f"dimension P^k = {self.P}^{self.k} = {self.dim} exceeds cap {self.max_dim}"
            )

    @property
    def dim(self) -> int:
        return self.P ** self.k


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Dense complex Hermitian matrix; the array is made read-only."""

    matrix: np.ndarray
    spec: Optional[TruncationSpec] = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        if self.spec is not None and m.shape[0] != self.spec.dim:
            raise ValueError(f"matrix dim {m.shape[0]} does not match spec dim {self.spec.dim}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) <= tol)

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    def to_dict(self) -> dict:
        d = {"dim": self.dim}
        if self.spec is not None:
            d["spec"] = {"k": self.spec.k, "P": self.spec.P}
        d["entries"] = [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]
        return d


class BasisIndexer:
    """Row-major map between composite indices and level tuples (n_1..n_k), n_i in 1..P."""

    def __init__(self, spec: TruncationSpec):
        self.spec = spec

    def index_of(self, levels: Sequence[int]) -> int:
        k, P = self.spec.k, self.spec.P
        if len(levels) != k:
            raise ValueError(f"expected {k} levels, got {len(levels)}")
        idx = 0
        for n in levels:
            if not 1 <= n <= P:
                raise ValueError(f"level {n} outside 1..{P}")
            idx = idx * P + (n - 1)
        return idx

    def levels_of(self, index: int) -> Tuple[int, ...]:
        k, P = self.spec.k, self.spec.P
        if not 0 <= index < self.spec.dim:
            raise ValueError(f"index {index} outside 0..{self.spec.dim - 1}")
        out = []
        for _ in range(k):
            index, r = divmod(index, P)
            out.append(r + 1)
        return tuple(reversed(out))

    def all_levels(self):
        """Level tuples in composite-index order."""
        return itertools.product(range(1, self.spec.P + 1), repeat=self.spec.k)

    def level_table(self) -> np.ndarray:
        """(dim, k) integer array; row i is levels_of(i)."""
        return np.array(list(self.all_levels()), dtype=np.int64).reshape(self.spec.dim, self.spec.k)


def build_M(P: int) -> TruncatedOperator:
    if P < 1:
        raise ValueError(f"P must be >= 1, got {P}")
    return TruncatedOperator(np.diag(np.arange(1, P + 1, dtype=float) ** 2))


def hd_diagonal_exact(p: Polynomial, spec: TruncationSpec) -> list:
    """Exact integers D(n_1^2, ..., n_k^2)^2 in composite-index order."""
    if p.nvars != spec.k:
        raise ValueError(f"polynomial has {p.nvars} variables, truncation has k={spec.k}")
    return [evaluate(p, [n * n for n in levels]) ** 2 for levels in BasisIndexer(spec).all_levels()]


def build_HD(p: Polynomial, spec: TruncationSpec) -> TruncatedOperator:
    """Codifying Hamiltonian D(M_1, ..., M_k)^2.

    Every M_i is diagonal, so the operator polynomial is diagonal with the
    scalar value D(n^2)^2 on each basis state.
    """
    diag = np.array([float(v) for v in hd_diagonal_exact(p, spec)])
    return TruncatedOperator(np.diag(diag), spec)


def build_HI(spec: TruncationSpec, form: str = "complement_projector") -> TruncatedOperator:
    """Interaction Hamiltonian built from the all-ones matrix J.

    complement_projector: I - J/dim (ground state uniform, energy 0, rest 1)
    ones:                 J
    laplacian:            dim*I - J
    """
    dim = spec.dim
    J = np.ones((dim, dim))
    if form == "complement_projector":
        m = np.eye(dim) - J / dim
    elif form == "ones":
        m = J
    elif form == "laplacian":
        m = dim * np.eye(dim) - J
    else:
        raise ValueError(f"unknown hi_form {form!r}; choose from {HI_FORMS}")
    return TruncatedOperator(m, spec)


def build_HA(hd: TruncatedOperator, hi: TruncatedOperator, s: float) -> TruncatedOperator:
    if hd.dim != hi.dim:
        raise ValueError(f"dimension mismatch: H_D is {hd.dim}, H_I is {hi.dim}")
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"adiabatic parameter s={s} outside [0, 1]")
    return TruncatedOperator((1.0 - s) * hi.matrix + s * hd.matrix, hd.spec or hi.spec)


def dump_operators(path, p: Polynomial, spec: TruncationSpec, hi_form: str = "complement_projector"):
    """Write M, H_D and H_I as a JSON debug dump."""
    payload = {
        "equation": print_canonical(p),
        "variables": list(p.variables),
        "hi_form": hi_form,
        "M": build_M(spec.P).to_dict(),
        "H_D": build_HD(p, spec).to_dict(),
        "H_I": build_HI(spec, hi_form).to_dict(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
