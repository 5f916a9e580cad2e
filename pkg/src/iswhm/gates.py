"""Gates realized by free evolution of the well under a level coding.

Times are the dimensionless phase theta: level n picks up exp(-i theta n^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .operators import TruncatedOperator

PASS_TOL = 1e-10
DEFAULT_MAX_LEVEL = 8

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
PHASE_PI_4 = np.diag([1.0, np.exp(1j * math.pi / 4)])
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)

Codeword = Sequence[Tuple[int, complex]]


@dataclass(frozen=True)
class LevelCoding:
    """codewords[i] is the well state (list of (level, amplitude)) encoding logical basis state i."""

    codewords: Tuple[Tuple[Tuple[int, complex], ...], ...]

    def __post_init__(self):
        cw = tuple(tuple((int(n), complex(a)) for n, a in word) for word in self.codewords)
        object.__setattr__(self, "codewords", cw)
        if len(cw) not in (2, 4):
            raise ValueError(f"logical dimension must be 2 or 4, got {len(cw)}")
        if any(n < 1 for word in cw for n, _ in word):
            raise ValueError("well levels start at 1")
        v = self.isometry(self.max_level)
        if not np.allclose(v.conj().T @ v, np.eye(len(cw)), rtol=0, atol=1e-12):
            raise ValueError("codewords are not orthonormal")

    @property
    def logical_dim(self) -> int:
        return len(self.codewords)

    @property
    def max_level(self) -> int:
        return max(n for word in self.codewords for n, _ in word)

    def isometry(self, max_level: int) -> np.ndarray:
        """max_level x logical_dim matrix whose columns are the codewords."""
        if self.max_level > max_level:
            raise ValueError(f"coding uses level {self.max_level} > max_level {max_level}")
        v = np.zeros((max_level, len(self.codewords)), dtype=complex)
        for j, word in enumerate(self.codewords):
            for n, a in word:
                v[n - 1, j] += a
        return v


@dataclass(frozen=True)
class GateConstruction:
    name: str
    target: np.ndarray
    coding: LevelCoding
    phi: float
    max_level: int = DEFAULT_MAX_LEVEL

    def __post_init__(self):
        t = np.asarray(self.target, dtype=complex)
        d = self.coding.logical_dim
        if t.shape != (d, d):
            raise ValueError(f"target shape {t.shape} does not match logical dim {d}")
        if not np.allclose(t.conj().T @ t, np.eye(d), rtol=0, atol=1e-12):
            raise ValueError("target is not unitary")
        object.__setattr__(self, "target", t)

    def with_phi(self, phi: float) -> "GateConstruction":
        return GateConstruction(self.name, self.target, self.coding, phi, self.max_level)


def free_evolution(theta: float, max_level: int) -> TruncatedOperator:
    """diag(exp(-i theta n^2)) for n = 1..max_level.

    Unitary rather than Hermitian; wrapped in TruncatedOperator for uniformity.
    """
    if max_level < 1:
        raise ValueError(f"max_level must be >= 1, got {max_level}")
    n = np.arange(1, max_level + 1, dtype=float)
    return TruncatedOperator(np.diag(np.exp(-1j * theta * n * n)))


def gamma(phi: float, max_level: int) -> TruncatedOperator:
    """exp(-i phi) exp(-i phi (n^2 - 1)) on the diagonal, i.e. free_evolution(phi)."""
    n = np.arange(1, max_level + 1, dtype=float)
    return TruncatedOperator(np.diag(np.exp(-1j * phi) * np.exp(-1j * phi * (n * n - 1))))


def realized_gate(gc: GateConstruction) -> np.ndarray:
    v = gc.coding.isometry(gc.max_level)
    return v.conj().T @ free_evolution(gc.phi, gc.max_level).matrix @ v


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|tr(a^H b)| / d; equals 1 iff a and b agree up to a global phase (for unitaries)."""
    return float(abs(np.trace(a.conj().T @ b)) / a.shape[0])


def verify(gc: GateConstruction) -> Tuple[float, bool]:
    a = realized_gate(gc)
    d = a.shape[0]
    f = fidelity(a, gc.target)
    unitary = np.max(np.abs(a.conj().T @ a - np.eye(d))) <= PASS_TOL
    return f, bool(f >= 1 - PASS_TOL and unitary)


def builtin_phase_gate() -> GateConstruction:
    coding = LevelCoding(([(1, 1)], [(2, 1)]))
    return GateConstruction("phase_pi_4", PHASE_PI_4, coding, -math.pi / 12)


def builtin_cnot_gate() -> GateConstruction:
    # |00> -> |2>, |01> -> |4>, |10> -> (|6> + |1>)/sqrt2, |11> -> (|6> - |1>)/sqrt2;
    # at theta = pi odd levels flip sign, swapping the last two codewords.
    r = 1 / math.sqrt(2)
    coding = LevelCoding(([(2, 1)], [(4, 1)], [(6, r), (1, r)], [(6, r), (1, -r)]))
    return GateConstruction("cnot", CNOT, coding, math.pi)


def builtin_hadamard_gate() -> GateConstruction:
    # Eigenvectors of H: +1 -> level 2, -1 -> level 1. theta = pi/3 gives level 2
    # a relative phase exp(-i theta (4 - 1)) = -1 against level 1, so the coded
    # evolution is -exp(-i pi/3) H.
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    plus = np.array([c, s])      # H plus = +plus
    minus = np.array([-s, c])    # H minus = -minus
    # logical |j> = plus[j] plus + minus[j] minus  ->  plus[j] |2> + minus[j] |1>
    coding = LevelCoding(tuple([(2, plus[j]), (1, minus[j])] for j in range(2)))
    return GateConstruction("hadamard", HADAMARD, coding, math.pi / 3)


def builtin_gates() -> List[GateConstruction]:
    return [builtin_phase_gate(), builtin_cnot_gate(), builtin_hadamard_gate()]
