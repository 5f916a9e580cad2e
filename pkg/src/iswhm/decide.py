"""Turn an evolution trace into a verdict on solvability in positive squares."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .evolve import EvolutionParams, EvolutionTrace, run_evolution
from .operators import BasisIndexer, TruncationSpec
from .poly import Polynomial, evaluate, print_canonical


class Status(str, Enum):
    HAS_SOLUTION = "HasSolution"
    NO_SOLUTION = "NoSolution"
    INCONCLUSIVE = "Inconclusive"
    DEGENERATE_ZERO = "DegenerateZero"


@dataclass(frozen=True)
class DecisionThresholds:
    # H_D's diagonal holds squared integers, so E0(T) is either 0 or >= 1.
    dominance: float = 0.5
    energy: float = 0.5


@dataclass(frozen=True)
class Verdict:
    """Outcome of one decision run.

    NoSolution is scoped to the truncation: no solution with every n_i <= P.
    """

    status: Status
    equation: str
    P: int
    T: float
    dt: float
    dominant_state: Optional[Tuple[int, ...]] = None
    dominant_probability: float = 0.0
    solution: Optional[dict] = None
    e0_final: Optional[float] = None
    expectations_final: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "equation": self.equation,
            "P": self.P,
            "T": self.T,
            "dt": self.dt,
            "dominant_state": list(self.dominant_state) if self.dominant_state else None,
            "dominant_probability": self.dominant_probability,
            "solution": self.solution,
            "e0_final": self.e0_final,
            "expectations_final": self.expectations_final,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def dominant(trace: EvolutionTrace):
    """(level tuple, probability) of the most probable final state; ties go to the lowest index."""
    probs = trace.final.probabilities
    i = int(np.argmax(probs))  # argmax returns the first maximum
    return BasisIndexer(trace.spec).levels_of(i), float(probs[i])


def verdict_from_trace(p: Polynomial, trace: EvolutionTrace,
                       thresholds: DecisionThresholds = DecisionThresholds()) -> Verdict:
    state, prob = dominant(trace)
    final = trace.final
    common = dict(
        equation=print_canonical(p), P=trace.spec.P, T=trace.params.T, dt=trace.params.dt,
        dominant_state=state, dominant_probability=prob, e0_final=final.e0,
        expectations_final={v: float(x) for v, x in zip(p.variables, final.expectations)},
    )
    if prob < thresholds.dominance:
        return Verdict(Status.INCONCLUSIVE, **common)
    candidate = [n * n for n in state]
    if evaluate(p, candidate) == 0:
        return Verdict(Status.HAS_SOLUTION, solution=dict(zip(p.variables, candidate)), **common)
    if final.e0 is not None and final.e0 > thresholds.energy:
        return Verdict(Status.NO_SOLUTION, **common)
    return Verdict(Status.INCONCLUSIVE, **common)


def decide(p: Polynomial, spec: TruncationSpec, params: EvolutionParams,
           thresholds: DecisionThresholds = DecisionThresholds(),
           hi_form: str = "complement_projector") -> Verdict:
    """Run the adiabatic evolution and classify the outcome.

    A HasSolution verdict is always backed by exact evaluation of D at the
    decoded squares; the trace alone is never taken as proof.
    """
    if p.is_zero():
        return Verdict(Status.DEGENERATE_ZERO, equation="0", P=spec.P, T=params.T, dt=params.dt)
    trace = run_evolution(p, spec, params, hi_form=hi_form)
    return verdict_from_trace(p, trace, thresholds)
