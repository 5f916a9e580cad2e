"""Adiabatic infinite-square-well decider for Diophantine equations over positive squares."""
from .decide import DecisionThresholds, Status, Verdict, decide
from .evolve import (EvolutionParams, EvolutionState, EvolutionTrace, cayley_step, run_evolution,
                     uniform_initial_state)
from .gates import (GateConstruction, LevelCoding, builtin_cnot_gate, builtin_gates,
                    builtin_hadamard_gate, builtin_phase_gate, free_evolution, gamma, verify)
from .operators import (BasisIndexer, DimensionCapError, TruncatedOperator, TruncationSpec, build_HA,
                        build_HD, build_HI, build_M)
from .poly import ParseError, Polynomial, evaluate, parse, print_canonical, to_hilbert_tenth_instance
from .spectra import SpectralSample, smallest_eigenvalue, spectral_flow

__version__ = "0.1.0"
