import cmath
import math

import numpy as np
import pytest

from iswhm.gates import (CNOT, HADAMARD, GateConstruction, LevelCoding, builtin_cnot_gate,
                         builtin_gates, builtin_hadamard_gate, builtin_phase_gate, fidelity,
                         free_evolution, gamma, realized_gate, verify)


def test_free_evolution_examples():
    assert np.allclose(free_evolution(0, 5).matrix, np.eye(5), atol=1e-15)
    assert np.allclose(free_evolution(2 * math.pi, 6).matrix, np.eye(6), atol=1e-12)
    assert np.allclose(free_evolution(math.pi, 6).matrix.diagonal(), [-1, 1, -1, 1, -1, 1], atol=1e-12)


def test_free_evolution_group_law():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b = rng.uniform(-4, 4, 2)
        lhs = free_evolution(a, 8).matrix @ free_evolution(b, 8).matrix
        assert np.max(np.abs(lhs - free_evolution(a + b, 8).matrix)) < 1e-12
        u = free_evolution(a, 8).matrix
        assert np.max(np.abs(u.conj().T @ u - np.eye(8))) < 1e-12
        assert np.count_nonzero(u - np.diag(np.diag(u))) == 0


def test_gamma_matches_free_evolution_up_to_global_phase():
    for phi in np.linspace(-math.pi, math.pi, 13, endpoint=False):
        ratio = gamma(phi, 8).matrix.diagonal() / free_evolution(phi, 8).matrix.diagonal()
        assert np.max(np.abs(ratio - ratio[0])) < 1e-12
    assert np.allclose(gamma(0, 4).matrix, np.eye(4))


def test_gamma_relative_phases():
    g = gamma(-math.pi / 12, 2).matrix.diagonal()
    assert abs(g[1] / g[0] - cmath.exp(1j * math.pi / 4)) < 1e-12
    g = gamma(math.pi / 2, 2).matrix.diagonal()
    assert abs(g[0] - cmath.exp(-1j * math.pi / 2)) < 1e-12
    assert abs(g[1] - cmath.exp(-2j * math.pi)) < 1e-12
    # level 1 measured against level 2
    assert abs(g[0] / g[1] - cmath.exp(1.5j * math.pi)) < 1e-12


@pytest.mark.parametrize("factory", [builtin_phase_gate, builtin_cnot_gate, builtin_hadamard_gate])
def test_builtins_pass(factory):
    f, ok = verify(factory())
    assert ok and f >= 1 - 1e-10


def test_phase_gate_action():
    gc = builtin_phase_gate()
    a = realized_gate(gc)
    phase = a[0, 0]
    assert abs(abs(phase) - 1) < 1e-12
    assert abs(a[1, 1] / phase - cmath.exp(1j * math.pi / 4)) < 1e-12
    assert abs(a[0, 1]) < 1e-12 and abs(a[1, 0]) < 1e-12


def test_cnot_level_phases_and_swap():
    d = free_evolution(math.pi, 6).matrix.diagonal()
    assert np.allclose(d[[1, 3, 5]], 1, atol=1e-12) and abs(d[0] + 1) < 1e-12
    a = realized_gate(builtin_cnot_gate())
    assert np.allclose(a, CNOT, atol=1e-12)


def test_hadamard_construction():
    w = np.linalg.eigvalsh(HADAMARD)
    assert np.allclose(w, [-1, 1])
    g = free_evolution(math.pi / 3, 2).matrix.diagonal()
    assert abs(g[1] / g[0] + 1) < 1e-12
    a = realized_gate(builtin_hadamard_gate())
    assert fidelity(a, HADAMARD) > 1 - 1e-12


def test_identity_target_any_coding():
    coding = LevelCoding(([(3, 1)], [(5, 1)]))
    f, ok = verify(GateConstruction("id", np.eye(2), coding, 0.0))
    assert ok and abs(f - 1) < 1e-15


def test_wrong_phi_phase_gate():
    gc = builtin_phase_gate().with_phi(math.pi / 12)
    f, ok = verify(gc)
    # oracle: realized relative phase exp(-3i pi/12) against target exp(i pi/4)
    expected = abs(1 + cmath.exp(-1j * math.pi / 4) * cmath.exp(-1j * math.pi / 4)) / 2
    assert f == pytest.approx(expected, abs=1e-12)
    assert not ok


@pytest.mark.parametrize("delta", [0.01, -0.01])
def test_perturbed_phi_fails(delta):
    for gc in builtin_gates():
        f, ok = verify(gc.with_phi(gc.phi + delta))
        assert f < 1 - 1e-4 and not ok


def test_fidelity_global_phase_invariance():
    rng = np.random.default_rng(4)
    for gc in builtin_gates():
        a = realized_gate(gc)
        base = fidelity(a, gc.target)
        for ph in rng.uniform(-math.pi, math.pi, 5):
            assert fidelity(a * cmath.exp(1j * ph), gc.target) == pytest.approx(base, abs=1e-12)
            assert fidelity(a, gc.target * cmath.exp(1j * ph)) == pytest.approx(base, abs=1e-12)


def test_non_invariant_subspace_fails_unitarity():
    # |1> and (|2> + |3>)/sqrt2 : at generic theta the second codeword leaks out of the span
    r = 1 / math.sqrt(2)
    coding = LevelCoding(([(1, 1)], [(2, r), (3, r)]))
    f, ok = verify(GateConstruction("leaky", np.eye(2), coding, 0.3))
    assert not ok


def test_coding_validation():
    with pytest.raises(ValueError):
        LevelCoding(([(1, 1)], [(1, 1)]))
    with pytest.raises(ValueError):
        LevelCoding(([(0, 1)], [(1, 1)]))
    with pytest.raises(ValueError):
        LevelCoding(([(1, 1)], [(2, 1)], [(3, 1)]))
    with pytest.raises(ValueError):
        GateConstruction("bad", np.eye(2), LevelCoding(([(9, 1)], [(2, 1)])), 0.0).coding.isometry(8)
    with pytest.raises(ValueError):
        GateConstruction("bad", np.ones((2, 2)), LevelCoding(([(1, 1)], [(2, 1)])), 0.0)
