import math
import numpy as np
import pytest
from qheat.battery.ergotropy import (
    QuantumState,
    battery_charge_curve,
    ergotropy,
    ergotropy_bruteforce,
    gibbs_battery_state,
    passive_energy_bruteforce,
    reference_energy,
)
from qheat.errors import InvalidDensityMatrixError, InvalidInputError
from qheat.gibbs.thermal_state import populations
from qheat.spectra.builder import build_spectrum
from qheat.spectra.models import ModelSpec, Spectrum

@pytest.fixture
def two_level_reference():
    """Fixture pour une référence à deux niveaux (0, 1) en base canonique."""
    return build_spectrum(ModelSpec.explicit([0.0, 1.0]), with_eigenvectors=True)

@pytest.fixture
def zeeman_reference():
    """Fixture pour le terme Zeeman seul du dimère (b = 2 K)."""
    return build_spectrum(ModelSpec.dimer(J=0.0, b=2.0), with_eigenvectors=True)

@pytest.fixture
def rng():
    """Fixture pour un générateur aléatoire reproductible."""
    return np.random.default_rng(99)

def _random_state(rng, d: int) -> QuantumState:
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = G @ G.conj().T
    return QuantumState.from_matrix(rho / np.trace(rho).real)

def _random_reference(rng, d: int) -> Spectrum:
    Q, _ = np.linalg.qr(rng.normal(size=(d, d)))
    return Spectrum.from_levels(rng.uniform(-5.0, 5.0, size=d), eigenvectors=Q)

def test_inverted_two_level(two_level_reference):
    """Teste l'ergotropie d'une population inversée."""
    report = ergotropy(QuantumState.from_populations([0.3, 0.7]), two_level_reference)

    assert report.energy_initial == pytest.approx(0.7, abs=1e-15)
    assert report.energy_passive == pytest.approx(0.3, abs=1e-15)
    assert report.ergotropy == pytest.approx(0.4, abs=1e-12)

def test_passive_states(two_level_reference):
    """Teste l'ergotropie nulle des états passifs."""
    assert ergotropy(QuantumState.from_populations([0.7, 0.3]), two_level_reference).ergotropy == 0.0
    assert ergotropy(QuantumState.from_populations([0.5, 0.5]), two_level_reference).ergotropy <= 1e-15

def test_one_dimensional_state():
    """Teste le cas d = 1."""
    reference = build_spectrum(ModelSpec.explicit([5.0]), with_eigenvectors=True)
    state = QuantumState.from_matrix(np.array([[1.0]]))

    assert ergotropy_bruteforce(state, reference) == 0.0
    assert ergotropy(state, reference).ergotropy == 0.0

def test_gibbs_state_of_reference(zeeman_reference):
    """Teste l'ergotropie nulle de l'état de Gibbs de la référence elle-même."""
    for T in (0.5, 3.0, 50.0):
        report = ergotropy(gibbs_battery_state(zeeman_reference, T), zeeman_reference)
        assert report.ergotropy <= 1e-12

def test_gibbs_battery_state_limits():
    """Teste les limites pure et maximalement mélangée de l'état de Gibbs du dimère."""
    spectrum = build_spectrum(ModelSpec.dimer(J=-32.0), with_eigenvectors=True)
    singlet = np.array([0.0, math.sqrt(0.5), -math.sqrt(0.5), 0.0])

    cold = gibbs_battery_state(spectrum, 1.0).matrix
    assert np.allclose(cold, np.outer(singlet, singlet), atol=1e-12)

    hot = gibbs_battery_state(spectrum, 1e9).matrix
    assert np.allclose(hot, np.eye(4) / 4.0, atol=1e-6)

    rho = gibbs_battery_state(spectrum, 20.0).matrix
    assert (singlet @ rho @ singlet).real == pytest.approx(populations(spectrum, 20.0)[0], rel=1e-12)

def test_dimer_battery_ergotropy(zeeman_reference):
    """Teste W = b (p_S - p_T-) pour le dimère mesuré contre le terme Zeeman."""
    spectrum = build_spectrum(ModelSpec.dimer(J=-10.0, b=2.0), with_eigenvectors=True)
    T = 5.0
    weights = {name: math.exp(-E / T) for name, E in {"S": -7.5, "T-": 0.5, "T0": 2.5, "T+": 4.5}.items()}
    Z = sum(weights.values())

    report = ergotropy(gibbs_battery_state(spectrum, T), zeeman_reference)

    assert report.ergotropy == pytest.approx(2.0 * (weights["S"] - weights["T-"]) / Z, rel=1e-10)

def test_charge_curve_is_monotone(zeeman_reference):
    """Teste la décroissance de l'ergotropie avec la température."""
    spectrum = build_spectrum(ModelSpec.dimer(J=-10.0, b=2.0), with_eigenvectors=True)
    temperatures = np.geomspace(0.5, 50.0, 40)

    curve = battery_charge_curve(spectrum, zeeman_reference, temperatures)

    values = np.array([report.ergotropy for report in curve])
    assert curve[0].T == pytest.approx(0.5)
    assert np.all(np.diff(values) <= 1e-12)
    assert values[0] > values[-1] > 0.0

def test_sorted_matches_bruteforce(rng):
    """Teste l'affectation triée contre l'énumération des permutations."""
    for _ in range(200):
        d = int(rng.integers(2, 7))
        state = _random_state(rng, d)
        reference = _random_reference(rng, d)

        report = ergotropy(state, reference)

        assert abs(report.energy_passive - passive_energy_bruteforce(state, reference)) <= 1e-12
        assert abs(report.ergotropy - ergotropy_bruteforce(state, reference)) <= 1e-12

def test_unitary_invariance_of_passive_energy(rng):
    """Teste l'invariance de l'énergie passive par rotation unitaire de l'état."""
    state = _random_state(rng, 4)
    reference = _random_reference(rng, 4)
    unitary, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))

    rotated = state.rotated(unitary)

    assert ergotropy(rotated, reference).energy_passive == pytest.approx(
        ergotropy(state, reference).energy_passive, abs=1e-10
    )
    assert reference_energy(rotated, reference) != pytest.approx(reference_energy(state, reference), abs=1e-6)

def test_invalid_density_matrices():
    """Teste les codes d'erreur des matrices densité refusées."""
    cases = [
        (np.eye(2), "trace_not_one"),
        (np.array([[0.5, 0.1], [0.0, 0.5]]), "not_hermitian"),
        (np.diag([1.5, -0.5]), "not_positive"),
        (np.ones((2, 3)) / 2.0, "invalid_shape"),
        (np.array([[np.nan, 0.0], [0.0, 1.0]]), "non_finite_entries"),
    ]
    for matrix, code in cases:
        with pytest.raises(InvalidDensityMatrixError) as exc_info:
            QuantumState.from_matrix(matrix)
        assert exc_info.value.error_type == code
    with pytest.raises(ValueError):
        QuantumState(matrix=np.eye(2))

def test_reference_errors(two_level_reference):
    """Teste les références incompatibles."""
    state = QuantumState.from_populations([0.5, 0.5])

    with pytest.raises(InvalidInputError) as exc_info:
        ergotropy(state, build_spectrum(ModelSpec.explicit([0.0, 1.0])))
    assert exc_info.value.error_type == "missing_eigenbasis"

    with pytest.raises(InvalidInputError) as exc_info:
        ergotropy(state, build_spectrum(ModelSpec.dimer(J=0.0, b=1.0), with_eigenvectors=True))
    assert exc_info.value.error_type == "dimension_mismatch"

    with pytest.raises(InvalidInputError):
        gibbs_battery_state(build_spectrum(ModelSpec.dimer(J=-32.0)), 20.0)

def test_bruteforce_dimension_limit():
    """Teste le refus de l'énumération au-delà de d = 8."""
    reference = build_spectrum(ModelSpec.explicit(range(16)), with_eigenvectors=True)
    state = QuantumState.from_populations(np.full(16, 1.0 / 16.0))

    with pytest.raises(InvalidInputError) as exc_info:
        passive_energy_bruteforce(state, reference)
    assert exc_info.value.error_type == "dimension_too_large"
