import math

import numpy as np
import pytest

from cascade_rabi.dynamics import (
    EULER_ANGLE_ERRATA,
    dressed_matrix_elements,
    dressed_matrix_report,
    euler_rotation_matrix,
    evolve_sector_amplitudes,
    quantized_euler_angles,
    sector_eigenvalues,
    sector_hamiltonian,
    sector_probability_trace,
    semiclassical_euler_angles,
    vacuum_sector_matrix,
)
from cascade_rabi.errors import InvalidInput, InvalidSector, NonPhysicalState
from cascade_rabi.linalg import (
    basis_state,
    hermitian_eigensystem,
    matrix_exponential_propagate,
    orthogonality_defect,
)
from cascade_rabi.schema import CaseId, SectorParams
from conftest import random_state

# max over [0, 4 pi] (2001 points) of |P1(case V) - P4(case VIII)| at n = 1, g = 1
FIRST_SECTOR_MIRROR_DEFECT = 0.66011914040579611


def test_vacuum_sector_hamiltonian():
    h = sector_hamiltonian(SectorParams(n=0, g=1.0))
    np.testing.assert_allclose(np.diag(h, k=1), [math.sqrt(6), 2, 0], atol=1e-15)
    np.testing.assert_array_equal(h[3], np.zeros(4))
    np.testing.assert_array_equal(h[:, 3], np.zeros(4))


def test_first_sector_hamiltonian():
    h = sector_hamiltonian(SectorParams(n=1, g=1.0))
    expected = [3, 2 * math.sqrt(2), math.sqrt(3)]
    np.testing.assert_allclose(np.diag(h, k=1), expected, atol=1e-15)
    np.testing.assert_array_equal(h, h.conj().T)


def test_detuning_diagonal():
    h = sector_hamiltonian(SectorParams(n=3, g=1.0, delta=0.4))
    np.testing.assert_allclose(np.diag(h).real, [-0.6, -0.2, 0.2, 0.6], atol=1e-15)


def test_sector_eigenvalues_match_numerics_for_n5_g2():
    p = SectorParams(n=5, g=2.0)
    numerical = hermitian_eigensystem(sector_hamiltonian(p)).eigenvalues
    closed_form = sector_eigenvalues(5, 2.0).eigenvalues
    np.testing.assert_allclose(closed_form, numerical, atol=1e-12 * 15)


def test_vacuum_spectrum():
    spectrum = sector_eigenvalues(0, 1.0)
    assert spectrum.b == 5.0
    root10 = math.sqrt(10)
    expected = [-root10, 0, 0, root10]
    np.testing.assert_allclose(spectrum.eigenvalues, expected, atol=1e-15)


def test_first_sector_spectrum():
    spectrum = sector_eigenvalues(1, 1.0)
    b = math.sqrt(73)
    assert spectrum.b == pytest.approx(b, rel=1e-15)
    outer, inner = math.sqrt(10 + b), math.sqrt(10 - b)
    expected = [-outer, -inner, inner, outer]
    np.testing.assert_allclose(spectrum.eigenvalues, expected, rtol=1e-14)
    assert spectrum.eigenvalues[0] == -spectrum.eigenvalues[3]
    assert spectrum.eigenvalues[1] == -spectrum.eigenvalues[2]


def test_closed_form_spectrum_for_all_small_sectors():
    for n in range(501):
        h = sector_hamiltonian(SectorParams(n=n))
        numerical = hermitian_eigensystem(h).eigenvalues
        closed_form = sector_eigenvalues(n).eigenvalues
        np.testing.assert_allclose(closed_form, numerical, atol=1e-11)


def test_spectral_pairing():
    for n in range(51):
        h = sector_hamiltonian(SectorParams(n=n))
        values = hermitian_eigensystem(h).eigenvalues
        atol = 1e-12 * max(1.0, values[-1])
        np.testing.assert_allclose(values, -values[::-1], atol=atol)


def test_spectrum_approaches_semiclassical_ladder():
    def relative_error(n):
        scaled = sector_eigenvalues(n).eigenvalues / math.sqrt(n + 1)
        return np.max(np.abs(scaled - [-3, -1, 1, 3]) / [3, 1, 1, 3])

    assert relative_error(10**6) < relative_error(10**4) < relative_error(10**2)
    assert relative_error(10**6) < 1e-5


def test_invalid_sector():
    with pytest.raises(InvalidSector):
        SectorParams(n=-1)
    with pytest.raises(InvalidSector):
        SectorParams(n=1.5)
    with pytest.raises(InvalidSector):
        sector_eigenvalues(-2)
    with pytest.raises(InvalidInput):
        SectorParams(n=1, g=0.0)


def test_first_dressed_rotation():
    t = dressed_matrix_elements(1)
    assert orthogonality_defect(t) < 1e-9
    first_row = [-0.4698294512, 0.6744049285, -0.5284508367, 0.2125511524]
    np.testing.assert_allclose(t[0], first_row, atol=1e-9)
    transformed = t @ sector_hamiltonian(SectorParams(n=1)).real @ t.T
    spectrum = np.diag(sector_eigenvalues(1).eigenvalues)
    np.testing.assert_allclose(transformed, spectrum, atol=1e-9)


def test_dressed_rotation_validity_gate():
    for n in range(1, 101):
        t = dressed_matrix_elements(n)
        assert orthogonality_defect(t) < 1e-9
        transformed = t @ sector_hamiltonian(SectorParams(n=n)).real @ t.T
        spectrum = np.diag(sector_eigenvalues(n).eigenvalues)
        np.testing.assert_allclose(transformed, spectrum, atol=1e-9 * math.sqrt(n))


def test_dressed_report_agrees_with_eigenvectors():
    report = dressed_matrix_report(7)
    assert len(report) == 16
    entries = {(i, j) for i in range(1, 5) for j in range(1, 5)}
    assert {(d.row, d.column) for d in report} == entries
    assert max(d.deviation for d in report) < 1e-9


def test_dressed_rotation_needs_excited_sector():
    with pytest.raises(InvalidSector):
        dressed_matrix_elements(0)
    with pytest.raises(InvalidSector):
        quantized_euler_angles(0)


def test_dressed_rotation_approaches_resonance_rotation():
    resonance = euler_rotation_matrix(semiclassical_euler_angles())
    differences = [
        np.max(np.abs(dressed_matrix_elements(n) - resonance))
        for n in (10**2, 10**4, 10**6)
    ]
    assert differences[0] > differences[1] > differences[2]
    assert differences[2] < 5e-3


def test_vacuum_sector_matrix():
    t = vacuum_sector_matrix()
    assert orthogonality_defect(t) < 1e-15
    transformed = t @ sector_hamiltonian(SectorParams(n=0)).real @ t.T
    root10 = math.sqrt(10)
    expected = np.diag([-root10, 0, 0, root10])
    np.testing.assert_allclose(transformed, expected, atol=1e-14)


def test_quantized_angles_are_principal_values():
    angles = quantized_euler_angles(1).as_array()
    assert np.all(np.isfinite(angles))
    assert np.all((angles > -math.pi) & (angles <= math.pi))


@pytest.mark.parametrize("n", [1, 2, 5, 10, 100])
def test_quantized_angles_rebuild_dressed_rotation(n):
    rebuilt = euler_rotation_matrix(quantized_euler_angles(n))
    assert np.max(np.abs(rebuilt - dressed_matrix_elements(n))) < 1e-8


def test_bohr_correspondence():
    resonance = semiclassical_euler_angles()
    d = {
        n: quantized_euler_angles(n).max_difference(resonance)
        for n in (10**2, 10**4, 10**6)
    }
    assert d[10**4] < d[10**2]
    assert d[10**6] < d[10**4]
    assert d[10**6] < 5e-3


def test_errata_are_documented():
    assert set(EULER_ANGLE_ERRATA) == {"theta1", "theta2", "theta3"}


def test_evolve_sector_at_zero_time(rng):
    c0 = random_state(rng)
    evolved = evolve_sector_amplitudes(c0, SectorParams(n=3), 0.0)
    np.testing.assert_array_equal(evolved, c0)


def test_sector_propagation_matches_matrix_exponential(rng):
    p = SectorParams(n=1, g=1.0)
    h = sector_hamiltonian(p)
    for t in rng.uniform(-10, 10, size=10):
        np.testing.assert_allclose(
            evolve_sector_amplitudes(basis_state(1), p, t),
            matrix_exponential_propagate(h, basis_state(1), t),
            atol=1e-10,
        )


def test_random_sector_propagation(rng):
    for _ in range(50):
        n = int(rng.integers(0, 51))
        p = SectorParams(n=n, g=rng.uniform(0.2, 2.0))
        c0 = random_state(rng)
        if n == 0:
            c0[3] = 0
            c0 /= np.linalg.norm(c0)
        t = rng.uniform(-10, 10)
        evolved = evolve_sector_amplitudes(c0, p, t)
        assert abs(np.linalg.norm(evolved) - 1) < 1e-12
        direct = matrix_exponential_propagate(sector_hamiltonian(p), c0, t)
        np.testing.assert_allclose(evolved, direct, atol=1e-10)


def test_detuned_sector_propagation(rng):
    for n in (0, 2, 9):
        p = SectorParams(n=n, g=1.0, delta=0.3)
        c0 = basis_state(2)
        for t in (0.5, 3.0):
            np.testing.assert_allclose(
                evolve_sector_amplitudes(c0, p, t),
                matrix_exponential_propagate(sector_hamiltonian(p), c0, t),
                atol=1e-10,
            )


def test_vacuum_sector_keeps_fourth_state_empty():
    for delta in (0.0, 0.7):
        p = SectorParams(n=0, g=1.0, delta=delta)
        for t in np.linspace(0, 20, 41):
            assert evolve_sector_amplitudes(basis_state(3), p, t)[3] == 0


def test_vacuum_sector_rejects_fourth_state():
    with pytest.raises(NonPhysicalState):
        evolve_sector_amplitudes(basis_state(4), SectorParams(n=0), 1.0)


def test_case_five_starts_in_level_one(sector_grid):
    trace = sector_probability_trace(CaseId.V, SectorParams(n=4), sector_grid)
    np.testing.assert_array_equal(trace.populations[0], [1, 0, 0, 0])
    assert trace.normalization_defect() < 1e-10


def test_symmetry_breaking_in_first_sector(sector_grid):
    p = SectorParams(n=1, g=1.0)
    five = sector_probability_trace(CaseId.V, p, sector_grid)
    eight = sector_probability_trace(CaseId.VIII, p, sector_grid)
    defect = np.max(np.abs(five.p1 - eight.p4))
    assert defect > 0.05
    assert defect == pytest.approx(FIRST_SECTOR_MIRROR_DEFECT, rel=1e-9)


def test_symmetry_breaking_vanishes_at_large_n(sector_grid):
    def defect(n):
        p = SectorParams(n=n)
        five = sector_probability_trace(CaseId.V, p, sector_grid)
        eight = sector_probability_trace(CaseId.VIII, p, sector_grid)
        return np.max(np.abs(five.populations - eight.populations[:, ::-1]))

    assert defect(10**4) < defect(1)


def test_case_seven_in_vacuum_sector(sector_grid):
    trace = sector_probability_trace(CaseId.VII, SectorParams(n=0), sector_grid)
    assert np.all(trace.p4 == 0)


def test_case_eight_needs_excited_sector(sector_grid):
    with pytest.raises(InvalidSector):
        sector_probability_trace(CaseId.VIII, SectorParams(n=0), sector_grid)
    with pytest.raises(InvalidInput):
        sector_probability_trace(CaseId.I, SectorParams(n=1), sector_grid)
