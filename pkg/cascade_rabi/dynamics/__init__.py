from .coherent import (
    acoherent_probability_trace,
    coherent_probability_trace,
    collapse_revival_metrics,
    mirror_defect,
    poisson_weights,
    revival_time,
)
from .quantized import (
    EULER_ANGLE_ERRATA,
    dressed_matrix_elements,
    dressed_matrix_report,
    evolve_sector_amplitudes,
    quantized_euler_angles,
    sector_eigenvalues,
    sector_hamiltonian,
    sector_populations_on_grid,
    sector_probability_trace,
    vacuum_sector_matrix,
)
from .semiclassical import (
    euler_rotation_matrix,
    evolve_amplitudes,
    integrate_lab_frame,
    lab_frame_hamiltonian,
    probability_trace,
    rabi_populations,
    resonance_eigenvalues,
    rotating_frame_hamiltonian,
    semiclassical_amplitudes_on_grid,
    semiclassical_euler_angles,
)
