"""Symmetry-projection metrology numerics.

Dense exact-diagonalization core (C++/Eigen) with the metrological
quantities, sector projectors, spin and bosonic model builders, and the
parity-extraction circuit. Matrices are plain numpy arrays.
"""

from symproj._core import (  # noqa: F401
    __version__,
    bec_case,
    cat_state,
    check_theorem,
    coherent_spin_state,
    collective_spin,
    dicke_operators,
    evolve,
    is_off_diagonal,
    is_supported_in_sector,
    ising_hamiltonian,
    magnetization_projector,
    oat_evolve,
    parity_extraction,
    parity_projector,
    pauli,
    qfi,
    qfi_closed_form,
    random_density_in_sector,
    run_scenario_json,
    separable_bound,
    signal_to_noise,
)
