"""Eigenstates and probability-current hydrodynamics of the two-dimensional
parabolic potential barrier."""

from ._core import (  # noqa: F401
    Branch,
    CornerPotential,
    FlowField,
    GridSpec,
    NoMonomialFitError,
    NodalRegionError,
    NotIrrotationalError,
    NotSolenoidalError,
    OriginSingularError,
    PhysParams,
    PotentialPair,
    RepresentationMismatchError,
    StateLabel,
    Superposition,
    Wavefunction,
    __version__,
    apply_lz,
    build_state,
    classify_flow,
    complex_velocity,
    conjugate_state,
    degeneracy,
    energy,
    extract_potentials,
    fit_corner_potential,
    hermite_ode_residual,
    hermite_pm_coeffs,
    integrate_streamline,
    lz_eigencheck,
    node_threshold,
    run_verification,
    scale_factors,
    schrodinger_residual,
    stationary_current_closed_form,
    superpose,
    time_factor,
    to_hyperbolic,
    to_polar,
)
