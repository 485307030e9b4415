"""Wave-packet dynamics of a two-level emitter coupled to two degenerate cavity modes.

The package propagates two-component wave packets on the coupled potential
surfaces spanned by the quadratures of two cavity modes, evaluates geometric
phases around the conical intersection of those surfaces, and extracts cavity
observables (photon statistics, Husimi maps, intensities, revival structure)
from the evolving field.
"""

from .berry import (
    PhaseMap,
    adiabatic_angles,
    berry_phase_closed_form,
    berry_phase_numeric,
    phase_map,
)
from .errors import (
    CavityJTError,
    ConfigError,
    NumericalGuardError,
    PropagationError,
    QuadratureError,
    TruncationError,
    ValidationFailure,
)
from .fock import (
    FockBasis,
    coherent_amplitudes,
    evolve,
    fock_fidelity,
    fock_to_grid,
    grid_to_fock,
    ground_state_energy,
    hamiltonian,
    initial_fock_state,
)
from .io import (
    load_config,
    model_from_config,
    parse_config,
    read_snapshot,
    save_config,
    serialize_config,
    write_husimi_csv,
    write_manifest,
    write_phase_map_csv,
    write_photon_csv,
    write_records_csv,
    write_snapshot,
    write_surfaces_csv,
)
from .model import (
    ModelParams,
    PotentialMatrix,
    SurfaceGeometry,
    adiabatic_surfaces,
    correction_terms,
    coupling_gain,
    diabatic_potential,
    surface_geometry,
)
from .observables import (
    HusimiMap,
    ModeKernel,
    PhotonStatistics,
    RevivalPeak,
    TimeScales,
    density_snapshot,
    detect_revivals,
    husimi_q,
    photon_statistics,
    reduce_mode,
    ring_profile,
    timescales,
)
from .propagator import (
    GridSpec,
    Mode,
    PropagationConfig,
    ScalarField,
    SpinorField,
    Trajectory,
    initial_scalar_state,
    initial_state,
    lower_surface_state,
    propagate,
    step_full,
    step_semi_adiabatic,
)

__version__ = "0.1.0"

__all__ = [
    "CavityJTError",
    "ConfigError",
    "FockBasis",
    "GridSpec",
    "HusimiMap",
    "Mode",
    "ModeKernel",
    "ModelParams",
    "NumericalGuardError",
    "PhaseMap",
    "PhotonStatistics",
    "PotentialMatrix",
    "PropagationConfig",
    "PropagationError",
    "QuadratureError",
    "RevivalPeak",
    "ScalarField",
    "SpinorField",
    "SurfaceGeometry",
    "TimeScales",
    "Trajectory",
    "TruncationError",
    "ValidationFailure",
    "adiabatic_angles",
    "adiabatic_surfaces",
    "berry_phase_closed_form",
    "berry_phase_numeric",
    "coherent_amplitudes",
    "correction_terms",
    "coupling_gain",
    "density_snapshot",
    "detect_revivals",
    "diabatic_potential",
    "evolve",
    "fock_fidelity",
    "fock_to_grid",
    "grid_to_fock",
    "ground_state_energy",
    "hamiltonian",
    "husimi_q",
    "initial_fock_state",
    "initial_scalar_state",
    "initial_state",
    "load_config",
    "lower_surface_state",
    "model_from_config",
    "parse_config",
    "phase_map",
    "photon_statistics",
    "propagate",
    "read_snapshot",
    "reduce_mode",
    "ring_profile",
    "save_config",
    "serialize_config",
    "step_full",
    "step_semi_adiabatic",
    "surface_geometry",
    "timescales",
    "write_husimi_csv",
    "write_manifest",
    "write_phase_map_csv",
    "write_photon_csv",
    "write_records_csv",
    "write_snapshot",
    "write_surfaces_csv",
]
