//! Partition-function estimation: normalization, shifted grids, phase and
//! amplitude estimation, and the min-over-grids estimator.

pub mod counting;
pub mod estimate;
pub mod evolution;
pub mod grid;
pub mod normalize;
pub mod phase;

pub use counting::{
    amplitude_estimate, choi_deviation, count_in_interval, epr_state, grover_register_bits,
    AmplitudeEstimate, CountBackend, MarkedPreparer,
};
pub use estimate::{
    approximate_qpf, approximate_qpf_normalized, grid_size, Backend, CountRecord, GridValue,
    QpfConfig, QpfEstimate,
};
pub use evolution::{hamiltonian_evolution, Evolution, EvolutionBackend};
pub use grid::{boundary_grids, GridPartition};
pub use normalize::{normalize, normalize_with_margin, Normalization, NormalizedHamiltonian};
pub use phase::{
    energy_estimate, median_amplify, phase_estimate, EnergyBackend, EnergyEstimationParams,
    PhaseDistribution,
};
