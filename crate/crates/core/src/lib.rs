//! Simulation of a single-qubit reinforcement-learning protocol whose
//! environment acts through noiseless, phase-damping or amplitude-damping
//! evolution.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! and `*F32` aliases below fix the precision for callers that do not care.

// Negated comparisons are how NaN gets rejected during validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod agent;
pub mod channels;
pub mod ensemble;
mod error;
pub mod linalg;
pub mod rng;
mod scalar;

pub use agent::{
    apply_outcome, init_agent, local_rotation, random_rotation, run_realization, step, AgentState,
    AlgorithmParams, Fidelities, IterationRecord, Outcome,
};
pub use channels::{
    apply_channel, apply_channel_kraus, hamiltonian_unitary, kraus_pair, measurement_prob_zero,
    Channel, EnergyBasis, NoiseKind,
};
pub use ensemble::{
    dual_basis_fidelities, run_ensemble, run_ensemble_with_threads, sweep, DualSeries,
    EnsembleConfig, EnsembleStats, Series, SweepOutcome,
};
pub use error::{Error, Result};
pub use linalg::{
    axis_rotation, conjugate, density_from_pure, overlap_magnitude, pauli, BasisBit, DensityMatrix,
    Matrix2, PauliAxis, PureState, Unitary2,
};
pub use rng::{realization_seed, RngStream};
pub use scalar::Scalar;

pub type PureStateF64 = PureState<f64>;
pub type DensityMatrixF64 = DensityMatrix<f64>;
pub type Unitary2F64 = Unitary2<f64>;
pub type ChannelF64 = Channel<f64>;
pub type EnsembleConfigF64 = EnsembleConfig<f64>;
pub type EnsembleStatsF64 = EnsembleStats<f64>;

pub type PureStateF32 = PureState<f32>;
pub type DensityMatrixF32 = DensityMatrix<f32>;
pub type Unitary2F32 = Unitary2<f32>;
pub type ChannelF32 = Channel<f32>;
pub type EnsembleConfigF32 = EnsembleConfig<f32>;
pub type EnsembleStatsF32 = EnsembleStats<f32>;
