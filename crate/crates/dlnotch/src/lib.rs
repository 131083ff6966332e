//! Notch depth of diagonally loaded MVDR adaptive beamformers.
//!
//! A single stationary interferer in unit white noise is observed by a
//! uniform linear array. The minimum variance distortionless response
//! beamformer, computed from a diagonally loaded sample covariance matrix,
//! places a notch at the interferer; this crate computes that notch depth
//! three ways and cross-checks them:
//!
//! * **Simulation** — seeded Monte Carlo over snapshot batches
//!   ([`experiments`]).
//! * **Closed-form mean models** — random-matrix predictions of the mean
//!   notch depth versus snapshot count and versus interferer power,
//!   including breakpoint locations ([`rmt`]).
//! * **Ensemble reference** — the exact notch depth when the true
//!   covariance is known ([`beamformer::ensemble_notch_depth`]).
//!
//! Everything downstream of a seed is deterministic: sweeps are
//! bit-identical across reruns and worker counts.

pub mod array;
pub mod beamformer;
pub mod covariance;
pub mod error;
pub mod experiments;
pub mod rmt;

pub use array::{angle_decomposition, generalized_cosine_sq, steering_vector};
pub use array::{AngleDecomposition, ArrayGeometry, SteeringVector};
pub use beamformer::{beampattern, ensemble_notch_depth, mvdr_weights, notch_depth};
pub use beamformer::{BeamformerWeights, NotchDepthValue};
pub use covariance::{diagonal_load, eigensystem, ensemble_cov, generate_snapshots, sample_cov, solve_hpd};
pub use covariance::{CovarianceKind, CovarianceMatrix, EigenSystem, SnapshotBatch};
pub use error::{Error, Result};
pub use experiments::{
    model_only_curve, run_sweep, run_trial, trial_seed, validate_rmt_projection,
};
pub use experiments::{
    AveragingDomain, NotchDepthCurve, RmtValidation, Scenario, SweepAxis, SweepSpec,
};
pub use rmt::{
    breakpoints_inr, breakpoints_snapshots, model_nd_vs_inr, model_nd_vs_snapshots,
    rmt_perp_projection_sq, rmt_projection_sq,
};
pub use rmt::{BreakpointsInr, BreakpointsL, ModelParams, ValidityWarning};
