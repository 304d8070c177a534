//! Bipedal gait modeled as a two-cell automaton over 16 four-bit states,
//! with synthetic joint-angle trajectory generation, a least-squares
//! extreme learning machine classifier, and trajectory error analysis.
//!
//! The crate is organized around the pipeline the CLI exposes:
//!
//! - [`gait`]: the eight sub-phases, their percent windows, and the 4-bit
//!   leg+phase state encoding.
//! - [`automaton`]: the 16-entry cross-leg rule tables and lockstep
//!   simulation with synchronization checking.
//! - [`trajectory`]: periodic keyframe interpolation, labeled dataset
//!   synthesis, angular velocities, and limit-cycle extraction.
//! - [`stick`]: planar forward kinematics and stick-figure SVG rendering.
//! - [`lsq`]: the ridge/normal-equation least-squares core.
//! - [`elm`]: random-hidden-layer classifier and linear-regression
//!   baseline, with model (de)serialization.
//! - [`analysis`]: error metrics and trajectory comparison reports.

pub mod analysis;
pub mod automaton;
pub mod elm;
mod error;
pub mod gait;
pub mod lsq;
pub mod stick;
pub mod trajectory;

pub use analysis::{compare_trajectories, AnalysisReport, JointReport};
pub use automaton::{
    next_state, simulate, trace_to_csv, validate_sync, AutomatonState, RuleTable, SyncCheck,
    TraceRecord,
};
pub use elm::{evaluate, predict, train_elm, train_linreg, Activation, Dataset, Evaluation, Model};
pub use error::{Error, Result};
pub use gait::{
    phase_from_percent, window_start, GaitPhase, JointMotionTriple, LegId, LegStateCode,
    PhaseWindow, WINDOWS,
};
pub use lsq::{least_squares_solve, LsqSolution};
pub use stick::{stick_pose, SkeletonParams, StickPose};
pub use trajectory::{
    angular_velocity, generate_dataset, interpolate_cycle, limit_cycle, JointSelector,
    KeyframeTable, LimitCycleResult, Trajectory, TrajectorySample,
};
