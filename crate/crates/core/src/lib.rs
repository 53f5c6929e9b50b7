//! Point-to-point trajectory tracking for a three-link planar arm.
//!
//! A real-coded genetic algorithm searches joint-space via points that
//! minimize a weighted tracking/smoothness objective, then pattern search
//! refines the result until the end-effector tracking error is driven to
//! near zero. A closed-form inverse-kinematics baseline solves the same
//! tasks exactly and anchors every comparison.
//!
//! The crate is organised along the pipeline:
//!
//! * [`kinematics`] — forward/inverse kinematics and the cubic
//!   orientation profile;
//! * [`scenario`] — benchmark trajectories and scenario files;
//! * [`objective`] — decision-vector encoding and the fitness terms;
//! * [`ga`] — the genetic optimizer;
//! * [`pattern_search`] — the coordinate-poll refinement stage;
//! * [`pipeline`] — the three experiment arms;
//! * [`report`] — CSV/summary/SVG emission.

// Validation guards are written `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ga;
pub mod kinematics;
pub mod objective;
pub mod pattern_search;
pub mod pipeline;
pub mod report;
pub mod scenario;

pub use ga::{GaParams, GaTrace, PopulationInit};
pub use kinematics::{
    CubicProfile, ElbowBranch, JointConfig, JointLimits, Pose, RobotModel, WristCenter,
};
pub use objective::{
    DecisionVector, FitnessBreakdown, FitnessEvaluator, FitnessWeights, JointPath,
};
pub use pattern_search::{PsParams, PsTrace};
pub use pipeline::{Arm, PipelineError, RunResult};
pub use scenario::{Scenario, ScenarioConfig, Trajectory};
