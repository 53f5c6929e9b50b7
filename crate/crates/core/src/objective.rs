//! Decision-vector encoding and the weighted tracking/smoothness objective.
//!
//! A candidate solution assigns one joint configuration to every via point.
//! Via point 0 is pinned to the scenario's start configuration, so the
//! decision vector holds 3·(n−1) genes covering points 1..n−1. Four terms
//! are evaluated on the decoded path:
//!
//! * `e_e` — summed planar distance between the desired and generated
//!   end-effector positions over the free via points (φ is not penalized);
//! * `d_j` — summed squared joint displacements between successive points;
//! * `v_e` — squared spread of the Cartesian step lengths around their
//!   mean (zero exactly when the end-effector moves in equal steps);
//! * `v_j` — the same spread measure applied to the per-step total joint
//!   motion.
//!
//! The weighted total `f_fit = c1·e_e + c2·d_j + c3·v_e + c4·v_j` drives
//! the genetic stage; the tracking-only total `f_eval = e_e` drives the
//! pattern-search refinement.

use crate::kinematics::{JointConfig, RobotModel};
use crate::scenario::{Scenario, Trajectory};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ObjectiveError {
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weight c{index} must be non-negative, got {value}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("weights c1+c2+c3+c4 must equal 1, got {sum}")]
    WeightSum { sum: f64 },
}

/// Weights (c1, c2, c3, c4) of the four objective terms; non-negative and
/// summing to 1 within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessWeights {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl FitnessWeights {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self, ObjectiveError> {
        for (index, &value) in [c1, c2, c3, c4].iter().enumerate() {
            if !(value >= 0.0) {
                return Err(ObjectiveError::NegativeWeight {
                    index: index + 1,
                    value,
                });
            }
        }
        let sum = c1 + c2 + c3 + c4;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(ObjectiveError::WeightSum { sum });
        }
        Ok(Self { c1, c2, c3, c4 })
    }
}

/// One joint configuration per via point.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPath {
    pub configs: Vec<JointConfig>,
}

impl JointPath {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }
}

/// Flat vector of 3·(n−1) joint angles for via points 1..n−1, each within
/// its joint limits. Produced by [`FitnessEvaluator::encode`].
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector {
    genes: Vec<f64>,
}

impl DecisionVector {
    pub fn genes(&self) -> &[f64] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn into_genes(self) -> Vec<f64> {
        self.genes
    }
}

/// All evaluated terms of one candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessBreakdown {
    pub e_e: f64,
    pub d_j: f64,
    pub v_e: f64,
    pub v_j: f64,
    /// Weighted total, minimized by the genetic stage.
    pub f_fit: f64,
    /// Tracking error alone, minimized by the pattern-search stage.
    pub f_eval: f64,
}

/// Summed planar tracking error of a path against the desired trajectory.
///
/// Via point 0 is the prescribed start, not a tracked target, so the sum
/// runs over points 1..n−1. Orientation is not penalized.
pub fn position_error(
    path: &JointPath,
    trajectory: &Trajectory,
    model: &RobotModel,
) -> Result<f64, ObjectiveError> {
    if path.len() != trajectory.len() {
        return Err(ObjectiveError::LengthMismatch {
            expected: trajectory.len(),
            got: path.len(),
        });
    }
    Ok(path
        .configs
        .iter()
        .zip(&trajectory.points)
        .skip(1)
        .map(|(q, desired)| model.forward_kinematics(q).distance(desired))
        .sum())
}

/// Σ over successive via points of the squared per-joint displacement.
pub fn joint_displacement(path: &JointPath) -> f64 {
    path.configs
        .windows(2)
        .map(|w| {
            let a = w[0].as_array();
            let b = w[1].as_array();
            (0..3).map(|k| (b[k] - a[k]) * (b[k] - a[k])).sum::<f64>()
        })
        .sum()
}

/// Σ (v − mean)² — zero exactly when all values are equal.
fn squared_spread(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v - mean) * (v - mean)).sum()
}

/// Deviation of the Cartesian step lengths from uniformity.
pub fn cartesian_uniformity(path: &JointPath, model: &RobotModel) -> f64 {
    let positions: Vec<_> = path
        .configs
        .iter()
        .map(|q| model.forward_kinematics(q))
        .collect();
    let gaps: Vec<f64> = positions.windows(2).map(|w| w[0].distance(&w[1])).collect();
    squared_spread(&gaps)
}

/// Deviation of the per-step total joint motion from uniformity.
pub fn joint_uniformity(path: &JointPath) -> f64 {
    let steps: Vec<f64> = path
        .configs
        .windows(2)
        .map(|w| {
            let a = w[0].as_array();
            let b = w[1].as_array();
            (0..3).map(|k| (b[k] - a[k]).abs()).sum()
        })
        .collect();
    squared_spread(&steps)
}

/// Immutable evaluation context: robot, desired trajectory, pinned start
/// configuration and term weights. Evaluation is pure, so one evaluator
/// may serve any number of threads.
#[derive(Debug, Clone)]
pub struct FitnessEvaluator {
    model: RobotModel,
    trajectory: Trajectory,
    initial: JointConfig,
    weights: FitnessWeights,
    bounds: Vec<(f64, f64)>,
}

impl FitnessEvaluator {
    pub fn new(
        model: RobotModel,
        trajectory: Trajectory,
        initial: JointConfig,
        weights: FitnessWeights,
    ) -> Self {
        let mut bounds = Vec::with_capacity(3 * trajectory.len().saturating_sub(1));
        for _ in 1..trajectory.len() {
            for lim in &model.joint_limits {
                bounds.push((lim.min, lim.max));
            }
        }
        Self {
            model,
            trajectory,
            initial,
            weights,
            bounds,
        }
    }

    pub fn from_scenario(scenario: &Scenario) -> Self {
        Self::new(
            scenario.robot.clone(),
            scenario.trajectory.clone(),
            scenario.initial_config,
            scenario.weights,
        )
    }

    pub fn model(&self) -> &RobotModel {
        &self.model
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn weights(&self) -> FitnessWeights {
        self.weights
    }

    /// 3·(n−1): three genes per free via point.
    pub fn gene_count(&self) -> usize {
        3 * (self.trajectory.len() - 1)
    }

    /// Per-gene joint-limit box.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Expands genes into a path: point 0 pinned to the start
    /// configuration, out-of-limit genes clamped to their joint limits.
    pub fn decode(&self, genes: &[f64]) -> Result<JointPath, ObjectiveError> {
        if genes.len() != self.gene_count() {
            return Err(ObjectiveError::LengthMismatch {
                expected: self.gene_count(),
                got: genes.len(),
            });
        }
        let mut configs = Vec::with_capacity(self.trajectory.len());
        configs.push(self.initial);
        for (triple, limits) in genes
            .chunks_exact(3)
            .zip(std::iter::repeat(&self.model.joint_limits))
        {
            configs.push(JointConfig::new(
                limits[0].clamp(triple[0]),
                limits[1].clamp(triple[1]),
                limits[2].clamp(triple[2]),
            ));
        }
        Ok(JointPath { configs })
    }

    /// Flattens a path's free via points into a decision vector, clamping
    /// to joint limits. The path's point 0 is dropped (it is pinned).
    pub fn encode(&self, path: &JointPath) -> Result<DecisionVector, ObjectiveError> {
        if path.len() != self.trajectory.len() {
            return Err(ObjectiveError::LengthMismatch {
                expected: self.trajectory.len(),
                got: path.len(),
            });
        }
        let mut genes = Vec::with_capacity(self.gene_count());
        for q in &path.configs[1..] {
            for (k, angle) in q.as_array().into_iter().enumerate() {
                genes.push(self.model.joint_limits[k].clamp(angle));
            }
        }
        Ok(DecisionVector { genes })
    }

    /// All four terms plus the weighted and tracking totals for a vector.
    pub fn fitness(&self, genes: &[f64]) -> Result<FitnessBreakdown, ObjectiveError> {
        let path = self.decode(genes)?;
        Ok(self
            .fitness_of_path(&path)
            .expect("decoded path length matches"))
    }

    /// Terms of an explicit path, without pinning or clamping. Used for
    /// the analytical baseline, whose start solves via point 0 instead of
    /// being pinned.
    pub fn fitness_of_path(&self, path: &JointPath) -> Result<FitnessBreakdown, ObjectiveError> {
        let e_e = position_error(path, &self.trajectory, &self.model)?;
        let d_j = joint_displacement(path);
        let v_e = cartesian_uniformity(path, &self.model);
        let v_j = joint_uniformity(path);
        let w = self.weights;
        Ok(FitnessBreakdown {
            e_e,
            d_j,
            v_e,
            v_j,
            f_fit: w.c1 * e_e + w.c2 * d_j + w.c3 * v_e + w.c4 * v_j,
            f_eval: e_e,
        })
    }

    /// The pattern-search objective: tracking error of the decoded path.
    pub fn tracking_objective(&self, genes: &[f64]) -> Result<f64, ObjectiveError> {
        let path = self.decode(genes)?;
        position_error(&path, &self.trajectory, &self.model)
    }

    /// Planar tracking distance at every via point, including point 0.
    ///
    /// Entries 1.. sum to `f_eval`; entry 0 reports how far the prescribed
    /// start configuration sits from the first desired point.
    pub fn point_errors(&self, path: &JointPath) -> Result<Vec<f64>, ObjectiveError> {
        if path.len() != self.trajectory.len() {
            return Err(ObjectiveError::LengthMismatch {
                expected: self.trajectory.len(),
                got: path.len(),
            });
        }
        Ok(path
            .configs
            .iter()
            .zip(&self.trajectory.points)
            .map(|(q, desired)| self.model.forward_kinematics(q).distance(desired))
            .collect())
    }
}
