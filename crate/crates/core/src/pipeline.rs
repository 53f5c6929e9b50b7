//! Experiment arms: the analytical baseline, the genetic stage, and the
//! genetic stage refined by pattern search.
//!
//! The analytical arm solves every via point with the closed-form inverse
//! kinematics and tracks exactly; it is the reference the optimizers are
//! measured against. The GA arm minimizes the weighted objective `f_fit`.
//! The GPS arm takes the GA arm's best vector as its start and lets
//! pattern search minimize the tracking error `f_eval` alone, so its final
//! tracking error can never exceed the GA's.

use crate::ga::{run_ga, GaError, GaTrace};
use crate::kinematics::{ElbowBranch, IkError, Pose};
use crate::objective::{FitnessBreakdown, FitnessEvaluator, JointPath, ObjectiveError};
use crate::pattern_search::{run_ps, PsError, PsTrace};
use crate::scenario::Scenario;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("via point {index} at ({x}, {y}, {phi} rad) is unreachable: {source}", x = pose.x, y = pose.y, phi = pose.phi)]
    Unreachable {
        index: usize,
        pose: Pose,
        #[source]
        source: IkError,
    },
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
    #[error(transparent)]
    Ga(#[from] GaError),
    #[error(transparent)]
    Ps(#[from] PsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arm {
    Analytic,
    Ga,
    Gps,
}

impl Arm {
    pub fn label(self) -> &'static str {
        match self {
            Arm::Analytic => "analytic",
            Arm::Ga => "ga",
            Arm::Gps => "gps",
        }
    }
}

/// Everything one arm produced on one scenario.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub arm: Arm,
    pub path: JointPath,
    /// Planar tracking distance at every via point. Entries 1.. sum to
    /// `breakdown.f_eval`; entry 0 reports the prescribed start.
    pub point_errors: Vec<f64>,
    pub breakdown: FitnessBreakdown,
    pub ga_trace: Option<GaTrace>,
    pub ps_trace: Option<PsTrace>,
    pub duration: Duration,
    pub seed: u64,
}

/// Joint path solving every via point exactly with the given branch.
pub fn analytic_path(scenario: &Scenario, branch: ElbowBranch) -> Result<JointPath, PipelineError> {
    let configs = scenario
        .trajectory
        .points
        .iter()
        .enumerate()
        .map(|(index, pose)| {
            scenario
                .robot
                .inverse_kinematics(pose, branch)
                .map_err(|source| PipelineError::Unreachable {
                    index,
                    pose: *pose,
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(JointPath { configs })
}

/// Closed-form baseline: inverse kinematics at each via point, fixed
/// elbow branch. Fails with the offending index when a point cannot be
/// reached under the orientation profile.
pub fn run_analytic(scenario: &Scenario) -> Result<RunResult, PipelineError> {
    let started = Instant::now();
    let evaluator = FitnessEvaluator::from_scenario(scenario);
    let path = analytic_path(scenario, ElbowBranch::default())?;
    let breakdown = evaluator.fitness_of_path(&path)?;
    let point_errors = evaluator.point_errors(&path)?;
    Ok(RunResult {
        arm: Arm::Analytic,
        path,
        point_errors,
        breakdown,
        ga_trace: None,
        ps_trace: None,
        duration: started.elapsed(),
        seed: scenario.seed,
    })
}

/// Genetic stage minimizing the weighted objective.
pub fn run_ga_arm(scenario: &Scenario, seed: u64) -> Result<RunResult, PipelineError> {
    let started = Instant::now();
    let evaluator = FitnessEvaluator::from_scenario(scenario);
    let mut init = scenario.init.clone();
    if scenario.seed_analytic {
        // Plant the oracle path when it exists; a scenario whose baseline
        // is unreachable simply runs unseeded.
        if let Ok(path) = analytic_path(scenario, ElbowBranch::default()) {
            if let Ok(genes) = evaluator.encode(&path) {
                init.leader = Some(genes.into_genes());
            }
        }
    }
    let objective = |genes: &[f64]| {
        evaluator
            .fitness(genes)
            .expect("gene count is fixed by the bounds")
            .f_fit
    };
    let trace = run_ga(objective, &scenario.ga, &init, seed)?;
    let path = evaluator.decode(&trace.best_vector)?;
    let breakdown = evaluator.fitness_of_path(&path)?;
    let point_errors = evaluator.point_errors(&path)?;
    Ok(RunResult {
        arm: Arm::Ga,
        path,
        point_errors,
        breakdown,
        ga_trace: Some(trace),
        ps_trace: None,
        duration: started.elapsed(),
        seed,
    })
}

/// Pattern-search refinement chained onto a finished GA arm: the GA best
/// vector is the start, and only the tracking error is minimized.
pub fn refine_with_ps(
    scenario: &Scenario,
    ga_result: &RunResult,
) -> Result<RunResult, PipelineError> {
    let started = Instant::now();
    let evaluator = FitnessEvaluator::from_scenario(scenario);
    let ga_trace = ga_result
        .ga_trace
        .as_ref()
        .expect("the GPS arm refines a GA result");
    let objective = |genes: &[f64]| {
        evaluator
            .tracking_objective(genes)
            .expect("gene count is fixed by the bounds")
    };
    let ps_trace = run_ps(objective, &ga_trace.best_vector, &scenario.ps)?;
    let path = evaluator.decode(&ps_trace.best_vector)?;
    let breakdown = evaluator.fitness_of_path(&path)?;
    let point_errors = evaluator.point_errors(&path)?;
    Ok(RunResult {
        arm: Arm::Gps,
        path,
        point_errors,
        breakdown,
        ga_trace: Some(ga_trace.clone()),
        ps_trace: Some(ps_trace),
        duration: ga_result.duration + started.elapsed(),
        seed: ga_result.seed,
    })
}

/// GA followed by pattern search.
pub fn run_gps_arm(scenario: &Scenario, seed: u64) -> Result<RunResult, PipelineError> {
    let ga_result = run_ga_arm(scenario, seed)?;
    refine_with_ps(scenario, &ga_result)
}

/// All three arms; the GPS arm reuses the GA arm's result, so the pair
/// shares one global search.
pub fn run_all(scenario: &Scenario, seed: u64) -> Result<Vec<RunResult>, PipelineError> {
    let analytic = run_analytic(scenario)?;
    let ga = run_ga_arm(scenario, seed)?;
    let gps = refine_with_ps(scenario, &ga)?;
    Ok(vec![analytic, ga, gps])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::bundled;

    #[test]
    fn analytic_arm_tracks_line_exactly() {
        let scenario = bundled::line().build().unwrap();
        let result = run_analytic(&scenario).unwrap();
        assert_eq!(result.path.len(), 20);
        assert!(
            result.breakdown.f_eval <= 1e-12,
            "baseline should track exactly, got {}",
            result.breakdown.f_eval
        );
        for &e in &result.point_errors {
            assert!(e <= 1e-12);
        }
    }

    #[test]
    fn analytic_arm_tracks_circle_exactly() {
        let scenario = bundled::circle().build().unwrap();
        let result = run_analytic(&scenario).unwrap();
        assert!(result.breakdown.f_eval <= 1e-12);
    }

    #[test]
    fn analytic_arm_reports_unreachable_index() {
        let mut config = bundled::circle();
        config.trajectory.circle.as_mut().unwrap().radius = 0.5;
        let scenario = config.build().unwrap();
        match run_analytic(&scenario) {
            Err(PipelineError::Unreachable { index, .. }) => {
                assert!(index < 20, "offending index should be reported");
            }
            other => panic!("expected an unreachable error, got {other:?}"),
        }
    }

    #[test]
    fn point_errors_sum_to_tracking_total() {
        let mut config = bundled::line();
        config.ga.generations = 5;
        config.ga.population_size = 12;
        let scenario = config.build().unwrap();
        let result = run_ga_arm(&scenario, 3).unwrap();
        let free_sum: f64 = result.point_errors[1..].iter().sum();
        assert!((free_sum - result.breakdown.f_eval).abs() <= 1e-12);
        assert!(result.point_errors.iter().all(|&e| e >= 0.0));
    }

    #[test]
    fn gps_never_tracks_worse_than_ga() {
        let mut config = bundled::line();
        config.ga.generations = 10;
        config.ga.population_size = 16;
        config.ps.max_iterations = 200;
        let scenario = config.build().unwrap();
        for seed in [0, 1, 2] {
            let ga = run_ga_arm(&scenario, seed).unwrap();
            let gps = refine_with_ps(&scenario, &ga).unwrap();
            assert!(gps.breakdown.f_eval <= ga.breakdown.f_eval);
        }
    }

    #[test]
    fn analytic_arm_dominates_optimizer_arms() {
        let mut config = bundled::line();
        config.ga.generations = 8;
        config.ga.population_size = 14;
        config.ps.max_iterations = 100;
        let scenario = config.build().unwrap();
        let results = run_all(&scenario, 6).unwrap();
        let analytic = results[0].breakdown.f_eval;
        for r in &results[1..] {
            assert!(
                analytic <= r.breakdown.f_eval,
                "baseline should beat the {} arm",
                r.arm.label()
            );
        }
    }

    #[test]
    fn ga_trace_length_equals_generations() {
        let mut config = bundled::line();
        config.ga.generations = 7;
        config.ga.population_size = 10;
        let scenario = config.build().unwrap();
        let result = run_ga_arm(&scenario, 11).unwrap();
        assert_eq!(result.ga_trace.unwrap().generations.len(), 7);
    }

    #[test]
    fn seeded_leader_makes_ga_start_from_oracle() {
        let mut config = bundled::line();
        config.ga.generations = 1;
        config.ga.population_size = 10;
        config.ga.seed_analytic = true;
        let scenario = config.build().unwrap();
        let result = run_ga_arm(&scenario, 4).unwrap();
        // The planted oracle path tracks exactly, and elitism keeps it.
        assert!(result.breakdown.f_eval <= 1e-9);
    }
}
