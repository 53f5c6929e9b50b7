//! Pattern search over the 2N coordinate directions with mesh expansion
//! and contraction.
//!
//! Each iteration polls the points `incumbent ± mesh·e_k` in consecutive
//! coordinate order, clamped to the bounds. A strict improvement moves the
//! incumbent and multiplies the mesh by `expansion`; otherwise the mesh is
//! multiplied by `contraction`. The loop stops once the mesh drops below
//! `mesh_tolerance` or a budget runs out. There is no search phase before
//! the poll; the trace records enough to add one later.

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PsError {
    #[error("gene {0} has an empty or inverted bound interval")]
    BadBounds(usize),
    #[error("start vector has {got} entries, bounds describe {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("objective returned a non-finite value {0}")]
    NonFiniteObjective(f64),
}

/// Optimizer settings. `bounds` fixes the dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PsParams {
    pub initial_mesh: f64,
    /// Mesh multiplier after a successful poll (> 1).
    pub expansion: f64,
    /// Mesh multiplier after a failed poll (in (0, 1)).
    pub contraction: f64,
    /// Stop once the mesh is below this.
    pub mesh_tolerance: f64,
    pub max_iterations: usize,
    pub max_evaluations: usize,
    /// Evaluate every direction before moving; `false` accepts the first
    /// improvement in polling order.
    pub complete_poll: bool,
    /// Per-gene `[lo, hi]` box; polled points are clamped into it.
    pub bounds: Vec<(f64, f64)>,
    /// Fan poll evaluations out over a thread pool (complete poll only).
    /// Results do not depend on this flag.
    pub parallel: bool,
}

impl PsParams {
    pub fn new(bounds: Vec<(f64, f64)>) -> Self {
        Self {
            initial_mesh: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            mesh_tolerance: 1e-6,
            max_iterations: 10_000,
            max_evaluations: 1_000_000,
            complete_poll: true,
            bounds,
            parallel: true,
        }
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }
}

/// One signed coordinate direction of the poll pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PollDirection {
    pub axis: usize,
    pub sign: f64,
}

/// The 2N positive basis in consecutive order: +e1, −e1, +e2, −e2, …
pub fn poll_directions(dim: usize) -> Vec<PollDirection> {
    (0..dim)
        .flat_map(|axis| {
            [
                PollDirection { axis, sign: 1.0 },
                PollDirection { axis, sign: -1.0 },
            ]
        })
        .collect()
}

/// Result of polling the mesh around one incumbent.
#[derive(Debug, Clone, PartialEq)]
pub struct PollOutcome {
    /// Replacement incumbent and value, when some direction improved
    /// strictly. Ties among equally good candidates go to the first
    /// direction in polling order.
    pub improved: Option<(Vec<f64>, f64)>,
    pub evaluations: usize,
}

/// Polls `incumbent ± mesh·e_k` for every direction, clamping to the
/// bounds. Directions whose clamped point lands back on the incumbent are
/// skipped without evaluation.
pub fn poll_step<F>(
    objective: &F,
    incumbent: &[f64],
    incumbent_value: f64,
    mesh: f64,
    params: &PsParams,
) -> Result<PollOutcome, PsError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut candidates: Vec<Vec<f64>> = Vec::with_capacity(2 * incumbent.len());
    for direction in poll_directions(incumbent.len()) {
        let (lo, hi) = params.bounds[direction.axis];
        let moved = (incumbent[direction.axis] + direction.sign * mesh).clamp(lo, hi);
        if moved == incumbent[direction.axis] {
            continue;
        }
        let mut point = incumbent.to_vec();
        point[direction.axis] = moved;
        candidates.push(point);
    }

    if params.complete_poll {
        let values: Vec<f64> = if params.parallel {
            candidates.par_iter().map(|x| objective(x)).collect()
        } else {
            candidates.iter().map(|x| objective(x)).collect()
        };
        let evaluations = values.len();
        let mut winner: Option<(usize, f64)> = None;
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(PsError::NonFiniteObjective(v));
            }
            if winner.is_none_or(|(_, best)| v < best) {
                winner = Some((i, v));
            }
        }
        let improved = winner
            .filter(|&(_, v)| v < incumbent_value)
            .map(|(i, v)| (candidates[i].clone(), v));
        Ok(PollOutcome {
            improved,
            evaluations,
        })
    } else {
        let mut evaluations = 0;
        for candidate in candidates {
            let v = objective(&candidate);
            evaluations += 1;
            if !v.is_finite() {
                return Err(PsError::NonFiniteObjective(v));
            }
            if v < incumbent_value {
                return Ok(PollOutcome {
                    improved: Some((candidate, v)),
                    evaluations,
                });
            }
        }
        Ok(PollOutcome {
            improved: None,
            evaluations,
        })
    }
}

/// One row of the trace; `mesh` is the size used by that poll.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub value: f64,
    pub mesh: f64,
    pub success: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsTermination {
    MeshTolerance,
    MaxIterations,
    MaxEvaluations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsTrace {
    pub iterations: Vec<IterationRecord>,
    pub best_vector: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub termination: PsTermination,
}

/// Refines `start` until the mesh drops below tolerance or a budget runs
/// out. Budget exhaustion is a normal termination recorded in the trace.
pub fn run_ps<F>(objective: F, start: &[f64], params: &PsParams) -> Result<PsTrace, PsError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let dim = params.dimension();
    for (gene, &(lo, hi)) in params.bounds.iter().enumerate() {
        if !(lo < hi) {
            return Err(PsError::BadBounds(gene));
        }
    }
    if start.len() != dim {
        return Err(PsError::DimensionMismatch {
            expected: dim,
            got: start.len(),
        });
    }

    let mut incumbent: Vec<f64> = start
        .iter()
        .zip(&params.bounds)
        .map(|(&x, &(lo, hi))| x.clamp(lo, hi))
        .collect();
    let mut value = objective(&incumbent);
    if !value.is_finite() {
        return Err(PsError::NonFiniteObjective(value));
    }
    let mut evaluations = 1usize;
    let mut mesh = params.initial_mesh;
    let mut iterations = Vec::new();
    let termination;

    loop {
        if mesh < params.mesh_tolerance {
            termination = PsTermination::MeshTolerance;
            break;
        }
        if iterations.len() >= params.max_iterations {
            termination = PsTermination::MaxIterations;
            break;
        }
        // A poll never starts unless the full sweep fits in the budget.
        if evaluations + 2 * dim > params.max_evaluations {
            termination = PsTermination::MaxEvaluations;
            break;
        }

        let outcome = poll_step(&objective, &incumbent, value, mesh, params)?;
        evaluations += outcome.evaluations;
        let success = outcome.improved.is_some();
        if let Some((point, v)) = outcome.improved {
            incumbent = point;
            value = v;
        }
        iterations.push(IterationRecord {
            value,
            mesh,
            success,
        });
        mesh *= if success {
            params.expansion
        } else {
            params.contraction
        };
    }

    Ok(PsTrace {
        iterations,
        best_vector: incumbent,
        best_value: value,
        evaluations,
        termination,
    })
}
