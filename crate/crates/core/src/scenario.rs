//! Benchmark task construction and scenario configuration files.
//!
//! A scenario file is a TOML document holding the robot geometry, the
//! desired end-effector trajectory (line or circle), the orientation
//! profile, the optimizer settings and the RNG seed. Angles in files are
//! degrees; everything is converted to radians when the scenario is built.
//! Two bundled files, [`bundled::line`] and [`bundled::circle`], carry the
//! benchmark tasks.

use crate::ga::{GaParams, InitStyle, PopulationInit};
use crate::kinematics::{CubicProfile, JointConfig, JointLimits, Pose, ProfileError, RobotModel};
use crate::objective::FitnessWeights;
use crate::pattern_search::PsParams;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("a trajectory needs at least 2 via points, got {0}")]
    BadCount(usize),
    #[error("circle radius must be positive, got {0}")]
    BadRadius(f64),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("cannot serialize scenario: {0}")]
    Serialize(String),
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// How a trajectory was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectorySource {
    Line,
    Circle,
    Custom,
}

/// Ordered desired via points with the orientation profile applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<Pose>,
    pub source: TrajectorySource,
}

impl Trajectory {
    pub fn custom(points: Vec<Pose>) -> Result<Self, ScenarioError> {
        if points.len() < 2 {
            return Err(ScenarioError::BadCount(points.len()));
        }
        Ok(Self {
            points,
            source: TrajectorySource::Custom,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Straight line from `start` to `end`, `n` equally spaced via points
/// including both endpoints; φ of point i is the profile at t = T·i/(n−1).
pub fn make_line(
    start: (f64, f64),
    end: (f64, f64),
    n: usize,
    profile: &CubicProfile,
) -> Result<Trajectory, ScenarioError> {
    if n < 2 {
        return Err(ScenarioError::BadCount(n));
    }
    let last = (n - 1) as f64;
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let f = i as f64 / last;
        let phi = profile.value(profile.duration * f)?;
        points.push(Pose {
            x: start.0 * (1.0 - f) + end.0 * f,
            y: start.1 * (1.0 - f) + end.1 * f,
            phi,
        });
    }
    Ok(Trajectory {
        points,
        source: TrajectorySource::Line,
    })
}

/// Arc of a circle, `n` via points at equally spaced angles over
/// `arc = (start, end)` in radians.
///
/// A full revolution is sampled open: n distinct points, the last one
/// step before closure. Any other arc includes both end angles. φ follows
/// the profile exactly as in [`make_line`].
pub fn make_circle(
    center: (f64, f64),
    radius: f64,
    n: usize,
    arc: (f64, f64),
    profile: &CubicProfile,
) -> Result<Trajectory, ScenarioError> {
    if n < 2 {
        return Err(ScenarioError::BadCount(n));
    }
    if !(radius > 0.0) {
        return Err(ScenarioError::BadRadius(radius));
    }
    let span = arc.1 - arc.0;
    let rem = span.abs() % TAU;
    let full_turns = span != 0.0 && (rem <= 1e-9 || TAU - rem <= 1e-9);
    let last = (n - 1) as f64;
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let alpha = if full_turns {
            arc.0 + span * (i as f64 / n as f64)
        } else {
            let f = i as f64 / last;
            arc.0 * (1.0 - f) + arc.1 * f
        };
        let phi = profile.value(profile.duration * (i as f64 / last))?;
        points.push(Pose {
            x: center.0 + radius * alpha.cos(),
            y: center.1 + radius * alpha.sin(),
            phi,
        });
    }
    Ok(Trajectory {
        points,
        source: TrajectorySource::Circle,
    })
}

fn default_limits() -> [[f64; 2]; 3] {
    [[-180.0, 180.0]; 3]
}

fn default_arc() -> [f64; 2] {
    [0.0, 360.0]
}

/// `[robot]` section: link lengths in meters, per-joint limits in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotSection {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    #[serde(default = "default_limits")]
    pub limits: [[f64; 2]; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrajectoryKind {
    Line,
    Circle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSection {
    pub start: [f64; 2],
    pub end: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSection {
    pub center: [f64; 2],
    pub radius: f64,
    /// Swept angle range in degrees; a 360° span is sampled open.
    #[serde(default = "default_arc")]
    pub arc: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectorySection {
    pub kind: TrajectoryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<LineSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle: Option<CircleSection>,
}

/// `[phi]` section: rest-to-rest orientation profile, degrees and seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiSection {
    pub start_deg: f64,
    pub end_deg: f64,
    pub duration_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSection {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// `[ga]` section. Defaults match the benchmark configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaSection {
    pub population_size: usize,
    pub generations: usize,
    pub elite_count: usize,
    pub crossover_fraction: f64,
    pub mutation_scale: f64,
    pub mutation_shrink: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stall_generations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stall_tolerance: Option<f64>,
    /// Forward-migration settings; inert with a single population.
    pub migration_fraction: f64,
    pub migration_interval: usize,
    /// Half-width of the uniform jitter around the start configuration
    /// used for the initial population, degrees.
    pub init_spread_deg: f64,
    /// Plant the analytical solution as individual 0 when reachable.
    pub seed_analytic: bool,
}

impl Default for GaSection {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 200,
            elite_count: 2,
            crossover_fraction: 0.8,
            mutation_scale: 1.0,
            mutation_shrink: 1.0,
            stall_generations: None,
            stall_tolerance: None,
            migration_fraction: 0.2,
            migration_interval: 20,
            init_spread_deg: 10.0,
            seed_analytic: false,
        }
    }
}

/// `[ps]` section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsSection {
    pub initial_mesh: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub mesh_tolerance: f64,
    pub max_iterations: usize,
    pub max_evaluations: usize,
    pub complete_poll: bool,
}

impl Default for PsSection {
    fn default() -> Self {
        Self {
            initial_mesh: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            mesh_tolerance: 1e-6,
            max_iterations: 10_000,
            max_evaluations: 1_000_000,
            complete_poll: true,
        }
    }
}

/// A scenario file, field for field. Angles stay in file units (degrees)
/// so that save/load round-trips bit-exactly; [`ScenarioConfig::build`]
/// converts to radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    /// Number of via points, endpoints included.
    pub n: usize,
    /// Start configuration (θ1, θ2, θ3) in degrees; via point 0 is pinned
    /// to it during optimization.
    pub initial_config_deg: [f64; 3],
    pub robot: RobotSection,
    pub trajectory: TrajectorySection,
    pub phi: PhiSection,
    pub weights: WeightsSection,
    #[serde(default)]
    pub ga: GaSection,
    #[serde(default)]
    pub ps: PsSection,
}

/// A fully built task: radians everywhere, trajectory materialized.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub robot: RobotModel,
    pub trajectory: Trajectory,
    pub profile: CubicProfile,
    pub initial_config: JointConfig,
    pub weights: FitnessWeights,
    pub ga: GaParams,
    pub ps: PsParams,
    pub init: PopulationInit,
    pub seed: u64,
    pub seed_analytic: bool,
}

impl ScenarioConfig {
    /// Checks every invariant without building the trajectory twice.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.build().map(|_| ())
    }

    pub fn build(&self) -> Result<Scenario, ScenarioError> {
        let invalid = |msg: String| ScenarioError::Validation(msg);

        if self.n < 2 {
            return Err(invalid(format!("n must be at least 2, got {}", self.n)));
        }

        let mut limits = [JointLimits::new(0.0, 0.0); 3];
        for (k, pair) in self.robot.limits.iter().enumerate() {
            if !(pair[0] < pair[1]) {
                return Err(invalid(format!(
                    "robot.limits[{k}] must satisfy min < max, got [{}, {}]",
                    pair[0], pair[1]
                )));
            }
            limits[k] = JointLimits::new(pair[0].to_radians(), pair[1].to_radians());
        }
        let robot = RobotModel::new(self.robot.l1, self.robot.l2, self.robot.l3, limits)
            .map_err(|e| invalid(e.to_string()))?;

        if !(self.phi.duration_s > 0.0) {
            return Err(invalid(format!(
                "phi.duration_s must be positive, got {}",
                self.phi.duration_s
            )));
        }
        let profile = CubicProfile::fit_rest_to_rest(
            self.phi.start_deg.to_radians(),
            self.phi.end_deg.to_radians(),
            self.phi.duration_s,
        )?;

        let trajectory = match self.trajectory.kind {
            TrajectoryKind::Line => {
                let line = self.trajectory.line.as_ref().ok_or_else(|| {
                    invalid("trajectory.kind is \"line\" but [trajectory.line] is missing".into())
                })?;
                make_line(
                    (line.start[0], line.start[1]),
                    (line.end[0], line.end[1]),
                    self.n,
                    &profile,
                )?
            }
            TrajectoryKind::Circle => {
                let circle = self.trajectory.circle.as_ref().ok_or_else(|| {
                    invalid(
                        "trajectory.kind is \"circle\" but [trajectory.circle] is missing".into(),
                    )
                })?;
                make_circle(
                    (circle.center[0], circle.center[1]),
                    circle.radius,
                    self.n,
                    (circle.arc[0].to_radians(), circle.arc[1].to_radians()),
                    &profile,
                )?
            }
        };

        let initial_config = JointConfig::from_degrees(
            self.initial_config_deg[0],
            self.initial_config_deg[1],
            self.initial_config_deg[2],
        );
        for (k, angle) in initial_config.as_array().iter().enumerate() {
            if !limits[k].contains(*angle) {
                return Err(invalid(format!(
                    "initial_config_deg[{k}] = {} lies outside robot.limits[{k}]",
                    self.initial_config_deg[k]
                )));
            }
        }

        let weights = FitnessWeights::new(
            self.weights.c1,
            self.weights.c2,
            self.weights.c3,
            self.weights.c4,
        )
        .map_err(|e| invalid(e.to_string()))?;

        if self.ga.generations < 1 {
            return Err(invalid("ga.generations must be at least 1".into()));
        }
        if self.ga.population_size < self.ga.elite_count + 2 {
            return Err(invalid(format!(
                "ga.population_size must be at least elite_count + 2, got {} with elite_count {}",
                self.ga.population_size, self.ga.elite_count
            )));
        }
        if !(0.0..=1.0).contains(&self.ga.crossover_fraction) {
            return Err(invalid(format!(
                "ga.crossover_fraction must lie in [0, 1], got {}",
                self.ga.crossover_fraction
            )));
        }
        if !(self.ga.init_spread_deg >= 0.0) {
            return Err(invalid("ga.init_spread_deg must be non-negative".into()));
        }
        if !(0.0..=1.0).contains(&self.ga.migration_fraction) {
            return Err(invalid(format!(
                "ga.migration_fraction must lie in [0, 1], got {}",
                self.ga.migration_fraction
            )));
        }
        if self.ga.migration_interval < 1 {
            return Err(invalid("ga.migration_interval must be at least 1".into()));
        }

        if !(self.ps.contraction > 0.0 && self.ps.contraction < 1.0) {
            return Err(invalid(format!(
                "ps.contraction must lie in (0, 1), got {}",
                self.ps.contraction
            )));
        }
        if !(self.ps.expansion > 1.0) {
            return Err(invalid(format!(
                "ps.expansion must exceed 1, got {}",
                self.ps.expansion
            )));
        }
        if !(self.ps.mesh_tolerance > 0.0) {
            return Err(invalid("ps.mesh_tolerance must be positive".into()));
        }
        if !(self.ps.initial_mesh > 0.0) {
            return Err(invalid("ps.initial_mesh must be positive".into()));
        }

        // One gene triple per free via point (point 0 is pinned).
        let mut bounds = Vec::with_capacity(3 * (self.n - 1));
        for _ in 1..self.n {
            for lim in &limits {
                bounds.push((lim.min, lim.max));
            }
        }

        let ga = GaParams {
            population_size: self.ga.population_size,
            generations: self.ga.generations,
            elite_count: self.ga.elite_count,
            crossover_fraction: self.ga.crossover_fraction,
            mutation_scale: self.ga.mutation_scale,
            mutation_shrink: self.ga.mutation_shrink,
            stall_generations: self.ga.stall_generations,
            stall_tolerance: self.ga.stall_tolerance.unwrap_or(1e-6),
            migration_fraction: self.ga.migration_fraction,
            migration_interval: self.ga.migration_interval,
            bounds: bounds.clone(),
            parallel: true,
        };

        let ps = PsParams {
            initial_mesh: self.ps.initial_mesh,
            expansion: self.ps.expansion,
            contraction: self.ps.contraction,
            mesh_tolerance: self.ps.mesh_tolerance,
            max_iterations: self.ps.max_iterations,
            max_evaluations: self.ps.max_evaluations,
            complete_poll: self.ps.complete_poll,
            bounds,
            parallel: true,
        };

        let center: Vec<f64> = (1..self.n)
            .flat_map(|_| initial_config.as_array())
            .collect();
        let init = PopulationInit {
            style: InitStyle::Jitter {
                center,
                spread: self.ga.init_spread_deg.to_radians(),
            },
            leader: None,
        };

        Ok(Scenario {
            robot,
            trajectory,
            profile,
            initial_config,
            weights,
            ga,
            ps,
            init,
            seed: self.seed,
            seed_analytic: self.ga.seed_analytic,
        })
    }

    pub fn to_toml_string(&self) -> Result<String, ScenarioError> {
        toml::to_string_pretty(self).map_err(|e| ScenarioError::Serialize(e.to_string()))
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, ScenarioError> {
    let config: ScenarioConfig = toml::from_str(text).map_err(|e| ScenarioError::Parse {
        path: "<string>".into(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig, ScenarioError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    match parse_scenario(&text) {
        Err(ScenarioError::Parse { message, .. }) => Err(ScenarioError::Parse {
            path: path.display().to_string(),
            message,
        }),
        other => other,
    }
}

pub fn save_scenario(config: &ScenarioConfig, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let path = path.as_ref();
    let text = config.to_toml_string()?;
    fs::write(path, text).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// The two benchmark tasks shipped with the crate.
pub mod bundled {
    use super::ScenarioConfig;

    pub const LINE: &str = include_str!("../scenarios/line.scenario");
    pub const CIRCLE: &str = include_str!("../scenarios/circle.scenario");

    pub fn line() -> ScenarioConfig {
        super::parse_scenario(LINE).expect("bundled line scenario is valid")
    }

    pub fn circle() -> ScenarioConfig {
        super::parse_scenario(CIRCLE).expect("bundled circle scenario is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn profile() -> CubicProfile {
        CubicProfile::fit_rest_to_rest(30f64.to_radians(), 70f64.to_radians(), 5.0).unwrap()
    }

    #[test]
    fn line_contains_both_endpoints_exactly() {
        let traj = make_line((0.8, 0.4), (0.1, 0.9), 20, &profile()).unwrap();
        assert_eq!(traj.len(), 20);
        assert_eq!((traj.points[0].x, traj.points[0].y), (0.8, 0.4));
        assert_eq!((traj.points[19].x, traj.points[19].y), (0.1, 0.9));
        assert_relative_eq!(traj.points[0].phi.to_degrees(), 30.0, epsilon = 1e-12);
        assert_relative_eq!(traj.points[19].phi.to_degrees(), 70.0, epsilon = 1e-12);
    }

    #[test]
    fn line_midpoint() {
        let traj = make_line((0.0, 0.0), (1.0, 0.0), 3, &profile()).unwrap();
        let xs: Vec<f64> = traj.points.iter().map(|p| p.x).collect();
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn line_points_are_collinear() {
        let traj = make_line((0.8, 0.4), (0.1, 0.9), 20, &profile()).unwrap();
        let (x0, y0) = (traj.points[0].x, traj.points[0].y);
        let (dx, dy) = (traj.points[19].x - x0, traj.points[19].y - y0);
        for p in &traj.points {
            let cross = (p.x - x0) * dy - (p.y - y0) * dx;
            assert!(cross.abs() <= 1e-12, "off-line point: cross = {cross}");
        }
    }

    #[test]
    fn line_gaps_are_equal() {
        let traj = make_line((0.8, 0.4), (0.1, 0.9), 20, &profile()).unwrap();
        let gaps: Vec<f64> = traj
            .points
            .windows(2)
            .map(|w| w[0].distance(&w[1]))
            .collect();
        let first = gaps[0];
        for gap in gaps {
            assert!((gap - first).abs() <= 1e-12);
        }
    }

    #[test]
    fn line_rejects_single_point() {
        assert!(matches!(
            make_line((0.0, 0.0), (1.0, 0.0), 1, &profile()),
            Err(ScenarioError::BadCount(1))
        ));
    }

    #[test]
    fn circle_cardinal_points() {
        let traj = make_circle((-0.05, 0.76), 0.15, 5, (0.0, TAU / 4.0), &profile()).unwrap();
        assert_relative_eq!(traj.points[0].x, 0.10, epsilon = 1e-15);
        assert_relative_eq!(traj.points[0].y, 0.76, epsilon = 1e-15);
        assert_relative_eq!(traj.points[4].x, -0.05, epsilon = 1e-15);
        assert_relative_eq!(traj.points[4].y, 0.91, epsilon = 1e-15);
    }

    #[test]
    fn circle_radius_invariant() {
        let traj = make_circle((-0.05, 0.76), 0.15, 20, (0.0, TAU), &profile()).unwrap();
        for p in &traj.points {
            let r = (p.x + 0.05).hypot(p.y - 0.76);
            assert!((r - 0.15).abs() <= 1e-12);
        }
    }

    #[test]
    fn full_circle_is_sampled_open() {
        let traj = make_circle((0.0, 0.0), 1.0, 20, (0.0, TAU), &profile()).unwrap();
        assert_eq!(traj.len(), 20);
        // Last point sits one step before closure, not on top of the first.
        let d = traj.points[0].distance(&traj.points[19]);
        assert!(d > 1e-3, "expected open sampling, got overlap {d}");
    }

    #[test]
    fn circle_rejects_bad_inputs() {
        assert!(matches!(
            make_circle((0.0, 0.0), 0.0, 20, (0.0, TAU), &profile()),
            Err(ScenarioError::BadRadius(_))
        ));
        assert!(matches!(
            make_circle((0.0, 0.0), 1.0, 0, (0.0, TAU), &profile()),
            Err(ScenarioError::BadCount(0))
        ));
    }

    #[test]
    fn bundled_line_matches_benchmark_settings() {
        let config = bundled::line();
        assert_eq!(
            (
                config.weights.c1,
                config.weights.c2,
                config.weights.c3,
                config.weights.c4
            ),
            (0.4, 0.1, 0.3, 0.2)
        );
        assert_eq!(config.n, 20);
        assert_eq!(config.initial_config_deg, [60.0, -30.0, -30.0]);
        let scenario = config.build().unwrap();
        assert_eq!(scenario.trajectory.source, TrajectorySource::Line);
        assert_eq!(scenario.ga.population_size, 100);
        assert_eq!(scenario.ga.generations, 200);
        assert_eq!(scenario.ga.elite_count, 2);
    }

    #[test]
    fn bundled_circle_matches_benchmark_settings() {
        let config = bundled::circle();
        assert_eq!(
            (
                config.weights.c1,
                config.weights.c2,
                config.weights.c3,
                config.weights.c4
            ),
            (0.7, 0.1, 0.1, 0.1)
        );
        let scenario = config.build().unwrap();
        assert_eq!(scenario.trajectory.source, TrajectorySource::Circle);
        assert_eq!(scenario.trajectory.len(), 20);
    }

    #[test]
    fn save_load_roundtrip_is_identity() {
        let config = bundled::line();
        let text = config.to_toml_string().unwrap();
        let reparsed = parse_scenario(&text).unwrap();
        assert_eq!(config, reparsed);

        let config = bundled::circle();
        let text = config.to_toml_string().unwrap();
        assert_eq!(config, parse_scenario(&text).unwrap());
    }

    #[test]
    fn parse_error_reports_location() {
        let err = parse_scenario("seed = \"not a number\"").unwrap_err();
        let message = err.to_string();
        assert!(
            message.contains("line 1"),
            "unhelpful diagnostics: {message}"
        );
    }

    #[test]
    fn validation_error_names_invariant() {
        let mut config = bundled::line();
        config.weights.c1 = 0.9;
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("weights"), "got: {err}");

        let mut config = bundled::line();
        config.n = 1;
        assert!(config
            .validate()
            .unwrap_err()
            .to_string()
            .contains("n must be"));

        let mut config = bundled::line();
        config.trajectory.line = None;
        assert!(config
            .validate()
            .unwrap_err()
            .to_string()
            .contains("trajectory.line"));
    }

    #[test]
    fn file_roundtrip() {
        let dir = std::env::temp_dir().join("armtraj-scenario-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.scenario");
        let config = bundled::circle();
        save_scenario(&config, &path).unwrap();
        let loaded = load_scenario(&path).unwrap();
        assert_eq!(config, loaded);
    }
}
