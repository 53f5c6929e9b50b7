//! Closed-form kinematics of a three-link planar arm.
//!
//! The arm has joints θ1, θ2, θ3 and link lengths l1, l2, l3. The
//! end-effector pose is (x, y, φ) with φ = θ1 + θ2 + θ3. Because the task
//! is planar position plus orientation, fixing φ reduces the inverse
//! problem to the two-link case: subtract link 3 along φ to obtain the
//! wrist center, solve θ2 from the law of cosines (two elbow branches),
//! then θ1 from a two-argument arctangent and θ3 = φ − θ1 − θ2.
//!
//! Everything here is a pure function of its inputs; the inverse branch is
//! exact and is used elsewhere as the reference the optimizers are
//! measured against.

use std::f64::consts::{PI, TAU};
use thiserror::Error;

/// Difference `a − b` wrapped to (−π, π].
pub fn angle_difference(a: f64, b: f64) -> f64 {
    let d = (a - b) % TAU;
    if d > PI {
        d - TAU
    } else if d <= -PI {
        d + TAU
    } else {
        d
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("link length l{index} must be positive, got {value}")]
    NonpositiveLink { index: usize, value: f64 },
    #[error("joint {index} limits are inverted: min {min} is not below max {max}")]
    InvertedLimits { index: usize, min: f64, max: f64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum IkError {
    /// Wrist center outside the two-link annulus `[|l1 − l2|, l1 + l2]`.
    #[error("pose unreachable: wrist center at distance {distance} lies outside [{min}, {max}]")]
    Unreachable { distance: f64, min: f64, max: f64 },
    /// Wrist center at the base with l1 = l2: θ1 is undefined.
    #[error("degenerate pose: wrist center coincides with the base and l1 = l2")]
    Degenerate,
}

#[derive(Debug, Error, PartialEq)]
pub enum ProfileError {
    #[error("profile duration must be positive, got {0}")]
    NonpositiveDuration(f64),
    #[error("t = {t} outside the profile interval [0, {duration}]")]
    OutOfRange { t: f64, duration: f64 },
}

/// Allowed angle interval for one joint, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointLimits {
    pub min: f64,
    pub max: f64,
}

impl JointLimits {
    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn clamp(&self, angle: f64) -> f64 {
        angle.clamp(self.min, self.max)
    }

    pub fn contains(&self, angle: f64) -> bool {
        (self.min..=self.max).contains(&angle)
    }
}

/// One joint-space configuration (θ1, θ2, θ3), radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointConfig {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

impl JointConfig {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Self {
        Self {
            theta1,
            theta2,
            theta3,
        }
    }

    pub fn from_degrees(d1: f64, d2: f64, d3: f64) -> Self {
        Self::new(d1.to_radians(), d2.to_radians(), d3.to_radians())
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.theta1, self.theta2, self.theta3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

/// End-effector position and orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, phi: f64) -> Self {
        Self { x, y, phi }
    }

    /// Planar distance to another pose; φ is ignored.
    pub fn distance(&self, other: &Pose) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Position of the last joint, obtained by stripping link 3 off the pose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WristCenter {
    pub xn: f64,
    pub yn: f64,
}

impl WristCenter {
    pub fn distance_from_base(&self) -> f64 {
        self.xn.hypot(self.yn)
    }
}

/// Sign choice for sin θ2 in the two-link subproblem.
///
/// A reachable wrist center admits two mirrored solutions; `Up` takes
/// sin θ2 ≤ 0 (elbow above the base-to-wrist chord), `Down` takes
/// sin θ2 ≥ 0. `Up` matches start configurations with θ2 < 0 and is the
/// default used by the analytical baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ElbowBranch {
    #[default]
    Up,
    Down,
}

impl ElbowBranch {
    /// Sign applied to the square root in sin θ2.
    pub fn sign(self) -> f64 {
        match self {
            ElbowBranch::Up => -1.0,
            ElbowBranch::Down => 1.0,
        }
    }

    /// Branch that reproduces the θ2 sign of an existing configuration.
    pub fn of(q: &JointConfig) -> Self {
        if q.theta2.sin() >= 0.0 {
            ElbowBranch::Down
        } else {
            ElbowBranch::Up
        }
    }

    pub fn other(self) -> Self {
        match self {
            ElbowBranch::Up => ElbowBranch::Down,
            ElbowBranch::Down => ElbowBranch::Up,
        }
    }
}

/// A slightly negative radicand in the sin θ2 square root is treated as an
/// exact workspace-boundary hit; anything below this is unreachable.
const RADICAND_TOLERANCE: f64 = 1e-12;

/// Link lengths and joint limits of the planar 3-R arm.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotModel {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub joint_limits: [JointLimits; 3],
}

impl Default for RobotModel {
    /// The benchmark arm: links 0.4 m, 0.3 m, 0.3 m with ±180° joints.
    fn default() -> Self {
        Self {
            l1: 0.4,
            l2: 0.3,
            l3: 0.3,
            joint_limits: [JointLimits::new(-PI, PI); 3],
        }
    }
}

impl RobotModel {
    pub fn new(
        l1: f64,
        l2: f64,
        l3: f64,
        joint_limits: [JointLimits; 3],
    ) -> Result<Self, ModelError> {
        for (index, &value) in [l1, l2, l3].iter().enumerate() {
            if !(value > 0.0) {
                return Err(ModelError::NonpositiveLink {
                    index: index + 1,
                    value,
                });
            }
        }
        for (index, lim) in joint_limits.iter().enumerate() {
            if !(lim.min < lim.max) {
                return Err(ModelError::InvertedLimits {
                    index: index + 1,
                    min: lim.min,
                    max: lim.max,
                });
            }
        }
        Ok(Self {
            l1,
            l2,
            l3,
            joint_limits,
        })
    }

    /// Maximum distance the end-effector can reach from the base.
    pub fn reach(&self) -> f64 {
        self.l1 + self.l2 + self.l3
    }

    pub fn contains(&self, q: &JointConfig) -> bool {
        self.joint_limits[0].contains(q.theta1)
            && self.joint_limits[1].contains(q.theta2)
            && self.joint_limits[2].contains(q.theta3)
    }

    /// End-effector pose of a joint configuration.
    ///
    /// φ is returned as the raw sum θ1 + θ2 + θ3, without wrapping.
    pub fn forward_kinematics(&self, q: &JointConfig) -> Pose {
        let a1 = q.theta1;
        let a12 = q.theta1 + q.theta2;
        let a123 = q.theta1 + q.theta2 + q.theta3;
        Pose {
            x: self.l1 * a1.cos() + self.l2 * a12.cos() + self.l3 * a123.cos(),
            y: self.l1 * a1.sin() + self.l2 * a12.sin() + self.l3 * a123.sin(),
            phi: a123,
        }
    }

    /// Last-joint position for a pose: subtract link 3 along φ.
    pub fn wrist_center(&self, pose: &Pose) -> WristCenter {
        WristCenter {
            xn: pose.x - self.l3 * pose.phi.cos(),
            yn: pose.y - self.l3 * pose.phi.sin(),
        }
    }

    /// Closed-form inverse kinematics for the requested elbow branch.
    ///
    /// The returned configuration reproduces `pose` under
    /// [`forward_kinematics`](Self::forward_kinematics) to machine
    /// precision whenever the wrist center is reachable.
    pub fn inverse_kinematics(
        &self,
        pose: &Pose,
        branch: ElbowBranch,
    ) -> Result<JointConfig, IkError> {
        let wrist = self.wrist_center(pose);
        let (xn, yn) = (wrist.xn, wrist.yn);
        if xn == 0.0 && yn == 0.0 && self.l1 == self.l2 {
            return Err(IkError::Degenerate);
        }
        let d_sq = xn * xn + yn * yn;
        let cos_t2 = (d_sq - self.l1 * self.l1 - self.l2 * self.l2) / (2.0 * self.l1 * self.l2);
        let radicand = 1.0 - cos_t2 * cos_t2;
        if radicand < -RADICAND_TOLERANCE {
            return Err(IkError::Unreachable {
                distance: d_sq.sqrt(),
                min: (self.l1 - self.l2).abs(),
                max: self.l1 + self.l2,
            });
        }
        let sin_t2 = branch.sign() * radicand.max(0.0).sqrt();
        let theta2 = sin_t2.atan2(cos_t2);
        let k1 = self.l1 + self.l2 * cos_t2;
        let k2 = self.l2 * sin_t2;
        let theta1 = (yn * k1 - xn * k2).atan2(xn * k1 + yn * k2);
        let theta3 = pose.phi - (theta1 + theta2);
        Ok(JointConfig::new(theta1, theta2, theta3))
    }
}

/// Cubic orientation profile φ(t) = c0 + c1·t + c2·t² + c3·t³ on [0, T].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicProfile {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub duration: f64,
}

impl CubicProfile {
    /// Cubic through (0, φ0) and (T, φT) with zero velocity at both ends.
    pub fn fit_rest_to_rest(phi0: f64, phi_end: f64, duration: f64) -> Result<Self, ProfileError> {
        if !(duration > 0.0) {
            return Err(ProfileError::NonpositiveDuration(duration));
        }
        let delta = phi_end - phi0;
        Ok(Self {
            c0: phi0,
            c1: 0.0,
            c2: 3.0 * delta / (duration * duration),
            c3: -2.0 * delta / (duration * duration * duration),
            duration,
        })
    }

    fn check_range(&self, t: f64) -> Result<(), ProfileError> {
        if t >= 0.0 && t <= self.duration {
            Ok(())
        } else {
            Err(ProfileError::OutOfRange {
                t,
                duration: self.duration,
            })
        }
    }

    /// φ(t), for t in [0, T].
    pub fn value(&self, t: f64) -> Result<f64, ProfileError> {
        self.check_range(t)?;
        Ok(self.c0 + t * (self.c1 + t * (self.c2 + t * self.c3)))
    }

    /// dφ/dt at t, for t in [0, T].
    pub fn velocity(&self, t: f64) -> Result<f64, ProfileError> {
        self.check_range(t)?;
        Ok(self.c1 + t * (2.0 * self.c2 + 3.0 * t * self.c3))
    }
}
