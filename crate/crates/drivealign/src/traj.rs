//! Planar trajectory primitives shared across the crate.

use serde::{Deserialize, Serialize};

/// Waypoint spacing in seconds.
pub const WAYPOINT_DT_S: f64 = 0.5;
/// Number of waypoints in a planning horizon (3 s at 0.5 s spacing).
pub const WAYPOINT_COUNT: usize = 6;

/// A point in the ego frame, meters, x forward and y left.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub x: f64,
    pub y: f64,
}

impl Waypoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Waypoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Six ego-frame waypoints covering 3 s at 0.5 s spacing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trajectory {
    points: [Waypoint; WAYPOINT_COUNT],
}

impl Trajectory {
    pub fn new(points: [Waypoint; WAYPOINT_COUNT]) -> Self {
        Self { points }
    }

    pub fn from_points(points: &[Waypoint]) -> Option<Self> {
        let arr: [Waypoint; WAYPOINT_COUNT] = points.try_into().ok()?;
        Some(Self { points: arr })
    }

    pub fn zeros() -> Self {
        Self { points: [Waypoint::new(0.0, 0.0); WAYPOINT_COUNT] }
    }

    pub fn points(&self) -> &[Waypoint; WAYPOINT_COUNT] {
        &self.points
    }

    /// Time of waypoint `i` (0-based): 0.5, 1.0, ..., 3.0 s.
    pub fn time_of(i: usize) -> f64 {
        (i + 1) as f64 * WAYPOINT_DT_S
    }

    /// Mean point-wise Euclidean distance to another trajectory.
    pub fn mean_l2(&self, other: &Trajectory) -> f64 {
        let total: f64 =
            self.points.iter().zip(other.points.iter()).map(|(a, b)| a.distance(b)).sum();
        total / WAYPOINT_COUNT as f64
    }
}

impl Serialize for Trajectory {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.points.iter().map(|w| [w.x, w.y]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Trajectory {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        let points: Vec<Waypoint> = pairs.iter().map(|p| Waypoint::new(p[0], p[1])).collect();
        Trajectory::from_points(&points)
            .ok_or_else(|| serde::de::Error::custom(format!("expected 6 waypoints, got {}", pairs.len())))
    }
}
