//! Time-dependent leg costs shared by the search and the smoother.

use crate::flowfield::CurrentField;
use crate::geometry::Point2;
use crate::kinematics::{DiveProfile, GliderCost, TravelTime};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegCost {
    pub time: TravelTime,
    /// Dive profile flown on the leg, when the cost model has one.
    pub profile: Option<DiveProfile>,
}

impl LegCost {
    pub const INFEASIBLE: LegCost = LegCost { time: TravelTime::INFEASIBLE, profile: None };

    pub fn new(time: TravelTime) -> Self {
        Self { time, profile: None }
    }
}

/// Cost of the straight leg `from -> to` when departing at `depart` (s).
///
/// Implementations must be deterministic.
pub trait EdgeCost: Sync {
    fn leg_cost(&self, from: Point2, to: Point2, depart: f64) -> LegCost;

    fn leg_time(&self, from: Point2, to: Point2, depart: f64) -> TravelTime {
        self.leg_cost(from, to, depart).time
    }
}

impl<C: Fn(Point2, Point2, f64) -> LegCost + Sync> EdgeCost for C {
    fn leg_cost(&self, from: Point2, to: Point2, depart: f64) -> LegCost {
        self(from, to, depart)
    }
}

impl<F: CurrentField> EdgeCost for GliderCost<F> {
    fn leg_cost(&self, from: Point2, to: Point2, depart: f64) -> LegCost {
        let (profile, time) = self.optimal_profile_cost(from, to, depart);
        if time.is_feasible() {
            LegCost { time, profile: Some(profile) }
        } else {
            LegCost::INFEASIBLE
        }
    }
}
