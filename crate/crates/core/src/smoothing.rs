//! Waypoint merging for stair-shaped paths in a time-varying field.
//!
//! Each pass walks the path from the first waypoint and tries to replace the
//! two legs `start -> i-1 -> i` with the direct leg `start -> i`. A merge is
//! kept unless the direct leg is impassable, slower than the two legs it
//! replaces, or delays the arrival at the goal once the remaining legs are
//! replayed from the new arrival time. Passes repeat until one leaves the
//! waypoint count unchanged.

use serde::Serialize;

use crate::cost::EdgeCost;
use crate::geometry::Point2;
use crate::search::PlannedPath;

/// Floating-point allowance (s) in favour of merging.
const MERGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SmoothingTrace {
    /// Outer passes run; 0 when the path has at most two waypoints.
    pub iterations: usize,
    pub merges_accepted: usize,
    /// Direct leg impassable.
    pub merges_rejected_infeasible: usize,
    /// Direct leg slower than the two legs it replaces.
    pub merges_rejected_slower_local: usize,
    /// Direct leg faster locally but the goal is reached later.
    pub merges_rejected_slower_goal: usize,
    /// Goal arrival as carried through the passes.
    pub goal_arrival_carried: f64,
    /// Goal arrival from replaying the smoothed waypoints.
    pub goal_arrival_replayed: f64,
}

/// Arrival time at each waypoint when departing the first at `t0`.
/// Everything after the first impassable leg is infinite.
pub fn recompute_arrivals<C: EdgeCost + ?Sized>(waypoints: &[Point2], t0: f64, cost: &C) -> Vec<f64> {
    let mut tt = Vec::with_capacity(waypoints.len());
    if waypoints.is_empty() {
        return tt;
    }
    tt.push(t0);
    for w in waypoints.windows(2) {
        let prev = *tt.last().unwrap();
        tt.push(leg_end(cost, w[0], w[1], prev));
    }
    tt
}

fn leg_time<C: EdgeCost + ?Sized>(cost: &C, a: Point2, b: Point2, depart: f64) -> f64 {
    if depart.is_finite() {
        cost.leg_time(a, b, depart).as_secs()
    } else {
        f64::INFINITY
    }
}

fn leg_end<C: EdgeCost + ?Sized>(cost: &C, a: Point2, b: Point2, depart: f64) -> f64 {
    depart + leg_time(cost, a, b, depart)
}

/// Smoothed waypoints, their arrival times and a trace of merge decisions.
/// Paths with at most two waypoints and paths that never reach the goal are
/// returned unchanged.
pub fn smooth_path<C: EdgeCost + ?Sized>(
    waypoints: &[Point2],
    t0: f64,
    cost: &C,
) -> (Vec<Point2>, Vec<f64>, SmoothingTrace) {
    let mut wp = waypoints.to_vec();
    let mut tt = recompute_arrivals(&wp, t0, cost);
    let mut trace = SmoothingTrace::default();
    let feasible = tt.last().is_some_and(|t| t.is_finite());
    if wp.len() > 2 && feasible {
        let mut previous_len = usize::MAX;
        while wp.len() != previous_len && wp.len() > 2 {
            previous_len = wp.len();
            trace.iterations += 1;
            (wp, tt) = smoothing_pass(&wp, tt, cost, &mut trace);
        }
    }
    trace.goal_arrival_carried = tt.last().copied().unwrap_or(t0);
    trace.goal_arrival_replayed = recompute_arrivals(&wp, t0, cost).last().copied().unwrap_or(t0);
    (wp, tt, trace)
}

fn smoothing_pass<C: EdgeCost + ?Sized>(
    wp: &[Point2],
    mut tt: Vec<f64>,
    cost: &C,
    trace: &mut SmoothingTrace,
) -> (Vec<Point2>, Vec<f64>) {
    let n = wp.len();
    let end = n - 1;
    let mut i_start = 0;
    let mut wp_s = vec![wp[0]];
    let mut tt_s = vec![tt[0]];
    let mut t1 = tt[1] - tt[0];
    let mut merge = true;
    for i_path in 2..n {
        merge = true;
        let t2 = leg_time(cost, wp[i_path - 1], wp[i_path], tt[i_path - 1]);
        let t_sum = leg_time(cost, wp[i_start], wp[i_path], tt[i_start]);
        if t_sum.is_infinite() {
            merge = false;
            trace.merges_rejected_infeasible += 1;
        } else if t1 + t2 < t_sum - MERGE_TOLERANCE {
            merge = false;
            trace.merges_rejected_slower_local += 1;
        } else {
            let mut t_end = tt[i_start] + t_sum;
            for i_end in i_path + 1..n {
                t_end = leg_end(cost, wp[i_end - 1], wp[i_end], t_end);
            }
            if t_end > tt[end] + MERGE_TOLERANCE {
                merge = false;
                trace.merges_rejected_slower_goal += 1;
            } else {
                tt[end] = t_end;
            }
        }
        if merge {
            trace.merges_accepted += 1;
            t1 = t_sum;
            tt[i_path] = tt[i_start] + t_sum;
        } else {
            tt[i_path - 1] = tt[i_start] + t1;
            tt[i_path] = tt[i_start] + t1 + t2;
            i_start = i_path - 1;
            t1 = t2;
            tt_s.push(tt[i_start]);
            wp_s.push(wp[i_start]);
        }
    }
    if !merge {
        tt[end] = leg_end(cost, wp[end - 1], wp[end], tt[end - 1]);
    }
    tt_s.push(tt[end]);
    wp_s.push(wp[end]);
    (wp_s, tt_s)
}

/// [`smooth_path`] on a planned path; legs and profiles of the result come
/// from replaying the smoothed waypoints.
pub fn smooth_planned<C: EdgeCost + ?Sized>(path: &PlannedPath, cost: &C) -> (PlannedPath, SmoothingTrace) {
    let (wp, _, trace) = smooth_path(&path.waypoints, path.departure(), cost);
    (PlannedPath::replay(wp, path.departure(), cost), trace)
}
