use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{PlannedPath, SearchError, SearchGraph};
use crate::cost::EdgeCost;
use crate::kinematics::DiveProfile;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SearchOptions {
    /// When set, every relaxation also departs this many seconds later and
    /// counts the edges on which the later departure arrives earlier.
    pub fifo_probe: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub path: PlannedPath,
    pub settled: usize,
    pub relaxed: usize,
    pub fifo_violations: usize,
    /// Vertices in the order their labels became final.
    pub settle_order: Vec<usize>,
    /// Earliest known arrival per vertex; infinite when never reached.
    pub labels: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    time: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (time, vertex)
        other.time.total_cmp(&self.time).then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Label-setting search where each edge is costed at the moment it is
/// entered. Equal labels are settled in vertex-index order; equal arrivals
/// keep the lower-index predecessor.
pub fn tve_dijkstra<C: EdgeCost + ?Sized>(
    graph: &SearchGraph,
    start: usize,
    goal: usize,
    t0: f64,
    cost: &C,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    if !t0.is_finite() {
        return Err(SearchError::InvalidDeparture(t0));
    }
    let n = graph.vertex_count();
    for v in [start, goal] {
        if v >= n {
            return Err(SearchError::VertexOutOfRange(v));
        }
    }
    let mut label = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut leg_profile: Vec<Option<DiveProfile>> = vec![None; n];
    let mut done = vec![false; n];
    let mut settle_order = Vec::new();
    let (mut relaxed, mut fifo_violations) = (0, 0);

    let mut heap = BinaryHeap::new();
    label[start] = t0;
    heap.push(Entry { time: t0, vertex: start });

    while let Some(Entry { time, vertex: a }) = heap.pop() {
        if done[a] || time > label[a] {
            continue;
        }
        done[a] = true;
        settle_order.push(a);
        if a == goal {
            break;
        }
        let from = graph.vertex(a);
        for edge in graph.edges(a) {
            let b = edge.to;
            if done[b] {
                continue;
            }
            relaxed += 1;
            let to = graph.vertex(b);
            let leg = cost.leg_cost(from, to, time);
            let Some(secs) = leg.time.secs() else { continue };
            let arrival = time + secs;
            if let Some(delta) = options.fifo_probe {
                if let Some(later) = cost.leg_time(from, to, time + delta).secs() {
                    if time + delta + later < arrival - 1e-9 {
                        fifo_violations += 1;
                    }
                }
            }
            if arrival < label[b] || (arrival == label[b] && a < pred[b]) {
                label[b] = arrival;
                pred[b] = a;
                leg_profile[b] = leg.profile;
                heap.push(Entry { time: arrival, vertex: b });
            }
        }
    }

    if !done[goal] {
        return Err(SearchError::Unreachable);
    }
    let mut chain = vec![goal];
    while let Some(&v) = chain.last() {
        if v == start {
            break;
        }
        chain.push(pred[v]);
    }
    chain.reverse();
    let waypoints = chain.iter().map(|&v| graph.vertex(v)).collect();
    let arrival_times = chain.iter().map(|&v| label[v]).collect();
    let profiles = chain[1..].iter().map(|&v| leg_profile[v]).collect();
    Ok(SearchOutcome {
        path: PlannedPath::new(waypoints, arrival_times, profiles),
        settled: settle_order.len(),
        relaxed,
        fifo_violations,
        settle_order,
        labels: label,
    })
}
