//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any fails.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use glidepath::cost::EdgeCost;
use glidepath::flowfield::{
    interp_1d, interp_xy, synth_field, AxisMethod, AxisSpec, CurrentVector, FlowGrid, FlowModel, GridDims,
    InterpScheme, Layer, SynthKind, SynthParams, XyMethod,
};
use glidepath::geometry::{Point2, Polygon, Rect};
use glidepath::kinematics::{effective_speed, travel_time, DiveProfile, GliderCost, VehicleSpec};
use glidepath::mission::{
    format_duration, mission_cost, run_mission, run_sweep, MissionConfig, MissionSpec, MissionStatus, RunOptions,
    SweepVariable,
};
use glidepath::search::{build_graph, tve_dijkstra, Blocked, Neighborhood, SearchGraph, SearchOptions};
use glidepath::smoothing::{recompute_arrivals, smooth_path};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {:.2} s, limit {:.0} s", took.as_secs_f64(), limit.as_secs_f64()))
    } else {
        Ok(took)
    }
}

fn mission_spec(grid: &FlowGrid, body: &str) -> MissionSpec {
    let text = format!(r#"{{"version": 1, "flow_file": "in-memory", {body}}}"#);
    MissionConfig::from_json(&text).unwrap().resolve(grid).unwrap()
}

// 1. Zero-current straight-line rows.
fn zero_current_arithmetic() -> Check {
    let clock = Instant::now();
    let still = SynthParams { u0: 0.0, v0: 0.0, ..Default::default() };
    let dims = GridDims {
        x: AxisSpec::new(0.0, 220_000.0, 12),
        y: AxisSpec::new(0.0, 20_000.0, 3),
        z: vec![0.0, 100.0],
        t: AxisSpec::new(0.0, 864_000.0, 2),
    };
    let grid = synth_field(SynthKind::Uniform, &still, &dims).unwrap();
    let mut got = Vec::new();
    for (km, expect) in [(210.00, "08:02:26:40"), (210.55, "08:02:57:13")] {
        let goal_x = 5000.0 + km * 1000.0;
        let spec = mission_spec(
            &grid,
            &format!(r#""start": {{"x": 5000, "y": 10000}}, "goal": {{"x": {goal_x}, "y": 10000}}, "grid_spacing": 20000"#),
        );
        let result = run_mission(&spec, &grid, RunOptions { smooth: false }).unwrap();
        let text = format_duration(result.straight_line_no_current);
        ensure!(text == expect, "{km} km gave {text}, expected {expect}");
        got.push(text);
    }
    let took = within(Duration::from_secs(1), clock)?;
    Ok(format!("{} and {} ({:.3} s)", got[0], got[1], took.as_secs_f64()))
}

// 2. Search optimality against exhaustive enumeration.
fn best_by_enumeration<C: EdgeCost>(g: &SearchGraph, s: usize, goal: usize, t0: f64, cost: &C) -> f64 {
    fn walk<C: EdgeCost>(
        g: &SearchGraph,
        v: usize,
        goal: usize,
        t: f64,
        seen: &mut [bool],
        best: &mut f64,
        cost: &C,
    ) {
        if v == goal {
            *best = best.min(t);
            return;
        }
        for e in g.edges(v) {
            if seen[e.to] {
                continue;
            }
            let Some(secs) = cost.leg_time(g.vertex(v), g.vertex(e.to), t).secs() else { continue };
            let next = t + secs;
            // costs are non-negative, so a partial arrival at or past the best cannot improve it
            if next >= *best {
                continue;
            }
            seen[e.to] = true;
            walk(g, e.to, goal, next, seen, best, cost);
            seen[e.to] = false;
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut best = f64::INFINITY;
    walk(g, s, goal, t0, &mut seen, &mut best, cost);
    best
}

fn search_optimality() -> Check {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut compared, mut unreachable, mut max_vertices) = (0, 0, 0);
    let mut case = 0;
    while compared + unreachable < 100 {
        case += 1;
        let nx = rng.gen_range(2..=4usize);
        let ny = rng.gen_range(2..=12 / nx);
        let spacing = rng.gen_range(800.0..2000.0);
        let region = Rect::new(0.0, (nx - 1) as f64 * spacing, 0.0, (ny - 1) as f64 * spacing);
        let neighborhood = if rng.gen_bool(0.5) { Neighborhood::Eight } else { Neighborhood::Sixteen };
        let mut polygons = Vec::new();
        if rng.gen_bool(0.4) {
            let cx = rng.gen_range(0.0..region.x_max);
            let cy = rng.gen_range(0.0..region.y_max);
            let (hx, hy) = (rng.gen_range(100.0..3000.0), rng.gen_range(100.0..600.0));
            polygons.push(Polygon::rectangle(Rect::new(cx - hx, cx + hx, cy - hy, cy + hy)));
        }
        let blocked = Blocked::new(None, polygons);
        let Ok(g) = build_graph(region, spacing, neighborhood, &blocked) else { continue };
        max_vertices = max_vertices.max(g.vertex_count());
        let open: Vec<usize> = (0..g.vertex_count()).filter(|&v| !g.is_vertex_blocked(v)).collect();
        if open.len() < 2 {
            continue;
        }
        let s = open[rng.gen_range(0..open.len())];
        let goal = loop {
            let v = open[rng.gen_range(0..open.len())];
            if v != s {
                break v;
            }
        };

        let params = SynthParams {
            amplitude: rng.gen_range(0.03..0.12),
            period: rng.gen_range(21_600.0..86_400.0),
            phase: rng.gen_range(0.0..std::f64::consts::TAU),
            ..Default::default()
        };
        let dims = GridDims {
            x: AxisSpec::new(-1000.0, region.x_max + 1000.0, 5),
            y: AxisSpec::new(-1000.0, region.y_max + 1000.0, 5),
            z: vec![0.0, 200.0],
            t: AxisSpec::new(0.0, 400_000.0, 401),
        };
        let grid = synth_field(SynthKind::TidalChannel, &params, &dims).unwrap();
        let cost = GliderCost::new(
            FlowModel::new(&grid, InterpScheme::default()),
            VehicleSpec::new(0.3).unwrap(),
            vec![DiveProfile::new(0.0, 100.0)],
            1.0,
        )
        .unwrap()
        .with_substeps(2);
        let t0 = rng.gen_range(0.0..100_000.0);

        let oracle = best_by_enumeration(&g, s, goal, t0, &cost);
        let options = SearchOptions { fifo_probe: Some(60.0) };
        match tve_dijkstra(&g, s, goal, t0, &cost, &options) {
            Ok(out) => {
                ensure!(out.fifo_violations == 0, "case {case}: field is not FIFO ({} violations)", out.fifo_violations);
                ensure!(
                    out.path.arrival() == oracle,
                    "case {case}: search {} vs enumeration {oracle}",
                    out.path.arrival()
                );
                compared += 1;
            }
            Err(_) => {
                ensure!(oracle.is_infinite(), "case {case}: search found nothing, enumeration found {oracle}");
                unreachable += 1;
            }
        }
    }
    let took = within(Duration::from_secs(30), clock)?;
    Ok(format!(
        "100 lattices (<= {max_vertices} vertices), {compared} exact matches, {unreachable} unreachable in both ({:.2} s)",
        took.as_secs_f64()
    ))
}

// 3. Smoothing contract.
fn smoothing_contract() -> Check {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let dims = GridDims {
        x: AxisSpec::new(0.0, 30_000.0, 16),
        y: AxisSpec::new(0.0, 20_000.0, 11),
        z: vec![0.0, 100.0, 200.0],
        t: AxisSpec::new(0.0, 864_000.0, 41),
    };
    let mut planned_count = 0;
    let (mut before_total, mut after_total) = (0, 0);
    for case in 0..50 {
        let kind = if case % 2 == 0 { SynthKind::Gyre } else { SynthKind::TidalChannel };
        let params = SynthParams {
            amplitude: rng.gen_range(0.05..0.2),
            period: rng.gen_range(43_200.0..432_000.0),
            phase: rng.gen_range(0.0..6.0),
            depth_scale: Some(rng.gen_range(100.0..400.0)),
            ..Default::default()
        };
        let grid = synth_field(kind, &params, &dims).unwrap();
        let start = (rng.gen_range(500.0..29_500.0), rng.gen_range(500.0..19_500.0));
        let goal = (rng.gen_range(500.0..29_500.0), rng.gen_range(500.0..19_500.0));
        let t0 = rng.gen_range(0.0..200_000.0);
        let spec = mission_spec(
            &grid,
            &format!(
                r#""start": {{"x": {}, "y": {}}}, "goal": {{"x": {}, "y": {}}}, "start_time": {t0},
                   "grid_spacing": 1500, "profile_family": {{"z_min_range": 60, "z_climb_to_max": 40,
                   "n_climb_to_levels": 2, "n_dive_to_levels": 2}}"#,
                start.0, start.1, goal.0, goal.1
            ),
        );
        let result = run_mission(&spec, &grid, RunOptions::default()).unwrap();
        if result.status != MissionStatus::Planned {
            continue;
        }
        planned_count += 1;
        let planned = result.planned.as_ref().unwrap();
        let smoothed = result.smoothed.as_ref().unwrap();
        ensure!(smoothed.arrival() <= planned.arrival() + 1e-6, "case {case}: smoothing delayed the goal");
        ensure!(smoothed.waypoints.len() <= planned.waypoints.len(), "case {case}: waypoint count grew");
        ensure!(
            smoothed.waypoints.first() == planned.waypoints.first()
                && smoothed.waypoints.last() == planned.waypoints.last(),
            "case {case}: endpoints moved"
        );
        let cost = mission_cost(&spec, &grid).unwrap();
        let (again, _, _) = smooth_path(&smoothed.waypoints, spec.start_time, &cost);
        ensure!(again == smoothed.waypoints, "case {case}: smoothing is not idempotent");
        before_total += planned.waypoints.len();
        after_total += smoothed.waypoints.len();
    }
    ensure!(planned_count >= 45, "only {planned_count} of 50 missions were feasible");

    // stair-shaped paths on a weak uniform drift
    let drift = SynthParams { u0: 0.05, v0: 0.02, ..Default::default() };
    let grid = synth_field(SynthKind::Uniform, &drift, &dims).unwrap();
    let cost = GliderCost::new(
        FlowModel::new(&grid, InterpScheme::default()),
        VehicleSpec::new(0.3).unwrap(),
        vec![DiveProfile::new(0.0, 150.0)],
        0.25,
    )
    .unwrap();
    let mut worst: f64 = 1.0;
    for steps in [4usize, 7, 10, 16, 24] {
        let mut wp = vec![Point2::new(1000.0, 1000.0)];
        for k in 0..steps {
            let last = *wp.last().unwrap();
            let (dx, dy) = if k % 2 == 0 { (1000.0, 0.0) } else { (0.0, 700.0) };
            wp.push(Point2::new(last.x + dx, last.y + dy));
        }
        let before = recompute_arrivals(&wp, 0.0, &cost);
        let (out, tt, _) = smooth_path(&wp, 0.0, &cost);
        ensure!(*tt.last().unwrap() <= before.last().unwrap() + 1e-6, "stair of {steps} legs arrives later");
        let reduction = 1.0 - out.len() as f64 / wp.len() as f64;
        worst = worst.min(reduction);
    }
    ensure!(worst >= 0.5, "stair reduction only {:.0}%", worst * 100.0);
    let took = within(Duration::from_secs(60), clock)?;
    Ok(format!(
        "{planned_count} missions, waypoints {before_total} -> {after_total}; stair reduction >= {:.0}% ({:.2} s)",
        worst * 100.0,
        took.as_secs_f64()
    ))
}

// 4. Interpolation exactness.
fn akima_reference(x: &[f64], y: &[f64], q: f64) -> f64 {
    let n = x.len();
    let mut m = vec![0.0; n + 3];
    for i in 0..n - 1 {
        m[i + 2] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    }
    m[1] = 2.0 * m[2] - m[3];
    m[0] = 2.0 * m[1] - m[2];
    m[n + 1] = 2.0 * m[n] - m[n - 1];
    m[n + 2] = 2.0 * m[n + 1] - m[n];
    let slope: Vec<f64> = (0..n)
        .map(|i| {
            let a = (m[i + 3] - m[i + 2]).abs();
            let b = (m[i + 1] - m[i]).abs();
            if a + b == 0.0 {
                (m[i + 1] + m[i + 2]) / 2.0
            } else {
                (a * m[i + 1] + b * m[i + 2]) / (a + b)
            }
        })
        .collect();
    let i = (0..n - 1).rev().find(|&i| x[i] <= q).unwrap_or(0);
    let h = x[i + 1] - x[i];
    let d = q - x[i];
    let mi = m[i + 2];
    let c2 = (3.0 * mi - 2.0 * slope[i] - slope[i + 1]) / h;
    let c3 = (slope[i] + slope[i + 1] - 2.0 * mi) / (h * h);
    y[i] + slope[i] * d + c2 * d * d + c3 * d * d * d
}

fn interpolation_exactness() -> Check {
    let clock = Instant::now();
    let axis_methods = [AxisMethod::Nearest, AxisMethod::Linear, AxisMethod::Cubic, AxisMethod::Akima];
    let knots = [0.0, 0.7, 1.1, 2.5, 3.0, 4.2, 6.0];
    let vals: Vec<f64> = knots.iter().map(|&k: &f64| (1.3 * k).sin() * 5.0 + k * k).collect();
    for m in axis_methods {
        for (k, v) in knots.iter().zip(&vals) {
            let got = interp_1d(&knots, &vals, *k, m).unwrap();
            ensure!((got - v).abs() <= 1e-12, "{m} misses knot {k}: {got} vs {v}");
        }
    }

    let xs = [0.0, 3.0, 4.5, 9.0, 10.0, 14.0];
    let ys = [-2.0, 0.0, 1.0, 5.5, 6.0];
    let f = |x: f64, y: f64| 1.5 - 0.3 * x + 2.0 * y + 0.07 * x * y;
    let grid: Vec<f64> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| f(x, y))).collect();
    let layer = Layer::new(&xs, &ys, &grid, -9999.0);
    for m in [XyMethod::Nearest, XyMethod::Bilinear, XyMethod::Bicubic] {
        for &y in &ys {
            for &x in &xs {
                let got = interp_xy(&layer, x, y, m).unwrap();
                ensure!((got - f(x, y)).abs() <= 1e-12, "{m} misses node ({x}, {y})");
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let (x, y) = (rng.gen_range(0.0..14.0), rng.gen_range(-2.0..6.0));
        let got = interp_xy(&layer, x, y, XyMethod::Bilinear).unwrap();
        let want = f(x, y);
        ensure!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "bilinear off at ({x}, {y})");
    }

    let line: Vec<f64> = knots.iter().map(|k| 4.0 - 1.75 * k).collect();
    for m in [AxisMethod::Cubic, AxisMethod::Akima] {
        for step in 0..=600 {
            let q = step as f64 * 0.01;
            let got = interp_1d(&knots, &line, q, m).unwrap();
            ensure!((got - (4.0 - 1.75 * q)).abs() <= 1e-12, "{m} bends a line at {q}");
        }
    }

    let wide: Vec<f64> = (0..20).map(|i| i as f64 * 1.5).collect();
    let base: Vec<f64> = wide.iter().map(|x| (x * 0.4).cos()).collect();
    let mut far = base.clone();
    far[17] += 10.0;
    far[0] -= 10.0;
    for step in 0..=40 {
        let q = 12.0 + step as f64 * 0.15;
        let a = interp_1d(&wide, &base, q, AxisMethod::Akima).unwrap();
        let b = interp_1d(&wide, &far, q, AxisMethod::Akima).unwrap();
        ensure!(a == b, "Akima at {q} depends on a knot three or more intervals away");
    }

    let step_uniform: Vec<f64> = (0..11).map(|i| i as f64).collect();
    let step_ragged = [0.0, 0.5, 1.7, 2.0, 3.1, 4.9, 5.0, 6.4, 7.0, 8.8, 10.0];
    let step_vals: Vec<f64> = (0..11).map(|i| if i < 5 { 0.0 } else { 1.0 }).collect();
    let mut worst: f64 = 0.0;
    for k in [&step_uniform[..], &step_ragged[..]] {
        for s in 0..=1000 {
            let q = s as f64 * 0.01;
            let got = interp_1d(k, &step_vals, q, AxisMethod::Akima).unwrap();
            let want = akima_reference(k, &step_vals, q);
            worst = worst.max((got - want).abs());
            ensure!((got - want).abs() <= 1e-9, "Akima step data at {q}: {got} vs reference {want}");
            ensure!((-1e-12..=1.0 + 1e-12).contains(&got), "Akima overshoots the step at {q}: {got}");
        }
    }
    let took = within(Duration::from_secs(10), clock)?;
    Ok(format!("max Akima deviation {worst:.1e} ({:.3} s)", took.as_secs_f64()))
}

// 5. Feasibility physics.
fn feasibility_physics() -> Check {
    let vehicle = VehicleSpec::new(0.3).unwrap();
    let east = [1.0, 0.0, 0.0];
    let against = |f: f64| CurrentVector::new(-f * 0.3, 0.0);
    ensure!(effective_speed(vehicle, against(1.01), east).unwrap().is_none(), "1.01x opposing current is feasible");
    ensure!(effective_speed(vehicle, against(0.99), east).unwrap().is_some(), "0.99x opposing current is infeasible");
    ensure!(
        effective_speed(vehicle, CurrentVector::new(0.0, 0.3), east).unwrap().is_none(),
        "cross current equal to speed is feasible"
    );
    struct Uniform(CurrentVector);
    impl glidepath::flowfield::CurrentField for Uniform {
        fn current(&self, _: f64, _: f64, _: f64, _: f64) -> Result<CurrentVector, glidepath::flowfield::SampleError> {
            Ok(self.0)
        }
    }
    let a = Point2::new(0.0, 0.0).with_depth(0.0);
    let b = Point2::new(1000.0, 0.0).with_depth(0.0);
    ensure!(!travel_time(&Uniform(against(1.01)), vehicle, a, b, 0.0, 4).is_feasible(), "leg at 1.01x is passable");
    let t = travel_time(&Uniform(against(0.99)), vehicle, a, b, 0.0, 4);
    let expect = 1000.0 / (0.3 - 0.99 * 0.3);
    ensure!((t.as_secs() - expect).abs() <= 1e-9 * expect, "leg at 0.99x took {t}, expected {expect} s");
    ensure!(
        !travel_time(&Uniform(CurrentVector::new(0.0, 0.3)), vehicle, a, b, 0.0, 4).is_feasible(),
        "leg with cross current equal to speed is passable"
    );
    Ok("1.01x opposing and equal cross current impassable, 0.99x passable".into())
}

// 6. Speed sweep trend.
fn gyre_grid(extent: f64, nodes: usize, depths: Vec<f64>, amplitude: f64) -> FlowGrid {
    let params = SynthParams { amplitude, period: 432_000.0, epsilon: 0.25, depth_scale: Some(400.0), ..Default::default() };
    let dims = GridDims {
        x: AxisSpec::new(0.0, extent, nodes),
        y: AxisSpec::new(0.0, extent, nodes),
        z: depths,
        t: AxisSpec::new(0.0, 1_728_000.0, 81),
    };
    synth_field(SynthKind::Gyre, &params, &dims).unwrap()
}

fn speed_sweep_trend() -> Check {
    let clock = Instant::now();
    let grid = gyre_grid(100_000.0, 41, vec![0.0, 100.0, 200.0], 0.15);
    let spec = mission_spec(
        &grid,
        r#""start": {"x": 5000, "y": 8000}, "goal": {"x": 92000, "y": 90000},
           "profile_family": {"z_climb_to_max": 50, "z_min_range": 80, "n_climb_to_levels": 2, "n_dive_to_levels": 2}"#,
    );
    let values: Vec<String> = ["0.25", "0.30", "0.35"].iter().map(|s| s.to_string()).collect();
    let rows = run_sweep(&spec, &grid, SweepVariable::VehicleSpeed, &values).unwrap();
    let times: Vec<f64> = rows.iter().map(|r| r.travel_time_s.unwrap_or(f64::INFINITY)).collect();
    ensure!(times.iter().all(|t| t.is_finite()), "a sweep run was infeasible: {times:?}");
    ensure!(times[0] > times[1] && times[1] > times[2], "travel times not strictly decreasing: {times:?}");
    let took = within(Duration::from_secs(120), clock)?;
    let shown: Vec<String> = times.iter().map(|&t| format_duration(t)).collect();
    Ok(format!("{} > {} > {} ({:.2} s)", shown[0], shown[1], shown[2], took.as_secs_f64()))
}

// 7. Scale.
fn scale_check() -> Check {
    let grid = gyre_grid(100_000.0, 51, vec![0.0, 50.0, 100.0, 150.0, 200.0], 0.15);
    let spec = mission_spec(
        &grid,
        r#""start": {"x": 600, "y": 600}, "goal": {"x": 99400, "y": 99400}, "grid_spacing": 1124,
           "parallel": true,
           "profile_family": {"z_min_range": 20, "n_climb_to_levels": 1, "n_dive_to_levels": 12}"#,
    );
    ensure!(spec.profiles.len() == 12, "family has {} profiles", spec.profiles.len());
    let clock = Instant::now();
    let result = run_mission(&spec, &grid, RunOptions::default()).unwrap();
    let took = within(Duration::from_secs(60), clock)?;
    ensure!(result.graph.edges >= 100_000, "graph has only {} edges", result.graph.edges);
    ensure!(result.status == MissionStatus::Planned, "mission did not plan: {:?}", result.diagnostic);
    Ok(format!(
        "{} vertices, {} edges, {} relaxations, 12 profiles ({:.2} s)",
        result.graph.vertices,
        result.graph.edges,
        result.graph.relaxed,
        took.as_secs_f64()
    ))
}

// 8. Determinism of the plan command.
fn plan_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_glidepath");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let status = Command::new(bin)
        .args(["synth", "gyre", "--x", "0,60000,31", "--y", "0,40000,21", "--t", "0,864000,41", "--depth-scale", "300"])
        .arg("--out")
        .arg(d.join("flow.json"))
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "synth failed");
    fs::write(
        d.join("mission.json"),
        r#"{"version": 1, "flow_file": "flow.json", "parallel": true,
            "start": {"x": 3000, "y": 3000}, "goal": {"x": 57000, "y": 36000},
            "profile_family": {"z_climb_to_max": 50, "z_min_range": 60, "n_climb_to_levels": 2, "n_dive_to_levels": 3}}"#,
    )
    .map_err(|e| e.to_string())?;
    let plan = |out: &Path, threads: &str| -> Result<(), String> {
        let st = Command::new(bin)
            .env("GLIDEPATH_THREADS", threads)
            .arg("plan")
            .arg(d.join("mission.json"))
            .arg("--out")
            .arg(out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(st.status.success(), "plan failed: {}", String::from_utf8_lossy(&st.stderr));
        Ok(())
    };
    plan(&d.join("a"), "2")?;
    plan(&d.join("b"), "8")?;
    for f in ["waypoints.json", "plan.svg"] {
        let a = fs::read(d.join("a").join(f)).map_err(|e| e.to_string())?;
        let b = fs::read(d.join("b").join(f)).map_err(|e| e.to_string())?;
        ensure!(a == b, "{f} differs between runs");
    }
    Ok("waypoints.json and plan.svg byte-identical across 2- and 8-thread runs".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("zero-current straight-line rows", zero_current_arithmetic),
        ("search optimality vs enumeration", search_optimality),
        ("smoothing contract", smoothing_contract),
        ("interpolation exactness", interpolation_exactness),
        ("feasibility physics", feasibility_physics),
        ("speed sweep trend", speed_sweep_trend),
        ("scale check", scale_check),
        ("plan determinism", plan_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
