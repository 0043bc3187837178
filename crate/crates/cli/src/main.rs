use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use glidepath::flowfield::{
    load_flow_grid, sample, save_flow_grid, synth_field, AxisSpec, Encoding, GridDims, InterpScheme, SampleError,
    SynthKind, SynthParams,
};
use glidepath::geometry::Rect;
use glidepath::mission::{
    export_waypoints, format_duration, parse_mission, render_svg, run_mission, run_sweep, totals, write_svg,
    MissionResult, MissionSpec, MissionStatus, RunOptions, SweepVariable,
};

const THREADS_VAR: &str = "GLIDEPATH_THREADS";

/// Glider route planning through time-varying ocean currents.
#[derive(Debug, Parser)]
#[command(name = "glidepath", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plan a mission and write waypoints.json, plan.svg and summary.txt.
    Plan(PlanArgs),
    /// Print the interpolated current at one point.
    Sample(SampleArgs),
    /// Write a synthetic flow archive.
    Synth(SynthArgs),
    /// Re-run a mission over a list of values of one parameter.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct PlanArgs {
    mission: PathBuf,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    no_smooth: bool,
    /// Depth (m) of the current arrows in the SVG [default: middle of the dive band].
    #[arg(long)]
    svg_depth: Option<f64>,
    /// Time (s) of the current arrows in the SVG [default: start time].
    #[arg(long)]
    svg_time: Option<f64>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    flow: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
    #[arg(long, allow_hyphen_values = true)]
    z: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    /// `xy[,z[,t]]`, e.g. `bicubic,akima,linear`; repeat to compare schemes.
    #[arg(long = "scheme")]
    schemes: Vec<InterpScheme>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// uniform, gyre or tidal_channel.
    kind: SynthKind,
    #[arg(long)]
    out: PathBuf,
    /// `min,max,count` in meters.
    #[arg(long, default_value = "0,50000,26", value_parser = parse_axis)]
    x: AxisSpec,
    #[arg(long, default_value = "0,50000,26", value_parser = parse_axis)]
    y: AxisSpec,
    /// Depth levels in meters.
    #[arg(long, default_value = "0,100,200", value_delimiter = ',')]
    z: Vec<f64>,
    /// `min,max,count` in seconds.
    #[arg(long, default_value = "0,172800,49", value_parser = parse_axis)]
    t: AxisSpec,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    u0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v0: f64,
    #[arg(long, default_value_t = 0.2)]
    amplitude: f64,
    #[arg(long, default_value_t = 43_200.0)]
    period: f64,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phase: f64,
    #[arg(long)]
    depth_scale: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = -9999.0, allow_hyphen_values = true)]
    fill: f64,
    /// Land rectangle `x_min,x_max,y_min,y_max`; repeatable.
    #[arg(long, value_parser = parse_rect)]
    land: Vec<Rect>,
    /// Write the binary encoding instead of inline JSON.
    #[arg(long)]
    binary: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    mission: PathBuf,
    #[arg(long)]
    vary: SweepVariable,
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<String>,
}

fn parse_numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("'{p}' is not a number")))
        .collect()
}

fn parse_axis(s: &str) -> Result<AxisSpec, String> {
    match parse_numbers(s)?.as_slice() {
        &[min, max, count] if count >= 1.0 && count.fract() == 0.0 => Ok(AxisSpec::new(min, max, count as usize)),
        _ => Err(format!("expected min,max,count, got '{s}'")),
    }
}

fn parse_rect(s: &str) -> Result<Rect, String> {
    match parse_numbers(s)?.as_slice() {
        &[x0, x1, y0, y1] if x0 < x1 && y0 < y1 => Ok(Rect::new(x0, x1, y0, y1)),
        _ => Err(format!("expected x_min,x_max,y_min,y_max, got '{s}'")),
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var(THREADS_VAR) else { return };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring {THREADS_VAR}={value}: expected a positive integer"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Plan(args) => plan(&args),
        Command::Sample(args) => sample_cmd(&args),
        Command::Synth(args) => synth(&args).map(|()| ExitCode::SUCCESS),
        Command::Sweep(args) => sweep(&args).map(|()| ExitCode::SUCCESS),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn summary_text(result: &MissionResult) -> String {
    let t = totals(result);
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"));
    let mut lines = vec![
        format!("status: {}", if result.status == MissionStatus::Planned { "planned" } else { "infeasible" }),
        format!("travel_time: {}", t.travel_time),
        format!("travel_time_s: {}", opt(t.travel_time_s)),
        format!("path_length_m: {}", opt(t.path_length_m)),
        format!("waypoints_planned: {}", t.waypoints_planned),
        format!("waypoints_smoothed: {}", t.waypoints_smoothed.map_or_else(|| "-".to_string(), |n| n.to_string())),
        format!("straight_line: {}", t.straight_line),
        format!("straight_line_s: {}", opt(t.straight_line_s.secs())),
        format!("straight_line_no_current: {}", t.straight_line_no_current),
        format!("straight_line_no_current_s: {:.3}", t.straight_line_no_current_s),
        format!("graph_vertices: {}", result.graph.vertices),
        format!("graph_edges: {}", result.graph.edges),
        format!("fifo_violations: {}", result.graph.fifo_violations),
    ];
    if let Some(trace) = &result.trace {
        lines.push(format!("smoothing_iterations: {}", trace.iterations));
        lines.push(format!("merges_accepted: {}", trace.merges_accepted));
        lines.push(format!(
            "merges_rejected: {} impassable, {} slower locally, {} later at goal",
            trace.merges_rejected_infeasible, trace.merges_rejected_slower_local, trace.merges_rejected_slower_goal
        ));
    }
    if let Some(d) = &result.diagnostic {
        lines.push(format!("diagnostic: {d}"));
    }
    let mut text = lines.join("\n");
    text.push('\n');
    text
}

fn svg_depth(spec: &MissionSpec) -> f64 {
    0.5 * (spec.profile_family.z_min + spec.profile_family.z_max)
}

fn plan(args: &PlanArgs) -> Result<ExitCode> {
    let clock = Instant::now();
    let (spec, grid) =
        parse_mission(&args.mission).with_context(|| format!("loading mission {}", args.mission.display()))?;
    for w in &spec.warnings {
        eprintln!("warning: {w}");
    }
    let result = run_mission(&spec, &grid, RunOptions { smooth: !args.no_smooth })?;
    let comp_time = clock.elapsed().as_secs_f64();

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    export_waypoints(&result, &spec, args.out.join("waypoints.json"))?;
    let svg = render_svg(
        &result,
        &spec,
        &grid,
        args.svg_depth.unwrap_or_else(|| svg_depth(&spec)),
        args.svg_time.unwrap_or(spec.start_time),
    );
    write_svg(&svg, args.out.join("plan.svg"))?;
    let summary = summary_text(&result);
    write_text(&args.out.join("summary.txt"), &summary)?;

    print!("{summary}");
    println!("comp_time_s: {comp_time:.3}");
    Ok(match result.status {
        MissionStatus::Planned => ExitCode::SUCCESS,
        MissionStatus::Infeasible => ExitCode::from(2),
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn sample_cmd(args: &SampleArgs) -> Result<ExitCode> {
    let grid = load_flow_grid(&args.flow)?;
    let schemes = if args.schemes.is_empty() { vec![InterpScheme::default()] } else { args.schemes.clone() };
    let mut code = ExitCode::SUCCESS;
    for scheme in schemes {
        println!("scheme: {scheme}");
        match sample(&grid, args.x, args.y, args.z, args.t, scheme) {
            Ok(c) => {
                println!("u: {}", c.u);
                println!("v: {}", c.v);
                println!("speed: {}", c.magnitude());
            }
            Err(e @ (SampleError::LandContact { .. } | SampleError::OutOfDomain { .. })) => {
                println!("error: {e}");
                code = ExitCode::from(2);
            }
        }
    }
    Ok(code)
}

fn synth(args: &SynthArgs) -> Result<()> {
    let params = SynthParams {
        u0: args.u0,
        v0: args.v0,
        amplitude: args.amplitude,
        period: args.period,
        epsilon: args.epsilon,
        phase: args.phase,
        depth_scale: args.depth_scale,
        noise: args.noise,
        seed: args.seed,
        fill_sentinel: args.fill,
        land: args.land.clone(),
    };
    let dims = GridDims { x: args.x, y: args.y, z: args.z.clone(), t: args.t };
    let grid = synth_field(args.kind, &params, &dims)?;
    let encoding = if args.binary { Encoding::Binary } else { Encoding::Inline };
    save_flow_grid(&grid, &args.out, encoding)?;
    let [nt, nz, ny, nx] = grid.shape();
    println!("kind: {}", args.kind);
    println!("shape: {nt}x{nz}x{ny}x{nx}");
    println!("out: {}", args.out.display());
    Ok(())
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let (spec, grid) =
        parse_mission(&args.mission).with_context(|| format!("loading mission {}", args.mission.display()))?;
    if args.values.len() < 2 {
        bail!("a sweep needs at least two values");
    }
    let rows = run_sweep(&spec, &grid, args.vary, &args.values)?;
    println!("variable: {}", args.vary);
    println!(
        "{:<14} {:<10} {:<12} {:>14} {:>14} {:>9} {:>9} {:>10}",
        "value", "status", "travel_time", "travel_time_s", "path_length_m", "wp_plan", "wp_smooth", "comp_time_s"
    );
    for r in rows {
        let status = if r.status == MissionStatus::Planned { "planned" } else { "infeasible" };
        let tt = r.travel_time_s.map_or_else(|| "-".to_string(), |t| format!("{t:.1}"));
        let len = r.path_length_m.map_or_else(|| "-".to_string(), |l| format!("{l:.1}"));
        println!(
            "{:<14} {:<10} {:<12} {:>14} {:>14} {:>9} {:>9} {:>10.3}",
            r.value,
            status,
            format_duration(r.travel_time_s.unwrap_or(f64::INFINITY)),
            tt,
            len,
            r.waypoints_planned,
            r.waypoints_smoothed,
            r.comp_time_s
        );
    }
    Ok(())
}
