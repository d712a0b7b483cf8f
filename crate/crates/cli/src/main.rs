mod construct;
mod input;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use tiling_core::gadgets::{
    expand_or_swap_step, find_expanding_set, find_swapping_set, greedy_kr, KrOutcome, SlackParams, StepOutcome,
    SwapRule,
};
use tiling_core::harness::{
    default_grid, emit_boundline_plot_data, parse_fraction, run_figure2, sweep_dense, sweep_oracle,
    verify_extremal_suite, ExperimentReport, Verdict,
};
use tiling_core::io::{emit_edge_list, emit_graph6};
use tiling_core::rational::{self, Rational};
use tiling_core::solver::{coverage_deficit, max_tiling_oracle, max_tiling_with, SolverConfig, DEFAULT_NODE_BUDGET};
use tiling_core::thresholds::{chromatic_data, g_of_x, general_line, komlos_line, x_line, BoundLine};
use tiling_core::{Graph, Pattern, VertexOrdering};

use input::{load_graph, load_tiling, parse_shape};

#[derive(Parser)]
#[command(name = "tiling", version, about = "Degree-sequence tiling workbench")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Base seed for randomised experiments.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search-node budget for the tiling solver.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic data and degree bound lines of a pattern.
    Thresholds(ThresholdsArgs),
    /// Build an extremal host or a constructive tiling.
    Construct(ConstructArgs),
    /// Maximum tiling of a host by one or more patterns.
    Solve(SolveArgs),
    /// Search for expanding sets, swapping sets or a greedy clique.
    Gadgets(GadgetsArgs),
    /// Run an extremal verification grid.
    Verify(VerifyArgs),
    /// Run a randomised solver sweep.
    Sweep(SweepArgs),
    /// Required-degree CSV for plotting bound lines.
    Plotdata(PlotArgs),
}

#[derive(Args)]
struct ThresholdsArgs {
    /// Pattern file, built-in name (K3, C5, K1,2, K2,4,6) or graph6 string.
    pattern: Option<String>,
    /// Slack added to the intercept.
    #[arg(long, default_value = "0")]
    eta: String,
    /// Also report the line for covering an `x` fraction.
    #[arg(long)]
    x: Option<String>,
    /// Also report the line for a neck ratio σ′.
    #[arg(long)]
    sigma_prime: Option<String>,
    /// Print the reference table instead.
    #[arg(long)]
    figure2: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    /// JSON object of family parameters.
    #[arg(long, default_value = "{}")]
    params: String,
    /// Host output path; the sidecar goes to `<out>.json`.
    #[arg(long)]
    out: String,
    #[arg(long, value_enum, default_value_t = Format::Edges)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Graph6,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    host: String,
    #[arg(long = "pattern", required = true)]
    patterns: Vec<String>,
    /// Use the exhaustive oracle (hosts of at most 16 vertices).
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Finder {
    Expand,
    Swap,
    Kr,
    Step,
}

#[derive(Args)]
struct GadgetsArgs {
    #[arg(long, value_enum)]
    find: Finder,
    #[arg(long)]
    host: String,
    /// Tiling JSON: {"bottle": {"r", "neck", "width"}, "copies": [[...]]}.
    #[arg(long)]
    tiling: Option<String>,
    /// Number of uncovered vertices to assign.
    #[arg(long, default_value_t = 1)]
    size: usize,
    /// Minimum rank gap for swapping pairs.
    #[arg(long, default_value_t = 1)]
    offset: usize,
    #[arg(long)]
    neck_min: Option<usize>,
    #[arg(long)]
    width_min: Option<usize>,
    /// Base bottle `r,neck,width`; defaults to the tiling's bottle.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, default_value = "0")]
    eta: String,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Vertex order, comma separated; defaults to increasing degree.
    #[arg(long)]
    ordering: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// ex1, ex2, ex3 or all.
    #[arg(long, default_value = "all")]
    family: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    Oracle,
    Dense,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    experiment: Experiment,
    /// Instances (per clique size for `dense`).
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Args)]
struct PlotArgs {
    pattern: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "0")]
    eta: String,
    /// Overlay the line for each `x`.
    #[arg(long)]
    x: Vec<String>,
}

struct Output {
    value: Value,
    text: String,
    verdict: Verdict,
}

fn rat(text: &str) -> Result<Rational> {
    Ok(rational::parse(text)?)
}

fn line_json(line: &BoundLine) -> Value {
    serde_json::to_value(line).expect("bound lines serialise")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("outputs serialise")
}

fn thresholds(args: &ThresholdsArgs) -> Result<Output> {
    if args.figure2 {
        let rows = run_figure2()?;
        let verdict = Verdict::combine(rows.iter().map(|r| if r.matches { Verdict::Pass } else { Verdict::Fail }));
        let text = rows
            .iter()
            .map(|r| {
                let mark = if r.matches { "ok" } else { "MISMATCH" };
                format!(
                    "{:8} {:>8} {:>8} {:>5}  {mark}",
                    r.pattern,
                    r.start.to_string(),
                    r.end.to_string(),
                    rational::format(&r.slope)
                )
            })
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Output { value: to_value(&rows), text, verdict });
    }
    let Some(source) = &args.pattern else { bail!("a pattern is required unless --figure2 is given") };
    let params = chromatic_data(&load_graph(source)?)?;
    let line = komlos_line(&params, rat(&args.eta)?)?;
    let mut value = to_value(&params);
    value["line"] = line_json(&line);
    let mut text = format!(
        "h={} r={} sigma={} omega={} chi_cr={}\nline: {}n + {}i up to i={}n (plateau {}n)",
        params.h,
        params.r,
        params.sigma,
        rational::format(&params.omega),
        rational::format(&params.chi_cr),
        rational::format(&(line.intercept + line.slack)),
        rational::format(&line.slope),
        rational::format(&line.cutoff),
        rational::format(&line.plateau),
    );
    if let Some(x) = &args.x {
        let x = parse_fraction(x)?;
        let xl = x_line(&params, x)?;
        let g = g_of_x(&params, x)?;
        value["x"] = json!(rational::format(&x));
        value["g"] = json!(rational::format(&g));
        value["x_line"] = line_json(&xl);
        text += &format!(
            "\ng(x)={}  x-line: {}n + {}i up to i={}n",
            rational::format(&g),
            rational::format(&xl.intercept),
            rational::format(&xl.slope),
            rational::format(&xl.cutoff)
        );
    }
    if let Some(sp) = &args.sigma_prime {
        let gl = general_line(&params, rat(sp)?)?;
        value["general_line"] = line_json(&gl);
        text += &format!(
            "\nsigma'-line: {}n + {}i up to i={}n",
            rational::format(&gl.intercept),
            rational::format(&gl.slope),
            rational::format(&gl.cutoff)
        );
    }
    Ok(Output { value, text, verdict: Verdict::Pass })
}

fn construct_cmd(args: &ConstructArgs) -> Result<Output> {
    let built = construct::build(&args.family, &args.params)?;
    let body = match args.format {
        Format::Edges => emit_edge_list(&built.host),
        Format::Graph6 => emit_graph6(&built.host) + "\n",
    };
    std::fs::write(&args.out, body).with_context(|| format!("writing {}", args.out))?;
    let sidecar_path = format!("{}.json", args.out);
    let sidecar = serde_json::to_string_pretty(&built.sidecar)?;
    std::fs::write(&sidecar_path, sidecar + "\n").with_context(|| format!("writing {sidecar_path}"))?;
    let verdict = match built.sidecar.pointer("/tiling/valid") {
        Some(Value::Bool(false)) => Verdict::Fail,
        _ => Verdict::Pass,
    };
    let value = json!({
        "family": args.family,
        "out": args.out,
        "sidecar": sidecar_path,
        "n": built.host.order(),
        "edges": built.host.edge_count(),
    });
    let text = format!(
        "{}: {} vertices, {} edges -> {} (+ {})",
        args.family,
        built.host.order(),
        built.host.edge_count(),
        args.out,
        sidecar_path
    );
    Ok(Output { value, text, verdict })
}

fn solve(args: &SolveArgs, config: &SolverConfig) -> Result<Output> {
    let host = load_graph(&args.host)?;
    let patterns = args.patterns.iter().map(|p| load_graph(p)).collect::<Result<Vec<Graph>>>()?;
    let result = if args.oracle {
        max_tiling_oracle(&host, &patterns)?
    } else {
        let arcs: Vec<_> = patterns.into_iter().map(Pattern::plain).collect();
        max_tiling_with(&host, &arcs, config)?
    };
    let deficit = coverage_deficit(&result, host.order());
    let verdict = if result.is_proven() { Verdict::Pass } else { Verdict::Inconclusive };
    let value = json!({
        "n": host.order(),
        "covered_count": result.covered_count,
        "deficit": deficit,
        "optimality": result.optimality,
        "nodes": result.nodes,
        "embeddings": result.tiling.embeddings,
    });
    let mut text = format!(
        "covered {} of {} (deficit {}), {:?} after {} nodes",
        result.covered_count,
        host.order(),
        deficit,
        result.optimality,
        result.nodes
    );
    for e in &result.tiling.embeddings {
        text += &format!("\n  {:?}", e.image);
    }
    Ok(Output { value, text, verdict })
}

fn found<T: Serialize>(what: &str, witness: Option<T>, size: usize) -> Output {
    match witness {
        Some(w) => Output {
            value: json!({ "status": "found", "kind": what, "witness": to_value(&w) }),
            text: format!("{what}: {}", serde_json::to_string(&w).expect("witness serialises")),
            verdict: Verdict::Pass,
        },
        None => Output {
            value: json!({ "status": "not-found", "kind": what, "size": size }),
            text: format!("{what}: none of size {size}"),
            verdict: Verdict::Fail,
        },
    }
}

fn gadgets(args: &GadgetsArgs) -> Result<Output> {
    let host = load_graph(&args.host)?;
    let eta = rat(&args.eta)?;
    let tiling = args.tiling.as_deref().map(|t| load_tiling(t, &host)).transpose()?;
    let base = match (&args.base, &tiling) {
        (Some(b), _) => Some(parse_shape(b)?),
        (None, Some((shape, _))) => Some(*shape),
        (None, None) => None,
    };
    let ordering = match &args.ordering {
        Some(list) => {
            let order = list
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .context("--ordering must list vertices")?;
            VertexOrdering::from_order(&host, order)?
        }
        None => VertexOrdering::by_degree(&host),
    };
    if args.find == Finder::Kr {
        let Some(base) = base else { bail!("--find kr needs --base or --tiling") };
        let outcome = greedy_kr(&host, base, eta);
        let verdict = match outcome {
            KrOutcome::Found { .. } => Verdict::Pass,
            KrOutcome::Failed { .. } => Verdict::Fail,
        };
        return Ok(Output { text: serde_json::to_string(&outcome)?, value: to_value(&outcome), verdict });
    }
    let Some((shape, tiling)) = tiling else { bail!("--find expand/swap/step needs --tiling") };
    match args.find {
        Finder::Expand => Ok(found("expanding", find_expanding_set(&host, &tiling, args.size)?, args.size)),
        Finder::Swap => {
            let rule = SwapRule {
                neck_min: args.neck_min.unwrap_or(shape.neck),
                width_min: args.width_min.unwrap_or(shape.width),
                offset: args.offset,
            };
            Ok(found("swapping", find_swapping_set(&host, &tiling, &ordering, &rule, args.size)?, args.size))
        }
        Finder::Step => {
            let base = base.expect("tiling supplies a base");
            let Some(gamma) = &args.gamma else { bail!("--find step needs --gamma") };
            let params = SlackParams::new(eta, rat(gamma)?, args.m)?;
            let outcome = expand_or_swap_step(&host, &tiling, base, &params, &ordering)?;
            let verdict = match outcome {
                StepOutcome::Exhausted { .. } => Verdict::Fail,
                _ => Verdict::Pass,
            };
            Ok(Output { text: serde_json::to_string(&outcome)?, value: to_value(&outcome), verdict })
        }
        Finder::Kr => unreachable!("handled above"),
    }
}

fn report_text(report: &ExperimentReport) -> String {
    let mut lines = vec![format!(
        "{} [{}{}]: {:?}",
        report.experiment,
        report.rng,
        report.base_seed.map(|s| format!(", seed {s}")).unwrap_or_default(),
        report.verdict
    )];
    for r in &report.records {
        if r.verdict != Verdict::Pass || report.records.len() <= 10 {
            lines.push(format!("  #{} {:?} {} -> {}", r.index, r.verdict, r.params, r.outputs));
        }
    }
    lines.join("\n")
}

fn reports(list: Vec<ExperimentReport>) -> Output {
    let verdict = Verdict::combine(list.iter().map(|r| r.verdict));
    let text = list.iter().map(report_text).collect::<Vec<_>>().join("\n");
    let value = if list.len() == 1 { to_value(&list[0]) } else { json!({ "verdict": verdict, "reports": list }) };
    Output { value, text, verdict }
}

fn verify(args: &VerifyArgs, config: &SolverConfig) -> Result<Output> {
    let families: Vec<&str> = match args.family.as_str() {
        "all" => vec!["ex1", "ex2", "ex3"],
        f => vec![f],
    };
    let list = families
        .into_iter()
        .map(|f| Ok(verify_extremal_suite(f, &default_grid(f)?, config)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports(list))
}

fn sweep(args: &SweepArgs, seed: u64, config: &SolverConfig) -> Result<Output> {
    let report = match args.experiment {
        Experiment::Oracle => sweep_oracle(args.count.unwrap_or(200), seed, config)?,
        Experiment::Dense => sweep_dense(args.count.unwrap_or(25), seed, config)?,
    };
    Ok(reports(vec![report]))
}

fn plotdata(args: &PlotArgs) -> Result<Output> {
    let params = chromatic_data(&load_graph(&args.pattern)?)?;
    let mut lines = vec![("komlos".to_string(), komlos_line(&params, rat(&args.eta)?)?)];
    for x in &args.x {
        let v = parse_fraction(x)?;
        lines.push((format!("x={}", rational::format(&v)), x_line(&params, v)?));
    }
    let csv = emit_boundline_plot_data(&lines, args.n);
    let mut rows = csv.lines();
    let header: Vec<&str> = rows.next().unwrap_or_default().split(',').collect();
    let records: Vec<Value> = rows
        .map(|row| {
            let obj = header
                .iter()
                .zip(row.split(','))
                .map(|(k, v)| (k.to_string(), v.parse::<i64>().map_or_else(|_| json!(v), |n| json!(n))))
                .collect::<serde_json::Map<_, _>>();
            Value::Object(obj)
        })
        .collect();
    Ok(Output {
        value: json!({ "n": args.n, "lines": lines.iter().map(|(k, l)| json!({ "label": k, "line": line_json(l) })).collect::<Vec<_>>(), "rows": records }),
        text: csv.trim_end().to_string(),
        verdict: Verdict::Pass,
    })
}

fn run(cli: &Cli) -> Result<Output> {
    let config = SolverConfig { node_budget: cli.budget, ..SolverConfig::default() };
    match &cli.command {
        Command::Thresholds(a) => thresholds(a),
        Command::Construct(a) => construct_cmd(a),
        Command::Solve(a) => solve(a, &config),
        Command::Gadgets(a) => gadgets(a),
        Command::Verify(a) => verify(a, &config),
        Command::Sweep(a) => sweep(a, cli.seed, &config),
        Command::Plotdata(a) => plotdata(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("values serialise"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
