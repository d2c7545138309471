// SPDX-License-Identifier: Apache-2.0
//! Command-line interface: crystal graphs, character tables, operator words
//! on walls, random closure checks and wall-versus-path verification.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wallcrys::cartan::{cartan_data, AffineType};
use wallcrys::correspondence::{verify_isomorphism, Correspondence, IsoReport, Status};
use wallcrys::crystal::{generate_graph, Crystal, CrystalGraph, Limits};
use wallcrys::path::{LambdaPath, PathCrystal};
use wallcrys::wall::{WallCrystal, YoungWall};
use wallcrys::Error;

const BUDGET_VAR: &str = "WALLCRYS_NODE_BUDGET";
const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Parser)]
#[command(name = "wallcrys", version, about = "Level-1 affine crystals as paths and Young walls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a crystal graph to a given depth.
    Graph(GraphArgs),
    /// Check that reading walls is a crystal isomorphism onto paths.
    Verify(VerifyArgs),
    /// Apply an operator word such as `f0 f1 e0` to the ground wall.
    Wall(WallArgs),
    /// Count reduced proper walls by block content.
    Character(CharacterArgs),
    /// Apply random operator words and check every wall is reduced and proper.
    Closure(ClosureArgs),
}

#[derive(Args)]
struct Target {
    /// Affine type such as `A2~1`, `B3~1` or `A5~2`.
    #[arg(long = "type")]
    ty: String,
    /// Level-1 weight `L<k>`.
    #[arg(long, default_value = "L0")]
    lambda: String,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Path,
    Wall,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value_t = Model::Path)]
    model: Model,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Affine type such as `A2~1`, `B3~1` or `A5~2`.
    #[arg(long = "type")]
    ty: String,
    /// Level-1 weight `L<k>`; every level-1 weight when omitted.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[command(flatten)]
    output: Output,
    /// Swap the first two table entries with different images.
    #[arg(long, hide = true)]
    mutate: bool,
}

#[derive(Args)]
struct WallArgs {
    #[command(flatten)]
    target: Target,
    /// Starting wall as a literal such as `L0;counts=3,2f,1`.
    #[arg(long)]
    start: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Operators applied left to right, e.g. `f0 f1 e0`.
    word: Vec<String>,
}

#[derive(Args)]
struct CharacterArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value_t = 6)]
    max_blocks: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ClosureArgs {
    /// Affine type such as `A2~1`, `B3~1` or `A5~2`.
    #[arg(long = "type")]
    ty: String,
    /// Level-1 weight `L<k>`; every level-1 weight when omitted.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    words: usize,
    #[arg(long, default_value_t = 12)]
    length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

/// A command outcome other than success, with its exit code.
enum Failure {
    /// A counterexample or failing word; exit 1.
    Found(String),
    /// Invalid input; exit 2.
    Usage(String),
    /// The node budget was exceeded; exit 3.
    Truncated(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Found(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Truncated(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Found(m) | Failure::Usage(m) | Failure::Truncated(m) => m,
        }
    }
}

fn parse_type(s: &str) -> Result<AffineType, Failure> {
    Ok(s.parse()?)
}

fn parse_lambda(ty: AffineType, s: &str) -> Result<usize, Failure> {
    let k: usize = s
        .strip_prefix('L')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Failure::Usage(format!("weight {s:?} is not of the form L<k>")))?;
    if !cartan_data(ty).level_one.contains(&k) {
        return Err(Error::NotLevelOne { ty: ty.to_string(), weight: s.to_string() }.into());
    }
    Ok(k)
}

fn lambdas(ty: AffineType, s: Option<&str>) -> Result<Vec<usize>, Failure> {
    match s {
        Some(s) => Ok(vec![parse_lambda(ty, s)?]),
        None => Ok(cartan_data(ty).level_one.clone()),
    }
}

fn node_budget() -> Result<usize, Failure> {
    match std::env::var(BUDGET_VAR) {
        Err(_) => Ok(DEFAULT_BUDGET),
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite() && *x >= 1.0)
            .map(|x| x as usize)
            .ok_or_else(|| Failure::Usage(format!("{BUDGET_VAR}={v:?} is not a positive number"))),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

/// Text outline of a graph: one block per node with its outgoing edges.
fn graph_outline(graph: &CrystalGraph, label: impl Fn(usize) -> String) -> String {
    let adjacency = graph.adjacency();
    let mut out = String::new();
    for (v, node) in graph.nodes.iter().enumerate() {
        let _ = writeln!(out, "[{v}] depth {}", node.depth);
        for line in label(v).lines() {
            let _ = writeln!(out, "    {line}");
        }
        for &(i, dst) in &adjacency[v] {
            let _ = writeln!(out, "  -{i}-> [{dst}]");
        }
    }
    if graph.truncated {
        out.push_str("truncated\n");
    }
    out
}

fn graph_json(graph: &CrystalGraph, ty: AffineType, lambda: usize, model: &str, depth: usize) -> String {
    let mut value: Value = serde_json::from_str(&graph.to_json()).expect("graph json is valid");
    if let Value::Object(map) = &mut value {
        map.insert("type".into(), json!(ty.to_string()));
        map.insert("lambda".into(), json!(format!("L{lambda}")));
        map.insert("model".into(), json!(model));
        map.insert("depth".into(), json!(depth));
    }
    pretty(&value)
}

fn cmd_graph(args: GraphArgs) -> Result<(), Failure> {
    let ty = parse_type(&args.target.ty)?;
    let lambda = parse_lambda(ty, &args.target.lambda)?;
    let limits = Limits { max_depth: args.depth, max_nodes: node_budget()? };
    let (graph, text) = match args.model {
        Model::Path => {
            let pc = PathCrystal::new(ty, lambda)?;
            let g = generate_graph(&pc, LambdaPath::ground(), limits);
            let width = args.depth.max(pc.ground.period());
            let text = match args.output.format {
                Format::Json => graph_json(&g.graph, ty, lambda, "path", args.depth),
                Format::Dot => g.graph.to_dot(),
                Format::Ascii => graph_outline(&g.graph, |v| pc.render(&g.elems[v], width)),
            };
            (g.graph, text)
        }
        Model::Wall => {
            let wc = WallCrystal::new(ty, lambda)?;
            let g = generate_graph(&wc, wc.ground_wall(), limits);
            let text = match args.output.format {
                Format::Json => graph_json(&g.graph, ty, lambda, "wall", args.depth),
                Format::Dot => g.graph.to_dot(),
                Format::Ascii => graph_outline(&g.graph, |v| {
                    format!("{}\n{}", wc.literal(&g.elems[v]), wc.render_ascii(&g.elems[v]))
                }),
            };
            (g.graph, text)
        }
    };
    emit(&args.output.out, &text)?;
    if graph.truncated {
        return Err(Failure::Truncated(format!("graph truncated at {} nodes", graph.nodes.len())));
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let ty = parse_type(&args.ty)?;
    let budget = node_budget()?;
    let mut reports: Vec<IsoReport> = Vec::new();
    for lambda in lambdas(ty, args.lambda.as_deref())? {
        let mut model = Correspondence::new(ty, lambda)?;
        if args.mutate {
            let mut table = model.table.clone();
            let entries: Vec<_> = table.entries().iter().map(|(k, v)| (*k, *v)).collect();
            let first = entries[0];
            if let Some(other) = entries.iter().find(|(_, v)| *v != first.1) {
                table.swap(first.0, other.0)?;
            }
            model = model.with_table(table)?;
        }
        reports.push(verify_isomorphism(&model, args.depth, budget));
    }
    let text = match args.output.format {
        Format::Ascii => reports
            .iter()
            .map(|r| {
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Truncated => "truncated",
                };
                let mut line =
                    format!("{} {} depth {}: {status} ({} nodes, {} edges)", r.ty, r.lambda, r.depth, r.nodes, r.edges);
                if let Some(word) = &r.counterexample_word {
                    let _ = write!(line, " at [{word}]");
                }
                if let Some(reason) = &r.reason {
                    let _ = write!(line, ": {reason}");
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ if reports.len() == 1 => reports[0].to_json(),
        _ => pretty(&serde_json::to_value(&reports).expect("reports serialize")),
    };
    emit(&args.output.out, &text)?;
    if let Some(r) = reports.iter().find(|r| r.status == Status::Fail) {
        return Err(Failure::Found(format!(
            "{} {}: counterexample [{}]",
            r.ty,
            r.lambda,
            r.counterexample_word.as_deref().unwrap_or("")
        )));
    }
    if reports.iter().any(|r| r.status == Status::Truncated) {
        return Err(Failure::Truncated("node budget exceeded".into()));
    }
    Ok(())
}

fn wall_summary(wc: &WallCrystal, w: &YoungWall, format: Format) -> String {
    let n = wc.num_indices();
    let weight = wc.affine_weight(w);
    let signs: Vec<(usize, usize)> = (0..n).map(|i| (wc.eps(w, i), wc.phi(w, i))).collect();
    let reduced = wc.is_reduced(w);
    let proper = wc.is_proper(w);
    let path = if reduced && proper {
        Correspondence::new(wc.ty(), wc.lambda()).ok().and_then(|m| {
            let p = m.psi(w).ok()?;
            Some(m.paths.render(&p, p.tail().max(m.paths.ground.period())))
        })
    } else {
        None
    };
    match format {
        Format::Json | Format::Dot => pretty(&json!({
            "literal": wc.literal(w),
            "ascii": wc.render_ascii(w),
            "content": weight.content,
            "weight": wc.weight(w),
            "eps": signs.iter().map(|s| s.0).collect::<Vec<_>>(),
            "phi": signs.iter().map(|s| s.1).collect::<Vec<_>>(),
            "reduced": reduced,
            "proper": proper,
            "path": path,
        })),
        Format::Ascii => {
            let mut out = wc.render_ascii(w);
            let _ = writeln!(out, "literal  {}", wc.literal(w));
            let content: Vec<String> = weight.content.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "content  ({})", content.join(","));
            for (i, (e, p)) in signs.iter().enumerate() {
                let _ = writeln!(out, "i={i}  eps {e}  phi {p}");
            }
            let _ = writeln!(out, "reduced  {reduced}");
            let _ = writeln!(out, "proper   {proper}");
            if let Some(path) = path {
                let _ = writeln!(out, "path     {path}");
            }
            out
        }
    }
}

fn cmd_wall(args: WallArgs) -> Result<(), Failure> {
    let ty = parse_type(&args.target.ty)?;
    let lambda = parse_lambda(ty, &args.target.lambda)?;
    let wc = WallCrystal::new(ty, lambda)?;
    let mut w = match &args.start {
        Some(s) => wc.parse_literal(s)?,
        None => wc.ground_wall(),
    };
    let tokens: Vec<String> = args
        .word
        .iter()
        .flat_map(|a| a.split(|c: char| c.is_whitespace() || c == ',').map(str::to_string).collect::<Vec<_>>())
        .filter(|t| !t.is_empty())
        .collect();
    let mut ops = Vec::new();
    for token in &tokens {
        let (raise, digits) = match token.split_at(1) {
            ("e", d) => (true, d),
            ("f", d) => (false, d),
            _ => return Err(Failure::Usage(format!("operator {token:?} is not e<i> or f<i>"))),
        };
        let i: usize = digits.parse().map_err(|_| Failure::Usage(format!("operator {token:?} has no index")))?;
        if i >= wc.num_indices() {
            return Err(Failure::Usage(format!("index {i} is outside the index set of {ty}")));
        }
        ops.push((raise, i));
    }
    for (step, &(raise, i)) in ops.iter().enumerate() {
        let next = if raise { wc.e(&w, i) } else { wc.f(&w, i) };
        w = next.ok_or_else(|| {
            Failure::Found(format!("step {} ({}) returns no wall from {}", step + 1, tokens[step], wc.literal(&w)))
        })?;
    }
    emit(&args.out, &wall_summary(&wc, &w, args.format))
}

fn cmd_character(args: CharacterArgs) -> Result<(), Failure> {
    let ty = parse_type(&args.target.ty)?;
    let lambda = parse_lambda(ty, &args.target.lambda)?;
    let wc = WallCrystal::new(ty, lambda)?;
    let table = wc.character_table(args.max_blocks, node_budget()?);
    let text = match args.output.format {
        Format::Json | Format::Dot => pretty(&json!({
            "type": ty.to_string(),
            "lambda": format!("L{lambda}"),
            "max_blocks": args.max_blocks,
            "totals": table.totals,
            "multiplicities": table
                .multiplicities
                .iter()
                .map(|(content, count)| json!({ "content": content, "count": count }))
                .collect::<Vec<_>>(),
            "truncated": table.truncated,
        })),
        Format::Ascii => {
            let mut out = format!("{ty} L{lambda}, at most {} added blocks\nblocks  walls\n", args.max_blocks);
            for (m, t) in table.totals.iter().enumerate() {
                let _ = writeln!(out, "{m:>6}  {t}");
            }
            out.push_str("content  multiplicity\n");
            for (content, count) in &table.multiplicities {
                let c: Vec<String> = content.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "({})  {count}", c.join(","));
            }
            if table.truncated {
                out.push_str("truncated\n");
            }
            out
        }
    };
    emit(&args.output.out, &text)?;
    if table.truncated {
        return Err(Failure::Truncated("wall enumeration exceeded the node budget".into()));
    }
    Ok(())
}

fn cmd_closure(args: ClosureArgs) -> Result<(), Failure> {
    let ty = parse_type(&args.ty)?;
    let mut results = Vec::new();
    for lambda in lambdas(ty, args.lambda.as_deref())? {
        let wc = WallCrystal::new(ty, lambda)?;
        results.push((lambda, wc.random_closure(args.words, args.length, args.seed)));
    }
    let text = match args.output.format {
        Format::Ascii => results
            .iter()
            .map(|(lambda, r)| {
                format!("{ty} L{lambda}: {} words, {} steps, {} violations", r.words, r.steps, r.violations)
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => pretty(&Value::Array(
            results
                .iter()
                .map(|(lambda, r)| {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    v["type"] = json!(ty.to_string());
                    v["lambda"] = json!(format!("L{lambda}"));
                    v["seed"] = json!(args.seed);
                    v
                })
                .collect(),
        )),
    };
    emit(&args.output.out, &text)?;
    if let Some((lambda, r)) = results.iter().find(|(_, r)| r.violations > 0) {
        return Err(Failure::Found(format!(
            "{ty} L{lambda}: word [{}] leaves the reduced proper walls",
            r.first_violation.as_deref().unwrap_or("")
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Graph(a) => cmd_graph(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Wall(a) => cmd_wall(a),
        Command::Character(a) => cmd_character(a),
        Command::Closure(a) => cmd_closure(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("wallcrys: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
