use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use endspace::catalog;
use endspace::cuts::{Engine, USpec};
use endspace::graph_model::{truncate, Presentation};
use endspace::oracle::{self, MatrixEntry};
use endspace::spaces::{summarize, Resolution, Shape, SpaceKind, SpaceSummary};
use endspace::transforms::{self, TransformKind};
use endspace::verify::{self, Status, Theorem};

#[derive(Parser)]
#[command(name = "endspace", version, about = "Ends, edge-ends and directions of presented infinite graphs")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shipped example graphs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Points, partitions and compactness of one end or direction space.
    Analyze {
        /// Presentation file or catalog name.
        graph: String,
        #[arg(long, value_enum, default_value_t = SpaceArg::EdgeEnds)]
        space: SpaceArg,
        /// Vertex set for u-ends: all, timid, all-but:v,... or core=...;gadgets=...
        #[arg(long = "U", value_name = "SPEC")]
        u: Option<String>,
        /// Largest separator size examined (default: automatic).
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Applies a graph construction and prints it with its correspondence maps.
    Transform {
        graph: String,
        #[arg(long, value_enum)]
        op: OpArg,
    },
    /// Runs one verification suite; exits 1 when a check fails.
    Verify {
        graph: String,
        #[arg(long, value_parser = theorem_id)]
        theorem: Theorem,
    },
    /// Compares symbolic answers with the truncation oracle.
    Oracle {
        graph: String,
        /// JSON list of queries, or `builtin` for the generated matrix.
        #[arg(long, default_value = "builtin")]
        queries: String,
    },
    /// Writes the depth-n truncation as DOT.
    Truncate {
        graph: String,
        #[arg(short = 'n', long = "depth")]
        n: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Ends,
    EdgeEnds,
    TimidEnds,
    UEnds,
    EdgeDirections,
    UDirections,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Line,
    Hgraph,
    Completion,
    Quotient,
    Subdivide,
    #[value(name = "timid2edge")]
    TimidToEdge,
}

fn theorem_id(s: &str) -> Result<Theorem, String> {
    Theorem::parse(s).map_err(|_| {
        let ids: Vec<&str> = Theorem::ALL.iter().map(|t| t.id()).collect();
        format!("expected one of {}", ids.join(", "))
    })
}

const SCHEMA_HELP: &str = "\
A presentation is a JSON object:
  name            string
  core            {\"vertices\": [id, ...], \"edges\": [[a, b], ...]}
  gadgets         [{\"id\", \"kind\": Ray|OmegaClique|StarOfRays,
                    \"attachments\": [{\"host\", \"mode\": FirstOnly|All}], \"core_members\", \"chained\"}]
  families        [{\"id\", \"pattern\": SingleVertex|Ray|StarOfRays|{\"graph\": {...}},
                    \"host\", \"per_copy_edges\", \"chained\", \"chain_edge\"}]
  connected_hint  bool
Run `endspace catalog show three_cliques` for a complete example.";

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A verification check failed: exit 1.
    Verification,
}

impl From<endspace::Error> for Failure {
    fn from(e: endspace::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Catalog { action } => catalog_cmd(action, cli.json),
        Command::Analyze {
            graph,
            space,
            u,
            resolution,
        } => analyze(&load(graph)?, *space, u.as_deref(), *resolution, cli.json),
        Command::Transform { graph, op } => transform(&load(graph)?, *op, cli.json),
        Command::Verify { graph, theorem } => verify_cmd(&load(graph)?, *theorem, cli.json),
        Command::Oracle { graph, queries } => oracle_cmd(&load(graph)?, queries, cli.json),
        Command::Truncate { graph, n, dot } => truncate_cmd(&load(graph)?, *n, dot.as_deref(), cli.json),
    }
}

/// A presentation from a file path, or else from the catalog.
fn load(graph: &str) -> Result<Presentation, Failure> {
    let path = Path::new(graph);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{graph}: {e}")))?;
        return Presentation::parse(&text).map_err(|e| Failure::Input(format!("{graph}: {e}\n\n{SCHEMA_HELP}")));
    }
    catalog::get(graph).map_err(|_| {
        Failure::Input(format!(
            "{graph} is neither a file nor a catalog entry ({})",
            catalog::names().join(", ")
        ))
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialise"));
}

fn catalog_cmd(action: &CatalogAction, as_json: bool) -> Outcome {
    match action {
        CatalogAction::List => {
            if as_json {
                print_json(&json!(catalog::names()));
            } else {
                for name in catalog::names() {
                    println!("{name}");
                }
            }
        }
        CatalogAction::Show { name } => {
            let doc = catalog::document(name)?;
            let v: Value = serde_json::from_str(doc).map_err(|e| Failure::Input(e.to_string()))?;
            print_json(&v);
        }
    }
    Ok(())
}

fn space_kind(space: SpaceArg, u: Option<&str>) -> Result<SpaceKind, Failure> {
    let u = u.map(USpec::parse).transpose()?;
    let needs_u = matches!(space, SpaceArg::UEnds | SpaceArg::UDirections);
    if needs_u && u.is_none() {
        return Err(Failure::Input("--space u-ends and u-directions need --U".into()));
    }
    if !needs_u && u.is_some() {
        return Err(Failure::Input("--U only applies to u-ends and u-directions".into()));
    }
    Ok(match (space, u) {
        (SpaceArg::Ends, _) => SpaceKind::End,
        (SpaceArg::EdgeEnds, _) => SpaceKind::EdgeEnd,
        (SpaceArg::TimidEnds, _) => SpaceKind::TimidEnd,
        (SpaceArg::EdgeDirections, _) => SpaceKind::EdgeDirection,
        (SpaceArg::UEnds, Some(u)) => SpaceKind::UEnd(u),
        (SpaceArg::UDirections, Some(u)) => SpaceKind::UDirection(u),
        _ => unreachable!("U presence checked above"),
    })
}

fn analyze(p: &Presentation, space: SpaceArg, u: Option<&str>, resolution: Option<usize>, as_json: bool) -> Outcome {
    let kind = space_kind(space, u)?;
    let res = resolution.map_or(Resolution::Auto, Resolution::UpTo);
    let s = summarize(&Arc::new(Engine::new(p)), kind, res, &[])?;
    if as_json {
        print_json(&s.to_json());
    } else {
        print_summary(&s);
    }
    Ok(())
}

fn print_summary(s: &SpaceSummary) {
    let count = s.count().map_or("ω".to_string(), |k| k.to_string());
    let noun = if s.count() == Some(1) { "point" } else { "points" };
    println!("{} space of {}: {count} {noun}", s.kind, s.presentation);
    for pt in &s.points {
        let shape = match pt.shape {
            Shape::Singleton => "",
            Shape::OmegaFamily => " (ω family)",
        };
        println!("  {}{shape}", pt.name);
    }
    for (x, y) in &s.accumulation {
        println!("  {} accumulates on {}", s.points[*x].name, s.points[*y].name);
    }
    println!("discrete: {}", s.is_discrete());
    println!("compact: {}", s.is_compact());
    for w in s.non_compact_witnesses() {
        println!("  unbounded: {w}");
    }
}

fn transform(p: &Presentation, op: OpArg, as_json: bool) -> Outcome {
    let kind = match op {
        OpArg::Line => TransformKind::LineGraph,
        OpArg::Hgraph => TransformKind::HGraph,
        OpArg::Completion => TransformKind::Completion,
        OpArg::Quotient => TransformKind::Quotient,
        OpArg::Subdivide => TransformKind::Subdivision,
        OpArg::TimidToEdge => TransformKind::TimidToEdge,
    };
    let r = transforms::apply(kind, p)?;
    let v = r.to_json();
    if as_json {
        print_json(&v);
        return Ok(());
    }
    println!("{} of {}", r.kind.name(), p.name);
    if r.is_identity() {
        println!("output equals the input");
    }
    for note in &r.notes {
        println!("  {note}");
    }
    println!("vertex map: {}", v["vertex_map"]);
    println!("separator map: {}", v["separator_map"]);
    println!("point map: {}", r.point_rule);
    println!("output:");
    print_json(&v["output"]);
    Ok(())
}

fn verify_cmd(p: &Presentation, t: Theorem, as_json: bool) -> Outcome {
    let r = verify::run(t, p)?;
    if as_json {
        print_json(&r.to_json());
    } else {
        for c in &r.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            println!("{tag}  {}: {}", c.name, c.detail);
        }
        println!("{} on {}: {}", r.theorem, r.graph, if r.pass() { "pass" } else { "FAIL" });
    }
    if r.pass() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn oracle_cmd(p: &Presentation, queries: &str, as_json: bool) -> Outcome {
    let ps = vec![p.clone()];
    let entries = if queries == "builtin" {
        oracle::query_matrix(&ps)
    } else {
        let text = fs::read_to_string(queries).map_err(|e| Failure::Input(format!("{queries}: {e}")))?;
        let all: Vec<MatrixEntry> =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{queries}: {e}")))?;
        all.into_iter().filter(|e| e.presentation == p.name).collect()
    };
    let rows = oracle::run_matrix(&entries, &ps, oracle::max_depth_from_env(), oracle::DEFAULT_WINDOW)?;
    let mismatches = rows.iter().filter(|r| !r.agree).count();
    if as_json {
        print_json(&json!({
            "presentation": p.name,
            "queries": rows.len(),
            "mismatches": mismatches,
            "rows": oracle::rows_json(&rows),
        }));
    } else {
        for r in rows.iter().filter(|r| !r.agree) {
            println!("mismatch: {}", serde_json::to_string(&r.query).expect("queries serialise"));
        }
        println!("{}: {} queries, {mismatches} mismatches", p.name, rows.len());
    }
    if mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn truncate_cmd(p: &Presentation, n: u64, dot: Option<&Path>, as_json: bool) -> Outcome {
    let t = truncate(p, n);
    let name = format!("{}_{n}", p.name);
    if let Some(path) = dot {
        fs::write(path, t.graph.to_dot(&name)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if as_json {
        print_json(&t.graph.to_json());
    } else if dot.is_none() {
        print!("{}", t.graph.to_dot(&name));
    } else {
        println!(
            "{}: {} vertices, {} edges at depth {n}",
            p.name,
            t.graph.vertex_count(),
            t.graph.edge_count()
        );
    }
    Ok(())
}
