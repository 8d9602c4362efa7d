use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use raagpal::factor::{
    factor_centralizer_iota_with, factor_palindromic_with, factor_pure_palindromic_with,
    factor_with_fixed_with, FactorOptions,
};
use raagpal::graph::fixtures;
use raagpal::matrix::{basis_names, phi, phi2};
use raagpal::verify::{self, SuiteReport};
use raagpal::{Automorphism, GroupWord, SimplicialGraph, TorelliBudget};

const SCHEMA: &str = "raagpal/1";

#[derive(Parser)]
#[command(
    name = "raagpal",
    version,
    about = "Palindromic automorphisms of right-angled Artin groups"
)]
struct Cli {
    /// Seed for every random corpus.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the plain result.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph structure: domination classes, block order, symmetries.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Operations on group elements.
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Operations on automorphisms.
    Aut {
        #[command(subcommand)]
        op: AutOp,
    },
    /// Property suites.
    Verify {
        #[command(subcommand)]
        op: VerifyOp,
    },
}

#[derive(Args, Clone)]
struct GraphArg {
    /// Graph JSON file, inline JSON, or a fixture name
    /// (path, edgeless, triangle, square, square-diagonal).
    #[arg(long)]
    graph: String,
}

#[derive(Args, Clone)]
struct WordArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Word such as "a b^-1 c^2".
    #[arg(long)]
    word: String,
}

#[derive(Args, Clone)]
struct AutArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Generator word, JSON object, or a file holding either.
    #[arg(long)]
    aut: String,
}

#[derive(Subcommand)]
enum GraphOp {
    /// Domination classes, block order and symmetry count.
    Info(GraphArg),
}

#[derive(Subcommand)]
enum WordOp {
    /// Canonical reduced form.
    Reduce(WordArgs),
    /// Reversed word, reduced.
    Reverse(WordArgs),
    /// Whether some word for the element is a literal palindrome.
    Palindrome(WordArgs),
    /// Cyclic reduction and basic form.
    Basicform(WordArgs),
    /// Rank and centraliser data.
    Rank(WordArgs),
    /// Clique-palindromic normal form.
    Cpnf(WordArgs),
}

#[derive(Subcommand)]
enum AutOp {
    /// Parse an automorphism and print its vertex images.
    New(AutArgs),
    /// Image of a word.
    Apply {
        #[command(flatten)]
        aut: AutArgs,
        #[arg(long)]
        word: String,
    },
    /// Composite of the given automorphisms, leftmost applied last.
    Compose {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, required = true, num_args = 1)]
        aut: Vec<String>,
    },
    /// Invertibility and the predicate ladder.
    Check(AutArgs),
    /// Integral abelianisation in the block basis.
    Phi(AutArgs),
    /// Abelianisation mod 2.
    Phi2(AutArgs),
    /// Diagram times pure splitting of a palindromic automorphism.
    Split(AutArgs),
    /// Factor into standard generators.
    Factor {
        #[command(flatten)]
        aut: AutArgs,
        /// Comma-separated vertices every emitted generator must fix.
        #[arg(long)]
        fixed: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Depth limit of the Torelli search.
    #[arg(long)]
    budget_depth: Option<usize>,
    /// Node limit of the Torelli search.
    #[arg(long)]
    budget_nodes: Option<usize>,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    /// Graph to test; every fixture when omitted.
    #[arg(long)]
    graph: Option<String>,
    /// Number of samples.
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyOp {
    /// Relator families evaluate to the identity matrix.
    Relators {
        /// Matrix dimension.
        #[arg(long)]
        n: usize,
        /// Keep only relators licensed by this graph.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Block triangular shape of sampled abelianisations.
    Blocks(SuiteArgs),
    /// Purity against the mod-2 image.
    Exactseq(SuiteArgs),
    /// Adjacent domination against non-palindromic centraliser elements.
    Adjdom(SuiteArgs),
    /// Splittings and inversion collisions.
    Splittings(SuiteArgs),
    /// Torelli generators and relator lifts.
    Torelli {
        #[command(flatten)]
        suite: SuiteArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// Outcome of a command before it is rendered.
struct Outcome {
    text: String,
    result: Value,
    holds: bool,
    witnesses: Vec<Value>,
}

impl Outcome {
    fn ok(text: impl Into<String>, result: Value) -> Self {
        Outcome {
            text: text.into(),
            result,
            holds: true,
            witnesses: Vec::new(),
        }
    }
}

fn load_graph(spec: &str) -> anyhow::Result<Arc<SimplicialGraph>> {
    let g = if spec.trim_start().starts_with('{') {
        SimplicialGraph::from_json_str(spec)?
    } else if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        SimplicialGraph::from_json_str(&text)?
    } else if let Some(g) = fixtures::by_name(spec) {
        g
    } else {
        bail!("no graph file or fixture named `{spec}`");
    };
    Ok(Arc::new(g))
}

fn load_aut(g: &Arc<SimplicialGraph>, spec: &str) -> anyhow::Result<Automorphism> {
    let text = if Path::new(spec).is_file() {
        fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    } else {
        spec.to_string()
    };
    let text = text.trim();
    Ok(if text.starts_with('{') {
        Automorphism::from_json_str(g, text)?
    } else {
        Automorphism::parse_generators(g, text)?
    })
}

fn suite_graphs(spec: &Option<String>) -> anyhow::Result<Vec<(String, Arc<SimplicialGraph>)>> {
    match spec {
        Some(s) => Ok(vec![(s.clone(), load_graph(s)?)]),
        None => Ok(fixtures::all()
            .into_iter()
            .map(|(name, g)| (name.to_string(), Arc::new(g)))
            .collect()),
    }
}

fn budget(args: BudgetArgs, base: TorelliBudget) -> TorelliBudget {
    TorelliBudget {
        depth: args.budget_depth.unwrap_or(base.depth),
        nodes: args.budget_nodes.unwrap_or(base.nodes),
        ..base
    }
}

fn images_json(a: &Automorphism) -> Value {
    serde_json::to_value(a.to_json()).expect("serializable")
}

fn images_text(a: &Automorphism) -> String {
    let g = a.graph();
    (0..g.len())
        .map(|v| format!("{} -> {}", g.name(v), a.image(v)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn matrix_text(order: &[String], rows: &[Vec<String>]) -> String {
    let mut lines = vec![order.join(" ")];
    lines.extend(rows.iter().map(|r| r.join(" ")));
    lines.join("\n")
}

fn graph_info(g: &SimplicialGraph) -> anyhow::Result<Outcome> {
    let dd = g.domination();
    let classes: Vec<Value> = dd
        .classes
        .iter()
        .zip(&dd.class_kind)
        .map(|(c, k)| json!({ "vertices": g.set_names(*c), "kind": format!("{k:?}") }))
        .collect();
    let adjacent: Vec<Value> = g
        .adjacent_dominations()
        .map(|(u, v)| json!([g.name(u), g.name(v)]))
        .collect();
    // too many vertices to enumerate symmetries gives null
    let symmetries = g
        .graph_automorphisms(raagpal::graph::DEFAULT_AUTOMORPHISM_BOUND)
        .ok()
        .map(|s| s.len());
    let order = basis_names(g);
    let mut text = format!("vertex order: {}\n", order.join(" "));
    for (c, k) in dd.classes.iter().zip(&dd.class_kind) {
        text += &format!("class {{{}}} {k:?}\n", g.set_names(*c).join(","));
    }
    text += &format!("adjacent domination: {}\n", g.has_adjacent_domination());
    text += &match symmetries {
        Some(k) => format!("graph automorphisms: {k}"),
        None => "graph automorphisms: not enumerated".into(),
    };
    Ok(Outcome::ok(
        text,
        json!({
            "graph": g.to_json(),
            "vertexOrder": order,
            "classes": classes,
            "hasAdjacentDomination": g.has_adjacent_domination(),
            "adjacentDominations": adjacent,
            "graphAutomorphisms": symmetries,
        }),
    ))
}

fn word_op(op: &WordOp) -> anyhow::Result<Outcome> {
    let (WordOp::Reduce(a)
    | WordOp::Reverse(a)
    | WordOp::Palindrome(a)
    | WordOp::Basicform(a)
    | WordOp::Rank(a)
    | WordOp::Cpnf(a)) = op;
    let g = load_graph(&a.graph.graph)?;
    let w = GroupWord::parse(&g, &a.word)?;
    Ok(match op {
        WordOp::Reduce(_) => Outcome::ok(w.to_string(), json!({ "word": w.to_string() })),
        WordOp::Reverse(_) => {
            let r = w.reverse();
            Outcome::ok(r.to_string(), json!({ "word": r.to_string() }))
        }
        WordOp::Palindrome(_) => {
            let is = w.is_palindrome();
            let rep = w
                .palindromic_representative()
                .map(|l| raagpal::word::format_letters(&g, &l));
            let text = match &rep {
                Some(r) => format!("true ({r})"),
                None => "false".into(),
            };
            Outcome::ok(
                text,
                json!({ "palindrome": is, "reverseInvariant": w.is_reverse_invariant(), "representative": rep }),
            )
        }
        WordOp::Basicform(_) => {
            let bf = w.basic_form()?;
            let factors: Vec<Value> = bf
                .factors
                .iter()
                .map(|(root, e)| json!({ "root": root.to_string(), "exponent": e }))
                .collect();
            let parts: Vec<String> = bf
                .factors
                .iter()
                .map(|(root, e)| format!("({root})^{e}"))
                .collect();
            Outcome::ok(
                format!("conjugator {} | {}", bf.conjugator, parts.join(" ")),
                json!({ "conjugator": bf.conjugator.to_string(), "factors": factors }),
            )
        }
        WordOp::Rank(_) => {
            let c = w.rank_and_centralizer()?;
            let factors: Vec<String> = c.factors.iter().map(ToString::to_string).collect();
            Outcome::ok(
                c.rank.to_string(),
                json!({
                    "rank": c.rank,
                    "factors": factors,
                    "link": g.set_names(c.link),
                    "conjugator": c.conjugator.to_string(),
                }),
            )
        }
        WordOp::Cpnf(_) => {
            let form = w.clique_palindromic_form()?;
            let pieces: Vec<String> = form.pieces.iter().map(ToString::to_string).collect();
            Outcome::ok(pieces.join(" | "), json!({ "pieces": pieces }))
        }
    })
}

fn aut_op(op: &AutOp) -> anyhow::Result<Outcome> {
    if let AutOp::Compose { graph, aut } = op {
        let g = load_graph(&graph.graph)?;
        let mut acc = Automorphism::identity(&g);
        for spec in aut {
            acc = acc.compose(&load_aut(&g, spec)?)?;
        }
        return Ok(Outcome::ok(images_text(&acc), images_json(&acc)));
    }
    let args = match op {
        AutOp::New(a)
        | AutOp::Check(a)
        | AutOp::Phi(a)
        | AutOp::Phi2(a)
        | AutOp::Split(a)
        | AutOp::Apply { aut: a, .. }
        | AutOp::Factor { aut: a, .. } => a,
        AutOp::Compose { .. } => unreachable!(),
    };
    let g = load_graph(&args.graph.graph)?;
    let a = load_aut(&g, &args.aut)?;
    let order = basis_names(&g);
    Ok(match op {
        AutOp::New(_) => Outcome::ok(images_text(&a), images_json(&a)),
        AutOp::Apply { word, .. } => {
            let w = a.apply(&GroupWord::parse(&g, word)?)?;
            Outcome::ok(w.to_string(), json!({ "word": w.to_string() }))
        }
        AutOp::Check(_) => {
            let p = a.predicates();
            let value = serde_json::to_value(&p)?;
            let text = [
                ("inCiota", p.in_ciota),
                ("isPalindromic", p.is_palindromic),
                ("isPure", p.is_pure),
                ("isTorelli", p.is_torelli),
                ("isSimple", p.is_simple),
            ]
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect::<Vec<_>>()
            .join("\n");
            Outcome::ok(
                text,
                json!({ "images": images_json(&a), "predicates": value }),
            )
        }
        AutOp::Phi(_) => {
            let m = phi(&a);
            let rows: Vec<Vec<String>> = m
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            Outcome::ok(
                matrix_text(&order, &rows),
                serde_json::to_value(m.to_json(&order))?,
            )
        }
        AutOp::Phi2(_) => {
            let rows = phi2(&a).rows();
            let text_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            Outcome::ok(
                matrix_text(&order, &text_rows),
                json!({ "order": order, "rows": rows }),
            )
        }
        AutOp::Split(_) => {
            let (delta, gamma) = a.split_diagram_pure()?;
            Outcome::ok(
                format!(
                    "delta:\n{}\ngamma:\n{}",
                    images_text(&delta),
                    images_text(&gamma)
                ),
                json!({ "delta": images_json(&delta), "gamma": images_json(&gamma) }),
            )
        }
        AutOp::Factor {
            fixed, budget: b, ..
        } => {
            let opts = FactorOptions {
                torelli: budget(*b, FactorOptions::default().torelli),
            };
            let p = a.predicates();
            let res = match fixed {
                Some(list) => {
                    let vs = list
                        .split(',')
                        .map(|s| g.vertex(s.trim()))
                        .collect::<raagpal::Result<Vec<_>>>()?;
                    factor_with_fixed_with(&a, &vs, opts)?
                }
                None if p.is_pure => factor_pure_palindromic_with(&a, opts)?,
                None if p.is_palindromic => factor_palindromic_with(&a, opts)?,
                None => factor_centralizer_iota_with(&a, opts)?,
            };
            let report = res.to_json(&g);
            let text = raagpal::aut::format_generators(&g, &res.word);
            Outcome::ok(
                if text.is_empty() { "id".into() } else { text },
                serde_json::to_value(report)?,
            )
        }
        AutOp::Compose { .. } => unreachable!(),
    })
}

fn suite_outcome(reports: Vec<(String, SuiteReport)>) -> Outcome {
    let holds = reports.iter().all(|(_, r)| r.holds());
    let text = reports
        .iter()
        .map(|(name, r)| {
            format!(
                "{name} {}: {} {}/{}",
                r.suite,
                if r.holds() { "PASS" } else { "FAIL" },
                r.passed,
                r.checked
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let witnesses = reports
        .iter()
        .flat_map(|(name, r)| {
            r.witnesses
                .iter()
                .map(move |w| json!({ "graph": name, "suite": r.suite, "witness": w }))
        })
        .collect();
    let result = reports
        .into_iter()
        .map(|(name, r)| json!({ "graph": name, "report": r }))
        .collect();
    Outcome {
        text,
        result: Value::Array(result),
        holds,
        witnesses,
    }
}

/// Runs `f` on every graph in its own thread and collects the reports in order.
fn per_graph<F>(graphs: Vec<(String, Arc<SimplicialGraph>)>, f: F) -> anyhow::Result<Outcome>
where
    F: Fn(&Arc<SimplicialGraph>) -> raagpal::Result<SuiteReport> + Sync,
{
    let results: Vec<raagpal::Result<SuiteReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = graphs.iter().map(|(_, g)| s.spawn(|| f(g))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let mut reports = Vec::new();
    for ((name, _), r) in graphs.into_iter().zip(results) {
        reports.push((name, r?));
    }
    Ok(suite_outcome(reports))
}

fn verify_op(op: &VerifyOp, seed: u64) -> anyhow::Result<Outcome> {
    match op {
        VerifyOp::Relators { n, graph } => {
            if *n == 0 {
                bail!("--n must be at least 1");
            }
            let g = graph.as_deref().map(load_graph).transpose()?;
            if let Some(g) = &g {
                if g.len() != *n {
                    bail!(
                        "--n {n} does not match the {} vertices of the graph",
                        g.len()
                    );
                }
            }
            let r = verify::relators(*n, g.as_deref());
            Ok(suite_outcome(vec![(
                graph.clone().unwrap_or_else(|| format!("n={n}")),
                r,
            )]))
        }
        VerifyOp::Blocks(a) => {
            let count = a.count.unwrap_or(200);
            per_graph(suite_graphs(&a.graph)?, |g| {
                Ok(verify::blocks(g, count, seed))
            })
        }
        VerifyOp::Exactseq(a) => {
            let count = a.count.unwrap_or(500);
            per_graph(suite_graphs(&a.graph)?, |g| {
                verify::exactseq(g, count, seed)
            })
        }
        VerifyOp::Adjdom(a) => per_graph(suite_graphs(&a.graph)?, verify::adjdom),
        VerifyOp::Splittings(a) => {
            let count = a.count.unwrap_or(200);
            per_graph(suite_graphs(&a.graph)?, |g| {
                verify::splittings(g, count, seed)
            })
        }
        VerifyOp::Torelli { suite, budget: b } => {
            let bud = budget(*b, TorelliBudget::default());
            per_graph(suite_graphs(&suite.graph)?, |g| verify::torelli(g, bud))
        }
    }
}

fn command_name(cmd: &Command) -> String {
    let (group, op) = match cmd {
        Command::Graph {
            op: GraphOp::Info(_),
        } => ("graph", "info"),
        Command::Word { op } => (
            "word",
            match op {
                WordOp::Reduce(_) => "reduce",
                WordOp::Reverse(_) => "reverse",
                WordOp::Palindrome(_) => "palindrome",
                WordOp::Basicform(_) => "basicform",
                WordOp::Rank(_) => "rank",
                WordOp::Cpnf(_) => "cpnf",
            },
        ),
        Command::Aut { op } => (
            "aut",
            match op {
                AutOp::New(_) => "new",
                AutOp::Apply { .. } => "apply",
                AutOp::Compose { .. } => "compose",
                AutOp::Check(_) => "check",
                AutOp::Phi(_) => "phi",
                AutOp::Phi2(_) => "phi2",
                AutOp::Split(_) => "split",
                AutOp::Factor { .. } => "factor",
            },
        ),
        Command::Verify { op } => (
            "verify",
            match op {
                VerifyOp::Relators { .. } => "relators",
                VerifyOp::Blocks(_) => "blocks",
                VerifyOp::Exactseq(_) => "exactseq",
                VerifyOp::Adjdom(_) => "adjdom",
                VerifyOp::Splittings(_) => "splittings",
                VerifyOp::Torelli { .. } => "torelli",
            },
        ),
    };
    format!("{group} {op}")
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Graph {
            op: GraphOp::Info(a),
        } => graph_info(&*load_graph(&a.graph)?),
        Command::Word { op } => word_op(op),
        Command::Aut { op } => aut_op(op),
        Command::Verify { op } => verify_op(op, cli.seed),
    }
}

fn error_object(err: &anyhow::Error) -> Value {
    let kind = err
        .downcast_ref::<raagpal::Error>()
        .map(raagpal::Error::kind)
        .unwrap_or("InvalidInput");
    json!({ "kind": kind, "message": format!("{err:#}") })
}

fn emit(cli: &Cli, report: &Value) -> anyhow::Result<()> {
    if let Some(path) = &cli.out {
        let text = serde_json::to_string_pretty(report)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = command_name(&cli.command);
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let outcome = run(&cli);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut report = json!({
        "schema": SCHEMA,
        "command": command,
        "args": args,
        "seed": cli.seed,
        "timings": { "totalMs": elapsed_ms },
    });
    let code = match outcome {
        Ok(o) => {
            report["holds"] = json!(o.holds);
            report["result"] = o.result;
            report["witnesses"] = Value::Array(o.witnesses);
            let printed = if cli.json {
                serde_json::to_string_pretty(&report).expect("serializable")
            } else {
                o.text
            };
            // a closed stdout is not an error of the command
            let _ = writeln!(std::io::stdout(), "{printed}");
            if o.holds {
                0
            } else {
                1
            }
        }
        Err(e) => {
            report["error"] = error_object(&e);
            eprintln!(
                "{}",
                serde_json::to_string(&json!({ "error": report["error"] })).expect("serializable")
            );
            2
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("{}", json!({ "error": error_object(&e) }));
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
