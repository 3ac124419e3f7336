use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use hadwiger_core::affine::affine_plane;
use hadwiger_core::coloring::{chromatic_number, extract_w_minor};
use hadwiger_core::construction::{
    double_grid_clique_model, equal_chi_clique_model, power_clique_model, product_bound_report,
    product_clique_mechanisms, product_clique_model_with, wn_square_clique_model, ConstructionParams,
    Verdict,
};
use hadwiger_core::graph::graph6::{parse_graph6_str, write_graph6};
use hadwiger_core::graph::io::{export_dot, parse_edge_list};
use hadwiger_core::graph::{generate, Family};
use hadwiger_core::minor::{hadwiger_exact, has_minor, Budget, MinorSearch};
use hadwiger_core::product::{cartesian_power, cartesian_product, prime_factorize};
use hadwiger_core::{Error, Graph, MinorModel};

#[derive(Parser)]
#[command(name = "hadwiger", version, about = "Certified clique minors in Cartesian products")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Search node limit per minor query
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads (results do not depend on this)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for commands that sample random graphs
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suppress the summary line on stderr
    #[arg(long, global = true)]
    quiet: bool,
    /// Skip verification of constructed models
    #[arg(long, global = true, overrides_with = "verify")]
    no_verify: bool,
    /// Verify constructed models (default)
    #[arg(long, global = true, overrides_with = "no_verify")]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A graph given as graph6 (`@path` reads the file) or as an edge-list file.
#[derive(Args)]
struct GraphInput {
    #[arg(long, conflicts_with = "file")]
    graph6: Option<String>,
    /// Edge-list file, one `u v` pair per line
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph (or `random` with --density and --seed)
    Gen {
        family: String,
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Cartesian product of two graphs
    Product {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Cartesian power of a graph
    Power {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        d: usize,
    },
    /// Prime factorization with a coordinate certificate
    Factor {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Exact chromatic number
    Chi {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Hadwiger number with a witness model
    Eta {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Decide whether a pattern is a minor of a host
    MinorCheck {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Verify a model given as JSON (`@path` reads the file)
    VerifyModel {
        #[arg(long)]
        model: String,
    },
    /// Affine plane of order q
    Plane {
        #[arg(long)]
        q: u64,
    },
    /// Clique-minor constructions
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Fan minor of a k-chromatic graph
    WMinor {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Certify Hadwiger's conjecture for product families
    Conjecture {
        #[command(subcommand)]
        which: Conjecture,
    },
    /// All certified bounds on the Hadwiger number of a product
    Report {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// K_N in K_h □ K_l
    KhKl {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        l: usize,
        /// Label the adjacency mechanism of every pair of branch sets
        #[arg(long)]
        diagnose: bool,
    },
    /// K_n in W_n □ W_n
    Wn {
        #[arg(long)]
        n: usize,
    },
    /// K_n in the n x n double grid
    DoubleGrid {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Conjecture {
    /// Two factors of equal chromatic number
    EqualChi {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// A Cartesian power F^d
    Power {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Indeterminate,
}

struct Outcome {
    status: Status,
    payload: Map<String, Value>,
    summary: String,
    dot: Option<(Graph, Option<MinorModel>)>,
}

impl Outcome {
    fn ok(payload: Value, summary: impl Into<String>) -> Self {
        let Value::Object(payload) = payload else {
            unreachable!("payloads are objects")
        };
        Outcome {
            status: Status::Ok,
            payload,
            summary: summary.into(),
            dot: None,
        }
    }

    fn with_dot(mut self, g: Graph, model: Option<MinorModel>) -> Self {
        self.dot = Some((g, model));
        self
    }
}

type CmdResult = Result<Outcome, String>;

fn read_arg(text: &str) -> Result<String, String> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}")),
        None => Ok(text.to_string()),
    }
}

fn parse_graph(text: &str) -> Result<Graph, String> {
    parse_graph6_str(read_arg(text)?.trim()).map_err(|e| e.to_string())
}

impl GraphInput {
    fn load(&self) -> Result<Graph, String> {
        match (&self.graph6, &self.file) {
            (Some(g6), _) => parse_graph(g6),
            (None, Some(path)) => {
                let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
                parse_edge_list(&text).map_err(|e| e.to_string())
            }
            (None, None) => Err("give a graph with --graph6 or --file".into()),
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload types serialize")
}

fn graph_info(g: &Graph) -> Value {
    json!({ "graph": write_graph6(g), "n": g.n(), "m": g.edge_count() })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn err(e: Error) -> String {
    e.to_string()
}

fn random_graph(n: usize, density: f64, seed: u64) -> Result<Graph, String> {
    if !(0.0..=1.0).contains(&density) {
        return Err("density must lie in [0, 1]".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::from_edges(n, edges).map_err(err)
}

fn run(cmd: &Command, opts: &GlobalOpts) -> CmdResult {
    let budget = opts.budget.map(Budget).unwrap_or_default();
    let verify = !opts.no_verify;
    match cmd {
        Command::Gen { family, n, density } => {
            let g = if family == "random" {
                random_graph(*n, *density, opts.seed)?
            } else {
                let kind: Family = family.parse().map_err(err)?;
                generate(kind, &[*n]).map_err(err)?
            };
            let summary = format!("{family}({n}): {} vertices, {} edges", g.n(), g.edge_count());
            Ok(Outcome::ok(graph_info(&g), summary).with_dot(g, None))
        }
        Command::Product { g, h } => {
            let (g, h) = (parse_graph(g)?, parse_graph(h)?);
            let (p, lab) = cartesian_product(&g, &h).map_err(err)?;
            let payload = merge(graph_info(&p), json!({ "factor_sizes": lab.factor_sizes() }));
            let summary = format!("product: {} vertices, {} edges", p.n(), p.edge_count());
            Ok(Outcome::ok(payload, summary).with_dot(p, None))
        }
        Command::Power { input, d } => {
            let g = input.load()?;
            let (p, lab) = cartesian_power(&g, *d).map_err(err)?;
            let payload = merge(graph_info(&p), json!({ "factor_sizes": lab.factor_sizes() }));
            let summary = format!("power {d}: {} vertices, {} edges", p.n(), p.edge_count());
            Ok(Outcome::ok(payload, summary).with_dot(p, None))
        }
        Command::Factor { input } => {
            let g = input.load()?;
            let f = prime_factorize(&g).map_err(err)?;
            let summary = format!("{} prime factor(s)", f.factors.len());
            Ok(Outcome::ok(to_value(&f), summary))
        }
        Command::Chi { input } => {
            let g = input.load()?;
            let (k, coloring) = chromatic_number(&g);
            Ok(Outcome::ok(json!({ "chi": k, "coloring": coloring }), format!("chi = {k}")))
        }
        Command::Eta { input } => {
            let g = input.load()?;
            let r = hadwiger_exact(&g, budget).map_err(err)?;
            let payload = json!({ "eta": r.value, "exact": r.exact, "witness": r.witness });
            let mut out = if r.exact {
                Outcome::ok(payload, format!("eta = {}", r.value))
            } else {
                let mut o = Outcome::ok(payload, format!("eta >= {} (search incomplete)", r.value));
                o.status = Status::Indeterminate;
                o
            };
            out = out.with_dot(g, Some(r.witness));
            Ok(out)
        }
        Command::MinorCheck { host, pattern } => {
            let (host, pattern) = (parse_graph(host)?, parse_graph(pattern)?);
            match has_minor(&host, &pattern, budget).map_err(err)? {
                MinorSearch::Found(m) => {
                    Ok(Outcome::ok(json!({ "found": true, "model": m }), "minor found").with_dot(host, Some(m)))
                }
                MinorSearch::Absent => Ok(Outcome::ok(json!({ "found": false }), "no such minor")),
                MinorSearch::Indeterminate => {
                    let mut o = Outcome::ok(json!({ "found": null }), "search budget exhausted");
                    o.status = Status::Indeterminate;
                    Ok(o)
                }
            }
        }
        Command::VerifyModel { model } => {
            let text = read_arg(model)?;
            let m: MinorModel = serde_json::from_str(&text).map_err(|e| format!("malformed model: {e}"))?;
            let report = m.verify();
            if report.ok {
                Ok(Outcome::ok(to_value(&report), "model verifies"))
            } else {
                Err(format!(
                    "model has {} violation(s): {}",
                    report.violations.len(),
                    to_value(&report.violations)
                ))
            }
        }
        Command::Plane { q } => {
            let pl = affine_plane(*q).map_err(err)?;
            Ok(Outcome::ok(to_value(&pl), format!("affine plane of order {q}")))
        }
        Command::Construct { which } => construct(which, verify),
        Command::WMinor { input } => {
            let g = input.load()?;
            let m = extract_w_minor(&g).map_err(err)?;
            let k = m.pattern().n();
            Ok(Outcome::ok(json!({ "k": k, "model": m }), format!("W_{k} minor")).with_dot(g, Some(m)))
        }
        Command::Conjecture { which } => {
            let (model, chi) = match which {
                Conjecture::EqualChi { g, h } => {
                    let (g, h) = (parse_graph(g)?, parse_graph(h)?);
                    let m = equal_chi_clique_model(&g, &h).map_err(err)?;
                    let chi = m.pattern().n();
                    (m, chi)
                }
                Conjecture::Power { input, d } => {
                    let f = input.load()?;
                    let m = power_clique_model(&f, *d).map_err(err)?;
                    let chi = m.pattern().n();
                    (m, chi)
                }
            };
            let payload = json!({ "chi": chi, "verdict": Verdict::Holds, "witness": model });
            let summary = format!("conjecture holds: K_{chi} minor, chi = {chi}");
            Ok(Outcome::ok(payload, summary).with_dot(model.host().clone(), Some(model)))
        }
        Command::Report { g, h } => {
            let (g, h) = (parse_graph(g)?, parse_graph(h)?);
            let r = product_bound_report(&g, &h, budget).map_err(err)?;
            let summary = format!(
                "eta in [{}, {}]",
                r.best_lower(),
                r.best_upper().map_or("?".into(), |u| u.to_string())
            );
            Ok(Outcome::ok(to_value(&r), summary))
        }
    }
}

fn construct(which: &Construction, verify: bool) -> CmdResult {
    let stamp = |v: bool| if v { "verified" } else { "unverified" };
    match which {
        Construction::KhKl { h, l, diagnose } => {
            let params = ConstructionParams::new(*h, *l).map_err(err)?;
            let m = product_clique_model_with(*h, *l, verify).map_err(err)?;
            let mut payload = json!({
                "params": params,
                "clique": m.pattern().n(),
                "verification": stamp(verify),
                "model": m,
            });
            if *diagnose {
                let labels = product_clique_mechanisms(*h, *l).map_err(err)?;
                let mut counts = std::collections::BTreeMap::new();
                for (_, _, k) in &labels {
                    *counts.entry(to_value(k).as_str().unwrap().to_string()).or_insert(0usize) += 1;
                }
                payload["mechanisms"] = json!(counts);
            }
            let summary = format!("K_{} in K_{h} x K_{l} ({})", m.pattern().n(), stamp(verify));
            Ok(Outcome::ok(payload, summary).with_dot(m.host().clone(), Some(m)))
        }
        Construction::Wn { n } => {
            let m = wn_square_clique_model(*n).map_err(err)?;
            let payload = json!({ "clique": n, "verification": stamp(true), "model": m });
            Ok(Outcome::ok(payload, format!("K_{n} in W_{n} x W_{n}")).with_dot(m.host().clone(), Some(m)))
        }
        Construction::DoubleGrid { n } => {
            let m = double_grid_clique_model(*n).map_err(err)?;
            let payload = json!({ "clique": n, "verification": stamp(true), "model": m });
            Ok(Outcome::ok(payload, format!("K_{n} in the double grid")).with_dot(m.host().clone(), Some(m)))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gen { .. } => "gen",
        Command::Product { .. } => "product",
        Command::Power { .. } => "power",
        Command::Factor { .. } => "factor",
        Command::Chi { .. } => "chi",
        Command::Eta { .. } => "eta",
        Command::MinorCheck { .. } => "minor-check",
        Command::VerifyModel { .. } => "verify-model",
        Command::Plane { .. } => "plane",
        Command::Construct { .. } => "construct",
        Command::WMinor { .. } => "w-minor",
        Command::Conjecture { .. } => "conjecture",
        Command::Report { .. } => "report",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    if let Some(t) = opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("cannot configure thread pool: {e}");
        }
    }
    let name = command_name(&cli.command);
    let result = run(&cli.command, opts).and_then(|out| {
        if opts.format == Format::Dot {
            let (g, model) = out
                .dot
                .as_ref()
                .ok_or_else(|| format!("{name} has no DOT output"))?;
            let text = export_dot(g, model.as_ref()).map_err(err)?;
            Ok((out, Some(text)))
        } else {
            Ok((out, None))
        }
    });
    match result {
        Ok((out, dot)) => {
            match dot {
                Some(text) => print!("{text}"),
                None => {
                    let status = match out.status {
                        Status::Ok => "ok",
                        Status::Indeterminate => "indeterminate",
                    };
                    let mut doc = Map::new();
                    doc.insert("status".into(), json!(status));
                    doc.insert("command".into(), json!(name));
                    doc.extend(out.payload);
                    println!("{}", Value::Object(doc));
                }
            }
            if !opts.quiet {
                eprintln!("{name}: {}", out.summary);
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Indeterminate => ExitCode::from(2),
            }
        }
        Err(e) => {
            println!("{}", json!({ "status": "error", "command": name, "error": e }));
            if !opts.quiet {
                eprintln!("{name}: error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
