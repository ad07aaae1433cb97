//! Argument definitions and the command handlers.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use linfdim::dimension_solver::{
    chromatic_oracle, coloring_gadget, dim_blocks, exact_dim, sup_dim_probe, upper_bound_tau, Budget, DimOutcome,
};
use linfdim::euclid::{rigidity_probe, simplex_check, tri_grid_embedding, tri_in_square_model, verify_l2, L2_TOLERANCE};
use linfdim::flat_cover::{assemble_embedding, incompatible_exact, is_flat, verify_linf, Arc, ArcSet, FlatCovering, FlatVerdict};
use linfdim::graph_core::{gen_family, verify_model, EdgeTag, Family, Generated};
use linfdim::scalar::format_rational;
use linfdim::structure::{
    blocks, bound_functions, contract_spqr, fan_reduction, h_reduction, has_reducible_fan, spqr, spqr_recompose,
    twin_classes, Magnitude, SpqrTree,
};
use linfdim::{EdgeId, Graph, MetricGraph, Rational};
use serde_json::{json, Value};

use crate::dot::{graph_dot, model_dot, spqr_dot};
use crate::error::CliError;
use crate::format::{GraphFile, Loaded, Metadata};
use crate::report::{digest, sig15, RunReport};

/// Largest order `certify` accepts.
pub const CERTIFY_MAX_K: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "linfdim", version, about = "Max-norm dimension of weighted graphs")]
pub struct Cli {
    /// Worker threads; recorded in reports. Defaults to $LINFDIM_THREADS, else 1.
    #[arg(long, global = true, env = "LINFDIM_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Add wall-clock timings to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Also write a Graphviz rendering to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a family graph as a graph file.
    Gen {
        family: String,
        k: usize,
        /// Attach the certificate distances and matching.
        #[arg(long)]
        certificate: bool,
    },
    /// Exact dimension of a graph file with distances.
    Dim {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Solve each block separately.
        #[arg(long)]
        split_blocks: bool,
        /// Recorded in the report; the search itself is deterministic.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check that a family certificate's matching is pairwise incompatible.
    Certify { family: String, k: usize },
    #[command(subcommand)]
    Tools(Tool),
}

#[derive(Debug, Subcommand)]
pub enum Tool {
    /// SPQR tree of a 2-connected graph.
    Spqr {
        #[command(flatten)]
        input: InputArgs,
    },
    /// SPQR tree with maximal S/P subtrees contracted to O-nodes.
    ContractSpqr {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Contract reducible fans until none is left.
    FanReduce {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Trim twin classes of a 3-connected graph.
    HReduce {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        h: usize,
    },
    /// Blocks and cut vertices.
    Blocks {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Evaluate the bound functions.
    Bounds {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long = "m")]
        big_m: Option<u64>,
    },
    /// Colouring gadget of a graph, printed as a graph file.
    GadgetChi {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Euclidean embedding of the triangular grid.
    EuclidTri {
        #[arg(long)]
        r: usize,
        /// Print the rationalized distances as a graph file instead.
        #[arg(long)]
        emit_graph: bool,
    },
    /// Triangular grid as a minor of the square grid.
    ModelTriSquare {
        #[arg(long)]
        k: usize,
    },
    /// Exact max-norm embedding of a graph file with distances.
    Embed {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Also write the coordinates to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Decide whether an arc set is flat.
    CheckFlat {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated arcs, each `tail>head`.
        #[arg(long)]
        arcs: String,
    },
    /// Largest dimension over random distances on a graph.
    Probe {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Best stress of the triangular grid distances in a given dimension.
    RigidityProbe {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        attempts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, or `-` for standard input.
    #[arg(default_value = "-")]
    pub input: String,
    /// Skip the distance-function check.
    #[arg(long)]
    pub no_validate: bool,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = Budget::default().max_class_count)]
    pub max_classes: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_class_count: self.max_classes,
        }
    }
}

/// What a successful run prints, and its exit code (2 when a budget ran
/// out but a partial report was still produced).
#[derive(Debug)]
pub struct Done {
    pub stdout: String,
    pub code: u8,
    /// One line for stderr when `code` is nonzero.
    pub note: Option<String>,
}

impl Done {
    fn ok(stdout: String) -> Self {
        Done { stdout, code: 0, note: None }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    start: Instant,
}

impl Ctx<'_> {
    fn report(&self, command: &str, inputs_digest: String, seed: Option<u64>, results: Value) -> String {
        let timings_ms = self
            .cli
            .timings
            .then(|| BTreeMap::from([("total".to_string(), self.start.elapsed().as_secs_f64() * 1e3)]));
        RunReport {
            command: command.to_string(),
            inputs_digest,
            seed,
            threads: self.cli.threads,
            results,
            timings_ms,
        }
        .render()
    }

    fn dot(&self, render: impl FnOnce() -> String) -> Result<(), CliError> {
        if let Some(path) = &self.cli.dot {
            std::fs::write(path, render()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Done, CliError> {
    if cli.threads == 0 {
        return Err(CliError::Input("--threads must be positive".into()));
    }
    let ctx = Ctx {
        cli,
        start: Instant::now(),
    };
    match &cli.command {
        Command::Gen { family, k, certificate } => cmd_gen(&ctx, family, *k, *certificate),
        Command::Dim {
            input,
            budget,
            split_blocks,
            seed,
        } => cmd_dim(&ctx, stdin, input, budget, *split_blocks, *seed),
        Command::Certify { family, k } => cmd_certify(&ctx, family, *k),
        Command::Tools(tool) => run_tool(&ctx, stdin, tool),
    }
}

fn run_tool(ctx: &Ctx, stdin: &mut dyn Read, tool: &Tool) -> Result<Done, CliError> {
    match tool {
        Tool::Spqr { input } => {
            let (bytes, l) = load(input, stdin)?;
            let t = spqr(&l.graph)?;
            tree_report(ctx, "tools spqr", &bytes, &t)
        }
        Tool::ContractSpqr { input } => {
            let (bytes, l) = load(input, stdin)?;
            let t = contract_spqr(&spqr(&l.graph)?)?;
            tree_report(ctx, "tools contract-spqr", &bytes, &t)
        }
        Tool::FanReduce { input } => {
            let (bytes, l) = load(input, stdin)?;
            let (g, log) = fan_reduction(&l.graph);
            let reductions: Vec<Value> = log
                .iter()
                .map(|r| json!({"center": r.center, "outer": r.outer, "contracted": r.contracted}))
                .collect();
            ctx.dot(|| graph_dot(&g, None, &BTreeSet::new()))?;
            let results = json!({
                "reductions": reductions,
                "vertices": g.n(),
                "edges": g.m(),
                "reducible_left": has_reducible_fan(&g),
                "graph": serde_json::to_value(GraphFile::from_graph(&g, None, None))?,
            });
            Ok(Done::ok(ctx.report("tools fan-reduce", digest([bytes.as_bytes()]), None, results)))
        }
        Tool::HReduce { input, h } => {
            let (bytes, l) = load(input, stdin)?;
            let g = &l.graph;
            let out = h_reduction(g, *h)?;
            let classes: Vec<Value> = twin_classes(g, *h)
                .into_iter()
                .map(|(t, s)| json!({"class": names(g, &t), "neighbourhood": names(g, &s)}))
                .collect();
            ctx.dot(|| graph_dot(&out, None, &BTreeSet::new()))?;
            let results = json!({
                "h": h,
                "twin_classes": classes,
                "tau_before": upper_bound_tau(g).size,
                "tau_after": upper_bound_tau(&out).size,
                "graph": serde_json::to_value(GraphFile::from_graph(&out, None, None))?,
            });
            Ok(Done::ok(ctx.report("tools h-reduce", digest([bytes.as_bytes(), &h.to_le_bytes()]), None, results)))
        }
        Tool::Blocks { input } => {
            let (bytes, l) = load(input, stdin)?;
            let g = &l.graph;
            let bd = blocks(g);
            let list: Vec<Value> = (0..bd.blocks.len())
                .map(|i| {
                    json!({
                        "vertices": names(g, &bd.block_vertices(g, i)),
                        "edges": bd.blocks[i].iter().map(|&e| edge_pair(g, e)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let results = json!({
                "blocks": list,
                "cut_vertices": names(g, &bd.cut_vertices),
                "isolated": names(g, &bd.isolated),
            });
            Ok(Done::ok(ctx.report("tools blocks", digest([bytes.as_bytes()]), None, results)))
        }
        Tool::Bounds { k, p, q, big_m } => {
            let table = bound_functions(*k, *p, *q, *big_m)?;
            let entries: Vec<Value> = table
                .entries
                .iter()
                .map(|(name, v)| json!({"name": name, "value": v.to_string(), "log2": magnitude_log2(v)}))
                .collect();
            let results = json!({"k": table.k, "p": table.p, "q": table.q, "M": table.big_m, "entries": entries});
            let args = format!("{k} {p:?} {q:?} {big_m:?}");
            Ok(Done::ok(ctx.report("tools bounds", digest([args]), None, results)))
        }
        Tool::GadgetChi { input } => {
            let (_, l) = load(input, stdin)?;
            let chi = chromatic_oracle(&l.graph)?;
            let mg = coloring_gadget(&l.graph)?;
            let meta = Metadata {
                family: Some("coloring_gadget".into()),
                extra: BTreeMap::from([("chromatic_number".to_string(), json!(chi))]),
                ..Metadata::default()
            };
            ctx.dot(|| graph_dot(mg.graph(), Some(mg.distances()), &BTreeSet::new()))?;
            Ok(Done::ok(GraphFile::from_metric(&mg, Some(meta)).emit()))
        }
        Tool::EuclidTri { r, emit_graph } => {
            let t = tri_grid_embedding(*r)?;
            let verdict = verify_l2(&t.metric, &t.embedding, L2_TOLERANCE);
            if !verdict.valid {
                return Err(CliError::Verification(format!(
                    "grid embedding misses an edge length by {}",
                    verdict.worst_error
                )));
            }
            let g = t.graph();
            if *emit_graph {
                let mg = t.rationalized(t.default_denominator());
                let meta = Metadata {
                    family: Some(Family::TriGrid.tag().into()),
                    k: Some(*r),
                    ..Metadata::default()
                };
                return Ok(Done::ok(GraphFile::from_metric(&mg, Some(meta)).emit()));
            }
            let simplex = simplex_check(*r)?;
            let coords: BTreeMap<&str, Vec<f64>> = g
                .names()
                .iter()
                .zip(&t.embedding.phi)
                .map(|(name, x)| (name.as_str(), x.iter().map(|&c| sig15(c)).collect()))
                .collect();
            ctx.dot(|| graph_dot(g, None, &BTreeSet::new()))?;
            let results = json!({
                "r": r,
                "dimension": t.embedding.dim(),
                "coordinates": coords,
                "worst_error": sig15(verdict.worst_error),
                "simplex_max_deviation": sig15(simplex.max_deviation),
            });
            Ok(Done::ok(ctx.report("tools euclid-tri", digest([r.to_le_bytes()]), None, results)))
        }
        Tool::ModelTriSquare { k } => {
            let m = tri_in_square_model(*k)?;
            if !verify_model(&m) {
                return Err(CliError::Verification("minor model failed its check".into()));
            }
            let images: BTreeMap<&str, Vec<&str>> = (0..m.pattern.n())
                .map(|a| (m.pattern.name(a), m.image_names(a)))
                .collect();
            ctx.dot(|| model_dot(&m))?;
            let results = json!({
                "k": k,
                "host_vertices": m.host.n(),
                "pattern_vertices": m.pattern.n(),
                "images": images,
            });
            Ok(Done::ok(ctx.report("tools model-tri-square", digest([k.to_le_bytes()]), None, results)))
        }
        Tool::Embed { input, budget, out } => cmd_embed(ctx, stdin, input, budget, out.as_ref()),
        Tool::CheckFlat { input, arcs } => {
            let (bytes, l) = load(input, stdin)?;
            let mg = l.require_metric()?;
            let g = mg.graph();
            let set = parse_arcs(g, arcs)?;
            let results = match is_flat(mg, &set)? {
                FlatVerdict::Flat(p) => {
                    let pot: BTreeMap<&str, String> =
                        g.names().iter().map(String::as_str).zip(p.p.iter().map(format_rational)).collect();
                    json!({"flat": true, "potential": pot})
                }
                FlatVerdict::NotFlat(c) => json!({
                    "flat": false,
                    "cycle": {
                        "vertices": names(g, &c.vertices),
                        "arcs": c.arcs.iter().map(|&a| json!([g.name(a.tail(g)), g.name(a.head(g))])).collect::<Vec<_>>(),
                        "weight": format_rational(&c.weight),
                    }
                }),
            };
            let red: BTreeSet<EdgeId> = set.edges().into_iter().collect();
            ctx.dot(|| graph_dot(g, Some(mg.distances()), &red))?;
            Ok(Done::ok(ctx.report("tools check-flat", digest([bytes.as_bytes(), arcs.as_bytes()]), None, results)))
        }
        Tool::Probe {
            input,
            budget,
            trials,
            seed,
        } => {
            let (bytes, l) = load(input, stdin)?;
            let rep = sup_dim_probe(&l.graph, *trials, *seed, &budget.budget())?;
            let results = json!({
                "best_dimension": rep.best_dimension,
                "dimensions": rep.dimensions,
                "family": rep.family.map(|(f, k)| json!({"family": f.tag(), "k": k})),
                "best_metric": serde_json::to_value(GraphFile::from_metric(&rep.best_metric, None))?,
            });
            let args = format!("{trials} {} {}", budget.max_nodes, budget.max_classes);
            Ok(Done::ok(ctx.report("tools probe", digest([bytes.as_bytes(), args.as_bytes()]), Some(*seed), results)))
        }
        Tool::RigidityProbe { r, dim, attempts, seed } => {
            let p = rigidity_probe(*r, *dim, *attempts, *seed)?;
            let results = json!({
                "r": p.r,
                "target_dim": p.target_dim,
                "best_residual": sig15(p.best_residual),
                "residuals": p.residuals.iter().map(|&x| sig15(x)).collect::<Vec<_>>(),
            });
            let args = format!("{r} {dim} {attempts}");
            Ok(Done::ok(ctx.report("tools rigidity-probe", digest([args]), Some(*seed), results)))
        }
    }
}

fn cmd_gen(ctx: &Ctx, family: &str, k: usize, certificate: bool) -> Result<Done, CliError> {
    let fam: Family = family.parse()?;
    let mut meta = Metadata {
        family: Some(fam.tag().into()),
        k: Some(k),
        ..Metadata::default()
    };
    let file = match gen_family(fam, k, certificate)? {
        Generated::Plain(g) => {
            ctx.dot(|| graph_dot(&g, None, &BTreeSet::new()))?;
            GraphFile::from_graph(&g, None, Some(meta))
        }
        Generated::Certified(c) => {
            let g = c.metric.graph();
            meta.highlight = c
                .matching
                .iter()
                .map(|&e| {
                    let (a, b) = g.edge_names(e);
                    (a.to_string(), b.to_string())
                })
                .collect();
            let red: BTreeSet<EdgeId> = c.matching.iter().copied().collect();
            ctx.dot(|| graph_dot(g, Some(c.metric.distances()), &red))?;
            GraphFile::from_metric(&c.metric, Some(meta))
        }
    };
    Ok(Done::ok(file.emit()))
}

fn cmd_dim(
    ctx: &Ctx,
    stdin: &mut dyn Read,
    input: &InputArgs,
    budget: &BudgetArgs,
    split_blocks: bool,
    seed: Option<u64>,
) -> Result<Done, CliError> {
    let (bytes, l) = load(input, stdin)?;
    let mg = l.require_metric()?;
    let g = mg.graph();
    let b = budget.budget();
    let outcome = if split_blocks { dim_blocks(mg, &b)? } else { exact_dim(mg, &b)? };
    let args = format!("{} {} {split_blocks}", b.max_nodes, b.max_class_count);
    let dg = digest([bytes.as_bytes(), args.as_bytes()]);
    let tau = upper_bound_tau(g).size;
    match outcome {
        DimOutcome::Solved(r) => {
            let red: BTreeSet<EdgeId> = r.lower_bound_witness.iter().copied().collect();
            ctx.dot(|| graph_dot(g, Some(mg.distances()), &red))?;
            let results = json!({
                "status": "solved",
                "dimension": r.dimension,
                "covering": covering_json(g, &r.covering),
                "lower_bound": {
                    "value": r.lower_bound_witness.len(),
                    "witness": r.lower_bound_witness.iter().map(|&e| edge_pair(g, e)).collect::<Vec<_>>(),
                },
                "upper_bound_tau": tau,
                "nodes_explored": r.nodes_explored,
            });
            Ok(Done::ok(ctx.report("dim", dg, seed, results)))
        }
        DimOutcome::BudgetExhausted { lb, ub, nodes_explored } => {
            let results = json!({
                "status": "budget_exhausted",
                "interval": [lb, ub],
                "upper_bound_tau": tau,
                "nodes_explored": nodes_explored,
            });
            Ok(Done {
                stdout: ctx.report("dim", dg, seed, results),
                code: 2,
                note: Some(format!("budget exhausted: dimension in [{lb}, {ub}]")),
            })
        }
    }
}

/// Checks a family certificate; the statement names the proved lower bound.
pub fn certify(family: Family, k: usize) -> Result<(MetricGraph<Rational>, Vec<EdgeId>, usize), CliError> {
    if k > CERTIFY_MAX_K {
        return Err(CliError::Budget(format!("certify supports k up to {CERTIFY_MAX_K}, got {k}")));
    }
    if !family.has_certificate() {
        return Err(CliError::Input(format!("family {family} has no certificate")));
    }
    let Generated::Certified(c) = gen_family(family, k, true)? else {
        unreachable!("certificate requested")
    };
    if !c.metric.validate()?.is_valid() {
        return Err(CliError::Verification("certificate distances are not a distance function".into()));
    }
    if c.matching.len() != k + 1 {
        return Err(CliError::Verification(format!("matching has {} edges, expected {}", c.matching.len(), k + 1)));
    }
    let g = c.metric.graph();
    let mut pairs = 0;
    for (i, &e) in c.matching.iter().enumerate() {
        for &f in &c.matching[i + 1..] {
            if !incompatible_exact(&c.metric, e, f)? {
                let (a, b) = g.edge_names(e);
                let (x, y) = g.edge_names(f);
                return Err(CliError::Verification(format!("edges {a}{b} and {x}{y} are compatible")));
            }
            pairs += 1;
        }
    }
    Ok((c.metric, c.matching, pairs))
}

fn cmd_certify(ctx: &Ctx, family: &str, k: usize) -> Result<Done, CliError> {
    let fam: Family = family.parse()?;
    let (mg, matching, pairs) = certify(fam, k)?;
    let g = mg.graph();
    let red: BTreeSet<EdgeId> = matching.iter().copied().collect();
    ctx.dot(|| graph_dot(g, Some(mg.distances()), &red))?;
    let results = json!({
        "family": fam.tag(),
        "k": k,
        "matching": matching.iter().map(|&e| edge_pair(g, e)).collect::<Vec<_>>(),
        "pairs_checked": pairs,
        "statement": format!("f∞ ≥ {} certified", k + 1),
    });
    let args = format!("{} {k}", fam.tag());
    Ok(Done::ok(ctx.report("certify", digest([args]), None, results)))
}

fn cmd_embed(
    ctx: &Ctx,
    stdin: &mut dyn Read,
    input: &InputArgs,
    budget: &BudgetArgs,
    out: Option<&PathBuf>,
) -> Result<Done, CliError> {
    let (bytes, l) = load(input, stdin)?;
    let mg = l.require_metric()?;
    let g = mg.graph();
    let dg = digest([bytes.as_bytes()]);
    let r = match exact_dim(mg, &budget.budget())? {
        DimOutcome::Solved(r) => r,
        DimOutcome::BudgetExhausted { lb, ub, nodes_explored } => {
            let results = json!({"status": "budget_exhausted", "interval": [lb, ub], "nodes_explored": nodes_explored});
            return Ok(Done {
                stdout: ctx.report("tools embed", dg, None, results),
                code: 2,
                note: Some(format!("budget exhausted: dimension in [{lb}, {ub}]")),
            });
        }
    };
    let emb = assemble_embedding(mg, &r.covering).map_err(|d| CliError::Verification(d.to_string()))?;
    if !verify_linf(mg, &emb).is_valid() {
        return Err(CliError::Verification("assembled embedding misses an edge length".into()));
    }
    let coords: BTreeMap<&str, Vec<String>> = g
        .names()
        .iter()
        .zip(&emb.phi)
        .map(|(name, x)| (name.as_str(), x.iter().map(format_rational).collect()))
        .collect();
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&json!({"dimension": r.dimension, "coordinates": coords}))? + "\n";
        std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let results = json!({"status": "solved", "dimension": r.dimension, "coordinates": coords});
    Ok(Done::ok(ctx.report("tools embed", dg, None, results)))
}

fn tree_report(ctx: &Ctx, command: &str, bytes: &str, t: &SpqrTree) -> Result<Done, CliError> {
    let h = &t.host;
    if spqr_recompose(t)?.edge_name_set() != h.edge_name_set() {
        return Err(CliError::Verification("tree does not recompose to the input".into()));
    }
    let nodes: Vec<Value> = t
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let real: Vec<Value> = node.minor.real_edges().map(|e| json!([h.name(e.u), h.name(e.v)])).collect();
            let virt: Vec<Value> = node
                .minor
                .edges
                .iter()
                .filter_map(|e| match e.tag {
                    EdgeTag::Virtual(link) => Some(json!([h.name(e.u), h.name(e.v), link])),
                    EdgeTag::Real => None,
                })
                .collect();
            json!({
                "id": i,
                "kind": node.kind.tag(),
                "vertices": names(h, &node.minor.vertices),
                "real_edges": real,
                "virtual_edges": virt,
            })
        })
        .collect();
    let edges: Vec<Value> = t
        .tree_edges
        .iter()
        .map(|te| json!({"a": te.a, "b": te.b, "link": te.link, "ends": [h.name(te.ends.0), h.name(te.ends.1)]}))
        .collect();
    ctx.dot(|| spqr_dot(t))?;
    let results = json!({
        "kinds": t.kinds().iter().map(|k| k.tag()).collect::<Vec<_>>(),
        "nodes": nodes,
        "tree_edges": edges,
        "diameter": t.diameter(),
    });
    Ok(Done::ok(ctx.report(command, digest([bytes.as_bytes()]), None, results)))
}

fn read_text(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn load(input: &InputArgs, stdin: &mut dyn Read) -> Result<(String, Loaded), CliError> {
    let text = read_text(&input.input, stdin)?;
    let loaded = GraphFile::parse(&text)?.load(!input.no_validate)?;
    Ok((text, loaded))
}

fn names(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.name(v).to_string()).collect()
}

fn edge_pair(g: &Graph, e: EdgeId) -> Value {
    let (a, b) = g.edge_names(e);
    json!([a, b])
}

fn covering_json(g: &Graph, cov: &FlatCovering) -> Value {
    cov.sets
        .iter()
        .map(|s| s.describe(g).into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>())
        .collect()
}

fn magnitude_log2(m: &Magnitude) -> Value {
    m.log2().map_or(Value::Null, |l| json!(sig15(l)))
}

fn parse_arcs(g: &Graph, text: &str) -> Result<ArcSet, CliError> {
    let mut arcs = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = part
            .split_once('>')
            .ok_or_else(|| CliError::Input(format!("arc {part:?} is not of the form tail>head")))?;
        let arc = Arc::by_names(g, a.trim(), b.trim())
            .ok_or_else(|| CliError::Input(format!("no edge between {a} and {b}")))?;
        arcs.push(arc);
    }
    Ok(ArcSet::from_arcs(arcs))
}
