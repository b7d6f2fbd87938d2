//! Command-line front end for `readk`.
//!
//! [`run`] takes the argument vector (without the program name) and returns
//! what the process would print and its exit status, so the whole command
//! surface can be driven in-process.

use std::fs;
use std::io::Read;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use readk::cover::{
    chain_cover_recursive, cover_to_formula_checked, extend_cover_to_duplicate, grid_chessboard_cover,
    r_lower_bound, r_upper_bound, validate_cover, Biclique, BicliqueCover,
};
use readk::cover_search::min_local_cover_decide_with;
use readk::formula::{make_nonredundant, parse_formula, Formula, Handle};
use readk::graph::{chain_graph, complete_bipartite, duplicate_vertex, grid_graph, Graph, GraphJson};
use readk::search::{
    decide_readability_with, find_2mult_for_edge, has_read_k_extension_with, main_theorem_bound, peel_step,
    Decision, EnumerateOptions, PeelOutcome, SearchBudget, SearchStats,
};
use readk::sop::{self, csop, equivalent, graph_of_function, is_normal, phi_of_graph, read1_check, SopForm};
use readk::{Error, Exec};

/// How a command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A definite negative answer: "no", `false`, an invalid cover, a
    /// rejected precondition.
    Negative,
    Usage,
    /// A budget ran out before the answer was settled.
    Unknown,
    Internal,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
            Status::Usage => 2,
            Status::Unknown => 3,
            Status::Internal => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    fn ok(stdout: String) -> Self {
        CommandResult { status: Status::Success, stdout, stderr: String::new() }
    }

    fn with(status: Status, stdout: String) -> Self {
        CommandResult { status, stdout, stderr: String::new() }
    }

    fn truth(b: bool, stdout: String) -> Self {
        Self::with(if b { Status::Success } else { Status::Negative }, stdout)
    }
}

#[derive(Parser, Debug)]
#[command(name = "readk", version, about = "Read-k formulas, chain graphs and biclique covers")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest formula size (leaves) the exhaustive search may reach.
    #[arg(long, global = true, value_name = "N")]
    budget_leaves: Option<usize>,
    /// Cap on candidates generated by a search.
    #[arg(long, global = true, value_name = "N")]
    budget_candidates: Option<u64>,
    /// Time limit for a search in milliseconds.
    #[arg(long, global = true, value_name = "N")]
    budget_ms: Option<u64>,
}

impl GlobalOpts {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(n) = self.budget_leaves {
            b.max_leaves = n;
        }
        if let Some(n) = self.budget_candidates {
            b.max_candidates = n;
        }
        if let Some(ms) = self.budget_ms {
            b.time_limit = Duration::from_millis(ms);
        }
        b
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse and normalize a formula.
    Parse {
        formula: String,
        /// Also print the parse tree.
        #[arg(long)]
        tree: bool,
    },
    /// Render a formula given as JSON (or text) in canonical text form.
    Render { formula: String },
    /// Sum of products after absorption.
    Sop { formula: String },
    /// Complete sum of products, before absorption.
    Csop { formula: String },
    /// Logical equivalence of two formulas.
    Equiv { left: String, right: String },
    /// Rewrite (a+p)*(a+q) to a+p*q until none remain.
    Nonredundant { formula: String },
    /// Whether the formula extends the chain graph G(n).
    Extension { formula: String, n: usize },
    /// Maximal-clique function of a graph.
    Phi { graph: Option<String> },
    /// Co-occurrence graph of a formula's SOP.
    Cooccurrence { formula: String },
    /// Generate a graph.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Structural predicates.
    #[command(name = "graph-check", subcommand)]
    GraphCheck(CheckCmd),
    /// Local biclique covers.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Exhaustive searches and proof steps.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Bounds on chain readability and cover numbers for G(n).
    Bounds { n: usize },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Chain graph G(n): x_i y_j is an edge iff i <= j.
    Chain { n: usize },
    /// Grid of rows x cols squares.
    Grid { rows: usize, cols: usize },
    /// Complete bipartite graph K_{m,n}.
    Kbip { m: usize, n: usize },
    /// Add a vertex with the same neighbours as `vertex`.
    Duplicate { vertex: String, fresh: String, graph: Option<String> },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Trianglefree { graph: Option<String> },
    Cograph { graph: Option<String> },
    /// Read-1 test; takes a graph (its maximal-clique function) or a formula.
    Read1 { input: Option<String> },
    /// Whether the SOP equals the maximal-clique function of its graph.
    Normal { formula: String },
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    /// Halving cover of G(n); takes n or a chain graph on stdin.
    Recursive { n: Option<usize> },
    /// Chessboard cover of a grid.
    Chessboard { rows: usize, cols: usize },
    /// Validate a cover bundle; prints (valid, multiplicity).
    Validate {
        bundle: Option<String>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        cover: Option<String>,
    },
    /// Turn `x1 x2 | y2 y3 ; x3 | y3` into a cover bundle for a graph.
    Tojson {
        text: String,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Compile a cover bundle to a formula.
    Toformula { bundle: Option<String> },
    /// Extend a cover bundle to a duplicated vertex.
    Duplicate { vertex: String, fresh: String, bundle: Option<String> },
    /// Exact search for a cover of multiplicity at most k.
    Decide { k: usize, graph: Option<String> },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Is the (triangle-free) graph read-k?
    Readability {
        k: usize,
        graph: Option<String>,
        /// Skip the cover shortcut and enumerate formulas only.
        #[arg(long)]
        enumerate_only: bool,
    },
    /// Does G(n) have a read-k extension?
    Extension {
        n: usize,
        k: usize,
        #[arg(long)]
        enumerate_only: bool,
    },
    /// Locate the 2-mult subformula for edge x_i y_j.
    #[command(name = "2mult")]
    TwoMult { formula: String, i: usize, j: usize },
    /// Replace the subformula at a handle by TRUE.
    Peel { formula: String, handle: String, n: usize },
}

/// Runs a command, reading standard input only if the command asks for it.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut stdin = Stdin::Process;
    run_inner(argv, &mut stdin)
}

/// Runs a command with `stdin` standing in for standard input.
pub fn run_with_stdin<I, S>(argv: I, stdin: &str) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut src = Stdin::Given(Some(stdin.to_string()));
    run_inner(argv, &mut src)
}

enum Stdin {
    Process,
    Given(Option<String>),
}

impl Stdin {
    fn take(&mut self) -> Result<String, Failure> {
        match self {
            Stdin::Process => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
                *self = Stdin::Given(None);
                Ok(s)
            }
            Stdin::Given(s) => s.take().ok_or_else(|| Failure::usage("standard input already consumed")),
        }
    }
}

struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Failure { status: Status::Usage, message: m.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::TermBudget { .. } | Error::VariableBudget { .. } => Status::Unknown,
            Error::Precondition(_) | Error::NotTriangleFree | Error::NotBipartite => Status::Negative,
            Error::Internal(_) => Status::Internal,
            _ => Status::Usage,
        };
        Failure { status, message: e.to_string() }
    }
}

fn run_inner<I, S>(argv: I, stdin: &mut Stdin) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = std::iter::once("readk".to_string()).chain(argv.into_iter().map(Into::into)).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let status = if e.use_stderr() { Status::Usage } else { Status::Success };
            return if status == Status::Success {
                CommandResult::ok(text)
            } else {
                CommandResult { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut ctx = Ctx { opts: cli.opts, stdin };
    match ctx.dispatch(cli.cmd) {
        Ok(mut r) => {
            if !r.stdout.is_empty() && !r.stdout.ends_with('\n') {
                r.stdout.push('\n');
            }
            r
        }
        Err(f) => CommandResult { status: f.status, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

struct Ctx<'a> {
    opts: GlobalOpts,
    stdin: &'a mut Stdin,
}

type Out = Result<CommandResult, Failure>;

impl Ctx<'_> {
    fn dispatch(&mut self, cmd: Cmd) -> Out {
        match cmd {
            Cmd::Parse { formula, tree } => {
                let f = self.formula(&formula)?;
                let occ = f.occurrences();
                if self.opts.json {
                    let counts: serde_json::Map<String, Value> =
                        occ.counts.iter().map(|(v, c)| (v.clone(), json!(c))).collect();
                    return self.json(json!({
                        "formula": f.to_string(),
                        "tree": f.tree_string(),
                        "occurrences": counts,
                        "read_index": occ.read_index,
                    }));
                }
                let mut s = f.to_string();
                if tree {
                    s = format!("{s}\n{}", f.tree_string());
                }
                Ok(CommandResult::ok(s))
            }
            Cmd::Render { formula } => {
                let text = self.text(&formula)?;
                let f = if text.trim_start().starts_with('{') {
                    serde_json::from_str::<Formula>(&text).map_err(|e| Failure::usage(format!("formula json: {e}")))?.normalize()
                } else {
                    parse_formula(&text).map_err(Error::from)?
                };
                self.emit(f.to_string(), json!(f.to_string()))
            }
            Cmd::Sop { formula } => {
                let s = sop::sop(&self.formula(&formula)?)?;
                self.emit(s.to_string(), sop_json(&s))
            }
            Cmd::Csop { formula } => {
                let terms = csop(&self.formula(&formula)?)?;
                let text: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                let j: Vec<Value> = terms.iter().map(|t| json!(t.vars())).collect();
                self.emit(text.join(" + "), Value::Array(j))
            }
            Cmd::Equiv { left, right } => {
                let (f, g) = (self.formula(&left)?, self.formula(&right)?);
                let eq = equivalent(&f, &g)?;
                self.predicate(eq)
            }
            Cmd::Nonredundant { formula } => {
                let f = make_nonredundant(&self.formula(&formula)?);
                self.emit(f.to_string(), json!(f.to_string()))
            }
            Cmd::Extension { formula, n } => {
                let f = self.formula(&formula)?;
                let v = sop::extension_violation(&sop::sop(&f)?, n)?;
                if self.opts.json {
                    let out = json!({ "extension": v.is_none(), "violation": v.as_ref().map(|v| v.term().to_string()) });
                    return Ok(CommandResult::truth(v.is_none(), out.to_string()));
                }
                match v {
                    None => Ok(CommandResult::ok("true".into())),
                    Some(v) => Ok(CommandResult::with(Status::Negative, format!("false: {v}"))),
                }
            }
            Cmd::Phi { graph } => {
                let g = self.graph(graph.as_deref())?;
                let s = phi_of_graph(&g);
                self.emit(s.to_string(), sop_json(&s))
            }
            Cmd::Cooccurrence { formula } => {
                let g = graph_of_function(&sop::sop(&self.formula(&formula)?)?);
                Ok(CommandResult::ok(g.to_json_string()))
            }
            Cmd::Gen(g) => self.gen(g),
            Cmd::GraphCheck(c) => self.check(c),
            Cmd::Cover(c) => self.cover(c),
            Cmd::Search(s) => self.search(s),
            Cmd::Bounds { n } => {
                let (up, low, k) = (r_upper_bound(n)?, r_lower_bound(n)?, main_theorem_bound(n)?);
                let text = format!("r_upper: {up}, r_lower: {low}, main_theorem_k: {k}");
                self.emit(text, json!({ "r_upper": up, "r_lower": low, "main_theorem_k": k }))
            }
        }
    }

    fn gen(&mut self, cmd: GenCmd) -> Out {
        let g = match cmd {
            GenCmd::Chain { n } => chain_graph(n)?,
            GenCmd::Grid { rows, cols } => grid_graph(rows, cols)?,
            GenCmd::Kbip { m, n } => complete_bipartite(m, n)?,
            GenCmd::Duplicate { vertex, fresh, graph } => duplicate_vertex(&self.graph(graph.as_deref())?, &vertex, &fresh)?,
        };
        Ok(CommandResult::ok(g.to_json_string()))
    }

    fn check(&mut self, cmd: CheckCmd) -> Out {
        match cmd {
            CheckCmd::Trianglefree { graph } => {
                let b = self.graph(graph.as_deref())?.is_triangle_free();
                self.predicate(b)
            }
            CheckCmd::Cograph { graph } => {
                let g = self.graph(graph.as_deref())?;
                match g.find_induced_p4() {
                    None => self.predicate(true),
                    Some(p) if self.opts.json => {
                        Ok(CommandResult::with(Status::Negative, json!({ "value": false, "induced_p4": p }).to_string()))
                    }
                    Some(p) => Ok(CommandResult::with(Status::Negative, format!("false: induced P4 {}", p.join("-")))),
                }
            }
            CheckCmd::Read1 { input } => {
                let raw = match input {
                    Some(i) => self.raw_graph_or_text(&i)?,
                    None => self.stdin.take()?,
                };
                let s = if looks_like_json(&raw) {
                    phi_of_graph(&parse_graph(&raw)?)
                } else {
                    sop::sop(&parse_formula(raw.trim()).map_err(Error::from)?)?
                };
                self.predicate(read1_check(&s))
            }
            CheckCmd::Normal { formula } => {
                let s = sop::sop(&self.formula(&formula)?)?;
                self.predicate(is_normal(&s))
            }
        }
    }

    fn cover(&mut self, cmd: CoverCmd) -> Out {
        match cmd {
            CoverCmd::Recursive { n } => {
                let n = match n {
                    Some(n) => n,
                    None => {
                        let g = self.graph(None)?;
                        chain_order_of(&g)?
                    }
                };
                let c = chain_cover_recursive(n)?;
                Ok(CommandResult::ok(bundle_json(&chain_graph(n)?, &c)))
            }
            CoverCmd::Chessboard { rows, cols } => {
                let c = grid_chessboard_cover(rows, cols)?;
                Ok(CommandResult::ok(bundle_json(&grid_graph(rows, cols)?, &c)))
            }
            CoverCmd::Validate { bundle, graph, cover } => {
                let (g, c) = match (graph, cover) {
                    (Some(g), Some(c)) => {
                        let g = self.graph(Some(&g))?;
                        let c = BicliqueCover::from_json_str(&self.raw_graph_or_text(&c)?)?;
                        (g, c)
                    }
                    (None, None) => self.bundle(bundle.as_deref())?,
                    _ => return Err(Failure::usage("--graph and --cover go together")),
                };
                let r = validate_cover(&g, &c)?;
                let out = if self.opts.json {
                    json!({
                        "valid": r.valid,
                        "multiplicity": r.multiplicity,
                        "defect": r.defect.as_ref().map(|d| d.to_string()),
                    })
                    .to_string()
                } else {
                    let mut s = format!("({}, {})", r.valid, r.multiplicity);
                    if let Some(d) = &r.defect {
                        s.push_str(&format!("\n{d}"));
                    }
                    s
                };
                Ok(CommandResult::truth(r.valid, out))
            }
            CoverCmd::Tojson { text, graph } => {
                let g = self.graph(graph.as_deref())?;
                let c = parse_cover_text(&self.text(&text)?)?;
                validate_cover(&g, &c)?;
                Ok(CommandResult::ok(bundle_json(&g, &c)))
            }
            CoverCmd::Toformula { bundle } => {
                let (g, c) = self.bundle(bundle.as_deref())?;
                let f = cover_to_formula_checked(&g, &c)?;
                self.emit(f.to_string(), json!(f.to_string()))
            }
            CoverCmd::Duplicate { vertex, fresh, bundle } => {
                let (g, c) = self.bundle(bundle.as_deref())?;
                let d = duplicate_vertex(&g, &vertex, &fresh)?;
                let c2 = extend_cover_to_duplicate(&c, &vertex, &fresh)?;
                Ok(CommandResult::ok(bundle_json(&d, &c2)))
            }
            CoverCmd::Decide { k, graph } => {
                let g = self.graph(graph.as_deref())?;
                let res = min_local_cover_decide_with(&g, k, &self.opts.budget(), Exec::default())?;
                let text_w = |c: &BicliqueCover| c.to_string();
                let json_w = |c: &BicliqueCover| serde_json::to_value(c).expect("cover json");
                Ok(self.decision(&res.decision, res.stats, text_w, json_w))
            }
        }
    }

    fn search(&mut self, cmd: SearchCmd) -> Out {
        let budget = self.opts.budget();
        match cmd {
            SearchCmd::Readability { k, graph, enumerate_only } => {
                let g = self.graph(graph.as_deref())?;
                let opts = EnumerateOptions { use_cover_witness: !enumerate_only, ..Default::default() };
                let res = decide_readability_with(&g, k, &budget, &opts)?;
                Ok(self.decision(&res.decision, res.stats, |f| f.to_string(), |f| json!(f.to_string())))
            }
            SearchCmd::Extension { n, k, enumerate_only } => {
                let opts = EnumerateOptions { use_cover_witness: !enumerate_only, ..Default::default() };
                let res = has_read_k_extension_with(n, k, &budget, &opts)?;
                Ok(self.decision(&res.decision, res.stats, |f| f.to_string(), |f| json!(f.to_string())))
            }
            SearchCmd::TwoMult { formula, i, j } => {
                let f = self.formula(&formula)?;
                let t = find_2mult_for_edge(&f, i, j)?;
                let sub = f.subformula(&t.handle).expect("handle from search").to_string();
                let j = json!({
                    "handle": t.handle.to_string(),
                    "subformula": sub,
                    "x_factor": t.x_factor,
                    "y_factor": t.y_factor,
                });
                self.emit(format!("{} {}", t.handle, sub), j)
            }
            SearchCmd::Peel { formula, handle, n } => {
                let f = self.formula(&formula)?;
                let h: Handle = handle.parse()?;
                match peel_step(&f, &h, n)? {
                    PeelOutcome::Peeled { psi, read_before, read_after } => {
                        let j = json!({
                            "outcome": "peeled",
                            "psi": psi.to_string(),
                            "read_before": read_before,
                            "read_after": read_after,
                        });
                        self.emit(psi.to_string(), j)
                    }
                    PeelOutcome::Degenerate => {
                        let j = json!({ "outcome": "degenerate", "psi": "TRUE" });
                        self.emit("degenerate: the peeled formula is TRUE".into(), j)
                    }
                }
            }
        }
    }

    fn decision<W>(
        &self,
        d: &Decision<W>,
        stats: SearchStats,
        text: impl Fn(&W) -> String,
        json_w: impl Fn(&W) -> Value,
    ) -> CommandResult {
        let status = match d {
            Decision::Yes(_) => Status::Success,
            Decision::No => Status::Negative,
            Decision::Unknown(_) => Status::Unknown,
        };
        let stdout = if self.opts.json {
            let mut o = json!({ "outcome": d.label(), "stats": stats });
            match d {
                Decision::Yes(w) => o["witness"] = json_w(w),
                Decision::Unknown(r) => o["reason"] = json!(r),
                Decision::No => {}
            }
            o.to_string()
        } else {
            match d {
                Decision::Yes(w) => format!("yes: {}", text(w)),
                Decision::No => "no".into(),
                Decision::Unknown(r) => format!("unknown: {r}"),
            }
        };
        let stderr = format!("candidates: {}, elapsed: {} ms\n", stats.candidates, stats.elapsed.as_millis());
        CommandResult { status, stdout, stderr }
    }

    fn emit(&self, text: String, j: Value) -> Out {
        Ok(CommandResult::ok(if self.opts.json { j.to_string() } else { text }))
    }

    fn json(&self, j: Value) -> Out {
        Ok(CommandResult::ok(j.to_string()))
    }

    fn predicate(&self, b: bool) -> Out {
        let s = if self.opts.json { json!({ "value": b }).to_string() } else { b.to_string() };
        Ok(CommandResult::truth(b, s))
    }

    /// Text argument: `-` is stdin, `@path` a file, anything else literal.
    fn text(&mut self, arg: &str) -> Result<String, Failure> {
        if arg == "-" {
            self.stdin.take()
        } else if let Some(p) = arg.strip_prefix('@') {
            fs::read_to_string(p).map_err(|e| Failure::usage(format!("{p}: {e}")))
        } else {
            Ok(arg.to_string())
        }
    }

    fn formula(&mut self, arg: &str) -> Result<Formula, Failure> {
        let t = self.text(arg)?;
        Ok(parse_formula(t.trim()).map_err(Error::from)?)
    }

    /// JSON argument: `-` is stdin, inline if it starts with `{` or `[`,
    /// otherwise a file path (`@` optional).
    fn raw_graph_or_text(&mut self, arg: &str) -> Result<String, Failure> {
        if arg == "-" {
            return self.stdin.take();
        }
        if looks_like_json(arg) {
            return Ok(arg.to_string());
        }
        let p = arg.strip_prefix('@').unwrap_or(arg);
        fs::read_to_string(p).map_err(|e| Failure::usage(format!("{p}: {e}")))
    }

    fn graph(&mut self, arg: Option<&str>) -> Result<Graph, Failure> {
        let raw = match arg {
            Some(a) => self.raw_graph_or_text(a)?,
            None => self.stdin.take()?,
        };
        parse_graph(&raw)
    }

    fn bundle(&mut self, arg: Option<&str>) -> Result<(Graph, BicliqueCover), Failure> {
        let raw = match arg {
            Some(a) => self.raw_graph_or_text(a)?,
            None => self.stdin.take()?,
        };
        let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::usage(format!("bundle json: {e}")))?;
        let g: GraphJson = serde_json::from_value(v.get("graph").cloned().ok_or_else(|| Failure::usage("bundle lacks `graph`"))?)
            .map_err(|e| Failure::usage(format!("bundle graph: {e}")))?;
        let c: BicliqueCover = serde_json::from_value(v.get("cover").cloned().ok_or_else(|| Failure::usage("bundle lacks `cover`"))?)
            .map_err(|e| Failure::usage(format!("bundle cover: {e}")))?;
        Ok((Graph::from_json(&g)?, c))
    }
}

fn looks_like_json(s: &str) -> bool {
    matches!(s.trim_start().chars().next(), Some('{') | Some('['))
}

fn parse_graph(raw: &str) -> Result<Graph, Failure> {
    let trimmed = raw.trim();
    if !looks_like_json(trimmed) {
        return Err(Failure::usage("expected graph JSON"));
    }
    let v: Value = serde_json::from_str(trimmed).map_err(|e| Failure::usage(format!("graph json: {e}")))?;
    // a cover bundle also carries its graph
    let gv = v.get("graph").cloned().unwrap_or(v);
    let gj: GraphJson = serde_json::from_value(gv).map_err(|e| Failure::usage(format!("graph json: {e}")))?;
    Ok(Graph::from_json(&gj)?)
}

fn sop_json(s: &SopForm) -> Value {
    Value::Array(s.terms().iter().map(|t| json!(t.vars())).collect())
}

fn bundle_json(g: &Graph, c: &BicliqueCover) -> String {
    json!({ "graph": g.to_json(), "cover": c }).to_string()
}

/// `n` for a graph equal to `G(n)`.
fn chain_order_of(g: &Graph) -> Result<usize, Failure> {
    let n = g.vertex_count() / 2;
    let expect = chain_graph(n.max(1))?;
    if n >= 1 && g.vertices() == expect.vertices() && g.edges() == expect.edges() {
        Ok(n)
    } else {
        Err(Failure::usage("input graph is not a chain graph G(n)"))
    }
}

/// `x1 x2 | y2 y3 ; x3 | y3`: bicliques separated by `;` (or newlines),
/// sides by `|`, vertices by spaces or commas.
fn parse_cover_text(text: &str) -> Result<BicliqueCover, Failure> {
    let mut out = Vec::new();
    for part in text.split([';', '\n']).map(str::trim).filter(|p| !p.is_empty()) {
        let sides: Vec<&str> = part.split('|').collect();
        if sides.len() != 2 {
            return Err(Failure::usage(format!("biclique `{part}` needs exactly one `|`")));
        }
        let names = |s: &str| -> Vec<String> {
            s.split([' ', ',', '\t']).filter(|w| !w.is_empty()).map(String::from).collect()
        };
        out.push(Biclique::new(names(sides[0]), names(sides[1])));
    }
    Ok(BicliqueCover::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> (i32, String) {
        let r = run_with_stdin(args.iter().copied(), "");
        (r.exit_code(), r.stdout.trim_end().to_string())
    }

    fn piped(args: &[&str], input: &str) -> (i32, String) {
        let r = run_with_stdin(args.iter().copied(), input);
        (r.exit_code(), r.stdout.trim_end().to_string())
    }

    #[test]
    fn formula_commands() {
        assert_eq!(out(&["sop", "a1*(a1+a2)"]), (0, "a1".into()));
        assert_eq!(out(&["csop", "a1*(a1+a2)"]), (0, "a1 + a1*a2".into()));
        assert_eq!(out(&["sop", "--json", "a1*(a1+a2)"]), (0, r#"[["a1"]]"#.into()));
        assert_eq!(out(&["equiv", "(a1+a2)*(a1+a3)", "a1+a2*a3"]), (0, "true".into()));
        assert_eq!(out(&["equiv", "a1", "a2"]), (1, "false".into()));
        assert_eq!(out(&["nonredundant", "(a1+a2)*(a1+a3)"]), (0, "a1+a2*a3".into()));
        assert_eq!(
            out(&["parse", "--tree", "a1*(a2+a3*a4)*(a2+a5)"]).1,
            "a1*(a2+a5)*(a2+a3*a4)\nProd[a1, Sum[a2, a5], Sum[a2, Prod[a3, a4]]]"
        );
        assert_eq!(piped(&["sop", "-"], "x1*y1\n"), (0, "x1*y1".into()));
    }

    #[test]
    fn render_from_json() {
        let j = serde_json::to_string(&parse_formula("a*(b+c)").unwrap()).unwrap();
        assert_eq!(out(&["render", &j]), (0, "a*(b+c)".into()));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(out(&["sop", "a1+"]).0, 2);
        assert_eq!(out(&["frobnicate"]).0, 2);
        assert_eq!(out(&["bounds", "0"]).0, 2);
    }

    #[test]
    fn bounds() {
        assert_eq!(out(&["bounds", "15"]), (0, "r_upper: 5, r_lower: 3, main_theorem_k: 2".into()));
        assert_eq!(out(&["bounds", "--json", "15"]).1, r#"{"main_theorem_k":2,"r_lower":3,"r_upper":5}"#);
    }

    #[test]
    fn pipeline() {
        let (_, g) = out(&["gen", "chain", "3"]);
        let (_, b) = piped(&["cover", "recursive"], &g);
        assert_eq!(piped(&["cover", "validate"], &b), (0, "(true, 2)".into()));
        assert_eq!(piped(&["cover", "validate", "--json"], &b).1, r#"{"defect":null,"multiplicity":2,"valid":true}"#);
        assert_eq!(piped(&["cover", "toformula"], &b).1, "x1*(y1+y2)+x3*y3+(x1+x2)*(y2+y3)");
    }

    #[test]
    fn cover_text() {
        let (_, g) = out(&["gen", "chain", "2"]);
        let (code, b) = out(&["cover", "tojson", "x1 x2 | y1 y2", "--graph", &g]);
        assert_eq!(code, 0);
        let (code, v) = piped(&["cover", "validate"], &b);
        assert_eq!(code, 1);
        assert!(v.starts_with("(false, 1)"));
    }

    #[test]
    fn searches() {
        let (_, g2) = out(&["gen", "chain", "2"]);
        assert_eq!(out(&["search", "readability", "1", &g2]), (1, "no".into()));
        assert_eq!(out(&["search", "extension", "2", "1"]), (1, "no".into()));
        assert_eq!(out(&["search", "extension", "1", "1"]), (0, "yes: x1*y1".into()));
        let (code, s) = out(&["--json", "search", "readability", "2", &g2]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["outcome"], "yes");
        assert!(v["stats"]["candidates"].is_u64());
        let (code, s) = out(&["search", "2mult", "x1*(y1+y2)+x2*y2", "2", "2"]);
        assert_eq!((code, s.as_str()), (0, "1 x2*y2"));
        assert_eq!(out(&["search", "peel", "x1*y1", ".", "1"]).1, "degenerate: the peeled formula is TRUE");
        assert_eq!(out(&["--budget-candidates", "1", "search", "extension", "3", "1", "--enumerate-only"]).0, 3);
    }
}
