//! The `bip` command line: single computations plus batch property suites.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 property-suite
//! failure. JSON output has sorted keys and, unless `--timing` is given, is
//! byte-identical across runs with the same inputs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{parse_suites, run_checks, CheckConfig, CheckReport, Kind};
use crate::interval::{generalized_lift, inversion_minimal_transpositions, lifting_relations_hold, BruhatInterval};
use crate::parabolic::{parabolic_bip_vertices, parabolic_faces_check, ParabolicError, ParabolicSubset};
use crate::perm::{Permutation, Transposition};
use crate::polytope::{
    affine_span_equations, bip_inequalities, block_partition, chain_graph_is_forest, crown_type, diameter,
    dimension, enumerate_faces, f_vector, face_graph, is_toric, minkowski_check, normal_cone, rank_sum_system,
    vertices, Equality, Inequality, MatroidConvention, PolytopeDescription, PolytopeError,
};
use crate::rpoly::{extend_to_special_matching, generalized_r_identity, r_polynomial, r_tilde, Extension, IntPolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_SUITE_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "bip", version, about = "Bruhat interval polytopes, generalized lifting and R-polynomials")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for `check`.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elements, atoms and coatoms of [u, v], with a generalized-lift witness.
    Interval {
        u: Permutation,
        v: Permutation,
        /// Also list every inversion-minimal transposition and its lifting relations.
        #[arg(long)]
        lift: bool,
    },
    /// Properties of the polytope Q_{u,v}; with no flag, --dim.
    Polytope(PolytopeArgs),
    /// The R-polynomial R_{u,v}.
    Rpoly {
        u: Permutation,
        v: Permutation,
        /// Both sides of R_{u,v} = q R_{ut,vt} + (q-1) R_{u,vt} for t = "i,k".
        #[arg(long, value_name = "T", value_parser = parse_transposition)]
        generalized: Option<Transposition>,
        /// The R-tilde polynomial as well.
        #[arg(long)]
        tilde: bool,
        /// Try to extend M(v) = vt, M(u) = ut to a special matching of [u, v].
        #[arg(long, value_name = "T", value_parser = parse_transposition)]
        extend: Option<Transposition>,
    },
    /// Run property suites: lifting, dimension, faces, rpoly, parabolic, minkowski or all.
    Check {
        suite: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Number of random comparable pairs; all pairs when absent.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Parabolic polytope Q^J_{u,v}. J lists fundamental-weight indices;
    /// W_J is generated by the s_i with i not in J, and v must be minimal in vW_J.
    Parabolic {
        u: Permutation,
        v: Permutation,
        #[arg(long = "J", value_name = "LIST")]
        j: String,
        /// Weight points p(z) (the default).
        #[arg(long)]
        vertices: bool,
        /// LP search for faces, checked against the faces theorem.
        #[arg(long)]
        faces_check: bool,
    },
}

#[derive(Debug, Args)]
pub struct PolytopeArgs {
    pub u: Permutation,
    pub v: Permutation,
    /// Dimension, partition B_{u,v} and affine span.
    #[arg(long)]
    pub dim: bool,
    /// Vertex list.
    #[arg(long)]
    pub vertices: bool,
    /// Inequality description of Q_{u,v}.
    #[arg(long)]
    pub ineq: bool,
    /// The raw rank-sum system Σx = n(n-1)/2, x_A ≤ Σ_k r_k(A) for one matroid convention.
    #[arg(long, value_name = "CONVENTION", value_parser = parse_convention)]
    pub raw: Option<MatroidConvention>,
    /// f-vector and every face as an interval [x, y].
    #[arg(long)]
    pub faces: bool,
    /// Toric criterion, chain-forest test and crown type.
    #[arg(long)]
    pub toric: bool,
    #[arg(long)]
    pub diameter: bool,
    /// Face graph and normal cone of Q_{x,y} inside Q_{u,v}.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub normal_cone: Option<Vec<Permutation>>,
    /// Compare with the Minkowski sum of matroid polytopes (n ≤ 4).
    #[arg(long)]
    pub minkowski: bool,
}

fn parse_transposition(s: &str) -> Result<Transposition, String> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = body.split(|c| c == ',' || c == ' ').filter(|p| !p.is_empty()).collect();
    let [i, k] = parts[..] else {
        return Err(format!("expected a transposition like 2,4, got {s:?}"));
    };
    let (i, k) = (i.parse::<usize>().map_err(|e| e.to_string())?, k.parse::<usize>().map_err(|e| e.to_string())?);
    Transposition::unordered(i, k).map_err(|e| e.to_string())
}

fn parse_convention(s: &str) -> Result<MatroidConvention, String> {
    s.parse::<MatroidConvention>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// What a command produced: JSON `inputs`/`results` and the text rendering.
struct Document {
    command: &'static str,
    inputs: Value,
    results: Value,
    text: String,
    timing_ms: Option<u128>,
    suite_failed: bool,
}

impl Document {
    fn new(command: &'static str, inputs: Value) -> Self {
        Document { command, inputs, results: json!({}), text: String::new(), timing_ms: None, suite_failed: false }
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        self.results[key] = serde_json::to_value(value).expect("serializable");
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut doc = json!({ "command": self.command, "inputs": self.inputs, "results": self.results });
                if let Some(ms) = self.timing_ms {
                    doc["timing"] = json!({ "elapsed_ms": ms });
                }
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            }
        }
    }
}

/// Result of one invocation, for in-process callers and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                let first = rendered.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
                Outcome { code, stdout: String::new(), stderr: error_line(requested_format(&args), "usage", first) }
            };
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(doc) => {
            let code = if doc.suite_failed { EXIT_SUITE_FAILED } else { EXIT_OK };
            Outcome { code, stdout: doc.render(format), stderr: String::new() }
        }
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: error_line(format, e.kind(), e.message()) },
    }
}

// Best effort: clap failed, but the caller may still have asked for JSON errors.
fn requested_format(args: &[OsString]) -> Format {
    let args: Vec<_> = args.iter().map(|a| a.to_string_lossy()).collect();
    let json = args.windows(2).any(|w| w[0] == "--format" && w[1] == "json") || args.iter().any(|a| a == "--format=json");
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

fn error_line(format: Format, kind: &str, message: &str) -> String {
    let message = message.replace('\n', " ");
    match format {
        Format::Text => format!("error[{kind}]: {message}\n"),
        Format::Json => json!({ "error": { "kind": kind, "message": message } }).to_string() + "\n",
    }
}

fn dispatch(cli: Cli) -> Result<Document, CliError> {
    match cli.command {
        Command::Interval { u, v, lift } => cmd_interval(u, v, lift),
        Command::Polytope(args) => cmd_polytope(args),
        Command::Rpoly { u, v, generalized, tilde, extend } => cmd_rpoly(u, v, generalized, tilde, extend),
        Command::Check { suite, n, sample, seed, timing } => cmd_check(&suite, n, sample, seed, cli.jobs, timing),
        Command::Parabolic { u, v, j, vertices, faces_check } => cmd_parabolic(u, v, &j, vertices, faces_check),
    }
}

fn same_size(u: &Permutation, v: &Permutation) -> Result<(), CliError> {
    if u.n() != v.n() {
        return Err(CliError::Usage(format!("{u} and {v} have different sizes")));
    }
    Ok(())
}

fn interval(u: Permutation, v: Permutation) -> Result<BruhatInterval, CliError> {
    same_size(&u, &v)?;
    BruhatInterval::new(u, v).map_err(domain)
}

fn words(ps: &[Permutation]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn cmd_interval(u: Permutation, v: Permutation, lift: bool) -> Result<Document, CliError> {
    let iv = interval(u, v)?;
    let mut doc = Document::new("interval", json!({ "u": u, "v": v, "lift": lift }));
    doc.set("size", iv.len());
    doc.set("rank", iv.rank());
    doc.set("elements", iv.elements());
    let covers = |cs: Vec<(Permutation, Transposition)>| -> Value {
        cs.into_iter().map(|(z, t)| json!({ "element": z, "t": t })).collect()
    };
    doc.set("atoms", covers(iv.atoms()));
    doc.set("coatoms", covers(iv.coatoms()));
    doc.line(format!("[{u}, {v}]: {} elements, rank {}", iv.len(), iv.rank()));
    doc.line(format!("elements: {}", words(iv.elements()).join(" ")));
    let fmt_covers = |cs: Vec<(Permutation, Transposition)>| -> String {
        cs.into_iter().map(|(z, t)| format!("{z} {t}")).collect::<Vec<_>>().join(", ")
    };
    doc.line(format!("atoms: {}", fmt_covers(iv.atoms())));
    doc.line(format!("coatoms: {}", fmt_covers(iv.coatoms())));
    if u != v {
        let l = generalized_lift(&u, &v).map_err(domain)?;
        doc.set("lift", l);
        doc.line(format!("lift: t={} ut={} vt={}", l.t, l.ut, l.vt));
    }
    if lift {
        let ts = inversion_minimal_transpositions(&u, &v).unwrap_or_default();
        let rows: Vec<Value> = ts
            .iter()
            .map(|&t| json!({ "t": t, "ut": u.times(t), "vt": v.times(t), "relations_hold": lifting_relations_hold(&u, &v, t) }))
            .collect();
        doc.set("inversion_minimal", rows);
        for &t in &ts {
            doc.line(format!(
                "minimal {t}: {u} ≤ {} ⋖ {v}, {u} ⋖ {} ≤ {v}: {}",
                v.times(t),
                u.times(t),
                if lifting_relations_hold(&u, &v, t) { "holds" } else { "FAILS" }
            ));
        }
    }
    Ok(doc)
}

fn term_list(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match c {
            1 => format!("x{}", i + 1),
            _ => format!("{c}x{}", i + 1),
        })
        .collect();
    terms.join(" + ")
}

fn equality_text(e: &Equality) -> String {
    format!("{} = {}", term_list(&e.coeffs), e.rhs)
}

fn inequality_text(ineq: &Inequality) -> String {
    let lhs: Vec<String> = ineq.subset.iter().map(|i| format!("x{i}")).collect();
    format!("{} <= {}", lhs.join(" + "), ineq.rhs)
}

fn describe_system(doc: &mut Document, key: &str, heading: &str, d: &PolytopeDescription) {
    doc.set(key, json!({ "equalities": d.equalities, "inequalities": d.inequalities }));
    doc.line(format!("{heading}: {} equalities, {} inequalities", d.equalities.len(), d.inequalities.len()));
    for e in &d.equalities {
        doc.line(format!("  {}", equality_text(e)));
    }
    for i in &d.inequalities {
        doc.line(format!("  {}", inequality_text(i)));
    }
}

fn cmd_polytope(a: PolytopeArgs) -> Result<Document, CliError> {
    let (u, v) = (a.u, a.v);
    let iv = interval(u, v)?;
    let any = a.vertices || a.ineq || a.raw.is_some() || a.faces || a.toric || a.diameter || a.normal_cone.is_some() || a.minkowski;
    let mut doc = Document::new("polytope", json!({ "u": u, "v": v }));
    let pe = |e: PolytopeError| domain(e);
    if a.dim || !any {
        let part = block_partition(&u, &v).map_err(pe)?;
        let dim = dimension(&u, &v).map_err(pe)?;
        let span = affine_span_equations(&u, &v).map_err(pe)?;
        doc.set("dimension", json!({ "dimension": dim, "partition": part, "affine_span": span }));
        doc.line(format!("dimension {dim}, partition {part}"));
        for e in &span {
            doc.line(format!("  {}", equality_text(e)));
        }
    }
    if a.vertices {
        let vs = vertices(&iv);
        doc.set("vertices", &vs);
        doc.line(format!("vertices ({}):", vs.len()));
        for x in &vs {
            doc.line(format!("  {x:?}"));
        }
    }
    if a.ineq {
        let d = bip_inequalities(&iv).map_err(pe)?;
        describe_system(&mut doc, "inequalities", "inequality description", &d);
    }
    if let Some(c) = a.raw {
        let d = rank_sum_system(&iv, c).map_err(pe)?;
        describe_system(&mut doc, "rank_sum_system", &format!("rank-sum system ({})", c.name()), &d);
    }
    if a.faces {
        let faces = enumerate_faces(&iv);
        let f = f_vector(&faces);
        doc.set("faces", json!({ "f_vector": f, "faces": faces }));
        doc.line(format!("f-vector {f:?}"));
        for face in &faces {
            doc.line(format!("  dim {}: [{}, {}]", face.dim, face.x, face.y));
        }
    }
    if a.toric {
        let toric = is_toric(&u, &v).map_err(pe)?;
        let forest = chain_graph_is_forest(&iv).map_err(pe)?;
        let crown = if iv.rank() == 3 { crown_type(&iv).map_err(pe)? } else { None };
        doc.set("toric", json!({ "toric": toric, "chain_graph_forest": forest, "crown": crown }));
        let crown_text = crown.map(|k| format!(", {k}-crown")).unwrap_or_default();
        doc.line(format!("toric {toric}, chain graph forest {forest}{crown_text}"));
    }
    if a.diameter {
        let d = diameter(&iv);
        doc.set("diameter", json!({ "diameter": d, "rank": iv.rank() }));
        doc.line(format!("diameter {d} (rank {})", iv.rank()));
    }
    if let Some(xy) = &a.normal_cone {
        let (x, y) = (xy[0], xy[1]);
        same_size(&x, &u)?;
        same_size(&y, &u)?;
        let g = face_graph(&x, &y, &u, &v).map_err(pe)?;
        let cone = normal_cone(&x, &y, &u, &v).ok();
        let is_face = g.is_acyclic();
        doc.set("normal_cone", json!({ "x": x, "y": y, "is_face": is_face, "graph": g, "cone": cone }));
        doc.line(format!("[{x}, {y}] face: {is_face}; graph nodes {} edges {:?}", g.nodes, g.edges));
        if let Some(c) = cone {
            doc.line(format!("  witness ω = {:?}", c.witness));
        }
    }
    if a.minkowski {
        let verdicts: Vec<_> =
            MatroidConvention::ALL.iter().map(|&c| minkowski_check(&iv, c)).collect::<Result<_, _>>().map_err(pe)?;
        for m in &verdicts {
            doc.line(format!("minkowski {}: {}", m.convention.name(), if m.equal { "equal" } else { "different" }));
        }
        doc.set("minkowski", verdicts);
    }
    Ok(doc)
}

fn poly_json(p: &IntPolynomial) -> Value {
    json!({ "polynomial": p.to_string(), "coeffs": p })
}

fn cmd_rpoly(
    u: Permutation,
    v: Permutation,
    generalized: Option<Transposition>,
    tilde: bool,
    extend: Option<Transposition>,
) -> Result<Document, CliError> {
    same_size(&u, &v)?;
    let mut doc = Document::new("rpoly", json!({ "u": u, "v": v, "generalized": generalized, "tilde": tilde, "extend": extend }));
    let r = r_polynomial(&u, &v);
    doc.set("r", poly_json(&r));
    doc.line(format!("R = {r}"));
    if tilde {
        let t = r_tilde(&u, &v);
        doc.set("r_tilde", poly_json(&t));
        doc.line(format!("R~ = {t}"));
    }
    if let Some(t) = generalized {
        let sides = generalized_r_identity(&u, &v, t).map_err(domain)?;
        doc.set(
            "generalized",
            json!({
                "t": t, "lhs": poly_json(&sides.lhs), "rhs": poly_json(&sides.rhs),
                "r_ut_vt": poly_json(&sides.r_ut_vt), "r_u_vt": poly_json(&sides.r_u_vt), "holds": sides.holds(),
            }),
        );
        doc.line(format!("R_{{u,v}} = {}", sides.lhs));
        doc.line(format!("q R_{{ut,vt}} + (q-1) R_{{u,vt}} = {}", sides.rhs));
        doc.line(format!("identity {}", if sides.holds() { "holds" } else { "FAILS" }));
    }
    if let Some(t) = extend {
        let ext = extend_to_special_matching(&u, &v, t).map_err(domain)?;
        match &ext {
            Extension::Found { matching } => {
                doc.line(format!("special matching found ({} elements)", matching.len()));
                for (a, b) in matching.iter().filter(|(a, b)| a < b) {
                    doc.line(format!("  {a} <-> {b}"));
                }
            }
            Extension::Failed { witness } => {
                doc.line("no special matching extends the seeds; forced:");
                for (a, b) in &witness.forced {
                    doc.line(format!("  M({a}) = {b}"));
                }
                doc.line(format!("contradiction: {}", witness.contradiction));
            }
        }
        doc.set("extension", ext);
    }
    Ok(doc)
}

fn cmd_check(suite: &str, n: usize, sample: Option<usize>, seed: u64, jobs: usize, timing: bool) -> Result<Document, CliError> {
    let suites = parse_suites(suite).map_err(|e| CliError::Usage(e.to_string()))?;
    let cfg = CheckConfig { n, sample, seed, jobs };
    let start = Instant::now();
    let report = run_checks(&suites, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut doc = Document::new("check", json!({ "suite": suite, "n": n, "sample": sample, "seed": seed }));
    doc.suite_failed = !report.passed();
    doc.text = check_text(&report);
    doc.set("passed", report.passed());
    doc.set("report", &report);
    if timing {
        let ms = start.elapsed().as_millis();
        doc.timing_ms = Some(ms);
        doc.line(format!("elapsed {ms} ms"));
    }
    Ok(doc)
}

/// One line per property: suite, name, held/checked, verdict.
pub fn check_text(report: &CheckReport) -> String {
    let mut out = String::new();
    let mode = match report.sample {
        None => "exhaustive".to_string(),
        Some(m) => format!("{m} sampled pairs, seed {}", report.seed),
    };
    let _ = writeln!(out, "S_{}: {} instances ({mode})", report.n, report.instances);
    for s in &report.suites {
        for p in &s.properties {
            let verdict = match (p.kind, p.passed()) {
                (Kind::Report, _) => "report",
                (Kind::Assert, true) => "ok",
                (Kind::Assert, false) => "FAIL",
            };
            let _ = write!(out, "{:<10} {:<32} {:>8}/{:<8} {verdict}", s.suite.name(), p.name, p.held, p.checked);
            if let (Kind::Assert, Some(f)) = (p.kind, &p.first_failure) {
                let _ = write!(out, "  first failure: {f}");
            }
            out.push('\n');
        }
    }
    let _ = writeln!(out, "{}", if report.passed() { "all properties hold" } else { "SUITE FAILED" });
    out
}

fn cmd_parabolic(u: Permutation, v: Permutation, j: &str, show_vertices: bool, faces_check: bool) -> Result<Document, CliError> {
    same_size(&u, &v)?;
    let j = ParabolicSubset::parse(u.n(), j).map_err(|e| CliError::Usage(e.to_string()))?;
    let pe = |e: ParabolicError| domain(e);
    let mut doc = Document::new("parabolic", json!({ "u": u, "v": v, "J": j }));
    if show_vertices || !faces_check {
        let pts = parabolic_bip_vertices(&u, &v, &j).map_err(pe)?;
        doc.line(format!("Q^J for J = {j}: {} points", pts.len()));
        for p in &pts {
            doc.line(format!("  {p:?}"));
        }
        doc.set("points", pts);
    }
    if faces_check {
        let report = parabolic_faces_check(&u, &v, &j).map_err(pe)?;
        doc.line(format!(
            "f-vector {:?}; {} points, {} cosets; faces are parabolic BIPs: {}; edges from covers: {}",
            report.f_vector, report.points, report.cosets, report.faces_are_bips, report.edges_from_covers
        ));
        doc.line(if report.ok() { "faces theorem holds" } else { "faces theorem FAILS" });
        doc.set("faces_ok", report.ok());
        doc.set("faces_check", report);
    }
    Ok(doc)
}
