//! Command-line front end: argument parsing, diagram I/O and reports.
//!
//! [`run`] never touches the process streams; it returns what should be
//! written to stdout and stderr together with the exit code, so the binary
//! and the golden tests share one code path.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::bundled;
use crate::classify::{
    bennequin_chain, classify_bennequin, classify_diagram, Assumptions, BennequinChain,
    BennequinReport, Conclusion, Rule, Verdict,
};
use crate::diagram::{PlusOneChainSpec, SurgeryDiagram};
use crate::dual::{
    dual_invariants_closed_form, dual_invariants_matrix, dual_invariants_matrix_detailed,
    DualKnotInvariants,
};
use crate::error::{Error, EXIT_OK};
use crate::exact::Rational;
use crate::expansion::{expand_diagram, ExpandedPresentation, ZigzagPolicy};
use crate::selftest::{self, SelftestReport};
use crate::sweep::{self, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "contact-surgery",
    version,
    about = "Exact contact surgery calculus"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand rational contact surgeries into contact (±1)-surgeries.
    Expand(ExpandArgs),
    /// Rational tb and rot of a surgery-dual knot.
    Invariants(InvariantsArgs),
    /// Tight / overtwisted verdicts for the surgeries in a diagram.
    Classify(ClassifyArgs),
    /// Rational Bennequin bound for a surgery-dual knot.
    Bennequin(InvariantsArgs),
    /// Run the built-in identity checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ExpandArgs {
    /// Diagram file, bundled example name, or directory of diagrams.
    pub input: PathBuf,
    #[arg(long, default_value = "all-negative")]
    pub zigzag_policy: ZigzagPolicy,
}

#[derive(Debug, Clone, Args)]
pub struct InvariantsArgs {
    /// Diagram file, bundled example name, or directory of diagrams.
    pub input: Option<PathBuf>,
    /// Id of the unsurgered component whose invariants are computed.
    #[arg(long)]
    pub dual: Option<String>,
    /// Use the (+1/n) push-off chain given by --tb, --rot, --chi, --n.
    #[arg(long)]
    pub chain: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub tb: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rot: Option<i64>,
    /// Seifert surface Euler characteristic (chain mode, default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value = "all-negative")]
    pub zigzag_policy: ZigzagPolicy,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// Diagram file, bundled example name, or directory of diagrams.
    pub input: PathBuf,
    /// Component on which contact (+1)-surgery is known to be tight.
    #[arg(long = "assume-plus-one-tight", value_name = "ID")]
    pub assume_plus_one_tight: Vec<String>,
    /// Query contact (+n)-surgery.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    pub n: Option<u32>,
    /// Query contact (+p/q)-surgery (with --q).
    #[arg(long, requires = "q")]
    pub p: Option<u64>,
    #[arg(long, requires = "p")]
    pub q: Option<u64>,
    /// Component the query applies to (defaults to the assumed components).
    #[arg(long)]
    pub dual: Option<String>,
    /// Let the `thm1` rule try both orientations of the knot.
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub both_orientations: bool,
    #[arg(long, default_value = "all-negative")]
    pub zigzag_policy: ZigzagPolicy,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Run every sweep on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommandEcho {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub options: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsResult {
    pub dual: String,
    /// `matrix` or `closed-form`.
    pub path: &'static str,
    pub invariants: DualKnotInvariants,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_m: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_m0: Option<Rational>,
    pub tb0: i64,
    pub rot0: i64,
    /// Chain mode only: whether the matrix path reproduced the closed form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_path_agrees: Option<bool>,
    /// Number of (±1)-surgeries after expansion, when expansion was needed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expanded_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BennequinResult {
    pub invariants: InvariantsResult,
    pub report: BennequinReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<BennequinChain>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchItem {
    pub file: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub results: Option<Results>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum Results {
    Expansion(ExpandedPresentation),
    Invariants(InvariantsResult),
    Verdicts(Vec<Verdict>),
    Bennequin(Box<BennequinResult>),
    Selftest(SelftestReport),
    Batch(Vec<BatchItem>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: CommandEcho,
    pub results: Results,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Reads a diagram from `path`, falling back to the bundled examples by
/// file name.
pub fn parse_diagram_file(path: &Path) -> Result<SurgeryDiagram, Error> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            let name = path
                .file_name()
                .and_then(|s| s.to_str())
                .unwrap_or_default();
            match bundled::lookup(name) {
                Some(text) if !path.exists() => text.to_string(),
                _ => {
                    return Err(Error::Io {
                        path: path.display().to_string(),
                        message: err.to_string(),
                    })
                }
            }
        }
    };
    Ok(SurgeryDiagram::from_json(&text)?)
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let echo = echo(&cli.command);
    let result = match &cli.command {
        Command::Expand(a) => dispatch_input(&a.input, |d| expand(d, a)),
        Command::Invariants(a) => match chain_spec(a) {
            Some(spec) => spec
                .and_then(|s| chain_invariants(&s))
                .map(|r| (Results::Invariants(r), vec![])),
            None => with_required_input(a.input.as_deref(), |p| {
                dispatch_input(p, |d| file_invariants(d, a))
            }),
        },
        Command::Classify(a) => dispatch_input(&a.input, |d| classify(d, a)),
        Command::Bennequin(a) => match chain_spec(a) {
            Some(spec) => spec.and_then(|s| chain_bennequin(&s)),
            None => with_required_input(a.input.as_deref(), |p| {
                dispatch_input(p, |d| file_bennequin(d, a))
            }),
        },
        Command::Selftest(a) => {
            let exec = if a.sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            selftest::run_with(selftest::SelftestConfig {
                exec,
                ..Default::default()
            })
            .map(|r| (Results::Selftest(r), vec![]))
            .map_err(Error::from)
        }
    };
    match result {
        Ok((results, citations)) => {
            let code = match &results {
                Results::Batch(items) => items.iter().map(|i| i.exit_code).max().unwrap_or(EXIT_OK),
                _ => EXIT_OK,
            };
            let report = Report {
                command: echo,
                results,
                citations,
            };
            Outcome {
                stdout: render(&report, cli.format),
                stderr: String::new(),
                code,
            }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

type Produced = Result<(Results, Vec<String>), Error>;

fn with_required_input(input: Option<&Path>, f: impl FnOnce(&Path) -> Produced) -> Produced {
    match input {
        Some(p) => f(p),
        None => Err(Error::Usage(
            "an input diagram or --chain parameters are required".into(),
        )),
    }
}

/// Runs `f` on one diagram, or on every `*.json` file of a directory.
fn dispatch_input(input: &Path, f: impl Fn(&SurgeryDiagram) -> Produced + Sync + Send) -> Produced {
    if !input.is_dir() {
        return f(&parse_diagram_file(input)?);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(input)
        .map_err(|e| Error::Io {
            path: display_path(input),
            message: e.to_string(),
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let items = sweep::map(Exec::Parallel, &files, |path| {
        let file = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        match parse_diagram_file(path).and_then(|d| f(&d)) {
            Ok((results, _)) => BatchItem {
                file,
                exit_code: EXIT_OK,
                results: Some(results),
                error: None,
            },
            Err(e) => BatchItem {
                file,
                exit_code: e.exit_code(),
                results: None,
                error: Some(e.to_string()),
            },
        }
    });
    let mut citations: Vec<String> = Vec::new();
    for item in &items {
        if let Some(Results::Verdicts(vs)) = &item.results {
            citations.extend(cite(vs));
        }
    }
    citations.sort();
    citations.dedup();
    Ok((Results::Batch(items), citations))
}

fn expand(d: &SurgeryDiagram, a: &ExpandArgs) -> Produced {
    let p = expand_diagram(d, &a.zigzag_policy)?;
    Ok((Results::Expansion(p), vec![]))
}

fn chain_spec(a: &InvariantsArgs) -> Option<Result<PlusOneChainSpec, Error>> {
    if !a.chain && a.input.is_some() {
        return None;
    }
    if !a.chain && a.tb.is_none() {
        return None;
    }
    let need = |name: &str| Error::Usage(format!("chain mode needs --{name}"));
    Some((|| {
        let tb = a.tb.ok_or_else(|| need("tb"))?;
        let rot = a.rot.ok_or_else(|| need("rot"))?;
        let n = a.n.ok_or_else(|| need("n"))?;
        Ok(PlusOneChainSpec::new(tb, rot, a.chi.unwrap_or(1), n)?)
    })())
}

fn chain_invariants(spec: &PlusOneChainSpec) -> Result<InvariantsResult, Error> {
    let closed = dual_invariants_closed_form(spec.tb, spec.rot, spec.euler_char, spec.n)?;
    let matrix = dual_invariants_matrix(&spec.to_diagram(), spec.n as usize)?;
    let tb = i128::from(spec.tb);
    let n = i128::from(spec.n);
    Ok(InvariantsResult {
        dual: "L'".into(),
        path: "closed-form",
        det_m: Some(Rational::from(BigInt::from(n * tb + 1))),
        det_m0: Some(Rational::from(BigInt::from(-n * tb * tb))),
        matrix_path_agrees: Some(matrix == closed),
        invariants: closed,
        tb0: spec.tb,
        rot0: spec.rot,
        expanded_steps: None,
    })
}

fn resolve_dual(d: &SurgeryDiagram, dual: Option<&str>) -> Result<String, Error> {
    if let Some(id) = dual {
        return Ok(id.to_string());
    }
    let bare: Vec<&str> = d
        .components()
        .iter()
        .filter(|c| !c.is_surgered())
        .map(|c| c.id())
        .collect();
    match bare.as_slice() {
        [only] => Ok(only.to_string()),
        _ => Err(Error::Usage(
            "--dual is required unless the diagram has exactly one unsurgered component".into(),
        )),
    }
}

fn file_invariants_result(
    d: &SurgeryDiagram,
    dual: Option<&str>,
    policy: &ZigzagPolicy,
) -> Result<InvariantsResult, Error> {
    let id = resolve_dual(d, dual)?;
    let original_index = d.index_of(&id)?;
    if d.components()[original_index].is_surgered() {
        return Err(crate::diagram::DiagramError::DualIsSurgered(id).into());
    }
    let expanded = expand_diagram(d, policy)?;
    let derived = &expanded.derived_diagram;
    let needs_expansion = derived != d;
    let (inv, der) = dual_invariants_matrix_detailed(derived, derived.index_of(&id)?)?;
    Ok(InvariantsResult {
        dual: id,
        path: "matrix",
        invariants: inv,
        det_m: Some(der.det_m),
        det_m0: Some(der.det_m0),
        tb0: der.tb0,
        rot0: der.rot0,
        matrix_path_agrees: None,
        expanded_steps: needs_expansion.then_some(expanded.steps.len()),
    })
}

fn file_invariants(d: &SurgeryDiagram, a: &InvariantsArgs) -> Produced {
    let r = file_invariants_result(d, a.dual.as_deref(), &a.zigzag_policy)?;
    Ok((Results::Invariants(r), vec![]))
}

fn bennequin_result(invariants: InvariantsResult, chain: Option<BennequinChain>) -> Produced {
    let (report, verdict) = classify_bennequin(&invariants.invariants);
    let citations = cite(std::slice::from_ref(&verdict));
    Ok((
        Results::Bennequin(Box::new(BennequinResult {
            invariants,
            report,
            chain,
            verdict,
        })),
        citations,
    ))
}

fn chain_bennequin(spec: &PlusOneChainSpec) -> Produced {
    let inv = chain_invariants(spec)?;
    let chain = bennequin_chain(spec.tb, spec.rot, spec.euler_char, spec.n)?;
    bennequin_result(inv, Some(chain))
}

fn file_bennequin(d: &SurgeryDiagram, a: &InvariantsArgs) -> Produced {
    bennequin_result(
        file_invariants_result(d, a.dual.as_deref(), &a.zigzag_policy)?,
        None,
    )
}

fn cite(verdicts: &[Verdict]) -> Vec<String> {
    let mut rules: Vec<Rule> = verdicts
        .iter()
        .map(Verdict::rule)
        .filter(|r| *r != Rule::None)
        .collect();
    rules.sort();
    rules.dedup();
    rules.into_iter().map(|r| r.id().to_string()).collect()
}

fn classify(d: &SurgeryDiagram, a: &ClassifyArgs) -> Produced {
    let query = match (a.n, a.p, a.q) {
        (Some(n), _, _) => Some(Rational::from(i64::from(n))),
        (None, Some(p), Some(q)) => {
            if p == 0 || q == 0 {
                return Err(crate::classify::ClassifyError::NonPositive.into());
            }
            if p.gcd(&q) != 1 {
                return Err(crate::classify::ClassifyError::NotCoprime { p, q }.into());
            }
            Some(Rational::new(p, q))
        }
        _ => None,
    };
    let mut assumptions = Assumptions {
        both_orientations: a.both_orientations,
        ..Default::default()
    };
    for id in &a.assume_plus_one_tight {
        assumptions
            .components
            .entry(id.clone())
            .or_default()
            .plus_one_tight = true;
    }
    if let Some(q) = &query {
        let targets: Vec<String> = match &a.dual {
            Some(id) => vec![id.clone()],
            None if !a.assume_plus_one_tight.is_empty() => a.assume_plus_one_tight.clone(),
            None => {
                return Err(Error::Usage(
                    "a query (--n or --p/--q) needs --dual or --assume-plus-one-tight".into(),
                ))
            }
        };
        for id in targets {
            assumptions.components.entry(id).or_default().query = Some(q.clone());
        }
    }
    // Rules work on the diagram as given; expansion is only used to read off
    // invariants of knots in surgered manifolds.
    let _ = &a.zigzag_policy;
    let verdicts = classify_diagram(d, &assumptions)?;
    let citations = cite(&verdicts);
    Ok((Results::Verdicts(verdicts), citations))
}

fn echo(command: &Command) -> CommandEcho {
    let mut options = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            options.insert(k.to_string(), v);
        }
    };
    let (name, input) = match command {
        Command::Expand(a) => {
            put("zigzag-policy", Some(a.zigzag_policy.to_string()));
            ("expand", Some(display_path(&a.input)))
        }
        Command::Invariants(a) | Command::Bennequin(a) => {
            put("dual", a.dual.clone());
            put("chain", a.chain.then(|| "true".to_string()));
            put("tb", a.tb.map(|x| x.to_string()));
            put("rot", a.rot.map(|x| x.to_string()));
            put("chi", a.chi.map(|x| x.to_string()));
            put("n", a.n.map(|x| x.to_string()));
            put("zigzag-policy", Some(a.zigzag_policy.to_string()));
            let name = if matches!(command, Command::Invariants(_)) {
                "invariants"
            } else {
                "bennequin"
            };
            (name, a.input.as_deref().map(display_path))
        }
        Command::Classify(a) => {
            if !a.assume_plus_one_tight.is_empty() {
                put(
                    "assume-plus-one-tight",
                    Some(a.assume_plus_one_tight.join(",")),
                );
            }
            put("n", a.n.map(|x| x.to_string()));
            put("p", a.p.map(|x| x.to_string()));
            put("q", a.q.map(|x| x.to_string()));
            put("dual", a.dual.clone());
            put("both-orientations", Some(a.both_orientations.to_string()));
            ("classify", Some(display_path(&a.input)))
        }
        Command::Selftest(a) => {
            put("sequential", a.sequential.then(|| "true".to_string()));
            ("selftest", None)
        }
    };
    CommandEcho {
        name,
        input,
        options,
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(report).expect("report serialization is infallible");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn paren(x: &Rational) -> String {
    if x.is_negative() {
        format!("({x})")
    } else {
        x.to_string()
    }
}

fn text_results(out: &mut String, results: &Results) {
    match results {
        Results::Expansion(p) => {
            let _ = writeln!(out, "zigzag policy: {}", p.zigzag_policy);
            for s in &p.steps {
                let signs: Vec<String> = s
                    .stabilization_signs
                    .iter()
                    .map(|x| format!("{x:+}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "step {:<8} from {:<6} contact {:>2}  stabilizations {} [{}]",
                    s.id,
                    s.source_id,
                    s.coefficient,
                    s.stabilizations,
                    signs.join(" ")
                );
            }
            let _ = writeln!(out, "derived diagram:");
            for (i, c) in p.derived_diagram.components().iter().enumerate() {
                let coef = c
                    .contact_coefficient
                    .as_ref()
                    .map_or("-".to_string(), ToString::to_string);
                let lk: Vec<String> = p.derived_diagram.linking()[i]
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                let _ = writeln!(
                    out,
                    "  {:<8} tb {:>3} rot {:>3} chi {:>3} coefficient {:>3}  lk [{}]",
                    c.id(),
                    c.knot.tb,
                    c.knot.rot,
                    c.knot.euler_char,
                    coef,
                    lk.join(", ")
                );
            }
        }
        Results::Invariants(r) => text_invariants(out, r),
        Results::Verdicts(vs) => {
            if vs.is_empty() {
                let _ = writeln!(out, "no surgeries to classify");
            }
            for v in vs {
                text_verdict(out, v);
            }
        }
        Results::Bennequin(b) => {
            text_invariants(out, &b.invariants);
            let _ = writeln!(
                out,
                "bennequin: tb_Q + |rot_Q| = {} {} -chi/r = {}  ({})",
                b.report.lhs,
                if b.report.satisfied { "<=" } else { ">" },
                b.report.rhs,
                if b.report.satisfied {
                    "satisfied"
                } else {
                    "violated"
                }
            );
            if let Some(c) = &b.chain {
                let _ = writeln!(
                    out,
                    "chain: {} >= {} {} {}",
                    c.lhs,
                    c.middle,
                    if c.final_strict { ">" } else { "=" },
                    c.rhs
                );
            }
            text_verdict(out, &b.verdict);
        }
        Results::Selftest(r) => {
            for c in &r.checks {
                let _ = writeln!(out, "PASS {} ({} cases)", c.name, c.cases);
            }
            let _ = writeln!(
                out,
                "all {} checks passed, {} cases",
                r.checks.len(),
                r.total_cases()
            );
        }
        Results::Batch(items) => {
            for item in items {
                let _ = writeln!(out, "== {} (exit {})", item.file, item.exit_code);
                if let Some(r) = &item.results {
                    text_results(out, r);
                }
                if let Some(e) = &item.error {
                    let _ = writeln!(out, "error: {e}");
                }
            }
        }
    }
}

fn text_invariants(out: &mut String, r: &InvariantsResult) {
    let inv = &r.invariants;
    let _ = writeln!(out, "dual knot `{}` ({} path)", r.dual, r.path);
    if let Some(steps) = r.expanded_steps {
        let _ = writeln!(out, "expanded to {steps} contact (+-1)-surgeries");
    }
    if let (Some(dm), Some(dm0)) = (&r.det_m, &r.det_m0) {
        let _ = writeln!(out, "det M = {dm}, det M0 = {dm0}");
        let _ = writeln!(
            out,
            "tb_Q = tb0 + det M0 / det M = {} + {}/{} = {}",
            r.tb0,
            paren(dm0),
            paren(dm),
            inv.tb_q
        );
    } else {
        let _ = writeln!(out, "tb_Q = {}", inv.tb_q);
    }
    let _ = writeln!(out, "rot_Q = {}", inv.rot_q);
    let _ = writeln!(out, "order r = {}", inv.order);
    let _ = writeln!(out, "chi(Sigma) = {}", inv.euler_char);
    if let Some(agree) = r.matrix_path_agrees {
        let _ = writeln!(out, "matrix path agrees: {agree}");
    }
}

fn text_verdict(out: &mut String, v: &Verdict) {
    let subject = v.subject().map(|s| format!("{s}: ")).unwrap_or_default();
    let conclusion = match v.conclusion() {
        Conclusion::Tight => "TIGHT",
        Conclusion::Overtwisted => "OVERTWISTED",
        Conclusion::Inconclusive => "INCONCLUSIVE",
    };
    let _ = writeln!(out, "{subject}{conclusion} [rule {}]", v.rule());
    for t in v.trace() {
        let _ = writeln!(out, "  - {t}");
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let mut header = report.command.name.to_string();
    if let Some(input) = &report.command.input {
        let _ = write!(header, " {input}");
    }
    for (k, v) in &report.command.options {
        let _ = write!(header, " --{k} {v}");
    }
    let _ = writeln!(out, "# {header}");
    text_results(&mut out, &report.results);
    if !report.citations.is_empty() {
        let _ = writeln!(out, "rules: {}", report.citations.join(", "));
    }
    out
}
