//! Argument parsing and dispatch for the `gw` binary. [`run`] is pure apart
//! from the thread pool it builds, so tests drive it directly.

use clap::{Args, Parser, Subcommand};
use gw_core::degeneration::{
    comparison_rhs, enumerate_terms, find_divisor_witness, rc_lift, solve_relative, verify_comparison, ClosedForms,
    ComparisonReport, CutSpec, RelativeSource,
};
use gw_core::quantum::{rc_certificate, wdvv_table, QuantumClass};
use gw_core::rational::format;
use gw_core::relative::{evaluate, Evaluation};
use gw_core::ring::{cup_all, RingElement, Space};
use gw_core::{
    gw_invariant, BundleClass, BundleSpec, GwError, InvariantQuery, RelInsertion, RelQuery, Result, WeightedPartition,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "gw", about = "Exact genus-zero Gromov-Witten invariants", version)]
pub struct Cli {
    /// Worker threads for term enumeration and sums (output does not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add term breakdowns to the report.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Absolute invariant `⟨insertions⟩_d` of a space.
    Abs {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: u32,
        /// Comma-separated classes, e.g. `pt,pt,h`.
        #[arg(long, default_value = "")]
        insertions: String,
    },
    /// Relative invariant of a bundle `P(L ⊕ O)` relative to its infinity section.
    Rel {
        /// `<space>:c1=<n>`, e.g. `p1:c1=1`.
        #[arg(long)]
        bundle: String,
        /// `sF`, `dZ` or `dZ+sF`.
        #[arg(long)]
        class: String,
        /// Weighted partition, e.g. `(2,pt)+(1,1)`.
        #[arg(long, default_value = "")]
        partition: String,
        /// Comma-separated `zs:<class>`, `pb:<class>` or `tau<k>:zs:<class>`.
        #[arg(long, default_value = "")]
        insertions: String,
    },
    /// Plane curve counts `N_d` for `d ≤ max`.
    Nd {
        #[arg(long)]
        max: u32,
    },
    /// Classical or quantum product of classes.
    Ring {
        #[arg(long)]
        space: String,
        /// Comma-separated classes to multiply.
        #[arg(long)]
        classes: String,
        #[arg(long)]
        quantum: bool,
    },
    /// Identity checks.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Recover relative invariants from absolute ones.
    Solve {
        #[command(subcommand)]
        what: SolveCommand,
    },
    /// Lift a point-constrained invariant of the divisor to the ambient space.
    Lift {
        #[arg(long)]
        testbed: String,
        #[arg(long)]
        k: usize,
    },
    /// Search for a nonzero invariant with `points` point insertions.
    Rc {
        #[arg(long)]
        space: String,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Both sides of the comparison identity.
    Comparison(ComparisonArgs),
}

#[derive(Subcommand, Debug)]
pub enum SolveCommand {
    /// Relative invariants of a cut for one family of divisor classes.
    Relative(ComparisonArgs),
}

#[derive(Args, Debug)]
pub struct ComparisonArgs {
    /// `p1-pt`, `p2-line`, `p2-conic` or `p<n>-hyperplane`.
    #[arg(long)]
    pub testbed: String,
    /// Total number of point insertions, one of them supported on the divisor.
    #[arg(long, conflicts_with_all = ["max_degree", "betas", "alphas"])]
    pub points: Option<usize>,
    /// Check every admissible family up to this degree.
    #[arg(long, conflicts_with_all = ["degree", "betas", "alphas"])]
    pub max_degree: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub degree: u32,
    /// Comma-separated classes of the divisor.
    #[arg(long)]
    pub betas: Option<String>,
    /// Comma-separated ambient classes; point classes completing the
    /// dimension count when omitted.
    #[arg(long)]
    pub alphas: Option<String>,
}

/// What a run produced: exit code and the two streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &GwError) -> i32 {
    match err {
        GwError::Parse(_) | GwError::Parameter(_) | GwError::SpaceMismatch(..) => 1,
        GwError::HypothesisViolated(_) => 3,
        _ => 2,
    }
}

fn status(err: &GwError) -> &'static str {
    match err {
        GwError::Parse(_) | GwError::Parameter(_) | GwError::SpaceMismatch(..) => "parse-error",
        GwError::HypothesisViolated(_) => "hypothesis-violated",
        GwError::Inapplicable(_) => "inapplicable",
        GwError::Precondition(_) => "precondition",
        GwError::Internal(_) => "internal",
        GwError::Unsupported(_) => "unsupported",
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let text = err.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(err) => return Outcome { code: 1, stdout: String::new(), stderr: err.to_string() },
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(v) => Outcome { code: 0, stdout: format!("{v}\n"), stderr: String::new() },
        Err(err) => {
            let report = json!({"status": status(&err), "reason": err.to_string()});
            Outcome { code: exit_code(&err), stdout: format!("{report}\n"), stderr: format!("gw: {err}\n") }
        }
    }
}

fn list(space: &Space, s: &str) -> Result<Vec<RingElement>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| space.parse_class(t)).collect()
}

fn dispatch(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Abs { space, degree, insertions } => {
            let space = Space::parse(space)?;
            let q = InvariantQuery::parse(&space, *degree, insertions)?;
            let v = gw_invariant(&q)?;
            Ok(json!({"status": "ok", "query": q.to_json(), "value": format(&v)}))
        }
        Command::Rel { bundle, class, partition, insertions } => {
            let bundle = BundleSpec::parse(bundle)?;
            let class = BundleClass::parse(class)?;
            let base = bundle.base().clone();
            let partition = WeightedPartition::parse(&base, partition)?;
            let ins = insertions
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| RelInsertion::parse(&base, t))
                .collect::<Result<Vec<_>>>()?;
            let q = RelQuery::new(&bundle, class, ins, partition)?;
            Ok(match evaluate(&q)? {
                Evaluation::Value(v) => json!({"status": "ok", "query": q.to_json(), "value": format(&v)}),
                Evaluation::Vanishes(reason) => json!({
                    "status": "vanishes",
                    "query": q.to_json(),
                    "value": "0",
                    "reason": format!("vanishes ({reason})"),
                }),
            })
        }
        Command::Nd { max } => {
            let table = wdvv_table(*max)?;
            let map: serde_json::Map<String, Value> =
                table.iter().enumerate().map(|(i, n)| ((i + 1).to_string(), Value::String(n.to_string()))).collect();
            Ok(Value::Object(map))
        }
        Command::Ring { space, classes, quantum } => {
            let space = Space::parse(space)?;
            let items = list(&space, classes)?;
            if *quantum {
                let mut acc = QuantumClass::classical(space.unit());
                for c in items {
                    acc = acc.star(&QuantumClass::classical(c))?;
                }
                let terms: serde_json::Map<String, Value> =
                    acc.terms().map(|(e, c)| (e.to_string(), c.to_json())).collect();
                Ok(json!({"status": "ok", "space": space.to_string(), "product": terms}))
            } else {
                let prod = cup_all(&space, items.iter())?;
                Ok(json!({
                    "status": "ok",
                    "space": space.to_string(),
                    "product": prod.to_json(),
                    "integral": format(&prod.integrate()),
                }))
            }
        }
        Command::Verify { what: VerifyCommand::Comparison(args) } => verify(args, cli.verbose),
        Command::Solve { what: SolveCommand::Relative(args) } => solve(args, cli.verbose),
        Command::Lift { testbed, k } => {
            let cut = CutSpec::testbed(testbed)?;
            let w = find_divisor_witness(&cut, *k)?;
            let mut report = rc_lift(&cut, &w, *k)?.to_json();
            report["status"] = json!("ok");
            Ok(report)
        }
        Command::Rc { space, points, max_degree } => {
            let space = Space::parse(space)?;
            Ok(match rc_certificate(&space, *points, *max_degree) {
                Some(w) => json!({"status": "ok", "found": true, "query": w.query.to_json(), "value": format(&w.value)}),
                None => json!({"status": "ok", "found": false}),
            })
        }
    }
}

/// Point classes completing the dimension count, if a count works.
fn default_alphas(cut: &CutSpec, degree: u32, betas: &[RingElement]) -> Result<Vec<RingElement>> {
    for n in 0..=3 * degree as usize + 6 {
        let alphas = vec![cut.ambient().point_class(); n];
        let q = cut.absolute_query(degree, &alphas, betas)?;
        if gw_core::virtual_dimension(cut.ambient(), degree, q.insertions().len()) == q.insertion_degree() {
            return Ok(alphas);
        }
    }
    Err(GwError::Parameter("no number of point insertions matches the dimension".into()))
}

/// `(degree, alphas, betas)` from the flags.
fn family(cut: &CutSpec, args: &ComparisonArgs) -> Result<(u32, Vec<RingElement>, Vec<RingElement>)> {
    if let Some(m) = args.points {
        if m < 1 {
            return Err(GwError::Parameter("--points needs at least one point".into()));
        }
        let alphas = vec![cut.ambient().point_class(); m - 1];
        return Ok((args.degree, alphas, vec![cut.base().point_class()]));
    }
    let betas = match &args.betas {
        Some(b) => list(cut.base(), b)?,
        None => Vec::new(),
    };
    let alphas = match &args.alphas {
        Some(a) => list(cut.ambient(), a)?,
        None => default_alphas(cut, args.degree, &betas)?,
    };
    Ok((args.degree, alphas, betas))
}

fn report_json(report: &ComparisonReport, extra: Option<Value>) -> Value {
    let mut v = report.to_json();
    v["status"] = json!("ok");
    if let Some(x) = extra {
        v["degeneration"] = x;
    }
    v
}

fn verify_one(cut: &CutSpec, degree: u32, alphas: &[RingElement], betas: &[RingElement], verbose: bool) -> Result<Value> {
    let closed;
    let table;
    let source: &dyn RelativeSource = match ClosedForms::new(cut) {
        Ok(c) => {
            closed = c;
            &closed
        }
        Err(_) => {
            table = solve_relative(cut, degree, alphas, betas)?;
            &table
        }
    };
    let report = verify_comparison(cut, degree, alphas, betas, source)?;
    let extra = if verbose { Some(enumerate_terms(cut, degree, alphas, betas, Some(source))?.to_json()) } else { None };
    Ok(report_json(&report, extra))
}

fn verify(args: &ComparisonArgs, verbose: bool) -> Result<Value> {
    let cut = CutSpec::testbed(&args.testbed)?;
    if let Some(max) = args.max_degree {
        let mut reports = Vec::new();
        let mut all = true;
        for d in 1..=max {
            for betas in admissible_families(&cut) {
                let Ok(alphas) = default_alphas(&cut, d, &betas) else { continue };
                let r = verify_one(&cut, d, &alphas, &betas, verbose)?;
                all &= r["equal"] == json!(true);
                reports.push(r);
            }
        }
        return Ok(json!({"status": "ok", "testbed": cut.to_string(), "reports": reports, "equal": all}));
    }
    let (d, alphas, betas) = family(&cut, args)?;
    verify_one(&cut, d, &alphas, &betas, verbose)
}

/// Families of basis classes with at most `min(V, 2)` members.
fn admissible_families(cut: &CutSpec) -> Vec<Vec<RingElement>> {
    let z = cut.base();
    let max = (0..=2).rev().find(|&l| cut.v().admits(l)).unwrap_or(0);
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=max {
        let mut next = Vec::new();
        for f in out.iter().filter(|f| f.len() == len - 1) {
            for i in f.last().copied().unwrap_or(0)..z.rank() {
                let mut g = f.clone();
                g.push(i);
                next.push(g);
            }
        }
        out.extend(next);
    }
    out.into_iter().map(|f| f.into_iter().map(|i| RingElement::basis(z, i)).collect()).collect()
}

fn solve(args: &ComparisonArgs, verbose: bool) -> Result<Value> {
    let cut = CutSpec::testbed(&args.testbed)?;
    let (d, alphas, betas) = family(&cut, args)?;
    let table = solve_relative(&cut, d, &alphas, &betas)?;
    let report = verify_comparison(&cut, d, &alphas, &betas, &table)?;
    debug_assert_eq!(comparison_rhs(&table, &cut, d, &alphas, &betas)?, report.rhs);
    let mut v = report_json(&report, None);
    v["table"] = table.to_json();
    if verbose {
        v["degeneration"] = enumerate_terms(&cut, d, &alphas, &betas, Some(&table))?.to_json();
    }
    Ok(v)
}
