//! Subcommands and output formatting.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use spinplan::content::{hat_f, hat_f_eval_direct, hat_p, phi_series_check, psi, psi_direct};
use spinplan::explorer::{deg1_conjecture_scan, p2_experiment, structure_constants};
use spinplan::factorial::{p_star, p_star_eval};
use spinplan::frakp::{deg1, expand_gamma_in_frak, expand_p_in_frak, frak_p_eval};
use spinplan::partitions::{enumerate_odd, enumerate_ordinary, enumerate_strict, g, g_skew};
use spinplan::plancherel::{
    average_bruteforce, average_mu_bruteforce, average_mu_symbolic, average_symbolic, prob,
    prob_mu, Observable,
};
use spinplan::rational::render;
use spinplan::schurq::{character_table, p_fn, q};
use spinplan::verify;
use spinplan::{
    FrakExpansion, GammaElement, OddPartition, OrdinaryPSumExpr, PolynomialInN, Rational,
    StrictPartition,
};

use crate::expr::{eval_expr, parse_expr, ParseError};

#[derive(Parser, Debug)]
#[command(name = "spinplan", version, about = "Exact computations with spin characters and shifted Plancherel measures")]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for enumeration sums (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Strict,
    Odd,
    Ordinary,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the partitions of n of the given kind, in decreasing lexicographic order.
    Enum { kind: Kind, n: u32 },
    /// Number of standard shifted tableaux of shape λ.
    G { lambda: String },
    /// Number of standard shifted tableaux of skew shape λ/μ.
    Gskew { lambda: String, mu: String },
    /// Probability of λ under the shifted Plancherel measure, optionally deformed by μ.
    Prob {
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
        /// Defaults to |λ| - |μ|.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Schur Q-function (or P-function) in the power-sum basis.
    Qfunc {
        lambda: String,
        #[arg(long)]
        schur_p: bool,
    },
    /// Character table of degree k.
    Chartable { k: u32 },
    /// Factorial Schur function P*_μ in the power-sum basis.
    Pstar { mu: String },
    /// P*_μ(λ) from the tableau formula.
    PstarEval { mu: String, lambda: String },
    /// The frak basis.
    #[command(subcommand)]
    Frak(FrakCommand),
    /// Plancherel averages.
    Avg(AvgArgs),
    /// Content statistics.
    #[command(subcommand)]
    Content(ContentCommand),
    /// ψ_k in the power-sum basis, or evaluated at λ.
    Psi {
        k: u32,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Check the corner product formula for λ up to the given order.
    PhiCheck { lambda: String, order: usize },
    /// Experiments.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Run the built-in identity checks.
    Verify,
}

#[derive(Subcommand, Debug)]
enum FrakCommand {
    /// p_ρ expanded in the frak basis.
    ExpandP { rho: String },
    /// An expression expanded in the frak basis.
    Expand {
        #[arg(long)]
        f: String,
    },
    /// fp_ρ(λ) from the character formula.
    Eval { rho: String, lambda: String },
    /// deg1 of an expression.
    Deg1 {
        #[arg(long)]
        f: String,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["f", "psum"])))]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["symbolic", "n"])))]
struct AvgArgs {
    /// Expression in Γ, e.g. "p[3]^2 - hatp[1]".
    #[arg(long)]
    f: Option<String>,
    /// Symmetric function as power-sum JSON; even parts are allowed for brute force.
    #[arg(long)]
    psum: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// Closed form as a polynomial in n.
    #[arg(long)]
    symbolic: bool,
    /// Exact average at this n by enumeration.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum ContentCommand {
    /// hat p_k in the power-sum basis.
    Hatp { k: u32 },
    /// F̂ for F given as power-sum JSON, optionally evaluated at λ both ways.
    #[command(name = "hatF")]
    HatF {
        #[arg(long)]
        psum: String,
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum LabCommand {
    /// Scan structure constants for violations of the deg1 bound.
    Deg1Scan {
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
    /// E_n[p_2] for n = 0..=max-n and the quadratic fit through n = 1, 2, 3.
    P2 {
        #[arg(long, default_value_t = 14)]
        max_n: u32,
    },
    /// Structure constants of fp_σ fp_τ.
    Fstruct { sigma: String, tau: String },
}

/// A failure after argument parsing.
#[derive(Debug)]
enum Failure {
    Domain(spinplan::Error),
    Syntax(ParseError),
    Input(String),
    Usage(String),
    ChecksFailed,
}

impl From<spinplan::Error> for Failure {
    fn from(e: spinplan::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Syntax(e)
    }
}

type Outcome = Result<Output, Failure>;

/// One result in every supported rendering.
struct Output {
    json: Value,
    pretty: String,
    csv: Option<String>,
    default: Format,
}

impl Output {
    fn new(json: Value, pretty: impl Into<String>) -> Self {
        Output {
            json,
            pretty: pretty.into(),
            csv: None,
            default: Format::Json,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn default_to(mut self, format: Format) -> Self {
        self.default = format;
        self
    }
}

fn strict(text: &str) -> Result<StrictPartition, Failure> {
    Ok(text.parse()?)
}

fn odd(text: &str) -> Result<OddPartition, Failure> {
    Ok(text.parse()?)
}

fn expression(text: &str) -> Result<GammaElement, Failure> {
    Ok(eval_expr(&parse_expr(text)?))
}

fn psum_expr(text: &str) -> Result<OrdinaryPSumExpr, Failure> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("--psum is not JSON: {e}")))?;
    let value = match value {
        // `{"2": "1", "1,1": "-1/2"}` as a shorthand for the record list
        Value::Object(map) => Value::Array(
            map.into_iter()
                .map(|(partition, coeff)| json!({"partition": partition, "coeff": coeff}))
                .collect(),
        ),
        other => other,
    };
    serde_json::from_value(value).map_err(|e| Failure::Input(format!("--psum: {e}")))
}

fn text(value: &Rational) -> Value {
    Value::String(render(value))
}

fn gamma_json(f: &GammaElement) -> Value {
    serde_json::to_value(f).expect("records serialize")
}

fn frak_json(e: &FrakExpansion) -> Value {
    serde_json::to_value(e).expect("records serialize")
}

fn frak_pretty(e: &FrakExpansion) -> String {
    e.to_string().replace("fp[", "𝔭[")
}

fn records_csv(records: &[spinplan::gamma::TermRecord]) -> String {
    let mut out = String::from("partition,coeff\n");
    for r in records {
        let _ = writeln!(out, "\"{}\",{}", r.partition, r.coeff);
    }
    out
}

fn gamma_output(f: &GammaElement) -> Output {
    Output::new(gamma_json(f), f.to_string()).with_csv(records_csv(&f.to_records()))
}

fn poly_output(poly: &PolynomialInN) -> Output {
    let falling: Map<String, Value> = poly
        .falling_coeffs()
        .rev()
        .map(|(k, c)| (k.to_string(), text(c)))
        .collect();
    let monomial_poly = poly.to_monomial();
    let monomial: Map<String, Value> = monomial_poly
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != spinplan::rational::zero())
        .map(|(k, c)| (k.to_string(), text(c)))
        .collect();
    let binomial: Map<String, Value> = poly
        .to_binomial()
        .iter()
        .rev()
        .map(|(k, c)| (k.to_string(), text(c)))
        .collect();
    let pretty = format!(
        "{}\n= {}\n= {}",
        poly.render_falling(|k| format!("n^↓{k}")),
        poly.render_monomial(),
        poly.render_binomial()
    );
    let mut csv = String::from("basis,k,coeff\n");
    for (basis, map) in [("falling", &falling), ("monomial", &monomial), ("binomial", &binomial)] {
        for (k, c) in map {
            let _ = writeln!(csv, "{basis},{k},{}", c.as_str().unwrap_or_default());
        }
    }
    Output::new(
        json!({"falling": falling, "monomial": monomial, "binomial": binomial}),
        pretty,
    )
    .with_csv(csv)
}

fn run_command(command: Command) -> Outcome {
    match command {
        Command::Enum { kind, n } => {
            let items: Vec<String> = match kind {
                Kind::Strict => enumerate_strict(n).iter().map(ToString::to_string).collect(),
                Kind::Odd => enumerate_odd(n).iter().map(ToString::to_string).collect(),
                Kind::Ordinary => enumerate_ordinary(n).iter().map(ToString::to_string).collect(),
            };
            let pretty = items
                .iter()
                .map(|s| if s.is_empty() { "∅".to_string() } else { format!("({s})") })
                .collect::<Vec<_>>()
                .join("\n");
            let csv = items.iter().map(|s| format!("\"{s}\"\n")).collect();
            Ok(Output::new(json!(items), pretty).with_csv(csv))
        }
        Command::G { lambda } => {
            let l = strict(&lambda)?;
            let count = g(&l).to_string();
            let pretty = count.clone();
            Ok(Output::new(json!({"lambda": l.to_string(), "g": count}), pretty))
        }
        Command::Gskew { lambda, mu } => {
            let (l, m) = (strict(&lambda)?, strict(&mu)?);
            let count = g_skew(&l, &m).to_string();
            let pretty = count.clone();
            Ok(Output::new(
                json!({"lambda": l.to_string(), "mu": m.to_string(), "count": count}),
                pretty,
            ))
        }
        Command::Prob { lambda, mu, n } => {
            let l = strict(&lambda)?;
            let m = strict(mu.as_deref().unwrap_or(""))?;
            let n = match n {
                Some(n) => n,
                None => l.size().checked_sub(m.size()).ok_or(spinplan::Error::SizeMismatch {
                    expected: m.size(),
                    found: l.size(),
                })?,
            };
            let value = if m.is_empty() { prob(n, &l)? } else { prob_mu(&m, n, &l)? };
            Ok(Output::new(
                json!({"lambda": l.to_string(), "mu": m.to_string(), "n": n, "prob": render(&value)}),
                render(&value),
            ))
        }
        Command::Qfunc { lambda, schur_p } => {
            let l = strict(&lambda)?;
            Ok(gamma_output(&if schur_p { p_fn(&l) } else { q(&l) }))
        }
        Command::Chartable { k } => {
            let table = character_table(k);
            let rows: Vec<Value> = table
                .rows()
                .iter()
                .map(|l| {
                    let values: Vec<Value> = table
                        .columns()
                        .iter()
                        .map(|c| text(table.get(l, c).expect("entry")))
                        .collect();
                    json!({"lambda": l.to_string(), "values": values})
                })
                .collect();
            let columns: Vec<String> = table.columns().iter().map(ToString::to_string).collect();
            let csv = table.to_csv();
            Ok(Output::new(json!({"degree": k, "columns": columns, "rows": rows}), csv.clone())
                .with_csv(csv)
                .default_to(Format::Csv))
        }
        Command::Pstar { mu } => Ok(gamma_output(&p_star(&strict(&mu)?))),
        Command::PstarEval { mu, lambda } => {
            let (m, l) = (strict(&mu)?, strict(&lambda)?);
            let value = p_star_eval(&m, &l);
            Ok(Output::new(
                json!({"mu": m.to_string(), "lambda": l.to_string(), "value": render(&value)}),
                render(&value),
            ))
        }
        Command::Frak(sub) => frak(sub),
        Command::Avg(args) => avg(args),
        Command::Content(sub) => content(sub),
        Command::Psi { k, lambda } => {
            let f = psi(k)?;
            match lambda {
                None => Ok(gamma_output(&f)),
                Some(text_lambda) => {
                    let l = strict(&text_lambda)?;
                    let direct = psi_direct(k, &l)?;
                    let expanded = f.evaluate(&l);
                    Ok(Output::new(
                        json!({
                            "k": k,
                            "lambda": l.to_string(),
                            "corners": render(&direct),
                            "expansion": render(&expanded),
                            "agree": direct == expanded,
                        }),
                        render(&direct),
                    ))
                }
            }
        }
        Command::PhiCheck { lambda, order } => {
            let l = strict(&lambda)?;
            let holds = phi_series_check(&l, order);
            Ok(Output::new(
                json!({"lambda": l.to_string(), "order": order, "holds": holds}),
                holds.to_string(),
            ))
        }
        Command::Lab(sub) => lab(sub),
        Command::Verify => {
            let checks = verify::run_all();
            let all = checks.iter().all(|c| c.passed);
            let mut pretty = String::new();
            let width = checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(pretty, "{status}  {:width$}  {}", c.id, c.detail);
            }
            let _ = write!(pretty, "{} of {} checks passed", checks.iter().filter(|c| c.passed).count(), checks.len());
            let mut csv = String::from("id,passed,detail\n");
            for c in &checks {
                let _ = writeln!(csv, "{},{},\"{}\"", c.id, c.passed, c.detail.replace('"', "\"\""));
            }
            let out = Output::new(json!({"passed": all, "checks": checks}), pretty)
                .with_csv(csv)
                .default_to(Format::Pretty);
            if all {
                Ok(out)
            } else {
                let _ = emit(&out, None);
                Err(Failure::ChecksFailed)
            }
        }
    }
}

fn frak(sub: FrakCommand) -> Outcome {
    let expansion_output = |e: FrakExpansion| {
        Output::new(frak_json(&e), frak_pretty(&e)).with_csv(records_csv(&e.to_records()))
    };
    match sub {
        FrakCommand::ExpandP { rho } => Ok(expansion_output(expand_p_in_frak(&odd(&rho)?))),
        FrakCommand::Expand { f } => Ok(expansion_output(expand_gamma_in_frak(&expression(&f)?))),
        FrakCommand::Eval { rho, lambda } => {
            let (r, l) = (odd(&rho)?, strict(&lambda)?);
            let value = frak_p_eval(&r, &l);
            Ok(Output::new(
                json!({"rho": r.to_string(), "lambda": l.to_string(), "value": render(&value)}),
                render(&value),
            ))
        }
        FrakCommand::Deg1 { f } => {
            let d = deg1(&expand_gamma_in_frak(&expression(&f)?))?;
            Ok(Output::new(json!({"deg1": d}), d.to_string()))
        }
    }
}

fn avg(args: AvgArgs) -> Outcome {
    let mu = args.mu.as_deref().map(strict).transpose()?;
    if args.symbolic {
        let f = match (&args.f, &args.psum) {
            (Some(f), _) => expression(f)?,
            (None, Some(psum)) => psum_expr(psum)?.try_into_gamma().map_err(|e| {
                Failure::Input(format!("symbolic averages need an element of Γ: {e}"))
            })?,
            (None, None) => unreachable!("clap requires one input"),
        };
        let poly = match &mu {
            Some(m) => average_mu_symbolic(&f, m),
            None => average_symbolic(&f),
        };
        return Ok(poly_output(&poly));
    }
    let n = args.n.expect("clap requires --symbolic or --n");
    let observable: Box<dyn Observable + Sync> = match (&args.f, &args.psum) {
        (Some(f), _) => Box::new(expression(f)?),
        (None, Some(psum)) => Box::new(psum_expr(psum)?),
        (None, None) => unreachable!("clap requires one input"),
    };
    let value = match &mu {
        Some(m) => average_mu_bruteforce(observable.as_ref(), m, n),
        None => average_bruteforce(observable.as_ref(), n),
    };
    let mut json = Map::new();
    if let Some(m) = &mu {
        json.insert("mu".into(), json!(m.to_string()));
    }
    json.insert("n".into(), json!(n));
    json.insert("value".into(), text(&value));
    Ok(Output::new(Value::Object(json), render(&value)))
}

fn content(sub: ContentCommand) -> Outcome {
    match sub {
        ContentCommand::Hatp { k } => Ok(gamma_output(&hat_p(k))),
        ContentCommand::HatF { psum, lambda } => {
            let f = psum_expr(&psum)?;
            let lifted = hat_f(&f);
            match lambda {
                None => Ok(gamma_output(&lifted)),
                Some(text_lambda) => {
                    let l = strict(&text_lambda)?;
                    let via_gamma = lifted.evaluate(&l);
                    let direct = hat_f_eval_direct(&f, &l);
                    Ok(Output::new(
                        json!({
                            "lambda": l.to_string(),
                            "value": render(&via_gamma),
                            "direct": render(&direct),
                            "agree": via_gamma == direct,
                        }),
                        render(&via_gamma),
                    ))
                }
            }
        }
    }
}

fn lab(sub: LabCommand) -> Outcome {
    match sub {
        LabCommand::Deg1Scan { max } => {
            if max < 2 {
                return Err(Failure::Domain(spinplan::Error::Precondition(
                    "--max must be at least 2".into(),
                )));
            }
            let report = deg1_conjecture_scan(max);
            let mut pretty = format!(
                "{} pairs scanned, {} structure constants, slack {}..{}",
                report.pairs_scanned,
                report.records_checked,
                report.min_slack.map_or("-".into(), |s| s.to_string()),
                report.max_slack.map_or("-".into(), |s| s.to_string()),
            );
            if report.counterexample_found() {
                let _ = write!(pretty, "\nCOUNTEREXAMPLE: {} violations", report.violations.len());
                for v in &report.violations {
                    let _ = write!(
                        pretty,
                        "\n  sigma={} tau={} rho={} value={} deg1 {} > {}",
                        v.sigma, v.tau, v.rho, v.value, v.deg1_lhs, v.deg1_rhs
                    );
                }
            }
            let mut json = serde_json::to_value(&report).expect("report serializes");
            json["counterexample"] = json!(report.counterexample_found());
            Ok(Output::new(json, pretty))
        }
        LabCommand::P2 { max_n } => {
            let report = p2_experiment(max_n);
            let values: Vec<Value> = report
                .values
                .iter()
                .map(|(n, v)| json!({"n": n, "value": render(v)}))
                .collect();
            let residuals: Vec<Value> = report
                .residuals
                .iter()
                .map(|(n, r)| json!({"n": n, "residual": render(r)}))
                .collect();
            let fit = report.fit.as_ref().map(|p| p.render("n"));
            let mut pretty = String::new();
            for (n, v) in &report.values {
                let _ = writeln!(pretty, "E_{n}[p2] = {v}");
            }
            if let Some(fit) = &fit {
                let _ = writeln!(pretty, "quadratic through n = 1..3: {fit}");
                for (n, r) in &report.residuals {
                    let _ = writeln!(pretty, "residual at n = {n}: {r}");
                }
            }
            let mut csv = String::from("n,value\n");
            for (n, v) in &report.values {
                let _ = writeln!(csv, "{n},{}", render(v));
            }
            Ok(Output::new(
                json!({
                    "values": values,
                    "fit": fit,
                    "residuals": residuals,
                    "quadratic_fails": report.quadratic_fails_by_six(),
                }),
                pretty.trim_end().to_string(),
            )
            .with_csv(csv))
        }
        LabCommand::Fstruct { sigma, tau } => {
            let records = structure_constants(&odd(&sigma)?, &odd(&tau)?);
            let pretty = records
                .iter()
                .map(|r| format!("{}  𝔭[{}]", r.value, r.rho))
                .collect::<Vec<_>>()
                .join("\n");
            let mut csv = String::from("sigma,tau,rho,value,deg1_lhs,deg1_rhs\n");
            for r in &records {
                let _ = writeln!(
                    csv,
                    "\"{}\",\"{}\",\"{}\",{},{},{}",
                    r.sigma, r.tau, r.rho, render(&r.value), r.deg1_lhs, r.deg1_rhs
                );
            }
            Ok(Output::new(serde_json::to_value(&records).expect("records serialize"), pretty)
                .with_csv(csv))
        }
    }
}

fn emit(out: &Output, format: Option<Format>) -> Result<(), Failure> {
    match format.unwrap_or(out.default) {
        Format::Json => println!("{}", out.json),
        Format::Pretty => println!("{}", out.pretty),
        Format::Csv => match &out.csv {
            Some(csv) => print!("{csv}"),
            None => return Err(Failure::Usage("csv output is not available for this command".into())),
        },
    }
    Ok(())
}

fn error_kind(e: &spinplan::Error) -> &'static str {
    use spinplan::Error::*;
    match e {
        InvalidPartition { .. } => "invalid_partition",
        SizeMismatch { .. } => "size_mismatch",
        StirlingRange { .. } => "stirling_range",
        ZeroElement => "zero_element",
        Precondition(_) => "precondition",
        NotEven => "not_even",
        NotSupersymmetric(_) => "not_supersymmetric",
        InvalidRational(_) => "invalid_rational",
        Malformed(_) => "malformed",
    }
}

fn report(failure: &Failure) -> u8 {
    let (kind, message, code) = match failure {
        Failure::Domain(e) => (error_kind(e), e.to_string(), 1),
        Failure::Syntax(e) => ("syntax", e.to_string(), 1),
        Failure::Input(m) => ("input", m.clone(), 1),
        Failure::Usage(m) => ("usage", m.clone(), 2),
        Failure::ChecksFailed => ("checks_failed", "some checks failed".to_string(), 1),
    };
    eprintln!("{}", json!({"error": {"kind": kind, "message": message}}));
    code
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
    {
        eprintln!("warning: thread pool already initialised: {e}");
    }
    let result = run_command(cli.command).and_then(|out| emit(&out, cli.format));
    match result {
        Ok(()) => 0,
        Err(failure) => report(&failure),
    }
}
