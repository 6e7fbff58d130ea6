//! Command-line front end for the coin race analysis.
//!
//! Exit codes: `0` on success, `1` when `verify` finds a mismatch, `2` on
//! usage or parameter-domain errors (message on standard error).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use coinrace_core::{
    advantage_polynomial, asymptotic_pstar, minimize_advantage, normalize, parse_rational,
    simulate, simulate_at_pstar, tau_distribution, GameParams, MinimizationResult, Poly, SimConfig,
    SimResult, DEFAULT_TOL,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub mod fixtures;
pub mod render;
pub mod tables;
pub mod verify;

use render::{coeff_strings, csv_field, poly_latex};
use tables::{PolyTable, Table6Row};
use verify::{PmfProvider, VerifyReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] coinrace_core::Error),
    #[error("fixture: {0}")]
    Fixture(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Parser)]
#[command(
    name = "coinrace",
    version,
    about = "Exact and simulated analysis of the alternating coin race"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct GameArgs {
    /// Target score; an integer, fraction (`7/2`) or decimal (`3.5`)
    #[arg(long, allow_hyphen_values = true)]
    pub n: String,
    /// Points for a tail
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Extra points for a head
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
}

impl GameArgs {
    pub fn params(&self) -> Result<GameParams, CliError> {
        Ok(GameParams::parse(&self.n, &self.alpha, &self.beta)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Advantage polynomial of the first player
    Poly(GameArgs),
    /// Distribution of the finishing turn
    Pmf(GameArgs),
    /// Bias that minimizes the first player's advantage
    Minimize {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Large-n optimal bias for a pair of scores
    Pstar {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Monte Carlo estimate of the advantage
    #[command(group(ArgGroup::new("bias").required(true).args(["p", "at_pstar"])))]
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long)]
        at_pstar: bool,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Regenerate a reference table (1 to 6)
    Table {
        which: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Cross-check the closed form against enumeration on an integer grid
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: i64,
        #[arg(long, default_value_t = 3)]
        max_alpha: i64,
        #[arg(long, default_value_t = 3)]
        max_beta: i64,
    },
}

/// Rendered standard output plus the exit code it should produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn json_text(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values always serialize");
    s.push('\n');
    s
}

fn params_json(params: &GameParams) -> Value {
    json!({
        "n": params.n.to_string(),
        "alpha": params.alpha.to_string(),
        "beta": params.beta.to_string(),
    })
}

fn poly_json(poly: &Poly, degenerate: bool) -> Value {
    json!({
        "degree": poly.degree().unwrap_or(0),
        "degenerate": degenerate,
        "coefficients": coeff_strings(poly),
    })
}

pub fn cmd_poly(params: &GameParams, format: Format) -> Result<Output, CliError> {
    let result = advantage_polynomial(params)?;
    let poly = &result.poly;
    let text = match format {
        Format::Text if result.degenerate => "1 (degenerate: I ≡ 1)\n".to_string(),
        Format::Text => format!("{poly}\n"),
        Format::Json => {
            let mut doc = poly_json(poly, result.degenerate);
            doc["params"] = params_json(params);
            json_text(doc)
        }
        Format::Csv => {
            let mut s = String::from("power,coefficient\n");
            for (i, c) in coeff_strings(poly).iter().enumerate() {
                let _ = writeln!(s, "{i},{c}");
            }
            s
        }
        Format::Latex => format!("${}$\n", poly_latex(poly)),
    };
    Ok(Output::ok(text))
}

pub fn cmd_pmf(params: &GameParams, format: Format) -> Result<Output, CliError> {
    let dist = tau_distribution(&normalize(params)?)?;
    let text = match format {
        Format::Text => dist
            .iter()
            .map(|(k, pmf)| format!("k={k}: {pmf}\n"))
            .collect(),
        Format::Json => {
            let pmf: serde_json::Map<String, Value> = dist
                .iter()
                .map(|(k, pmf)| (k.to_string(), json!(coeff_strings(pmf))))
                .collect();
            json_text(json!({ "l": dist.bounds.l, "m": dist.bounds.m, "pmf": pmf }))
        }
        Format::Csv => {
            let mut s = String::from("k,power,coefficient\n");
            for (k, pmf) in dist.iter() {
                for (i, c) in coeff_strings(pmf).iter().enumerate() {
                    let _ = writeln!(s, "{k},{i},{c}");
                }
            }
            s
        }
        Format::Latex => dist
            .iter()
            .map(|(k, pmf)| format!("{k} & ${}$ \\\\\n", poly_latex(pmf)))
            .collect(),
    };
    Ok(Output::ok(text))
}

fn render_minimum(params: &GameParams, min: &MinimizationResult, format: Format) -> String {
    let bracket = min
        .bracket
        .as_ref()
        .map(|b| (b.lo.to_string(), b.hi.to_string()));
    match format {
        Format::Text if min.degenerate => "degenerate: advantage is 1 for every p\n".into(),
        Format::Text => {
            let mut s = String::new();
            if let Some(p) = min.p_star_n {
                let _ = writeln!(s, "p_n* = {p:.10}");
            }
            if let Some((lo, hi)) = &bracket {
                let _ = writeln!(s, "bracket = [{lo}, {hi}]");
            }
            let _ = writeln!(s, "I(p_n*) = {:.10}", min.value);
            if min.tie {
                s.push_str("note: several critical points share the minimum value\n");
            }
            s
        }
        Format::Json => json_text(json!({
            "params": params_json(params),
            "degenerate": min.degenerate,
            "p_star_n": min.p_star_n,
            "bracket": bracket.map(|(lo, hi)| json!([lo, hi])),
            "value": min.value,
            "value_exact": min.value_exact.to_string(),
            "tol": min.tol,
            "tie": min.tie,
        })),
        Format::Csv => format!(
            "n,alpha,beta,degenerate,p_n_star,value\n{},{},{},{},{},{}\n",
            params.n,
            params.alpha,
            params.beta,
            min.degenerate,
            min.p_star_n.map(|p| p.to_string()).unwrap_or_default(),
            min.value
        ),
        Format::Latex => format!(
            "{} & {} & {} & {} & {:.3} \\\\\n",
            params.n,
            params.alpha,
            params.beta,
            min.p_star_n
                .map(|p| format!("{p:.4}"))
                .unwrap_or_else(|| "--".into()),
            min.value
        ),
    }
}

pub fn cmd_minimize(params: &GameParams, tol: f64, format: Format) -> Result<Output, CliError> {
    let min = minimize_advantage(params, tol)?;
    Ok(Output::ok(render_minimum(params, &min, format)))
}

pub fn cmd_pstar(alpha: &str, beta: &str, format: Format) -> Result<Output, CliError> {
    let (alpha, beta) = (parse_rational(alpha)?, parse_rational(beta)?);
    let opt = asymptotic_pstar(&alpha, &beta)?;
    let text = match format {
        Format::Text => format!(
            "p* = {:.15}\nt = {}\nsigma^2(p*) = {:.12}\n",
            opt.p_star, opt.t, opt.sigma_sq_at_p_star
        ),
        Format::Json => json_text(json!({
            "alpha": alpha.to_string(),
            "beta": beta.to_string(),
            "t": opt.t.to_string(),
            "p_star": opt.p_star,
            "sigma_sq": opt.sigma_sq_at_p_star,
        })),
        Format::Csv => format!(
            "alpha,beta,p_star,sigma_sq\n{alpha},{beta},{},{}\n",
            opt.p_star, opt.sigma_sq_at_p_star
        ),
        Format::Latex => format!("{alpha} & {beta} & {:.9} \\\\\n", opt.p_star),
    };
    Ok(Output::ok(text))
}

fn render_simulation(params: &GameParams, res: &SimResult, format: Format) -> String {
    match format {
        Format::Text | Format::Latex => {
            let mut s = format!(
                "frequency = {:.6} ± {:.6} (stderr)\nwins = {}/{}\np = {}\nseed = {}, workers = {}\n",
                res.frequency, res.stderr, res.wins, res.trials, res.p, res.seed, res.workers
            );
            s.push_str("finishing turn (negative: second player):\n");
            for (k, count) in &res.turn_counts {
                let _ = writeln!(s, "  {k:>4}  {count}");
            }
            s
        }
        Format::Json => {
            let counts: serde_json::Map<String, Value> = res
                .turn_counts
                .iter()
                .map(|(k, c)| (k.to_string(), json!(c)))
                .collect();
            json_text(json!({
                "params": params_json(params),
                "p": res.p,
                "trials": res.trials,
                "wins": res.wins,
                "frequency": res.frequency,
                "stderr": res.stderr,
                "seed": res.seed,
                "workers": res.workers,
                "turn_counts": counts,
            }))
        }
        Format::Csv => {
            let mut s = String::from("turn,count\n");
            for (k, count) in &res.turn_counts {
                let _ = writeln!(s, "{k},{count}");
            }
            s
        }
    }
}

pub fn cmd_simulate(
    params: &GameParams,
    p: Option<&str>,
    trials: u64,
    seed: u64,
    workers: usize,
    format: Format,
) -> Result<Output, CliError> {
    let res = match p {
        None => simulate_at_pstar(params, trials, seed, workers)?,
        Some(p) => {
            let exact = parse_rational(p)?;
            let p = exact
                .to_f64()
                .ok_or_else(|| CliError::Usage(format!("p = {exact} is not representable")))?;
            simulate(&SimConfig::new(params.clone(), p, trials, seed).with_workers(workers))?
        }
    };
    Ok(Output::ok(render_simulation(params, &res, format)))
}

fn render_poly_table(table: &PolyTable, format: Format) -> String {
    let (a, b) = (table.alpha, table.beta);
    match format {
        Format::Text => {
            let mut s = format!("n\tI(p | n, alpha = {a}, beta = {b})\n");
            for (n, r) in &table.rows {
                let _ = writeln!(s, "{n}\t{}", r.poly);
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("n,alpha,beta,degree,polynomial\n");
            for (n, r) in &table.rows {
                let _ = writeln!(
                    s,
                    "{n},{a},{b},{},{}",
                    r.poly.degree().unwrap_or(0),
                    csv_field(&r.poly.to_string())
                );
            }
            s
        }
        Format::Latex => {
            let mut s = format!("\\begin{{tabular}}{{rl}}\nn & $I(p \\mid n, \\alpha = {a}, \\beta = {b})$ \\\\\n\\hline\n");
            for (n, r) in &table.rows {
                let _ = writeln!(s, "{n} & ${}$ \\\\", poly_latex(&r.poly));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|(n, r)| {
                    let mut row = poly_json(&r.poly, r.degenerate);
                    row["n"] = json!(n);
                    row
                })
                .collect();
            json_text(json!({ "table": table.which, "alpha": a, "beta": b, "rows": rows }))
        }
    }
}

fn render_table6(rows: &[Table6Row], format: Format) -> String {
    let pn = |r: &Table6Row| {
        r.p_n_star
            .map(|p| format!("{p:.4}"))
            .unwrap_or_else(|| "-".into())
    };
    match format {
        Format::Text => {
            let mut s = format!(
                "{:>3} {:>3} {:>3}  {:>7} {:>8} {:>7} {:>7}  {:>7} {:>7}  note\n",
                "n", "a", "b", "p_n*", "I(p_n*)", "p*", "I(p*)", "printed", "printed"
            );
            for r in rows {
                let e = &r.printed;
                let _ = writeln!(
                    s,
                    "{:>3} {:>3} {:>3}  {:>7} {:>8.3} {:>7.4} {:>7.3}  {:>7.3} {:>7.3}  {}",
                    e.n,
                    e.alpha,
                    e.beta,
                    pn(r),
                    r.i_pn_star,
                    r.p_star,
                    r.i_p_star,
                    e.i_pn_star,
                    e.i_p_star,
                    r.annotation()
                );
            }
            s
        }
        Format::Csv => {
            let mut s = String::from(
                "n,alpha,beta,p_n_star,i_pn_star,p_star,i_p_star,printed_i_pn_star,printed_i_p_star,note\n",
            );
            for r in rows {
                let e = &r.printed;
                let _ = writeln!(
                    s,
                    "{},{},{},{},{:.3},{:.4},{:.3},{:.3},{:.3},{}",
                    e.n,
                    e.alpha,
                    e.beta,
                    pn(r),
                    r.i_pn_star,
                    r.p_star,
                    r.i_p_star,
                    e.i_pn_star,
                    e.i_p_star,
                    csv_field(&r.annotation())
                );
            }
            s
        }
        Format::Latex => {
            let mut s = String::from(
                "\\begin{tabular}{rrrcc}\nn & $\\alpha$ & $\\beta$ & $I(p_n^* \\mid n, \\alpha, \\beta)$ & $I(p^* \\mid n, \\alpha, \\beta)$ \\\\\n\\hline\n",
            );
            for r in rows {
                let e = &r.printed;
                let _ = writeln!(
                    s,
                    "{} & {} & {} & {:.3} & {:.3} \\\\",
                    e.n, e.alpha, e.beta, r.i_pn_star, r.i_p_star
                );
            }
            s.push_str("\\end{tabular}\n");
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let e = &r.printed;
                    json!({
                        "n": e.n, "alpha": e.alpha, "beta": e.beta,
                        "p_n_star": r.p_n_star, "i_pn_star": r.i_pn_star,
                        "p_star": r.p_star, "i_p_star": r.i_p_star,
                        "printed_i_pn_star": e.i_pn_star, "printed_i_p_star": e.i_p_star,
                        "advisory": e.advisory_pn_star || e.advisory_p_star,
                        "note": r.annotation(),
                    })
                })
                .collect();
            json_text(json!({ "table": 6, "rows": rows }))
        }
    }
}

pub fn cmd_table(which: usize, tol: f64, format: Format) -> Result<Output, CliError> {
    let text = if which == 6 {
        render_table6(&tables::table6(tol)?, format)
    } else {
        render_poly_table(&tables::poly_table(which)?, format)
    };
    Ok(Output::ok(text))
}

fn render_verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => json_text(json!({
            "cases": report.cases,
            "matched": report.matched,
            "mismatches": report.mismatches.iter()
                .map(|m| json!({ "n": m.n, "alpha": m.alpha, "beta": m.beta, "k": m.k }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("n,alpha,beta,k\n");
            for m in &report.mismatches {
                let _ = writeln!(s, "{},{},{},{}", m.n, m.alpha, m.beta, m.k);
            }
            s
        }
        Format::Text | Format::Latex => {
            let mut s = format!("{}/{} cases match\n", report.matched, report.cases);
            for m in &report.mismatches {
                let _ = writeln!(
                    s,
                    "mismatch: (n, alpha, beta) = ({}, {}, {}), k = {}",
                    m.n, m.alpha, m.beta, m.k
                );
            }
            s
        }
    }
}

pub fn cmd_verify(
    provider: &dyn PmfProvider,
    max_n: i64,
    max_alpha: i64,
    max_beta: i64,
    format: Format,
) -> Result<Output, CliError> {
    let report = verify::verify_grid(provider, max_n, max_alpha, max_beta)?;
    Ok(Output {
        text: render_verify(&report, format),
        code: if report.passed() { 0 } else { 1 },
    })
}

/// Runs a parsed command; `verify` checks `provider`.
pub fn execute_with(cli: &Cli, provider: &dyn PmfProvider) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Poly(game) => cmd_poly(&game.params()?, format),
        Command::Pmf(game) => cmd_pmf(&game.params()?, format),
        Command::Minimize { game, tol } => cmd_minimize(&game.params()?, *tol, format),
        Command::Pstar { alpha, beta } => cmd_pstar(alpha, beta, format),
        Command::Simulate {
            game,
            p,
            at_pstar: _,
            trials,
            seed,
            workers,
        } => cmd_simulate(
            &game.params()?,
            p.as_deref(),
            *trials,
            *seed,
            *workers,
            format,
        ),
        Command::Table { which, tol } => cmd_table(*which, *tol, format),
        Command::Verify {
            max_n,
            max_alpha,
            max_beta,
        } => cmd_verify(provider, *max_n, *max_alpha, *max_beta, format),
    }
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    execute_with(cli, &verify::Analytic)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_with<I, T>(
    args: I,
    provider: &dyn PmfProvider,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                2
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    match execute_with(&cli, provider) {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &verify::Analytic, out, err)
}
