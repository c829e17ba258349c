//! The `kronlab` command line: single queries, sweeps and reports.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 a formula disagreed with
//! the oracle where the regime predicate claimed validity, 3 an internal
//! invariant failed (for example a certificate cheaper than the oracle).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::closed_form::{
    alpha_formula, alpha_witness, beta_formula, congruence_data, ln_value, regime_conditions,
    Triple, Witness, WitnessKind,
};
use crate::error::Error;
use crate::greedy::{greedy_en_certificate, Certificate, TripleProblem};
use crate::oracle::{
    alpha_grid_lower_bound, candidate_budget, mu_exact, OracleResult, SpectrumProblem,
};
use crate::report::{
    random_targets, rational_json, rows_to_csv, rows_to_json, sweep, sweep_row, EvaluatedRow,
    Verification,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Random targets per triple for the greedy part of `--verify`.
pub const VERIFY_SAMPLES: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "kronlab",
    version,
    about = "Exact approximation costs and Kronecker constants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV (LF line endings, no quoting).
    #[arg(long)]
    pub csv: bool,
    /// Write the report to PATH atomically instead of stdout; a .csv or
    /// .json extension selects the format when no flag does.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Significant digits of the decimal approximations.
    #[arg(long, value_name = "P", default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub precision: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact approximation cost of targets T for the set S.
    Mu {
        /// Comma-separated increasing frequencies, e.g. 1,2,100.
        #[arg(long = "set", value_name = "S")]
        set: String,
        /// Comma-separated rational targets, e.g. 0,1/2,-3/4.
        #[arg(long = "t", value_name = "T", allow_hyphen_values = true)]
        targets: String,
        /// Also build a greedy certificate (three frequencies, coprime a < b).
        #[arg(long)]
        greedy: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Congruence data, closed-form constants and a witness for {A, B, N}.
    Constants {
        a: i64,
        b: i64,
        n: i64,
        /// Add the greedy random-target check to the oracle checks.
        #[arg(long)]
        verify: bool,
        /// Also report the grid lower bound with denominator D.
        #[arg(long, value_name = "D")]
        grid: Option<i64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One row per N in FROM..=TO.
    Sweep {
        a: i64,
        b: i64,
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        /// Add the greedy random-target check to every row.
        #[arg(long)]
        verify: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, env = "KRONLAB_JOBS", default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The extremal target for {A, B, N} and its cost.
    Witness {
        a: i64,
        b: i64,
        n: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Oracle candidate counts against the O(d^2 max(n_i + n_j)) budget.
    Bench {
        #[arg(long = "set", value_name = "S")]
        set: String,
        /// Number of deterministic random targets besides 0 and 1/2.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::InvalidInput(_)
            | Error::NotCoprime { .. }
            | Error::Parse(_)
            | Error::TooLarge { .. } => EXIT_USAGE,
            _ => EXIT_INVARIANT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// A rendered report and the exit code to finish with.
struct Outcome {
    text: String,
    code: i32,
    warnings: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome {
            text,
            code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

impl OutputArgs {
    /// Explicit flags win; otherwise a `.csv` or `.json` extension on
    /// `--out` picks the format.
    fn format(&self) -> Format {
        let ext = self
            .out
            .as_deref()
            .and_then(Path::extension)
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            match ext.as_deref() {
                Some("csv") => Format::Csv,
                Some("json") => Format::Json,
                _ => Format::Text,
            }
        }
    }

    fn precision(&self) -> usize {
        self.precision as usize
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let output = match &cli.command {
        Command::Mu { output, .. }
        | Command::Constants { output, .. }
        | Command::Sweep { output, .. }
        | Command::Witness { output, .. }
        | Command::Bench { output, .. } => output.clone(),
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("kronlab: {w}");
            }
            if let Err(f) = emit(&outcome.text, output.out.as_deref()) {
                eprintln!("kronlab: {}", f.message);
                return f.code;
            }
            outcome.code
        }
        Err(f) => {
            eprintln!("kronlab: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}")))
        }
        Some(path) => write_atomically(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place; on failure the temporary file is removed.
pub fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Mu {
            set,
            targets,
            greedy,
            output,
        } => cmd_mu(set, targets, *greedy, output),
        Command::Constants {
            a,
            b,
            n,
            verify,
            grid,
            output,
        } => cmd_constants(*a, *b, *n, *verify, *grid, output),
        Command::Sweep {
            a,
            b,
            from,
            to,
            verify,
            jobs,
            output,
        } => cmd_sweep(*a, *b, *from, *to, *verify, *jobs, output),
        Command::Witness { a, b, n, output } => cmd_witness(*a, *b, *n, output),
        Command::Bench {
            set,
            samples,
            output,
        } => cmd_bench(set, *samples, output),
    }
}

fn parse_set(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|f| {
            f.trim()
                .parse::<i64>()
                .map_err(|_| Failure::usage(format!("bad frequency {f:?} in --set")))
        })
        .collect()
}

fn parse_targets(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|f| f.trim().parse::<Rational>().map_err(Failure::from))
        .collect()
}

fn show(r: &Rational, precision: usize) -> String {
    format!("{} ({})", r, r.to_decimal(precision))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn json_text(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("plain JSON values");
    text.push('\n');
    text
}

fn oracle_json(r: &OracleResult, budget: u64, p: usize) -> Value {
    json!({
        "value": rational_json(&r.value, p),
        "x_star": rational_json(&r.x_star, p),
        "k_star": r.k_star.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "candidates_examined": r.candidates_examined,
        "candidate_budget": budget,
    })
}

fn certificate_json(c: &Certificate, p: usize) -> Value {
    json!({
        "x_star": rational_json(&c.x_star, p),
        "k": c.k.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "cost": rational_json(&c.cost, p),
        "method": serde_json::to_value(c.method).expect("unit enum"),
        "negated": c.negated,
    })
}

fn cmd_mu(set: &str, targets: &str, greedy: bool, out: &OutputArgs) -> Result<Outcome, Failure> {
    let spectrum = parse_set(set)?;
    let targets = parse_targets(targets)?;
    let problem = SpectrumProblem::new(spectrum.clone(), targets.clone())?;
    let budget = candidate_budget(&spectrum);
    let result = mu_exact(&problem);
    if result.candidates_examined > budget {
        return Err(Failure::invariant(format!(
            "oracle examined {} candidates, budget {budget}",
            result.candidates_examined
        )));
    }

    let mut warnings = Vec::new();
    let certificate = if greedy {
        if spectrum.len() != 3 {
            return Err(Failure::usage("--greedy needs exactly three frequencies"));
        }
        let tp = TripleProblem::from_parts(
            spectrum[0],
            spectrum[1],
            spectrum[2],
            [targets[0].clone(), targets[1].clone(), targets[2].clone()],
        )?;
        let cert = match greedy_en_certificate(&tp) {
            Ok(c) => c,
            Err(Error::NotInAsymptoticRegime { best_effort, .. }) => {
                warnings.push(
                    "outside the asymptotic regime; reporting the weaker greedy bound".into(),
                );
                *best_effort
            }
            Err(e) => return Err(e.into()),
        };
        if !cert.verify(&tp) {
            return Err(Failure::invariant(
                "certificate does not re-evaluate to its stated cost",
            ));
        }
        if cert.cost < result.value {
            return Err(Failure::invariant(format!(
                "certificate cost {} is below the oracle value {}",
                cert.cost, result.value
            )));
        }
        Some(cert)
    } else {
        None
    };

    let p = out.precision();
    let text = match out.format() {
        Format::Json => {
            let mut v = json!({
                "spectrum": spectrum,
                "targets": targets.iter().map(|t| rational_json(t, p)).collect::<Vec<_>>(),
                "oracle": oracle_json(&result, budget, p),
            });
            if let Some(c) = &certificate {
                v["certificate"] = certificate_json(c, p);
            }
            json_text(&v)
        }
        Format::Csv => {
            let mut header = String::from("set,targets,value,x_star,candidates_examined");
            let mut row = format!(
                "{},{},{},{},{}",
                join(&spectrum, " "),
                targets
                    .iter()
                    .map(Rational::to_fraction_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                result.value.to_fraction_string(),
                result.x_star.to_fraction_string(),
                result.candidates_examined
            );
            if let Some(c) = &certificate {
                header.push_str(",cert_x_star,cert_cost,cert_method");
                let method = serde_json::to_value(c.method).expect("unit enum");
                let _ = write!(
                    row,
                    ",{},{},{}",
                    c.x_star.to_fraction_string(),
                    c.cost.to_fraction_string(),
                    method.as_str().unwrap_or_default()
                );
            }
            format!("{header}\n{row}\n")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "value       {}", show(&result.value, p));
            let _ = writeln!(s, "x_star      {}", show(&result.x_star, p));
            let _ = writeln!(s, "k_star      [{}]", join(&result.k_star, ", "));
            let _ = writeln!(
                s,
                "candidates  {} of budget {budget}",
                result.candidates_examined
            );
            if let Some(c) = &certificate {
                let method = serde_json::to_value(c.method).expect("unit enum");
                let _ = writeln!(s, "greedy      {}", show(&c.cost, p));
                let _ = writeln!(s, "  x_star    {}", show(&c.x_star, p));
                let _ = writeln!(s, "  k         [{}]", join(&c.k, ", "));
                let _ = writeln!(s, "  method    {}", method.as_str().unwrap_or_default());
                let _ = writeln!(s, "  negated   {}", c.negated);
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: EXIT_OK,
        warnings,
    })
}

fn witness_json(w: &Witness, p: usize) -> Value {
    let kind = match w.kind {
        WitnessKind::WindowEndpoint => "window-endpoint".to_string(),
        WitnessKind::Binary(t3) => format!("binary t3={}", t3.value()),
    };
    json!({
        "targets": w.targets.iter().map(|t| rational_json(t, p)).collect::<Vec<_>>(),
        "raw_t3": rational_json(&w.raw_t3, p),
        "expected": rational_json(&w.expected, p),
        "kind": kind,
    })
}

fn witness_kind(w: &Witness) -> String {
    match w.kind {
        WitnessKind::WindowEndpoint => "window endpoint".into(),
        WitnessKind::Binary(t3) => format!("binary, t3 = {}", t3.value()),
    }
}

fn cmd_constants(
    a: i64,
    b: i64,
    n: i64,
    verify: bool,
    grid: Option<i64>,
    out: &OutputArgs,
) -> Result<Outcome, Failure> {
    let t = Triple::new(a, b, n)?;
    let cong = congruence_data(&t);
    let alpha = alpha_formula(&t);
    let beta = beta_formula(&t);
    let ln = ln_value(&t);
    let witness = alpha_witness(&t);
    let regime = regime_conditions(&t);
    let evaluated = sweep_row(&t, if verify { VERIFY_SAMPLES } else { 0 });
    let check = &evaluated.check;
    let grid = grid
        .map(|d| alpha_grid_lower_bound(&t.spectrum(), d))
        .transpose()?;

    let mut outcome_code = EXIT_OK;
    let mut warnings = Vec::new();
    if check.is_mismatch() {
        outcome_code = EXIT_MISMATCH;
        warnings.push(format!(
            "{t}: formula disagrees with the oracle inside the claimed regime"
        ));
    }
    if let Some(g) = &grid {
        if g.value > alpha.value && regime.holds() {
            outcome_code = EXIT_MISMATCH;
            warnings.push(format!(
                "{t}: grid lower bound {} exceeds alpha {}",
                g.value, alpha.value
            ));
        }
    }

    let p = out.precision();
    let row = &evaluated.row;
    let text = match out.format() {
        Format::Csv => rows_to_csv(std::slice::from_ref(row)),
        Format::Json => {
            let mut v = json!({
                "a": a,
                "b": b,
                "n": n,
                "congruence": serde_json::to_value(cong).expect("plain struct"),
                "alpha": {
                    "value": rational_json(&alpha.value, p),
                    "case": serde_json::to_value(alpha.case).expect("unit enum"),
                    "regime": serde_json::to_value(alpha.regime).expect("unit enum"),
                },
                "beta": rational_json(&beta.value, p),
                "ln": rational_json(&ln, p),
                "gap": row.gap,
                "witness": witness_json(&witness, p),
                "regime_conditions": serde_json::to_value(regime).expect("plain struct"),
                "verified": row.verified.as_str(),
                "checks": {
                    "beta_oracle": rational_json(&check.beta_oracle, p),
                    "beta_matches": check.beta_matches,
                    "binary_rows_match": check.binary_rows_match,
                    "witness_matches": check.witness_matches,
                    "greedy_samples": check.greedy_samples,
                    "greedy_failures": check.greedy_failures,
                },
            });
            if let Some(g) = &grid {
                v["grid_lower_bound"] = json!({
                    "value": rational_json(&g.value, p),
                    "argmax": g.argmax.iter().map(|t| rational_json(t, p)).collect::<Vec<_>>(),
                    "targets_evaluated": g.targets_evaluated,
                });
            }
            json_text(&v)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "set         {t}");
            let _ = writeln!(
                s,
                "congruence  r={} T={} R={} S={} (n mod 2(a+b) = {}, g={} h={})",
                cong.r, cong.t_inv, cong.big_r, cong.s, cong.r2, cong.g, cong.h
            );
            let case = serde_json::to_value(alpha.case).expect("unit enum");
            let _ = writeln!(
                s,
                "alpha       {}  [{}]",
                show(&alpha.value, p),
                case.as_str().unwrap_or_default()
            );
            let _ = writeln!(s, "beta        {}", show(&beta.value, p));
            let _ = writeln!(s, "ln          {}", show(&ln, p));
            let _ = writeln!(s, "gap         {}", row.gap);
            let _ = writeln!(
                s,
                "witness     ({})  cost {}  [{}]",
                join(&witness.targets, ", "),
                witness.expected,
                witness_kind(&witness)
            );
            let _ = writeln!(
                s,
                "regime      {}",
                if regime.holds() {
                    "asymptotic"
                } else {
                    "small n"
                }
            );
            let _ = writeln!(
                s,
                "oracle      beta {}  rows {:?}  witness {}",
                check.beta_oracle,
                check.binary_rows_match,
                match check.witness_matches {
                    Some(m) => m.to_string(),
                    None => "n/a".into(),
                }
            );
            if verify {
                let _ = writeln!(
                    s,
                    "greedy      {} of {} random targets above alpha",
                    check.greedy_failures, check.greedy_samples
                );
            }
            if let Some(g) = &grid {
                let _ = writeln!(
                    s,
                    "grid        {} (lower bound over {} targets)",
                    show(&g.value, p),
                    g.targets_evaluated
                );
            }
            let _ = writeln!(s, "verified    {}", row.verified.as_str());
            s
        }
    };
    Ok(Outcome {
        text,
        code: outcome_code,
        warnings,
    })
}

fn cmd_sweep(
    a: i64,
    b: i64,
    from: i64,
    to: i64,
    verify: bool,
    jobs: usize,
    out: &OutputArgs,
) -> Result<Outcome, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::invariant(format!("cannot start worker pool: {e}")))?;
    let samples = if verify { VERIFY_SAMPLES } else { 0 };
    let rows: Vec<EvaluatedRow> = pool.install(|| sweep(a, b, from, to, samples))?;

    let mismatches: Vec<i64> = rows
        .iter()
        .filter(|e| e.check.is_mismatch())
        .map(|e| e.row.n)
        .collect();
    let plain: Vec<_> = rows.iter().map(|e| e.row.clone()).collect();
    let p = out.precision();
    let text = match out.format() {
        Format::Json => rows_to_json(&plain, p),
        Format::Csv => rows_to_csv(&plain),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>8} {:>3} {:>3} {:>3}  {:<24} {:<24} {:<6} verified",
                "n", "r", "R", "S", "alpha", "beta", "gap"
            );
            for r in &plain {
                let _ = writeln!(
                    s,
                    "{:>8} {:>3} {:>3} {:>3}  {:<24} {:<24} {:<6} {}",
                    r.n,
                    r.r,
                    r.big_r,
                    r.s,
                    r.alpha.to_fraction_string(),
                    r.beta.to_fraction_string(),
                    r.gap,
                    r.verified.as_str()
                );
            }
            s
        }
    };
    let unverified = plain
        .iter()
        .filter(|r| r.verified == Verification::UnverifiedSmallN)
        .count();
    let mut outcome = Outcome::ok(text);
    if unverified > 0 {
        outcome
            .warnings
            .push(format!("{unverified} row(s) flagged unverified-small-n"));
    }
    if !mismatches.is_empty() {
        outcome.code = EXIT_MISMATCH;
        outcome.warnings.push(format!(
            "formula disagrees with the oracle inside the claimed regime at n = {}",
            join(&mismatches, ", ")
        ));
    }
    Ok(outcome)
}

fn cmd_witness(a: i64, b: i64, n: i64, out: &OutputArgs) -> Result<Outcome, Failure> {
    let t = Triple::new(a, b, n)?;
    let w = alpha_witness(&t);
    let p = out.precision();
    let text = match out.format() {
        Format::Json => {
            let mut v = witness_json(&w, p);
            v["a"] = json!(a);
            v["b"] = json!(b);
            v["n"] = json!(n);
            json_text(&v)
        }
        Format::Csv => format!(
            "a,b,n,t1,t2,t3,raw_t3,expected\n{a},{b},{n},{},{},{},{},{}\n",
            w.targets[0].to_fraction_string(),
            w.targets[1].to_fraction_string(),
            w.targets[2].to_fraction_string(),
            w.raw_t3.to_fraction_string(),
            w.expected.to_fraction_string()
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "targets     ({})", join(&w.targets, ", "));
            let _ = writeln!(s, "raw t3      {}", w.raw_t3);
            let _ = writeln!(s, "expected    {}", show(&w.expected, p));
            let _ = writeln!(s, "kind        {}", witness_kind(&w));
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_bench(set: &str, samples: usize, out: &OutputArgs) -> Result<Outcome, Failure> {
    let spectrum = parse_set(set)?;
    crate::oracle::validate_spectrum(&spectrum)?;
    let d = spectrum.len();
    let budget = candidate_budget(&spectrum);
    let mut suites = vec![
        ("zero".to_string(), vec![Rational::zero(); d]),
        ("half".to_string(), vec![Rational::half(); d]),
    ];
    // random_targets draws triples; chain enough of them to fill d slots
    let per_target = d.div_ceil(3);
    let pool: Vec<Rational> = random_targets(0x6b72_6f6e, samples * per_target, 60)
        .into_iter()
        .flatten()
        .collect();
    for (i, chunk) in pool.chunks(3 * per_target).take(samples).enumerate() {
        suites.push((format!("random-{i}"), chunk[..d].to_vec()));
    }

    struct Run {
        label: String,
        examined: u64,
        micros: u128,
        value: Rational,
    }
    let mut runs = Vec::new();
    for (label, targets) in suites {
        let p = SpectrumProblem::new(spectrum.clone(), targets)?;
        let start = Instant::now();
        let r = mu_exact(&p);
        let micros = start.elapsed().as_micros();
        if r.candidates_examined > budget {
            return Err(Failure::invariant(format!(
                "{label}: {} candidates exceed the budget {budget}",
                r.candidates_examined
            )));
        }
        runs.push(Run {
            label,
            examined: r.candidates_examined,
            micros,
            value: r.value,
        });
    }

    let p = out.precision();
    let text = match out.format() {
        Format::Json => json_text(&json!({
            "spectrum": spectrum,
            "candidate_budget": budget,
            "runs": runs.iter().map(|r| json!({
                "targets": r.label,
                "candidates_examined": r.examined,
                "micros": r.micros as u64,
                "value": rational_json(&r.value, p),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("targets,candidates_examined,candidate_budget,micros,value\n");
            for r in &runs {
                let _ = writeln!(
                    s,
                    "{},{},{budget},{},{}",
                    r.label,
                    r.examined,
                    r.micros,
                    r.value.to_fraction_string()
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!("set {{{}}}  budget {budget}\n", join(&spectrum, ", "));
            for r in &runs {
                let _ = writeln!(
                    s,
                    "{:<10} {:>10} candidates {:>10} us  value {}",
                    r.label, r.examined, r.micros, r.value
                );
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_commands() {
        let cli = Cli::try_parse_from(["kronlab", "mu", "--set", "1,2,100", "--t", "-1/2,0,1/2"])
            .unwrap();
        assert!(matches!(cli.command, Command::Mu { .. }));
        assert!(Cli::try_parse_from(["kronlab", "constants", "1", "2"]).is_err());
        assert!(
            Cli::try_parse_from(["kronlab", "witness", "1", "2", "3", "--json", "--csv"]).is_err()
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["kronlab", "--help"]), EXIT_OK);
        assert_eq!(run(["kronlab", "frobnicate"]), EXIT_USAGE);
        assert_eq!(
            run(["kronlab", "mu", "--set", "2,1", "--t", "0,0"]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["kronlab", "mu", "--set", "1,2", "--t", "x,0"]),
            EXIT_USAGE
        );
        assert_eq!(run(["kronlab", "constants", "2", "4", "9"]), EXIT_USAGE);
    }

    #[test]
    fn atomic_write_replaces_and_cleans_up() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        write_atomically(&path, "one\n").unwrap();
        write_atomically(&path, "two\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomically(&dir.path().join("missing/rows.csv"), "x").is_err());
    }
}
