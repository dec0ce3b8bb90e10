//! Command-line front end: evaluate single values, print series
//! coefficients, tabulate formula-vs-enumeration ranges, and run the
//! verification suites with CI-friendly exit codes (0 pass, 1 fail,
//! 2 usage error).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quadtri::formulas::t_formula;
use quadtri::oracle::{count_n, count_n0, count_t, count_t_prime, DEFAULT_BUDGET};
use quadtri::qseries::{eta_pow, gen_n, gen_t_prime, phi, psi, Series};
use quadtri::verify::{
    check_conjecture, verify_n_formulas, verify_relations, verify_series_identities,
    verify_t_formulas, Report, Status, DEFAULT_CONJECTURE_MAX, DEFAULT_N_MAX,
    DEFAULT_RELATIONS_MAX, DEFAULT_SERIES_ORDER, DEFAULT_T_MAX,
};
use quadtri::{Error, Form};

#[derive(Parser)]
#[command(
    name = "quadtri",
    version,
    about = "Representation counts by four squares or four triangular numbers: closed formulas, enumeration oracles, series cross-checks"
)]
struct Cli {
    /// Iteration cap per enumeration call
    #[arg(long, global = true, env = "QUADTRI_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate t(form; n) by closed formula, enumeration, or both
    Eval {
        /// Coefficient quadruple, e.g. 1,3,9,9
        #[arg(long)]
        form: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Count representations by direct enumeration
    Oracle {
        #[arg(long)]
        form: String,
        /// The represented value (n for t/tprime, m for N/N0)
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Quantity::T)]
        quantity: Quantity,
    },
    /// Print the coefficients of a theta, eta, or generating series
    Series {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Exponent scale: phi(q^k), psi(q^k), E_k
        #[arg(long, default_value_t = 1)]
        k: u64,
        /// Power for eta products (E_k^power)
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Coefficient quadruple for the generating series kinds
        #[arg(long)]
        form: Option<String>,
        /// Truncation order
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
    },
    /// Run verification suites and print machine-readable reports
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Range bound; per-suite defaults (t 300, n 2000, series 512, relations 100)
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
        /// Worker threads for the sweeps
        #[arg(long)]
        jobs: Option<usize>,
        /// Write every evaluated comparison to a CSV file
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Check the conjectured t(1,1,3,4) formula against enumeration
    Conjecture {
        #[arg(long = "max-n", default_value_t = DEFAULT_CONJECTURE_MAX)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Tabulate t(form; n) by formula and enumeration for n up to a bound
    Table {
        #[arg(long)]
        form: String,
        #[arg(long = "max-n")]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Fmt::Csv)]
        format: Fmt,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    T,
    #[value(name = "tprime")]
    TPrime,
    #[value(name = "n", alias = "N")]
    N,
    #[value(name = "n0", alias = "N0")]
    N0,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Phi,
    Psi,
    Eta,
    /// Generating series of N(form; n)
    N,
    /// Generating series of t'(form; n)
    #[value(name = "tprime")]
    TPrime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    T,
    N,
    Series,
    Relations,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) | Error::UnsupportedForm(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let budget = cli.budget;
    match cli.command {
        Command::Eval { form, n, method } => eval(&form, n, method, budget),
        Command::Oracle { form, n, quantity } => {
            let form: Form = form.parse()?;
            let value = match quantity {
                Quantity::T => count_t(form, n, budget)?,
                Quantity::TPrime => count_t_prime(form, n, budget)?,
                Quantity::N => count_n(form, n, budget)?,
                Quantity::N0 => count_n0(form, n, budget)?,
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { kind, k, power, form, order, format } => {
            series(kind, k, power, form.as_deref(), order, format)
        }
        Command::Verify { suite, max, format, jobs, dump } => {
            let reports = with_jobs(jobs, || run_suites(suite, max, budget))?;
            print_reports(&reports, format);
            if let Some(path) = dump {
                dump_rows(&path, &reports)?;
            }
            Ok(exit_for(&reports))
        }
        Command::Conjecture { max_n, format, jobs, dump } => {
            let report = with_jobs(jobs, || check_conjecture(max_n, budget))?;
            print_reports(std::slice::from_ref(&report), format);
            if let Some(path) = dump {
                dump_rows(&path, std::slice::from_ref(&report))?;
            }
            Ok(exit_for(std::slice::from_ref(&report)))
        }
        Command::Table { form, max_n, format } => table(&form, max_n, format, budget),
    }
}

fn eval(form: &str, n: u64, method: Method, budget: u64) -> Result<ExitCode, Error> {
    let form: Form = form.parse()?;
    match method {
        Method::Formula => {
            println!("formula={}", t_formula(form, n)?);
        }
        Method::Oracle => {
            println!("oracle={}", count_t(form, n, budget)?);
        }
        Method::Both => {
            let formula = t_formula(form, n)?;
            let oracle = count_t(form, n, budget)?;
            println!("formula={formula} oracle={oracle} match={}", formula == oracle as i64);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn series(
    kind: Kind,
    k: u64,
    power: u32,
    form: Option<&str>,
    order: usize,
    format: Fmt,
) -> Result<ExitCode, Error> {
    if k == 0 || power == 0 {
        return Err(Error::Domain("series scale and power must be positive".into()));
    }
    let series: Series = match kind {
        Kind::Phi => phi(k, order),
        Kind::Psi => psi(k, order),
        Kind::Eta => eta_pow(k, power, order),
        Kind::N | Kind::TPrime => {
            let form: Form = form
                .ok_or_else(|| Error::Domain("--form is required for generating series".into()))?
                .parse()?;
            match kind {
                Kind::N => gen_n(form, order),
                _ => gen_t_prime(form, order),
            }
        }
    };
    match format {
        Fmt::Json => {
            println!("{}", serde_json::to_string(series.coeffs()).expect("serializable"));
        }
        Fmt::Csv => {
            println!("index,coefficient");
            for (i, c) in series.coeffs().iter().enumerate() {
                println!("{i},{c}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_suites(suite: Suite, max: Option<u64>, budget: u64) -> Vec<Report> {
    let mut reports = Vec::new();
    if matches!(suite, Suite::T | Suite::All) {
        reports.push(verify_t_formulas(max.unwrap_or(DEFAULT_T_MAX), budget));
    }
    if matches!(suite, Suite::N | Suite::All) {
        reports.push(verify_n_formulas(max.unwrap_or(DEFAULT_N_MAX), budget));
    }
    if matches!(suite, Suite::Series | Suite::All) {
        let order = max.map(|m| m as usize).unwrap_or(DEFAULT_SERIES_ORDER);
        reports.push(verify_series_identities(order));
    }
    if matches!(suite, Suite::Relations | Suite::All) {
        reports.push(verify_relations(max.unwrap_or(DEFAULT_RELATIONS_MAX), budget));
    }
    reports
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Domain(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn status_str(status: Status) -> &'static str {
    match status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::BudgetExceeded => "budget-exceeded",
    }
}

fn print_reports(reports: &[Report], format: Fmt) {
    match format {
        Fmt::Json => {
            let text = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            };
            println!("{}", text.expect("serializable"));
        }
        Fmt::Csv => {
            println!("suite,range_lo,range_hi,status,cases,counterexamples,informational");
            for r in reports {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.suite,
                    r.range.0,
                    r.range.1,
                    status_str(r.status),
                    r.cases,
                    r.counterexamples.len(),
                    r.informational.len()
                );
            }
        }
    }
}

fn exit_for(reports: &[Report]) -> ExitCode {
    if reports.iter().all(Report::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn dump_rows(path: &PathBuf, reports: &[Report]) -> Result<(), Error> {
    let file = File::create(path)
        .map_err(|e| Error::Domain(format!("cannot create {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    let write = |out: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(out, "suite,input,oracle,formula,match")?;
        for r in reports {
            for row in &r.rows {
                // inputs contain commas ("form=1,3,9,9 n=5"), so quote them
                writeln!(
                    out,
                    "{},\"{}\",{},{},{}",
                    r.suite,
                    row.input,
                    row.oracle,
                    row.formula,
                    row.matched()
                )?;
            }
        }
        Ok(())
    };
    write(&mut out).map_err(|e| Error::Domain(format!("cannot write dump: {e}")))
}

fn table(form: &str, max_n: u64, format: Fmt, budget: u64) -> Result<ExitCode, Error> {
    let form: Form = form.parse()?;
    // reject unsupported forms before printing anything
    t_formula(form, 0)?;

    let mut mismatch = false;
    let mut truncated = false;
    let mut rows: Vec<(u64, i64, u64)> = Vec::new();
    for n in 0..=max_n {
        match count_t(form, n, budget) {
            Ok(oracle) => {
                let formula = t_formula(form, n)?;
                mismatch |= formula != oracle as i64;
                rows.push((n, formula, oracle));
            }
            Err(Error::Budget { .. }) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }

    match format {
        Fmt::Csv => {
            println!("n,t_formula,t_oracle,match");
            for &(n, formula, oracle) in &rows {
                println!("{n},{formula},{oracle},{}", formula == oracle as i64);
            }
            if truncated {
                println!("{},,,budget-exceeded", rows.len() as u64);
            }
        }
        Fmt::Json => {
            let mut objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|&(n, formula, oracle)| {
                    serde_json::json!({
                        "n": n,
                        "t_formula": formula,
                        "t_oracle": oracle,
                        "match": formula == oracle as i64,
                    })
                })
                .collect();
            if truncated {
                objects.push(serde_json::json!({
                    "n": rows.len() as u64,
                    "warning": "budget-exceeded",
                }));
            }
            println!("{}", serde_json::to_string_pretty(&objects).expect("serializable"));
        }
    }
    if mismatch || truncated {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
