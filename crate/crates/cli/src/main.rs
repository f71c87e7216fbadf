use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mapcount::coeff_file::{export_vector, read_vector};
use mapcount::counting::{count, CountRequest, Method};
use mapcount::error::{CliError, Result};
use mapcount::sweep::{
    asymptotic_csv, asymptotic_rows, census_report, conjecture_sweep, parallel_census, table_csv,
    table_rows,
};
use mapcount::verify::{verify_builtin, verify_vector};
use mapcount_core::load_builtin;
use mapcount_core::matching::{DartSystem, DEFAULT_DART_LIMIT};
use mapcount_core::Family;

/// Exact counts of even-valent maps on orientable surfaces.
#[derive(Debug, Parser)]
#[command(name = "mapcount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count maps with a given number of vertices.
    Count(CountArgs),
    /// CSV table of counts over a genus and vertex range.
    Table(TableArgs),
    /// Cross-check all counting methods against each other.
    Verify(VerifyArgs),
    /// Check the hypergeometric identity on a parameter grid.
    Conjecture(ConjectureArgs),
    /// Brute-force census over all dart matchings.
    Census(CensusArgs),
    /// Ratios of exact counts to their leading asymptotic term.
    Asymptotics(AsymptoticsArgs),
    /// Import or export coefficient files.
    Coeffs(CoeffsArgs),
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: mapcount_core::Error| e.to_string())
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    nu: u32,
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    vertices: u32,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Coefficient file to use instead of the embedded data.
    #[arg(long)]
    coeffs: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    nu: u32,
    #[arg(long)]
    genus_max: u32,
    #[arg(long)]
    vertices_max: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    gmax: u32,
    #[arg(long)]
    jmax: u32,
    /// Also compare with the census wherever it fits under the dart limit.
    #[arg(long)]
    with_census: bool,
    /// Verify this vector instead of the embedded data.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ConjectureArgs {
    #[arg(long)]
    lmax: u32,
    #[arg(long)]
    gmax: u32,
    #[arg(long)]
    jmax: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long, default_value_t = 2)]
    nu: u32,
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    vertices: u32,
    #[arg(long, default_value_t = DEFAULT_DART_LIMIT)]
    max_darts: usize,
}

#[derive(Debug, Args)]
struct AsymptoticsArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    genus: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    j_list: Vec<u32>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CoeffsArgs {
    /// Validate a coefficient file and print it in canonical form.
    #[arg(long, value_name = "FILE")]
    import: Option<PathBuf>,
    /// Print an embedded vector as a coefficient file.
    #[arg(long, num_args = 2, value_names = ["FAMILY", "GENUS"])]
    export_builtin: Option<Vec<String>>,
}

/// What a subcommand produced: text for stdout and whether it counts as a
/// success.
struct Outcome {
    text: String,
    ok: bool,
    failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            ok: true,
            failure: None,
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialise");
    text.push('\n');
    text
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Count(a) => {
            let imported = a.coeffs.as_deref().map(read_vector).transpose()?;
            let req = CountRequest {
                family: a.family,
                nu: a.nu,
                genus: a.genus,
                vertices: a.vertices,
            };
            let n = count(&req, a.method, imported.as_ref())?;
            Ok(Outcome::ok(format!("{n}\n")))
        }
        Command::Table(a) => {
            let rows = table_rows(a.family, a.nu, a.genus_max, a.vertices_max)?;
            Ok(Outcome::ok(if a.json { to_json(&rows) } else { table_csv(&rows) }))
        }
        Command::Verify(a) => {
            let report = match &a.coeffs {
                Some(path) => verify_vector(&read_vector(path)?, a.jmax),
                None => {
                    let limit = a.with_census.then_some(DEFAULT_DART_LIMIT);
                    verify_builtin(a.gmax, a.jmax, limit)?
                }
            };
            Ok(Outcome {
                text: if a.json { to_json(&report) } else { report.to_text() },
                ok: report.all_agree(),
                failure: report.first_mismatch(),
            })
        }
        Command::Conjecture(a) => {
            if a.gmax < 1 || a.jmax < 1 {
                return Err(CliError::Usage("--gmax and --jmax must be at least 1".into()));
            }
            let report = conjecture_sweep(a.lmax, a.gmax, a.jmax);
            let text = if a.json {
                to_json(&report)
            } else {
                let mut text = String::new();
                for (g, l, j) in &report.failures {
                    text.push_str(&format!("failure: g={g} l={l} j={j}\n"));
                }
                text.push_str(&report.summary());
                text.push('\n');
                text
            };
            let failure = report
                .failures
                .first()
                .map(|(g, l, j)| format!("identity fails at g={g} l={l} j={j}"));
            Ok(Outcome {
                text,
                ok: report.failures.is_empty(),
                failure,
            })
        }
        Command::Census(a) => {
            let system = DartSystem::new(a.nu, a.vertices, a.family)?;
            let c = parallel_census(&system, a.max_darts)?;
            Ok(Outcome::ok(census_report(&system, &c)))
        }
        Command::Asymptotics(a) => {
            let rows = asymptotic_rows(a.family, a.genus, &a.j_list)?;
            Ok(Outcome::ok(asymptotic_csv(&rows)))
        }
        Command::Coeffs(a) => {
            let v = match (a.import, a.export_builtin) {
                (Some(path), _) => read_vector(&path)?,
                (None, Some(pair)) => {
                    let family = parse_family(&pair[0]).map_err(CliError::Usage)?;
                    let genus = pair[1]
                        .parse()
                        .map_err(|_| CliError::Usage(format!("bad genus {:?}", pair[1])))?;
                    load_builtin(family, genus)?
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            Ok(Outcome::ok(export_vector(&v)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                if let Some(msg) = outcome.failure {
                    eprintln!("mismatch: {msg}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
