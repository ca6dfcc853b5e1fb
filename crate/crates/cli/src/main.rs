//! `pwlie`: permutation weights, string functions and regression checks for
//! `A_N^(1)`.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 cache I/O failure (output
//! still printed), 4 solver error, 5 verification mismatch.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pwlie_core::pweights::{pweights, CacheError, PermutationWeightSet, WeightCache};
use pwlie_core::verify::{self, bundled_fixtures, bundled_misprints, check_table, load_fixtures, TABLES};
use pwlie_core::weightlattice::{parse_int_list, AffineDominant};
use pwlie_core::weylkac::{solve_strings, SolveOptions, StringFunctionTable};
use pwlie_core::Specialization;

const EXIT_ARGS: u8 = 2;
const EXIT_CACHE: u8 = 3;
const EXIT_SOLVER: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(name = "pwlie", version, about = "Permutation weights and string functions of A_N^(1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation weights of a dominant weight, grouped by depth.
    Pweights(PweightsArgs),
    /// String functions from the Weyl–Kac formula.
    Strings(StringsArgs),
    /// Bundled tables and oracle cross-checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct WeightArgs {
    /// Rank N of A_N^(1).
    #[arg(long)]
    rank: usize,
    /// Affine Dynkin labels a_0,…,a_N.
    #[arg(long, allow_hyphen_values = true)]
    labels: String,
    /// Horizon K.
    #[arg(long = "max-depth")]
    max_depth: u32,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct CacheArgs {
    /// Do not read or write the permutation-weight cache.
    #[arg(long)]
    no_cache: bool,
    /// Cache directory (default `$PWLIE_CACHE`, else `~/.cache/pwlie`).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct PweightsArgs {
    #[command(flatten)]
    weight: WeightArgs,
}

#[derive(Args)]
struct StringsArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// Specialization exponents t_1,…,t_{N+1}, summing to 0.
    #[arg(long, allow_hyphen_values = true)]
    spec: Option<String>,
    /// Print each string function as a q-series.
    #[arg(long)]
    series: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Checks to run: table names (L0, L1, …, rho+L0+L1), `tables`,
    /// `oracle`, `signatures`. Default: all.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Directory with table files and misprints.json, replacing the bundled ones.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Largest rank of the oracle and signature suites.
    #[arg(long, default_value_t = 3)]
    oracle_rank: usize,
    /// Largest level of the oracle suite.
    #[arg(long, default_value_t = 3)]
    oracle_level: u32,
    /// Horizon of the oracle and signature suites.
    #[arg(long, default_value_t = 5)]
    oracle_depth: u32,
    #[command(flatten)]
    cache: CacheArgs,
}

/// Validated inputs of `pweights` and `strings`.
struct RunConfig {
    source: AffineDominant,
    horizon: u32,
    format: Format,
    specialization: Option<Specialization>,
    cache: Option<WeightCache>,
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_ARGS, message: message.into() }
}

impl CacheArgs {
    fn cache(&self) -> Option<WeightCache> {
        if self.no_cache {
            return None;
        }
        self.cache_dir.clone().or_else(WeightCache::default_dir).map(WeightCache::new)
    }
}

impl RunConfig {
    fn new(w: &WeightArgs, spec: Option<&str>) -> Result<Self, Failure> {
        let labels = parse_int_list(&w.labels).map_err(|e| invalid(format!("--labels: {e}")))?;
        if labels.len() != w.rank + 1 {
            return Err(invalid(format!("--labels needs {} entries for rank {}, got {}", w.rank + 1, w.rank, labels.len())));
        }
        let labels: Vec<u32> = labels
            .into_iter()
            .map(|a| u32::try_from(a).map_err(|_| invalid(format!("--labels: {a} is not a non-negative label"))))
            .collect::<Result<_, _>>()?;
        let source = AffineDominant::new(labels).map_err(|e| invalid(format!("--labels: {e}")))?;
        let specialization = spec
            .map(|s| {
                let t = parse_int_list(s).map_err(|e| invalid(format!("--spec: {e}")))?;
                Specialization::for_context(&source.context(), t).map_err(|e| invalid(format!("--spec: {e}")))
            })
            .transpose()?;
        Ok(Self { source, horizon: w.max_depth, format: w.format, specialization, cache: w.cache.cache() })
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pweights(a) => RunConfig::new(&a.weight, None).and_then(|c| cmd_pweights(&c)),
        Command::Strings(a) => RunConfig::new(&a.weight, a.spec.as_deref()).and_then(|c| cmd_strings(&c, a.series)),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn cache_outcome(errors: &[CacheError]) -> Result<(), Failure> {
    if errors.is_empty() {
        return Ok(());
    }
    let lines: Vec<String> = errors.iter().map(ToString::to_string).collect();
    Err(Failure { code: EXIT_CACHE, message: format!("cache: {}", lines.join("; ")) })
}

fn csv_text(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}

fn cmd_pweights(cfg: &RunConfig) -> Result<(), Failure> {
    let computed = pweights(&cfg.source, cfg.horizon, cfg.cache.as_ref());
    emit(&render_pweights(&computed.value, cfg.format));
    cache_outcome(&computed.cache_errors)
}

fn render_pweights(set: &PermutationWeightSet, format: Format) -> String {
    match format {
        Format::Table => set.display_lines().iter().map(|l| format!("{l}\n")).collect(),
        Format::Json => serde_json::to_string_pretty(set).expect("weight sets serialize") + "\n",
        Format::Csv => {
            let n = set.source().rank();
            let mut header = vec!["depth".to_string()];
            header.extend((1..=n).map(|i| format!("p{i}")));
            let rows = set.iter().map(|(d, w)| {
                std::iter::once(d.to_string()).chain(w.display_coords().iter().map(i64::to_string)).collect()
            });
            csv_text(std::iter::once(header).chain(rows))
        }
    }
}

fn cmd_strings(cfg: &RunConfig, series: bool) -> Result<(), Failure> {
    let options = SolveOptions { specialization: cfg.specialization.clone(), cache: cfg.cache.clone(), ..SolveOptions::default() };
    let computed = solve_strings(&cfg.source, cfg.horizon, &options)
        .map_err(|e| Failure { code: EXIT_SOLVER, message: e.to_string() })?;
    let table = &computed.value;
    if let Some(e) = &table.fallback_from {
        eprintln!("note: default specialization failed ({e}); used exponents {:?}", table.specialization.exponents());
    }
    emit(&render_strings(table, cfg.format, series)?);
    cache_outcome(&computed.cache_errors)
}

fn render_strings(table: &StringFunctionTable, format: Format, series: bool) -> Result<String, Failure> {
    if series {
        return Ok(table.to_series());
    }
    Ok(match format {
        Format::Table => table.to_table(),
        Format::Json => {
            let json = table
                .to_json()
                .ok_or_else(|| Failure { code: EXIT_SOLVER, message: "coefficient exceeds 128 bits; use the table format".into() })?;
            serde_json::to_string_pretty(&json).expect("tables serialize") + "\n"
        }
        Format::Csv => {
            let mut header = vec!["class".to_string(), "M0".to_string()];
            header.extend((0..=table.horizon).map(|m| format!("M={m}")));
            let rows = table.grid().into_iter().map(|(name, m0, cells)| {
                let mut row = vec![name, m0.to_string()];
                row.extend(cells);
                row
            });
            csv_text(std::iter::once(header).chain(rows))
        }
    })
}

struct Selection {
    tables: Vec<String>,
    oracle: bool,
    signatures: bool,
}

fn select(only: &[String]) -> Result<Selection, Failure> {
    if only.is_empty() {
        return Ok(Selection { tables: TABLES.iter().map(|(n, _)| n.to_string()).collect(), oracle: true, signatures: true });
    }
    let mut sel = Selection { tables: Vec::new(), oracle: false, signatures: false };
    for item in only {
        let item = item.trim();
        match item.to_ascii_lowercase().as_str() {
            "oracle" => sel.oracle = true,
            "signatures" => sel.signatures = true,
            "tables" => sel.tables.extend(TABLES.iter().map(|(n, _)| n.to_string())),
            lower => match TABLES.iter().find(|(n, _)| n.to_ascii_lowercase() == lower) {
                Some((n, _)) => sel.tables.push(n.to_string()),
                None => {
                    let names: Vec<&str> = TABLES.iter().map(|(n, _)| *n).collect();
                    return Err(invalid(format!(
                        "--only: unknown check `{item}` (expected {}, tables, oracle or signatures)",
                        names.join(", ")
                    )));
                }
            },
        }
    }
    sel.tables.dedup();
    Ok(sel)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let sel = select(&args.only)?;
    let (fixtures, misprints) = match &args.fixtures {
        Some(dir) => load_fixtures(dir).map_err(|e| Failure { code: EXIT_MISMATCH, message: e.to_string() })?,
        None => (bundled_fixtures(), bundled_misprints()),
    };
    let cache = args.cache.cache();
    let hard = |e: verify::VerifyError| Failure { code: EXIT_MISMATCH, message: e.to_string() };
    let mut report = String::new();
    let mut failed = 0;

    let mut table_fail = 0;
    let mut allowlisted = 0;
    for name in &sel.tables {
        let Some(fixture) = fixtures.iter().find(|f| &f.name == name) else {
            report.push_str(&format!("{name}: MISSING fixture\n"));
            table_fail += 1;
            continue;
        };
        let check = check_table(fixture, &misprints, cache.as_ref()).map_err(hard)?;
        allowlisted += check.allowlisted;
        if !check.passed() {
            table_fail += 1;
        }
        report.push_str(&format!("{check}\n"));
    }
    let mut summary = Vec::new();
    if !sel.tables.is_empty() {
        let status = if table_fail == 0 { "OK".to_string() } else { format!("{table_fail} MISMATCHED") };
        summary.push(format!("tables ({}): {status} ({allowlisted} allowlisted misprints)", sel.tables.len()));
        failed += table_fail;
    }

    if sel.oracle {
        let (checked, diffs) = verify::oracle_suite(args.oracle_rank, args.oracle_level, args.oracle_depth).map_err(hard)?;
        for d in &diffs {
            report.push_str(&d.to_string());
        }
        let status = if diffs.is_empty() { "OK" } else { "MISMATCH" };
        summary.push(format!("oracle ({checked} sources): {status}"));
        failed += diffs.len();
    }

    if sel.signatures {
        let suite = verify::signature_suite(args.oracle_rank, args.oracle_depth).map_err(hard)?;
        for p in &suite.problems {
            report.push_str(&format!("{p}\n"));
        }
        let status = if suite.passed() { "OK" } else { "MISMATCH" };
        summary.push(format!("signatures ({} weights): {status}", suite.weights));
        failed += suite.problems.len();
    }

    report.push_str(&summary.join("; "));
    report.push('\n');
    emit(&report);
    if failed > 0 {
        return Err(Failure { code: EXIT_MISMATCH, message: String::new() });
    }
    Ok(())
}
