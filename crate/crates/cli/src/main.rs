mod cache;

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use disc_rect::asymptotics::{
    normalized_constant_series, oddeven_ratio_series, oddeven_target, ratio_series, ratio_target,
    row_profile_ratio_series, series_csv, three_row_even_constant, three_row_odd_constant,
    three_row_odd_constant_printed, AlphaSource, Parity,
};
use disc_rect::bfile;
use disc_rect::checks::Suite;
use disc_rect::engine::Engine;
use disc_rect::fixed::Fixed;
use disc_rect::formulas::alpha_closed_form;
use disc_rect::oracle::Oracle;
use disc_rect::{BigCount, Error};

use cache::{CacheKey, CountCache};

const CACHE_ENV: &str = "DISC_RECT_CACHE";

#[derive(Parser)]
#[command(
    name = "disc-rect",
    version,
    about = "Exact counts of ±1 matrices with all row and column sums in {-1, 0, 1}"
)]
struct Cli {
    /// Count cache file (the DISC_RECT_CACHE environment variable takes precedence)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Recompute every cache entry on load and fail on any disagreement
    #[arg(long, global = true)]
    paranoid: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print α(m, n), or α_r(m, n) with --row-sums
    Count {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Defaults to formula for m <= 4 and dp otherwise
        #[arg(long, value_enum)]
        engine: Option<EngineChoice>,
        /// Comma-separated row sums; counts column-good matrices with these row sums
        #[arg(long, allow_hyphen_values = true)]
        row_sums: Option<String>,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteChoice,
    },
    /// Write the α(m, n) grid as CSV
    Table {
        #[arg(long)]
        rows_max: usize,
        #[arg(long)]
        cols_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a b-file of α(3, 2k) values against the DP
    OeisCheck {
        bfile: PathBuf,
        /// Entries with a larger index are skipped
        #[arg(long, default_value_t = 60)]
        max_k: u64,
    },
    /// Print an exact ratio or normalization series as CSV
    Asymptotics {
        #[arg(long, value_enum)]
        series: SeriesChoice,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 2)]
        half_m: usize,
        #[arg(long, value_enum, default_value_t = ParityChoice::Even)]
        parity: ParityChoice,
        #[arg(long)]
        cols_max: usize,
        /// Row sums r for the profile series
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        /// Row sums r′ for the profile series
        #[arg(long, allow_hyphen_values = true)]
        r_prime: Option<String>,
    },
    /// Print every good matrix of the given size
    Enumerate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Dp,
    Oracle,
    Formula,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteChoice {
    Identities,
    Bijection,
    Majorization,
    Sequence,
    Asymptotics,
}

impl From<SuiteChoice> for Suite {
    fn from(s: SuiteChoice) -> Self {
        match s {
            SuiteChoice::Identities => Suite::Identities,
            SuiteChoice::Bijection => Suite::Bijection,
            SuiteChoice::Majorization => Suite::Majorization,
            SuiteChoice::Sequence => Suite::Sequence,
            SuiteChoice::Asymptotics => Suite::Asymptotics,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesChoice {
    Porp,
    Oddeven,
    Constant,
    Profile,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityChoice {
    Even,
    Odd,
}

/// A message for stderr and the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn verification(message: impl Display) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }

    fn usage(message: impl Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn io(message: impl Display) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_vector(text: &str) -> CliResult<Vec<i64>> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad integer {v:?} in {text:?}")))
        })
        .collect()
}

struct Counter {
    engine: Engine,
    oracle: Oracle,
    cache: Option<CountCache>,
}

impl Counter {
    fn new(cache_path: Option<PathBuf>, paranoid: bool) -> CliResult<Self> {
        let engine = Engine::default();
        let cache = match cache_path {
            None => None,
            Some(path) => {
                let cache = CountCache::open(&path)
                    .map_err(|e| Failure::io(format!("cache {}: {e}", path.display())))?;
                if paranoid {
                    validate(&engine, &cache)?;
                }
                Some(cache)
            }
        };
        Ok(Counter {
            engine,
            oracle: Oracle::default(),
            cache,
        })
    }

    fn cached(&self, key: &CacheKey) -> Option<BigCount> {
        self.cache.as_ref().and_then(|c| c.get(key)).cloned()
    }

    fn store(&mut self, key: CacheKey, value: &BigCount) -> CliResult<()> {
        if let Some(cache) = self.cache.as_mut() {
            cache
                .insert(key, value.clone())
                .map_err(|e| Failure::io(format!("writing cache: {e}")))?;
        }
        Ok(())
    }

    fn alpha(&mut self, m: usize, n: usize, engine: EngineChoice) -> CliResult<BigCount> {
        if engine == EngineChoice::Formula && m > 4 {
            return Err(Failure::usage(format!(
                "formula engine supports at most 4 rows, got {m}"
            )));
        }
        let key = CacheKey::Alpha { m, n };
        if let Some(v) = self.cached(&key) {
            return Ok(v);
        }
        let value = match engine {
            EngineChoice::Formula => alpha_closed_form(m, n).expect("closed form for m <= 4"),
            EngineChoice::Dp => self.engine.count_good(m, n)?,
            EngineChoice::Oracle => self.oracle.count_good(m, n)?,
        };
        self.store(key, &value)?;
        Ok(value)
    }

    fn alpha_r(
        &mut self,
        m: usize,
        n: usize,
        r: Vec<i64>,
        engine: EngineChoice,
    ) -> CliResult<BigCount> {
        match engine {
            EngineChoice::Formula => Err(Failure::usage(
                "formula engine does not count row profiles; use dp or oracle",
            )),
            EngineChoice::Oracle => Ok(self.oracle.count_row_profile(m, n, &r)?),
            EngineChoice::Dp => {
                let key = CacheKey::AlphaR { m, n, r: r.clone() };
                if let Some(v) = self.cached(&key) {
                    return Ok(v);
                }
                let value = self.engine.count_row_profile(m, n, &r)?;
                self.store(key, &value)?;
                Ok(value)
            }
        }
    }
}

fn validate(engine: &Engine, cache: &CountCache) -> CliResult<()> {
    for (key, value) in cache.entries() {
        let fresh = match key {
            CacheKey::Alpha { m, n } => engine.count_good(*m, *n)?,
            CacheKey::AlphaR { m, n, r } => engine.count_row_profile(*m, *n, r)?,
        };
        if &fresh != value {
            return Err(Failure::verification(format!(
                "cache entry {key:?} holds {value}, recomputed {fresh}"
            )));
        }
    }
    Ok(())
}

fn default_engine(m: usize) -> EngineChoice {
    if m <= 4 {
        EngineChoice::Formula
    } else {
        EngineChoice::Dp
    }
}

fn cmd_count(
    counter: &mut Counter,
    m: usize,
    n: usize,
    engine: Option<EngineChoice>,
    row_sums: Option<String>,
) -> CliResult<()> {
    let value = match row_sums {
        Some(text) => {
            let r = parse_vector(&text)?;
            counter.alpha_r(m, n, r, engine.unwrap_or(EngineChoice::Dp))?
        }
        None => counter.alpha(m, n, engine.unwrap_or_else(|| default_engine(m)))?,
    };
    println!("{value}");
    Ok(())
}

fn cmd_verify(suite: Suite) -> CliResult<()> {
    let checks = suite.run()?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        println!("{c}");
    }
    if failed > 0 {
        return Err(Failure::verification(format!(
            "{failed} of {} checks failed in suite {suite}",
            checks.len()
        )));
    }
    Ok(())
}

fn cmd_table(counter: &mut Counter, rows_max: usize, cols_max: usize, out: &Path) -> CliResult<()> {
    let mut csv = String::from("m\\n");
    for n in 0..=cols_max {
        csv.push_str(&format!(",{n}"));
    }
    csv.push('\n');
    for m in 1..=rows_max {
        let engine = default_engine(m);
        let row: Vec<BigCount> = if engine == EngineChoice::Dp
            && (0..=cols_max).any(|n| counter.cached(&CacheKey::Alpha { m, n }).is_none())
        {
            let series = counter.engine.count_good_series(m, cols_max)?;
            for (n, v) in series.iter().enumerate() {
                counter.store(CacheKey::Alpha { m, n }, v)?;
            }
            series
        } else {
            (0..=cols_max)
                .map(|n| counter.alpha(m, n, engine))
                .collect::<CliResult<_>>()?
        };
        csv.push_str(&m.to_string());
        for v in row {
            csv.push_str(&format!(",{v}"));
        }
        csv.push('\n');
    }
    fs::write(out, csv).map_err(|e| Failure::io(format!("{}: {e}", out.display())))
}

fn cmd_oeis_check(path: &Path, max_k: u64) -> CliResult<()> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let entries =
        bfile::parse(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let top = entries
        .iter()
        .map(|e| e.index)
        .filter(|&k| k <= max_k)
        .max()
        .unwrap_or(0);
    let series = Engine::default().count_good_series(3, 2 * top as usize)?;
    let report = bfile::compare(&entries, max_k, |k| Ok(series[2 * k as usize].clone()))?;
    let mut mismatches = 0;
    for c in &report {
        let status = if c.agrees() { "agree" } else { "mismatch" };
        if !c.agrees() {
            mismatches += 1;
        }
        println!(
            "k={} expected={} computed={} {status}",
            c.index, c.expected, c.computed
        );
    }
    let skipped = entries.len() - report.len();
    println!(
        "agreements={} mismatches={mismatches} skipped={skipped}",
        report.len() - mismatches
    );
    if mismatches > 0 {
        return Err(Failure::verification(format!(
            "{mismatches} b-file entries disagree"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_asymptotics(
    series: SeriesChoice,
    m: usize,
    half_m: usize,
    parity: ParityChoice,
    cols_max: usize,
    r: Option<String>,
    r_prime: Option<String>,
) -> CliResult<()> {
    let source = AlphaSource::Best;
    let csv = match series {
        SeriesChoice::Porp => {
            let target = ratio_target(m);
            series_csv(
                &ratio_series(m, cols_max, 2, source)?,
                &[("target", &target)],
            )
        }
        SeriesChoice::Oddeven => {
            let points = oddeven_ratio_series(half_m, cols_max, source)?;
            series_csv(&points, &[("target", &oddeven_target(half_m))])
        }
        SeriesChoice::Constant => {
            let parity = match parity {
                ParityChoice::Even => Parity::Even,
                ParityChoice::Odd => Parity::Odd,
            };
            let points = normalized_constant_series(m, parity, cols_max, source)?;
            match (m, parity) {
                (3, Parity::Even) => series_csv(&points, &[("target", &three_row_even_constant())]),
                (3, Parity::Odd) => series_csv(
                    &points,
                    &[
                        ("target", &three_row_odd_constant()),
                        ("printed_target", &three_row_odd_constant_printed()),
                    ],
                ),
                _ => series_csv(&points, &[]),
            }
        }
        SeriesChoice::Profile => {
            let (Some(r), Some(r_prime)) = (r, r_prime) else {
                return Err(Failure::usage("the profile series needs --r and --r-prime"));
            };
            let (r, r_prime) = (parse_vector(&r)?, parse_vector(&r_prime)?);
            let points = row_profile_ratio_series(m, cols_max, &r, &r_prime)?;
            series_csv(&points, &[("target", &Fixed::from_int(1))])
        }
    };
    print!("{csv}");
    Ok(())
}

fn cmd_enumerate(m: usize, n: usize) -> CliResult<()> {
    let matrices = Oracle::default().enumerate_good(m, n)?;
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    let written = matrices
        .enumerate()
        .try_for_each(|(i, a)| {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{}", a.to_text())
        })
        .and_then(|()| out.flush());
    match written {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::io(e)),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let cache_path = std::env::var_os(CACHE_ENV).map(PathBuf::from).or(cli.cache);
    match cli.command {
        Command::Count {
            rows,
            cols,
            engine,
            row_sums,
        } => cmd_count(
            &mut Counter::new(cache_path, cli.paranoid)?,
            rows,
            cols,
            engine,
            row_sums,
        ),
        Command::Verify { suite } => cmd_verify(suite.into()),
        Command::Table {
            rows_max,
            cols_max,
            out,
        } => cmd_table(
            &mut Counter::new(cache_path, cli.paranoid)?,
            rows_max,
            cols_max,
            &out,
        ),
        Command::OeisCheck { bfile, max_k } => cmd_oeis_check(&bfile, max_k),
        Command::Asymptotics {
            series,
            rows,
            half_m,
            parity,
            cols_max,
            r,
            r_prime,
        } => cmd_asymptotics(series, rows, half_m, parity, cols_max, r, r_prime),
        Command::Enumerate { rows, cols } => cmd_enumerate(rows, cols),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
