//! `sturmpar`: words, parity tables, sums and Dirichlet series as CSV.

mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use sturmian_parity::parity::{for_each_chunk, parity_counts, ParityChunk};
use sturmian_parity::report::{write_parity_csv, write_parity_row, write_series_csv, write_sums_csv};
use sturmian_parity::series::{
    accumulate, dirichlet_continued, dirichlet_truncated, geometric_checkpoints, residue_estimate, SeriesValue,
    SumPoint, DEFAULT_CONTINUATION_CUTOFF,
};
use sturmian_parity::{ParityError, SeriesError, SieveConfig, WordError, WordSpec};

use suites::{Options, Suite};

#[derive(Parser)]
#[command(name = "sturmpar", version, about = "Divisor-parity statistics of Sturmian words")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the sieve (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    threads: Option<u64>,
    /// Memory budget for the sieve, in bytes.
    #[arg(long, global = true, default_value_t = SieveConfig::DEFAULT_MEMORY_BUDGET)]
    memory_budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of a word.
    Word {
        #[arg(long)]
        word: WordSpec,
        #[arg(long)]
        len: u64,
        #[arg(long, value_enum, default_value_t = WordFormat::Ascii)]
        format: WordFormat,
    },
    /// Emit `n,o,e,D` for every n in a range.
    Parity {
        #[arg(long)]
        word: WordSpec,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
    },
    /// Emit partial and mollified sums at checkpoints.
    Sums {
        #[arg(long)]
        word: WordSpec,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        xmax: u64,
        /// `all`, `geometric` (1000 * 2^k), or a comma-separated list.
        #[arg(long, default_value = "all")]
        checkpoints: Checkpoints,
    },
    /// Evaluate the Dirichlet series of a word.
    Series {
        #[arg(long)]
        word: WordSpec,
        /// Points such as `2`, `0.5+14.1347i`; repeat for several.
        #[arg(long = "s", required_unless_present = "residue")]
        s: Vec<Complex64>,
        /// Print the residue at s = 1 instead.
        #[arg(long, conflicts_with = "s")]
        residue: bool,
        /// Tolerance of the truncated method.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Integration cutoff of the continuation.
        #[arg(long, default_value_t = DEFAULT_CONTINUATION_CUTOFF, value_parser = clap::value_parser!(u64).range(1..))]
        t_max: u64,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        word: Option<WordSpec>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        xmax: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WordFormat {
    Ascii,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Truncated sum when Re s > 1, continuation otherwise.
    Auto,
    Truncated,
    Continued,
}

#[derive(Clone)]
enum Checkpoints {
    All,
    Geometric,
    List(Vec<u64>),
}

impl std::str::FromStr for Checkpoints {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Checkpoints::All),
            "geometric" => Ok(Checkpoints::Geometric),
            _ => s
                .split(',')
                .map(|v| v.trim().parse::<u64>().map_err(|_| format!("bad checkpoint {v:?}")))
                .collect::<Result<_, _>>()
                .map(Checkpoints::List),
        }
    }
}

enum Failure {
    Usage(String),
    Resource(String),
    Verification,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ParityError> for Failure {
    fn from(e: ParityError) -> Self {
        match e {
            ParityError::CapacityExceeded { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Parity(p) => p.into(),
            SeriesError::Overflow { .. } | SeriesError::ToleranceUnreachable { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Resource(m) => eprintln!("error: {m}"),
                Failure::Verification => {}
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = SieveConfig {
        threads: cli.common.threads.map_or_else(|| SieveConfig::default().threads, |t| t as usize),
        memory_budget: cli.common.memory_budget,
    };
    let mut out: Box<dyn Write> = match &cli.common.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = dispatch(cli.command, &config, &mut out);
    out.flush()?;
    result
}

fn dispatch(command: Command, config: &SieveConfig, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Word { word, len, format } => {
            let bits = word.prefix_bits(len)?;
            match format {
                WordFormat::Ascii => writeln!(out, "{}", bits.to_ascii())?,
                WordFormat::Csv => {
                    writeln!(out, "index,letter")?;
                    for n in 1..=len {
                        writeln!(out, "{n},{}", if bits.is_b(n) { 'b' } else { 'a' })?;
                    }
                }
            }
        }
        Command::Parity { word, from, to } => {
            if from > to {
                return Err(Failure::Usage(format!("--from {from} is past --to {to}")));
            }
            if from == 1 {
                writeln!(out, "n,o,e,D")?;
                for_each_chunk(&word, to, config, |chunk: &ParityChunk| {
                    for r in chunk.records() {
                        write_parity_row(out, &r)?;
                    }
                    Ok::<_, Failure>(())
                })?;
            } else {
                let records = (from..=to).map(|n| parity_counts(&word, n)).collect::<Result<Vec<_>, _>>()?;
                write_parity_csv(out, records)?;
            }
        }
        Command::Sums { word, xmax, checkpoints } => {
            let points = match checkpoints {
                Checkpoints::All => {
                    let needed = xmax.saturating_mul(size_of::<SumPoint>() as u64);
                    if needed > config.memory_budget {
                        return Err(Failure::Resource(format!(
                            "{xmax} checkpoints need {needed} bytes, over the memory budget of {} bytes",
                            config.memory_budget
                        )));
                    }
                    (1..=xmax).collect()
                }
                Checkpoints::Geometric => geometric_checkpoints(xmax),
                Checkpoints::List(list) => list,
            };
            let profile = accumulate(&word, xmax, &points, config)?;
            write_sums_csv(out, &profile)?;
        }
        Command::Series { word, s, residue, tol, t_max, method } => {
            if residue {
                let r = residue_estimate(&word, t_max)?;
                writeln!(out, "residue,beta")?;
                writeln!(out, "{},{}", fmt(r), fmt(word.beta()))?;
                return Ok(());
            }
            let values = s
                .into_iter()
                .map(|s| evaluate(&word, s, tol, t_max, method))
                .collect::<Result<Vec<SeriesValue>, SeriesError>>()?;
            write_series_csv(out, &values)?;
        }
        Command::Verify { suite, word, xmax, nmax } => {
            let opts = Options { word, x_max: xmax, n_max: nmax, config: *config };
            let reports = suites::run(suite, &opts)?;
            for r in &reports {
                write!(out, "{r}")?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} of {} suites passed", reports.len() - failed, reports.len())?;
            if failed > 0 {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn fmt(v: f64) -> String {
    sturmian_parity::report::fmt_sig(v, 12)
}

fn evaluate(word: &WordSpec, s: Complex64, tol: f64, t_max: u64, method: Method) -> Result<SeriesValue, SeriesError> {
    match method {
        Method::Truncated => dirichlet_truncated(word, s, tol),
        Method::Continued => dirichlet_continued(word, s, t_max),
        Method::Auto if s.re > 1.0 => dirichlet_truncated(word, s, tol),
        Method::Auto => dirichlet_continued(word, s, t_max),
    }
}
