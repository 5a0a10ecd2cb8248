use std::io::{self, BufRead, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rllsidc::channel::{random_event, random_event_of, trial_seed};
use rllsidc::oracle::{self, CheckReport};
use rllsidc::sidc::{self, free_coefficient_range};
use rllsidc::{
    analysis, apply_event, decoder, BitSeq, CodeParams, CongruenceCode, Error, EventKind,
    ParamError,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rllsidc",
    version,
    about = "Run-length limited single insertion/deletion correcting codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CodeArgs {
    /// Length of the run-length limited message part
    #[arg(long)]
    k: usize,
    /// Maximum run length
    #[arg(long)]
    r: usize,
    /// Free coefficient; defaults to 2^(r_hat-1) - 1
    #[arg(long)]
    d: Option<u64>,
    /// Congruence residue; defaults to 0
    #[arg(long)]
    b: Option<u64>,
}

impl CodeArgs {
    fn params(&self) -> Result<CodeParams, Error> {
        Ok(CodeParams::derive(self.k, self.r, self.d, self.b)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print derived code parameters
    Params(CodeArgs),
    /// Encode one sequence per stdin line
    Encode {
        /// Encode an RLL word of length k instead of a raw message of length k-1
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Correct and decode one received sequence per stdin line
    Decode {
        /// Output the corrected message part instead of the original message
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Apply one seeded insertion or deletion to each stdin line
    Corrupt {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Op::Any)]
        op: Op,
    },
    /// Run an exhaustive or sampled verification suite
    Verify(VerifyArgs),
    /// Print analysis tables as CSV
    Analyze {
        #[command(subcommand)]
        table: Table,
    },
    /// Run a seeded encode / corrupt / decode campaign
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Delete,
    Insert,
    Any,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    FrontRoundtrip,
    EncoderRll,
    DecoderTotality,
    Sidc,
    GapCondition,
    Codewords,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rhat: Option<usize>,
    /// Force sampling for the encoder suite, with this many trials
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = oracle::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Table {
    /// Redundancy against the optimal-code lower bound for each length
    Redundancy {
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// Maximum supported message lengths for each run-length limit
    Bounds {
        #[arg(long, default_value_t = 3)]
        r_min: usize,
        #[arg(long, default_value_t = 16)]
        r_max: usize,
    },
}

/// A failure that ends the command with an exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Params(_) | Error::Range(_) | Error::Guard { .. } => EXIT_VALIDATION,
            Error::Data(_) | Error::Uncorrectable | Error::Invariant(_) => EXIT_DATA,
        };
        Fail(code, e.to_string())
    }
}

impl From<ParamError> for Fail {
    fn from(e: ParamError) -> Self {
        Error::from(e).into()
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail(EXIT_DATA, format!("i/o error: {e}"))
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn validation(msg: impl Into<String>) -> Fail {
    Fail(EXIT_VALIDATION, msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8, Fail> {
    match command {
        Command::Params(code) => params(code),
        Command::Encode { raw, code } => {
            let cp = code.params()?;
            stream(|_, y| {
                if raw {
                    sidc::embed_encode(&cp, y)
                } else {
                    sidc::encode_message(&cp, y)
                }
            })
        }
        Command::Decode { raw, code } => {
            let cp = code.params()?;
            stream(|_, z| {
                if raw {
                    decoder::correct(&cp, z).map(|c| decoder::strip_parity(&cp, &c))
                } else {
                    decoder::decode_message(&cp, z)
                }
            })
        }
        Command::Corrupt { seed, op } => stream(|index, s| {
            let line_seed = trial_seed(seed, index);
            if s.is_empty() {
                return Err(Error::Data("cannot corrupt an empty line".into()));
            }
            let event = match op {
                Op::Any => random_event(s.len(), line_seed),
                Op::Delete => random_event_of(EventKind::Deletion, s.len(), line_seed),
                Op::Insert => random_event_of(EventKind::Insertion, s.len(), line_seed),
            };
            eprintln!("{event}");
            apply_event(s, &event)
        }),
        Command::Verify(args) => verify(args),
        Command::Analyze { table } => analyze(table),
        Command::Simulate { code, seed, trials } => {
            let cp = code.params()?;
            let report = rllsidc::run_campaign(&cp, seed, trials)?;
            println!("{report}");
            Ok(if report.failures == 0 { 0 } else { EXIT_VERIFY })
        }
    }
}

fn params(code: CodeArgs) -> Result<u8, Fail> {
    let cp = code.params()?;
    let (lo, hi) = free_coefficient_range(cp.r_hat());
    println!("{cp}");
    println!("d_min={lo}");
    println!("d_max={hi}");
    Ok(0)
}

/// Applies `f` to each stdin line, writing results in order. Bad lines are
/// reported on stderr and skipped.
fn stream(mut f: impl FnMut(u64, &BitSeq) -> Result<BitSeq, Error>) -> Result<u8, Fail> {
    let stdin = io::stdin().lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut failed = false;
    for (i, line) in stdin.lines().enumerate() {
        let line = line?;
        let result = line
            .trim_end_matches('\r')
            .parse::<BitSeq>()
            .and_then(|s| f(i as u64, &s));
        match result {
            Ok(s) => writeln!(out, "{s}")?,
            Err(e) => {
                // Keep stdout and stderr ordering sensible for interleaved readers.
                out.flush()?;
                eprintln!("ERROR {} {e}", i + 1);
                failed = true;
            }
        }
    }
    out.flush()?;
    Ok(if failed { EXIT_DATA } else { 0 })
}

fn require<T>(value: Option<T>, flag: &str, suite: &str) -> Result<T, Fail> {
    value.ok_or_else(|| usage(format!("suite {suite} requires --{flag}")))
}

fn d_values(explicit: Option<u64>, r_hat: usize) -> Vec<u64> {
    match explicit {
        Some(d) => vec![d],
        None => {
            let (lo, hi) = free_coefficient_range(r_hat);
            (lo..=hi).collect()
        }
    }
}

fn verify(args: VerifyArgs) -> Result<u8, Fail> {
    let mut reports: Vec<CheckReport> = Vec::new();
    match args.suite {
        Suite::FrontRoundtrip => {
            let k = require(args.k, "k", "front-roundtrip")?;
            let r = require(args.r, "r", "front-roundtrip")?;
            reports.push(oracle::check_front_roundtrip(k, r)?);
        }
        Suite::EncoderRll => {
            let k = require(args.k, "k", "encoder-rll")?;
            let r = require(args.r, "r", "encoder-rll")?;
            // Validates k and r before sweeping d.
            let r_hat = CodeParams::derive(k, r, None, None)?.r_hat();
            for d in d_values(args.d, r_hat) {
                let report = match args.trials {
                    Some(t) => oracle::check_encoder_rll_sampled(k, r, d, t, args.seed)?.to_check(),
                    None => oracle::check_encoder_rll(k, r, d)?,
                };
                reports.push(report);
            }
        }
        Suite::DecoderTotality => {
            let k = require(args.k, "k", "decoder-totality")?;
            let r = require(args.r, "r", "decoder-totality")?;
            let base = CodeParams::derive(k, r, args.d, None)?;
            let residues: Vec<u64> = match args.b {
                Some(b) => vec![b],
                None => (0..base.modulus()).collect(),
            };
            for b in residues {
                reports.push(oracle::check_decoder_totality(&base.with_b(b)?)?);
            }
        }
        Suite::Sidc | Suite::Codewords => {
            let name = if matches!(args.suite, Suite::Sidc) {
                "sidc"
            } else {
                "codewords"
            };
            let n = require(args.n, "n", name)?;
            let r_hat = require(args.rhat, "rhat", name)?;
            if r_hat < 4 {
                return Err(validation(format!("r_hat={r_hat} must be at least 4")));
            }
            for d in d_values(args.d, r_hat) {
                let modulus = CongruenceCode::from_raw(n, r_hat, d, 0)?.modulus();
                let residues: Vec<u64> = match args.b {
                    Some(b) => vec![b],
                    None => (0..modulus).collect(),
                };
                for b in residues {
                    reports.push(if name == "sidc" {
                        oracle::check_sidc(n, r_hat, d, b)?
                    } else {
                        oracle::check_codeword_count(n, r_hat, d, b)?
                    });
                }
            }
        }
        Suite::GapCondition => {
            let r_hat = require(args.rhat, "rhat", "gap-condition")?;
            reports.push(oracle::check_gap_condition(r_hat)?);
        }
    }

    let mut out = BufWriter::new(io::stdout().lock());
    for report in &reports {
        writeln!(out, "{report}")?;
    }
    out.flush()?;
    Ok(verdict(&reports))
}

fn verdict(reports: &[CheckReport]) -> u8 {
    if reports.iter().all(|r| r.passed) {
        0
    } else {
        EXIT_VERIFY
    }
}

fn analyze(table: Table) -> Result<u8, Fail> {
    match table {
        Table::Redundancy { n_min, n_max } => {
            if n_min > n_max {
                return Err(validation(format!(
                    "--n-min {n_min} exceeds --n-max {n_max}"
                )));
            }
            let rows = (n_min..=n_max)
                .map(analysis::redundancy_row)
                .collect::<Result<Vec<_>, _>>()?;
            print!("{}", analysis::emit_csv(&rows));
        }
        Table::Bounds { r_min, r_max } => {
            if r_min > r_max {
                return Err(validation(format!(
                    "--r-min {r_min} exceeds --r-max {r_max}"
                )));
            }
            println!("r,g,h,front_max");
            for r in r_min..=r_max {
                println!(
                    "{r},{},{},{}",
                    analysis::g_bound(r)?,
                    analysis::h_bound(r)?,
                    analysis::front_length_bound(r)
                );
            }
        }
    }
    Ok(0)
}
