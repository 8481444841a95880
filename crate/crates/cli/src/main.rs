use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lsqlab::arith::build_sieve;
use lsqlab::lattice::{
    analyze, cap_count, enumerate_reps, in_b, min_k_for, min_k_fast, ordered_signed_count,
    RepAnalysis,
};
use lsqlab::semigroup::{f_four, frobenius_gamma, sylvester_frobenius, DEFAULT_FACTOR};
use lsqlab::survey::{
    csv, figure1_data, sweep_classification, table2_survey, KClassRow, SweepConfig, Table1Summary,
    VerifyFraction, DEFAULT_CEILING, FULL_RANGE_CEILING,
};
use lsqlab::Error;

/// Default n values for `table2` and `fig1`.
const TABLE2_N: [u64; 22] = [
    2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 125, 150, 175, 200,
];

#[derive(Parser)]
#[command(name = "lsqlab", version, about = "Sums of four large squares and square-semigroup Frobenius numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List canonical representations a1 <= a2 <= a3 <= a4 of N
    Reps { n: u64 },
    /// Ordered signed representation count r(N)
    Count { n: u64 },
    /// Minimal K such that some representation has all nonzero parts >= √N/K
    Mink {
        n: u64,
        /// Also print the representations attaining the maximal least part
        #[arg(long)]
        witness: bool,
    },
    /// Full representation analysis: N min_k l_max reps four_nonzero
    Analyze {
        n: u64,
        #[arg(long)]
        witness: bool,
    },
    /// Whether N has no representation as four nonzero squares
    Inb { n: u64 },
    /// Signed points with every |a_i| >= √N/DENOM, and the total r(N)
    Cap {
        n: u64,
        #[arg(long, default_value_t = 8)]
        denom: u64,
    },
    /// Frobenius number of the pair {N², (N+1)²}
    Sylvester { n: u64 },
    /// Frobenius number of sums of squares >= N²
    Fgamma { n: u64 },
    /// Largest m <= FACTOR·N² that is not a sum of at most four squares >= N²
    F4 {
        n: u64,
        #[arg(long, default_value_t = DEFAULT_FACTOR)]
        factor: u64,
    },
    /// Classify every n in a range by minimal K (kclass CSV)
    Sweep(SweepArgs),
    /// Per-K counts over a range (table1 CSV)
    Table1 {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Aggregate an existing kclass CSV instead of sweeping
        #[arg(long, value_name = "PATH", conflicts_with_all = ["from", "to", "checkpoint"])]
        input: Option<PathBuf>,
    },
    /// Frobenius numbers of Γ_n and four-square values (table2 CSV)
    Table2 {
        /// Values of n; defaults to 2..=10, 20..=100 by 10, 125..=200 by 25
        ns: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_FACTOR)]
        factor: u64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Frobenius numbers next to the curves 46n² and 64n² (fig1 CSV)
    Fig1 {
        ns: Vec<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check r(n) = 8σ′(n) for every n <= LIMIT
    JacobiVerify { limit: u64 },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    from: u64,
    #[arg(long, default_value_t = 10_000)]
    to: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Checkpoint file; an existing one is resumed (requires --out for sweep)
    #[arg(long, value_name = "PATH")]
    checkpoint: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Allow ranges beyond 100000
    #[arg(long)]
    full_range: bool,
    /// Fraction of rows re-checked by full enumeration, as NUM/DEN
    #[arg(long, default_value = "1/1000", value_parser = parse_fraction)]
    verify: VerifyFraction,
}

fn parse_fraction(s: &str) -> Result<VerifyFraction, String> {
    let (num, den) = s.split_once('/').ok_or("expected NUM/DEN")?;
    let num = num.parse().map_err(|e| format!("{e}"))?;
    let den = den.parse().map_err(|e| format!("{e}"))?;
    VerifyFraction::new(num, den).map_err(|e| e.to_string())
}

enum Failure {
    Domain(String),
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification { .. } | Error::DataInconsistency { .. } => {
                Failure::Verification(e.to_string())
            }
            Error::Row { ref source, .. }
                if matches!(
                    **source,
                    Error::Verification { .. } | Error::DataInconsistency { .. }
                ) =>
            {
                Failure::Verification(e.to_string())
            }
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn print_analysis(a: &RepAnalysis, witness: bool, full: bool) {
    if full {
        println!(
            "{} {} {} {} {}",
            a.n,
            a.min_k,
            a.l_max,
            a.reps.len(),
            a.has_four_nonzero
        );
    } else {
        println!("{} {}", a.n, a.min_k);
    }
    if witness {
        for q in &a.witnesses {
            println!("{q}");
        }
    }
}

fn sweep_config(args: &SweepArgs) -> SweepConfig {
    let mut config = SweepConfig::new(args.from, args.to);
    config.worker_count = args.threads;
    config.checkpoint_path = args.checkpoint.clone();
    config.full_range = args.full_range;
    config.verify_fraction = args.verify;
    // sampled rows past the default ceiling each cost a full enumeration
    let heavy = args.to.saturating_sub(args.from.max(DEFAULT_CEILING)) as u128;
    let sampled = heavy * args.verify.num() as u128 / args.verify.den() as u128;
    if args.full_range && args.to <= FULL_RANGE_CEILING && sampled > 100 {
        eprintln!(
            "warning: about {sampled} rows above {DEFAULT_CEILING} will be re-checked by full \
             enumeration (~0.3 s each near 2.5e6); consider a sparser --verify"
        );
    }
    config
}

fn run_sweep(args: &SweepArgs) -> Result<Table1Summary, Failure> {
    if args.checkpoint.is_some() && args.out.is_none() {
        return Err(Failure::Usage(
            "--checkpoint requires --out\n\nUsage: lsqlab sweep --from <N> --to <N> --out <PATH> [--checkpoint <PATH>]".into(),
        ));
    }
    let mut config = sweep_config(args);
    config.output_path = args.out.clone();
    let report = sweep_classification(&config)?;
    if args.out.is_none() {
        emit(None, &csv::kclass_csv(&report.rows))?;
    }
    Ok(report.summary)
}

/// Rows read back from disk must satisfy the classification invariants.
fn check_kclass_rows(rows: &[KClassRow]) -> Result<(), Failure> {
    let Some(last) = rows.last() else {
        return Ok(());
    };
    let sieve = build_sieve(last.n)?;
    for r in rows {
        let fail = |detail: &str| Error::Verification {
            n: r.n,
            detail: detail.to_string(),
        };
        if r.n == 0 || r.l_max == 0 || min_k_for(r.n, r.l_max) != r.min_k {
            return Err(fail("min_k is not the least K with (K·l_max)² >= n").into());
        }
        if sieve.is_squarefree(r.n) != r.squarefree {
            return Err(fail("squarefree flag is wrong").into());
        }
    }
    Ok(())
}

fn table1(args: &SweepArgs, input: Option<&PathBuf>) -> Result<(), Failure> {
    let rows = match input {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let kclass = csv::parse_kclass(&text, path)?;
            let (lo, hi) = match (kclass.first(), kclass.last()) {
                (Some(a), Some(b)) => (a.n, b.n),
                _ => (1, 0),
            };
            check_kclass_rows(&kclass)?;
            let mut summary = Table1Summary::new(lo, hi);
            for row in &kclass {
                summary.record(row);
            }
            summary.rows()
        }
        None => {
            let mut config = sweep_config(args);
            config.output_path = None;
            sweep_classification(&config)?.summary.rows()
        }
    };
    emit(args.out.as_ref(), &csv::table1_csv(&rows))?;
    Ok(())
}

fn jacobi_verify(limit: u64) -> Result<(), Failure> {
    if limit == 0 {
        return Err(Error::Domain {
            arg: "limit",
            reason: "must be at least 1, got 0".into(),
        }
        .into());
    }
    let sieve = build_sieve(limit)?;
    for n in 1..=limit {
        let r = ordered_signed_count(n)?;
        let closed = 8 * sieve.sigma_prime(n);
        if r != closed {
            println!("MISMATCH {n} {r} {closed}");
            return Err(Failure::Verification(format!(
                "r({n}) = {r} but 8σ′({n}) = {closed}"
            )));
        }
    }
    println!("OK {limit}");
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Reps { n } => {
            for q in enumerate_reps(n)? {
                println!("{q}");
            }
        }
        Command::Count { n } => println!("{n} {}", ordered_signed_count(n)?),
        Command::Mink { n, witness } => {
            if witness {
                print_analysis(&analyze(n)?, true, false);
            } else {
                println!("{n} {}", min_k_fast(n)?);
            }
        }
        Command::Analyze { n, witness } => print_analysis(&analyze(n)?, witness, true),
        Command::Inb { n } => {
            if n == 0 {
                return Err(Failure::Domain("invalid n: must be at least 1, got 0".into()));
            }
            println!("{n} {}", in_b(n));
        }
        Command::Cap { n, denom } => {
            let (in_cap, total) = cap_count(n, denom)?;
            println!("{n} {in_cap} {total}");
        }
        Command::Sylvester { n } => println!("{n} {}", sylvester_frobenius(n)?),
        Command::Fgamma { n } => println!("{n} {}", frobenius_gamma(n)?.frobenius),
        Command::F4 { n, factor } => println!("{n} {}", f_four(n, factor)?.largest_gap),
        Command::Sweep(args) => {
            let summary = run_sweep(&args)?;
            eprintln!(
                "classified {} integers in {}..={}, largest K = {}",
                summary.total(),
                summary.range_lo,
                summary.range_hi,
                summary.max_k().unwrap_or(0)
            );
        }
        Command::Table1 { sweep, input } => table1(&sweep, input.as_ref())?,
        Command::Table2 { ns, factor, out } => {
            let ns = if ns.is_empty() { TABLE2_N.to_vec() } else { ns };
            emit(out.as_ref(), &csv::table2_csv(&table2_survey(&ns, factor)?))?;
        }
        Command::Fig1 { ns, out } => {
            let ns = if ns.is_empty() { TABLE2_N.to_vec() } else { ns };
            emit(out.as_ref(), &csv::fig1_csv(&figure1_data(&ns)?))?;
        }
        Command::JacobiVerify { limit } => jacobi_verify(limit)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(3)
        }
    }
}
