//! `binsum`: command-line front end for the binomial-sum toolkit.
//!
//! Exit status: 0 when the run completed and no integral `S_r(n)` was seen,
//! 1 when an integral value was found, 2 on usage or configuration errors,
//! 3 when an identity check fails.

mod output;
mod resume;

use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use binsum_core::experiments::{
    find_tuple, gap_probe, m_of_r, scan_ordered, small_order_census, verify_tuple, Exponent, NRange, TupleCheck,
    TupleSearch, TupleThresholds,
};
use binsum_core::integrality::{classify, complement_check, s_lower_with_cutoff, s_upper_closed, s_upper_with_cutoff};
use binsum_core::{ClassifyBudget, Instance, InstanceRecord};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use output::{write_instances, write_values, Format};

const EXIT_INTEGRAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IDENTITY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "binsum", version, about = "Exact binomial sums S_r(n) and nonintegrality certificates")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest n evaluated by exact summation.
    #[arg(long, global = true, default_value_t = 3000, value_parser = clap::value_parser!(u64).range(1..))]
    oracle_cutoff: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..1024))]
    threads: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Write records here instead of stdout. Scans resume from it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate S_r(n) and S(r,n) exactly.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Check the closed form and S(r,n) + S_r(n) = 2^n over a grid.
    Identity {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        r_min: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r_max: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        n_min: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
    /// Classify one instance (certificate or oracle).
    Certify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Classify every n in a range for fixed r.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_start: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_end: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        chunk_size: u64,
    },
    /// Search (r, r + r^width] for six primes with large order of 2.
    Lemma2 {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        r: u64,
        /// Interval width exponent, as num/den.
        #[arg(long, default_value = "61/100", value_parser = parse_exponent)]
        width: Exponent,
        /// Order threshold exponent.
        #[arg(long, default_value = "3/10", value_parser = parse_exponent)]
        order: Exponent,
        /// Pairwise gcd threshold exponent.
        #[arg(long, default_value = "1/1000", value_parser = parse_exponent)]
        gcd: Exponent,
    },
    /// Odd primes q <= t with ord_q(2) <= q^0.3.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
    },
    /// Largest M_r(n) for 1 <= n <= n_max.
    Msmooth {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
    /// Gap from n to the next prime, then onward from that prime.
    Gaps {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
}

fn parse_exponent(s: &str) -> std::result::Result<Exponent, String> {
    let (num, den) = s.split_once('/').ok_or("expected num/den")?;
    let num: u32 = num.parse().map_err(|e| format!("numerator: {e}"))?;
    let den: u32 = den.parse().map_err(|e| format!("denominator: {e}"))?;
    if den == 0 {
        return Err("denominator must be positive".into());
    }
    Ok(Exponent::new(num, den))
}

fn sink(out: &Option<PathBuf>, append: bool) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            let file = if append {
                OpenOptions::new().create(true).append(true).open(path)
            } else {
                File::create(path)
            }
            .with_context(|| format!("opening {}", path.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct OracleRecord {
    r: u64,
    n: u64,
    s_lower_numerator: String,
    s_lower_denominator: String,
    s_upper_numerator: String,
    s_upper_denominator: String,
    integral: bool,
}

#[derive(Serialize)]
struct IdentityRecord {
    r: u64,
    n: u64,
    closed_form_matches: bool,
    complement_holds: bool,
}

#[derive(Serialize)]
struct TupleRecord {
    #[serde(flatten)]
    search: TupleSearch,
    check: Option<TupleCheck>,
}

#[derive(Serialize)]
struct CensusRecord {
    t: u64,
    count: usize,
    within_bound: bool,
    primes: Vec<u64>,
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    let budget = ClassifyBudget { oracle_cutoff: g.oracle_cutoff, ..Default::default() };
    match cli.command {
        Command::Oracle { r, n } => {
            let inst = Instance::new(r, n)?;
            let lower = s_lower_with_cutoff(&inst, g.oracle_cutoff)?;
            let upper = s_upper_with_cutoff(&inst, g.oracle_cutoff)?;
            let integral = lower.is_integer();
            let rec = OracleRecord {
                r,
                n,
                s_lower_numerator: lower.numer().to_string(),
                s_lower_denominator: lower.denom().to_string(),
                s_upper_numerator: upper.numer().to_string(),
                s_upper_denominator: upper.denom().to_string(),
                integral,
            };
            let mut out = sink(&g.out, false)?;
            write_values(&mut out, g.format, &[rec])?;
            out.flush()?;
            Ok(if integral { EXIT_INTEGRAL } else { 0 })
        }
        Command::Identity { r_min, r_max, n_min, n_max } => {
            NRange::new(r_min, r_max)?;
            NRange::new(n_min, n_max)?;
            let mut records = Vec::new();
            for r in r_min..=r_max {
                for n in n_min..=n_max {
                    let inst = Instance::new(r, n)?;
                    let closed_form_matches = s_upper_with_cutoff(&inst, g.oracle_cutoff)? == s_upper_closed(&inst)?;
                    let complement_holds = complement_check(&inst)?;
                    records.push(IdentityRecord { r, n, closed_form_matches, complement_holds });
                }
            }
            let mut out = sink(&g.out, false)?;
            write_values(&mut out, g.format, &records)?;
            out.flush()?;
            let ok = records.iter().all(|r| r.closed_form_matches && r.complement_holds);
            Ok(if ok { 0 } else { EXIT_IDENTITY })
        }
        Command::Certify { r, n } => {
            let inst = Instance::new(r, n)?;
            let rec = InstanceRecord::new(r, n, &classify(&inst, &budget));
            let mut out = sink(&g.out, false)?;
            write_instances(&mut out, g.format, std::slice::from_ref(&rec), true)?;
            out.flush()?;
            Ok(if rec.is_integral() { EXIT_INTEGRAL } else { 0 })
        }
        Command::Scan { r, n_start, n_end, chunk_size } => {
            let range = NRange::new(n_start, n_end)?;
            Instance::new(r, n_end)?;
            let state = match &g.out {
                Some(path) => resume::prepare(path, g.format, r)?,
                None => Default::default(),
            };
            let mut out = sink(&g.out, true)?;
            let mut header = !state.has_content;
            let threads = g
                .threads
                .map(|t| t as usize)
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let report = scan_ordered::<_, anyhow::Error>(
                r,
                range,
                &budget,
                threads,
                chunk_size,
                |n| state.done.contains(&n),
                |chunk| {
                    let records: Vec<InstanceRecord> = chunk.iter().map(InstanceRecord::from).collect();
                    write_instances(&mut out, g.format, &records, header)?;
                    header = false;
                    out.flush()?;
                    Ok(())
                },
            )?;
            drop(out);
            if g.format == Format::Human {
                let c = &report.counts;
                eprintln!(
                    "r={} n=[{}, {}]: {} classified ({} sylvester, {} order, {} smooth, {} oracle nonintegral, \
                     {} integral, {} undecided) in {:.2}s",
                    r, n_start, n_end, c.total(), c.sylvester, c.order, c.smooth, c.oracle_nonintegral,
                    c.oracle_integral, c.undecided, report.elapsed
                );
            } else {
                eprintln!("{}", serde_json::to_string(&report)?);
            }
            let integral = report.counts.oracle_integral > 0 || state.integral_found;
            Ok(if integral { EXIT_INTEGRAL } else { 0 })
        }
        Command::Lemma2 { r, width, order, gcd } => {
            let thresholds = TupleThresholds { width, order, gcd };
            let search = find_tuple(r, &thresholds)?;
            let check = search.witness.as_ref().map(verify_tuple);
            let mut out = sink(&g.out, false)?;
            write_values(&mut out, g.format, &[TupleRecord { search, check }])?;
            out.flush()?;
            Ok(0)
        }
        Command::Census { t } => {
            let census = small_order_census(t)?;
            let rec = CensusRecord { t, count: census.count, within_bound: census.within_bound(), primes: census.primes };
            let mut out = sink(&g.out, false)?;
            write_values(&mut out, g.format, &[rec])?;
            out.flush()?;
            Ok(0)
        }
        Command::Msmooth { r, n_max } => {
            let stats = m_of_r(r, n_max)?;
            let mut out = sink(&g.out, false)?;
            write_values(&mut out, g.format, &[stats])?;
            out.flush()?;
            Ok(0)
        }
        Command::Gaps { n, count } => {
            let mut probes = Vec::new();
            let mut at = n;
            for _ in 0..count {
                let probe = gap_probe(at)?;
                at = probe.next_prime;
                probes.push(probe);
            }
            let mut out = sink(&g.out, false)?;
            write_values(&mut out, g.format, &probes)?;
            out.flush()?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        // The census and msmooth drivers use the global rayon pool.
        if let Err(e) = rayon_pool(threads as usize) {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn rayon_pool(threads: usize) -> Result<()> {
    binsum_core::experiments::configure_threads(threads).map_err(|e| anyhow!(e))
}
