use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use qcgirth::alist::{export_alist, import_alist};
use qcgirth::catalog::catalog_dump;
use qcgirth::conditions::certify_girth_at_least;
use qcgirth::decode::{fer_csv, simulate_fer, snr_grid, SimConfig};
use qcgirth::families::bresnan::{bresnan_count, bresnan_sample, TRANSFER_MAX_M};
use qcgirth::families::search::local_search;
use qcgirth::families::{Family, FamilyParams, Offsets};
use qcgirth::oracle::girth_bfs;
use qcgirth::sparse::{gf2_rank, SparseBinaryMatrix};
use qcgirth::{BlockMatrix, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "qcgirth", version, about = "Quasi-cyclic LDPC codes with certified girth")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct FamilyArgs {
    /// Circulant size.
    #[arg(long)]
    m: u32,
    /// Number of block rows.
    #[arg(long)]
    alpha: usize,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    delta2: Option<usize>,
    #[arg(long)]
    delta3: Option<usize>,
}

impl FamilyArgs {
    fn offsets(&self) -> Offsets {
        Offsets { delta: self.delta, delta2: self.delta2, delta3: self.delta3 }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one code of the family and print its JSON description.
    Construct {
        family: Family,
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Step budget for the local search (families other than bresnan).
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count (bresnan) or find solutions; JSON summary on stdout, progress on stderr.
    Search {
        family: Family,
        #[command(flatten)]
        fam: FamilyArgs,
        /// Print only the number of parameter tuples (bresnan).
        #[arg(long)]
        count_only: bool,
        /// Solutions to return.
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long, env = "QCGIRTH_JOBS")]
        jobs: Option<usize>,
    },
    /// Certify girth from the circulant conditions (JSON) or the oracle (alist).
    Verify {
        file: PathBuf,
        #[arg(long)]
        target_girth: Option<usize>,
    },
    /// Girth of the Tanner graph by breadth-first search.
    Girth { file: PathBuf },
    /// Dump the cycle configuration catalog for half-length s.
    Catalog {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=4))]
        s: u32,
    },
    /// Frame error rate of a code over BPSK/AWGN; CSV on stdout.
    Simulate {
        file: PathBuf,
        /// Eb/N0 grid start:stop:step in dB.
        #[arg(long)]
        snr: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        min_errors: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_trials: u64,
        #[arg(long, default_value_t = 20)]
        max_iterations: usize,
        #[arg(long, env = "QCGIRTH_JOBS")]
        jobs: Option<usize>,
    },
    /// Write the expanded parity-check matrix as alist.
    Export {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read an alist file and print a JSON summary of the matrix.
    Import { file: PathBuf },
}

enum Loaded {
    Blocks(BlockMatrix),
    Plain(SparseBinaryMatrix),
}

impl Loaded {
    fn matrix(&self) -> SparseBinaryMatrix {
        match self {
            Loaded::Blocks(b) => b.expand(),
            Loaded::Plain(m) => m.clone(),
        }
    }
}

fn load(path: &Path) -> Result<Loaded, Error> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(Loaded::Blocks(BlockMatrix::from_json(&text)?))
    } else {
        Ok(Loaded::Plain(import_alist(&text)?))
    }
}

fn load_blocks(path: &Path) -> Result<BlockMatrix, Error> {
    match load(path)? {
        Loaded::Blocks(b) => Ok(b),
        Loaded::Plain(_) => Err(Error::InvalidParams("this command needs a JSON code description".into())),
    }
}

/// Stdout write that treats a closed pipe as success.
fn out(text: &str) -> Result<(), Error> {
    use std::io::Write;
    let mut so = std::io::stdout().lock();
    match so.write_all(text.as_bytes()).and_then(|_| so.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => out(text),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))
}

/// One solution per seed; bresnan is sampled exactly uniformly while the transfer
/// matrix is small enough, everything else by local search.
fn find(family: Family, fam: &FamilyArgs, seed: u64, budget: u64) -> Result<Option<FamilyParams>, Error> {
    match family {
        Family::Bresnan if fam.m <= TRANSFER_MAX_M => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(bresnan_sample(fam.m, fam.alpha, &mut rng)?.map(FamilyParams::Bresnan))
        }
        _ => match local_search(family, fam.m, fam.alpha, fam.offsets(), seed, budget) {
            Ok((p, _)) => Ok(Some(p)),
            Err(Error::BudgetExhausted(_)) => Ok(None),
            Err(e) => Err(e),
        },
    }
}

fn doc(p: &FamilyParams) -> Result<serde_json::Value, Error> {
    Ok(serde_json::from_str(&p.build().to_json()?)?)
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Construct { family, fam, seed, budget, output } => {
            let Some(p) = find(family, &fam, seed, budget)? else {
                eprintln!("no {} code found for m = {}, alpha = {}", family.name(), fam.m, fam.alpha);
                return Ok(EXIT_FAIL);
            };
            let mut text = p.build().to_json()?;
            text.push('\n');
            emit(&text, output.as_deref())?;
            Ok(0)
        }
        Cmd::Search { family, fam, count_only, samples, seed, budget, jobs } => {
            let start = Instant::now();
            let counted = match family {
                Family::Bresnan if count_only || fam.m <= TRANSFER_MAX_M => Some(bresnan_count(fam.m, fam.alpha)?),
                _ if count_only => {
                    return Err(Error::InvalidParams(format!("--count-only is only available for bresnan, not {}", family.name())))
                }
                _ => None,
            };
            if count_only {
                out(&format!("{}\n", counted.map_or(0, |c| c.tuples)))?;
                return Ok(0);
            }
            let pool = pool(jobs)?;
            let found: Vec<Option<FamilyParams>> = pool.install(|| {
                (0..samples as u64)
                    .into_par_iter()
                    .map(|k| {
                        let r = find(family, &fam, seed.wrapping_add(k), budget);
                        if let Ok(Some(_)) = r {
                            eprintln!("sample {} found", k + 1);
                        }
                        r
                    })
                    .collect::<Result<_, _>>()
            })?;
            let solutions = found.iter().flatten().map(doc).collect::<Result<Vec<_>, _>>()?;
            let summary = json!({
                "family": family.name(),
                "m": fam.m,
                "alpha": fam.alpha,
                "count": counted.map(|c| c.tuples.to_string()),
                "shift_classes": counted.map(|c| c.shift_classes.to_string()),
                "solutions": solutions,
                "elapsed": start.elapsed().as_secs_f64(),
            });
            out(&format!("{}\n", serde_json::to_string_pretty(&summary)?))?;
            Ok(if solutions.is_empty() { EXIT_FAIL } else { 0 })
        }
        Cmd::Verify { file, target_girth } => {
            let loaded = load(&file)?;
            let (passed, report) = match &loaded {
                Loaded::Blocks(b) => {
                    let target = target_girth.unwrap_or_else(|| {
                        b.family().and_then(|f| f.parse::<Family>().ok()).map_or(8, Family::target_girth)
                    });
                    let cert = certify_girth_at_least(b, target)?;
                    (cert.passed, serde_json::to_value(&cert)?)
                }
                Loaded::Plain(m) => {
                    let target = target_girth.unwrap_or(8);
                    let g = girth_bfs(m);
                    let passed = g.is_none_or(|g| g >= target);
                    (passed, json!({ "target": target, "passed": passed, "girth": g }))
                }
            };
            out(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            Ok(if passed { 0 } else { EXIT_FAIL })
        }
        Cmd::Girth { file } => {
            match girth_bfs(&load(&file)?.matrix()) {
                Some(g) => out(&format!("{g}\n"))?,
                None => out("inf\n")?,
            }
            Ok(0)
        }
        Cmd::Catalog { s } => {
            out(&format!("{}\n", serde_json::to_string_pretty(&catalog_dump(s)?)?))?;
            Ok(0)
        }
        Cmd::Simulate { file, snr, seed, min_errors, max_trials, max_iterations, jobs } => {
            let bm = load_blocks(&file)?;
            let parts: Vec<f64> = snr
                .split(':')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::InvalidParams(format!("bad --snr {snr:?}")))?;
            let grid = match parts[..] {
                [a, b, step] => snr_grid(a, b, step)?,
                [a] => vec![a],
                _ => return Err(Error::InvalidParams(format!("--snr wants a:b:step, got {snr:?}"))),
            };
            let pool = pool(jobs)?;
            let mut cfg = SimConfig { min_block_errors: min_errors, max_trials, workers: pool.current_num_threads(), ..SimConfig::default() };
            cfg.decoder.max_iterations = max_iterations;
            let points = pool.install(|| simulate_fer(&bm, &grid, seed, &cfg))?;
            for p in points.iter().filter(|p| p.censored) {
                eprintln!("warning: {} dB censored after {} trials ({} errors)", p.snr_db, p.trials, p.block_errors);
            }
            out(&fer_csv(&points))?;
            Ok(0)
        }
        Cmd::Export { file, output } => {
            emit(&export_alist(&load(&file)?.matrix()), output.as_deref())?;
            Ok(0)
        }
        Cmd::Import { file } => {
            let m = import_alist(&std::fs::read_to_string(&file)?)?;
            let summary = json!({
                "n_rows": m.n_rows(),
                "n_cols": m.n_cols(),
                "ones": m.ones(),
                "regularity": m.regularity(),
                "rank": gf2_rank(&m),
            });
            out(&format!("{}\n", serde_json::to_string_pretty(&summary)?))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) | Error::Json(_) | Error::AlistParse { .. } | Error::AlistWeight(_) | Error::AlistInconsistent(_) => EXIT_IO,
                Error::BudgetExhausted(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            })
        }
    }
}
