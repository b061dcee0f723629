//! `umel`: build posets, compute Chow polynomials and run the certificate checks.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 resource limit.

mod check;
mod compute;
mod input;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use umel_core::families::DEFAULT_MAX_ELEMENTS;
use umel_core::flag::DEFAULT_CHAIN_LIMIT;
use umel_core::io::PosetDoc;

use input::{build_family, parse_poly, parse_poset, read_source, write_sink, Failure, FamilyArgs, Outcome};
use report::RunReport;

#[derive(Parser)]
#[command(name = "umel", version, about = "Chow polynomials and EL-labeling certificates for graded posets")]
struct Cli {
    /// Where to write the result (`-` for stdout).
    #[arg(long, global = true, default_value = "-")]
    output: String,
    /// Seed for random families and sampled checks.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Largest poset the command may build or load.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    /// Largest number of maximal chains to list explicitly.
    #[arg(long, global = true, default_value_t = DEFAULT_CHAIN_LIMIT)]
    max_chains: u64,
    /// Add wall-clock timings to the report (makes it nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a family member as a poset document.
    Family {
        /// boolean, uniform, partition, dowling, projective, affine or random
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
        /// Maximum rank width for `random`.
        #[arg(long)]
        width: Option<usize>,
    },
    /// Compute a polynomial of a poset document.
    Compute {
        what: ComputeWhat,
        /// Poset document (`-` for stdin).
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long)]
        method: Option<String>,
    },
    /// Run one certificate check.
    Check {
        what: CheckWhat,
        /// Poset document (`-` for stdin); unused by realroot and interlace.
        #[arg(long, default_value = "-")]
        input: String,
        /// Polynomial as `1,4,1` or JSON, lowest degree first.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
    /// Golden values and cross-checks over the built-in family set.
    Verify {
        level: Level,
        /// JSON object of replacement golden values for dowling(n, 2).
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeWhat {
    Chow,
    AugChow,
    Gamma,
    H,
    Chain,
    Char,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckWhat {
    El,
    Umel,
    RankUniform,
    Supersolvable,
    Tn,
    Realroot,
    Interlace,
    Battery,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

fn poly_arg(a: &Option<String>, flag: &str, stdin: Option<&serde_json::Value>) -> Outcome<umel_core::IntPoly> {
    match (a, stdin.and_then(|v| v.get(flag))) {
        (Some(s), _) => parse_poly(s),
        (None, Some(v)) => parse_poly(&v.to_string()),
        (None, None) => Err(Failure::Input(format!("missing --{flag}"))),
    }
}

fn run(cli: &Cli) -> Outcome<(String, bool)> {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match &cli.command {
        Command::Family { name, n, k, m, q, width } => {
            let args = FamilyArgs { n: *n, k: *k, m: *m, q: *q, width: *width };
            let x = build_family(name, &args, cli.seed, cli.max_elements)?;
            let doc = PosetDoc::new(&x.poset, x.labeling.as_ref());
            let text = serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n";
            Ok((text, true))
        }
        Command::Compute { what, input, method } => {
            let bytes = read_source(input)?;
            let x = parse_poset(&bytes, cli.max_elements)?;
            let mut r = RunReport::new(argv, &[&bytes], cli.timing);
            let method = method.as_deref();
            match what {
                ComputeWhat::Chow => compute::chow(&mut r, &x, method)?,
                ComputeWhat::AugChow => compute::aug_chow(&mut r, &x, method)?,
                ComputeWhat::Gamma => compute::gamma(&mut r, &x, method)?,
                ComputeWhat::H => compute::h(&mut r, &x, method, cli.max_chains)?,
                ComputeWhat::Chain => compute::chain(&mut r, &x)?,
                ComputeWhat::Char => compute::char_poly(&mut r, &x)?,
            }
            let r = r.finish();
            Ok((r.to_json(), r.passed))
        }
        Command::Check { what, input, f, g } => {
            let mut r;
            match what {
                CheckWhat::Realroot | CheckWhat::Interlace => {
                    // with no polynomial flags, read {"f": ..., "g": ...} from the input
                    let (bytes, doc) = if f.is_none() || (matches!(what, CheckWhat::Interlace) && g.is_none()) {
                        let bytes = read_source(input)?;
                        let v: serde_json::Value = serde_json::from_slice(&bytes)
                            .map_err(|e| Failure::Input(format!("polynomial document: {e}")))?;
                        (bytes, Some(v))
                    } else {
                        (Vec::new(), None)
                    };
                    let fp = poly_arg(f, "f", doc.as_ref())?;
                    r = RunReport::new(argv, &[&bytes], cli.timing);
                    if matches!(what, CheckWhat::Realroot) {
                        check::realroot(&mut r, &fp)?;
                    } else {
                        let gp = poly_arg(g, "g", doc.as_ref())?;
                        check::interlace(&mut r, &fp, &gp)?;
                    }
                }
                _ => {
                    let bytes = read_source(input)?;
                    let x = parse_poset(&bytes, cli.max_elements)?;
                    r = RunReport::new(argv, &[&bytes], cli.timing);
                    match what {
                        CheckWhat::El => check::el(&mut r, &x)?,
                        CheckWhat::Umel => check::umel(&mut r, &x)?,
                        CheckWhat::RankUniform => check::rank_uniform(&mut r, &x)?,
                        CheckWhat::Supersolvable => check::supersolvable(&mut r, &x)?,
                        CheckWhat::Tn => check::tn(&mut r, &x)?,
                        CheckWhat::Battery => check::battery(&mut r, &x)?,
                        CheckWhat::Realroot | CheckWhat::Interlace => unreachable!(),
                    }
                }
            }
            let r = r.finish();
            Ok((r.to_json(), r.passed))
        }
        Command::Verify { level, golden } => {
            let bytes = match golden {
                Some(path) => read_source(&path.to_string_lossy())?,
                None => Vec::new(),
            };
            let overrides = if golden.is_some() { verify::parse_golden(&bytes)? } else { Default::default() };
            let mut r = RunReport::new(argv, &[&bytes], cli.timing);
            verify::run(&mut r, matches!(level, Level::Full), cli.seed, &overrides)?;
            let r = r.finish();
            Ok((r.to_json(), r.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli).and_then(|(text, passed)| write_sink(&cli.output, &text).map(|()| passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("umel: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
