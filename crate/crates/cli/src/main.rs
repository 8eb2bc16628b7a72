//! `gabor`: analyze windows from files, run the window constructions,
//! classify parameter triples, and execute the full verification suite.
//!
//! JSON goes to standard output, diagnostics to standard error. Exit
//! codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 invalid window, 4 no guaranteed dependency.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gabor_core::dependence::find_dependency;
use gabor_core::error::GaborError;
use gabor_core::io;
use gabor_core::sequences::GaborSystem;
use gabor_core::spectral::{self, fiber_sweep, frame_bounds};
use gabor_core::windows::{
    self, comb_window, default_spike_count, dense_window, dependent_infinite_window,
    gaussian_window, perturbed_window, ConstructionRecord, WindowFamily,
};
use gabor_core::{classifier, verify, FiniteSequence64};

#[derive(Parser)]
#[command(name = "gabor", version, about = "Gabor frame analysis on the integer lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a parameter triple (M, N, K) exactly.
    Classify {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Frame bounds of a window read from a file.
    Bounds {
        window_file: PathBuf,
        #[arg(long = "M", value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Grid points on [0, 1/N); defaults to 1024 * N.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        grid: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Dependency certificate for a window read from a file.
    Depend {
        window_file: PathBuf,
        #[arg(long = "M", value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Residual the certificate must meet; defaults to its own class.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build one of the window families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the full verification suite.
    VerifyPaper {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..))]
        max: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Family {
    /// All-ones window on {1..N}.
    Dense {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dense window perturbed to support size K inside the frame budget.
    Perturbed {
        #[arg(long = "M")]
        m: u32,
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "K")]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Comb of K impulses at multiples of M.
    Comb {
        #[arg(long = "M")]
        m: u32,
        #[arg(long = "K")]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer samples of the B-spline of order N + 1.
    Bspline {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated Gaussian with tail tolerance tau.
    Gaussian {
        #[arg(long, default_value_t = 1e-16)]
        tau: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated infinite-support window generating a dependent frame.
    DependentInfinite {
        #[arg(long = "M")]
        m: u32,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long)]
        l_max: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(err: &GaborError) -> u8 {
    match err {
        GaborError::ZeroWindow => 3,
        GaborError::NoGuaranteedDependency { .. } => 4,
        GaborError::InvalidWindow(_) => 2,
        _ => 2,
    }
}

fn load_window(path: &PathBuf) -> Result<FiniteSequence64, u8> {
    match io::read_window(path) {
        Ok(g) => Ok(g),
        Err(e) => {
            eprintln!("error: {e}");
            Err(2)
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn emit_construction(record: &ConstructionRecord<f64>, out: Option<&PathBuf>) -> Result<(), u8> {
    if let Some(path) = out {
        if let Err(e) = io::write_window(path, &record.window) {
            eprintln!("error: {e}");
            return Err(3);
        }
    }
    print_json(record);
    Ok(())
}

fn run() -> Result<(), u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { m, n, k } => {
            let verdict = classifier::classify(m, n, k as usize);
            print_json(&verdict);
            Ok(())
        }
        Command::Bounds { window_file, m, n, grid, format } => {
            let window = load_window(&window_file)?;
            let sys = GaborSystem::new(window, m, n);
            let grid =
                grid.map_or(spectral::DEFAULT_GRID_PER_N * n as usize, |g| g as usize);
            match format {
                OutputFormat::Json => match frame_bounds(&sys, grid) {
                    Ok(report) => {
                        print_json(&report);
                        Ok(())
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        Err(exit_code_for(&e))
                    }
                },
                OutputFormat::Csv => {
                    if sys.window.is_zero() {
                        eprintln!("error: {}", GaborError::ZeroWindow);
                        return Err(3);
                    }
                    println!("omega,sigma_min,sigma_max");
                    for (omega, lo, hi) in fiber_sweep(&sys, grid) {
                        println!("{omega},{lo},{hi}");
                    }
                    Ok(())
                }
            }
        }
        Command::Depend { window_file, m, n, tol } => {
            let window = load_window(&window_file)?;
            let sys = GaborSystem::new(window, m, n);
            match find_dependency(&sys) {
                Ok(cert) => {
                    let bound = tol.unwrap_or(cert.tolerance);
                    if cert.residual > bound {
                        eprintln!(
                            "error: certificate residual {:.3e} exceeds tolerance {bound:.3e}",
                            cert.residual
                        );
                        return Err(1);
                    }
                    print_json(&cert);
                    Ok(())
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Err(exit_code_for(&e))
                }
            }
        }
        Command::Construct { family } => {
            let (record, out) = match family {
                Family::Dense { n, out } => {
                    let window = dense_window(n, None).map_err(|e| {
                        eprintln!("error: {e}");
                        2u8
                    })?;
                    let mut rec = ConstructionRecord::exact(window, WindowFamily::Dense);
                    rec.translation_step = Some(n);
                    rec.support_size = Some(n as usize);
                    (rec, out)
                }
                Family::Perturbed { m, n, k, rho, out } => {
                    let rec = perturbed_window(m, n, k, rho, None).map_err(|e| {
                        eprintln!("error: {e}");
                        2u8
                    })?;
                    (rec, out)
                }
                Family::Comb { m, k, out } => {
                    let window = comb_window(m, k).map_err(|e| {
                        eprintln!("error: {e}");
                        2u8
                    })?;
                    let mut rec = ConstructionRecord::exact(window, WindowFamily::Comb);
                    rec.modulation_count = Some(m);
                    rec.support_size = Some(k);
                    (rec, out)
                }
                Family::Bspline { n, out } => {
                    let window = windows::bspline_window(n).map_err(|e| {
                        eprintln!("error: {e}");
                        2u8
                    })?;
                    let mut rec = ConstructionRecord::exact(window, WindowFamily::Bspline);
                    rec.translation_step = Some(n);
                    rec.support_size = Some(n as usize);
                    (rec, out)
                }
                Family::Gaussian { tau, out } => {
                    let rec = gaussian_window(tau).map_err(|e| {
                        eprintln!("error: {e}");
                        2u8
                    })?;
                    (rec, out)
                }
                Family::DependentInfinite { m, n, eps, l_max, out } => {
                    let l_max = l_max.unwrap_or_else(|| default_spike_count(eps, m).max(1));
                    let rec = dependent_infinite_window(m, n, eps, l_max).map_err(|e| {
                        eprintln!("error: {e}");
                        2u8
                    })?;
                    (rec, out)
                }
            };
            emit_construction(&record, out.as_ref())
        }
        Command::VerifyPaper { max, seed } => {
            let summary = verify::run_all(max, seed);
            print_json(&summary);
            if summary.all_passed {
                Ok(())
            } else {
                let failed: Vec<&str> = summary
                    .criteria
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name)
                    .collect();
                eprintln!("verification failed: {}", failed.join("; "));
                Err(1)
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
