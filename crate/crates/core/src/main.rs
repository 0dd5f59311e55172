use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use mertens_matrices::algebra::{ClassVector, QuotientAlgebra};
use mertens_matrices::builders::{build_m_direct, build_t, build_u_direct, verify_all};
use mertens_matrices::harness::{self, SweepConfig};
use mertens_matrices::sieve::{memory_cap_from_env, MertensTable};
use mertens_matrices::spectral::{self, Method, PowerSettings, DEFAULT_MAX_ITER, DEFAULT_SEED, DEFAULT_TOL};
use mertens_matrices::{ClassStructure, IntegerMatrix, Result};

#[derive(Parser)]
#[command(name = "mertens-matrices", version, about = "Symmetric matrices built from the Mertens function")]
struct Cli {
    /// Largest sieve size, in entries (defaults to $MERTENS_MEMORY_CAP or 10^8).
    #[arg(long, global = true)]
    memory_cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class representatives and intervals for n.
    Classes {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Mertens function M(k).
    Mertens {
        #[arg(long)]
        k: u64,
    },
    /// Multiplication table of the representative basis.
    Table {
        #[arg(long)]
        n: u64,
    },
    /// A matrix as CSV: T, U, M, rho-u, rho-mu, or rho-<k> for a representative k.
    Matrix {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        which: Which,
    },
    /// Structural identity checks for n.
    Verify {
        #[arg(long)]
        n: u64,
    },
    /// Spectral norm of M_n.
    Norm {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Power)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Sweep n and write one CSV row per value.
    Sweep {
        #[arg(long = "from")]
        from: u64,
        #[arg(long = "to")]
        to: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Keep only n = k^2 and n = k^2 + k.
        #[arg(long)]
        restrict: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = Method::Power)]
        method: Method,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy)]
enum Which {
    T,
    U,
    M,
    RhoU,
    RhoMu,
    RhoBasis(u64),
}

impl FromStr for Which {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "T" | "t" => Ok(Which::T),
            "U" | "u" => Ok(Which::U),
            "M" | "m" => Ok(Which::M),
            "rho-u" => Ok(Which::RhoU),
            "rho-mu" => Ok(Which::RhoMu),
            other => other
                .strip_prefix("rho-")
                .and_then(|k| k.parse().ok())
                .map(Which::RhoBasis)
                .ok_or_else(|| format!("expected T, U, M, rho-u, rho-mu or rho-<k>, got {other:?}")),
        }
    }
}

#[derive(Serialize)]
struct ClassInterval {
    rep: u64,
    from: u64,
    to: u64,
}

#[derive(Serialize)]
struct ClassesJson<'a> {
    n: u64,
    s: usize,
    reps: &'a [u64],
    classes: Vec<ClassInterval>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli.memory_cap.unwrap_or_else(memory_cap_from_env);
    match run(cli.command, cap) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, cap: u64) -> Result<bool> {
    match command {
        Command::Classes { n, json } => {
            let cs = ClassStructure::new(n)?;
            if json {
                let doc = ClassesJson {
                    n,
                    s: cs.s(),
                    reps: cs.reps(),
                    classes: cs.intervals().map(|(from, to)| ClassInterval { rep: to, from, to }).collect(),
                };
                println!("{}", serde_json::to_string_pretty(&doc).expect("serialisable"));
            } else {
                println!("n = {n}");
                println!("s = {}", cs.s());
                let reps: Vec<String> = cs.reps().iter().map(u64::to_string).collect();
                println!("reps = {}", reps.join(" "));
                for (from, to) in cs.intervals() {
                    println!("{to}: {from}..{to}");
                }
            }
        }
        Command::Mertens { k } => {
            let table = MertensTable::with_cap(k.max(1), cap)?;
            println!("{}", table.mertens(k));
        }
        Command::Table { n } => {
            print!("{}", QuotientAlgebra::for_n(n)?.table_text());
        }
        Command::Matrix { n, which } => {
            print!("{}", build_matrix(n, which, cap)?.to_csv());
        }
        Command::Verify { n } => {
            let table = MertensTable::with_cap(n, cap)?;
            let mut all = true;
            for c in verify_all(n, &table)? {
                all &= c.passed;
                if c.passed {
                    println!("PASS {}", c.name);
                } else {
                    println!("FAIL {}: {}", c.name, c.detail);
                }
            }
            return Ok(all);
        }
        Command::Norm { n, method, tol, seed, max_iter } => {
            let table = MertensTable::with_cap(n, cap)?;
            let m = build_m_direct::<i64>(&ClassStructure::new(n)?, &table)?;
            let est = spectral::spectral_norm(&m, method, &PowerSettings { tol, max_iter, seed })?;
            let w = if n > 1 { est.norm.ln() / (n as f64).ln() - 0.5 } else { f64::NAN };
            println!("norm = {}", harness::format_significant(est.norm, 15));
            println!("iterations = {}", est.iterations);
            println!("converged = {}", est.converged);
            println!("w_n = {}", harness::format_significant(w, 15));
        }
        Command::Sweep { from, to, step, restrict, tol, seed, max_iter, method, out } => {
            let config = SweepConfig {
                n_from: from,
                n_to: to,
                n_step: step,
                restrict,
                method,
                tol,
                max_iter,
                seed,
                memory_cap: cap,
                output_path: Some(out.clone()),
            };
            let records = harness::run_sweep(&config)?;
            let unconverged = records.iter().filter(|r| !r.converged).count();
            eprintln!("wrote {} records to {} ({unconverged} not converged)", records.len(), out.display());
        }
    }
    Ok(true)
}

fn build_matrix(n: u64, which: Which, cap: u64) -> Result<IntegerMatrix> {
    let algebra = QuotientAlgebra::for_n(n)?;
    let cs = algebra.classes();
    let table = || MertensTable::with_cap(n, cap);
    match which {
        Which::T => Ok(build_t(cs)),
        Which::U => build_u_direct(cs),
        Which::M => build_m_direct(cs, &table()?),
        Which::RhoU => ClassVector::ones(&algebra)?.regular_representation(),
        Which::RhoMu => ClassVector::mobius(&algebra, &table()?)?.regular_representation(),
        Which::RhoBasis(k) => ClassVector::basis(&algebra, k)?.regular_representation(),
    }
}
