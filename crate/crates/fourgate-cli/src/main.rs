//! Command-line front end: compile circuits to the four-gate form, verify
//! compilations, run the drive-power benchmark, and generate test inputs.
//!
//! Exit codes: 0 success, 1 semantic mismatch (verification failed),
//! 2 usage or parse error, 3 internal error (a compile that fails its own
//! self-verification; never expected).

mod format;

use clap::{Parser, Subcommand, ValueEnum};
use fourgate::clifford::{CliffordOp, Gate};
use fourgate::cost::{circuit_power, run_benchmark};
use fourgate::gf2::BitMatrix;
use fourgate::synth::{compile_clifford, gaussian_cnot_synthesis, Variant};
use fourgate::verify::{
    dense_matches_tableau, dense_unitary_of_gates, tableau_of_compiled, tableau_of_gates,
    verify_compilation, DENSE_MAX_QUBITS,
};
use format::{benchmark_csv, CircuitFile, CompiledFile};
use rand_core::{RngCore, SeedableRng};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fourgate",
    about = "Clifford compiler targeting global entangling gates",
    version
)]
struct Cli {
    /// Cap the worker thread count for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Xz,
    Zx,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Xz => Variant::Xz,
            VariantArg::Zx => Variant::Zx,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Cx,
    Clifford,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a circuit file into the four-gate layered form.
    Compile {
        /// Input circuit file (JSON).
        input: PathBuf,
        /// Output compiled-circuit file (JSON).
        #[arg(short, long)]
        out: PathBuf,
        /// Axis ordering of the entangling block.
        #[arg(long, value_enum, default_value = "xz")]
        variant: VariantArg,
    },
    /// Check a candidate file against a target file.
    Verify {
        /// Target file (circuit or compiled).
        target: PathBuf,
        /// Candidate file (circuit or compiled).
        candidate: PathBuf,
        /// Also compare dense unitaries (requires n <= 5).
        #[arg(long)]
        dense: bool,
    },
    /// Run the nuclear-norm benchmark and write a CSV report.
    Bench {
        /// Comma-separated qubit counts.
        #[arg(long, default_value = "8,16,32,64,128")]
        n: String,
        /// Samples per qubit count.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Base random seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Keep degenerate (identity-layer) samples in the fitted means.
        #[arg(long)]
        include_degenerate: bool,
        /// Output CSV path.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Generate a random test circuit.
    Gen {
        /// What to generate: a CNOT realization of a random invertible
        /// layer, or a random Clifford circuit.
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Number of qubits.
        #[arg(long)]
        n: usize,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output circuit file.
        #[arg(short, long)]
        out: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Mismatch(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Mismatch(m) | CliError::Internal(m) => m,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

/// Either file kind, detected by its top-level key.
enum AnyCircuit {
    Plain(usize, Vec<Gate>),
    Compiled(fourgate::synth::CompiledCircuit),
}

impl AnyCircuit {
    fn n(&self) -> usize {
        match self {
            AnyCircuit::Plain(n, _) => *n,
            AnyCircuit::Compiled(cc) => cc.n(),
        }
    }

    fn tableau(&self) -> Result<CliffordOp, CliError> {
        match self {
            AnyCircuit::Plain(n, gates) => tableau_of_gates(*n, gates)
                .map_err(|e| CliError::Usage(format!("invalid circuit: {e}"))),
            AnyCircuit::Compiled(cc) => tableau_of_compiled(cc)
                .map_err(|e| CliError::Usage(format!("invalid compiled circuit: {e}"))),
        }
    }

    fn dense(&self) -> Result<fourgate::verify::DenseMatrix, CliError> {
        match self {
            AnyCircuit::Plain(n, gates) => dense_unitary_of_gates(*n, gates),
            AnyCircuit::Compiled(cc) => fourgate::verify::dense_unitary_of_compiled(cc),
        }
        .map_err(|e| CliError::Usage(format!("dense oracle: {e}")))
    }
}

fn load_any(path: &Path) -> Result<AnyCircuit, CliError> {
    let text = read_file(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: JSON parse error: {e}", path.display())))?;
    if value.get("gates").is_some() {
        let file: CircuitFile = serde_json::from_value(value)
            .map_err(|e| CliError::Usage(format!("{}: bad circuit file: {e}", path.display())))?;
        if file.n == 0 {
            return Err(CliError::Usage(format!(
                "{}: qubit count must be >= 1",
                path.display()
            )));
        }
        let gates = file
            .to_gates()
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Ok(AnyCircuit::Plain(file.n, gates))
    } else if value.get("layers").is_some() {
        let file: CompiledFile = serde_json::from_value(value)
            .map_err(|e| CliError::Usage(format!("{}: bad compiled file: {e}", path.display())))?;
        let cc = file
            .to_compiled()
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Ok(AnyCircuit::Compiled(cc))
    } else {
        Err(CliError::Usage(format!(
            "{}: expected a \"gates\" or \"layers\" key",
            path.display()
        )))
    }
}

fn cmd_compile(input: &Path, out: &Path, variant: Variant) -> Result<(), CliError> {
    let (n, gates) = match load_any(input)? {
        AnyCircuit::Plain(n, gates) => (n, gates),
        AnyCircuit::Compiled(_) => {
            return Err(CliError::Usage(format!(
                "{}: compile expects a plain circuit file",
                input.display()
            )))
        }
    };
    let target = tableau_of_gates(n, &gates)
        .map_err(|e| CliError::Usage(format!("invalid circuit: {e}")))?;
    let compiled = compile_clifford(&target, variant);

    // self-check before writing anything
    let report = verify_compilation(&target, &compiled)
        .map_err(|e| CliError::Internal(format!("self-verification errored: {e}")))?;
    if !report.passed() {
        return Err(CliError::Internal(format!(
            "compiled circuit failed self-verification:\n{report}"
        )));
    }

    let cost = circuit_power(&compiled);
    println!("mq_count: {}", compiled.mq_count());
    for (i, (gate, nuc)) in compiled.mq_gates().zip(&cost.per_gate).enumerate() {
        println!("gate {i} ({} axis): nuclear norm {nuc}", gate.axis());
    }
    println!("total nuclear norm: {}", cost.total);

    let file = CompiledFile::from_compiled(&compiled);
    let json = serde_json::to_string_pretty(&file)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    write_file(out, &json)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_verify(target_path: &Path, candidate_path: &Path, dense: bool) -> Result<(), CliError> {
    let target = load_any(target_path)?;
    let candidate = load_any(candidate_path)?;
    if target.n() != candidate.n() {
        return Err(CliError::Usage(format!(
            "qubit counts differ: {} vs {}",
            target.n(),
            candidate.n()
        )));
    }
    let n = target.n();
    if dense && n > DENSE_MAX_QUBITS {
        return Err(CliError::Usage(format!(
            "dense comparison requires n <= {DENSE_MAX_QUBITS}, got {n}"
        )));
    }

    let target_tableau = target.tableau()?;
    let report = match &candidate {
        AnyCircuit::Compiled(cc) => verify_compilation(&target_tableau, cc)
            .map_err(|e| CliError::Usage(format!("verification: {e}")))?,
        AnyCircuit::Plain(..) => {
            let cand_tableau = candidate.tableau()?;
            let symplectic_match = cand_tableau.same_symplectic_part(&target_tableau);
            let sign_match =
                symplectic_match && cand_tableau.sign_difference(&target_tableau).is_zero();
            let dense_match = if n <= DENSE_MAX_QUBITS {
                let u = candidate.dense()?;
                Some(dense_matches_tableau(&u, &target_tableau, 1e-9))
            } else {
                None
            };
            let first_discrepancy = if !symplectic_match {
                Some("symplectic parts differ".to_string())
            } else if !sign_match {
                Some("sign vectors differ".to_string())
            } else if dense_match == Some(false) {
                Some("dense unitaries differ".to_string())
            } else {
                None
            };
            fourgate::verify::VerifyReport {
                symplectic_match,
                sign_match,
                dense_match,
                first_discrepancy,
            }
        }
    };

    println!("{report}");
    let ok = report.passed() && (!dense || report.dense_match == Some(true));
    if ok {
        Ok(())
    } else {
        Err(CliError::Mismatch("verification failed".into()))
    }
}

fn cmd_bench(
    n: &str,
    samples: usize,
    seed: u64,
    include_degenerate: bool,
    out: &Path,
) -> Result<(), CliError> {
    let cfg = format::bench_config(n, samples, seed, include_degenerate).map_err(CliError::Usage)?;
    let result =
        run_benchmark(&cfg).map_err(|e| CliError::Usage(format!("benchmark failed: {e}")))?;
    let csv = benchmark_csv(&result);
    write_file(out, &csv)?;
    for (method, fit) in &result.fits {
        println!(
            "{}: beta = {:.4} (95% CI [{:.4}, {:.4}])",
            method.name(),
            fit.beta,
            fit.ci_low,
            fit.ci_high
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_gen(kind: GenKind, n: usize, seed: u64, out: &Path) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("qubit count must be >= 1".into()));
    }
    let gates = match kind {
        GenKind::Cx => {
            let c = BitMatrix::random_invertible(n, seed);
            let (cnots, _) = gaussian_cnot_synthesis(&c)
                .map_err(|e| CliError::Usage(format!("CNOT synthesis: {e}")))?;
            cnots.into_iter().map(|(c, t)| Gate::CX(c, t)).collect()
        }
        GenKind::Clifford => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let len = (n * n).max(8);
            let mut gates = Vec::with_capacity(len);
            for _ in 0..len {
                let q = (rng.next_u64() % n as u64) as usize;
                match rng.next_u64() % 3 {
                    0 => gates.push(Gate::H(q)),
                    1 => gates.push(Gate::S(q)),
                    _ if n >= 2 => {
                        let mut t = (rng.next_u64() % (n as u64 - 1)) as usize;
                        if t >= q {
                            t += 1;
                        }
                        gates.push(Gate::CX(q, t));
                    }
                    _ => gates.push(Gate::S(q)),
                }
            }
            gates
        }
    };
    let file = CircuitFile::from_gates(n, &gates);
    let json = serde_json::to_string_pretty(&file)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    write_file(out, &json)?;
    println!("wrote {} ({} gates)", out.display(), file.gates.len());
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    #[cfg(feature = "parallel")]
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.threads;

    match cli.command {
        Command::Compile {
            input,
            out,
            variant,
        } => cmd_compile(&input, &out, variant.into()),
        Command::Verify {
            target,
            candidate,
            dense,
        } => cmd_verify(&target, &candidate, dense),
        Command::Bench {
            n,
            samples,
            seed,
            include_degenerate,
            out,
        } => cmd_bench(&n, samples, seed, include_degenerate, &out),
        Command::Gen { kind, n, seed, out } => cmd_gen(kind, n, seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
