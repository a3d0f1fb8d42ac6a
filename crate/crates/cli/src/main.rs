//! `asl` — affine standard Lyndon words for type A.
//!
//! Subcommands: `enumerate` exports the SL table, `verify` pits the engine
//! against closed forms or the brute-force oracle, `check` runs order
//! analyses, and `counterexample` reproduces the rank-4 imaginary-sandwich
//! counterexample.
//!
//! Exit status: 0 success / property holds; 1 mismatch, theorem violation,
//! or internal inconsistency; 2 invalid configuration; 3 counter-finding on
//! a conjectural property (pre-convexity).

use asl_cli::output;
use asl_core::closed_forms::{verify_closed_forms, ClosedFormTarget};
use asl_core::engine::{compute_table, verify_oracle, SLTable, DEFAULT_ORACLE_GUARD};
use asl_core::orders::{
    all_chains_check, arch_lemma_check, counterexample_report, finite_convexity_check,
    imaginary_chains_check, preconvexity_check, OrderReport, Verdict,
};
use asl_core::root_system::OrderedAlphabet;
use asl_core::Letter;
use clap::{Args, Parser, Subcommand};
use output::{render_report, Format, TableDoc};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_FINDING: u8 = 3;

#[derive(Parser)]
#[command(
    name = "asl",
    version,
    about = "Affine standard Lyndon words for type A: tables, verifiers, and order checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AlphabetArgs {
    /// Rank n of the affine algebra (letters 0..=n)
    #[arg(long)]
    rank: usize,
    /// Total order on the letters, smallest first, e.g. 1,2,0
    #[arg(long, value_delimiter = ',')]
    order: Vec<Letter>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, default_value = "plain")]
    format: Format,
    /// Write to a file instead of stdout (written once, after completion)
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the SL table up to a height and export it
    Enumerate {
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// Include all roots of height <= this bound
        #[arg(long)]
        max_height: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the engine against a closed-form family or the oracle
    Verify {
        /// One of: a1, a2, standard, general, oracle
        #[arg(long)]
        target: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// Verify all roots of height <= this bound
        #[arg(long)]
        max_height: usize,
        /// Permutation cap per degree for the oracle target
        #[arg(long, default_value_t = DEFAULT_ORACLE_GUARD)]
        guard: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run an order-property analysis
    Check {
        /// One of: chains, preconvexity, finite-convexity, imaginary-chains,
        /// arch-lemma
        #[arg(long)]
        property: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// δ-range of the check (required for chains, preconvexity, and
        /// imaginary-chains; rejected otherwise)
        #[arg(long)]
        delta_cap: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reproduce the rank-4 standard-order counterexample
    Counterexample {
        /// δ-count of β1 = kδ+α_4
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// δ-count of β2 = mδ+α_{0→3}
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn fail_config(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn fail_internal(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_MISMATCH)
}

fn emit(text: &str, out: &OutputArgs) -> std::io::Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn alphabet_of(args: &AlphabetArgs) -> Result<OrderedAlphabet, String> {
    OrderedAlphabet::new(args.rank, args.order.clone()).map_err(|e| e.to_string())
}

fn configure_threads() {
    if let Ok(v) = std::env::var("ASL_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn table_or_exit(a: &OrderedAlphabet, height: usize) -> Result<SLTable, ExitCode> {
    compute_table(a, height).map_err(|e| fail_internal(&e.to_string()))
}

fn cmd_enumerate(alphabet: AlphabetArgs, max_height: usize, out: OutputArgs) -> ExitCode {
    let a = match alphabet_of(&alphabet) {
        Ok(a) => a,
        Err(e) => return fail_config(&e),
    };
    if max_height < 1 {
        return fail_config("--max-height must be >= 1");
    }
    let table = match table_or_exit(&a, max_height) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let doc = TableDoc::from_table(&table);
    let text = doc.render(out.format);
    match emit(&text, &out) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => fail_internal(&format!("write failed: {e}")),
    }
}

fn cmd_verify(
    target: String,
    alphabet: AlphabetArgs,
    max_height: usize,
    guard: u64,
    out: OutputArgs,
) -> ExitCode {
    let a = match alphabet_of(&alphabet) {
        Ok(a) => a,
        Err(e) => return fail_config(&e),
    };
    if max_height < 1 {
        return fail_config("--max-height must be >= 1");
    }
    let (text, clean) = match target.as_str() {
        "oracle" => match verify_oracle(&a, max_height, Some(guard)) {
            Ok(report) => (render_report(&report, out.format), report.is_clean()),
            Err(e) => return fail_internal(&e.to_string()),
        },
        "a1" | "a2" | "standard" | "general" => {
            let cf_target = match target.as_str() {
                "a1" => ClosedFormTarget::A1,
                "a2" => ClosedFormTarget::A2,
                "standard" => ClosedFormTarget::Standard,
                _ => ClosedFormTarget::General,
            };
            match verify_closed_forms(&a, max_height, cf_target) {
                Ok(report) => (render_report(&report, out.format), report.is_clean()),
                Err(e) => {
                    // Rank/order incompatibilities are configuration errors.
                    use asl_core::closed_forms::ClosedFormError::*;
                    return match e {
                        WrongRank { .. } | NotStandardOrder(_) | NotCanonical(_) => {
                            fail_config(&e.to_string())
                        }
                        other => fail_internal(&other.to_string()),
                    };
                }
            }
        }
        other => {
            return fail_config(&format!(
                "unknown target {other:?} (a1|a2|standard|general|oracle)"
            ))
        }
    };
    if let Err(e) = emit(&text, &out) {
        return fail_internal(&format!("write failed: {e}"));
    }
    if clean {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

fn cmd_check(
    property: String,
    alphabet: AlphabetArgs,
    delta_cap: Option<usize>,
    out: OutputArgs,
) -> ExitCode {
    let a = match alphabet_of(&alphabet) {
        Ok(a) => a,
        Err(e) => return fail_config(&e),
    };
    let rank = a.rank();
    let size = rank + 1;
    let needs_cap = matches!(
        property.as_str(),
        "chains" | "preconvexity" | "imaginary-chains"
    );
    if needs_cap && delta_cap.is_none() {
        return fail_config(&format!("--property {property} requires --delta-cap"));
    }
    if !needs_cap && delta_cap.is_some() {
        return fail_config(&format!("--property {property} does not take --delta-cap"));
    }
    let result: Result<OrderReport, ExitCode> = match property.as_str() {
        "chains" => {
            let cap = delta_cap.unwrap();
            table_or_exit(&a, cap * size + rank)
                .and_then(|t| all_chains_check(&t, cap).map_err(|e| fail_internal(&e.to_string())))
        }
        "preconvexity" => {
            let cap = delta_cap.unwrap();
            table_or_exit(&a, (cap + 1) * size).and_then(|t| {
                preconvexity_check(&t, cap).map_err(|e| fail_internal(&e.to_string()))
            })
        }
        "imaginary-chains" => {
            let cap = delta_cap.unwrap().max(1);
            table_or_exit(&a, cap * size).and_then(|t| {
                imaginary_chains_check(&t).map_err(|e| fail_internal(&e.to_string()))
            })
        }
        "finite-convexity" => table_or_exit(&a, rank).and_then(|t| {
            finite_convexity_check(&t).map_err(|e| fail_internal(&e.to_string()))
        }),
        "arch-lemma" => table_or_exit(&a, rank)
            .and_then(|t| arch_lemma_check(&t).map_err(|e| fail_internal(&e.to_string()))),
        other => {
            return fail_config(&format!(
                "unknown property {other:?} (chains|preconvexity|finite-convexity|imaginary-chains|arch-lemma)"
            ))
        }
    };
    let report = match result {
        Ok(r) => r,
        Err(code) => return code,
    };
    let text = render_report(&report, out.format);
    if let Err(e) = emit(&text, &out) {
        return fail_internal(&format!("write failed: {e}"));
    }
    if report.passed() {
        ExitCode::from(EXIT_OK)
    } else if property == "preconvexity" {
        // Conjecture counter-findings are reported with a status of their
        // own, distinct from errors.
        ExitCode::from(EXIT_FINDING)
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

fn cmd_counterexample(k: usize, m: usize, out: OutputArgs) -> ExitCode {
    if k < 1 || m < 1 {
        return fail_config("--k and --m must be >= 1");
    }
    let a = OrderedAlphabet::standard(4);
    let height = 15usize.max(5 * (k + m)).max(5 * m + 4).max(5 * k + 1);
    let table = match table_or_exit(&a, height) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let report = match counterexample_report(&table, k, m) {
        Ok(r) => r,
        Err(e) => return fail_internal(&e.to_string()),
    };
    let text = render_report(&report, out.format);
    if let Err(e) = emit(&text, &out) {
        return fail_internal(&format!("write failed: {e}"));
    }
    if report.verdict == Verdict::Reproduced {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Enumerate { alphabet, max_height, out } => cmd_enumerate(alphabet, max_height, out),
        Cmd::Verify { target, alphabet, max_height, guard, out } => {
            cmd_verify(target, alphabet, max_height, guard, out)
        }
        Cmd::Check { property, alphabet, delta_cap, out } => {
            cmd_check(property, alphabet, delta_cap, out)
        }
        Cmd::Counterexample { k, m, out } => cmd_counterexample(k, m, out),
    }
}
