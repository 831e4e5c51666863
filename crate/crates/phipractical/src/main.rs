//! Command-line interface: classify single integers, run the census, produce
//! divisor-subset witnesses, run the verification suite, and list family
//! members.
//!
//! Exit codes: 0 success; 1 no witness exists or a verifier found
//! counterexamples; 2 argument/parse errors (including unknown lemma or
//! family names and invalid checkpoints); 3 zero input; 4 limit out of
//! range.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use phipractical::census::{
    default_checkpoints, list_members, ratio_table, ratios_to_csv, ratios_to_json, rows_to_csv,
    rows_to_json, run_census, Family, Parity,
};
use phipractical::cyclotomic::witness_polynomial;
use phipractical::verify::{verify, LemmaId};
use phipractical::{classify, factorize, witness_subset, ClassificationFlags, Error};

#[derive(Parser)]
#[command(
    name = "phipractical",
    version,
    about = "Classify, count, witness, and verify practical and phi-practical numbers"
)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads for census and verification scans. Defaults to the
    /// available parallelism; the PHIPRACTICAL_THREADS environment variable
    /// is honored when the flag is absent.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Any,
    Odd,
    Even,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Any => Parity::Any,
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print every classification flag for one integer.
    Classify {
        /// The integer to classify (decimal, >= 1).
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Census of family counts up to a limit, reported at checkpoints.
    Count {
        /// Scan 1..=limit (decimal, >= 2).
        #[arg(long)]
        limit: u64,
        /// Comma-separated strictly ascending checkpoints in [2, limit].
        /// Default: powers of 10 up to the limit, plus the limit itself.
        #[arg(long, value_delimiter = ',', value_name = "X1,X2,...")]
        checkpoints: Option<Vec<u64>>,
        /// Emit ln-weighted ratio columns instead of raw counts.
        #[arg(long)]
        ratios: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },

    /// Find distinct divisors of n whose totients sum to m.
    Witness {
        /// The modulus-like parameter: divisors are drawn from those of n.
        n: u64,
        /// The target totient sum (0 <= m <= n for a witness to exist).
        m: u64,
        /// Also print the product polynomial, a degree-m divisor of t^n - 1.
        #[arg(long)]
        poly: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Run one verifier from the built-in suite over its full range.
    Verify {
        /// Which statement to check.
        #[arg(value_enum)]
        lemma: LemmaArg,
        /// Scan limit (each verifier documents its default and cap).
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// List all members of a family up to a limit, ascending.
    List {
        /// Scan 1..=limit.
        #[arg(long)]
        limit: u64,
        /// Family name (kebab-case).
        #[arg(long)]
        family: String,
        /// Keep only squarefree members.
        #[arg(long)]
        squarefree: bool,
        /// Keep only members of one parity.
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity: ParityArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Mirror of [`LemmaId`] carrying the stable command-line names.
#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    #[value(name = "necessary")]
    Necessary,
    #[value(name = "pproduct")]
    Pproduct,
    #[value(name = "even_practical")]
    EvenPractical,
    #[value(name = "upper_chain")]
    UpperChain,
    #[value(name = "keylemma")]
    Keylemma,
    #[value(name = "squarefree_iff")]
    SquarefreeIff,
    #[value(name = "strict_implies_phi")]
    StrictImpliesPhi,
    #[value(name = "t_recursion")]
    TRecursion,
    #[value(name = "tau_bound")]
    TauBound,
    #[value(name = "oracle_agreement")]
    OracleAgreement,
    #[value(name = "cyclotomic_identity")]
    CyclotomicIdentity,
    #[value(name = "containment_2dense")]
    Containment2Dense,
}

impl From<LemmaArg> for LemmaId {
    fn from(l: LemmaArg) -> LemmaId {
        match l {
            LemmaArg::Necessary => LemmaId::Necessary,
            LemmaArg::Pproduct => LemmaId::Pproduct,
            LemmaArg::EvenPractical => LemmaId::EvenPractical,
            LemmaArg::UpperChain => LemmaId::UpperChain,
            LemmaArg::Keylemma => LemmaId::Keylemma,
            LemmaArg::SquarefreeIff => LemmaId::SquarefreeIff,
            LemmaArg::StrictImpliesPhi => LemmaId::StrictImpliesPhi,
            LemmaArg::TRecursion => LemmaId::TRecursion,
            LemmaArg::TauBound => LemmaId::TauBound,
            LemmaArg::OracleAgreement => LemmaId::OracleAgreement,
            LemmaArg::CyclotomicIdentity => LemmaId::CyclotomicIdentity,
            LemmaArg::Containment2Dense => LemmaId::Containment2Dense,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    if let Err(msg) = configure_threads(cli.threads) {
        eprintln!("error: {msg}");
        return 2;
    }
    match execute(cli.command) {
        Ok((output, code)) => {
            if let Err(msg) = emit(cli.out.as_deref(), &output) {
                eprintln!("error: {msg}");
                return 2;
            }
            code
        }
        Err(Failure::Lib(err)) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// A failed command: either a library error (mapped onto the exit-code
/// contract) or a usage problem (always exit 2).
enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        Failure::Lib(err)
    }
}

/// Flag wins over the PHIPRACTICAL_THREADS environment variable; absent
/// both, rayon's default pool (available parallelism) is used untouched.
fn configure_threads(flag: Option<usize>) -> Result<(), String> {
    let requested = match flag {
        Some(n) => Some(n),
        None => match std::env::var("PHIPRACTICAL_THREADS") {
            Ok(raw) => Some(raw.trim().parse::<usize>().map_err(|_| {
                format!("PHIPRACTICAL_THREADS must be a positive integer, got `{raw}`")
            })?),
            Err(std::env::VarError::NotPresent) => None,
            Err(err) => return Err(format!("PHIPRACTICAL_THREADS: {err}")),
        },
    };
    match requested {
        None => Ok(()),
        Some(0) => Err("thread count must be at least 1".into()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|err| format!("failed to configure {n} worker threads: {err}")),
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::ZeroInput => 3,
        Error::LimitTooLarge { .. }
        | Error::LimitExceeded { .. }
        | Error::OracleLimitExceeded { .. } => 4,
        Error::NoWitness { .. } => 1,
        _ => 2,
    }
}

fn emit(out: Option<&std::path::Path>, output: &str) -> Result<(), String> {
    let mut text = output.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|err| format!("cannot write {}: {err}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<(String, i32), Failure> {
    match command {
        Command::Classify { n, format } => {
            let flags = classify(&factorize(n)?);
            Ok((render_flags(&flags, format), 0))
        }
        Command::Count {
            limit,
            checkpoints,
            ratios,
            format,
        } => {
            let checkpoints = checkpoints.unwrap_or_else(|| default_checkpoints(limit));
            let rows = run_census(limit, &checkpoints)?;
            let output = if ratios {
                let table = ratio_table(&rows);
                match format {
                    Format::Json => ratios_to_json(&table),
                    Format::Text | Format::Csv => ratios_to_csv(&table),
                }
            } else {
                match format {
                    Format::Json => rows_to_json(&rows),
                    Format::Text | Format::Csv => rows_to_csv(&rows),
                }
            };
            Ok((output, 0))
        }
        Command::Witness { n, m, poly, format } => {
            let f = factorize(n)?;
            let cert = witness_subset(&f, m)?;
            let polynomial = if poly {
                Some(witness_polynomial(&cert)?)
            } else {
                None
            };
            let output = match format {
                Format::Text => {
                    let mut text = cert.to_text();
                    if let Some(p) = &polynomial {
                        text.push_str(&format!("\npolynomial: {p}"));
                        // witness_polynomial only returns after checking the
                        // exact division, so reaching this line proves it.
                        text.push_str(&format!("\ndivides t^{n} - 1: true"));
                    }
                    text
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct WitnessDocument {
                        n: u64,
                        m: u64,
                        divisors: Vec<u64>,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        polynomial: Option<String>,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        divides: Option<bool>,
                    }
                    let doc = WitnessDocument {
                        n: cert.n,
                        m: cert.m,
                        divisors: cert.divisors.clone(),
                        polynomial: polynomial.as_ref().map(|p| p.to_string()),
                        divides: polynomial.as_ref().map(|_| true),
                    };
                    serde_json::to_string_pretty(&doc)
                        .expect("witness document serialization cannot fail")
                }
                Format::Csv => {
                    return Err(Failure::Usage(
                        "csv output is not available for witness".into(),
                    ))
                }
            };
            Ok((output, 0))
        }
        Command::Verify {
            lemma,
            limit,
            format,
        } => {
            let report = verify(lemma.into(), limit)?;
            let output = match format {
                Format::Text => report.to_text(),
                Format::Json => serde_json::to_string_pretty(&report)
                    .expect("report serialization cannot fail"),
                Format::Csv => {
                    return Err(Failure::Usage(
                        "csv output is not available for verify".into(),
                    ))
                }
            };
            Ok((output, if report.passed { 0 } else { 1 }))
        }
        Command::List {
            limit,
            family,
            squarefree,
            parity,
            format,
        } => {
            let family = Family::from_str(&family)?;
            let members = list_members(limit, family, squarefree, parity.into())?;
            let output = match format {
                Format::Text => members
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => serde_json::to_string_pretty(&members)
                    .expect("member list serialization cannot fail"),
                Format::Csv => {
                    return Err(Failure::Usage(
                        "csv output is not available for list".into(),
                    ))
                }
            };
            Ok((output, 0))
        }
    }
}

fn render_flags(flags: &ClassificationFlags, format: Format) -> String {
    match format {
        Format::Text => format!(
            "n={}\npractical={}\nphi_practical={}\nweakly_phi_practical={}\nsquarefree={}\n\
             two_dense={}\nstrictly_two_dense={}\neven={}",
            flags.n,
            flags.practical,
            flags.phi_practical,
            flags.weakly_phi_practical,
            flags.squarefree,
            flags.two_dense,
            flags.strictly_two_dense,
            flags.even
        ),
        Format::Json => {
            serde_json::to_string_pretty(flags).expect("flag serialization cannot fail")
        }
        Format::Csv => format!(
            "n,practical,phi_practical,weakly_phi_practical,squarefree,two_dense,\
             strictly_two_dense,even\n{},{},{},{},{},{},{},{}",
            flags.n,
            flags.practical,
            flags.phi_practical,
            flags.weakly_phi_practical,
            flags.squarefree,
            flags.two_dense,
            flags.strictly_two_dense,
            flags.even
        ),
    }
}
