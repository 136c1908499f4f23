//! Command-line surface over the library: one subcommand per pipeline
//! stage, with text, JSON, and DOT output.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nfjd::decision::{
    decide_equality, nf_njd_summary, NjdValue, VerdictStatus, DEFAULT_MAX_EXPONENT,
};
use nfjd::dold::{expand, sequence_from_json, sequence_to_json};
use nfjd::error::Error;
use nfjd::exact_linalg::{classify_spectrum, lefschetz_sequence, minimal_period_lcm};
use nfjd::export;
use nfjd::model::parse_model;
use nfjd::reid_graph::{build_graph, Model};
use nfjd::smooth_real::decide_sequence_realizable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct Common {
    /// Model file (JSON), or "-" for stdin.
    #[arg(long)]
    input: PathBuf,
    /// Override the model's ambient dimension.
    #[arg(long)]
    dimension: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized harnesses; core operations ignore it.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Parser)]
#[command(
    name = "nfjd",
    version,
    about = "Exact Nielsen periodic point computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Lefschetz sequence L(f^k) for k | n.
    Lefschetz {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
    },
    /// Print the periodic-expansion coefficients of the Lefschetz sequence.
    Dold {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
    },
    /// Print the eigenvalue classification of the model matrix.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Decide smooth realizability of a coefficient sequence (JSON on
    /// --input) at a given dimension.
    Realizable {
        /// Sequence file (JSON), or "-" for stdin.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dimension: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the Reidemeister orbit graph at horizon n.
    Graph {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
    },
    /// Print NF_n, the minimal number of n-periodic points.
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
    },
    /// Decide NF_n = NJD_n with a certificate.
    Decide {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_EXPONENT)]
        max_exponent: u64,
    },
    /// Run the structural validators on the graph at horizon n.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
    },
}

fn load_model(common: &Common) -> Result<Model, Error> {
    let (mut model, outcome) = parse_model(&common.input)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(m) = common.dimension {
        if m < 3 {
            return Err(Error::InvalidInput(format!(
                "dimension must be at least 3, got {m}"
            )));
        }
        model.dimension = m;
    }
    Ok(model)
}

fn read_text(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Lefschetz { common, n } => {
            let model = load_model(&common)?;
            let seq = lefschetz_sequence(&model.matrix, n);
            match common.format {
                Format::Json => println!("{}", sequence_to_json(&seq)),
                _ => {
                    for (k, v) in seq.values() {
                        println!("L(f^{k}) = {v}");
                    }
                }
            }
        }
        Command::Dold { common, n } => {
            let model = load_model(&common)?;
            let seq = lefschetz_sequence(&model.matrix, n);
            let coeffs = expand(&seq).integral().ok_or_else(|| {
                Error::ModelInconsistency("Lefschetz sequence violates the Dold congruences".into())
            })?;
            match common.format {
                Format::Json => println!("{}", sequence_to_json(&coeffs)),
                _ => {
                    for (k, v) in coeffs.values() {
                        println!("a_{k} = {v}");
                    }
                }
            }
        }
        Command::Spectrum { common } => {
            let model = load_model(&common)?;
            let s = classify_spectrum(&model.matrix);
            match common.format {
                Format::Json => {
                    let periods: serde_json::Map<String, serde_json::Value> = s
                        .unity_periods
                        .iter()
                        .map(|(d, m)| (d.to_string(), serde_json::json!(m)))
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "unity_periods": periods,
                            "nilpotent_multiplicity": s.nilpotent_multiplicity,
                            "all_moduli_le_one": s.all_moduli_le_one,
                            "remainder_degree": s.remainder.degree(),
                            "d": if s.all_moduli_le_one {
                                Some(minimal_period_lcm(&s))
                            } else {
                                None
                            },
                        })
                    );
                }
                _ => {
                    for (d, m) in &s.unity_periods {
                        println!("root-of-unity period {d}: multiplicity {m}");
                    }
                    if s.nilpotent_multiplicity > 0 {
                        println!("zero eigenvalue: multiplicity {}", s.nilpotent_multiplicity);
                    }
                    println!("all eigenvalue moduli <= 1: {}", s.all_moduli_le_one);
                    if s.all_moduli_le_one {
                        println!("d = lcm of periods = {}", minimal_period_lcm(&s));
                    }
                }
            }
        }
        Command::Realizable {
            input,
            dimension,
            format,
        } => {
            let text = read_text(&input)?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("sequence JSON: {e}")))?;
            let seq = sequence_from_json(&value)?;
            let verdict = decide_sequence_realizable(&seq, dimension)?;
            match format {
                Format::Json => println!("{}", export::realizability_to_json(&verdict)),
                _ => {
                    println!("realizable: {}", verdict.realizable);
                    if let Some(w) = &verdict.witness {
                        let d: Vec<String> = w.d_set.iter().map(|d| d.to_string()).collect();
                        println!("witness: s = {}, d = {{{}}}", w.s, d.join(", "));
                    }
                    if let Some(r) = &verdict.failure_reason {
                        println!("reason: {r}");
                    }
                }
            }
        }
        Command::Graph { common, n } => {
            let model = load_model(&common)?;
            let graph = build_graph(&model, n)?;
            match common.format {
                Format::Dot => print!("{}", export::graph_to_dot(&graph)),
                Format::Json => println!("{}", export::graph_to_json(&graph)),
                Format::Text => {
                    let classification = graph.classify();
                    for v in graph.vertices() {
                        let flags = match (
                            classification.essential_levels.contains(&v.level),
                            classification.irreducible.contains(&v),
                        ) {
                            (true, true) => " [essential, irreducible]",
                            (true, false) => " [essential]",
                            (false, true) => " [irreducible]",
                            (false, false) => "",
                        };
                        let parts: Vec<String> =
                            v.cls.residues().iter().map(|r| r.to_string()).collect();
                        println!(
                            "level {} class ({}): index {}{}",
                            v.level,
                            parts.join(","),
                            graph.index(&v),
                            flags
                        );
                    }
                }
            }
        }
        Command::Nf { common, n } => {
            let model = load_model(&common)?;
            let graph = build_graph(&model, n)?;
            let nf = graph.nf_number()?;
            match common.format {
                Format::Json => println!("{}", serde_json::json!({ "n": n, "nf": nf.to_string() })),
                _ => println!("NF_{n} = {nf}"),
            }
        }
        Command::Decide {
            common,
            n,
            max_exponent,
        } => {
            let model = load_model(&common)?;
            let verdict = decide_equality(&model, n, max_exponent)?;
            if let Some(c) = &verdict.inequality_certificate {
                if !c.complete {
                    return Err(Error::SearchCapExceeded { max_exponent });
                }
            }
            match common.format {
                Format::Json => println!("{}", export::verdict_to_json(&verdict)),
                _ => {
                    println!("status: {}", export::status_str(verdict.status));
                    match verdict.status {
                        VerdictStatus::Unequal => {
                            let c = verdict.inequality_certificate.as_ref().unwrap();
                            println!(
                                "witness exponents: {:?} ({} distinct index values > bound {})",
                                c.exponents, c.distinct_count, c.bound
                            );
                            println!("witness horizon n* = {}", c.witness_horizon);
                        }
                        _ => {
                            let horizon = verdict
                                .equality_certificate
                                .as_ref()
                                .map(|c| c.horizon)
                                .or(n)
                                .unwrap_or(1);
                            let summary = nf_njd_summary(&model, horizon, max_exponent)?;
                            let njd = match summary.njd {
                                NjdValue::Exact(v) => v.to_string(),
                                NjdValue::LowerBound { at_least, .. } => {
                                    format!(">= {at_least}")
                                }
                            };
                            println!("NF_{} = {}, NJD_{} = {}", horizon, summary.nf, horizon, njd);
                            if let Some(c) = &verdict.equality_certificate {
                                println!(
                                    "certificate verified: {} ({} attachments)",
                                    c.verification.ok,
                                    c.attachments.len()
                                );
                            }
                        }
                    }
                }
            }
        }
        Command::Validate { common, n } => {
            let model = load_model(&common)?;
            let graph = build_graph(&model, n)?;
            let report = graph.run_validators();
            match common.format {
                Format::Json => println!("{}", export::validators_to_json(&report)),
                _ => {
                    let fmt = |v: Option<bool>| match v {
                        Some(true) => "pass",
                        Some(false) => "FAIL",
                        None => "n/a",
                    };
                    println!(
                        "V1 prime-power periods cover |G|: {}",
                        fmt(report.v1_prime_periods)
                    );
                    println!(
                        "V2 reduction to gcd(k,d) bijective: {}",
                        fmt(Some(report.v2_reduction_bijective))
                    );
                    println!(
                        "V3 essential irreducible levels divide d: {}",
                        fmt(Some(report.v3_ieor_levels_divide_d))
                    );
                    println!(
                        "V4 L(f^k) = L(f^gcd(k,d)): {}",
                        fmt(report.v4_lefschetz_gcd)
                    );
                    for m in &report.messages {
                        println!("  {m}");
                    }
                    println!("all pass: {}", report.all_pass());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::EnumerationCap { .. } => ExitCode::from(2),
                Error::ModelInconsistency(_) => ExitCode::from(3),
                Error::SearchCapExceeded { .. } => ExitCode::from(4),
            }
        }
    }
}
