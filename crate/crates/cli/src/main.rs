use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hecke_cli::commands::{self, EnumerateArgs, SpecChoice};
use hecke_cli::config::Config;
use hecke_cli::report::{Outcome, RunReport};
use hecke_core::enumerate::{Budget, DEFAULT_SEED};
use serde_json::Value;

/// Exact verification of Hecke algebra computations for complex reflection groups.
#[derive(Parser)]
#[command(name = "hecke", version)]
struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice [default: 26, or `seed` from the config file].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML config with named specializations [env: HECKE_CONFIG].
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Leave the wall time out of the report.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show that the G4 Demazure operators fail the braid relation up to scalars.
    Demazure {
        /// Check that δ1^3 and δ2^3 kill all monomials up to this degree.
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Certify the 0-Hecke torsion element c((s1^2 s2^2)^6 - c^8).
    Torsion,
    /// Certify a shipped witness module (or `all`).
    Witness {
        name: String,
        /// Largest basis index checked against every relation.
        #[arg(long = "R", default_value_t = 100)]
        r: usize,
        /// Iterations of the growth word.
        #[arg(long, default_value_t = 50)]
        k: usize,
    },
    /// Enumerate the regular module of a catalogue presentation.
    Enumerate(EnumerateCmd),
    /// Certify that a word list spans an enumerated module.
    CertifySpanning {
        name: String,
        /// One word per line; the built-in 1296-word candidate when omitted.
        #[arg(long)]
        words: Option<PathBuf>,
        /// Result file written by `enumerate --out`.
        #[arg(long)]
        result: PathBuf,
    },
    /// Replay a rewriting trace (a file or a shipped trace name).
    Trace { file: String },
    /// Run the whole acceptance suite.
    VerifyAll,
}

#[derive(Args)]
struct EnumerateCmd {
    name: String,
    /// `k=v,…` or the name of a specialization from the config file.
    #[arg(long, conflicts_with = "random")]
    spec: Option<String>,
    /// Use the seeded random specialization.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = Budget::default().max_dim)]
    max_dim: usize,
    #[arg(long, default_value_t = Budget::default().max_len)]
    max_len: usize,
    /// Write the result file here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file; resumed from when it exists, removed on success.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Definitions between checkpoints.
    #[arg(long, default_value_t = 5000)]
    checkpoint_every: u64,
}

fn print_human(report: &RunReport) {
    let p = &report.payload;
    match report.command.as_str() {
        "demazure" => {
            let cert = &p["braid_failure"];
            println!(
                "3 δ1δ2δ1(y^4) = {}",
                cert["three_u"].as_str().unwrap_or("?")
            );
            println!("9 δ2δ1δ2(y^4) = {}", cert["nine_v"].as_str().unwrap_or("?"));
            println!(
                "determinant   = {}",
                cert["determinant"].as_str().unwrap_or("?")
            );
            if let Some(d) = p["nilpotent_up_to_degree"].as_u64() {
                println!("δ1^3 = δ2^3 = 0 on all monomials of degree <= {d}");
            }
            if let Some(table) = cert["table"].as_array() {
                for e in table.iter().filter(|e| e["matches"] == Value::Bool(false)) {
                    println!(
                        "displayed value {} differs: computed {}, displayed {}",
                        e["label"].as_str().unwrap_or("?"),
                        e["computed"].as_str().unwrap_or("?"),
                        e["expected"].as_str().unwrap_or("?")
                    );
                }
            }
        }
        "torsion" => {
            println!("element       {}", p["element"].as_str().unwrap_or("?"));
            println!(
                "trace         {} -> {}",
                p["trace"]["start"].as_str().unwrap_or("?"),
                p["trace"]["end"].as_str().unwrap_or("?")
            );
            println!(
                "module image  (S1^2 S2^2)^6 w[1] = {}",
                p["module_image"].as_str().unwrap_or("?")
            );
        }
        "witness" => {
            for m in p.as_array().into_iter().flatten() {
                let g = &m["certificate"]["growth"];
                println!(
                    "{}: relations hold up to index {}, orbit {} -> {} in {} steps",
                    m["module"].as_str().unwrap_or("?"),
                    m["certificate"]["relations"]["bound"],
                    g["orbit"]
                        .as_array()
                        .and_then(|o| o.first())
                        .and_then(Value::as_str)
                        .unwrap_or("?"),
                    g["orbit"]
                        .as_array()
                        .and_then(|o| o.last())
                        .and_then(Value::as_str)
                        .unwrap_or("?"),
                    g["iterations"]
                );
            }
        }
        "enumerate" => {
            if let Some(d) = p["dimension"].as_u64() {
                println!("dimension {d}");
            }
        }
        "certify-spanning" => {
            if let Some(c) = p.get("certificate") {
                println!(
                    "rank {} of {} from {} words",
                    c["rank"], c["dimension"], c["words"]
                );
            }
        }
        "trace" => {
            println!(
                "{} steps: {} -> {}",
                p["steps"],
                p["start"].as_str().unwrap_or("?"),
                p["end"].as_str().unwrap_or("?")
            );
        }
        _ => {}
    }
    let verdict = match report.outcome {
        Outcome::Certified => "certified".to_owned(),
        Outcome::Failed => format!("FAILED: {}", report.failure.as_deref().unwrap_or("")),
        Outcome::Error => format!("error: {}", report.failure.as_deref().unwrap_or("")),
    };
    println!("{verdict}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let config = match Config::discover(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let seed = cli.seed.or(config.seed).unwrap_or(DEFAULT_SEED);
    let human = !cli.json;
    let mut report = match cli.command {
        Command::Demazure { max_degree } => commands::demazure(max_degree),
        Command::Torsion => commands::torsion(),
        Command::Witness { name, r, k } => commands::witness(&name, r, k),
        Command::Enumerate(e) => {
            let spec = match (e.spec, e.random) {
                (Some(s), _) => SpecChoice::Given(s),
                (None, true) => SpecChoice::Random(seed),
                (None, false) => SpecChoice::Group,
            };
            let args = EnumerateArgs {
                name: e.name,
                spec,
                budget: Budget {
                    max_dim: e.max_dim,
                    max_len: e.max_len,
                },
                out: e.out,
                checkpoint: e.checkpoint,
                checkpoint_every: e.checkpoint_every.max(1),
            };
            commands::enumerate(&args, &config)
        }
        Command::CertifySpanning {
            name,
            words,
            result,
        } => commands::certify(&name, words.as_deref(), &result, seed),
        Command::Trace { file } => commands::trace(&file),
        Command::VerifyAll => commands::verify_all(seed, |c| {
            if human {
                println!("{}", c.line());
            }
        }),
    };
    if !cli.no_timings {
        report.wall_ms = Some(started.elapsed().as_millis() as u64);
    }
    if cli.json {
        let _ = writeln!(std::io::stdout(), "{}", report.to_json());
    } else {
        print_human(&report);
    }
    ExitCode::from(report.outcome.exit_code() as u8)
}
