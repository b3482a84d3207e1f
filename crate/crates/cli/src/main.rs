use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use tschirn_cli::commands::{self, Outcome};
use tschirn_cli::suite::{self, Scale, SuiteConfig};
use tschirn_core::instances::{CoxCurve, PlaneCurve};
use tschirn_core::pipeline::VerifyOptions;

#[derive(Parser)]
#[command(name = "tschirn", version, about = "Splitting types of covers of P^1 on Hirzebruch surfaces")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for batch work; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Wall-clock budget per instance.
    #[arg(long, global = true)]
    timeout_ms: Option<u64>,
    /// Base seed for generated instances.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predicted splitting types and genera.
    Predict {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        e: i64,
        #[arg(long, default_value_t = 0)]
        delta: i64,
        #[arg(long, default_value_t = 0)]
        gamma: u32,
    },
    /// Computes the splitting type of a curve on F_e and compares it with the prediction.
    Verify {
        /// Curve file; omit to generate a random instance.
        file: Option<PathBuf>,
        #[arg(long, required_unless_present = "file")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "file")]
        e: Option<i64>,
        #[arg(long, default_value_t = 0)]
        delta: i64,
        /// Coefficient bound for generated instances.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long)]
        skip_smoothness: bool,
    },
    /// Projects a plane curve from a point on it and verifies the resulting cover.
    Plane {
        file: PathBuf,
        #[arg(long)]
        skip_smoothness: bool,
    },
    /// Intersection number of two divisor classes.
    Intersect {
        #[arg(long)]
        d1: String,
        #[arg(long)]
        d2: String,
        #[arg(long)]
        e: i64,
        #[arg(long, default_value_t = 0)]
        gamma: u32,
    },
    /// Splitting of the direct images of O_B(k).
    Pushforward {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        e: i64,
    },
    /// Arithmetic genus of a class by adjunction.
    Adjunction {
        #[arg(long)]
        class: String,
        #[arg(long)]
        e: i64,
        #[arg(long, default_value_t = 0)]
        gamma: u32,
    },
    /// Runs the acceptance matrix and the golden corpus.
    Suite {
        #[arg(long, value_parser = ["smoke", "full"])]
        scale: Option<String>,
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Outcome {
    let timeout = cli.timeout_ms;
    match cli.command {
        Command::Predict { m, e, delta, gamma } => commands::predict(m, e, delta, gamma),
        Command::Verify { file, m, e, delta, bound, skip_smoothness } => {
            let opts = VerifyOptions { check_smoothness: !skip_smoothness, ..Default::default() };
            match file {
                Some(path) => {
                    let curve = match read(&path).map(|t| CoxCurve::from_json(&t)) {
                        Ok(Ok(c)) => c,
                        Ok(Err(e)) => return Outcome::usage(e.to_string()),
                        Err(o) => return o,
                    };
                    commands::with_timeout(timeout, move || commands::verify_instance(&curve, &opts))
                }
                None => {
                    let (m, e) = (m.expect("required"), e.expect("required"));
                    let seed = cli.seed;
                    commands::with_timeout(timeout, move || commands::verify_generated(m, e, delta, seed, bound, &opts))
                }
            }
        }
        Command::Plane { file, skip_smoothness } => {
            let opts = VerifyOptions { check_smoothness: !skip_smoothness, ..Default::default() };
            let curve = match read(&file).map(|t| PlaneCurve::from_json(&t)) {
                Ok(Ok(c)) => c,
                Ok(Err(e)) => return Outcome::usage(e.to_string()),
                Err(o) => return o,
            };
            commands::with_timeout(timeout, move || commands::verify_plane_curve(&curve, &opts))
        }
        Command::Intersect { d1, d2, e, gamma } => commands::intersect_classes(&d1, &d2, e, gamma),
        Command::Pushforward { k, e } => commands::pushforward(k, e),
        Command::Adjunction { class, e, gamma } => commands::adjunction(&class, e, gamma),
        Command::Suite { scale, delta, golden } => {
            let mut cfg = SuiteConfig { seed: cli.seed, jobs: cli.jobs, delta, ..Default::default() };
            match scale.as_deref() {
                Some("smoke") => cfg.scale = Scale::Smoke,
                Some("full") => cfg.scale = Scale::Full,
                _ => {}
            }
            if let Some(dir) = golden {
                cfg.golden_dir = dir;
            }
            if let Some(ms) = timeout {
                cfg.timeout_ms = ms;
            }
            let summary = suite::run_suite(&cfg);
            if cli.pretty {
                for row in &summary.rows {
                    println!("{}", row.line());
                }
                println!("{} passed, {} failed", summary.passed, summary.failed);
                let code = if summary.all_pass { commands::EXIT_OK } else { commands::EXIT_INTERNAL };
                return Outcome { value: serde_json::Value::Null, exit_code: code };
            }
            let code = if summary.all_pass { commands::EXIT_OK } else { commands::EXIT_INTERNAL };
            Outcome { value: json!(summary), exit_code: code }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { commands::EXIT_USAGE as u8 } else { 0 });
        }
    };
    let pretty = cli.pretty;
    let out = run(cli);
    if !out.value.is_null() {
        if pretty {
            print!("{}", commands::pretty(&out.value));
        } else {
            println!("{}", serde_json::to_string_pretty(&out.value).expect("serializable"));
        }
    }
    ExitCode::from(out.exit_code as u8)
}
