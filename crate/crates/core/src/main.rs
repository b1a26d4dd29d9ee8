use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use grprops::cli::{render_reports, reports_to_json, run_check, run_builtin_suite, suite_exit_code, SuiteOptions};
use grprops::{Budget, Mode, Property};

#[derive(Parser)]
#[command(name = "grprops", version, about = "Ring properties of finite group rings, with witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Det,
    Rand,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Reduced,
    Reversible,
    Symmetric,
    Si,
    DuoLeft,
    DuoRight,
    Duo,
    #[value(name = "2primal")]
    TwoPrimal,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Reduced => Property::Reduced,
            PropertyArg::Reversible => Property::Reversible,
            PropertyArg::Symmetric => Property::Symmetric,
            PropertyArg::Si => Property::Si,
            PropertyArg::DuoLeft => Property::DuoLeft,
            PropertyArg::DuoRight => Property::DuoRight,
            PropertyArg::Duo => Property::Duo,
            PropertyArg::TwoPrimal => Property::TwoPrimal,
        }
    }
}

#[derive(clap::Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 1 << 24)]
    budget_pairs: u64,
    #[arg(long, default_value_t = 1 << 26)]
    budget_triples: u64,
    #[arg(long, value_enum, default_value = "det")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> grprops::Result<Budget> {
        let mode = match self.mode {
            ModeArg::Det => Mode::Deterministic,
            ModeArg::Rand => Mode::Seeded(self.seed),
        };
        Budget::new(self.budget_pairs, self.budget_triples, mode)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide one property of one ring.
    Check {
        /// Ring expression, e.g. `Z/4`, `GF(2^2)`, `M2(GF(2))`, `GF(2)(+)Z/3`.
        #[arg(long)]
        ring: String,
        /// Group expression, e.g. `Q8`, `D4`, `C2xC3`; builds the group ring.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the verdict as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the built-in scenario suite.
    Suite {
        /// Scenario id or family.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the reports as a JSON array to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn write_json(path: &PathBuf, value: &serde_json::Value) -> grprops::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn run(cli: Cli) -> grprops::Result<ExitCode> {
    match cli.command {
        Command::Check {
            ring,
            group,
            property,
            budget,
            json,
        } => {
            let report = run_check(&ring, group.as_deref(), property.into(), &budget.budget()?)?;
            print!("{}", report.render());
            if let Some(path) = json {
                write_json(&path, &report.to_json())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite {
            only,
            workers,
            budget,
            json,
        } => {
            let opts = SuiteOptions {
                only,
                workers,
                budget: budget.budget()?,
            };
            let reports = run_builtin_suite(&opts)?;
            for r in &reports {
                if let Some(d) = r.details.as_ref().filter(|_| r.family == "audit") {
                    println!("{d}");
                }
            }
            print!("{}", render_reports(&reports));
            if let Some(path) = json {
                write_json(&path, &reports_to_json(&reports, true))?;
            }
            Ok(ExitCode::from(suite_exit_code(&reports) as u8))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
