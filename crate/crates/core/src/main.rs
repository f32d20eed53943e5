use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ksubmod::cli::{self, ReportFormat, SolveOptions};
use ksubmod::generate::{FunctionKind, GeneratorConfig, MatroidKind};
use ksubmod::{Budget, Error, Instance};

/// Greedy maximization of monotone k-submodular functions under a matroid constraint.
///
/// Budgets can be raised or lowered with KSUBMOD_MAX_TABLE, KSUBMOD_MAX_PAIR_LATTICE,
/// KSUBMOD_MAX_MATROID_N and KSUBMOD_MAX_LABELINGS.
#[derive(Parser)]
#[command(name = "ksubmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the greedy on an instance file and print a report.
    Solve {
        file: PathBuf,
        /// Also compute the exact optimum and the approximation ratio.
        #[arg(long)]
        exact: bool,
        /// Also run the function and matroid validators.
        #[arg(long)]
        validate: bool,
        /// Include the per-round trace.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Use the priority-queue greedy.
        #[arg(long)]
        lazy: bool,
    },
    /// Write seeded random instances.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        matroid: MatroidKind,
        #[arg(long)]
        function: FunctionKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Check the function and matroid axioms of an instance.
    Validate {
        file: PathBuf,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
    },
    /// Greedy against brute force on every instance in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Write the per-instance CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        lazy: bool,
    },
}

fn run(cli: Cli) -> Result<i32, Error> {
    let budget = Budget::from_env();
    match cli.command {
        Command::Solve {
            file,
            exact,
            validate,
            trace,
            format,
            lazy,
        } => {
            let inst = Instance::read(&file)?;
            let opts = SolveOptions {
                exact,
                validate,
                trace,
                lazy,
            };
            let report = cli::cmd_solve(&inst, opts, &budget)?;
            print!("{}", cli::render_run(&report, format));
            Ok(report.exit_code())
        }
        Command::Generate {
            n,
            k,
            matroid,
            function,
            seed,
            count,
            out_dir,
        } => {
            let config = GeneratorConfig {
                n,
                k,
                matroid,
                function,
            };
            for path in cli::cmd_generate(config, seed, count, &out_dir)? {
                println!("{}", path.display());
            }
            Ok(cli::EXIT_OK)
        }
        Command::Validate { file, format } => {
            let inst = Instance::read(&file)?;
            let report = cli::cmd_validate(&inst, &budget)?;
            print!("{}", cli::render_validation(&report, format));
            Ok(if report.passed() {
                cli::EXIT_OK
            } else {
                cli::EXIT_VALIDATION
            })
        }
        Command::Bench { dir, csv, lazy } => {
            let report = cli::cmd_bench(&dir, lazy, &budget)?;
            match csv {
                Some(path) => std::fs::write(path, report.to_csv())?,
                None => print!("{}", report.to_csv()),
            }
            eprintln!(
                "{} instances, min ratio {}, mean ratio {:.4}",
                report.rows.len(),
                report.min_ratio,
                report.mean_ratio
            );
            for name in &report.violations {
                eprintln!("guarantee violated: {name}");
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::GuaranteeViolation { serialized, .. } = &err {
                eprintln!("{serialized}");
            }
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
