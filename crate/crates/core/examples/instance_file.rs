//! Parse an instance file, solve it, and print the JSON report.
//!
//! cargo run --example instance_file -- crates/core/instances/coverage_partition.json

use ksubmod::cli::{cmd_solve, render_run, ReportFormat, SolveOptions};
use ksubmod::{Budget, Instance};

fn main() -> ksubmod::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/instances/sensors_graphic.json"
        )
        .into()
    });
    let inst = Instance::read(&path)?;
    println!(
        "{} elements, k = {}, digest {}",
        inst.n(),
        inst.k,
        inst.digest()
    );
    let opts = SolveOptions {
        exact: true,
        trace: true,
        ..Default::default()
    };
    let report = cmd_solve(&inst, opts, &Budget::from_env())?;
    print!("{}", render_run(&report, ReportFormat::Text));
    Ok(())
}
