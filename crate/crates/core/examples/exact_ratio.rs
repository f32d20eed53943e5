//! Greedy against the brute-force optimum on a batch of random instances.

use ksubmod::exact::{ratio_harness, HarnessOptions};
use ksubmod::generate::{generate_instance, FunctionKind, GeneratorConfig, MatroidKind};
use ksubmod::Budget;

fn main() -> ksubmod::Result<()> {
    let mut instances = Vec::new();
    for (i, matroid) in MatroidKind::ALL.into_iter().enumerate() {
        for seed in 0..10 {
            let config = GeneratorConfig {
                n: 5,
                k: 2,
                matroid,
                function: FunctionKind::Coverage,
            };
            instances.push((
                format!("{matroid}-{seed}"),
                generate_instance(config, seed + 100 * i as u64, 0)?,
            ));
        }
    }
    let report = ratio_harness(
        instances.iter().map(|(name, inst)| (name.clone(), inst)),
        HarnessOptions {
            lazy: false,
            maximal_optima: true,
        },
        &Budget::default(),
    )?;
    print!("{}", report.to_csv());
    println!(
        "min ratio {} mean ratio {:.4}",
        report.min_ratio, report.mean_ratio
    );
    Ok(())
}
