//! The priority-queue greedy selects the same pairs with fewer evaluations.

use ksubmod::generate::{generate_instance, FunctionKind, GeneratorConfig, MatroidKind};
use ksubmod::{greedy_maximize, GreedyOptions};

fn main() -> ksubmod::Result<()> {
    let config = GeneratorConfig {
        n: 12,
        k: 3,
        matroid: MatroidKind::Uniform,
        function: FunctionKind::Coverage,
    };
    for seed in 0..5 {
        let inst = generate_instance(config, seed, 0)?;
        let plain = greedy_maximize(
            &inst.function_oracle(),
            &inst.matroid_oracle(),
            GreedyOptions { lazy: false },
        )?;
        let lazy = greedy_maximize(
            &inst.function_oracle(),
            &inst.matroid_oracle(),
            GreedyOptions { lazy: true },
        )?;
        assert_eq!(plain.trace.selections(), lazy.trace.selections());
        println!(
            "seed {seed}: value {}, evaluations plain {} lazy {}",
            plain.value, plain.trace.evaluation_calls, lazy.trace.evaluation_calls
        );
    }
    Ok(())
}
