//! Hill-climb coverage weights toward a small greedy-to-optimum ratio.

use ksubmod::generate::{adversarial_search, FunctionKind, GeneratorConfig, MatroidKind};

fn main() -> ksubmod::Result<()> {
    for matroid in [MatroidKind::Partition, MatroidKind::Graphic] {
        let config = GeneratorConfig {
            n: 4,
            k: 2,
            matroid,
            function: FunctionKind::Coverage,
        };
        let (inst, ratio) = adversarial_search(config, 11, 300)?;
        println!("{matroid}: worst ratio {ratio} ({:.4})", ratio.to_f64());
        if matroid == MatroidKind::Graphic {
            print!("{}", inst.to_json());
        }
    }
    Ok(())
}
