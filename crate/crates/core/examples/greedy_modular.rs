//! Two elements, two labels, pick one pair under a rank-1 uniform matroid, then two.

use ksubmod::functions::{FunctionOracle, ModularFunction};
use ksubmod::matroids::{MatroidOracle, UniformMatroid};
use ksubmod::{greedy_maximize, GreedyOptions, Value};

fn main() -> ksubmod::Result<()> {
    let gains = vec![
        vec![Value::from(3), Value::from(1)],
        vec![Value::from(2), Value::from(2)],
    ];
    let f = FunctionOracle::new(ModularFunction::new(2, gains)?);
    for cap in [1, 2] {
        let m = MatroidOracle::new(UniformMatroid::new(2, cap));
        let out = greedy_maximize(&f, &m, GreedyOptions::default())?;
        println!(
            "N = {cap}: solution {:?}, value {}",
            out.solution.to_vec(),
            out.value
        );
        for it in &out.trace.iterations {
            println!(
                "  round {}: e{} gets label {} (gain {})",
                it.iteration,
                it.element + 1,
                it.label,
                it.gain
            );
        }
    }
    Ok(())
}
