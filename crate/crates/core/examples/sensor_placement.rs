//! Sensor placement: each sensor site gets one of k sensor types, covered targets are
//! weighted by the best sensor watching them, and the chosen sites must form a forest
//! in a communication graph.

use ksubmod::functions::{FunctionOracle, WeightedCoverageFunction};
use ksubmod::matroids::{rank, GraphicMatroid, MatroidOracle};
use ksubmod::{greedy_maximize, GreedyOptions, Value};

fn main() -> ksubmod::Result<()> {
    let sites = ["ab", "bc", "cd", "da", "ac"];
    let edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)];
    let m = MatroidOracle::new(GraphicMatroid::new(4, edges)?);

    // weights[target][site][type - 1]
    let w = |v: i64| Value::from(v);
    let weights = vec![
        vec![
            vec![w(5), w(2)],
            vec![w(0), w(4)],
            vec![w(1), w(0)],
            vec![w(0), w(0)],
            vec![w(3), w(3)],
        ],
        vec![
            vec![w(0), w(0)],
            vec![w(6), w(1)],
            vec![w(2), w(5)],
            vec![w(0), w(3)],
            vec![w(4), w(0)],
        ],
        vec![
            vec![w(1), w(0)],
            vec![w(0), w(0)],
            vec![w(0), w(2)],
            vec![w(7), w(1)],
            vec![w(0), w(6)],
        ],
    ];
    let f = FunctionOracle::new(WeightedCoverageFunction::new(sites.len(), 2, weights)?);

    let out = greedy_maximize(&f, &m, GreedyOptions::default())?;
    println!(
        "rank of the graphic matroid: {}",
        rank(&MatroidOracle::new(m.matroid().clone()))?
    );
    for e in out.solution.support() {
        println!("site {} -> type {}", sites[e], out.solution.label(e));
    }
    println!("coverage {}", out.value);
    println!(
        "oracle calls: {} membership, {} evaluation",
        out.trace.membership_calls, out.trace.evaluation_calls
    );
    Ok(())
}
