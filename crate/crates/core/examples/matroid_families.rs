//! The shipped matroid families: rank, independent sets, axioms and the exchange step.

use ksubmod::matroids::{
    as_base, enumerate_independent_sets, exchange_witness, rank, validate_axioms, GraphicMatroid,
    LinearMatroidGF2, Matroid, MatroidOracle, PartitionMatroid, UniformMatroid,
};
use ksubmod::Budget;

#[derive(Debug)]
struct EvenSets(usize);

impl Matroid for EvenSets {
    fn ground_size(&self) -> usize {
        self.0
    }
    fn independent(&self, set: &[usize]) -> bool {
        set.len().is_multiple_of(2)
    }
}

fn describe(m: MatroidOracle) -> ksubmod::Result<()> {
    let budget = Budget::default();
    let sets: Vec<Vec<usize>> =
        enumerate_independent_sets(&m, &budget)?.collect::<Result<_, _>>()?;
    let verdict = validate_axioms(&m, &budget)?;
    println!(
        "{:<10} n={} rank={} independent sets={} axioms: {}",
        m.kind(),
        m.ground_size(),
        rank(&m)?,
        sets.len(),
        verdict
            .witness()
            .map_or("hold".to_string(), |w| w.to_string())
    );
    Ok(())
}

fn main() -> ksubmod::Result<()> {
    describe(MatroidOracle::new(UniformMatroid::new(4, 2)))?;
    describe(MatroidOracle::new(PartitionMatroid::new(
        4,
        vec![(vec![0, 1], 1), (vec![2, 3], 2)],
    )?))?;
    describe(MatroidOracle::new(GraphicMatroid::new(
        3,
        vec![(0, 1), (1, 2), (2, 0), (1, 1)],
    )?))?;
    let cols = [
        vec![true, false],
        vec![false, true],
        vec![true, true],
        vec![false, false],
    ];
    describe(MatroidOracle::new(LinearMatroidGF2::new(2, &cols)?))?;
    describe(MatroidOracle::new(EvenSets(2)))?;

    // exchange in the triangle: A = {}, B = {ab, bc}, e = ca
    let tri = MatroidOracle::new(GraphicMatroid::new(3, vec![(0, 1), (1, 2), (2, 0)])?);
    let b = as_base(&tri, &[0, 1])?;
    let names = ["ab", "bc", "ca"];
    let out = exchange_witness(&tri, &[], &b, 2)?;
    println!("triangle exchange: swap {} for ca", names[out]);
    Ok(())
}
