//! Exhaustive axiom checks on a few tables, including ones that fail.

use ksubmod::functions::{
    is_k_submodular, is_monotone, is_orthant_submodular, is_pairwise_monotone, FunctionOracle,
    TableFunction,
};
use ksubmod::{Budget, Value};

fn report(name: &str, t: TableFunction) -> ksubmod::Result<()> {
    let f = FunctionOracle::new(t);
    let budget = Budget::default();
    println!("{name}");
    for (check, verdict) in [
        ("monotone", is_monotone(&f, &budget)?),
        ("k-submodular", is_k_submodular(&f, &budget)?),
        ("orthant submodular", is_orthant_submodular(&f, &budget)?),
        ("pairwise monotone", is_pairwise_monotone(&f, &budget)?),
    ] {
        match verdict.witness() {
            None => println!("  {check:<20} holds"),
            Some(w) => println!("  {check:<20} {w}"),
        }
    }
    println!("  evaluations: {}", f.calls());
    Ok(())
}

fn main() -> ksubmod::Result<()> {
    // number of assigned elements: modular, so monotone and 2-submodular
    report(
        "support size",
        TableFunction::tabulate(2, 2, |x| Value::from(x.support_size() as i64))?,
    )?;
    // rewards using both labels together: supermodular in the pair
    report(
        "bonus for mixing labels",
        TableFunction::tabulate(2, 2, |x| {
            let s = x.support_size() as i64;
            let mixed = x.label(0) != 0 && x.label(1) != 0 && x.label(0) != x.label(1);
            Value::from(s + if mixed { 3 } else { 0 })
        })?,
    )?;
    // penalizes assigning anything to the second element
    report(
        "decreasing in e2",
        TableFunction::tabulate(2, 2, |x| {
            Value::from(x.label(0).min(1) as i64 * 2 - x.label(1).min(1) as i64)
        })?,
    )?;
    Ok(())
}
