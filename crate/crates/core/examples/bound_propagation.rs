//! What a single known value forces on the rest of a genus-6 sequence.

use chipfire::gonality::{propagate_bounds, BoundFact};

fn main() -> chipfire::Result<()> {
    for facts in [
        vec![],
        vec![BoundFact::exact(1, 3)],
        vec![BoundFact::exact(1, 3), BoundFact::exact(2, 5)],
        vec![BoundFact::at_least(2, 6)],
    ] {
        let table = propagate_bounds(6, &facts)?;
        let row: Vec<String> = (1..=table.horizon())
            .map(|r| match table.bounds(r) {
                (lo, hi) if lo == hi => lo.to_string(),
                (lo, hi) => format!("{lo}..{hi}"),
            })
            .collect();
        println!("{facts:?}\n    {}", row.join(" "));
    }
    match propagate_bounds(6, &[BoundFact::exact(1, 2), BoundFact::exact(2, 5)]) {
        Err(e) => println!("inconsistent facts rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
