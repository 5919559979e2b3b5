//! Gonality sequences of the trigonal genus-6 pair and their witnesses.

use chipfire::families::{chain, ChainSpec};
use chipfire::gonality::{check_trigonal_conjecture, gonality, gonality_sequence, SearchOptions};

fn main() -> chipfire::Result<()> {
    for mults in [vec![3, 2, 2, 2, 2], vec![3, 3, 2, 2]] {
        let g = chain(&ChainSpec::new(mults.clone())?)?;
        let seq = gonality_sequence(&g, 8)?;
        println!("chain {mults:?}: genus {}, sequence {seq}", g.genus());
        for r in 1..=2 {
            let w = gonality(&g, r, &SearchOptions { reduced_only: false, jobs: 4 })?;
            println!("    gon_{r} = {} via {}", w.value, w.witness);
        }
        let report = check_trigonal_conjecture(&g)?;
        for row in report.mismatches() {
            println!("    k = {}: predicted {}, computed {}", row.k, row.predicted, row.computed);
        }
    }
    Ok(())
}
