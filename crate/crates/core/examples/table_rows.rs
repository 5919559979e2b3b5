//! Print the tabulated sequences for genus at most 6.

use chipfire::gonality::{brill_noether_bound, expected_sequence};

fn main() {
    for genus in 0..=6 {
        // Below genus 2 the first gonality is forced, so one query suffices.
        let first = if genus <= 1 { brill_noether_bound(genus) } else { 2 };
        for gon1 in first..=brill_noether_bound(genus) {
            let gon2s: Vec<Option<usize>> = if genus == 6 { (4..=8).map(Some).collect() } else { vec![None] };
            for gon2 in gon2s {
                if let Ok(row) = expected_sequence(genus, gon1, gon2, genus + 2) {
                    let mark = if row.conditional { "  (conditional)" } else { "" };
                    println!("g = {genus}: {row}{mark}");
                }
            }
        }
    }
}
