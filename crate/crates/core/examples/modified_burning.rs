//! Decide winnability by burning from the debt, and compare with full reduction.

use chipfire::burning::{modified_dhar_traced, reduce, TraceOptions};
use chipfire::families::cycle;
use chipfire::Divisor;

fn main() -> chipfire::Result<()> {
    let g = cycle(5)?;
    for chips in ["-1 2 0 0 0", "-2 1 0 1 0", "-1 0 0 0 0", "3 -2 -1 0 1"] {
        let d: Divisor = chips.parse()?;
        let out = modified_dhar_traced(&g, &d, TraceOptions::full())?;
        let (reduced, _) = reduce(&g, 0, &d)?;
        let verdict = match out.divisor() {
            Some(e) => e.to_string(),
            None => "NONE".to_string(),
        };
        println!(
            "{chips:>12} -> {verdict:<10} passes {}, max firings {}, reduced form {reduced}",
            out.trace.passes,
            out.trace.max_firings()
        );
        for s in &out.trace.states {
            println!("{:>16}{s}", "");
        }
    }
    Ok(())
}
