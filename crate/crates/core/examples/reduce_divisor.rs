//! Reduce a divisor on K_4 with respect to each vertex.

use chipfire::burning::{reduce_traced, TraceOptions};
use chipfire::families::complete;
use chipfire::Divisor;

fn main() -> chipfire::Result<()> {
    let g = complete(4)?;
    let d: Divisor = "-3 1 4 0".parse()?;
    for q in 0..g.num_vertices() {
        let run = reduce_traced(&g, q, &d, TraceOptions { log_beta: true, record_states: false })?;
        println!("q = {q}: {}  (passes {}, script {:?})", run.divisor, run.trace.passes, run.script.counts());
        for rec in &run.trace.beta_log {
            println!("    pass {}: beta {:?} -> {:?}", rec.pass, rec.before, rec.after);
        }
    }
    Ok(())
}
