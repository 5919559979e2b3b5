//! Ranks of multiples of a point on K_4 and the Riemann-Roch residual.

use chipfire::divisor::canonical;
use chipfire::families::complete;
use chipfire::gonality::{rank, rr_residual};
use chipfire::Divisor;

fn main() -> chipfire::Result<()> {
    let g = complete(4)?;
    let k = canonical(&g);
    println!("canonical divisor {k}, rank {}", rank(&g, &k)?);
    for m in 0..=7 {
        let d = Divisor::point(4, 0, m);
        println!(
            "r({m}*v0) = {}, r(K - {m}*v0) = {}, residual {}",
            rank(&g, &d)?,
            rank(&g, &(&k - &d))?,
            rr_residual(&g, &d)?
        );
    }
    Ok(())
}
