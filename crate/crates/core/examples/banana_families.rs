//! Closed forms on banana-type families against exhaustive search.

use chipfire::families::Family;
use chipfire::gonality::{expected_family_gonality, gonality, SearchOptions};

fn main() -> chipfire::Result<()> {
    let families = [
        Family::Banana(4),
        Family::GenBanana(3, 5),
        Family::GenBanana(5, 3),
        Family::GenBanana(4, 4),
        Family::DescBanana(3, 5),
        Family::DescBanana(4, 7),
        Family::CompleteBipartite(3, 4),
    ];
    let opts = SearchOptions { reduced_only: true, jobs: 1 };
    for f in &families {
        let g = f.build()?;
        for r in 1..=2 {
            let found = gonality(&g, r, &opts)?.value;
            let closed = expected_family_gonality(f, r)?;
            println!("{f:<10} gon_{r}: search {found:>2}, closed form {closed:>2}");
        }
    }
    Ok(())
}
