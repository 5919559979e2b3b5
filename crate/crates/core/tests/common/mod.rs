#![allow(dead_code)]

use chipfire::families::*;
use chipfire::{Divisor, Multigraph};
use proptest::prelude::*;

pub fn chain_of(m: &[u32]) -> Multigraph {
    chain(&ChainSpec::new(m.to_vec()).unwrap()).unwrap()
}

/// Small graphs that exercise every generator and a few irregular shapes.
pub fn fixtures() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("P_4", path(4).unwrap()),
        ("C_4", cycle(4).unwrap()),
        ("C_5", cycle(5).unwrap()),
        ("B_3", banana(3).unwrap()),
        ("B_4", banana(4).unwrap()),
        ("K_4", complete(4).unwrap()),
        ("K_2,3", complete_bipartite(2, 3).unwrap()),
        ("K_3,3", complete_bipartite(3, 3).unwrap()),
        ("chain 3,2,2", chain_of(&[3, 2, 2])),
        ("chain 2,3,2", chain_of(&[2, 3, 2])),
        ("B*_3,4", desc_banana(3, 4).unwrap()),
        ("B_3,3", gen_banana(3, 3).unwrap()),
        ("lopsided", Multigraph::from_edges(4, &[(0, 1, 3), (1, 2, 1), (2, 3, 2), (3, 0, 1), (0, 2, 1)]).unwrap()),
    ]
}

/// A connected multigraph on `2..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n, 0.2f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| random_connected(n, p, seed).unwrap())
}

/// A connected multigraph with a divisor of matching length.
pub fn arb_graph_divisor(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = (Multigraph, Divisor)> {
    arb_graph(max_n).prop_flat_map(move |g| {
        let n = g.num_vertices();
        (Just(g), proptest::collection::vec(lo..=hi, n).prop_map(Divisor::new))
    })
}

/// Exhaustive search for a firing script carrying `d` to an effective divisor.
///
/// Scripts fix vertex 0 (constant shifts change nothing) and keep every
/// other entry within `-bound..=bound`.
pub fn brute_force_effective(g: &Multigraph, d: &Divisor, bound: i64) -> Option<Divisor> {
    let n = g.num_vertices();
    let width = (2 * bound + 1) as u64;
    for mut code in 0..width.pow(n as u32 - 1) {
        let mut f = vec![0i64; n];
        for x in f.iter_mut().skip(1) {
            *x = (code % width) as i64 - bound;
            code /= width;
        }
        let e = chipfire::divisor::apply_script(g, d, &chipfire::FiringScript::new(f)).unwrap();
        if e.is_effective() {
            return Some(e);
        }
    }
    None
}
