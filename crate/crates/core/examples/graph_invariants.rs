//! Structural quantities of a few family members, plus the text format.

use chipfire::families::{chain, complete, desc_banana, ChainSpec};
use chipfire::Multigraph;

fn main() -> chipfire::Result<()> {
    let graphs = [
        ("K_4", complete(4)?),
        ("B*_(3,4)", desc_banana(3, 4)?),
        ("chain 3,2,2", chain(&ChainSpec::new(vec![3, 2, 2])?)?),
    ];
    for (name, g) in &graphs {
        println!(
            "{name}: |V| = {}, |E| = {}, genus = {}, diameter = {}, edge connectivity = {}, spanning trees = {}",
            g.num_vertices(),
            g.num_edges(),
            g.genus(),
            g.diameter()?,
            g.edge_connectivity()?,
            g.spanning_tree_count(),
        );
    }

    let text = graphs[1].1.to_text();
    print!("\n{text}");
    assert_eq!(Multigraph::parse(&text)?, graphs[1].1);
    Ok(())
}
