//! Representation graphs, fracture graphs and Coxeter diagrams, with a
//! canonical form that ignores how points and generators are numbered.
//!
//! `cargo run --release --example representation_graphs`

use hypertope::classify::{build_family_instance, Family};
use hypertope::repgraph::{build_rep_graph, canonical_form, coxeter_diagram, enumerate_trees, fracture_graph, UnlabeledTree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 4..=9 {
        println!("trees on {n} points: {}", enumerate_trees(n).len());
    }
    let path = UnlabeledTree::new(6, (0..5).map(|i| (i, i + 1)).collect());
    let b = build_family_instance(Family::B, &path, 0)?;
    let g = build_rep_graph(&b.gens)?;
    println!("family B graph: {} edges, cycle rank {}", g.edges().len(), g.cycle_rank());
    // renumber points by reversal and generators by rotation
    let points: Vec<usize> = (0..g.vertex_count()).rev().collect();
    let labels: Vec<usize> = (0..b.gens.len()).map(|l| (l + 1) % b.gens.len()).collect();
    let h = g.relabel_vertices(&points).relabel_labels(&labels);
    println!("same canonical form after renumbering: {}", canonical_form(&g, true) == canonical_form(&h, true));
    println!("{}", fracture_graph(&b.gens)?.to_dot());
    println!("{}", coxeter_diagram(&b.gens)?.to_dot());
    Ok(())
}
