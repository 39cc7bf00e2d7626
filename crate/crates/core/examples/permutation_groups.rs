//! Stabiliser chains, membership and subgroup intersection.
//!
//! `cargo run --release --example permutation_groups`

use hypertope::perm::perm;
use hypertope::{intersection_with, IntersectionStrategy, PermGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let g = PermGroup::new(n, &[perm(n, "(0 1 2 3 4 5 6 7)"), perm(n, "(0 1)")])?;
    println!("|G| = {}, base {:?}, transversals {:?}", g.order(), g.base(), g.transversal_sizes());

    let a = PermGroup::new(n, &[perm(n, "(0 1)"), perm(n, "(1 2)"), perm(n, "(2 3)(4 5)"), perm(n, "(3 4)")])?;
    let b = PermGroup::new(n, &[perm(n, "(2 3)"), perm(n, "(3 4)(6 7)"), perm(n, "(4 5)"), perm(n, "(5 6)")])?;
    println!("|A| = {}, |B| = {}", a.order(), b.order());
    for strategy in [IntersectionStrategy::Backtrack, IntersectionStrategy::Enumerate] {
        let c = intersection_with(&a, &b, strategy)?;
        println!("{strategy:?}: |A ∩ B| = {}, orbits {:?}", c.order(), c.orbits());
    }
    let x = perm(n, "(2 3)(4 5)");
    println!("{x} in A: {}, in B: {}", a.contains(&x), b.contains(&x));
    Ok(())
}
