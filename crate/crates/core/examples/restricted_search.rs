//! Searches rank `n-2` generating tuples of transpositions and double
//! transpositions with a connected, at most unicyclic, representation graph,
//! and reports any C-group that is not one of the three families.
//!
//! `cargo run --release --example restricted_search -- 9`

use std::time::Instant;

use hypertope::classify::restricted_search;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(9);
    let start = Instant::now();
    let r = restricted_search(n)?;
    println!("shapes:      {}", r.shapes);
    println!("candidates:  {}", r.candidates);
    println!("generate S{n}: {}", r.symmetric);
    println!("C-groups:    {}", r.c_groups);
    for gens in &r.outside_families {
        let text: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        println!("outside the families: {}", text.join(", "));
    }
    eprintln!("{:.1?}", start.elapsed());
    Ok(())
}
