//! Shape conditions on representation graphs, evaluated for the family
//! graphs on 9 points and for two graphs that break them.
//!
//! `cargo run --release --example structural_screens`

use hypertope::classify::{family_instances, structural_screen, Family};
use hypertope::perm::parse_generators;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instances = family_instances(9)?;
    for inst in Family::ALL.iter().filter_map(|&f| instances.iter().find(|i| i.family == f)) {
        let d = structural_screen(&inst.gens)?;
        println!("family {} tail {:?}: passes {}", inst.family, inst.tail.edges(), d.passes());
    }
    let broken = [
        ("0-edges at distance two", "(0 1)(4 5)\n(1 2)\n(2 3)\n(3 4)\n(5 6)\n(6 7)\n(7 8)\n"),
        ("double edge", "(0 1)(7 8)\n(0 1)(2 3)\n(1 2)\n(3 4)\n(4 5)\n(5 6)\n(6 7)\n"),
    ];
    for (name, text) in broken {
        let d = structural_screen(&parse_generators(text, Some(9))?)?;
        println!("{name}: {}", serde_json::to_string(&d)?);
    }
    Ok(())
}
