//! The intersection property checked over all subset pairs and recursively
//! over parabolic subgroups, with a witness when it fails.
//!
//! `cargo run --release --example cgroup_check`

use hypertope::cgroup::CGroupCandidate;
use hypertope::classify::exceptional_n8;
use hypertope::perm::parse_generators;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("exceptional set on 8 points", exceptional_n8()),
        // two 0-edges joined by a path of length three
        ("0-edges far apart", parse_generators("(0 1)(5 6)\n(1 2)\n(4 5)\n", Some(7))?),
    ];
    for (name, gens) in cases {
        let cand = CGroupCandidate::new(gens)?;
        let full = cand.is_c_group_full()?;
        let rec = cand.is_c_group_recursive();
        println!("{name}: |G| = {}, full {}, recursive {}", cand.group().order(), full.is_c_group, rec.is_c_group);
        if let Some(w) = full.witness {
            println!("  {} lies in <J> ∩ <K> for J = {:?}, K = {:?}", w.element, w.j, w.k);
        }
    }
    Ok(())
}
