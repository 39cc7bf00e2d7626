//! Coset geometry of a C-group: thinness, residual connectedness and
//! flag-transitivity, plus the incidence graph of a small case in DOT.
//!
//! `cargo run --release --example hypertope_geometry > s4.dot`

use hypertope::cgroup::CGroupCandidate;
use hypertope::classify::exceptional_n8;
use hypertope::geometry::{build_geometry, certify_regular_hypertope};
use hypertope::perm::perm;
use hypertope::PermGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = certify_regular_hypertope(&exceptional_n8())?;
    eprintln!("exceptional set on 8 points: {}", report.to_json());

    // the tetrahedron: S_4 with its string generators
    let gens = vec![perm(4, "(0 1)"), perm(4, "(1 2)"), perm(4, "(2 3)")];
    let cand = CGroupCandidate::new(gens.clone())?;
    let subs: Vec<PermGroup> = (0..gens.len()).map(|i| cand.parabolic(&[i])).collect();
    let geo = build_geometry(&cand.group(), &subs)?;
    eprintln!("tetrahedron: rank {}, {} chambers", geo.rank(), geo.chamber_count(1 << 20)?);
    print!("{}", geo.to_dot());
    Ok(())
}
