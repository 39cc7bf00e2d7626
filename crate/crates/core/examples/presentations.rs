//! Builds the family presentations for `S_n` and certifies them by coset
//! enumeration against the permutation model. The listed relators are
//! topped up with model-checked supplementary relators before enumeration.
//!
//! `cargo run --release --example presentations -- 9`

use std::time::Instant;

use hypertope::classify::{family_instances, Family};
use hypertope::presentations::{certify_presentation, relators_rank_n_minus_2, DEFAULT_MAX_COSETS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(9);
    let instances = family_instances(n)?;
    for family in Family::ALL {
        let Some(inst) = instances.iter().find(|i| i.family == family) else { continue };
        let fp = relators_rank_n_minus_2(inst)?;
        for r in &fp.rejected {
            println!("family {family}: listed relator [{r}] fails in the model, left out");
        }
        let start = Instant::now();
        for r in &fp.supplement {
            println!("family {family}: supplementary relator [{r}]");
        }
        let completed = fp.completed();
        let cert = certify_presentation(&inst.gens, &completed, DEFAULT_MAX_COSETS)?;
        println!(
            "family {family} tail {:?}: {} relators, presented order {:?}, model order {}, certified {} ({:.1?})",
            inst.tail.edges(),
            completed.relators().len(),
            cert.presented_order,
            cert.model_order,
            cert.certified(),
            start.elapsed()
        );
    }
    Ok(())
}
