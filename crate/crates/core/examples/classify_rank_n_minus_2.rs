//! Builds the three rank `n-2` families for `S_n` and verifies each instance.
//!
//! `cargo run --release --example classify_rank_n_minus_2 -- 9`

use std::time::Instant;

use hypertope::classify::{enumerate_rank_n_minus_2, ClassifyOptions, Family};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(9);
    let start = Instant::now();
    let res = enumerate_rank_n_minus_2(n, &ClassifyOptions::default())?;
    for inst in &res.instances {
        let fam = inst.family.map(|f| f.to_string()).unwrap_or_default();
        println!("{fam} tail={:?} attach={:?} verified={}", inst.tree, inst.attach, inst.report.passed());
    }
    for f in Family::ALL {
        eprintln!("family {f}: {}", res.count_family(f));
    }
    eprintln!("n={n}: {} instances, all verified: {}, {:.1?}", res.count(), res.all_verified(), start.elapsed());
    Ok(())
}
