//! Enumerates and certifies the rank `n-1` string C-groups of `S_n` that come
//! from trees, printing one JSON line per instance.
//!
//! `cargo run --release --example classify_rank_n_minus_1 -- 8`

use std::time::Instant;

use hypertope::classify::{enumerate_rank_n_minus_1, ClassifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    let start = Instant::now();
    let res = enumerate_rank_n_minus_1(n, &ClassifyOptions::default())?;
    print!("{}", res.to_jsonl());
    eprintln!(
        "n={n}: {} instances from {} trees, all verified: {}, {:.1?}",
        res.count(),
        res.candidates,
        res.all_verified(),
        start.elapsed()
    );
    Ok(())
}
