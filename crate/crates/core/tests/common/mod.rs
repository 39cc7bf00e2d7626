//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use hypertope::perm::perm;
use hypertope::Permutation;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn gens(n: usize, cycles: &[&str]) -> Vec<Permutation> {
    cycles.iter().map(|c| perm(n, c)).collect()
}

/// Local configurations ruled out by the shape conditions, each a generating
/// tuple that fails the intersection property on its own.
pub fn negative_configurations() -> Vec<(&'static str, Vec<Permutation>)> {
    vec![
        // two dashed edges with no common point, closed up by a k-edge
        ("disjoint connecting edges", gens(6, &["(0 1)(2 3)", "(1 2)", "(3 4)", "(4 5)", "(0 5)"])),
        // a -i- b -l- . and . -j- c -i- d
        ("i-edges far apart", gens(7, &["(0 1)(5 6)", "(1 2)", "(4 5)"])),
        ("i-edges far apart, double end", gens(7, &["(0 1)(5 6)", "(1 2)(5 6)", "(4 5)"])),
        ("i-edges at distance two", gens(5, &["(0 1)(3 4)", "(1 2)", "(2 3)"])),
        ("distance two, double end, m at a", gens(6, &["(0 1)(3 4)", "(1 2)(3 4)", "(2 3)", "(0 5)"])),
        ("distance two, double end, m at b", gens(6, &["(0 1)(3 4)", "(1 2)(3 4)", "(2 3)", "(1 5)"])),
        ("distance two, double end, m at e", gens(6, &["(0 1)(3 4)", "(1 2)(3 4)", "(2 3)", "(2 5)"])),
        ("distance two, double end, m at c", gens(6, &["(0 1)(3 4)", "(1 2)(3 4)", "(2 3)", "(3 5)"])),
        // double edge c =i,j= d with single i- and j-edges elsewhere
        ("double edge on a path", gens(6, &["(0 1)(2 3)", "(2 3)(4 5)", "(1 2)", "(3 4)"])),
        ("double edge at a fork", gens(6, &["(0 1)(2 3)", "(0 1)(4 5)", "(1 2)", "(1 4)"])),
        // tree head a -1- b -0- c -1- d with two more edges k, l at it
        ("head, k at a, l at d", gens(6, &["(1 2)", "(0 1)(2 3)", "(0 4)", "(3 5)"])),
        ("head, k at c, l at d", gens(6, &["(1 2)", "(0 1)(2 3)", "(2 4)", "(3 5)"])),
        ("head, k at c, l at b", gens(6, &["(1 2)", "(0 1)(2 3)", "(2 4)", "(1 5)"])),
        ("head, k at b, l at d", gens(6, &["(1 2)", "(0 1)(2 3)", "(1 4)", "(3 5)"])),
        ("head, k and l at d", gens(6, &["(1 2)", "(0 1)(2 3)", "(3 4)", "(3 5)"])),
        ("head, k and l at b", gens(6, &["(1 2)", "(0 1)(2 3)", "(1 4)", "(1 5)"])),
        // alternating square a b y x with two pendant edges
        ("square, pendants at opposite corners", gens(6, &["(0 1)(2 3)", "(0 2)(1 3)", "(1 4)", "(3 5)"])),
        ("square, pendants at adjacent corners", gens(6, &["(0 1)(2 3)", "(0 2)(1 3)", "(1 4)", "(2 5)"])),
        ("square, two pendants at one corner", gens(6, &["(0 1)(2 3)", "(0 2)(1 3)", "(1 4)", "(1 5)"])),
    ]
}

/// A random involution of degree `n` moving `2k` points.
pub fn random_involution(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Permutation {
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let mut images: Vec<usize> = (0..n).collect();
    for c in pts[..2 * k].chunks(2) {
        images.swap(c[0], c[1]);
    }
    Permutation::from_images(&images).expect("a permutation")
}

/// `count` random tuples of distinct involutions with rank in `2..=max_rank`
/// and degree in `4..=max_degree`.
pub fn random_candidates(seed: u64, count: usize, max_rank: usize, max_degree: usize) -> Vec<Vec<Permutation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(4..=max_degree);
        let r = rng.gen_range(2..=max_rank);
        let mut g: Vec<Permutation> = Vec::new();
        while g.len() < r {
            let k = rng.gen_range(1..=(n / 2).min(3));
            let x = random_involution(&mut rng, n, k);
            if !g.contains(&x) {
                g.push(x);
            }
        }
        out.push(g);
    }
    out
}
