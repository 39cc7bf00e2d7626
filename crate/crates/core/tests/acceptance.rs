//! Acceptance checks. Each criterion prints one PASS or FAIL line; the
//! process exits non-zero if any fails. All comparisons are exact.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hypertope::cgroup::CGroupCandidate;
use hypertope::classify::{
    enumerate_rank_n_minus_1, enumerate_rank_n_minus_2, exceptional_n8, family_instances, restricted_candidates,
    restricted_search, structural_screen, ClassifyOptions, Family,
};
use hypertope::geometry::{certify_regular_hypertope, Rank3Oracle, SubgroupLattice};
use hypertope::presentations::{
    check_relations, relators_rank_n_minus_1, relators_rank_n_minus_2, todd_coxeter, DEFAULT_MAX_COSETS,
};
use hypertope::repgraph::{build_rep_graph, canonical_form, enumerate_trees};
use hypertope::{intersection_with, IntersectionStrategy, PermGroup, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

// ---- independent tree oracle: Prüfer decoding and centre-rooted codes ----

fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn rooted(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn oracle_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // strip leaves down to the centre
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| rooted(&adj, c, usize::MAX)).min().expect("a centre")
}

fn oracle_tree_count(n: usize) -> usize {
    let mut seen = BTreeSet::new();
    let mut seq = vec![0; n - 2];
    loop {
        seen.insert(oracle_code(n, &prufer_decode(&seq, n)));
        let Some(k) = (0..n - 2).rev().find(|&k| seq[k] + 1 < n) else { break };
        seq[k] += 1;
        for x in &mut seq[k + 1..] {
            *x = 0;
        }
    }
    seen.len()
}

// ---- criteria ----

fn rank_n_minus_1() -> Outcome {
    let opts = ClassifyOptions::default();
    let mut parts = Vec::new();
    for (n, expected) in [(7, 11), (8, 23), (9, 47)] {
        let oracle = oracle_tree_count(n);
        ensure(oracle == expected, || format!("tree oracle at n={n}: {oracle}"))?;
        let res = enumerate_rank_n_minus_1(n, &opts).map_err(|e| e.to_string())?;
        ensure(res.count() == oracle, || format!("n={n}: {} instances, oracle {oracle}", res.count()))?;
        for inst in &res.instances {
            let r = &inst.report;
            let ok = r.order == factorial(n)
                && r.c_group
                && r.c_group_full == Some(true)
                && r.line_graph == Some(true)
                && r.hypertope.as_ref().is_some_and(|h| h.is_regular_hypertope());
            ensure(ok, || format!("n={n} tree {:?}: {r:?}", inst.tree))?;
        }
        parts.push(format!("n={n}: {}", res.count()));
    }
    Ok(parts.join(", "))
}

fn rank_n_minus_2() -> Outcome {
    let mut parts = Vec::new();
    for n in [9, 10] {
        let res = enumerate_rank_n_minus_2(n, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
        let counts: Vec<usize> = Family::ALL.iter().map(|&f| res.count_family(f)).collect();
        ensure(res.count() % 3 == 0, || format!("n={n}: total {} not divisible by 3", res.count()))?;
        ensure(counts.iter().all(|&c| c == counts[0]), || format!("n={n}: family counts {counts:?}"))?;
        for inst in &res.instances {
            let r = &inst.report;
            let ok = r.order == factorial(n)
                && r.c_group
                && r.c_group_full != Some(false)
                && r.hypertope.as_ref().is_some_and(|h| h.is_regular_hypertope());
            ensure(ok, || format!("n={n} {:?} {:?}: {r:?}", inst.family, inst.tree))?;
        }
        parts.push(format!("n={n}: {} ({counts:?})", res.count()));
    }
    Ok(parts.join(", "))
}

fn exceptional() -> Outcome {
    let gens = exceptional_n8();
    let order = PermGroup::new(8, &gens).map_err(|e| e.to_string())?.order();
    ensure(order == 40_320, || format!("order {order}"))?;
    let cand = CGroupCandidate::new(gens.clone()).map_err(|e| e.to_string())?;
    let full = cand.is_c_group_full().map_err(|e| e.to_string())?;
    ensure(full.is_c_group, || format!("intersection property fails: {:?}", full.witness))?;
    let transitive: Vec<usize> = (0..gens.len()).filter(|&i| cand.parabolic(&[i]).is_transitive()).collect();
    ensure(!transitive.is_empty(), || "no transitive maximal parabolic".into())?;
    let h = certify_regular_hypertope(&gens).map_err(|e| e.to_string())?;
    ensure(h.is_regular_hypertope(), || format!("{h:?}"))?;
    let canon = canonical_form(&build_rep_graph(&gens).map_err(|e| e.to_string())?, true);
    let fams = family_instances(8).map_err(|e| e.to_string())?;
    ensure(fams.iter().all(|f| canonical_form(&f.graph, true) != canon), || "matches a family graph".into())?;
    Ok(format!("order 40320, transitive Γ_i for i in {transitive:?}, {} family graphs differ", fams.len()))
}

fn parabolics() -> Outcome {
    // D_8 × S_5, S_6, S_7 and 2^2 × S_5
    let checks: [(Family, &[usize], u128); 4] = [
        (Family::A, &[2], 8 * factorial(5)),
        (Family::A, &[0, 1], factorial(6)),
        (Family::B, &[1], factorial(7)),
        (Family::C, &[2], 4 * factorial(5)),
    ];
    let insts = family_instances(9).map_err(|e| e.to_string())?;
    let mut tested = 0;
    for (family, omit, expected) in checks {
        for inst in insts.iter().filter(|i| i.family == family) {
            let cand = CGroupCandidate::new(inst.gens.clone()).map_err(|e| e.to_string())?;
            let order = cand.parabolic(omit).order();
            ensure(order == expected, || format!("{family} {:?}: Γ omitting {omit:?} has order {order}", inst.tail.edges()))?;
            tested += 1;
        }
    }
    Ok(format!("960, 720, 5040, 480 on {tested} parabolics"))
}

fn presentations() -> Outcome {
    let mut slowest = 0f64;
    for t in enumerate_trees(7) {
        let t = t.labeled();
        let p = relators_rank_n_minus_1(&t);
        ensure(check_relations(&t.transpositions(), &p).map_err(|e| e.to_string())?, || "tree relator fails".into())?;
        let index = todd_coxeter(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?.index();
        ensure(index == 5040, || format!("tree {:?}: index {index}", t.graph().edges()))?;
    }
    let mut supplemented = 0;
    for inst in family_instances(9).map_err(|e| e.to_string())? {
        let fp = relators_rank_n_minus_2(&inst).map_err(|e| e.to_string())?;
        ensure(fp.rejected.is_empty(), || format!("{} relators fail in the model: {:?}", inst.family, fp.rejected))?;
        let p = fp.completed();
        ensure(check_relations(&inst.gens, &p).map_err(|e| e.to_string())?, || "completed set fails".into())?;
        supplemented += usize::from(!fp.supplement.is_empty());
        let start = Instant::now();
        let index = todd_coxeter(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?.index();
        let secs = start.elapsed().as_secs_f64();
        slowest = slowest.max(secs);
        ensure(index == 362_880, || format!("{} {:?}: index {index}", inst.family, inst.tail.edges()))?;
        ensure(secs < 120.0, || format!("{} {:?}: {secs:.1}s", inst.family, inst.tail.edges()))?;
    }
    Ok(format!(
        "11 trees at 5040, 27 family jobs at 362880 ({supplemented} with model-checked supplement), slowest {slowest:.1}s"
    ))
}

fn corpus() -> Vec<Vec<Permutation>> {
    let mut out: Vec<Vec<Permutation>> = common::negative_configurations().into_iter().map(|(_, g)| g).collect();
    for n in 4..=6 {
        out.extend(enumerate_trees(n).iter().map(|t| t.labeled().transpositions()));
    }
    let rest = 200 - out.len();
    out.extend(common::random_candidates(0x5eed, rest, 5, 9));
    out
}

fn full_vs_recursive() -> Outcome {
    let corpus = corpus();
    ensure(corpus.len() == 200, || format!("corpus has {}", corpus.len()))?;
    let mut c_groups = 0;
    for (k, gens) in corpus.iter().enumerate() {
        let cand = CGroupCandidate::new(gens.clone()).map_err(|e| e.to_string())?;
        let full = cand.is_c_group_full().map_err(|e| e.to_string())?;
        let rec = cand.is_c_group_recursive();
        ensure(full.is_c_group == rec.is_c_group, || format!("candidate {k}: full {} recursive {}", full.is_c_group, rec.is_c_group))?;
        for w in full.witness.iter().chain(rec.witness.iter()) {
            ensure(cand.witness_is_valid(w), || format!("candidate {k}: bad witness {w:?}"))?;
        }
        c_groups += usize::from(full.is_c_group);
    }
    let negatives = common::negative_configurations();
    for (name, gens) in &negatives {
        let full = CGroupCandidate::new(gens.clone()).and_then(|c| c.is_c_group_full()).map_err(|e| e.to_string())?;
        ensure(!full.is_c_group, || format!("negative configuration {name:?} passes"))?;
    }
    Ok(format!("200 candidates ({c_groups} C-groups, {} negative configurations)", negatives.len()))
}

fn lattice(gens: &[Permutation], rank3: Rank3Oracle) -> Result<SubgroupLattice, String> {
    let cand = CGroupCandidate::new(gens.to_vec()).map_err(|e| e.to_string())?;
    let subs: Vec<PermGroup> = (0..gens.len()).map(|i| cand.parabolic(&[i])).collect();
    let mut l = SubgroupLattice::new(&cand.group(), &subs).map_err(|e| e.to_string())?;
    l.rank3 = rank3;
    Ok(l)
}

fn flag_transitivity() -> Outcome {
    let mut systems: Vec<Vec<Permutation>> = enumerate_trees(9).iter().map(|t| t.labeled().transpositions()).collect();
    systems.extend(family_instances(9).map_err(|e| e.to_string())?.into_iter().map(|f| f.gens));
    let (mut rank3, mut rank4) = (0, 0);
    for gens in &systems {
        let r = gens.len();
        let all = (1u64 << r) - 1;
        let direct = lattice(gens, Rank3Oracle::Direct)?;
        let bh = lattice(gens, Rank3Oracle::Bh91)?;
        for t in (0..=all).filter(|t| t.count_ones() == 3) {
            let types: Vec<usize> = (0..r).filter(|&k| t >> k & 1 == 1).collect();
            // the residue of the base flag of cotype `types`, and the truncation
            for s in [all & !t, 0] {
                let d = direct.direct(s, &types).map_err(|e| e.to_string())?;
                let b = bh.bh91_all(s, &types).map_err(|e| e.to_string())?;
                let i = bh.incremental(s, t, &types).map_err(|e| e.to_string())?;
                ensure(d == b && b == i, || format!("{gens:?} types {types:?} s={s:#b}: {d} {b} {i}"))?;
                rank3 += 1;
            }
        }
        for t in (0..=all).filter(|t| t.count_ones() == 4) {
            let types: Vec<usize> = (0..r).filter(|&k| t >> k & 1 == 1).collect();
            let s = all & !t;
            let d = direct.direct(s, &types).map_err(|e| e.to_string())?;
            let i = bh.incremental(s, t, &types).map_err(|e| e.to_string())?;
            ensure(d == i, || format!("{gens:?} rank-4 types {types:?}: direct {d} incremental {i}"))?;
            rank4 += 1;
        }
    }
    Ok(format!("{} systems, {rank3} rank-3 and {rank4} rank-4 subsystems agree", systems.len()))
}

fn intersections() -> Outcome {
    let (mut groups, mut pairs, mut proper) = (0, 0, 0);
    for gens in corpus() {
        let cand = CGroupCandidate::new(gens.clone()).map_err(|e| e.to_string())?;
        if cand.group().order() > 10_000 {
            continue;
        }
        groups += 1;
        let r = gens.len();
        let masks: Vec<u64> = (1u64..1 << r).filter(|m| m.count_ones() as usize + 2 >= r).collect();
        for (x, &j) in masks.iter().enumerate() {
            for &k in &masks[x + 1..] {
                let (a, b) = (cand.subgroup(j), cand.subgroup(k));
                let bt = intersection_with(&a, &b, IntersectionStrategy::Backtrack).map_err(|e| e.to_string())?;
                let en = intersection_with(&a, &b, IntersectionStrategy::Enumerate).map_err(|e| e.to_string())?;
                let same = bt.order() == en.order() && bt.contains_group(&en) && en.contains_group(&bt);
                ensure(same, || format!("{gens:?} masks {j:#b} {k:#b}: {} vs {}", bt.order(), en.order()))?;
                pairs += 1;
                proper += usize::from(!a.contains_group(&b) && !b.contains_group(&a));
            }
        }
    }
    Ok(format!("{groups} groups, {pairs} subgroup pairs ({proper} not nested)"))
}

/// Random rank-7 tuples on 9 points of transpositions and double
/// transpositions generating `S_9`.
fn random_rank7(seed: u64, count: usize) -> Vec<Vec<Permutation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mut g: Vec<Permutation> = Vec::new();
        while g.len() < 7 {
            let k = if rng.gen_bool(0.7) { 1 } else { 2 };
            let x = common::random_involution(&mut rng, 9, k);
            if !g.contains(&x) {
                g.push(x);
            }
        }
        if PermGroup::new(9, &g).map(|h| h.order()) == Ok(factorial(9)) {
            out.push(g);
        }
    }
    out
}

fn screens() -> Outcome {
    let (_, restricted) = restricted_candidates(9).map_err(|e| e.to_string())?;
    // the screens assume every maximal parabolic is intransitive
    let mut corpus: Vec<Vec<Permutation>> =
        restricted.into_iter().map(|(_, g)| g).filter(|g| structural_screen(g).is_ok()).collect();
    corpus.extend(random_rank7(0x5c7ee, 150));
    corpus.push(common::gens(9, &["(0 1)(4 5)", "(1 2)", "(2 3)", "(3 4)", "(5 6)", "(6 7)", "(7 8)"]));
    corpus.push(common::gens(9, &["(0 1)(7 8)", "(0 1)(2 3)", "(1 2)", "(3 4)", "(4 5)", "(5 6)", "(6 7)"]));
    let (mut screened, mut failing) = (0, 0);
    for gens in &corpus {
        let Ok(d) = structural_screen(gens) else { continue };
        screened += 1;
        if d.passes() {
            continue;
        }
        failing += 1;
        let full = CGroupCandidate::new(gens.clone()).and_then(|c| c.is_c_group_full()).map_err(|e| e.to_string())?;
        ensure(!full.is_c_group, || format!("{gens:?} fails {d:?} but is a C-group"))?;
    }
    Ok(format!("{} candidates, {screened} with a fracture graph, {failing} failing a screen, all fail the check", corpus.len()))
}

fn restricted_converse() -> Outcome {
    let r = restricted_search(9).map_err(|e| e.to_string())?;
    let families = family_instances(9).map_err(|e| e.to_string())?.len();
    ensure(r.outside_families.is_empty(), || format!("C-groups outside the families: {:?}", r.outside_families))?;
    ensure(r.c_groups == families, || format!("{} C-groups, {families} family instances", r.c_groups))?;
    Ok(format!("{} candidates, {} C-groups, none outside the families", r.candidates, r.c_groups))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 rank n-1 classification", rank_n_minus_1),
        ("2 rank n-2 families", rank_n_minus_2),
        ("3 exceptional n=8", exceptional),
        ("4 parabolic orders", parabolics),
        ("5 presentations", presentations),
        ("6a full vs recursive check", full_vs_recursive),
        ("6b flag-transitivity routes", flag_transitivity),
        ("6c intersection routes", intersections),
        ("7 screens imply failure", screens),
        ("restricted converse at n=9", restricted_converse),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
