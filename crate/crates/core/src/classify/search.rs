//! Bounded search for rank `n-2` C-groups of `S_n` outside the families.
//!
//! The candidates are all tuples of `n-2` transpositions and
//! double transpositions whose representation graph is connected with at
//! most one cycle (so one or two double transpositions), where the two edges
//! of every double transposition are joined by an edge. Each is taken once
//! up to renaming points and generators.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::family_instances;
use crate::cgroup::CGroupCandidate;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::repgraph::{canonical_form, enumerate_trees, CanonicalForm, Edge, RepGraph};

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    /// Underlying multigraphs (trees and unicyclic graphs) considered.
    pub shapes: usize,
    /// Labelled candidates, up to isomorphism.
    pub candidates: usize,
    /// Candidates generating `S_n`.
    pub symmetric: usize,
    /// Candidates that are C-groups for `S_n`.
    pub c_groups: usize,
    /// C-groups whose graph is not a family instance.
    pub outside_families: Vec<Vec<Permutation>>,
}

/// Shape of a multigraph, ignoring labels.
fn shape_form(n: usize, edges: &[(usize, usize)]) -> CanonicalForm {
    let g = RepGraph::new(n, edges.iter().enumerate().map(|(k, &(a, b))| Edge::new(a, b, k))).expect("distinct labels");
    canonical_form(&g, true)
}

/// Trees on `n` points, and every way of adding one edge (possibly parallel).
fn shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out: BTreeMap<CanonicalForm, Vec<(usize, usize)>> = BTreeMap::new();
    for t in enumerate_trees(n) {
        let edges = t.edges().to_vec();
        out.entry(shape_form(n, &edges)).or_insert_with(|| edges.clone());
        for a in 0..n {
            for b in a + 1..n {
                let mut e = edges.clone();
                e.push((a, b));
                out.entry(shape_form(n, &e)).or_insert(e);
            }
        }
    }
    out.into_values().collect()
}

fn disjoint(e: (usize, usize), f: (usize, usize)) -> bool {
    e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1
}

/// Index pairs of disjoint edges joined by a third edge.
fn joined_pairs(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let meets = |e: (usize, usize), v: usize| e.0 == v || e.1 == v;
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            if !disjoint(e, f) {
                continue;
            }
            let joined = edges
                .iter()
                .enumerate()
                .any(|(k, &h)| k != i && k != j && (meets(h, e.0) || meets(h, e.1)) && (meets(h, f.0) || meets(h, f.1)));
            if joined {
                out.push((i, j));
            }
        }
    }
    out
}

/// Labelings with `doubled` labels on two edges each and one label per
/// remaining edge.
fn labelings(n: usize, edges: &[(usize, usize)], doubled: usize) -> Vec<RepGraph> {
    let pairs = joined_pairs(edges);
    let mut chosen: Vec<Vec<(usize, usize)>> = Vec::new();
    match doubled {
        1 => chosen.extend(pairs.iter().map(|&p| vec![p])),
        2 => {
            for (x, &p) in pairs.iter().enumerate() {
                for &q in &pairs[x + 1..] {
                    let used: BTreeSet<usize> = [p.0, p.1, q.0, q.1].into();
                    if used.len() == 4 {
                        chosen.push(vec![p, q]);
                    }
                }
            }
        }
        _ => {}
    }
    chosen
        .into_iter()
        .filter_map(|ps| {
            let mut label = vec![usize::MAX; edges.len()];
            for (l, &(i, j)) in ps.iter().enumerate() {
                label[i] = l;
                label[j] = l;
            }
            for (next, l) in (ps.len()..).zip(label.iter_mut().filter(|l| **l == usize::MAX)) {
                *l = next;
            }
            RepGraph::new(n, edges.iter().zip(&label).map(|(&(a, b), &l)| Edge::new(a, b, l))).ok()
        })
        .collect()
}

/// A generating tuple keyed by the canonical form of its graph.
pub type Candidate = (CanonicalForm, Vec<Permutation>);

/// The candidate generating tuples of the search at degree `n`
/// (`9 ≤ n ≤ 10`), one per isomorphism class, with their number of shapes.
pub fn restricted_candidates(n: usize) -> Result<(usize, Vec<Candidate>)> {
    if !(9..=10).contains(&n) {
        return Err(Error::OutOfRange { what: "n", n, lo: 9, hi: 10 });
    }
    let rank = n - 2;
    let shapes = shapes(n);
    let mut unique: BTreeMap<CanonicalForm, Vec<Permutation>> = BTreeMap::new();
    for s in &shapes {
        for g in labelings(n, s, s.len() - rank) {
            // parallel edges with their own labels repeat a generator
            let gens = g.generators(rank);
            if gens.iter().enumerate().any(|(i, x)| gens[..i].contains(x)) {
                continue;
            }
            unique.entry(canonical_form(&g, true)).or_insert(gens);
        }
    }
    Ok((shapes.len(), unique.into_iter().collect()))
}

/// Runs the bounded search at degree `n` (`9 ≤ n ≤ 10`).
pub fn restricted_search(n: usize) -> Result<SearchReport> {
    let (shapes, unique) = restricted_candidates(n)?;
    let families: BTreeSet<CanonicalForm> = family_instances(n)?
        .iter()
        .map(|f| canonical_form(&f.graph, true))
        .collect();
    let target: u128 = (1..=n as u128).product();
    let checked: Vec<(bool, bool, Option<Vec<Permutation>>)> = unique
        .par_iter()
        .map(|(canon, gens)| {
            let symmetric = PermGroup::new(n, gens)?.order() == target;
            if !symmetric {
                return Ok((false, false, None));
            }
            let c_group = CGroupCandidate::new(gens.clone())?.is_c_group_recursive().is_c_group;
            let outside = (c_group && !families.contains(canon)).then(|| gens.clone());
            Ok((true, c_group, outside))
        })
        .collect::<Result<_>>()?;
    Ok(SearchReport {
        n,
        shapes,
        candidates: unique.len(),
        symmetric: checked.iter().filter(|c| c.0).count(),
        c_groups: checked.iter().filter(|c| c.1).count(),
        outside_families: checked.into_iter().filter_map(|c| c.2).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_on_five_points() {
        // 3 trees; unicyclic with a loopless cycle or a double edge
        let s = shapes(5);
        assert_eq!(s.iter().filter(|e| e.len() == 4).count(), 3);
        assert!(s.iter().all(|e| e.len() == 4 || e.len() == 5));
    }

    #[test]
    fn joined_pairs_on_a_path() {
        let path: Vec<_> = (0..4).map(|i| (i, i + 1)).collect();
        assert_eq!(joined_pairs(&path), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn rejects_small_degree() {
        assert!(restricted_search(8).is_err());
    }
}
