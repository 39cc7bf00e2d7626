//! Edge-labelled multigraphs on permuted points.
//!
//! A [`RepGraph`] records, for a tuple of involutions, an `i`-labelled edge
//! `{a, b}` whenever the `i`-th involution swaps `a` and `b`. The same type
//! holds trees and fracture graphs.

mod canon;
mod diagram;
mod trees;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::orbits;
use crate::perm::Permutation;

pub use canon::{canonical_form, CanonicalForm};
pub use diagram::{coxeter_diagram, is_img_diagram, line_graph, CoxeterDiagram};
pub use trees::{enumerate_trees, rooted_code, tree_code, vertex_orbits, UnlabeledTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: usize,
}

impl Edge {
    /// Endpoints are stored with `a < b`.
    pub fn new(a: usize, b: usize, label: usize) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Edge { a, b, label }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepGraph {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RepGraphJson {
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl RepGraph {
    /// Checks that endpoints differ, no triple repeats and each label is a
    /// matching.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort();
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (k, e) in edges.iter().enumerate() {
            if e.a == e.b || e.b >= n {
                return Err(Error::Parse(format!("bad edge {e:?} for {n} vertices")));
            }
            if k > 0 && edges[k - 1] == *e {
                return Err(Error::Parse(format!("duplicate edge {e:?}")));
            }
            if !seen.insert((e.label, e.a)) || !seen.insert((e.label, e.b)) {
                return Err(Error::Parse(format!("label {} is not a matching", e.label)));
            }
        }
        Ok(RepGraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Labels that carry at least one edge, ascending.
    pub fn labels(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.edges.iter().map(|e| e.label).collect();
        set.into_iter().collect()
    }

    pub fn edges_with_label(&self, label: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.label == label)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    /// Sorted degree sequence, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|x, y| y.cmp(x));
        d
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected components, each ascending, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let gens: Vec<Permutation> = self.labels().iter().map(|&l| self.involution(l)).collect();
        if gens.is_empty() {
            return (0..self.n).map(|v| vec![v]).collect();
        }
        orbits(self.n, &gens)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Vertex pairs joined by more than one edge.
    pub fn multiple_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if self.edges[..k].iter().any(|f| f.a == e.a && f.b == e.b) && !out.contains(&(e.a, e.b)) {
                out.push((e.a, e.b));
            }
        }
        out
    }

    /// Number of independent cycles of the underlying multigraph.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components().len() - self.n
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// The involution whose transpositions are the `label`-edges.
    pub fn involution(&self, label: usize) -> Permutation {
        let mut images: Vec<usize> = (0..self.n).collect();
        for e in self.edges_with_label(label) {
            images[e.a] = e.b;
            images[e.b] = e.a;
        }
        Permutation::from_images(&images).expect("matching gives a bijection")
    }

    /// Involutions for labels `0..rank`.
    pub fn generators(&self, rank: usize) -> Vec<Permutation> {
        (0..rank).map(|l| self.involution(l)).collect()
    }

    /// Subgraph keeping only edges whose label is in `labels`.
    pub fn restrict(&self, labels: &[usize]) -> RepGraph {
        RepGraph {
            n: self.n,
            edges: self.edges.iter().filter(|e| labels.contains(&e.label)).copied().collect(),
        }
    }

    /// Renames vertices by `map[v]`.
    pub fn relabel_vertices(&self, map: &[usize]) -> RepGraph {
        RepGraph::new(self.n, self.edges.iter().map(|e| Edge::new(map[e.a], map[e.b], e.label)))
            .expect("bijective relabelling")
    }

    /// Renames labels by `map[label]`.
    pub fn relabel_labels(&self, map: &[usize]) -> RepGraph {
        RepGraph::new(self.n, self.edges.iter().map(|e| Edge::new(e.a, e.b, map[e.label])))
            .expect("bijective relabelling")
    }

    pub fn to_json(&self) -> String {
        let j = RepGraphJson { n: self.n, edges: self.edges.iter().map(|e| [e.a, e.b, e.label]).collect() };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: RepGraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        RepGraph::new(j.n, j.edges.into_iter().map(|[a, b, l]| Edge::new(a, b, l)))
    }

    /// DOT rendering; edges listed in `dashed` are drawn dashed.
    pub fn to_dot_with(&self, name: &str, dashed: &[Edge]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {name} {{");
        let _ = writeln!(s, "  node [shape=circle];");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -- {} [label=\"{}\"];", e.a, e.b, e.label);
        }
        for e in dashed {
            let _ = writeln!(s, "  {} -- {} [label=\"{}\", style=dashed];", e.a, e.b, e.label);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_dot(&self) -> String {
        self.to_dot_with("G", &[])
    }
}

/// Builds the permutation representation graph of involutions.
pub fn build_rep_graph(gens: &[Permutation]) -> Result<RepGraph> {
    let n = gens.first().map_or(0, |g| g.degree());
    let mut edges = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.degree() != n {
            return Err(Error::DegreeMismatch(n, g.degree()));
        }
        if !g.after(g).is_identity() {
            return Err(Error::NotAnInvolution { index: i, perm: g.to_string() });
        }
        for a in 0..n {
            let b = g.apply(a);
            if a < b {
                edges.push(Edge::new(a, b, i));
            }
        }
    }
    RepGraph::new(n, edges)
}

/// A tree whose edges carry distinct labels `0..n-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    graph: RepGraph,
}

impl LabeledTree {
    /// Labels edges in the order given.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = RepGraph::new(n, edges.iter().enumerate().map(|(l, &(a, b))| Edge::new(a, b, l)))?;
        LabeledTree::from_graph(g)
    }

    pub fn from_graph(graph: RepGraph) -> Result<Self> {
        if !graph.is_tree() {
            return Err(Error::NotATree);
        }
        let labels = graph.labels();
        if labels.len() != graph.edges().len() {
            return Err(Error::NotATree);
        }
        Ok(LabeledTree { graph })
    }

    pub fn graph(&self) -> &RepGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    /// Edges ordered by label.
    pub fn edges_by_label(&self) -> Vec<Edge> {
        let mut e = self.graph.edges.clone();
        e.sort_by_key(|e| e.label);
        e
    }

    /// One transposition per edge, indexed by label order.
    pub fn transpositions(&self) -> Vec<Permutation> {
        self.edges_by_label()
            .iter()
            .map(|e| Permutation::transposition(self.graph.n, e.a, e.b))
            .collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.graph.n).filter(|&v| self.graph.degree(v) == 1).collect()
    }
}

/// A choice of one edge per label separating the orbits of the parabolic
/// that omits that label, plus the remaining ("dashed") edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractureGraph {
    pub graph: RepGraph,
    pub dashed: Vec<Edge>,
}

impl FractureGraph {
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.graph.components()
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot_with("F", &self.dashed)
    }
}

/// Picks, for every label `i`, the least `i`-edge whose endpoints lie in
/// distinct orbits of `⟨gens[j] : j ≠ i⟩`.
pub fn fracture_graph(gens: &[Permutation]) -> Result<FractureGraph> {
    let full = build_rep_graph(gens)?;
    let n = full.vertex_count();
    let mut chosen = Vec::new();
    let mut missing = Vec::new();
    for i in 0..gens.len() {
        let others: Vec<Permutation> =
            gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let parts = orbits(n, &others);
        let mut part_of = vec![0; n];
        for (k, p) in parts.iter().enumerate() {
            for &x in p {
                part_of[x] = k;
            }
        }
        match full.edges_with_label(i).find(|e| part_of[e.a] != part_of[e.b]) {
            Some(e) => chosen.push(*e),
            None => missing.push(i),
        }
    }
    if !missing.is_empty() {
        return Err(Error::NoFracture(missing));
    }
    let dashed = full.edges().iter().filter(|e| !chosen.contains(e)).copied().collect();
    Ok(FractureGraph { graph: RepGraph::new(n, chosen)?, dashed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn moore(n: usize) -> Vec<Permutation> {
        (0..n - 1).map(|i| Permutation::transposition(n, i, i + 1)).collect()
    }

    #[test]
    fn moore_graph_is_labelled_path() {
        let g = build_rep_graph(&moore(4)).unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1, 0), Edge::new(1, 2, 1), Edge::new(2, 3, 2)]);
        assert!(g.is_tree());
    }

    #[test]
    fn identity_has_no_edges() {
        let g = build_rep_graph(&[Permutation::identity(3)]).unwrap();
        assert!(g.edges().is_empty());
    }

    #[test]
    fn family_c_head_graph() {
        let gens = [perm(5, "(0 1)(2 3)"), perm(5, "(0 2)(1 3)"), perm(5, "(3 4)")];
        let g = build_rep_graph(&gens).unwrap();
        assert_eq!(
            g.edges(),
            &[
                Edge::new(0, 1, 0),
                Edge::new(0, 2, 1),
                Edge::new(1, 3, 1),
                Edge::new(2, 3, 0),
                Edge::new(3, 4, 2)
            ]
        );
        assert_eq!(g.cycle_rank(), 1);
        assert_eq!(g.degree(3), 3);
    }

    #[test]
    fn rejects_non_involution() {
        let err = build_rep_graph(&[perm(3, "(0 1 2)")]).unwrap_err();
        assert!(matches!(err, Error::NotAnInvolution { index: 0, .. }));
    }

    #[test]
    fn matching_invariant_enforced() {
        assert!(RepGraph::new(3, [Edge::new(0, 1, 0), Edge::new(1, 2, 0)]).is_err());
        assert!(RepGraph::new(3, [Edge::new(0, 1, 0), Edge::new(0, 1, 0)]).is_err());
        let double = RepGraph::new(3, [Edge::new(0, 1, 0), Edge::new(0, 1, 1)]).unwrap();
        assert_eq!(double.multiple_edges(), vec![(0, 1)]);
    }

    #[test]
    fn moore_fracture_graph_is_whole_tree() {
        let gens = moore(6);
        let f = fracture_graph(&gens).unwrap();
        assert_eq!(f.graph, build_rep_graph(&gens).unwrap());
        assert!(f.dashed.is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let g = build_rep_graph(&moore(5)).unwrap();
        let text = g.to_json();
        assert_eq!(text, r#"{"n":5,"edges":[[0,1,0],[1,2,1],[2,3,2],[3,4,3]]}"#);
        assert_eq!(RepGraph::from_json(&text).unwrap(), g);
    }

    #[test]
    fn dot_marks_dashed_edges() {
        let f = FractureGraph {
            graph: RepGraph::new(3, [Edge::new(0, 1, 0)]).unwrap(),
            dashed: vec![Edge::new(1, 2, 1)],
        };
        let dot = f.to_dot();
        assert!(dot.contains("0 -- 1 [label=\"0\"];"));
        assert!(dot.contains("1 -- 2 [label=\"1\", style=dashed];"));
        assert!(dot.contains("shape=circle"));
    }

    #[test]
    fn components_equal_orbits() {
        let gens = [perm(7, "(0 1)(4 5)"), perm(7, "(1 2)")];
        let g = build_rep_graph(&gens).unwrap();
        assert_eq!(g.components(), orbits(7, &gens));
    }
}
