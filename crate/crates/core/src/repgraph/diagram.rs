use std::fmt::Write as _;

use serde::Serialize;

use super::LabeledTree;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Orders `p_ij` of products of pairs of generators.
///
/// Edges of the diagram are the pairs with `p_ij > 2`; a label is shown only
/// when `p_ij > 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoxeterDiagram {
    rank: usize,
    orders: Vec<Vec<u64>>,
}

impl CoxeterDiagram {
    /// All off-diagonal orders set to 2.
    pub fn commuting(rank: usize) -> Self {
        let mut orders = vec![vec![2; rank]; rank];
        for (i, row) in orders.iter_mut().enumerate() {
            row[i] = 1;
        }
        CoxeterDiagram { rank, orders }
    }

    /// A string diagram with the given consecutive labels.
    pub fn string(labels: &[u64]) -> Self {
        let mut d = CoxeterDiagram::commuting(labels.len() + 1);
        for (i, &p) in labels.iter().enumerate() {
            d.set(i, i + 1, p);
        }
        d
    }

    pub fn set(&mut self, i: usize, j: usize, p: u64) {
        assert!(i != j && p >= 2);
        self.orders[i][j] = p;
        self.orders[j][i] = p;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self, i: usize, j: usize) -> u64 {
        self.orders[i][j]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.orders[i][j] > 2
    }

    /// Diagram edges `(i, j, p_ij)` with `i < j` and `p_ij > 2`.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.orders[i][j] > 2 {
                    out.push((i, j, self.orders[i][j]));
                }
            }
        }
        out
    }

    /// Triangles `{i, j, k}` of the diagram, each sorted.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                for k in j + 1..self.rank {
                    if self.adjacent(i, j) && self.adjacent(j, k) && self.adjacent(i, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Whether the diagram is a path `0 – 1 – … – (r-1)`.
    pub fn is_string(&self) -> bool {
        (0..self.rank).all(|i| (i + 1..self.rank).all(|j| self.adjacent(i, j) == (j == i + 1)))
    }

    /// Restriction to the given generator indices (in that order).
    pub fn restrict(&self, indices: &[usize]) -> CoxeterDiagram {
        let mut d = CoxeterDiagram::commuting(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                if a != b {
                    d.orders[a][b] = self.orders[i][j];
                }
            }
        }
        d
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph coxeter {\n  node [shape=circle];\n");
        for i in 0..self.rank {
            let _ = writeln!(s, "  {i};");
        }
        for (i, j, p) in self.edges() {
            if p > 3 {
                let _ = writeln!(s, "  {i} -- {j} [label=\"{p}\"];");
            } else {
                let _ = writeln!(s, "  {i} -- {j};");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// `p_ij = order(gens[i] ∘ gens[j])`.
pub fn coxeter_diagram(gens: &[Permutation]) -> Result<CoxeterDiagram> {
    let r = gens.len();
    let mut d = CoxeterDiagram::commuting(r);
    for i in 0..r {
        for j in i + 1..r {
            let p = Permutation::compose(&gens[i], &gens[j])?.order();
            if p < 2 {
                return Err(Error::RepeatedGenerator(i, j));
            }
            d.set(i, j, p);
        }
    }
    Ok(d)
}

/// Vertices are the tree's edges (in label order); adjacent edges get
/// `p = 3`, all other pairs `p = 2`.
pub fn line_graph(t: &LabeledTree) -> CoxeterDiagram {
    let edges = t.edges_by_label();
    let mut d = CoxeterDiagram::commuting(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            if e.touches(f.a) || e.touches(f.b) {
                d.set(i, j, 3);
            }
        }
    }
    d
}

/// Chordal, every edge in exactly one maximal clique, every vertex in one or
/// two maximal cliques.
pub fn is_img_diagram(d: &CoxeterDiagram) -> bool {
    let n = d.rank();
    let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| d.adjacent(i, j)).collect()).collect();
    if !is_chordal(&adj) {
        return false;
    }
    let cliques = maximal_cliques(&adj);
    for i in 0..n {
        let c = cliques.iter().filter(|q| q.contains(&i)).count();
        if !(1..=2).contains(&c) {
            return false;
        }
        for j in i + 1..n {
            if adj[i][j] && cliques.iter().filter(|q| q.contains(&i) && q.contains(&j)).count() != 1 {
                return false;
            }
        }
    }
    true
}

/// Maximum cardinality search followed by a perfect-elimination check.
fn is_chordal(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !numbered[v]).max_by_key(|&v| (weight[v], n - v)).unwrap();
        numbered[v] = true;
        order.push(v);
        for u in 0..n {
            if adj[v][u] && !numbered[u] {
                weight[u] += 1;
            }
        }
    }
    // reversed visit order is a perfect elimination ordering iff chordal
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    for &v in &order {
        let earlier: Vec<usize> = (0..n).filter(|&u| adj[v][u] && pos[u] < pos[v]).collect();
        if let Some(&p) = earlier.iter().max_by_key(|&&u| pos[u]) {
            if earlier.iter().any(|&u| u != p && !adj[p][u]) {
                return false;
            }
        }
    }
    true
}

fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bron_kerbosch(adj: &[Vec<bool>], r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let mut p = p;
        let mut x = x;
        while let Some(v) = p.pop() {
            r.push(v);
            let np = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let nx = x.iter().copied().filter(|&u| adj[v][u]).collect();
            bron_kerbosch(adj, r, np, nx, out);
            r.pop();
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bron_kerbosch(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut out);
    out
}
