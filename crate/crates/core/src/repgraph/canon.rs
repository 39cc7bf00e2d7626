//! Canonical forms of edge-labelled multigraphs.
//!
//! The multigraph is encoded as a vertex-coloured simple graph (points,
//! one node per edge, one node per label) and canonised by
//! individualisation–refinement. Automorphisms found at equal leaves prune
//! sibling branches through orbits of the pointwise stabiliser of the
//! current individualisation sequence.

use std::collections::HashMap;
use std::fmt;

use super::RepGraph;
use crate::group::{orbits, PermGroup};
use crate::perm::Permutation;

/// Canonical byte string; equal iff the graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

struct ColoredGraph {
    colors: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

fn encode(g: &RepGraph, allow_label_permutation: bool) -> ColoredGraph {
    let n = g.vertex_count();
    let labels = g.labels();
    let m = g.edges().len();
    let total = n + m + labels.len();
    let mut colors = vec![0u32; total];
    let mut adj = vec![Vec::new(); total];
    for (k, e) in g.edges().iter().enumerate() {
        let node = n + k;
        colors[node] = 1;
        let lnode = n + m + labels.binary_search(&e.label).expect("label present");
        for x in [e.a, e.b, lnode] {
            adj[node].push(x);
            adj[x].push(node);
        }
    }
    for (k, &l) in labels.iter().enumerate() {
        colors[n + m + k] = if allow_label_permutation { 2 } else { 2 + l as u32 };
    }
    ColoredGraph { colors, adj }
}

/// Replaces colours by the rank of their value among all colours.
fn rank_colors<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present") as u32).collect()
}

fn refine(adj: &[Vec<usize>], colors: &mut Vec<u32>) {
    let mut classes = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
            .map(|v| {
                let mut nb: Vec<u32> = adj[v].iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank_colors(&sigs);
        let count = next.iter().copied().max().map_or(0, |x| x as usize + 1);
        *colors = next;
        if count == classes {
            return;
        }
        classes = count;
    }
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let keys: Vec<(u32, bool)> = colors.iter().enumerate().map(|(u, &c)| (c, u != v)).collect();
    rank_colors(&keys)
}

type Certificate = Vec<u32>;

fn certificate(g: &ColoredGraph, position: &[u32]) -> Certificate {
    let total = g.colors.len();
    let mut by_pos = vec![0u32; total];
    for (v, &p) in position.iter().enumerate() {
        by_pos[p as usize] = g.colors[v];
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (v, nbrs) in g.adj.iter().enumerate() {
        for &u in nbrs {
            let (a, b) = (position[v], position[u]);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    let mut cert = Vec::with_capacity(1 + total + 2 * edges.len());
    cert.push(total as u32);
    cert.extend(by_pos);
    for (a, b) in edges {
        cert.push(a);
        cert.push(b);
    }
    cert
}

struct Search<'a> {
    g: &'a ColoredGraph,
    best: Option<Certificate>,
    seen: HashMap<Certificate, Vec<u32>>,
    automorphisms: Vec<Permutation>,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<u32>, seq: &mut Vec<usize>) {
        let mut colors = colors;
        refine(&self.g.adj, &mut colors);
        let total = colors.len();
        let mut cell_size = vec![0usize; total];
        for &c in &colors {
            cell_size[c as usize] += 1;
        }
        let Some(target) = (0..total).find(|&c| cell_size[c] > 1) else {
            self.leaf(&colors);
            return;
        };
        let cell: Vec<usize> = (0..total).filter(|&v| colors[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        let mut stab_orbit: Option<(usize, Vec<usize>)> = None;
        for &v in &cell {
            if !explored.is_empty() && !self.automorphisms.is_empty() {
                let fresh = !matches!(&stab_orbit, Some((k, _)) if *k == self.automorphisms.len());
                if fresh {
                    stab_orbit = Some((self.automorphisms.len(), self.stabilizer_orbit_ids(seq, total)));
                }
                let ids = &stab_orbit.as_ref().expect("computed").1;
                if explored.iter().any(|&u| ids[u] == ids[v]) {
                    continue;
                }
            }
            explored.push(v);
            seq.push(v);
            let next = individualize(&colors, v);
            self.run(next, seq);
            seq.pop();
        }
    }

    /// Orbit id of every node under the pointwise stabiliser of `seq` in the
    /// automorphisms found so far.
    fn stabilizer_orbit_ids(&self, seq: &[usize], total: usize) -> Vec<usize> {
        let group = PermGroup::new(total, &self.automorphisms).expect("same degree");
        let stab = group.pointwise_stabilizer(seq);
        let mut ids = vec![0; total];
        for (k, o) in orbits(total, stab.generators()).iter().enumerate() {
            for &x in o {
                ids[x] = k;
            }
        }
        ids
    }

    fn leaf(&mut self, position: &[u32]) {
        let cert = certificate(self.g, position);
        if let Some(prev) = self.seen.get(&cert) {
            // prev and position relabel the graph identically
            let mut inv = vec![0usize; position.len()];
            for (v, &p) in prev.iter().enumerate() {
                inv[p as usize] = v;
            }
            let images: Vec<usize> = position.iter().map(|&p| inv[p as usize]).collect();
            let aut = Permutation::from_images(&images).expect("bijection");
            if !aut.is_identity() {
                self.automorphisms.push(aut);
            }
            return;
        }
        if self.best.as_ref().is_none_or(|b| cert < *b) {
            self.best = Some(cert.clone());
        }
        self.seen.insert(cert, position.to_vec());
    }
}

/// Canonical form of `g` as an edge-labelled multigraph. With
/// `allow_label_permutation` the form is also invariant under renaming labels.
pub fn canonical_form(g: &RepGraph, allow_label_permutation: bool) -> CanonicalForm {
    let cg = encode(g, allow_label_permutation);
    let mut search = Search { g: &cg, best: None, seen: HashMap::new(), automorphisms: Vec::new() };
    search.run(cg.colors.clone(), &mut Vec::new());
    let best = search.best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(4 + best.len() * 2);
    bytes.extend((g.vertex_count() as u16).to_be_bytes());
    for x in best {
        bytes.extend((x as u16).to_be_bytes());
    }
    CanonicalForm(bytes)
}
