//! Necessary shape conditions on the representation graph of a rank `n-2`
//! C-group for `S_n` (`n ≥ 9`) whose maximal parabolics are intransitive.

use serde::Serialize;

use crate::error::Result;
use crate::perm::Permutation;
use crate::repgraph::{build_rep_graph, fracture_graph, Edge, RepGraph};

/// Which shape conditions hold. Each is necessary for the intersection
/// property under the hypotheses above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenDiagnosis {
    /// Edges outside the fracture graph pairwise meet, and two distinct ones
    /// lie on an alternating square.
    pub connection: bool,
    /// No label has more than two edges, and two edges of one label are
    /// joined by an edge.
    pub distance: bool,
    /// The graph is a tree or its only cycle is an alternating square.
    pub cycle: bool,
    /// For a tree: at most one further edge touches the two edges of the
    /// repeated label, other than the edge joining them.
    pub tree_head: bool,
    /// For an alternating square: three of its points have degree 2 and the
    /// fourth degree 3.
    pub square_degree: bool,
}

impl ScreenDiagnosis {
    pub fn passes(&self) -> bool {
        self.connection && self.distance && self.cycle && self.tree_head && self.square_degree
    }
}

/// Points `[a, b, x, d]` of an alternating square through the `i`-edge
/// `{a, b}` and the `j`-edge at `a`, if there is one.
fn square_at(g: &RepGraph, a: usize, i: usize, j: usize) -> Option<[usize; 4]> {
    let (ri, rj) = (g.involution(i), g.involution(j));
    let b = ri.apply(a);
    let d = rj.apply(a);
    let x = rj.apply(b);
    let distinct = a != b && a != d && b != d && x != a && x != b && x != d;
    (distinct && ri.apply(d) == x).then_some([a, b, x, d])
}

fn alternating_squares(g: &RepGraph) -> Vec<[usize; 4]> {
    let labels = g.labels();
    let mut out: Vec<[usize; 4]> = Vec::new();
    for (k, &i) in labels.iter().enumerate() {
        for &j in &labels[k + 1..] {
            for a in 0..g.vertex_count() {
                if let Some(mut sq) = square_at(g, a, i, j) {
                    sq.sort_unstable();
                    if !out.contains(&sq) {
                        out.push(sq);
                    }
                }
            }
        }
    }
    out
}

fn joined(g: &RepGraph, e: &Edge, f: &Edge) -> bool {
    g.edges().iter().any(|h| (h.touches(e.a) || h.touches(e.b)) && (h.touches(f.a) || h.touches(f.b)))
}

fn connection(g: &RepGraph, dashed: &[Edge]) -> bool {
    for (k, e) in dashed.iter().enumerate() {
        for f in &dashed[k + 1..] {
            let shared = [e.a, e.b].into_iter().find(|&v| f.touches(v));
            let Some(a) = shared else { return false };
            if e.label == f.label {
                return false;
            }
            let parallel = e.a == f.a && e.b == f.b;
            if !parallel && square_at(g, a, e.label, f.label).is_none() {
                return false;
            }
        }
    }
    true
}

fn distance(g: &RepGraph) -> bool {
    g.labels().into_iter().all(|l| {
        let es: Vec<&Edge> = g.edges_with_label(l).collect();
        match es.len() {
            0 | 1 => true,
            2 => joined(g, es[0], es[1]),
            _ => false,
        }
    })
}

fn cycle(g: &RepGraph, squares: &[[usize; 4]]) -> bool {
    if g.is_tree() {
        return true;
    }
    g.is_connected() && g.cycle_rank() == 1 && g.multiple_edges().is_empty() && squares.len() == 1
}

fn tree_head(g: &RepGraph) -> bool {
    if !g.is_tree() {
        return true;
    }
    let repeated: Vec<usize> = g.labels().into_iter().filter(|&l| g.edges_with_label(l).count() == 2).collect();
    let [l] = repeated[..] else { return repeated.is_empty() };
    let es: Vec<Edge> = g.edges_with_label(l).copied().collect();
    let ends = [es[0].a, es[0].b, es[1].a, es[1].b];
    let touching: Vec<&Edge> = g.edges().iter().filter(|h| h.label != l && ends.iter().any(|&v| h.touches(v))).collect();
    // in a tree exactly one edge joins the two l-edges; it is not counted
    let bridge = touching
        .iter()
        .position(|h| ends[..2].iter().any(|&v| h.touches(v)) && ends[2..].iter().any(|&v| h.touches(v)));
    match bridge {
        Some(_) => touching.len() <= 2,
        None => false,
    }
}

fn square_degree(g: &RepGraph, squares: &[[usize; 4]]) -> bool {
    squares.iter().all(|sq| {
        let mut d: Vec<usize> = sq.iter().map(|&v| g.degree(v)).collect();
        d.sort_unstable();
        d == [2, 2, 2, 3]
    })
}

/// Evaluates every shape condition. Fails with `NoFracture` when some
/// maximal parabolic is transitive across all of its edges.
pub fn structural_screen(gens: &[Permutation]) -> Result<ScreenDiagnosis> {
    let g = build_rep_graph(gens)?;
    let f = fracture_graph(gens)?;
    let squares = alternating_squares(&g);
    Ok(ScreenDiagnosis {
        connection: connection(&g, &f.dashed),
        distance: distance(&g),
        cycle: cycle(&g, &squares),
        tree_head: tree_head(&g),
        square_degree: square_degree(&g, &squares),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgroup::CGroupCandidate;
    use crate::classify::family_instances;
    use crate::perm::perm;

    #[test]
    fn families_pass() {
        for f in family_instances(9).unwrap() {
            let d = structural_screen(&f.gens).unwrap();
            assert!(d.passes(), "{:?} {:?}: {d:?}", f.family, f.tail.edges());
        }
    }

    #[test]
    fn distance_two_fails_screen_and_check() {
        // i-edges {0,1} and {4,5} with a path 1 -l- 2 -m- 3 -j- 4 between them
        let n = 9;
        let gens = vec![
            perm(n, "(0 1)(4 5)"),
            perm(n, "(1 2)"),
            perm(n, "(2 3)"),
            perm(n, "(3 4)"),
            perm(n, "(5 6)"),
            perm(n, "(6 7)"),
            perm(n, "(7 8)"),
        ];
        let d = structural_screen(&gens).unwrap();
        assert!(!d.distance);
        assert!(!CGroupCandidate::new(gens).unwrap().is_c_group_full().unwrap().is_c_group);
    }

    #[test]
    fn double_edge_fails_cycle_screen() {
        // labels 0 and 1 both join 0 and 1; every other edge is a bridge
        let n = 9;
        let gens = vec![
            perm(n, "(0 1)(7 8)"),
            perm(n, "(0 1)(2 3)"),
            perm(n, "(1 2)"),
            perm(n, "(3 4)"),
            perm(n, "(4 5)"),
            perm(n, "(5 6)"),
            perm(n, "(6 7)"),
        ];
        let d = structural_screen(&gens).unwrap();
        assert!(!d.cycle);
        assert!(!CGroupCandidate::new(gens).unwrap().is_c_group_full().unwrap().is_c_group);
    }
}
