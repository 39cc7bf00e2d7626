//! Free trees up to isomorphism, via leaf extension and AHU codes.

use std::collections::BTreeSet;

use super::LabeledTree;

/// A tree on `n` vertices given by its edges. Trees produced by
/// [`enumerate_trees`] are numbered in preorder from a centre.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnlabeledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UnlabeledTree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        assert_eq!(edges.len() + 1, n.max(1), "a tree on {n} vertices has {} edges", n.saturating_sub(1));
        UnlabeledTree { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Labels the edges `0, 1, …` in stored order.
    pub fn labeled(&self) -> LabeledTree {
        LabeledTree::from_edges(self.n, &self.edges).expect("tree")
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }
}

/// AHU code of the tree rooted at `root`.
pub fn rooted_code(adj: &[Vec<usize>], root: usize) -> String {
    fn go(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| go(adj, u, v)).collect();
        kids.sort();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        s
    }
    go(adj, root, usize::MAX)
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let ecc: Vec<usize> = (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            let mut far = 0;
            while let Some(v) = queue.pop_front() {
                far = far.max(dist[v]);
                for &u in &adj[v] {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            far
        })
        .collect();
    let best = ecc.iter().copied().min().unwrap_or(0);
    (0..n).filter(|&v| ecc[v] == best).collect()
}

/// Isomorphism-invariant code: the least rooted code over the centres.
pub fn tree_code(adj: &[Vec<usize>]) -> String {
    centers(adj).into_iter().map(|c| rooted_code(adj, c)).min().unwrap_or_default()
}

fn tree_from_code(code: &str) -> UnlabeledTree {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for ch in code.chars() {
        match ch {
            '(' => {
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                }
                stack.push(next);
                next += 1;
            }
            _ => {
                stack.pop();
            }
        }
    }
    UnlabeledTree { n: next, edges }
}

/// All trees on `n` vertices, one per isomorphism class, ordered by code.
pub fn enumerate_trees(n: usize) -> Vec<UnlabeledTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut codes: BTreeSet<String> = BTreeSet::from(["()".to_string()]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for code in &codes {
            let t = tree_from_code(code);
            let mut adj = t.adjacency();
            let m = t.n;
            adj.push(Vec::new());
            for v in 0..m {
                adj[v].push(m);
                adj[m].push(v);
                next.insert(tree_code(&adj));
                adj[v].pop();
                adj[m].pop();
            }
        }
        codes = next;
    }
    codes.iter().map(|c| tree_from_code(c)).collect()
}

/// Vertices grouped into automorphism orbits (equal rooted codes), each
/// orbit ascending, orbits ordered by least vertex.
pub fn vertex_orbits(t: &UnlabeledTree) -> Vec<Vec<usize>> {
    let adj = t.adjacency();
    let codes: Vec<String> = (0..t.n).map(|v| rooted_code(&adj, v)).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..t.n {
        match out.iter_mut().find(|o| codes[o[0]] == codes[v]) {
            Some(o) => o.push(v),
            None => out.push(vec![v]),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn trees_are_trees() {
        for t in enumerate_trees(7) {
            assert_eq!(t.edges().len(), 6);
            assert!(t.labeled().graph().is_tree());
        }
    }

    #[test]
    fn star_and_path_orbits() {
        let trees = enumerate_trees(5);
        let star = trees.iter().find(|t| t.leaves().len() == 4).unwrap();
        assert_eq!(vertex_orbits(star).len(), 2);
        let path = trees.iter().find(|t| t.leaves().len() == 2).unwrap();
        assert_eq!(vertex_orbits(path).len(), 3);
    }
}
