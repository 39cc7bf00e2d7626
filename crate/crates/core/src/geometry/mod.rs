//! Coset incidence geometries.
//!
//! Elements of type `i` are the left cosets `g ∘ G_i`, two elements being
//! incident when they intersect. Inversion turns these into right cosets,
//! so every property checked here is the same for either convention.
//! `G` acts on each coset space by left multiplication.

mod checks;
mod ft;
mod report;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{intersection, PermGroup};
use crate::perm::Permutation;

pub use checks::{FlagScope, Residue};
pub use ft::{bh91_condition, is_flag_transitive_bh91, is_flag_transitive_incremental, Rank3Oracle, SubgroupLattice};
pub use report::{certify_regular_hypertope, certify_with, CertifyOptions, FailureWitness, HypertopeReport};

/// Default cap on the total number of cosets in a geometry.
pub const DEFAULT_COSET_LIMIT: u128 = 1_000_000;
/// Default cap on enumerated chambers.
pub const DEFAULT_CHAMBER_LIMIT: u128 = 10_000_000;

/// The cosets of one subgroup, with the action of the ambient generators.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup: PermGroup,
    reps: Vec<Permutation>,
    lookup: HashMap<Permutation, u32>,
    actions: Vec<Vec<u32>>,
    // (parent coset, generator) along the search tree; the root has no parent
    parent: Vec<Option<(u32, u32)>>,
}

impl CosetSpace {
    /// Cosets of `sub` in `group`, found by breadth-first search from the
    /// identity coset. Representatives are lexicographically least elements.
    pub fn new(group: &PermGroup, sub: &PermGroup, limit: u128) -> Result<Self> {
        if !group.contains_group(sub) {
            return Err(Error::NotASubgroup);
        }
        let index = group.order() / sub.order();
        if index > limit {
            return Err(Error::IndexOverflow(index, limit));
        }
        let subgroup = sub.with_lex_base();
        let gens = group.generators();
        let id = Permutation::identity(group.degree());
        let mut space = CosetSpace {
            reps: vec![id.clone()],
            lookup: HashMap::from([(id, 0)]),
            actions: vec![Vec::with_capacity(index as usize); gens.len()],
            parent: vec![None],
            subgroup,
        };
        let mut k = 0;
        while k < space.reps.len() {
            for (t, g) in gens.iter().enumerate() {
                let y = space.subgroup.min_in_coset(&g.after(&space.reps[k]));
                let next = space.reps.len() as u32;
                let idx = *space.lookup.entry(y.clone()).or_insert(next);
                if idx == next {
                    space.reps.push(y);
                    space.parent.push(Some((k as u32, t as u32)));
                }
                space.actions[t].push(idx);
            }
            k += 1;
        }
        debug_assert_eq!(space.reps.len() as u128, index);
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn rep(&self, k: usize) -> &Permutation {
        &self.reps[k]
    }

    /// Index of the coset containing `g`.
    pub fn index_of(&self, g: &Permutation) -> u32 {
        self.lookup[&self.subgroup.min_in_coset(g)]
    }

    /// Image of each coset under the `t`-th ambient generator.
    pub fn action(&self, t: usize) -> &[u32] {
        &self.actions[t]
    }

    /// Sorted orbit of the identity coset under `⟨gens⟩`.
    pub fn orbit_of_base(&self, gens: &[Permutation]) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(k) = queue.pop_front() {
            for h in gens {
                let j = self.index_of(&h.after(&self.reps[k as usize]));
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    out.push(j);
                    queue.push_back(j);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A set of typed elements with a symmetric incidence relation between
/// elements of distinct types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceSystem {
    counts: Vec<usize>,
    // inc[j][i][b]: sorted type-i elements incident to element b of type j
    inc: Vec<Vec<Vec<Vec<u32>>>>,
}

/// Elements given as `(type, index)`.
pub type Element = (usize, u32);

/// A set of pairwise incident elements, one per type in its type set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag(pub Vec<Element>);

impl Flag {
    pub fn types(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.0.iter().map(|e| e.0).collect();
        t.sort_unstable();
        t
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl IncidenceSystem {
    /// Builds a system from explicit incident pairs (self-pairs and pairs of
    /// equal type are rejected).
    pub fn from_pairs(counts: Vec<usize>, pairs: &[(Element, Element)]) -> Result<Self> {
        let r = counts.len();
        let mut inc: Vec<Vec<Vec<Vec<u32>>>> =
            (0..r).map(|j| (0..r).map(|_| vec![Vec::new(); counts[j]]).collect()).collect();
        for &((s, a), (t, b)) in pairs {
            if s >= r || t >= r || s == t || a as usize >= counts[s] || b as usize >= counts[t] {
                return Err(Error::Parse(format!("bad incidence pair ({s},{a})-({t},{b})")));
            }
            inc[s][t][a as usize].push(b);
            inc[t][s][b as usize].push(a);
        }
        for lists in inc.iter_mut().flatten().flatten() {
            lists.sort_unstable();
            lists.dedup();
        }
        Ok(IncidenceSystem { counts, inc })
    }

    pub fn rank(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts[i]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Sorted type-`i` elements incident to `x`.
    pub fn incident(&self, x: Element, i: usize) -> &[u32] {
        &self.inc[x.0][i][x.1 as usize]
    }

    pub fn is_incident(&self, x: Element, y: Element) -> bool {
        x.0 != y.0 && self.incident(x, y.0).binary_search(&y.1).is_ok()
    }

    pub fn is_flag(&self, f: &Flag) -> bool {
        let types = f.types();
        types.windows(2).all(|w| w[0] != w[1])
            && f.0.iter().enumerate().all(|(a, &x)| f.0[a + 1..].iter().all(|&y| self.is_incident(x, y)))
    }

    /// Number of incident pairs.
    pub fn incident_pairs(&self) -> usize {
        let mut total = 0;
        for j in 0..self.rank() {
            for i in j + 1..self.rank() {
                total += self.inc[j][i].iter().map(Vec::len).sum::<usize>();
            }
        }
        total
    }

    /// Incidence graph in DOT; node `t{i}_{k}` is element `k` of type `i`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for (i, &c) in self.counts.iter().enumerate() {
            for k in 0..c {
                let _ = writeln!(s, "  t{i}_{k} [label=\"{i}:{k}\"];");
            }
        }
        for j in 0..self.rank() {
            for i in j + 1..self.rank() {
                for (b, list) in self.inc[j][i].iter().enumerate() {
                    for a in list {
                        let _ = writeln!(s, "  t{j}_{b} -- t{i}_{a};");
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// A group together with subgroups `G_0, …, G_{r-1}` and the resulting
/// incidence system.
#[derive(Clone, Debug)]
pub struct CosetGeometry {
    group: PermGroup,
    spaces: Vec<CosetSpace>,
    system: IncidenceSystem,
}

/// Tits construction with the default coset limit.
pub fn build_geometry(g: &PermGroup, subgroups: &[PermGroup]) -> Result<CosetGeometry> {
    build_geometry_with_limit(g, subgroups, DEFAULT_COSET_LIMIT)
}

pub fn build_geometry_with_limit(g: &PermGroup, subgroups: &[PermGroup], limit: u128) -> Result<CosetGeometry> {
    let order = g.order();
    let total: u128 = subgroups.iter().map(|h| order / h.order()).sum();
    if total > limit {
        return Err(Error::IndexOverflow(total, limit));
    }
    let spaces = subgroups.iter().map(|h| CosetSpace::new(g, h, limit)).collect::<Result<Vec<_>>>()?;
    let r = spaces.len();
    let counts: Vec<usize> = spaces.iter().map(CosetSpace::len).collect();
    let mut inc: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(r);
    for j in 0..r {
        let mut row = Vec::with_capacity(r);
        for i in 0..r {
            if i == j {
                row.push(vec![Vec::new(); counts[j]]);
                continue;
            }
            // base coset of type j meets exactly the G_j-orbit of the base coset of type i;
            // the coset w∘G_j meets its image under w
            let mut lists: Vec<Vec<u32>> = Vec::with_capacity(counts[j]);
            lists.push(spaces[i].orbit_of_base(subgroups[j].generators()));
            for b in 1..counts[j] {
                let (p, t) = spaces[j].parent[b].expect("non-root coset");
                let act = spaces[i].action(t as usize);
                let mut l: Vec<u32> = lists[p as usize].iter().map(|&x| act[x as usize]).collect();
                l.sort_unstable();
                lists.push(l);
            }
            row.push(lists);
        }
        inc.push(row);
    }
    Ok(CosetGeometry { group: g.clone(), spaces, system: IncidenceSystem { counts, inc } })
}

impl CosetGeometry {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.spaces.len()
    }

    pub fn space(&self, i: usize) -> &CosetSpace {
        &self.spaces[i]
    }

    pub fn system(&self) -> &IncidenceSystem {
        &self.system
    }

    /// The chamber `{G_0, …, G_{r-1}}` of identity cosets.
    pub fn base_chamber(&self) -> Flag {
        Flag((0..self.rank()).map(|i| (i, 0)).collect())
    }

    /// `∩ G_i`, the stabiliser of the base chamber.
    pub fn borel(&self) -> Result<PermGroup> {
        let mut acc = self.group.clone();
        for s in &self.spaces {
            acc = intersection(&acc, s.subgroup())?;
        }
        Ok(acc)
    }

    /// Incidence of two elements decided from representatives by
    /// [`cosets_intersect`], independently of the precomputed lists.
    pub fn incident_by_elements(&self, x: Element, y: Element) -> bool {
        cosets_intersect(
            self.spaces[x.0].rep(x.1 as usize),
            self.spaces[x.0].subgroup(),
            self.spaces[y.0].rep(y.1 as usize),
            self.spaces[y.0].subgroup(),
        )
    }

    pub fn to_dot(&self) -> String {
        self.system.to_dot("incidence")
    }
}

/// Whether `g1 ∘ H1` and `g2 ∘ H2` meet, i.e. `g2⁻¹ g1 ∈ H2 H1`. Enumerates
/// the smaller subgroup and sifts through the other.
pub fn cosets_intersect(g1: &Permutation, h1: &PermGroup, g2: &Permutation, h2: &PermGroup) -> bool {
    if h1.order() <= h2.order() {
        // some h ∈ H1 with g2⁻¹ g1 h ∈ H2
        let x = g2.inverse().after(g1);
        h1.elements().any(|h| h2.contains(&x.after(&h)))
    } else {
        let x = g1.inverse().after(g2);
        h2.elements().any(|h| h1.contains(&x.after(&h)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        let gens: Vec<_> = gens.iter().map(|s| perm(n, s)).collect();
        PermGroup::new(n, &gens).unwrap()
    }

    fn triangle() -> CosetGeometry {
        let g = PermGroup::symmetric(3);
        build_geometry(&g, &[group(3, &["(0 1)"]), group(3, &["(1 2)"])]).unwrap()
    }

    #[test]
    fn triangle_is_a_hexagon() {
        let geo = triangle();
        let sys = geo.system();
        assert_eq!(sys.counts(), &[3, 3]);
        assert_eq!(sys.incident_pairs(), 6);
        for k in 0..3 {
            assert_eq!(sys.incident((0, k), 1).len(), 2);
            assert_eq!(sys.incident((1, k), 0).len(), 2);
        }
    }

    #[test]
    fn lists_match_element_test() {
        let g = PermGroup::symmetric(5);
        let subs = [group(5, &["(0 1)", "(1 2)"]), group(5, &["(2 3)", "(3 4)"]), group(5, &["(0 1)", "(3 4)"])];
        let geo = build_geometry(&g, &subs).unwrap();
        let sys = geo.system();
        for i in 0..3 {
            assert_eq!(sys.count(i) as u128 * subs[i].order(), 120);
            for j in 0..3 {
                if i == j {
                    continue;
                }
                for a in 0..sys.count(i) as u32 {
                    for b in 0..sys.count(j) as u32 {
                        assert_eq!(sys.is_incident((i, a), (j, b)), geo.incident_by_elements((i, a), (j, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn coset_intersection_examples() {
        let h1 = group(3, &["(0 1)"]);
        let h2 = group(3, &["(1 2)"]);
        let id = Permutation::identity(3);
        assert!(cosets_intersect(&id, &h1, &id, &h1));
        assert!(!cosets_intersect(&id, &h1, &perm(3, "(0 2)"), &h1));
        assert!(cosets_intersect(&id, &h1, &id, &h2));
    }

    #[test]
    fn dihedral_square() {
        // ρ0 = (1 2), ρ1 = (0 1)(2 3) generate a dihedral group of order 8
        let r0 = perm(4, "(1 2)");
        let r1 = perm(4, "(0 1)(2 3)");
        let g = PermGroup::new(4, &[r0.clone(), r1.clone()]).unwrap();
        assert_eq!(g.order(), 8);
        let geo = build_geometry(&g, &[PermGroup::new(4, &[r1]).unwrap(), PermGroup::new(4, &[r0]).unwrap()]).unwrap();
        assert_eq!(geo.system().counts(), &[4, 4]);
        assert_eq!(geo.system().incident_pairs(), 8);
    }

    #[test]
    fn rejects_non_subgroup_and_overflow() {
        let g = group(4, &["(0 1)", "(2 3)"]);
        let h = group(4, &["(1 2)"]);
        assert_eq!(build_geometry(&g, &[h]).unwrap_err(), Error::NotASubgroup);
        let s = PermGroup::symmetric(6);
        let t = PermGroup::trivial(6);
        assert!(matches!(build_geometry_with_limit(&s, &[t], 100), Err(Error::IndexOverflow(720, 100))));
    }

    #[test]
    fn from_pairs_validation() {
        assert!(IncidenceSystem::from_pairs(vec![1, 1], &[((0, 0), (0, 0))]).is_err());
        let sys = IncidenceSystem::from_pairs(vec![1, 1], &[((0, 0), (1, 0))]).unwrap();
        assert!(sys.is_flag(&Flag(vec![(0, 0), (1, 0)])));
        assert!(sys.to_dot("x").contains("t0_0 -- t1_0"));
    }
}
