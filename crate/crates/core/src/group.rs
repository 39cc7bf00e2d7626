//! Permutation groups backed by a deterministic Schreier–Sims stabilizer chain.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

/// Default cutoff for [`IntersectionStrategy::Auto`]: below this many
/// elements the smaller group is enumerated.
pub const DEFAULT_ENUMERATION_THRESHOLD: u128 = 2_000_000;

/// One level of a stabilizer chain: `G^(i)`, the pointwise stabilizer of the
/// earlier base points, acting on the orbit of `base`.
#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    slot: Vec<u32>,
    // reps[k] maps base to orbit[k]
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base] = 0;
        let id = Permutation::identity(degree);
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![id.clone()],
            inv_reps: vec![id],
        }
    }

    #[inline]
    fn index_of(&self, point: usize) -> Option<usize> {
        match self.slot[point] {
            NONE => None,
            k => Some(k as usize),
        }
    }

    fn push_point(&mut self, point: usize, rep: Permutation) {
        self.slot[point] = self.orbit.len() as u32;
        self.orbit.push(point);
        self.inv_reps.push(rep.inverse());
        self.reps.push(rep);
    }
}

/// A permutation group given by generators, with its stabilizer chain.
///
/// Base points are chosen as the smallest point moved by the first strong
/// generator that needs a new level, so the chain depends only on the
/// generator order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self> {
        PermGroup::with_base_prefix(degree, gens, &[])
    }

    /// Builds the chain so that its base starts with `prefix` (levels with a
    /// trivial orbit are kept).
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        for &b in prefix {
            if b >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
        }
        let mut group = PermGroup {
            degree,
            generators: Vec::new(),
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        for g in gens {
            group.add_generator(g.clone());
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), levels: Vec::new() }
    }

    /// Symmetric group generated by the adjacent transpositions.
    pub fn symmetric(degree: usize) -> Self {
        let gens: Vec<_> = (0..degree.saturating_sub(1))
            .map(|i| Permutation::transposition(degree, i, i + 1))
            .collect();
        PermGroup::new(degree, &gens).expect("valid generators")
    }

    /// Adds a generator, extending the chain in place.
    pub fn add_generator(&mut self, g: Permutation) {
        assert_eq!(g.degree(), self.degree);
        self.generators.push(g.clone());
        let (residue, level) = self.sift_from(0, g);
        if !residue.is_identity() {
            self.add_strong(0, level, residue);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Strong generators of the whole group (those stored at level 0, plus
    /// deeper ones that were only pushed below it).
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for lv in &self.levels {
            for g in &lv.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Basic orbit lengths, one per level.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128).expect("group order overflows u128")
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Membership by sifting.
    pub fn contains(&self, p: &Permutation) -> bool {
        assert_eq!(p.degree(), self.degree, "degree mismatch in contains");
        self.sift_from(0, p.clone()).0.is_identity()
    }

    pub fn try_contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.contains(p))
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, &self.generators)
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        orbit_of(point, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Iterates over all elements, in chain order.
    pub fn elements(&self) -> Elements<'_> {
        Elements::new(self)
    }

    /// Generators of the pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let rebased = PermGroup::with_base_prefix(self.degree, &self.generators, points)
            .expect("points checked by caller");
        let gens = rebased
            .levels
            .get(points.len())
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        PermGroup::new(self.degree, &gens).expect("same degree")
    }

    /// Lexicographically least element (by image sequence) of `g ∘ self`.
    ///
    /// Requires the chain to have base `0, 1, …, n-1` as a prefix; use
    /// [`PermGroup::with_lex_base`].
    pub fn min_in_coset(&self, g: &Permutation) -> Permutation {
        debug_assert!(self.levels.iter().enumerate().all(|(i, l)| l.base == i));
        let mut x = g.clone();
        for lv in &self.levels {
            let (best, _) = lv
                .orbit
                .iter()
                .enumerate()
                .min_by_key(|(_, &d)| x.apply(d))
                .expect("orbit is non-empty");
            if best != 0 {
                x = x.after(&lv.reps[best]);
            }
        }
        x
    }

    /// The same group with base `0, 1, …, n-2`, as needed by [`PermGroup::min_in_coset`].
    pub fn with_lex_base(&self) -> PermGroup {
        let prefix: Vec<usize> = (0..self.degree.saturating_sub(1)).collect();
        PermGroup::with_base_prefix(self.degree, &self.generators, &prefix).expect("valid")
    }

    /// Sifts `g` through levels `start..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, start: usize, mut g: Permutation) -> (Permutation, usize) {
        for i in start..self.levels.len() {
            let lv = &self.levels[i];
            match lv.index_of(g.apply(lv.base)) {
                None => return (g, i),
                Some(0) => {}
                Some(k) => g = lv.inv_reps[k].after(&g),
            }
        }
        let end = self.levels.len();
        (g, end)
    }

    /// Pushes `g` (which fixes the base points before `from`) into levels
    /// `from..=to` and closes the affected orbits.
    fn add_strong(&mut self, from: usize, to: usize, g: Permutation) {
        if to == self.levels.len() {
            let b = g.first_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        let mut idx = Vec::with_capacity(to + 1 - from);
        for i in from..=to {
            self.levels[i].gens.push(g.clone());
            idx.push(self.levels[i].gens.len() - 1);
        }
        for i in (from..=to).rev() {
            self.extend_level(i, idx[i - from]);
        }
    }

    fn extend_level(&mut self, i: usize, gen_idx: usize) {
        let s = self.levels[i].gens[gen_idx].clone();
        let old_len = self.levels[i].orbit.len();
        for k in 0..old_len {
            self.process_pair(i, k, &s);
        }
        let mut k = old_len;
        while k < self.levels[i].orbit.len() {
            let ngens = self.levels[i].gens.len();
            for gi in 0..ngens {
                let t = self.levels[i].gens[gi].clone();
                self.process_pair(i, k, &t);
            }
            k += 1;
        }
    }

    fn process_pair(&mut self, i: usize, k: usize, s: &Permutation) {
        let lv = &self.levels[i];
        let beta = lv.orbit[k];
        let gamma = s.apply(beta);
        let t = s.after(&lv.reps[k]);
        match lv.index_of(gamma) {
            None => self.levels[i].push_point(gamma, t),
            Some(j) => {
                let schreier = lv.inv_reps[j].after(&t);
                if schreier.is_identity() {
                    return;
                }
                let (residue, level) = self.sift_from(i + 1, schreier);
                if !residue.is_identity() {
                    self.add_strong(i + 1, level, residue);
                }
            }
        }
    }
}

/// Iterator over group elements as products `u_0 ∘ u_1 ∘ … ∘ u_{m-1}` of
/// transversal elements.
pub struct Elements<'a> {
    group: &'a PermGroup,
    counters: Vec<usize>,
    prefix: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let m = group.levels.len();
        let mut prefix = Vec::with_capacity(m + 1);
        prefix.push(Permutation::identity(group.degree));
        for i in 0..m {
            let next = prefix[i].after(&group.levels[i].reps[0]);
            prefix.push(next);
        }
        Elements { group, counters: vec![0; m], prefix, done: false }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let m = self.counters.len();
        let out = self.prefix[m].clone();
        // advance the odometer, last level fastest
        let mut i = m;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counters[i] += 1;
            if self.counters[i] < self.group.levels[i].orbit.len() {
                break;
            }
            self.counters[i] = 0;
        }
        if !self.done {
            for j in i..m {
                let next = self.prefix[j].after(&self.group.levels[j].reps[self.counters[j]]);
                self.prefix[j + 1] = next;
            }
        }
        Some(out)
    }
}

/// The finest partition of `{0, …, n-1}` closed under `gens`, each class
/// ascending, classes ordered by least element.
pub fn orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    classes
}

pub fn orbit_of(point: usize, gens: &[Permutation]) -> Vec<usize> {
    let degree = gens.first().map_or(point + 1, |g| g.degree());
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut out = vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionStrategy {
    /// Enumerate when the smaller group has at most `threshold` elements,
    /// otherwise backtrack.
    Auto { threshold: u128 },
    Enumerate,
    Backtrack,
}

impl Default for IntersectionStrategy {
    fn default() -> Self {
        IntersectionStrategy::Auto { threshold: DEFAULT_ENUMERATION_THRESHOLD }
    }
}

pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    intersection_with(a, b, IntersectionStrategy::default())
}

pub fn intersection_with(a: &PermGroup, b: &PermGroup, strategy: IntersectionStrategy) -> Result<PermGroup> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree, b.degree));
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if large.contains_group(small) {
        return Ok(small.clone());
    }
    let enumerate = match strategy {
        IntersectionStrategy::Enumerate => true,
        IntersectionStrategy::Backtrack => false,
        IntersectionStrategy::Auto { threshold } => small.order() <= threshold,
    };
    Ok(if enumerate {
        intersect_by_enumeration(small, large)
    } else {
        intersect_by_backtrack(small, large)
    })
}

fn intersect_by_enumeration(small: &PermGroup, large: &PermGroup) -> PermGroup {
    let mut result = PermGroup::trivial(small.degree);
    for g in small.elements() {
        if !g.is_identity() && large.contains(&g) && !result.contains(&g) {
            result.add_generator(g);
        }
    }
    result
}

/// Level-by-level search: `A^(d) ∩ B^(d)` is built from `A^(d+1) ∩ B^(d+1)`
/// plus one element for each new point in the orbit of the `d`-th base point.
/// `B` is rebased onto `A`'s base so that partial base images can be tested
/// against `B` by sifting.
fn intersect_by_backtrack(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let base = a.base();
    let b = PermGroup::with_base_prefix(b.degree, &b.generators, &base).expect("same degree");
    let m = base.len();
    let mut found: Vec<Permutation> = Vec::new();
    for d in (0..m).rev() {
        let mut orbit = orbit_of(base[d], &found);
        let mut in_orbit = vec![false; a.degree];
        for &x in &orbit {
            in_orbit[x] = true;
        }
        let candidates = a.levels[d].orbit.clone();
        for (k, &gamma) in candidates.iter().enumerate() {
            if in_orbit[gamma] {
                continue;
            }
            let Some(j) = b.levels[d].index_of(gamma) else { continue };
            let h = a.levels[d].reps[k].clone();
            let residue = b.levels[d].inv_reps[j].after(&h);
            if let Some(g) = search(a, &b, d + 1, h, residue) {
                found.push(g);
                orbit = orbit_of(base[d], &found);
                for &x in &orbit {
                    in_orbit[x] = true;
                }
            }
        }
    }
    let mut group = PermGroup::trivial(a.degree);
    for g in found {
        group.add_generator(g);
    }
    group
}

fn search(a: &PermGroup, b: &PermGroup, e: usize, h: Permutation, residue: Permutation) -> Option<Permutation> {
    if e == a.levels.len() {
        let (r, _) = b.sift_from(e, residue);
        return r.is_identity().then_some(h);
    }
    let la = &a.levels[e];
    let lb = &b.levels[e];
    for (k, u) in la.reps.iter().enumerate() {
        let _ = k;
        let r = residue.after(u);
        let Some(j) = lb.index_of(r.apply(lb.base)) else { continue };
        let r = lb.inv_reps[j].after(&r);
        if let Some(g) = search(a, b, e + 1, h.after(u), r) {
            return Some(g);
        }
    }
    None
}
