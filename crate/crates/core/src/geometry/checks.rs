//! Residues, chambers, thinness, residual connectedness and the geometry
//! condition, computed from explicit incidence lists.

use std::collections::VecDeque;

use super::{Element, Flag, IncidenceSystem};
use crate::error::{Error, Result};

/// Which flags of a given type are examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagScope {
    /// Only the flag of base elements (index 0 of each type). Sound for a
    /// coset geometry once flag-transitivity is known.
    Base,
    /// Flags through the base element of their least type. Sound for any
    /// coset geometry, since the group is transitive on each type.
    Anchored,
    /// Every flag.
    All,
}

/// Elements incident to every element of a flag, grouped by type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub types: Vec<usize>,
    pub elements: Vec<Vec<u32>>,
}

impl Residue {
    pub fn rank(&self) -> usize {
        self.types.len()
    }

    pub fn size(&self) -> usize {
        self.elements.iter().map(Vec::len).sum()
    }
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn spend(budget: &mut u128, limit: u128) -> Result<()> {
    if *budget == 0 {
        return Err(Error::ChamberOverflow(limit));
    }
    *budget -= 1;
    Ok(())
}

impl IncidenceSystem {
    /// Type-`i` elements incident to every element of `flag`.
    pub fn candidates(&self, flag: &[Element], i: usize) -> Vec<u32> {
        let mut lists: Vec<&[u32]> = flag.iter().map(|&x| self.incident(x, i)).collect();
        lists.sort_by_key(|l| l.len());
        match lists.split_first() {
            None => (0..self.count(i) as u32).collect(),
            Some((first, rest)) => rest.iter().fold(first.to_vec(), |acc, l| intersect(&acc, l)),
        }
    }

    pub fn residue(&self, flag: &Flag) -> Residue {
        let used = flag.types();
        let types: Vec<usize> = (0..self.rank()).filter(|t| !used.contains(t)).collect();
        let elements = types.iter().map(|&i| self.candidates(&flag.0, i)).collect();
        Residue { types, elements }
    }

    /// Flags whose type set is `types` (sorted), restricted by `scope`.
    pub fn flags_of_type(&self, types: &[usize], scope: FlagScope, limit: u128) -> Result<Vec<Flag>> {
        let Some((&first, rest)) = types.split_first() else {
            return Ok(vec![Flag(Vec::new())]);
        };
        let roots: Vec<u32> = match scope {
            FlagScope::Base => return Ok(vec![Flag(types.iter().map(|&t| (t, 0)).collect())]),
            FlagScope::Anchored => vec![0],
            FlagScope::All => (0..self.count(first) as u32).collect(),
        };
        let mut out = Vec::new();
        let mut budget = limit;
        for x in roots {
            let mut flag = vec![(first, x)];
            self.extend_flags(&mut flag, rest, &mut out, &mut budget, limit)?;
        }
        Ok(out)
    }

    fn extend_flags(
        &self,
        flag: &mut Vec<Element>,
        rest: &[usize],
        out: &mut Vec<Flag>,
        budget: &mut u128,
        limit: u128,
    ) -> Result<()> {
        let Some((&t, tail)) = rest.split_first() else {
            spend(budget, limit)?;
            out.push(Flag(flag.clone()));
            return Ok(());
        };
        for x in self.candidates(flag, t) {
            flag.push((t, x));
            self.extend_flags(flag, tail, out, budget, limit)?;
            flag.pop();
        }
        Ok(())
    }

    /// Chambers containing `prefix`.
    pub fn count_chambers_through(&self, prefix: &Flag, limit: u128) -> Result<u128> {
        let used = prefix.types();
        let free: Vec<usize> = (0..self.rank()).filter(|t| !used.contains(t)).collect();
        let cands: Vec<Vec<u32>> = free.iter().map(|&i| self.candidates(&prefix.0, i)).collect();
        let mut budget = limit;
        self.count_rec(&free, cands, &mut budget, limit)
    }

    /// All chambers.
    pub fn count_chambers(&self, limit: u128) -> Result<u128> {
        self.count_chambers_through(&Flag(Vec::new()), limit)
    }

    // forward checking: every remaining type keeps its candidate list, the
    // type with the fewest candidates is branched on first
    fn count_rec(&self, free: &[usize], cands: Vec<Vec<u32>>, budget: &mut u128, limit: u128) -> Result<u128> {
        if free.is_empty() {
            spend(budget, limit)?;
            return Ok(1);
        }
        if free.len() == 1 {
            let c = cands[0].len() as u128;
            if c > *budget {
                return Err(Error::ChamberOverflow(limit));
            }
            *budget -= c;
            return Ok(c);
        }
        let pick = (0..free.len()).min_by_key(|&k| cands[k].len()).expect("non-empty");
        let t = free[pick];
        let rest: Vec<usize> = free.iter().copied().filter(|&u| u != t).collect();
        let mut total = 0;
        'outer: for &x in &cands[pick] {
            let mut next = Vec::with_capacity(rest.len());
            for (k, &u) in free.iter().enumerate() {
                if k == pick {
                    continue;
                }
                let c = intersect(&cands[k], self.incident((t, x), u));
                if c.is_empty() {
                    continue 'outer;
                }
                next.push(c);
            }
            total += self.count_rec(&rest, next, budget, limit)?;
        }
        Ok(total)
    }

    /// A maximal flag that is not a chamber, if any. With `anchored` only
    /// flags through the base element of their least type are visited.
    pub fn maximal_non_chamber(&self, anchored: bool, limit: u128) -> Result<Option<Flag>> {
        let r = self.rank();
        let mut budget = limit;
        for t in 0..r {
            let roots: Vec<u32> = if anchored { vec![0] } else { (0..self.count(t) as u32).collect() };
            for x in roots {
                let cands: Vec<Option<Vec<u32>>> =
                    (0..r).map(|v| (v != t).then(|| self.incident((t, x), v).to_vec())).collect();
                let mut flag = vec![(t, x)];
                if let Some(f) = self.max_rec(&mut flag, cands, t, &mut budget, limit)? {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }

    fn max_rec(
        &self,
        flag: &mut Vec<Element>,
        cands: Vec<Option<Vec<u32>>>,
        last: usize,
        budget: &mut u128,
        limit: u128,
    ) -> Result<Option<Flag>> {
        spend(budget, limit)?;
        let r = self.rank();
        if flag.len() < r && cands.iter().all(|c| c.as_ref().is_none_or(Vec::is_empty)) {
            return Ok(Some(Flag(flag.clone())));
        }
        for u in last + 1..r {
            let Some(cu) = &cands[u] else { continue };
            for &x in cu {
                let next: Vec<Option<Vec<u32>>> = (0..r)
                    .map(|v| match &cands[v] {
                        Some(c) if v != u => Some(intersect(c, self.incident((u, x), v))),
                        _ => None,
                    })
                    .collect();
                flag.push((u, x));
                let found = self.max_rec(flag, next, u, budget, limit)?;
                flag.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    /// Thinness through rank-2 residues: inside the residue of each flag of
    /// corank 2, every element meets exactly two elements of the other type.
    /// Returns a corank-1 flag whose residue does not have two elements.
    pub fn thin_witness(&self, scope: FlagScope, limit: u128) -> Result<Option<Flag>> {
        let r = self.rank();
        for i in 0..r {
            for j in i + 1..r {
                let others: Vec<usize> = (0..r).filter(|&t| t != i && t != j).collect();
                for f in self.flags_of_type(&others, scope, limit)? {
                    let ri = self.candidates(&f.0, i);
                    let rj = self.candidates(&f.0, j);
                    for (s, own, other) in [(i, &ri, &rj), (j, &rj, &ri)] {
                        let t = if s == i { j } else { i };
                        for &x in own {
                            if intersect(self.incident((s, x), t), other).len() != 2 {
                                let mut w = f.0.clone();
                                w.push((s, x));
                                return Ok(Some(Flag(w)));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Thinness checked on every corank-1 flag directly.
    pub fn thin_witness_corank1(&self, scope: FlagScope, limit: u128) -> Result<Option<Flag>> {
        let r = self.rank();
        for i in 0..r {
            let others: Vec<usize> = (0..r).filter(|&t| t != i).collect();
            for f in self.flags_of_type(&others, scope, limit)? {
                if self.candidates(&f.0, i).len() != 2 {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }

    pub fn residue_is_connected(&self, res: &Residue) -> bool {
        let total = res.size();
        if total == 0 {
            return true;
        }
        let mut member: Vec<Vec<bool>> = self.counts().iter().map(|&c| vec![false; c]).collect();
        for (k, &t) in res.types.iter().enumerate() {
            for &x in &res.elements[k] {
                member[t][x as usize] = true;
            }
        }
        let start = res
            .types
            .iter()
            .zip(&res.elements)
            .find_map(|(&t, e)| e.first().map(|&x| (t, x)))
            .expect("non-empty residue");
        let mut seen = member.iter().map(|m| vec![false; m.len()]).collect::<Vec<_>>();
        seen[start.0][start.1 as usize] = true;
        let mut reached = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &u in &res.types {
                if u == x.0 {
                    continue;
                }
                for &y in self.incident(x, u) {
                    let y = y as usize;
                    if member[u][y] && !seen[u][y] {
                        seen[u][y] = true;
                        reached += 1;
                        queue.push_back((u, y as u32));
                    }
                }
            }
        }
        reached == total
    }

    /// A flag of corank at least 2 (possibly empty) whose residue is
    /// disconnected.
    pub fn rc_witness(&self, scope: FlagScope, limit: u128) -> Result<Option<Flag>> {
        let r = self.rank();
        if r < 2 {
            return Ok(None);
        }
        for mask in 0u64..(1 << r) {
            if r - (mask.count_ones() as usize) < 2 {
                continue;
            }
            let types: Vec<usize> = (0..r).filter(|&t| mask >> t & 1 == 1).collect();
            for f in self.flags_of_type(&types, scope, limit)? {
                if !self.residue_is_connected(&self.residue(&f)) {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }
}
