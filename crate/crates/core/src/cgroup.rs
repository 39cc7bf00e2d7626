//! Intersection-property checks for groups generated by involutions.
//!
//! A pair of generator subsets `(J, K)` satisfies the property when
//! `⟨J⟩ ∩ ⟨K⟩ = ⟨J ∩ K⟩`. Since `⟨J ∩ K⟩` is always contained in the
//! intersection, the test compares orders: the orbit of the trivial coset
//! of `⟨K⟩` under `⟨J⟩` has length `|⟨J⟩ : ⟨J⟩ ∩ ⟨K⟩|`. While walking that
//! orbit, every Schreier element lies in `⟨J⟩ ∩ ⟨K⟩`, so the first one
//! outside `⟨J ∩ K⟩` is a witness.

use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest rank accepted by [`CGroupCandidate::is_c_group_full`].
pub const MAX_FULL_RANK: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    #[serde(serialize_with = "display")]
    pub element: Permutation,
}

fn display<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Full,
    Recursive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CGroupReport {
    #[serde(rename = "c_group")]
    pub is_c_group: bool,
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub method: Method,
}

impl CGroupReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Involution generators together with a memo of the subgroups they span.
#[derive(Debug)]
pub struct CGroupCandidate {
    degree: usize,
    gens: Vec<Permutation>,
    subgroups: RefCell<HashMap<u64, Rc<PermGroup>>>,
    verified: RefCell<HashMap<u64, Option<Witness>>>,
    /// Re-check the rank-2 base case of the recursion with the full test.
    pub verify_base_cases: bool,
}

impl CGroupCandidate {
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens.first().map_or(1, |g| g.degree());
        if gens.len() > 64 {
            return Err(Error::RankTooLarge(gens.len()));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if !g.is_involution() {
                return Err(Error::NotAnInvolution { index: i, perm: g.to_string() });
            }
            if let Some(j) = gens[..i].iter().position(|h| h == g) {
                return Err(Error::RepeatedGenerator(j, i));
            }
        }
        Ok(CGroupCandidate {
            degree,
            gens,
            subgroups: RefCell::new(HashMap::new()),
            verified: RefCell::new(HashMap::new()),
            verify_base_cases: cfg!(debug_assertions),
        })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    fn full_mask(&self) -> u64 {
        if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        }
    }

    /// `⟨gens[i] : i ∈ mask⟩`, memoised. Chains use base `0, 1, …` so that
    /// coset minima are available.
    pub fn subgroup(&self, mask: u64) -> Rc<PermGroup> {
        if let Some(g) = self.subgroups.borrow().get(&mask) {
            return Rc::clone(g);
        }
        let gens: Vec<Permutation> = mask_to_indices(mask).iter().map(|&i| self.gens[i].clone()).collect();
        let prefix: Vec<usize> = (0..self.degree.saturating_sub(1)).collect();
        let g = Rc::new(PermGroup::with_base_prefix(self.degree, &gens, &prefix).expect("checked degrees"));
        self.subgroups.borrow_mut().insert(mask, Rc::clone(&g));
        g
    }

    /// `Γ_J`: the subgroup generated by every generator not in `omit`.
    pub fn parabolic(&self, omit: &[usize]) -> PermGroup {
        let mut mask = self.full_mask();
        for &i in omit {
            mask &= !(1u64 << i);
        }
        (*self.subgroup(mask)).clone()
    }

    pub fn group(&self) -> Rc<PermGroup> {
        self.subgroup(self.full_mask())
    }

    /// Checks `⟨J⟩ ∩ ⟨K⟩ = ⟨J ∩ K⟩`, returning a witness when it fails.
    pub fn check_pair(&self, j: u64, k: u64) -> Option<Witness> {
        if j & !k == 0 || k & !j == 0 {
            return None;
        }
        let (gj, gk) = (self.subgroup(j), self.subgroup(k));
        let meet = self.subgroup(j & k);
        // act with the smaller group on cosets of the larger
        let (act_mask, act, on) = if gj.order() <= gk.order() { (j, &gj, &gk) } else { (k, &gk, &gj) };
        let expected = act.order() / meet.order();
        let gens: Vec<&Permutation> = mask_to_indices(act_mask).into_iter().map(|i| &self.gens[i]).collect();
        let id = Permutation::identity(self.degree);
        let mut reps: HashMap<Permutation, Permutation> = HashMap::from([(on.min_in_coset(&id), id.clone())]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for t in &gens {
                let y = t.after(&x);
                let key = on.min_in_coset(&y);
                match reps.get(&key) {
                    None => {
                        reps.insert(key, y.clone());
                        if reps.len() as u128 == expected {
                            return None;
                        }
                        queue.push_back(y);
                    }
                    Some(r) => {
                        let s = r.inverse().after(&y);
                        if !meet.contains(&s) {
                            return Some(Witness { j: mask_to_indices(j), k: mask_to_indices(k), element: s });
                        }
                    }
                }
            }
        }
        debug_assert_eq!(reps.len() as u128, expected);
        None
    }

    /// Eq. (1) over every pair of generator subsets.
    pub fn is_c_group_full(&self) -> Result<CGroupReport> {
        if self.rank() > MAX_FULL_RANK {
            return Err(Error::RankTooLarge(self.rank()));
        }
        Ok(self.full_on(self.full_mask(), Method::Full))
    }

    fn full_on(&self, top: u64, method: Method) -> CGroupReport {
        let subsets: Vec<u64> = (0..=top).filter(|m| m & !top == 0).collect();
        for (a, &j) in subsets.iter().enumerate() {
            for &k in &subsets[a + 1..] {
                if let Some(w) = self.check_pair(j, k) {
                    return CGroupReport { is_c_group: false, witness: Some(w), method };
                }
            }
        }
        CGroupReport { is_c_group: true, witness: None, method }
    }

    /// Recursion over maximal parabolics: a group whose maximal parabolics
    /// are C-groups is one iff `Γ_i ∩ Γ_j = Γ_{i,j}` for all `i, j`.
    pub fn is_c_group_recursive(&self) -> CGroupReport {
        let witness = self.recurse(self.full_mask());
        CGroupReport { is_c_group: witness.is_none(), witness, method: Method::Recursive }
    }

    fn recurse(&self, mask: u64) -> Option<Witness> {
        if let Some(w) = self.verified.borrow().get(&mask) {
            return w.clone();
        }
        let idx = mask_to_indices(mask);
        let result = if idx.len() <= 2 {
            // distinct involutions generate a dihedral group, which has the property
            if self.verify_base_cases {
                let r = self.full_on(mask, Method::Recursive);
                assert!(r.is_c_group, "rank-2 base case failed: {:?}", r.witness);
            }
            None
        } else {
            let mut found = idx.iter().find_map(|&i| self.recurse(mask & !(1u64 << i)));
            if found.is_none() {
                'pairs: for (a, &i) in idx.iter().enumerate() {
                    for &j in &idx[a + 1..] {
                        if let Some(w) = self.check_pair(mask & !(1u64 << i), mask & !(1u64 << j)) {
                            found = Some(w);
                            break 'pairs;
                        }
                    }
                }
            }
            found
        };
        self.verified.borrow_mut().insert(mask, result.clone());
        result
    }

    /// Checks that a witness is genuine: in `⟨J⟩` and `⟨K⟩` but not `⟨J ∩ K⟩`.
    pub fn witness_is_valid(&self, w: &Witness) -> bool {
        let to_mask = |v: &[usize]| v.iter().fold(0u64, |m, &i| m | 1 << i);
        let (j, k) = (to_mask(&w.j), to_mask(&w.k));
        self.subgroup(j).contains(&w.element)
            && self.subgroup(k).contains(&w.element)
            && !self.subgroup(j & k).contains(&w.element)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn moore(n: usize) -> Vec<Permutation> {
        (0..n - 1).map(|i| Permutation::transposition(n, i, i + 1)).collect()
    }

    #[test]
    fn moore_s5_is_c_group() {
        let c = CGroupCandidate::new(moore(5)).unwrap();
        assert!(c.is_c_group_full().unwrap().is_c_group);
        assert!(c.is_c_group_recursive().is_c_group);
    }

    #[test]
    fn distance_two_configuration_fails() {
        // i-edges {0,1} and {5,6} joined by a path carrying l and j
        let ri = perm(7, "(0 1)(5 6)");
        let rl = perm(7, "(1 2)");
        let rj = perm(7, "(4 5)");
        let c = CGroupCandidate::new(vec![ri, rl, rj]).unwrap();
        let r = c.is_c_group_full().unwrap();
        assert!(!r.is_c_group);
        let w = r.witness.clone().unwrap();
        assert!(c.witness_is_valid(&w));
        // ⟨ρi, ρj⟩ ∩ ⟨ρi, ρl⟩ contains (0 1)
        let sub = |v: &[usize]| c.subgroup(v.iter().fold(0u64, |m, &i| m | 1 << i));
        let t = perm(7, "(0 1)");
        assert!(sub(&[0, 2]).contains(&t) && sub(&[0, 1]).contains(&t) && !sub(&[0]).contains(&t));
        assert!(!c.is_c_group_recursive().is_c_group);
    }

    #[test]
    fn single_involution() {
        let c = CGroupCandidate::new(vec![perm(3, "(0 2)")]).unwrap();
        assert!(c.is_c_group_full().unwrap().is_c_group);
        assert!(c.is_c_group_recursive().is_c_group);
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(
            CGroupCandidate::new(vec![perm(3, "(0 1 2)")]),
            Err(Error::NotAnInvolution { index: 0, .. })
        ));
        assert!(matches!(
            CGroupCandidate::new(vec![perm(3, "(0 1)"), perm(3, "(0 1)")]),
            Err(Error::RepeatedGenerator(0, 1))
        ));
        assert!(CGroupCandidate::new(vec![Permutation::identity(3)]).is_err());
    }

    #[test]
    fn parabolics() {
        let c = CGroupCandidate::new(moore(5)).unwrap();
        assert_eq!(c.parabolic(&[]).order(), 120);
        assert_eq!(c.parabolic(&[0, 1, 2, 3]).order(), 1);
        assert_eq!(c.parabolic(&[3]).order(), 24);
    }

    #[test]
    fn json_shape() {
        let c = CGroupCandidate::new(moore(4)).unwrap();
        assert_eq!(c.is_c_group_full().unwrap().to_json(), r#"{"c_group":true,"witness":null}"#);
        let bad = CGroupCandidate::new(vec![perm(7, "(0 1)(5 6)"), perm(7, "(1 2)"), perm(7, "(4 5)")]).unwrap();
        let json = bad.is_c_group_full().unwrap().to_json();
        assert!(json.starts_with(r#"{"c_group":false,"witness":{"J":["#), "{json}");
    }

    #[test]
    fn rank_limit() {
        let c = CGroupCandidate::new(moore(14)).unwrap();
        assert!(matches!(c.is_c_group_full(), Err(Error::RankTooLarge(13))));
    }
}
