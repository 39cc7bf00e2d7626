//! Flag-transitivity: direct chamber enumeration, the product-set criterion
//! on cosets of one subgroup, and an incremental check that extends a
//! flag-transitive geometry by one type at a time.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::{build_geometry_with_limit, CosetGeometry, CosetSpace, Flag, DEFAULT_CHAMBER_LIMIT, DEFAULT_COSET_LIMIT};
use crate::error::{Error, Result};
use crate::group::{intersection, PermGroup};

impl CosetGeometry {
    /// Number of chambers: the group is transitive on each type, so it is
    /// the number through one base element times the size of its type.
    pub fn chamber_count(&self, limit: u128) -> Result<u128> {
        let sys = self.system();
        let Some(t) = (0..self.rank()).max_by_key(|&t| sys.count(t)) else {
            return Ok(1);
        };
        let through = sys.count_chambers_through(&Flag(vec![(t, 0)]), limit)?;
        let total = through * sys.count(t) as u128;
        if total > limit {
            return Err(Error::ChamberOverflow(limit));
        }
        Ok(total)
    }

    /// A maximal flag that is not a chamber, searched up to the group action.
    pub fn geometry_witness(&self, limit: u128) -> Result<Option<Flag>> {
        self.system().maximal_non_chamber(true, limit)
    }

    /// Every flag lies in a chamber and the chambers form one orbit, i.e.
    /// their number is `|G : ∩ G_i|`.
    pub fn is_flag_transitive_direct(&self, limit: u128) -> Result<bool> {
        if self.geometry_witness(limit)?.is_some() {
            return Ok(false);
        }
        let borel = self.borel()?;
        Ok(self.chamber_count(limit)? == self.group().order() / borel.order())
    }
}

/// How rank-3 systems are decided inside the incremental check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Rank3Oracle {
    /// Chamber enumeration.
    #[default]
    Direct,
    /// Product-set comparison.
    Bh91,
}

/// A group with subgroups `G_0, …, G_{r-1}` and memoised intersections
/// `G_S = ∩_{s ∈ S} G_s` (with `G_∅ = G`).
#[derive(Debug)]
pub struct SubgroupLattice {
    group: PermGroup,
    subgroups: Vec<PermGroup>,
    meets: RefCell<HashMap<u64, Rc<PermGroup>>>,
    ft: RefCell<HashMap<(u64, u64), bool>>,
    pub coset_limit: u128,
    pub chamber_limit: u128,
    pub rank3: Rank3Oracle,
}

impl SubgroupLattice {
    pub fn new(group: &PermGroup, subgroups: &[PermGroup]) -> Result<Self> {
        if subgroups.len() > 63 {
            return Err(Error::RankTooLarge(subgroups.len()));
        }
        if subgroups.iter().any(|h| !group.contains_group(h)) {
            return Err(Error::NotASubgroup);
        }
        Ok(SubgroupLattice {
            group: group.clone(),
            subgroups: subgroups.to_vec(),
            meets: RefCell::new(HashMap::new()),
            ft: RefCell::new(HashMap::new()),
            coset_limit: DEFAULT_COSET_LIMIT,
            chamber_limit: DEFAULT_CHAMBER_LIMIT,
            rank3: Rank3Oracle::Direct,
        })
    }

    pub fn rank(&self) -> usize {
        self.subgroups.len()
    }

    fn all(&self) -> u64 {
        (1u64 << self.rank()) - 1
    }

    pub fn meet(&self, mask: u64) -> Result<Rc<PermGroup>> {
        if mask == 0 {
            return Ok(Rc::new(self.group.clone()));
        }
        if let Some(g) = self.meets.borrow().get(&mask) {
            return Ok(Rc::clone(g));
        }
        let s = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << s);
        let g = if rest == 0 {
            self.subgroups[s].clone()
        } else {
            intersection(&*self.meet(rest)?, &self.subgroups[s])?
        };
        let g = Rc::new(g);
        self.meets.borrow_mut().insert(mask, Rc::clone(&g));
        Ok(g)
    }

    /// The coset geometry of `G_S` with subgroups `G_{S ∪ {t}}`, `t ∈ types`.
    /// For a flag-transitive geometry this is the residue of the base flag
    /// of type `S`.
    pub fn residue_geometry(&self, s: u64, types: &[usize]) -> Result<CosetGeometry> {
        let k = self.meet(s)?;
        let subs = types.iter().map(|&t| self.meet(s | 1 << t).map(|g| (*g).clone())).collect::<Result<Vec<_>>>()?;
        build_geometry_with_limit(&k, &subs, self.coset_limit)
    }

    pub fn direct(&self, s: u64, types: &[usize]) -> Result<bool> {
        self.residue_geometry(s, types)?.is_flag_transitive_direct(self.chamber_limit)
    }

    /// Product-set condition for `J` and `α ∈ J` inside `G_S`: the cosets of
    /// `G_α` covered by every `G_j G_α` are exactly those covered by
    /// `(∩ G_j) G_α`.
    pub fn bh91(&self, s: u64, j: &[usize], alpha: usize) -> Result<bool> {
        let k = self.meet(s)?;
        let space = CosetSpace::new(&k, &*self.meet(s | 1 << alpha)?, self.coset_limit)?;
        let mut lhs: Option<Vec<u32>> = None;
        let mut rest = s;
        for &t in j.iter().filter(|&&t| t != alpha) {
            rest |= 1 << t;
            let orbit = space.orbit_of_base(self.meet(s | 1 << t)?.generators());
            lhs = Some(match lhs {
                None => orbit,
                Some(prev) => prev.into_iter().filter(|x| orbit.binary_search(x).is_ok()).collect(),
            });
        }
        let rhs = space.orbit_of_base(self.meet(rest)?.generators());
        Ok(lhs.unwrap_or_else(|| (0..space.len() as u32).collect()) == rhs)
    }

    /// The criterion over all `J ⊆ types` with `|J| ≥ 3`, taking `α(J) = min J`.
    pub fn bh91_all(&self, s: u64, types: &[usize]) -> Result<bool> {
        let r = types.len();
        for sub in 0u64..(1 << r) {
            if sub.count_ones() < 3 {
                continue;
            }
            let j: Vec<usize> = (0..r).filter(|&k| sub >> k & 1 == 1).map(|k| types[k]).collect();
            let alpha = *j.iter().min().expect("non-empty");
            if !self.bh91(s, &j, alpha)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn rank3(&self, s: u64, types: &[usize]) -> Result<bool> {
        match self.rank3 {
            Rank3Oracle::Direct => self.direct(s, types),
            Rank3Oracle::Bh91 => self.bh91_all(s, types),
        }
    }

    /// Whether the geometry of `G_S` on the types in `t` is a flag-transitive
    /// geometry. Removing the first type `p` of `order` present in `t`, this
    /// holds iff the geometry without `p` and the residue of the base element
    /// of type `p` both do, and every rank-3 system `{i, j, p}` does.
    pub fn incremental(&self, s: u64, t: u64, order: &[usize]) -> Result<bool> {
        let types: Vec<usize> = (0..self.rank()).filter(|&k| t >> k & 1 == 1).collect();
        if types.len() <= 2 {
            return Ok(true);
        }
        if let Some(&v) = self.ft.borrow().get(&(s, t)) {
            return Ok(v);
        }
        let v = if types.len() == 3 {
            self.rank3(s, &types)?
        } else {
            let p = *order.iter().find(|&&p| t >> p & 1 == 1).expect("order covers all types");
            let rest = t & !(1 << p);
            let mut ok = self.incremental(s, rest, order)? && self.incremental(s | 1 << p, rest, order)?;
            let others: Vec<usize> = types.iter().copied().filter(|&k| k != p).collect();
            'pairs: for (a, &i) in others.iter().enumerate() {
                for &j in &others[a + 1..] {
                    if !ok {
                        break 'pairs;
                    }
                    ok = self.incremental(s, 1 << i | 1 << j | 1 << p, order)?;
                }
            }
            ok
        };
        self.ft.borrow_mut().insert((s, t), v);
        Ok(v)
    }

    pub fn is_flag_transitive_incremental(&self, pivot: usize) -> Result<bool> {
        let mut order = vec![pivot];
        order.extend((0..self.rank()).rev().filter(|&k| k != pivot));
        self.incremental(0, self.all(), &order)
    }
}

/// Flag-transitivity (including the geometry condition) decided by adding
/// one type at a time, starting from `pivot`.
pub fn is_flag_transitive_incremental(g: &PermGroup, subgroups: &[PermGroup], pivot: usize) -> Result<bool> {
    SubgroupLattice::new(g, subgroups)?.is_flag_transitive_incremental(pivot)
}

/// The product-set condition for one type subset `j` and `alpha ∈ j`.
pub fn bh91_condition(g: &PermGroup, subgroups: &[PermGroup], j: &[usize], alpha: usize) -> Result<bool> {
    SubgroupLattice::new(g, subgroups)?.bh91(0, j, alpha)
}

/// Flag-transitivity of a coset geometry through the product-set condition
/// on every type subset of size at least 3 (the geometry condition itself is
/// not tested; it is automatic up to rank 3).
pub fn is_flag_transitive_bh91(g: &PermGroup, subgroups: &[PermGroup]) -> Result<bool> {
    let lat = SubgroupLattice::new(g, subgroups)?;
    let types: Vec<usize> = (0..subgroups.len()).collect();
    lat.bh91_all(0, &types)
}
