use serde::Serialize;

use super::{build_geometry_with_limit, FlagScope, SubgroupLattice, DEFAULT_CHAMBER_LIMIT, DEFAULT_COSET_LIMIT};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::repgraph::build_rep_graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub property: &'static str,
    /// Elements `[type, coset index]` of the offending flag.
    pub flag: Vec<(usize, u32)>,
}

/// Outcome of the hypertope checks on the coset geometry of the maximal
/// parabolic subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypertopeReport {
    pub geometry: bool,
    pub thin: bool,
    pub rc: bool,
    pub ft: bool,
    pub chambers: u128,
    pub witness: Option<FailureWitness>,
    /// Whether chambers were enumerated (otherwise the count is `|G : ∩ G_i|`).
    #[serde(skip)]
    pub chambers_enumerated: bool,
}

impl HypertopeReport {
    pub fn is_regular_hypertope(&self) -> bool {
        self.geometry && self.thin && self.rc && self.ft
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub coset_limit: u128,
    pub chamber_limit: u128,
    /// Chambers are enumerated when the degree is at most this.
    pub enumerate_max_degree: usize,
    /// The flag search for the geometry condition runs up to this rank;
    /// above it the incremental check stands in for it.
    pub flag_search_max_rank: usize,
    /// First type removed by the incremental check; by default a label on an
    /// edge at a leaf of the representation graph.
    pub pivot: Option<usize>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            coset_limit: DEFAULT_COSET_LIMIT,
            chamber_limit: DEFAULT_CHAMBER_LIMIT,
            enumerate_max_degree: 9,
            flag_search_max_rank: 5,
            pivot: None,
        }
    }
}

fn leaf_label(gens: &[Permutation]) -> Result<usize> {
    let g = build_rep_graph(gens)?;
    let leaf_edges = g.edges().iter().filter(|e| g.degree(e.a) == 1 || g.degree(e.b) == 1);
    Ok(leaf_edges.map(|e| e.label).max().unwrap_or(gens.len() - 1))
}

/// Builds `G_i = ⟨ρ_j : j ≠ i⟩` and checks that the coset geometry is a
/// flag-transitive, thin, residually connected geometry.
pub fn certify_regular_hypertope(gens: &[Permutation]) -> Result<HypertopeReport> {
    certify_with(gens, &CertifyOptions::default())
}

pub fn certify_with(gens: &[Permutation], opts: &CertifyOptions) -> Result<HypertopeReport> {
    let Some(first) = gens.first() else {
        return Err(Error::EmptyDegree);
    };
    let n = first.degree();
    let r = gens.len();
    let group = PermGroup::new(n, gens)?;
    let parabolics: Vec<PermGroup> = (0..r)
        .map(|i| {
            let h: Vec<Permutation> = gens.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
            PermGroup::new(n, &h)
        })
        .collect::<Result<_>>()?;
    let mut lattice = SubgroupLattice::new(&group, &parabolics)?;
    lattice.coset_limit = opts.coset_limit;
    lattice.chamber_limit = opts.chamber_limit;
    let geo = build_geometry_with_limit(&group, &parabolics, opts.coset_limit)?;
    let borel_index = group.order() / lattice.meet((1u64 << r) - 1)?.order();

    let pivot = match opts.pivot {
        Some(p) => p,
        None => leaf_label(gens)?,
    };
    let incremental = lattice.is_flag_transitive_incremental(pivot)?;
    let mut witness = None;

    let geometry = if r <= opts.flag_search_max_rank || !incremental {
        match geo.geometry_witness(opts.chamber_limit)? {
            None => true,
            Some(f) => {
                witness = Some(FailureWitness { property: "geometry", flag: f.0 });
                false
            }
        }
    } else {
        true
    };

    let (chambers, enumerated, transitive) = if n <= opts.enumerate_max_degree {
        let c = geo.chamber_count(opts.chamber_limit)?;
        (c, true, c == borel_index)
    } else {
        (borel_index, false, incremental)
    };
    let ft = geometry && incremental && transitive;
    if !ft && witness.is_none() {
        witness = Some(FailureWitness { property: "ft", flag: Vec::new() });
    }

    // under flag-transitivity one flag per type represents all of them
    let scope = if ft { FlagScope::Base } else { FlagScope::Anchored };
    let sys = geo.system();
    let thin = match sys.thin_witness(scope, opts.chamber_limit)? {
        None => true,
        Some(f) => {
            witness.get_or_insert(FailureWitness { property: "thin", flag: f.0 });
            false
        }
    };
    let rc = match sys.rc_witness(scope, opts.chamber_limit)? {
        None => true,
        Some(f) => {
            witness.get_or_insert(FailureWitness { property: "rc", flag: f.0 });
            false
        }
    };
    Ok(HypertopeReport { geometry, thin, rc, ft, chambers, witness, chambers_enumerated: enumerated })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex() {
        let gens: Vec<_> = (0..6).map(|i| Permutation::transposition(7, i, i + 1)).collect();
        let rep = certify_regular_hypertope(&gens).unwrap();
        assert!(rep.is_regular_hypertope(), "{rep:?}");
        assert_eq!(rep.chambers, 5040);
        assert!(rep.chambers_enumerated);
        assert_eq!(rep.to_json(), r#"{"geometry":true,"thin":true,"rc":true,"ft":true,"chambers":5040,"witness":null}"#);
    }
}
