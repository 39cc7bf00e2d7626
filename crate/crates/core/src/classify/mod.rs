//! Enumeration and verification of the C-groups of ranks `n-1` and `n-2`
//! for the symmetric group.
//!
//! Rank `n-1` groups come from trees on `n` points, one transposition per
//! edge. Rank `n-2` groups come from three families, each gluing a fixed
//! four-point head (carrying `ρ0` and `ρ1`) to a leaf of a tree on `n-3`
//! points whose edges give `ρ2, ρ3, …`.

mod screen;
mod search;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cgroup::CGroupCandidate;
use crate::error::{Error, Result};
use crate::geometry::{certify_with, CertifyOptions, HypertopeReport};
use crate::group::PermGroup;
use crate::perm::{perm, Permutation};
use crate::repgraph::{
    build_rep_graph, canonical_form, coxeter_diagram, enumerate_trees, line_graph, vertex_orbits, CanonicalForm,
    Edge, LabeledTree, RepGraph, UnlabeledTree,
};

pub use screen::{structural_screen, ScreenDiagnosis};
pub use search::{restricted_candidates, restricted_search, SearchReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];

    /// `(ρ0, ρ1, attachment point)` on the head points `0..4`.
    fn head(self) -> (&'static str, &'static str, usize) {
        match self {
            // 0 -1- 1 -0- 2 -1- 3, tail hangs off 3
            Family::A => ("(1 2)", "(0 1)(2 3)", 3),
            // same path, tail hangs off 2
            Family::B => ("(1 2)", "(0 1)(2 3)", 2),
            // square 0 -0- 1 -1- 3 -0- 2 -1- 0, tail hangs off 3
            Family::C => ("(0 1)(2 3)", "(0 2)(1 3)", 3),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A rank `n-2` generating tuple built from a family head and a tail tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: Family,
    pub tail: UnlabeledTree,
    pub attach: usize,
    pub gens: Vec<Permutation>,
    pub graph: RepGraph,
}

impl FamilyInstance {
    pub fn degree(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// Glues the head of `family` to the leaf `attach` of `tail`. Tail points
/// are numbered and their edges labelled `2, 3, …` in breadth-first order
/// from the attachment, so label 2 is the leaf edge.
pub fn build_family_instance(family: Family, tail: &UnlabeledTree, attach: usize) -> Result<FamilyInstance> {
    let m = tail.vertex_count();
    if m < 4 {
        return Err(Error::TailTooSmall(m));
    }
    if attach >= m || tail.degree(attach) != 1 {
        return Err(Error::BadAttachVertex(attach));
    }
    let n = m + 3;
    let (r0, r1, head_attach) = family.head();
    let adj = tail.adjacency();
    let mut id = vec![usize::MAX; m];
    id[attach] = head_attach;
    let mut next_id = 4;
    let mut next_label = 2;
    let mut edges: Vec<Edge> = Vec::with_capacity(n);
    let mut queue = VecDeque::from([attach]);
    while let Some(v) = queue.pop_front() {
        let mut nbrs = adj[v].clone();
        nbrs.sort_unstable();
        for u in nbrs {
            if id[u] == usize::MAX {
                id[u] = next_id;
                next_id += 1;
                edges.push(Edge::new(id[v], id[u], next_label));
                next_label += 1;
                queue.push_back(u);
            }
        }
    }
    let mut gens = vec![perm(n, r0), perm(n, r1)];
    gens.extend(edges.iter().map(|e| Permutation::transposition(n, e.a, e.b)));
    let graph = build_rep_graph(&gens)?;
    Ok(FamilyInstance { family, tail: tail.clone(), attach, gens, graph })
}

/// Leaves of `t`, one per automorphism orbit.
pub fn leaf_orbit_representatives(t: &UnlabeledTree) -> Vec<usize> {
    vertex_orbits(t).into_iter().map(|o| o[0]).filter(|&v| t.degree(v) == 1).collect()
}

/// Every family instance on `n` points, before deduplication.
pub fn family_instances(n: usize) -> Result<Vec<FamilyInstance>> {
    if n < 7 {
        return Err(Error::TailTooSmall(n.saturating_sub(3)));
    }
    let trees = enumerate_trees(n - 3);
    let mut out = Vec::new();
    for family in Family::ALL {
        for t in &trees {
            for leaf in leaf_orbit_representatives(t) {
                out.push(build_family_instance(family, t, leaf)?);
            }
        }
    }
    Ok(out)
}

/// The six involutions on 8 points with one transitive maximal parabolic.
pub fn exceptional_n8() -> Vec<Permutation> {
    ["(0 1)", "(0 1)(2 3)", "(0 1)(6 7)", "(0 1)(4 5)", "(0 2)(5 7)", "(0 7)(2 5)"].iter().map(|s| perm(8, s)).collect()
}

/// Results of the checks run on one generating tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub order: u128,
    pub symmetric: bool,
    pub c_group: bool,
    pub c_group_full: Option<bool>,
    pub line_graph: Option<bool>,
    pub hypertope: Option<HypertopeReport>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.symmetric
            && self.c_group
            && self.c_group_full.unwrap_or(true)
            && self.line_graph.unwrap_or(true)
            && self.hypertope.as_ref().is_none_or(HypertopeReport::is_regular_hypertope)
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Also run the all-pairs intersection check.
    pub full_check: bool,
    /// Hypertope certification settings; `None` skips it.
    pub certify: Option<CertifyOptions>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Restricts rank `n-2` enumeration to one family.
    pub family: Option<Family>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { full_check: true, certify: Some(CertifyOptions::default()), jobs: None, family: None }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Runs the group-order, intersection-property, diagram and hypertope checks.
pub fn verify(gens: &[Permutation], tree: Option<&LabeledTree>, opts: &ClassifyOptions) -> Result<Verification> {
    let n = gens.first().map_or(0, Permutation::degree);
    let order = PermGroup::new(n, gens)?.order();
    let cand = CGroupCandidate::new(gens.to_vec())?;
    let c_group = cand.is_c_group_recursive().is_c_group;
    let c_group_full = if opts.full_check { Some(cand.is_c_group_full()?.is_c_group) } else { None };
    let line_graph = match tree {
        Some(t) => Some(coxeter_diagram(gens)? == line_graph(t)),
        None => None,
    };
    let hypertope = match &opts.certify {
        Some(c) if c_group => Some(certify_with(gens, c)?),
        _ => None,
    };
    Ok(Verification { order, symmetric: order == factorial(n), c_group, c_group_full, line_graph, hypertope })
}

/// One verified, deduplicated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub n: usize,
    pub family: Option<Family>,
    pub tree: Vec<(usize, usize)>,
    pub attach: Option<usize>,
    pub gens: Vec<Permutation>,
    pub report: Verification,
    pub canon: CanonicalForm,
}

#[derive(Serialize)]
struct InstanceRecord<'a> {
    n: usize,
    family: Option<Family>,
    tree: &'a [(usize, usize)],
    attach: Option<usize>,
    gens: Vec<String>,
    report: &'a Verification,
    canon: String,
}

impl Instance {
    pub fn to_json(&self) -> String {
        let rec = InstanceRecord {
            n: self.n,
            family: self.family,
            tree: &self.tree,
            attach: self.attach,
            gens: self.gens.iter().map(ToString::to_string).collect(),
            report: &self.report,
            canon: self.canon.to_hex(),
        };
        serde_json::to_string(&rec).expect("serializable")
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub n: usize,
    pub rank: usize,
    /// Candidates built before deduplication.
    pub candidates: usize,
    /// Ordered by canonical form.
    pub instances: Vec<Instance>,
}

impl ClassificationResult {
    pub fn count(&self) -> usize {
        self.instances.len()
    }

    pub fn count_family(&self, f: Family) -> usize {
        self.instances.iter().filter(|i| i.family == Some(f)).count()
    }

    pub fn all_verified(&self) -> bool {
        self.instances.iter().all(|i| i.report.passed())
    }

    pub fn to_jsonl(&self) -> String {
        self.instances.iter().map(|i| i.to_json() + "\n").collect()
    }
}

struct Candidate {
    family: Option<Family>,
    tree: Vec<(usize, usize)>,
    attach: Option<usize>,
    gens: Vec<Permutation>,
    labeled: Option<LabeledTree>,
}

fn run(n: usize, rank: usize, cands: Vec<Candidate>, opts: &ClassifyOptions) -> Result<ClassificationResult> {
    let total = cands.len();
    // deduplicate before the expensive checks
    let mut unique: BTreeMap<CanonicalForm, Candidate> = BTreeMap::new();
    for c in cands {
        let canon = canonical_form(&build_rep_graph(&c.gens)?, true);
        unique.entry(canon).or_insert(c);
    }
    let work: Vec<(CanonicalForm, Candidate)> = unique.into_iter().collect();
    let verify_all = || -> Result<Vec<Instance>> {
        work.par_iter()
            .map(|(canon, c)| {
                let report = verify(&c.gens, c.labeled.as_ref(), opts)?;
                Ok(Instance {
                    n,
                    family: c.family,
                    tree: c.tree.clone(),
                    attach: c.attach,
                    gens: c.gens.clone(),
                    report,
                    canon: canon.clone(),
                })
            })
            .collect()
    };
    let instances = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(verify_all)?,
        None => verify_all()?,
    };
    Ok(ClassificationResult { n, rank, candidates: total, instances })
}

/// One transposition tuple per tree on `n` points, verified.
pub fn enumerate_rank_n_minus_1(n: usize, opts: &ClassifyOptions) -> Result<ClassificationResult> {
    if !(7..=12).contains(&n) {
        return Err(Error::OutOfRange { what: "n", n, lo: 7, hi: 12 });
    }
    let cands = enumerate_trees(n)
        .into_iter()
        .map(|t| {
            let labeled = t.labeled();
            Candidate {
                family: None,
                tree: t.edges().to_vec(),
                attach: None,
                gens: labeled.transpositions(),
                labeled: Some(labeled),
            }
        })
        .collect();
    run(n, n - 1, cands, opts)
}

/// Every family instance on `n` points, deduplicated up to renaming points
/// and generators, verified.
pub fn enumerate_rank_n_minus_2(n: usize, opts: &ClassifyOptions) -> Result<ClassificationResult> {
    if !(9..=12).contains(&n) {
        return Err(Error::OutOfRange { what: "n", n, lo: 9, hi: 12 });
    }
    let cands = family_instances(n)?
        .into_iter()
        .filter(|f| opts.family.is_none_or(|only| only == f.family))
        .map(|f| Candidate {
            family: Some(f.family),
            tree: f.tail.edges().to_vec(),
            attach: Some(f.attach),
            gens: f.gens,
            labeled: None,
        })
        .collect();
    run(n, n - 2, cands, opts)
}
