//! Presentations on involutions: Coxeter relators read off a diagram plus
//! extra relators, checked in a permutation model and certified by coset
//! enumeration.

mod enumerate;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use enumerate::{todd_coxeter, CosetTable};

use crate::classify::{Family, FamilyInstance};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::repgraph::{coxeter_diagram, line_graph, CoxeterDiagram, LabeledTree};

pub const DEFAULT_MAX_COSETS: usize = 5_000_000;

/// A word in the generators. Generators are involutions, so a word needs no
/// inverse letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: impl Into<Vec<usize>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(mut self, other: &Word) -> Word {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// The product `ρ_{w_0} ρ_{w_1} ⋯` in the model, written left to right.
    /// Whether a relator holds does not depend on the multiplication
    /// convention, since reading a word of involutions backwards inverts it.
    pub fn evaluate(&self, gens: &[Permutation]) -> Result<Permutation> {
        let degree = gens.first().map(Permutation::degree).ok_or(Error::EmptyDegree)?;
        let mut acc = Permutation::identity(degree);
        for &x in &self.0 {
            let g = gens.get(x).ok_or(Error::BadGenerator { index: x, rank: gens.len() })?;
            acc = acc.after(g);
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

fn w(letters: &[usize]) -> Word {
    Word::new(letters)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    rank: usize,
    relators: Vec<Word>,
    subgroup: Vec<Word>,
}

impl Presentation {
    /// Only the relators `ρ_i^2`.
    pub fn involutions(rank: usize) -> Self {
        let relators = (0..rank).map(|i| w(&[i, i])).collect();
        Presentation { rank, relators, subgroup: Vec::new() }
    }

    /// `ρ_i^2` and `(ρ_iρ_j)^{p_ij}` for every pair.
    pub fn coxeter(d: &CoxeterDiagram) -> Self {
        let mut p = Presentation::involutions(d.rank());
        for i in 0..d.rank() {
            for j in i + 1..d.rank() {
                p.relators.push(w(&[i, j]).pow(d.order(i, j) as usize));
            }
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Generators of the subgroup recorded with the presentation.
    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    fn check_word(&self, word: &Word) -> Result<()> {
        match word.letters().iter().find(|&&x| x >= self.rank) {
            Some(&x) => Err(Error::BadGenerator { index: x, rank: self.rank }),
            None => Ok(()),
        }
    }

    pub fn push_relator(&mut self, word: Word) -> Result<()> {
        self.check_word(&word)?;
        if !word.is_empty() && !self.relators.contains(&word) {
            self.relators.push(word);
        }
        Ok(())
    }

    pub fn push_subgroup_generator(&mut self, word: Word) -> Result<()> {
        self.check_word(&word)?;
        self.subgroup.push(word);
        Ok(())
    }
}

/// `rank r`, then one relator per line as generator indices, then an
/// optional `SUBGROUP` line followed by subgroup words.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank)?;
        for r in &self.relators {
            writeln!(f, "{r}")?;
        }
        if !self.subgroup.is_empty() {
            writeln!(f, "SUBGROUP")?;
            for h in &self.subgroup {
                writeln!(f, "{h}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate();
        let rank = match lines.next() {
            Some((_, l)) => l
                .strip_prefix("rank ")
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("line 1: expected `rank <r>`, found {l:?}")))?,
            None => return Err(Error::Parse("empty presentation".into())),
        };
        let mut p = Presentation { rank, relators: Vec::new(), subgroup: Vec::new() };
        let mut in_subgroup = false;
        for (k, line) in lines {
            if line == "SUBGROUP" && !in_subgroup {
                in_subgroup = true;
                continue;
            }
            let letters = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", k + 1)))?;
            if letters.is_empty() {
                return Err(Error::Parse(format!("line {}: empty word", k + 1)));
            }
            let word = Word(letters);
            p.check_word(&word)?;
            if in_subgroup {
                p.subgroup.push(word);
            } else {
                p.relators.push(word);
            }
        }
        Ok(p)
    }
}

/// `(ρ_iρ_jρ_iρ_k)^2` for a triangle `{i, j, k}` of the diagram.
fn triangle_relator([i, j, k]: [usize; 3]) -> Word {
    w(&[i, j, i, k]).pow(2)
}

/// The diagram relators of the line graph of `t` plus one relator
/// `(ρ_iρ_jρ_iρ_k)^2` per triangle.
pub fn relators_rank_n_minus_1(t: &LabeledTree) -> Presentation {
    let d = line_graph(t);
    let mut p = Presentation::coxeter(&d);
    for tri in d.triangles() {
        p.relators.push(triangle_relator(tri));
    }
    p
}

/// The extra relators attached to each family head.
pub fn family_relators(family: Family) -> Vec<Word> {
    let r12_3 = w(&[1, 2]).pow(3);
    let r02_3 = w(&[0, 2]).pow(3);
    match family {
        Family::A => vec![
            r12_3.clone().then(&w(&[0])).pow(3),
            w(&[3]).then(&r12_3).pow(2),
            w(&[0, 1, 2, 1]).pow(3),
        ],
        Family::B => vec![
            w(&[0]).then(&r12_3).pow(3),
            w(&[1, 0, 1, 2]).pow(2),
            r12_3.clone().then(&w(&[3])).pow(2),
        ],
        Family::C => vec![
            r02_3.clone().then(&r12_3).then(&w(&[1])).pow(3),
            r02_3.clone().then(&r12_3).pow(3),
            r12_3.then(&w(&[3])).pow(2),
            r02_3.then(&w(&[3])).pow(2),
        ],
    }
}

/// Relators needed beyond the listed ones when `ρ_2` lies in a triangle of
/// the tail or, for family C, to recover `ρ_0` from the string generators
/// `(ρ_1ρ_2)^3, (ρ_0ρ_2)^3, (ρ_1ρ_2)^3ρ_1, ρ_2, ρ_3, …`:
/// `ρ_0 = (ρ_1(ρ_0ρ_2)^3)^2`.
fn supplementary_relators(family: Family, d: &CoxeterDiagram) -> Vec<Word> {
    let mut out: Vec<Word> = d
        .triangles()
        .into_iter()
        .filter(|t| t[0] == 2)
        .map(triangle_relator)
        .collect();
    if family == Family::C {
        out.push(w(&[0]).then(&w(&[1]).then(&w(&[0, 2]).pow(3)).pow(2)));
    }
    out
}

/// A family presentation: the diagram relators, triangle relators among
/// types `≥ 3` and the family's listed extra relators that hold in the
/// instance. Listed relators failing in the model are kept in `rejected`.
/// `supplement` holds model-checked relators that close the gaps of the
/// listed set; see [`FamilyPresentation::completed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPresentation {
    pub presentation: Presentation,
    pub rejected: Vec<Word>,
    pub supplement: Vec<Word>,
}

impl FamilyPresentation {
    /// The listed relators together with the supplement.
    pub fn completed(&self) -> Presentation {
        let mut p = self.presentation.clone();
        for r in &self.supplement {
            p.push_relator(r.clone()).expect("supplement uses the same generators");
        }
        p
    }
}

pub fn relators_rank_n_minus_2(inst: &FamilyInstance) -> Result<FamilyPresentation> {
    let d = coxeter_diagram(&inst.gens)?;
    let mut p = Presentation::coxeter(&d);
    for tri in d.triangles() {
        if tri.iter().all(|&x| x >= 3) {
            p.push_relator(triangle_relator(tri))?;
        }
    }
    let mut rejected = Vec::new();
    for r in family_relators(inst.family) {
        if r.evaluate(&inst.gens)?.is_identity() {
            p.push_relator(r)?;
        } else {
            rejected.push(r);
        }
    }
    let mut supplement = Vec::new();
    for r in supplementary_relators(inst.family, &d) {
        if r.evaluate(&inst.gens)?.is_identity() && !p.relators().contains(&r) {
            supplement.push(r);
        }
    }
    Ok(FamilyPresentation { presentation: p, rejected, supplement })
}

/// The first relator of `p` that is not the identity in the model.
pub fn first_failing_relator(gens: &[Permutation], p: &Presentation) -> Result<Option<Word>> {
    if gens.len() != p.rank() {
        return Err(Error::RankMismatch(p.rank(), gens.len()));
    }
    for r in p.relators() {
        if !r.evaluate(gens)?.is_identity() {
            return Ok(Some(r.clone()));
        }
    }
    Ok(None)
}

pub fn check_relations(gens: &[Permutation], p: &Presentation) -> Result<bool> {
    Ok(first_failing_relator(gens, p)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationCertificate {
    pub model_order: u128,
    pub relations_hold: bool,
    /// Order of the presented group; `None` if enumeration hit its limit.
    pub presented_order: Option<u128>,
}

impl PresentationCertificate {
    /// The relators hold in the model, so the presented group maps onto it;
    /// equal orders make that map an isomorphism.
    pub fn certified(&self) -> bool {
        self.relations_hold && self.presented_order == Some(self.model_order)
    }
}

/// Compares the order of the presented group, found by enumerating cosets of
/// the trivial subgroup, with the order of the model.
pub fn certify_presentation(gens: &[Permutation], p: &Presentation, max_cosets: usize) -> Result<PresentationCertificate> {
    let relations_hold = check_relations(gens, p)?;
    let n = gens.first().map(Permutation::degree).ok_or(Error::EmptyDegree)?;
    let model_order = PermGroup::new(n, gens)?.order();
    let presented_order = if relations_hold {
        match todd_coxeter(p, &[], max_cosets) {
            Ok(t) => Some(t.index() as u128),
            Err(Error::CosetLimitExceeded(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(PresentationCertificate { model_order, relations_hold, presented_order })
}
