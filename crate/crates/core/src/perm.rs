//! Permutations of `{0, …, n-1}`.
//!
//! Composition convention: [`Permutation::compose`]`(a, b)` applies `b` first
//! and then `a`, i.e. `compose(a, b)(x) = a(b(x))`. Every derived quantity
//! used by the rest of the crate (orders, Coxeter labels, relator checks on
//! involution words) is independent of this choice, but coset
//! representatives and the element produced for a word depend on it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 1 << 16;

/// A bijection of `{0, …, n-1}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree).map(|x| x as u16).collect(),
        }
    }

    /// Builds a permutation from its images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(Error::NotABijection(images.to_vec()));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u16).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(Error::Parse(format!("point {x} repeated in cycles")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// A transposition `(a b)`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        assert!(a != b && a < degree && b < degree);
        let mut p = Permutation::identity(degree);
        p.images.swap(a, b);
        p
    }

    /// Parses disjoint-cycle notation such as `(0 1)(2 3)`; `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        Permutation::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x as usize)
    }

    /// `a ∘ b`: apply `b` first, then `a`.
    pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch(a.degree(), b.degree()));
        }
        Ok(a.after(b))
    }

    /// `self ∘ other` without the degree check (panics on mismatch).
    #[inline]
    pub fn after(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x as usize] = k as u16;
        }
        Permutation { images }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.after(&base);
            }
            base = base.after(&base);
            k >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            cycles.push(cycle);
        }
        CycleDecomposition { degree: n, cycles }
    }

    /// Least `k >= 1` with `self^k = id`.
    pub fn order(&self) -> u64 {
        self.cycles().order()
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.after(self).is_identity()
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.apply(x) != x).collect()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(k, &x)| *k != x as usize).map(|(k, _)| k)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.cycles(), f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        // The degree is not recoverable from cycle notation alone, so use the
        // smallest degree that holds every point.
        let text = String::deserialize(deserializer)?;
        let cycles = parse_cycles(&text).map_err(serde::de::Error::custom)?;
        let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        Permutation::from_cycles(degree, &cycles).map_err(serde::de::Error::custom)
    }
}

/// Disjoint cycles of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub degree: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn order(&self) -> u64 {
        self.cycles.iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Sorted cycle lengths, e.g. `[2, 2]` for a 2-transposition.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn is_transposition(&self) -> bool {
        self.cycle_type() == [2]
    }

    pub fn is_double_transposition(&self) -> bool {
        self.cycle_type() == [2, 2]
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "()");
        }
        for c in &self.cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for CycleDecomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        let p = Permutation::from_cycles(degree, &cycles)?;
        Ok(p.cycles())
    }
}

/// Parses `(a b c)(d e)` into cycles. Whitespace or commas separate points.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let body = &open[..close];
        let cycle = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if cycle.len() == 1 {
            return Err(Error::Parse(format!("1-cycle in {text:?}")));
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Reads a generator list: one permutation per line in cycle notation, with
/// `#` starting a comment. The degree is `degree` if given, otherwise one
/// more than the largest point mentioned.
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Vec<Permutation>> {
    let mut lines = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let cycles = parse_cycles(body).map_err(|e| Error::Parse(format!("line {}: {e}", k + 1)))?;
        lines.push((k + 1, cycles));
    }
    if lines.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    let seen = lines.iter().flat_map(|(_, c)| c.iter().flatten()).map(|&x| x + 1).max().unwrap_or(0);
    let degree = degree.unwrap_or(seen);
    lines
        .into_iter()
        .map(|(k, cycles)| {
            Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("line {k}: {m}")),
                other => other,
            })
        })
        .collect()
}

/// Inverse of [`parse_generators`] (without comments).
pub fn format_generators(gens: &[Permutation]) -> String {
    gens.iter().map(|g| format!("{g}\n")).collect()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Convenience for tests and examples: parse or panic.
pub fn perm(degree: usize, text: &str) -> Permutation {
    Permutation::parse(degree, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generator_files() {
        let text = "# Moore set\n(0 1)\n\n(1 2) # middle\n(2 3)\n";
        let gens = parse_generators(text, None).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0].degree(), 4);
        assert_eq!(parse_generators(&format_generators(&gens), Some(4)).unwrap(), gens);
        assert_eq!(parse_generators("(0 1)", Some(6)).unwrap()[0].degree(), 6);
        assert!(matches!(parse_generators("(0 1)\n(1 x)", None), Err(Error::Parse(m)) if m.starts_with("line 2")));
        assert!(matches!(parse_generators("# nothing\n", None), Err(Error::Parse(_))));
        assert!(parse_generators("(0 5)", Some(3)).is_err());
    }

    #[test]
    fn identity_composition() {
        let p = perm(5, "(0 3 1)(2 4)");
        let id = Permutation::identity(5);
        assert_eq!(Permutation::compose(&id, &p).unwrap(), p);
        assert_eq!(Permutation::compose(&p, &id).unwrap(), p);
    }

    #[test]
    fn involution_squared() {
        let t = perm(2, "(0 1)");
        assert!(Permutation::compose(&t, &t).unwrap().is_identity());
    }

    #[test]
    fn head_of_family_a_gives_four_cycle() {
        // right factor acts first: 0 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 0 -> 0
        let a = perm(4, "(1 2)");
        let b = perm(4, "(0 1)(2 3)");
        let ab = Permutation::compose(&a, &b).unwrap();
        assert_eq!(ab.to_string(), "(0 2 3 1)");
        assert_eq!(ab.order(), 4);
        // the opposite convention yields the inverse 4-cycle
        assert_eq!(Permutation::compose(&b, &a).unwrap().to_string(), "(0 1 3 2)");
    }

    #[test]
    fn degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(Permutation::compose(&a, &b), Err(Error::DegreeMismatch(3, 4))));
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(6).order(), 1);
        assert_eq!(perm(5, "(0 1)(2 3 4)").order(), 6);
        let r1 = perm(5, "(0 1)(2 3)");
        let r2 = perm(5, "(3 4)");
        assert_eq!(r1.after(&r2).order(), 6);
    }

    #[test]
    fn printing_and_parsing() {
        assert_eq!(Permutation::identity(4).to_string(), "()");
        let p = perm(8, "(0 1)(2 3)");
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        assert_eq!(perm(4, "()"), Permutation::identity(4));
        assert!(Permutation::parse(3, "(0 3)").is_err());
        assert!(Permutation::parse(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::parse(3, "(0 1").is_err());
        assert!(Permutation::parse(3, "0 1").is_err());
    }

    #[test]
    fn cycle_types() {
        assert!(perm(5, "(1 3)").cycles().is_transposition());
        assert!(perm(5, "(1 3)(0 4)").cycles().is_double_transposition());
        assert!(!perm(5, "(1 3 4)").cycles().is_double_transposition());
        let c: CycleDecomposition = "(0 4)(1 2 3)".parse().unwrap();
        assert_eq!(c.order(), 6);
        assert_eq!(c.cycle_type(), vec![2, 3]);
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3, 1]).is_err());
    }

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_degree).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(&v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(20)) {
            prop_assert!(p.after(&p.inverse()).is_identity());
            prop_assert!(p.inverse().after(&p).is_identity());
        }

        #[test]
        fn order_is_least_power(p in arb_perm(12)) {
            let k = p.order();
            prop_assert!(p.pow(k).is_identity());
            for j in 1..k {
                prop_assert!(!p.pow(j).is_identity());
            }
        }

        #[test]
        fn cycle_notation_roundtrip(p in arb_perm(16)) {
            let q = Permutation::parse(p.degree(), &p.to_string()).unwrap();
            prop_assert_eq!(p, q);
        }
    }
}
