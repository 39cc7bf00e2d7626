//! Coset enumeration for presentations on involutions.
//!
//! Every generator is an involution, so the inverse column of `x` is `x`
//! itself and a table has one column per generator. Cosets are defined in
//! HLT order: each live coset in turn is scanned under every relator, filling
//! gaps with new cosets, and then completed. When the table is about to
//! overflow, a lookahead pass scans every coset without defining new ones and
//! compacts away the coincident rows.

use std::collections::VecDeque;

use super::{Presentation, Word};
use crate::error::{Error, Result};

const UNDEF: u32 = u32::MAX;

/// Complete table of the action on the cosets of a subgroup: `row(c)[x]` is
/// the coset `c·ρ_x`. Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    rank: usize,
    rows: Vec<u32>,
}

impl CosetTable {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.rows.len() / self.rank.max(1)
    }

    pub fn row(&self, c: usize) -> &[u32] {
        &self.rows[c * self.rank..(c + 1) * self.rank]
    }

    pub fn act(&self, c: usize, x: usize) -> usize {
        self.rows[c * self.rank + x] as usize
    }

    /// The coset reached from `c` by applying the letters of `w` in order.
    pub fn trace(&self, c: usize, w: &Word) -> usize {
        w.letters().iter().fold(c, |k, &x| self.act(k, x))
    }
}

struct Enumerator<'a> {
    rank: usize,
    relators: &'a [Word],
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: VecDeque<u32>,
}

impl Enumerator<'_> {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.rank + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.rank + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: u32, x: usize) -> u32 {
        let d = self.allocated() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.rank));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x, c);
        d
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, lose) = if a < b { (a, b) } else { (b, a) };
        self.parent[lose as usize] = keep;
        self.live -= 1;
        self.queue.push_back(lose);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.rank {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x, UNDEF);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let (ex, fx) = (self.get(e1, x), self.get(f1, x));
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else if fx != UNDEF {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x, e1);
                }
            }
        }
    }

    /// Scans `w` at `c`, defining cosets to close the gap when `fill` is set.
    /// A gap of one letter is closed by a deduction either way.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.get(f, w[i as usize]) != UNDEF {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.get(b, w[j as usize]) != UNDEF {
                b = self.get(b, w[j as usize]);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, x, f);
                return;
            }
            if !fill {
                return;
            }
            self.define(f, w[i as usize]);
        }
    }

    fn lookahead(&mut self) {
        let relators = self.relators;
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            for w in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, w.letters(), false);
            }
            c += 1;
        }
    }

    /// Drops dead rows, renumbering live cosets in order. Returns the new
    /// index of the first live coset at or after `from`.
    fn compact(&mut self, from: usize) -> usize {
        let mut map = vec![UNDEF; self.allocated()];
        let mut next = 0u32;
        let mut new_from = None;
        for c in 0..self.allocated() {
            if c >= from && new_from.is_none() && self.is_live(c as u32) {
                new_from = Some(next as usize);
            }
            if self.is_live(c as u32) {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.rank);
        for c in 0..self.allocated() {
            if map[c] != UNDEF {
                table.extend(self.table[c * self.rank..(c + 1) * self.rank].iter().map(|&d| {
                    if d == UNDEF {
                        UNDEF
                    } else {
                        map[d as usize]
                    }
                }));
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_from.unwrap_or(next as usize)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`. At most `max_cosets` rows are held at once; running out
/// is reported as `CosetLimitExceeded`, which says nothing about finiteness.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let rank = p.rank();
    let relators = p.relators();
    // the most rows one coset's pass can add
    let margin = relators.iter().map(Word::len).sum::<usize>() + rank + 1;
    if max_cosets <= margin {
        return Err(Error::CosetLimitExceeded(max_cosets));
    }
    let mut e = Enumerator {
        rank,
        relators,
        table: vec![UNDEF; rank],
        parent: vec![0],
        live: 1,
        max: max_cosets,
        queue: VecDeque::new(),
    };
    for w in subgroup {
        if !e.is_live(0) {
            break;
        }
        e.scan(0, w.letters(), true);
    }
    let mut c = 0usize;
    while c < e.allocated() {
        if e.allocated() + margin > e.max {
            e.lookahead();
            c = e.compact(c);
            if e.allocated() + margin > e.max - e.max / 64 {
                return Err(Error::CosetLimitExceeded(max_cosets));
            }
            if c >= e.allocated() {
                break;
            }
        }
        let cc = c as u32;
        for w in relators {
            if !e.is_live(cc) {
                break;
            }
            e.scan(cc, w.letters(), true);
        }
        for x in 0..rank {
            if !e.is_live(cc) {
                break;
            }
            if e.get(cc, x) == UNDEF {
                e.define(cc, x);
            }
        }
        c += 1;
    }
    e.compact(0);
    debug_assert_eq!(e.allocated(), e.live);
    Ok(CosetTable { rank, rows: e.table })
}
