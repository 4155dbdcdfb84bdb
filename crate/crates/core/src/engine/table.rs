use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::monomial::MonomialIdeal;

/// Shape bound of the Betti table of `S/I`: `projdim <= min(r, n)` and
/// `reg <= min(r, n) * (max deg - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableBounds {
    /// a(I): number of homological degrees, `min(r, n) + 1`.
    pub homological: usize,
    /// b(I): number of strands.
    pub strands: usize,
}

impl TableBounds {
    pub fn of(ideal: &MonomialIdeal) -> Self {
        let m = ideal.num_generators().min(ideal.num_vars());
        let d = ideal.max_degree().saturating_sub(1) as usize;
        Self { homological: m + 1, strands: m * d + 1 }
    }
}

/// Graded Betti numbers `β_{i,j}(S/I)`, stored densely by strand `j - i`
/// and homological degree `i`.
///
/// Equality ignores the allocated shape: two tables are equal when their
/// nonzero entries agree.
#[derive(Debug, Clone, Eq)]
pub struct BettiTable {
    homological: usize,
    strands: usize,
    data: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("β_{{{i},{degree}}} lies outside the {homological}x{strands} table bound")]
pub struct OutOfBounds {
    pub i: usize,
    pub degree: u64,
    pub homological: usize,
    pub strands: usize,
}

impl BettiTable {
    pub fn zeros(bounds: TableBounds) -> Self {
        Self {
            homological: bounds.homological,
            strands: bounds.strands,
            data: vec![0; bounds.homological * bounds.strands],
        }
    }

    pub fn bounds(&self) -> TableBounds {
        TableBounds { homological: self.homological, strands: self.strands }
    }

    fn slot(&self, i: usize, degree: u64) -> Option<usize> {
        let strand = degree.checked_sub(i as u64)? as usize;
        (i < self.homological && strand < self.strands).then(|| strand * self.homological + i)
    }

    /// `β_{i,degree}`; zero outside the stored shape.
    pub fn get(&self, i: usize, degree: u64) -> u64 {
        self.slot(i, degree).map_or(0, |s| self.data[s])
    }

    pub fn add(&mut self, i: usize, degree: u64, count: u64) -> Result<(), OutOfBounds> {
        match self.slot(i, degree) {
            Some(s) => {
                self.data[s] += count;
                Ok(())
            }
            None if count == 0 => Ok(()),
            None => Err(OutOfBounds { i, degree, homological: self.homological, strands: self.strands }),
        }
    }

    /// Entry-wise sum; `other` must fit in `self`'s shape.
    pub fn accumulate(&mut self, other: &BettiTable) -> Result<(), OutOfBounds> {
        for ((i, j), c) in other.nonzero() {
            self.add(i, j, c)?;
        }
        Ok(())
    }

    /// Nonzero entries keyed by `(i, internal degree)`.
    pub fn nonzero(&self) -> BTreeMap<(usize, u64), u64> {
        let mut out = BTreeMap::new();
        for strand in 0..self.strands {
            for i in 0..self.homological {
                let c = self.data[strand * self.homological + i];
                if c != 0 {
                    out.insert((i, (i + strand) as u64), c);
                }
            }
        }
        out
    }

    pub fn from_entries(entries: &BTreeMap<(usize, u64), u64>) -> Self {
        let homological = entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(1);
        let strands = entries.keys().map(|&(i, j)| (j - i as u64) as usize + 1).max().unwrap_or(1);
        let mut t = Self::zeros(TableBounds { homological, strands });
        for (&(i, j), &c) in entries {
            t.add(i, j, c).expect("shape covers every entry");
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Largest `i` with a nonzero entry.
    pub fn projdim(&self) -> Option<usize> {
        self.nonzero().keys().map(|&(i, _)| i).max()
    }

    /// Largest strand `j - i` with a nonzero entry.
    pub fn reg(&self) -> Option<u64> {
        self.nonzero().keys().map(|&(i, j)| j - i as u64).max()
    }

    /// Column sums `Σ_j β_{i,j}` for `i = 0..=projdim`.
    pub fn totals(&self) -> Vec<u64> {
        let p = self.projdim().map_or(0, |p| p + 1);
        (0..p).map(|i| (0..self.strands).map(|s| self.data[s * self.homological + i]).sum()).collect()
    }

    /// Trimmed rows: `rows[s][i] = β_{i,i+s}` for `s <= reg`, `i <= projdim`.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        let (Some(p), Some(r)) = (self.projdim(), self.reg()) else {
            return Vec::new();
        };
        (0..=r as usize)
            .map(|s| (0..=p).map(|i| self.data[s * self.homological + i]).collect())
            .collect()
    }
}

impl PartialEq for BettiTable {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero() == other.nonzero()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::render_text(self))
    }
}

/// Multigraded Betti numbers `β_{i,a}(S/I)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultigradedBetti {
    entries: BTreeMap<(usize, Vec<u32>), u64>,
}

impl MultigradedBetti {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, multidegree: Vec<u32>, count: u64) {
        if count > 0 {
            *self.entries.entry((i, multidegree)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, multidegree: &[u32]) -> u64 {
        self.entries.get(&(i, multidegree.to_vec())).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[u32], u64)> + '_ {
        self.entries.iter().map(|((i, a), &c)| (*i, a.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero multidegrees in homological degree `i`.
    pub fn support(&self, i: usize) -> impl Iterator<Item = &[u32]> + '_ {
        self.entries.keys().filter(move |(k, _)| *k == i).map(|(_, a)| a.as_slice())
    }

    /// Coarsens to the graded table by total degree.
    pub fn to_graded(&self, bounds: TableBounds) -> Result<BettiTable, OutOfBounds> {
        let mut t = BettiTable::zeros(bounds);
        for (i, a, c) in self.iter() {
            t.add(i, a.iter().map(|&e| e as u64).sum(), c)?;
        }
        Ok(t)
    }
}
