//! Critical sets with the depth/regularity bounds they imply, and checks of
//! the vanishing patterns every Betti table must satisfy.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{BettiTable, MultigradedBetti};
use crate::monomial::MonomialIdeal;
use crate::simplicial::{label, BitFace, Face, FaceRepr};

/// Default cap on `r` for the exhaustive critical-set scan.
pub const DEFAULT_CRITICAL_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{r} generators exceed the critical-set scan cap of {cap}")]
pub struct CapExceeded {
    pub r: usize,
    pub cap: usize,
}

/// `σ` is critical when removing any member or adding any non-member
/// changes its label.
pub fn is_critical<F: FaceRepr>(sigma: &F, ideal: &MonomialIdeal) -> bool {
    let m = label(sigma, ideal);
    let members = sigma.members();
    if members.iter().any(|&v| label(&sigma.without(v), ideal) == m) {
        return false;
    }
    // m_{σ∪{v}} = m_σ exactly when u_v divides m_σ
    (0..ideal.num_generators()).filter(|v| !sigma.contains(*v)).all(|v| !ideal.generator(v).divides_unchecked(&m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalReport {
    pub critical: Vec<Face>,
    /// Largest critical cardinality.
    pub p: Option<usize>,
    /// Largest `deg(m_σ) - |σ|` over critical `σ`.
    pub r: Option<u64>,
}

pub fn pr_invariants(ideal: &MonomialIdeal) -> Result<CriticalReport, CapExceeded> {
    pr_invariants_capped(ideal, DEFAULT_CRITICAL_CAP)
}

pub fn pr_invariants_capped(ideal: &MonomialIdeal, cap: usize) -> Result<CriticalReport, CapExceeded> {
    let r = ideal.num_generators();
    if r > cap || r > 63 {
        return Err(CapExceeded { r, cap: cap.min(63) });
    }
    let mut critical: Vec<BitFace> =
        (0u64..1 << r).into_par_iter().map(BitFace).filter(|s| is_critical(s, ideal)).collect();
    critical.sort();
    let p = critical.iter().map(FaceRepr::len).max();
    let rr = critical.iter().map(|s| label(s, ideal).degree() - s.len() as u64).max();
    Ok(CriticalReport { critical: critical.iter().map(FaceRepr::to_face).collect(), p, r: rr })
}

/// `projdim >= p` and `reg >= r`, i.e. `depth <= n - p` by Auslander-Buchsbaum.
pub fn check_bounds(table: &BettiTable, report: &CriticalReport) -> bool {
    let projdim_ok = match report.p {
        Some(p) => table.projdim().is_some_and(|pd| pd >= p),
        None => true,
    };
    let reg_ok = match report.r {
        Some(r) => table.reg().is_some_and(|reg| reg >= r),
        None => true,
    };
    projdim_ok && reg_ok
}

/// Critical faces whose Betti number `β_{|σ|, deg m_σ}` is zero in `table`.
pub fn critical_nonvanishing_failures(table: &BettiTable, report: &CriticalReport, ideal: &MonomialIdeal) -> Vec<Face> {
    report
        .critical
        .iter()
        .filter(|s| table.get(s.len(), label(*s, ideal).degree()) == 0)
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `β_{i+1, a + a_ℓ} ≠ 0` although `β_{i,b} = 0` on the whole box `a ≤ b < a + a_ℓ`.
    Multigraded { i: usize, shift: Vec<u32>, generator: usize },
    /// `β_{i+1, j+d} ≠ 0` although `β_{i,k} = 0` for `k = j..j+d-1`.
    Graded { i: usize, j: i64, d: u64 },
    /// `β_{i+1,k} ≠ 0` for some `k > max{k : β_{i,k} ≠ 0} + d`.
    TopDegree { i: usize, degree: u64, d: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Multigraded { i, shift, generator } => write!(
                f,
                "β_{{{},a+a_{}}} ≠ 0 with β_{{{},b}} = 0 on the box below it (a = {shift:?})",
                i + 1,
                generator + 1,
                i
            ),
            Violation::Graded { i, j, d } => {
                write!(f, "β_{{{},{}}} ≠ 0 with β_{{{i},k}} = 0 for k = {j}..{}", i + 1, j + *d as i64, j + *d as i64 - 1)
            }
            Violation::TopDegree { i, degree, d } => {
                write!(f, "β_{{{},{degree}}} ≠ 0 beyond the top degree of column {i} plus {d}", i + 1)
            }
        }
    }
}

/// Multigraded vanishing over every shift `a ≥ 0` that can reach a nonzero
/// entry: for each nonzero `β_{i+1,c}` and each generator `ℓ` with
/// `a_ℓ ≤ c`, the box `[c - a_ℓ, c)` must meet the support of `β_i`.
pub fn verify_vanishing_multigraded(mb: &MultigradedBetti, ideal: &MonomialIdeal) -> Vec<Violation> {
    let mut support: BTreeMap<usize, Vec<&[u32]>> = BTreeMap::new();
    for (i, a, _) in mb.iter() {
        support.entry(i).or_default().push(a);
    }
    let mut out = Vec::new();
    for (&i1, targets) in &support {
        let Some(i) = i1.checked_sub(1) else { continue };
        let below = support.get(&i).map(Vec::as_slice).unwrap_or(&[]);
        for c in targets {
            for (ell, g) in ideal.generators().iter().enumerate() {
                let Some(shift) = c.iter().zip(g.exponents()).map(|(&c, &e)| c.checked_sub(e)).collect::<Option<Vec<u32>>>()
                else {
                    continue;
                };
                let hit = below.iter().any(|b| {
                    *b != *c && b.iter().zip(&shift).all(|(x, a)| x >= a) && b.iter().zip(c.iter()).all(|(x, y)| x <= y)
                });
                if !hit {
                    out.push(Violation::Multigraded { i, shift, generator: ell });
                }
            }
        }
    }
    out
}

/// Graded corollary with window length `d` (the largest generator degree).
pub fn verify_vanishing_graded(table: &BettiTable, d: u64) -> Vec<Violation> {
    let entries = table.nonzero();
    let mut out = Vec::new();
    for &(i1, deg) in entries.keys() {
        let Some(i) = i1.checked_sub(1) else { continue };
        let j = deg as i64 - d as i64;
        let window_empty = (j..j + d as i64).all(|k| k < 0 || table.get(i, k as u64) == 0);
        if window_empty {
            out.push(Violation::Graded { i, j, d });
        }
    }
    out
}

/// `β_{i,k} = 0 ∀ k ≥ j  ⟹  β_{i+1,k+d} = 0 ∀ k ≥ j`, checked with the
/// smallest admissible `j` for every column.
pub fn verify_top_degree_growth(table: &BettiTable, d: u64) -> Vec<Violation> {
    let entries = table.nonzero();
    let top = |i: usize| entries.keys().filter(|(k, _)| *k == i).map(|&(_, deg)| deg).max();
    let mut out = Vec::new();
    for &(i1, deg) in entries.keys() {
        let Some(i) = i1.checked_sub(1) else { continue };
        let bound = top(i).map(|t| t + d);
        if bound.is_none_or(|b| deg > b) {
            out.push(Violation::TopDegree { i, degree: deg, d });
        }
    }
    out
}

/// True iff every generator is a squarefree quadric.
pub fn is_edge_ideal(ideal: &MonomialIdeal) -> bool {
    ideal.generators().iter().all(|g| g.is_squarefree() && g.degree() == 2)
}

/// All table-level vanishing checks for `ideal`.
pub fn verify_vanishing(table: &BettiTable, mb: Option<&MultigradedBetti>, ideal: &MonomialIdeal) -> Vec<Violation> {
    let d = ideal.max_degree();
    let mut out = verify_vanishing_graded(table, d);
    out.extend(verify_top_degree_growth(table, d));
    if is_edge_ideal(ideal) {
        out.extend(verify_vanishing_graded(table, 2));
    }
    if let Some(mb) = mb {
        out.extend(verify_vanishing_multigraded(mb, ideal));
    }
    out
}
