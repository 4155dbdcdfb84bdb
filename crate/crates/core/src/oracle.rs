//! Brute-force ground truth.
//!
//! `β_{i,a}(S/I)` is the i-th homology of the Taylor complex tensored down to
//! the field in multidegree `a`: faces labelled exactly `x^a`, with boundary
//! entries `sign(v, σ)` between faces of equal label. Ranks come from a
//! self-contained exact elimination, independent of the engine's scalars.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{BettiTable, MultigradedBetti, TableBounds};
use crate::field::FieldKind;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::simplicial::{label, sign_unchecked, BitFace, FaceRepr};

/// Largest generator count the oracle accepts.
pub const ORACLE_MAX_GENERATORS: usize = 12;
/// Largest vertex count for face-list expansion.
pub const MAX_EXPANSION_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} generators exceed the oracle cap of {ORACLE_MAX_GENERATORS}")]
    TooManyGenerators(usize),
    #[error("face list is not closed under taking subsets")]
    NotSubsetClosed,
    #[error("{0} vertices exceed the expansion cap of {MAX_EXPANSION_VERTICES}")]
    TooManyVertices(usize),
}

/// Rank of an integer matrix over the given field.
///
/// Over the rationals the elimination is fraction-free: rows are combined by
/// cross-multiplication and divided by their content, so entries stay
/// integral and small.
pub fn rank(rows: &[Vec<i64>], field: FieldKind) -> usize {
    match field {
        FieldKind::Rational => rank_rational(rows),
        FieldKind::Prime(p) => rank_mod_p(rows, p as u64),
    }
}

fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pv = pivot_row[c].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pv - &f * y;
            }
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && g.abs() != BigInt::from(1) {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: u64| -> u64 {
        let (mut acc, mut b, mut e) = (1u64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let scale = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * scale % p;
        }
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p * p - f * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// A finite chain complex of field vector spaces with ±1/0 differentials.
#[derive(Debug, Clone)]
pub struct ScalarComplex {
    /// Basis size in each degree.
    pub dims: Vec<usize>,
    /// `boundaries[k]` maps degree `k+1` to degree `k`, as rows indexed by
    /// the degree-`k+1` basis.
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

impl ScalarComplex {
    /// Homology dimensions in each degree.
    pub fn homology(&self, field: FieldKind) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(|b| rank(b, field)).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = if k == 0 { 0 } else { ranks[k - 1] };
                let inc = ranks.get(k).copied().unwrap_or(0);
                self.dims[k] - out - inc
            })
            .collect()
    }

    /// Product of consecutive boundaries, entrywise; all zero on a complex.
    pub fn composite_is_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            upper.iter().all(|row| {
                (0..lower.first().map_or(0, Vec::len))
                    .all(|c| row.iter().zip(lower).map(|(a, l)| a * l[c]).sum::<i64>() == 0)
            })
        })
    }
}

/// Chain complex on faces grouped by size, boundary `σ ↦ Σ sign(v,σ) σ∖v`
/// restricted to faces present in the list.
fn complex_from_layers(layers: &[Vec<BitFace>]) -> ScalarComplex {
    let index: Vec<HashMap<BitFace, usize>> =
        layers.iter().map(|l| l.iter().enumerate().map(|(k, f)| (*f, k)).collect()).collect();
    let mut boundaries = Vec::new();
    for k in 1..layers.len() {
        let rows = layers[k]
            .iter()
            .map(|s| {
                let mut row = vec![0i64; layers[k - 1].len()];
                for v in s.members() {
                    if let Some(&j) = index[k - 1].get(&s.without(v)) {
                        row[j] = sign_unchecked(v, s) as i64;
                    }
                }
                row
            })
            .collect();
        boundaries.push(rows);
    }
    ScalarComplex { dims: layers.iter().map(Vec::len).collect(), boundaries }
}

fn check_cap(ideal: &MonomialIdeal) -> Result<(), OracleError> {
    let r = ideal.num_generators();
    if r > ORACLE_MAX_GENERATORS {
        return Err(OracleError::TooManyGenerators(r));
    }
    Ok(())
}

/// All Taylor faces grouped by label.
fn faces_by_label(ideal: &MonomialIdeal) -> HashMap<Monomial, Vec<BitFace>> {
    let r = ideal.num_generators();
    let mut groups: HashMap<Monomial, Vec<BitFace>> = HashMap::new();
    for mask in 0u64..(1 << r) {
        let f = BitFace(mask);
        groups.entry(label(&f, ideal)).or_default().push(f);
    }
    groups
}

fn strand_homology(faces: &[BitFace], field: FieldKind) -> Vec<usize> {
    let top = faces.iter().map(FaceRepr::len).max().unwrap_or(0);
    let mut layers = vec![Vec::new(); top + 1];
    for f in faces {
        layers[f.len()].push(*f);
    }
    complex_from_layers(&layers).homology(field)
}

/// `β_{i,a}(S/I)` for every `i`, as a vector indexed by `i`.
pub fn oracle_multigraded_betti(ideal: &MonomialIdeal, field: FieldKind, a: &[u32]) -> Result<Vec<usize>, OracleError> {
    check_cap(ideal)?;
    let target = Monomial::new(a.to_vec()).expect("bounded multidegree");
    let r = ideal.num_generators();
    if !target.divides_unchecked(&ideal.lcm_all()) {
        return Ok(vec![0; r + 1]);
    }
    let faces: Vec<BitFace> = (0u64..(1 << r)).map(BitFace).filter(|f| label(f, ideal) == target).collect();
    let mut h = strand_homology(&faces, field);
    h.resize(r + 1, 0);
    Ok(h)
}

/// All multigraded Betti numbers, from every label occurring in the Taylor
/// complex.
pub fn oracle_multigraded(ideal: &MonomialIdeal, field: FieldKind) -> Result<MultigradedBetti, OracleError> {
    check_cap(ideal)?;
    let groups: Vec<(Monomial, Vec<BitFace>)> = faces_by_label(ideal).into_iter().collect();
    let per_label: Vec<(Monomial, Vec<usize>)> =
        groups.into_par_iter().map(|(m, faces)| { let h = strand_homology(&faces, field); (m, h) }).collect();
    let mut out = MultigradedBetti::new();
    for (m, h) in per_label {
        for (i, &c) in h.iter().enumerate() {
            out.add(i, m.exponents().to_vec(), c as u64);
        }
    }
    Ok(out)
}

pub fn oracle_betti_table(ideal: &MonomialIdeal, field: FieldKind) -> Result<BettiTable, OracleError> {
    let mb = oracle_multigraded(ideal, field)?;
    Ok(mb.to_graded(TableBounds::of(ideal)).expect("Taylor bound holds for homology"))
}

/// Reduced homology of a simplicial complex given by all its faces, as
/// dimensions for `dim = -1, 0, ..., n - 1` (index 0 is dimension -1).
pub fn reduced_cohomology(n: usize, faces: &[Vec<usize>], field: FieldKind) -> Result<Vec<usize>, OracleError> {
    if n > MAX_EXPANSION_VERTICES {
        return Err(OracleError::TooManyVertices(n));
    }
    let set: HashSet<BitFace> = faces
        .iter()
        .map(|f| f.iter().fold(BitFace(0), |acc, &v| acc.with(v)))
        .collect();
    for f in &set {
        if f.members().into_iter().any(|v| v >= n || !set.contains(&f.without(v))) {
            return Err(OracleError::NotSubsetClosed);
        }
    }
    let mut layers = vec![Vec::new(); n + 1];
    let mut sorted: Vec<BitFace> = set.into_iter().collect();
    sorted.sort();
    for f in sorted {
        layers[f.len()].push(f);
    }
    let mut h = complex_from_layers(&layers).homology(field);
    h.resize(n + 1, 0);
    Ok(h)
}

/// Every subset of `[n]` containing none of the given nonfaces.
pub fn expand_faces(n: usize, nonfaces: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, OracleError> {
    if n > MAX_EXPANSION_VERTICES {
        return Err(OracleError::TooManyVertices(n));
    }
    let masks: Vec<u64> = nonfaces.iter().map(|g| g.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    Ok((0u64..(1 << n))
        .filter(|&f| masks.iter().all(|&g| f & g != g))
        .map(|f| BitFace(f).members())
        .collect())
}

/// Reduced Euler characteristic `Σ (-1)^k f_{k}` over faces of dimension k.
pub fn reduced_euler_characteristic(faces: &[Vec<usize>]) -> i64 {
    faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
}

/// Graded table summed per multidegree, used by callers that already hold
/// the multigraded oracle.
pub fn graded_counts(mb: &MultigradedBetti) -> BTreeMap<(usize, u64), u64> {
    let mut out = BTreeMap::new();
    for (i, a, c) in mb.iter() {
        *out.entry((i, a.iter().map(|&e| e as u64).sum())).or_insert(0) += c;
    }
    out
}
