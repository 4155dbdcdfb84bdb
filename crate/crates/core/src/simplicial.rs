//! Faces of the simplex on the generators, their lcm labels, and the
//! Taylor/Lyubeznik admissibility tests.
//!
//! Generator indices are 0-based throughout the crate; [`Face`] displays
//! them 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("generator index {index} out of range for {r} generators")]
    IndexOutOfRange { index: usize, r: usize },
    #[error("face members must be strictly increasing")]
    NotSorted,
    #[error("vertex {0} is not a member of the face")]
    NotAMember(usize),
    #[error("not a codimension-one subface")]
    NotAFacet,
}

/// Which simplicial resolution the reduction starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Start {
    Taylor,
    #[default]
    Lyubeznik,
}

impl std::str::FromStr for Start {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "taylor" => Ok(Start::Taylor),
            "lyubeznik" => Ok(Start::Lyubeznik),
            other => Err(format!("unknown start complex `{other}` (expected taylor|lyubeznik)")),
        }
    }
}

/// Storage-agnostic view of a subset of generator indices.
///
/// `Ord` must order faces first by cardinality and then lexicographically
/// on their sorted member lists.
pub trait FaceRepr: Clone + Eq + Hash + Ord + fmt::Debug {
    fn empty() -> Self;
    fn len(&self) -> usize;
    fn contains(&self, v: usize) -> bool;
    fn with(&self, v: usize) -> Self;
    fn without(&self, v: usize) -> Self;
    /// Members in increasing order.
    fn members(&self) -> Vec<usize>;
    fn max_member(&self) -> Option<usize>;
    fn is_subset(&self, other: &Self) -> bool;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn to_face(&self) -> Face {
        Face(self.members().into_iter().map(|v| v as u32).collect())
    }

    fn from_face(face: &Face) -> Self {
        face.members().into_iter().fold(Self::empty(), |acc, v| acc.with(v))
    }

    /// The single element of `self \ other` when `other` is a facet of `self`.
    fn facet_vertex(&self, other: &Self) -> Option<usize> {
        if self.len() != other.len() + 1 || !other.is_subset(self) {
            return None;
        }
        self.members().into_iter().find(|&v| !other.contains(v))
    }
}

/// A face as a strictly increasing list of 0-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Face(Vec<u32>);

impl Face {
    pub fn new(members: Vec<u32>) -> Result<Self, FaceError> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FaceError::NotSorted);
        }
        Ok(Self(members))
    }

    /// From 1-based indices as they appear in printed examples.
    pub fn from_one_based(members: &[u32]) -> Result<Self, FaceError> {
        if members.contains(&0) {
            return Err(FaceError::IndexOutOfRange { index: 0, r: 0 });
        }
        Self::new(members.iter().map(|&v| v - 1).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

impl FaceRepr for Face {
    fn empty() -> Self {
        Face(Vec::new())
    }
    fn len(&self) -> usize {
        self.0.len()
    }
    fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&(v as u32)).is_ok()
    }
    fn with(&self, v: usize) -> Self {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&(v as u32)) {
            out.insert(pos, v as u32);
        }
        Face(out)
    }
    fn without(&self, v: usize) -> Self {
        Face(self.0.iter().copied().filter(|&x| x as usize != v).collect())
    }
    fn members(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }
    fn max_member(&self) -> Option<usize> {
        self.0.last().map(|&v| v as usize)
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
    fn to_face(&self) -> Face {
        self.clone()
    }
}

/// Bit-mask face for up to 64 generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitFace(pub u64);

impl Ord for BitFace {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_len = self.0.count_ones().cmp(&other.0.count_ones());
        if by_len != Ordering::Equal {
            return by_len;
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // With equal cardinality, the lowest differing index belongs to the
        // lexicographically smaller face.
        if self.0 & diff & diff.wrapping_neg() != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for BitFace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FaceRepr for BitFace {
    fn empty() -> Self {
        BitFace(0)
    }
    fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    fn contains(&self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }
    fn with(&self, v: usize) -> Self {
        BitFace(self.0 | 1 << v)
    }
    fn without(&self, v: usize) -> Self {
        BitFace(self.0 & !(1 << v))
    }
    fn members(&self) -> Vec<usize> {
        let mut bits = self.0;
        let mut out = Vec::with_capacity(bits.count_ones() as usize);
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        out
    }
    fn max_member(&self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }
    fn facet_vertex(&self, other: &Self) -> Option<usize> {
        let diff = self.0 ^ other.0;
        (other.0 & !self.0 == 0 && diff.count_ones() == 1).then(|| diff.trailing_zeros() as usize)
    }
}

fn check_range<F: FaceRepr>(sigma: &F, r: usize) -> Result<(), FaceError> {
    match sigma.max_member() {
        Some(m) if m >= r => Err(FaceError::IndexOutOfRange { index: m, r }),
        _ => Ok(()),
    }
}

/// `m_σ`, the lcm of the generators indexed by `σ`.
pub fn face_label<F: FaceRepr>(sigma: &F, ideal: &MonomialIdeal) -> Result<Monomial, FaceError> {
    check_range(sigma, ideal.num_generators())?;
    Ok(label(sigma, ideal))
}

pub(crate) fn label<F: FaceRepr>(sigma: &F, ideal: &MonomialIdeal) -> Monomial {
    let mut m = Monomial::one(ideal.num_vars());
    for v in sigma.members() {
        m.lcm_assign(ideal.generator(v));
    }
    m
}

/// `(-1)^(q-1)` where `v` is the q-th smallest member of `σ`.
pub fn sign<F: FaceRepr>(v: usize, sigma: &F) -> Result<i8, FaceError> {
    if !sigma.contains(v) {
        return Err(FaceError::NotAMember(v));
    }
    Ok(sign_unchecked(v, sigma))
}

pub(crate) fn sign_unchecked<F: FaceRepr>(v: usize, sigma: &F) -> i8 {
    let below = sigma.members().iter().take_while(|&&w| w < v).count();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

/// True iff `σ` is excluded from the Lyubeznik complex, i.e. some generator
/// `u_k` divides the label of `σ_{>k}`.
///
/// Suffix labels are built right to left once; each `k` is then tested
/// against the suffix that starts at the first member above it.
pub fn lyu_member<F: FaceRepr>(sigma: &F, ideal: &MonomialIdeal) -> bool {
    let members = sigma.members();
    if members.is_empty() {
        return false;
    }
    let n = ideal.num_vars();
    let mut suffix = vec![Monomial::one(n); members.len()];
    let mut acc = Monomial::one(n);
    for (j, &v) in members.iter().enumerate().rev() {
        acc.lcm_assign(ideal.generator(v));
        suffix[j] = acc.clone();
    }
    let mut lo = 0;
    for (j, &s) in members.iter().enumerate() {
        // σ_{>k} = {s_j, ...} for k in [s_{j-1}, s_j)
        for k in lo..s {
            if ideal.generator(k).divides_unchecked(&suffix[j]) {
                return true;
            }
        }
        lo = s;
    }
    false
}

/// True iff `σ` is a face of the chosen starting complex.
pub fn admissible<F: FaceRepr>(sigma: &F, ideal: &MonomialIdeal, start: Start) -> bool {
    match start {
        Start::Taylor => true,
        Start::Lyubeznik => !lyu_member(sigma, ideal),
    }
}

/// Coefficient of `1_τ` in the boundary of `1_σ`: a sign and the monomial
/// `m_σ / m_τ`. It is a field unit exactly when the quotient is `1`.
pub fn differential_coefficient<F: FaceRepr>(
    sigma: &F,
    tau: &F,
    ideal: &MonomialIdeal,
) -> Result<(i8, Monomial), FaceError> {
    check_range(sigma, ideal.num_generators())?;
    let v = sigma.facet_vertex(tau).ok_or(FaceError::NotAFacet)?;
    let quotient = label(sigma, ideal)
        .quotient(&label(tau, ideal))
        .expect("label of a subface divides the label of the face");
    Ok((sign_unchecked(v, sigma), quotient))
}

/// All size-`i` faces of the starting complex, in lexicographic order.
pub fn enumerate_admissible_faces<F: FaceRepr>(i: usize, ideal: &MonomialIdeal, start: Start) -> Vec<F> {
    let r = ideal.num_generators();
    let mut out = Vec::new();
    if i > r {
        return out;
    }
    let mut combo: Vec<usize> = (0..i).collect();
    loop {
        let face = combo.iter().fold(F::empty(), |acc, &v| acc.with(v));
        if admissible(&face, ideal, start) {
            out.push(face);
        }
        // next combination in lexicographic order
        let mut k = i;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if combo[k] < r - i + k {
                combo[k] += 1;
                for j in k + 1..i {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}
