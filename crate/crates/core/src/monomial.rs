//! Exact monomial arithmetic, monomial ideals and polarization.
//!
//! Exponents are stored as `u32` but bounded by [`MAX_EXPONENT`] at every
//! construction site, so total degrees of lcms over any realistic number of
//! generators fit comfortably in a `u64`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest exponent accepted on input.
pub const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("malformed monomial token `{0}`")]
    Malformed(String),
    #[error("variable index {index} out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("exponent must be a positive integer, got `{0}`")]
    BadExponent(String),
    #[error("exponent {0} exceeds the supported maximum {MAX_EXPONENT}")]
    ExponentTooLarge(u64),
    #[error("monomial length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("the unit monomial generates the whole ring")]
    UnitGenerator,
    #[error("ideal needs at least one variable")]
    NoVariables,
    #[error("invalid ideal JSON: {0}")]
    Json(String),
}

/// A monomial `x_1^{e_1} ... x_n^{e_n}` stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self, MonomialError> {
        if let Some(&e) = exponents.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(MonomialError::ExponentTooLarge(e as u64));
        }
        Ok(Self { exponents })
    }

    /// The unit monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Self { exponents: vec![0; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    fn check_len(&self, other: &Self) -> Result<(), MonomialError> {
        if self.exponents.len() == other.exponents.len() {
            Ok(())
        } else {
            Err(MonomialError::LengthMismatch(self.exponents.len(), other.exponents.len()))
        }
    }

    /// Componentwise maximum of the exponent vectors.
    pub fn lcm(&self, other: &Self) -> Result<Self, MonomialError> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.lcm_assign(other);
        Ok(out)
    }

    /// In-place lcm; callers guarantee equal lengths.
    pub(crate) fn lcm_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        for (a, &b) in self.exponents.iter_mut().zip(&other.exponents) {
            if b > *a {
                *a = b;
            }
        }
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Self) -> Result<bool, MonomialError> {
        self.check_len(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Self) -> Option<Self> {
        if self.exponents.len() != other.exponents.len() || !other.divides_unchecked(self) {
            return None;
        }
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a - b).collect();
        Some(Self { exponents })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `x<i>(^<e>)?` factors joined by `*`; the literal `1` is the unit.
pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial, MonomialError> {
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one(n));
    }
    let mut exponents = vec![0u64; n];
    for token in text.split('*') {
        let token = token.trim();
        let (var, exp) = match token.split_once('^') {
            Some((v, e)) => (v, Some(e)),
            None => (token, None),
        };
        let index: usize = var
            .strip_prefix('x')
            .filter(|digits| !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|digits| digits.parse().ok())
            .ok_or_else(|| MonomialError::Malformed(token.to_string()))?;
        if index == 0 || index > n {
            return Err(MonomialError::VariableOutOfRange { index, n });
        }
        let e: u64 = match exp {
            None => 1,
            Some(e) => {
                let e = e.trim();
                if e.is_empty() || !e.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(MonomialError::BadExponent(e.to_string()));
                }
                match e.parse::<u64>() {
                    Ok(0) => return Err(MonomialError::BadExponent(e.to_string())),
                    Ok(v) => v,
                    Err(_) => return Err(MonomialError::ExponentTooLarge(u64::MAX)),
                }
            }
        };
        exponents[index - 1] = exponents[index - 1].saturating_add(e);
    }
    if let Some(&e) = exponents.iter().find(|&&e| e > MAX_EXPONENT as u64) {
        return Err(MonomialError::ExponentTooLarge(e));
    }
    Ok(Monomial { exponents: exponents.into_iter().map(|e| e as u32).collect() })
}

/// Largest variable index mentioned in a monomial string, used to infer `n`
/// for text inputs.
pub fn max_variable_index(text: &str) -> Result<usize, MonomialError> {
    let text = text.trim();
    if text == "1" {
        return Ok(0);
    }
    let mut max = 0;
    for token in text.split('*') {
        let var = token.trim().split('^').next().unwrap_or("");
        let index: usize = var
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| MonomialError::Malformed(token.trim().to_string()))?;
        max = max.max(index);
    }
    Ok(max)
}

/// Drops duplicates and non-minimal generators, keeping input order.
pub fn minimalize_generators(gens: &[Monomial]) -> Result<Vec<Monomial>, MonomialError> {
    if gens.iter().any(Monomial::is_one) {
        return Err(MonomialError::UnitGenerator);
    }
    if let Some(first) = gens.first() {
        if let Some(bad) = gens.iter().find(|g| g.num_vars() != first.num_vars()) {
            return Err(MonomialError::LengthMismatch(first.num_vars(), bad.num_vars()));
        }
    }
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(j, h)| {
            // a strictly smaller divisor, or an equal copy that appeared earlier
            h.divides_unchecked(g) && (h != g || j < i)
        });
        if !redundant {
            kept.push(g.clone());
        }
    }
    Ok(kept)
}

/// A monomial ideal given by an ordered minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    generators: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Builds an ideal, minimalizing the generators on the way in.
    pub fn new(n: usize, generators: Vec<Monomial>) -> Result<Self, MonomialError> {
        if n == 0 {
            return Err(MonomialError::NoVariables);
        }
        for g in &generators {
            if g.num_vars() != n {
                return Err(MonomialError::LengthMismatch(n, g.num_vars()));
            }
        }
        let generators = minimalize_generators(&generators)?;
        Ok(Self { n, generators })
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(n: usize, exps: &[&[u32]]) -> Result<Self, MonomialError> {
        let gens = exps.iter().map(|e| Monomial::new(e.to_vec())).collect::<Result<Vec<_>, _>>()?;
        Self::new(n, gens)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn generator(&self, k: usize) -> &Monomial {
        &self.generators[k]
    }

    pub fn max_degree(&self) -> u64 {
        self.generators.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    /// Lcm of all generators; every nonzero multigraded Betti number lives
    /// below it.
    pub fn lcm_all(&self) -> Monomial {
        let mut m = Monomial::one(self.n);
        for g in &self.generators {
            m.lcm_assign(g);
        }
        m
    }

    /// Same ideal with generators reordered: `order[k]` is the old index of
    /// the new k-th generator.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.generators.len(), "permutation length");
        let generators = order.iter().map(|&k| self.generators[k].clone()).collect();
        Self { n: self.n, generators }
    }

    /// Text form: one generator per line, `#` comments and blank lines
    /// ignored. `n` defaults to the largest variable index mentioned.
    pub fn parse_text(text: &str, n: Option<usize>) -> Result<Self, MonomialError> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let n = match n {
            Some(n) => n,
            None => {
                let mut max = 0;
                for l in &lines {
                    max = max.max(max_variable_index(l)?);
                }
                max.max(1)
            }
        };
        let gens = lines.iter().map(|l| parse_monomial(l, n)).collect::<Result<Vec<_>, _>>()?;
        Self::new(n, gens)
    }

    pub fn parse_json(text: &str) -> Result<Self, MonomialError> {
        let raw: IdealJson = serde_json::from_str(text).map_err(|e| MonomialError::Json(e.to_string()))?;
        let gens = raw.generators.into_iter().map(Monomial::new).collect::<Result<Vec<_>, _>>()?;
        Self::new(raw.n, gens)
    }

    pub fn to_json(&self) -> String {
        let raw = IdealJson {
            n: self.n,
            generators: self.generators.iter().map(|g| g.exponents.clone()).collect(),
        };
        serde_json::to_string(&raw).expect("ideal serializes")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// Polarized ideal together with the variable map back to the original ring.
#[derive(Debug, Clone)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// `origin[j]` is the original variable of polarized variable `j`.
    pub origin: Vec<usize>,
}

impl Polarization {
    /// Sums polarized exponents per original variable.
    pub fn depolarize(&self, multidegree: &[u32]) -> Vec<u32> {
        let n = self.origin.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![0u32; n];
        for (j, &e) in multidegree.iter().enumerate() {
            out[self.origin[j]] += e;
        }
        out
    }
}

/// Standard polarization: `x_i^e` becomes `x_{i,1} ... x_{i,e}`, with the new
/// variables grouped by original variable.
pub fn polarize(ideal: &MonomialIdeal) -> Polarization {
    let n = ideal.num_vars();
    let mut max_exp = vec![0u32; n];
    for g in ideal.generators() {
        for (m, &e) in max_exp.iter_mut().zip(g.exponents()) {
            *m = (*m).max(e);
        }
    }
    // Variables that never occur still keep one slot so the map stays surjective.
    let widths: Vec<usize> = max_exp.iter().map(|&m| m.max(1) as usize).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut origin = Vec::new();
    for (i, &w) in widths.iter().enumerate() {
        offsets.push(origin.len());
        origin.extend(std::iter::repeat_n(i, w));
    }
    let total = origin.len();
    let generators = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut e = vec![0u32; total];
            for (i, &ei) in g.exponents().iter().enumerate() {
                for slot in &mut e[offsets[i]..offsets[i] + ei as usize] {
                    *slot = 1;
                }
            }
            Monomial { exponents: e }
        })
        .collect();
    Polarization { ideal: MonomialIdeal { n: total, generators }, origin }
}
