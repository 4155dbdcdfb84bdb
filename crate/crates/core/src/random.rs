//! Seeded random monomial ideals.
//!
//! Protocol: each generator's degree is fixed or drawn uniformly from a
//! range, then the monomial is drawn uniformly among monomials of that
//! degree (stars and bars). Draws that duplicate, divide, or are divided by
//! an earlier survivor are rejected, so the result is minimal with exactly
//! `r` generators in draw order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RandomError {
    #[error("parameters must be positive (n={n}, r={r})")]
    NonPositive { n: usize, r: usize },
    #[error("only {available} monomials of degree {degree} exist in {n} variables, {r} requested")]
    Infeasible { n: usize, degree: u32, available: u128, r: usize },
    #[error("gave up after {0} draws without reaching the requested number of generators")]
    RetryBudget(usize),
    #[error("bad degree spec `{0}` (expected d or lo-hi)")]
    BadSpec(String),
}

/// Degree of each drawn generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeSpec {
    Fixed(u32),
    Range(u32, u32),
}

impl DegreeSpec {
    pub fn max(&self) -> u32 {
        match *self {
            DegreeSpec::Fixed(d) => d,
            DegreeSpec::Range(_, hi) => hi,
        }
    }
}

impl FromStr for DegreeSpec {
    type Err = RandomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RandomError::BadSpec(s.to_string());
        match s.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi): (u32, u32) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
                if lo == 0 || lo > hi {
                    return Err(bad());
                }
                Ok(if lo == hi { DegreeSpec::Fixed(lo) } else { DegreeSpec::Range(lo, hi) })
            }
            None => match s.trim().parse() {
                Ok(0) | Err(_) => Err(bad()),
                Ok(d) => Ok(DegreeSpec::Fixed(d)),
            },
        }
    }
}

impl fmt::Display for DegreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSpec::Fixed(d) => write!(f, "{d}"),
            DegreeSpec::Range(lo, hi) => write!(f, "{lo}-{hi}"),
        }
    }
}

/// `C(d + n - 1, n - 1)`, saturating.
pub fn count_monomials(n: usize, d: u32) -> u128 {
    let (top, k) = (d as u128 + n as u128 - 1, n as u128 - 1);
    let k = k.min(top - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = match acc.checked_mul(top - j) {
            Some(v) => v / (j + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// A uniformly random monomial of degree `d` in `n` variables.
pub fn random_monomial<R: Rng>(rng: &mut R, n: usize, d: u32) -> Monomial {
    let slots = d as usize + n - 1;
    let mut bars = sample(rng, slots, n - 1).into_vec();
    bars.sort_unstable();
    let mut exps = Vec::with_capacity(n);
    let mut prev = 0usize;
    for (k, &b) in bars.iter().enumerate() {
        // stars between consecutive bars
        exps.push((b - prev - if k == 0 { 0 } else { 1 }) as u32);
        prev = b;
    }
    let last = if n == 1 { d as usize } else { slots - prev - 1 };
    exps.push(last as u32);
    Monomial::new(exps).expect("degree within bound")
}

const DRAWS_PER_GENERATOR: usize = 2000;

pub fn random_ideal(n: usize, r: usize, degree: DegreeSpec, seed: u64) -> Result<MonomialIdeal, RandomError> {
    if n == 0 || r == 0 {
        return Err(RandomError::NonPositive { n, r });
    }
    if let DegreeSpec::Fixed(d) = degree {
        let available = count_monomials(n, d);
        if (r as u128) > available {
            return Err(RandomError::Infeasible { n, degree: d, available, r });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Monomial> = Vec::with_capacity(r);
    let mut seen: HashSet<Monomial> = HashSet::new();
    let budget = DRAWS_PER_GENERATOR * r;
    for _ in 0..budget {
        if gens.len() == r {
            break;
        }
        let d = match degree {
            DegreeSpec::Fixed(d) => d,
            DegreeSpec::Range(lo, hi) => rng.gen_range(lo..=hi),
        };
        let m = random_monomial(&mut rng, n, d);
        if !seen.insert(m.clone()) {
            continue;
        }
        if gens.iter().any(|g| g.divides_unchecked(&m) || m.divides_unchecked(g)) {
            continue;
        }
        gens.push(m);
    }
    if gens.len() < r {
        return Err(RandomError::RetryBudget(budget));
    }
    Ok(MonomialIdeal::new(n, gens).expect("generators are minimal by construction"))
}

/// A random squarefree ideal: generators are random subsets of `[n]` with
/// sizes in `[lo, hi]`, minimalized.
pub fn random_squarefree_ideal(n: usize, r: usize, lo: usize, hi: usize, seed: u64) -> MonomialIdeal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = Vec::with_capacity(r);
    for _ in 0..r {
        let k = rng.gen_range(lo..=hi.min(n));
        let mut e = vec![0u32; n];
        for v in sample(&mut rng, n, k).into_iter() {
            e[v] = 1;
        }
        gens.push(Monomial::new(e).expect("squarefree"));
    }
    MonomialIdeal::new(n, gens).expect("positive-degree generators")
}
