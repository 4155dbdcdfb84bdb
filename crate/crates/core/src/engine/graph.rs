//! The weighted graph whose deformation reduces a simplicial resolution to
//! the minimal one, one pair of homological degrees at a time.
//!
//! Only edges between faces with equal labels are ever stored. Their weights
//! are the scalar parts of the (reduced) differential in that multidegree;
//! an entry between faces with different labels can never become a unit,
//! so it never needs tracking.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::mem;
use std::time::Instant;

use crate::field::{FieldKind, FieldScalar};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::simplicial::{admissible, enumerate_admissible_faces, label, lyu_member, sign_unchecked, FaceRepr, Start};

use super::EngineError;

/// How the candidate layer `V_{i+2}` is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateBase {
    /// Extend every admissible face of the previous size, cancelled or not.
    #[default]
    Admissible,
    /// Extend only the faces that survived the previous pass.
    Surviving,
}

#[derive(Debug, Clone, Default)]
pub struct DeformOptions {
    pub field: FieldKind,
    pub start: Start,
    pub candidates: CandidateBase,
    /// Only faces with exactly this label take part (homology mode).
    pub target: Option<Monomial>,
    pub deadline: Option<Instant>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeformStats {
    pub candidates: usize,
    pub lyubeznik_filtered: usize,
    pub cancelled: usize,
    pub survivors: usize,
}

/// Weighted edges from the upper layer to the lower one, with adjacency in
/// both directions.
#[derive(Debug)]
struct EdgeMap<F: FaceRepr> {
    weight: HashMap<(F, F), FieldScalar>,
    down: HashMap<F, BTreeSet<F>>,
    up: HashMap<F, BTreeSet<F>>,
}

impl<F: FaceRepr> Default for EdgeMap<F> {
    fn default() -> Self {
        Self { weight: HashMap::new(), down: HashMap::new(), up: HashMap::new() }
    }
}

impl<F: FaceRepr> EdgeMap<F> {
    fn get(&self, alpha: &F, beta: &F) -> Option<&FieldScalar> {
        self.weight.get(&(alpha.clone(), beta.clone()))
    }

    fn set(&mut self, alpha: F, beta: F, w: FieldScalar) {
        self.down.entry(alpha.clone()).or_default().insert(beta.clone());
        self.up.entry(beta.clone()).or_default().insert(alpha.clone());
        self.weight.insert((alpha, beta), w);
    }

    fn below(&self, alpha: &F) -> impl Iterator<Item = &F> + '_ {
        self.down.get(alpha).into_iter().flatten()
    }

    fn above(&self, beta: &F) -> impl Iterator<Item = &F> + '_ {
        self.up.get(beta).into_iter().flatten()
    }

    fn remove_upper(&mut self, alpha: &F) {
        for beta in self.down.remove(alpha).unwrap_or_default() {
            self.weight.remove(&(alpha.clone(), beta.clone()));
            if let Some(s) = self.up.get_mut(&beta) {
                s.remove(alpha);
            }
        }
    }

    fn remove_lower(&mut self, beta: &F) {
        for alpha in self.up.remove(beta).unwrap_or_default() {
            self.weight.remove(&(alpha.clone(), beta.clone()));
            if let Some(s) = self.down.get_mut(&alpha) {
                s.remove(beta);
            }
        }
    }

    fn nonzero_count(&self) -> usize {
        self.weight.values().filter(|w| !w.is_zero()).count()
    }
}

/// State of the algorithm at level `i`: the layers `Δ_i` and `Δ_{i+1}` and
/// the candidate set `V_{i+1}` the next layer is grown from.
#[derive(Debug, Clone)]
pub struct LayeredGraph<F: FaceRepr> {
    level: usize,
    current: BTreeSet<F>,
    next: BTreeSet<F>,
    candidates: Vec<F>,
    labels: HashMap<F, Monomial>,
}

impl<F: FaceRepr> LayeredGraph<F> {
    /// `Δ_0 = {∅}`, `Δ_1` the admissible singletons, no edges.
    pub fn init(ideal: &MonomialIdeal, start: Start) -> Result<Self, EngineError> {
        if ideal.num_generators() == 0 {
            return Err(EngineError::NoGenerators);
        }
        let singletons: Vec<F> = enumerate_admissible_faces(1, ideal, start);
        let mut g = Self {
            level: 0,
            current: BTreeSet::from([F::empty()]),
            next: singletons.iter().cloned().collect(),
            candidates: singletons,
            labels: HashMap::new(),
        };
        g.labels.insert(F::empty(), Monomial::one(ideal.num_vars()));
        Ok(g)
    }

    /// Starts directly at `level` with the given layers and no edges. The
    /// lower layer is taken as already reduced.
    pub(crate) fn from_layers(level: usize, current: BTreeSet<F>, next: BTreeSet<F>, candidates: Vec<F>) -> Self {
        Self { level, current, next, candidates, labels: HashMap::new() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `Δ_i`.
    pub fn current(&self) -> &BTreeSet<F> {
        &self.current
    }

    /// `Δ_{i+1}`.
    pub fn next(&self) -> &BTreeSet<F> {
        &self.next
    }

    /// `V_{i+1}`.
    pub fn candidates(&self) -> &[F] {
        &self.candidates
    }

    fn label_of(&mut self, face: &F, ideal: &MonomialIdeal) -> Monomial {
        if let Some(m) = self.labels.get(face) {
            return m.clone();
        }
        let m = label(face, ideal);
        self.labels.insert(face.clone(), m.clone());
        m
    }

    fn grow_candidates(&self, ideal: &MonomialIdeal, base: CandidateBase) -> Vec<F> {
        let r = ideal.num_generators();
        match base {
            // Every admissible face has its max-deleted facet admissible, so
            // extending by indices above the maximum reaches each admissible
            // face exactly once, already in lexicographic order.
            CandidateBase::Admissible => {
                let mut out = Vec::new();
                for tau in &self.candidates {
                    let lo = tau.max_member().map_or(0, |m| m + 1);
                    out.extend((lo..r).map(|v| tau.with(v)));
                }
                out
            }
            CandidateBase::Surviving => {
                let mut set = BTreeSet::new();
                for tau in &self.next {
                    for v in (0..r).filter(|&v| !tau.contains(v)) {
                        set.insert(tau.with(v));
                    }
                }
                set.into_iter().collect()
            }
        }
    }

    /// Drops `Δ_i`, builds `Δ_{i+2}` while cancelling unit pairs against
    /// `Δ_{i+1}`, and advances to level `i + 1`.
    pub fn deform(&mut self, ideal: &MonomialIdeal, opts: &DeformOptions) -> Result<DeformStats, EngineError> {
        let field = opts.field;
        let r = ideal.num_generators();
        let mut stats = DeformStats::default();
        let raw = self.grow_candidates(ideal, opts.candidates);
        stats.candidates = raw.len();

        let mut lower = mem::take(&mut self.next);
        let mut upper: BTreeSet<F> = BTreeSet::new();
        let mut edges: EdgeMap<F> = EdgeMap::default();
        let mut kept = Vec::with_capacity(raw.len());
        let lyubeznik = opts.start == Start::Lyubeznik;

        for (step, sigma) in raw.into_iter().enumerate() {
            if step % 256 == 0 {
                if let Some(deadline) = opts.deadline {
                    if Instant::now() > deadline {
                        return Err(EngineError::Timeout);
                    }
                }
            }
            if lyubeznik && lyu_member(&sigma, ideal) {
                stats.lyubeznik_filtered += 1;
                continue;
            }
            kept.push(sigma.clone());
            let m_sigma = self.label_of(&sigma, ideal);
            if opts.target.as_ref().is_some_and(|t| *t != m_sigma) {
                continue;
            }

            // Nonzero entries [σ:β]: untouched unit boundary entries, then
            // stored edges.
            let mut sigma_row: BTreeMap<F, FieldScalar> = BTreeMap::new();
            for v in sigma.members() {
                let beta = sigma.without(v);
                if lower.contains(&beta) && edges.get(&sigma, &beta).is_none() && self.label_of(&beta, ideal) == m_sigma {
                    sigma_row.insert(beta, field.from_int(sign_unchecked(v, &sigma) as i64));
                }
            }
            for beta in edges.below(&sigma) {
                let w = edges.get(&sigma, beta).expect("adjacency matches weights");
                if !w.is_zero() {
                    sigma_row.insert(beta.clone(), w.clone());
                }
            }

            let Some((tau, pivot)) = sigma_row.pop_first() else {
                upper.insert(sigma);
                continue;
            };
            if !pivot.is_unit() || self.label_of(&tau, ideal) != m_sigma {
                return Err(EngineError::NonUnitPivot);
            }

            // Entries [α:τ] for later faces α.
            let stored: BTreeSet<F> =
                edges.above(&tau).filter(|a| **a > sigma && upper.contains(*a)).cloned().collect();
            let mut tau_col: BTreeMap<F, FieldScalar> = BTreeMap::new();
            for v in (0..r).filter(|&v| !tau.contains(v)) {
                let alpha = tau.with(v);
                if alpha > sigma
                    && ideal.generator(v).divides_unchecked(&m_sigma)
                    && (!lyubeznik || admissible(&alpha, ideal, opts.start))
                {
                    upper.insert(alpha.clone());
                    if !stored.contains(&alpha) {
                        tau_col.insert(alpha.clone(), field.from_int(sign_unchecked(v, &alpha) as i64));
                    }
                }
            }
            for alpha in stored {
                let w = edges.get(&alpha, &tau).expect("adjacency matches weights").clone();
                tau_col.insert(alpha, w);
            }

            for (alpha, a_tau) in &tau_col {
                if a_tau.is_zero() {
                    continue;
                }
                let factor = a_tau.div(&pivot)?;
                for (beta, s_beta) in &sigma_row {
                    let correction = factor.mul(s_beta)?;
                    let old = match edges.get(alpha, beta) {
                        Some(w) => w.clone(),
                        None => match alpha.facet_vertex(beta) {
                            Some(v) => field.from_int(sign_unchecked(v, alpha) as i64),
                            None => field.zero(),
                        },
                    };
                    edges.set(alpha.clone(), beta.clone(), old.sub(&correction)?);
                }
            }

            upper.remove(&sigma);
            lower.remove(&tau);
            edges.remove_upper(&sigma);
            edges.remove_lower(&tau);
            stats.cancelled += 1;
        }

        if edges.nonzero_count() != 0 {
            return Err(EngineError::ResidualEdges(edges.nonzero_count()));
        }
        stats.survivors = upper.len();
        let current_level = self.level;
        self.labels.retain(|f, _| f.len() > current_level + 1);
        self.current = lower;
        self.next = upper;
        self.candidates = kept;
        self.level += 1;
        Ok(stats)
    }
}
