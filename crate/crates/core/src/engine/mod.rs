//! Minimal Betti tables by iterated deformation of the layered graph.
//!
//! The driver alternates between counting the finished layer by label degree
//! and deforming the next pair of layers, until the stopping rule fires.

mod graph;
mod table;

use std::time::Instant;

use thiserror::Error;

use crate::field::{FieldError, FieldKind};
use crate::monomial::MonomialIdeal;
use crate::simplicial::{label, BitFace, Face, FaceRepr, Start};

pub use graph::{CandidateBase, DeformOptions, DeformStats, LayeredGraph};
pub use table::{BettiTable, MultigradedBetti, OutOfBounds, TableBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("the ideal has no generators")]
    NoGenerators,
    #[error("pivot weight is not a field unit")]
    NonUnitPivot,
    #[error("{0} nonzero edges left after a deformation pass")]
    ResidualEdges(usize),
    #[error(transparent)]
    Bounds(#[from] OutOfBounds),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("computation timed out")]
    Timeout,
}

#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    pub field: FieldKind,
    pub start: Start,
    pub candidates: CandidateBase,
    pub deadline: Option<Instant>,
}

impl EngineOptions {
    pub fn new(field: FieldKind, start: Start) -> Self {
        Self { field, start, ..Self::default() }
    }

    fn deform_options(&self) -> DeformOptions {
        DeformOptions {
            field: self.field,
            start: self.start,
            candidates: self.candidates,
            target: None,
            deadline: self.deadline,
        }
    }
}

/// Outcome of the stopping rule at level `i`, tested in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepDecision {
    /// `i = r - 1`: record `Δ_i` and `Δ_{i+1}`, stop.
    StopAddBoth,
    /// `i = n`, or `Δ_{i+1}` empty: record `Δ_i`, stop.
    StopAddCurrent,
    /// `Δ_i` empty: stop.
    StopAddNothing,
    /// Record `Δ_i` and deform.
    ContinueAddCurrent,
}

pub fn step_decision(i: usize, r: usize, n: usize, current_empty: bool, next_empty: bool) -> StepDecision {
    if i + 1 == r {
        StepDecision::StopAddBoth
    } else if i == n {
        StepDecision::StopAddCurrent
    } else if current_empty {
        StepDecision::StopAddNothing
    } else if next_empty {
        StepDecision::StopAddCurrent
    } else {
        StepDecision::ContinueAddCurrent
    }
}

/// Counts the faces of `layer` (all of size `i`) by label degree.
pub fn strand_counts<'a, F: FaceRepr + 'a>(
    layer: impl IntoIterator<Item = &'a F>,
    i: usize,
    ideal: &MonomialIdeal,
) -> Result<BettiTable, OutOfBounds> {
    let mut t = BettiTable::zeros(TableBounds::of(ideal));
    for face in layer {
        debug_assert_eq!(face.len(), i);
        t.add(i, label(face, ideal).degree(), 1)?;
    }
    Ok(t)
}

/// Receives every finalized face as `(homological degree, label)`.
trait Sink {
    fn record(&mut self, i: usize, label: &crate::monomial::Monomial) -> Result<(), OutOfBounds>;
}

impl Sink for BettiTable {
    fn record(&mut self, i: usize, label: &crate::monomial::Monomial) -> Result<(), OutOfBounds> {
        self.add(i, label.degree(), 1)
    }
}

struct Both {
    graded: BettiTable,
    multi: MultigradedBetti,
}

impl Sink for Both {
    fn record(&mut self, i: usize, label: &crate::monomial::Monomial) -> Result<(), OutOfBounds> {
        self.graded.add(i, label.degree(), 1)?;
        self.multi.add(i, label.exponents().to_vec(), 1);
        Ok(())
    }
}

fn run<F: FaceRepr, S: Sink>(ideal: &MonomialIdeal, opts: &EngineOptions, sink: &mut S) -> Result<(), EngineError> {
    let r = ideal.num_generators();
    let n = ideal.num_vars();
    let one = crate::monomial::Monomial::one(n);
    sink.record(0, &one)?;
    match r {
        0 => return Ok(()),
        1 => {
            sink.record(1, ideal.generator(0))?;
            return Ok(());
        }
        _ => {}
    }
    let deform_opts = opts.deform_options();
    let mut graph = LayeredGraph::<F>::init(ideal, opts.start)?;
    let flush = |faces: &std::collections::BTreeSet<F>, i: usize, sink: &mut S| -> Result<(), EngineError> {
        if i == 0 {
            // Δ_0 = {∅} was recorded up front.
            return Ok(());
        }
        for face in faces {
            sink.record(i, &label(face, ideal))?;
        }
        Ok(())
    };
    loop {
        let i = graph.level();
        match step_decision(i, r, n, graph.current().is_empty(), graph.next().is_empty()) {
            StepDecision::StopAddBoth => {
                flush(graph.current(), i, sink)?;
                flush(graph.next(), i + 1, sink)?;
                return Ok(());
            }
            StepDecision::StopAddCurrent => {
                flush(graph.current(), i, sink)?;
                return Ok(());
            }
            StepDecision::StopAddNothing => return Ok(()),
            StepDecision::ContinueAddCurrent => {
                flush(graph.current(), i, sink)?;
                graph.deform(ideal, &deform_opts)?;
            }
        }
    }
}

fn dispatch<S: Sink>(ideal: &MonomialIdeal, opts: &EngineOptions, sink: &mut S) -> Result<(), EngineError> {
    if ideal.num_generators() <= 64 {
        run::<BitFace, S>(ideal, opts, sink)
    } else {
        run::<Face, S>(ideal, opts, sink)
    }
}

/// The graded Betti table of `S/I`.
pub fn compute_betti_table(ideal: &MonomialIdeal, field: FieldKind, start: Start) -> Result<BettiTable, EngineError> {
    compute_betti_table_with(ideal, &EngineOptions::new(field, start))
}

pub fn compute_betti_table_with(ideal: &MonomialIdeal, opts: &EngineOptions) -> Result<BettiTable, EngineError> {
    let mut table = BettiTable::zeros(TableBounds::of(ideal));
    dispatch(ideal, opts, &mut table)?;
    Ok(table)
}

/// The multigraded Betti numbers of `S/I`.
pub fn compute_multigraded(ideal: &MonomialIdeal, field: FieldKind, start: Start) -> Result<MultigradedBetti, EngineError> {
    Ok(compute_both_with(ideal, &EngineOptions::new(field, start))?.1)
}

/// Graded and multigraded tables from a single run.
pub fn compute_both_with(ideal: &MonomialIdeal, opts: &EngineOptions) -> Result<(BettiTable, MultigradedBetti), EngineError> {
    let mut both = Both { graded: BettiTable::zeros(TableBounds::of(ideal)), multi: MultigradedBetti::new() };
    dispatch(ideal, opts, &mut both)?;
    Ok((both.graded, both.multi))
}
