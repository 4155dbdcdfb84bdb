//! Reduced simplicial homology from minimal nonfaces.
//!
//! For the Stanley-Reisner ideal `I = (x^{G_1}, ..., x^{G_r})` of a complex
//! on `[n]`, `dim H̃_i(Δ) = β_{n-i-1,(1,...,1)}(S/I)`. Only faces whose
//! nonfaces cover `[n]` carry that multidegree, so the deformation is run
//! with every other face skipped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{CandidateBase, DeformOptions, EngineError, LayeredGraph};
use crate::field::FieldKind;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::simplicial::{enumerate_admissible_faces, BitFace, FaceRepr, Start};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("complex needs at least one vertex")]
    NoVertices,
    #[error("nonfaces must be nonempty")]
    EmptyNonface,
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("nonface {0:?} contains nonface {1:?}")]
    NotMinimal(Vec<usize>, Vec<usize>),
    #[error("more than 64 minimal nonfaces are not supported")]
    TooManyNonfaces,
    #[error("invalid input: {0}")]
    Parse(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A simplicial complex on `[n]` given by its minimal nonfaces (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonfaceComplex {
    n: usize,
    nonfaces: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct NonfaceJson {
    n: usize,
    nonfaces: Vec<Vec<usize>>,
}

impl NonfaceComplex {
    /// Validates and normalizes (sorts each nonface); vertices are 0-based.
    pub fn new(n: usize, nonfaces: Vec<Vec<usize>>) -> Result<Self, HomologyError> {
        if n == 0 {
            return Err(HomologyError::NoVertices);
        }
        let mut sets = Vec::with_capacity(nonfaces.len());
        for mut g in nonfaces {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                return Err(HomologyError::EmptyNonface);
            }
            if let Some(&v) = g.iter().find(|&&v| v >= n) {
                return Err(HomologyError::VertexOutOfRange { vertex: v + 1, n });
            }
            sets.push(g);
        }
        for (a, ga) in sets.iter().enumerate() {
            for (b, gb) in sets.iter().enumerate() {
                if a != b && gb.iter().all(|v| ga.binary_search(v).is_ok()) && (ga != gb || b < a) {
                    return Err(HomologyError::NotMinimal(ga.clone(), gb.clone()));
                }
            }
        }
        Ok(Self { n, nonfaces: sets })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn nonfaces(&self) -> &[Vec<usize>] {
        &self.nonfaces
    }

    /// `{"n": int, "nonfaces": [[v, ...], ...]}` with 1-based vertices.
    pub fn parse_json(text: &str) -> Result<Self, HomologyError> {
        let raw: NonfaceJson = serde_json::from_str(text).map_err(|e| HomologyError::Parse(e.to_string()))?;
        let mut nonfaces = Vec::with_capacity(raw.nonfaces.len());
        for g in raw.nonfaces {
            if let Some(&v) = g.iter().find(|&&v| v == 0 || v > raw.n) {
                return Err(HomologyError::VertexOutOfRange { vertex: v, n: raw.n });
            }
            nonfaces.push(g.into_iter().map(|v| v - 1).collect());
        }
        Self::new(raw.n, nonfaces)
    }

    /// Clique complex of a graph: its minimal nonfaces are the non-edges.
    pub fn clique_complex(n: usize, edges: &[(usize, usize)]) -> Result<Self, HomologyError> {
        let mut adjacent = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(HomologyError::VertexOutOfRange { vertex: u.max(v) + 1, n });
            }
            adjacent[u][v] = true;
            adjacent[v][u] = true;
        }
        let mut nonfaces = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !adjacent[u][v] {
                    nonfaces.push(vec![u, v]);
                }
            }
        }
        Self::new(n, nonfaces)
    }

    /// Edge-list text: one `u v` pair per line, a lone `u` declares an
    /// isolated vertex, `#` starts a comment. Labels are arbitrary integers,
    /// renumbered in increasing order.
    pub fn parse_edge_list(text: &str) -> Result<Self, HomologyError> {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| HomologyError::Parse(format!("bad vertex `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if nums.len() > 2 {
                return Err(HomologyError::Parse(format!("expected `u v`, got `{line}`")));
            }
            rows.push(nums);
        }
        let labels: BTreeMap<i64, usize> = {
            let mut all: Vec<i64> = rows.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            all.into_iter().enumerate().map(|(k, v)| (v, k)).collect()
        };
        let edges: Vec<(usize, usize)> = rows
            .iter()
            .filter(|r| r.len() == 2 && r[0] != r[1])
            .map(|r| (labels[&r[0]], labels[&r[1]]))
            .collect();
        Self::clique_complex(labels.len(), &edges)
    }

    /// The squarefree ideal generated by `x^{G_j}`.
    pub fn stanley_reisner_ideal(&self) -> MonomialIdeal {
        let gens = self
            .nonfaces
            .iter()
            .map(|g| {
                let mut e = vec![0u32; self.n];
                for &v in g {
                    e[v] = 1;
                }
                Monomial::new(e).expect("squarefree")
            })
            .collect();
        MonomialIdeal::new(self.n, gens).expect("nonfaces are nonempty and pairwise incomparable")
    }
}

/// `dims[k] = dim H̃_{k-1}(Δ; k)` for `k = 0..=n`, i.e. dimensions -1..n-1.
pub fn homology_dims(complex: &NonfaceComplex, field: FieldKind) -> Result<Vec<usize>, HomologyError> {
    homology_dims_from(complex, field, Start::Lyubeznik)
}

pub fn homology_dims_from(complex: &NonfaceComplex, field: FieldKind, start: Start) -> Result<Vec<usize>, HomologyError> {
    let n = complex.n;
    let ideal = complex.stanley_reisner_ideal();
    let r = ideal.num_generators();
    if r > 64 {
        return Err(HomologyError::TooManyNonfaces);
    }
    let mut counts = vec![0usize; n + 1];
    if r > 0 {
        let target = Monomial::new(vec![1; n]).expect("squarefree");
        let singles: Vec<BitFace> = enumerate_admissible_faces(1, &ideal, start);
        let covering = singles.iter().filter(|f| ideal.generator(f.members()[0]) == &target).cloned().collect();
        let mut graph = LayeredGraph::from_layers(0, Default::default(), covering, singles);
        let opts = DeformOptions { field, start, candidates: CandidateBase::Admissible, target: Some(target), deadline: None };
        // Each pass finalizes the layer it leaves as `current`.
        while graph.level() < r.min(n) {
            graph.deform(&ideal, &opts)?;
            counts[graph.level()] = graph.current().len();
        }
    }
    // β_{n-i-1} at index i + 1
    Ok((0..=n).map(|k| counts[n - k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{expand_faces, reduced_cohomology};

    fn zero_based(sets: &[&[usize]]) -> Vec<Vec<usize>> {
        sets.iter().map(|s| s.iter().map(|v| v - 1).collect()).collect()
    }

    fn rp2() -> NonfaceComplex {
        let facets: [[usize; 3]; 10] = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6],
        ];
        let mut nonfaces = Vec::new();
        for a in 1..=6 {
            for b in a + 1..=6 {
                for c in b + 1..=6 {
                    if !facets.contains(&[a, b, c]) {
                        nonfaces.push(vec![a - 1, b - 1, c - 1]);
                    }
                }
            }
        }
        NonfaceComplex::new(6, nonfaces).unwrap()
    }

    #[test]
    fn circle_and_sphere() {
        let circle = NonfaceComplex::new(3, zero_based(&[&[1, 2, 3]])).unwrap();
        assert_eq!(homology_dims(&circle, FieldKind::Rational).unwrap(), vec![0, 0, 1, 0]);
        let sphere = NonfaceComplex::new(4, zero_based(&[&[1, 2, 3, 4]])).unwrap();
        assert_eq!(homology_dims(&sphere, FieldKind::Rational).unwrap(), vec![0, 0, 0, 1, 0]);
        // the same sphere as a 3-simplex boundary: faces are all proper subsets
        let points = NonfaceComplex::new(3, zero_based(&[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
        assert_eq!(homology_dims(&points, FieldKind::Rational).unwrap(), vec![0, 2, 0, 0]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        let c = rp2();
        assert_eq!(c.nonfaces().len(), 10);
        let q = homology_dims(&c, FieldKind::Rational).unwrap();
        let f2 = homology_dims(&c, FieldKind::Prime(2)).unwrap();
        assert_eq!(q, vec![0; 7]);
        assert_eq!(f2, vec![0, 0, 1, 1, 0, 0, 0]);
        let faces = expand_faces(6, c.nonfaces()).unwrap();
        assert_eq!(reduced_cohomology(6, &faces, FieldKind::Rational).unwrap(), q);
        assert_eq!(reduced_cohomology(6, &faces, FieldKind::Prime(2)).unwrap(), f2);
    }

    #[test]
    fn degenerate_complexes() {
        // full simplex
        let simplex = NonfaceComplex::new(3, vec![]).unwrap();
        assert_eq!(homology_dims(&simplex, FieldKind::Rational).unwrap(), vec![0; 4]);
        // only the empty face: H̃_{-1} = 1
        let void = NonfaceComplex::new(2, zero_based(&[&[1], &[2]])).unwrap();
        assert_eq!(homology_dims(&void, FieldKind::Rational).unwrap(), vec![1, 0, 0]);
        let single = NonfaceComplex::new(1, zero_based(&[&[1]])).unwrap();
        assert_eq!(homology_dims(&single, FieldKind::Rational).unwrap(), vec![1, 0]);
    }

    #[test]
    fn validation() {
        assert_eq!(NonfaceComplex::new(0, vec![]), Err(HomologyError::NoVertices));
        assert_eq!(NonfaceComplex::new(2, vec![vec![]]), Err(HomologyError::EmptyNonface));
        assert!(matches!(NonfaceComplex::new(2, vec![vec![2]]), Err(HomologyError::VertexOutOfRange { .. })));
        assert!(matches!(NonfaceComplex::new(3, vec![vec![0], vec![0, 1]]), Err(HomologyError::NotMinimal(..))));
        assert!(matches!(NonfaceComplex::new(3, vec![vec![0, 1], vec![1, 0]]), Err(HomologyError::NotMinimal(..))));
        let c = NonfaceComplex::parse_json(r#"{"n": 3, "nonfaces": [[1, 2, 3]]}"#).unwrap();
        assert_eq!(c.nonfaces(), &[vec![0, 1, 2]]);
        assert!(NonfaceComplex::parse_json(r#"{"n": 3, "nonfaces": [[0]]}"#).is_err());
    }

    #[test]
    fn clique_complex_of_graphs() {
        // 4-cycle: clique complex is a circle
        let c4 = NonfaceComplex::parse_edge_list("1 2\n2 3\n3 4\n4 1\n").unwrap();
        assert_eq!(c4.nonfaces().len(), 2);
        assert_eq!(homology_dims(&c4, FieldKind::Rational).unwrap(), vec![0, 0, 1, 0, 0]);
        // triangle is filled in
        let k3 = NonfaceComplex::parse_edge_list("# triangle\n10 20\n20 30\n30 10\n").unwrap();
        assert_eq!(homology_dims(&k3, FieldKind::Rational).unwrap(), vec![0; 4]);
        // two components, one isolated vertex declared alone
        let two = NonfaceComplex::parse_edge_list("1 2\n5\n").unwrap();
        assert_eq!(two.num_vertices(), 3);
        assert_eq!(homology_dims(&two, FieldKind::Rational).unwrap(), vec![0, 1, 0, 0]);
        assert!(NonfaceComplex::parse_edge_list("1 2 3\n").is_err());
    }
}
