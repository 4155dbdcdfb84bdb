use betti_morse::engine::{compute_both_with, CandidateBase, EngineOptions};
use betti_morse::oracle::{oracle_betti_table, oracle_multigraded};
use betti_morse::random::{random_ideal, random_squarefree_ideal, DegreeSpec};
use betti_morse::{compute_betti_table, FieldKind, MonomialIdeal, Start};

const FIELDS: [FieldKind; 3] = [FieldKind::Rational, FieldKind::Prime(2), FieldKind::Prime(3)];

fn corpus(count: u64, seed: u64) -> Vec<MonomialIdeal> {
    (0..count)
        .filter_map(|k| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(k);
            let n = 2 + (s % 5) as usize;
            let r = 1 + (s / 5 % 7) as usize;
            random_ideal(n, r, DegreeSpec::Range(1, 4), s).ok()
        })
        .collect()
}

#[test]
fn engine_matches_oracle_graded_and_multigraded() {
    for ideal in corpus(150, 11) {
        for field in FIELDS {
            let expected = oracle_multigraded(&ideal, field).unwrap();
            for start in [Start::Taylor, Start::Lyubeznik] {
                let (graded, multi) = compute_both_with(&ideal, &EngineOptions::new(field, start)).unwrap();
                assert_eq!(multi, expected, "{ideal} over {field} from {start:?}");
                assert_eq!(graded, oracle_betti_table(&ideal, field).unwrap());
            }
        }
    }
}

#[test]
fn squarefree_ideals_in_more_variables() {
    for seed in 0..60 {
        let ideal = random_squarefree_ideal(7, 8, 2, 4, seed);
        for field in [FieldKind::Rational, FieldKind::Prime(2)] {
            let expected = oracle_betti_table(&ideal, field).unwrap();
            for start in [Start::Taylor, Start::Lyubeznik] {
                assert_eq!(compute_betti_table(&ideal, field, start).unwrap(), expected, "{ideal}");
            }
        }
    }
}

#[test]
fn surviving_candidate_base_gives_same_tables() {
    for ideal in corpus(120, 5) {
        for start in [Start::Taylor, Start::Lyubeznik] {
            let literal = EngineOptions::new(FieldKind::Rational, start);
            let surviving = EngineOptions { candidates: CandidateBase::Surviving, ..literal.clone() };
            assert_eq!(
                compute_both_with(&ideal, &literal).unwrap(),
                compute_both_with(&ideal, &surviving).unwrap(),
                "{ideal} from {start:?}"
            );
        }
    }
}
