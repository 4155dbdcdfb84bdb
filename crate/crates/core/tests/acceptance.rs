//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use betti_morse::engine::{compute_both_with, BettiTable, EngineOptions, MultigradedBetti};
use betti_morse::homology::{homology_dims, NonfaceComplex};
use betti_morse::invariants::{check_bounds, pr_invariants, verify_vanishing};
use betti_morse::oracle::{expand_faces, oracle_betti_table, oracle_multigraded, reduced_cohomology};
use betti_morse::random::{random_ideal, random_squarefree_ideal, DegreeSpec};
use betti_morse::{FieldKind, MonomialIdeal, Start};

type Check = Result<(), String>;

const Q: FieldKind = FieldKind::Rational;
const F2: FieldKind = FieldKind::Prime(2);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn both(ideal: &MonomialIdeal, field: FieldKind, start: Start) -> Result<(BettiTable, MultigradedBetti), String> {
    compute_both_with(ideal, &EngineOptions::new(field, start)).map_err(|e| format!("{ideal}: {e}"))
}

fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, gens).unwrap()
}

/// Every ideal computed along the way, with the tables produced for it.
#[derive(Default)]
struct Computed {
    runs: Vec<(MonomialIdeal, BettiTable, MultigradedBetti)>,
}

fn corpus() -> Vec<MonomialIdeal> {
    let mut out = Vec::new();
    let mut s = 0u64;
    while out.len() < 200 {
        let n = 2 + (s % 5) as usize;
        let r = 1 + (s / 5 % 7) as usize;
        if let Ok(i) = random_ideal(n, r, DegreeSpec::Range(1, 4), 7_000 + s) {
            out.push(i);
        }
        s += 1;
    }
    out
}

fn criterion_1(corpus: &[MonomialIdeal], seen: &mut Computed) -> Check {
    let started = Instant::now();
    for i in corpus {
        for field in [Q, F2] {
            let expected = oracle_betti_table(i, field).map_err(|e| e.to_string())?;
            for start in [Start::Taylor, Start::Lyubeznik] {
                let (t, mb) = both(i, field, start)?;
                ensure(t == expected, || format!("{i} over {field} from {start:?}:\n{t}\nexpected\n{expected}"))?;
                seen.runs.push((i.clone(), t, mb));
            }
        }
    }
    let took = started.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))
}

fn criterion_2(seen: &mut Computed) -> Check {
    let expected: BTreeMap<(usize, u64), u64> = [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)].into();
    let quadrics = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    let triangle = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
    for i in [quadrics, triangle] {
        for start in [Start::Taylor, Start::Lyubeznik] {
            let (t, mb) = both(&i, Q, start)?;
            ensure(t.nonzero() == expected, || format!("{i}: {:?}", t.nonzero()))?;
            seen.runs.push((i.clone(), t, mb));
        }
    }
    for k in 1..=5usize {
        let gens: Vec<Vec<u32>> = (0..k).map(|v| (0..k).map(|w| u32::from(v == w)).collect()).collect();
        let refs: Vec<&[u32]> = gens.iter().map(Vec::as_slice).collect();
        let i = ideal(k, &refs);
        let (t, mb) = both(&i, Q, Start::Lyubeznik)?;
        let mut binom = 1u64;
        let mut want = BTreeMap::new();
        for j in 0..=k {
            want.insert((j, j as u64), binom);
            binom = binom * (k - j) as u64 / (j + 1) as u64;
        }
        ensure(t.nonzero() == want, || format!("Koszul k={k}: {:?}", t.nonzero()))?;
        seen.runs.push((i, t, mb));
    }
    Ok(())
}

fn criterion_3(corpus: &[MonomialIdeal], seen: &mut Computed) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in corpus.iter().filter(|i| i.num_generators() >= 3).take(20) {
        let (base, _) = both(i, Q, Start::Lyubeznik)?;
        for _ in 0..5 {
            let mut order: Vec<usize> = (0..i.num_generators()).collect();
            order.shuffle(&mut rng);
            let p = i.permuted(&order);
            let (t, mb) = both(&p, Q, Start::Lyubeznik)?;
            ensure(t == base, || format!("{i} reordered as {p}"))?;
            seen.runs.push((p, t, mb));
        }
    }
    Ok(())
}

fn criterion_4(seen: &Computed) -> Check {
    for (i, t, mb) in &seen.runs {
        let v = verify_vanishing(t, Some(mb), i);
        ensure(v.is_empty(), || format!("{i}: {}", v[0]))?;
    }
    // β_{2,5} planted into the Koszul table on three variables
    let k = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let (t, _) = both(&k, Q, Start::Lyubeznik)?;
    let mut entries = t.nonzero();
    entries.insert((2, 5), 1);
    let corrupted = BettiTable::from_entries(&entries);
    ensure(!verify_vanishing(&corrupted, None, &k).is_empty(), || "corrupted table accepted".into())
}

fn criterion_5(corpus: &[MonomialIdeal], seen: &Computed) -> Check {
    for i in corpus {
        let report = pr_invariants(i).map_err(|e| e.to_string())?;
        for (_, t, _) in seen.runs.iter().filter(|(j, _, _)| j == i) {
            ensure(check_bounds(t, &report), || {
                format!("{i}: projdim {:?} reg {:?} vs p {:?} r {:?}", t.projdim(), t.reg(), report.p, report.r)
            })?;
        }
    }
    Ok(())
}

fn criterion_6(seen: &mut Computed) -> Check {
    for t in [2usize, 3] {
        let gens: Vec<Vec<u32>> =
            (0..t).map(|e| (0..2 * t).map(|v| u32::from(v / 2 == e)).collect()).collect();
        let refs: Vec<&[u32]> = gens.iter().map(Vec::as_slice).collect();
        let i = ideal(2 * t, &refs);
        let (table, mb) = both(&i, Q, Start::Lyubeznik)?;
        ensure(table.projdim() == Some(t), || format!("t={t}: projdim {:?}", table.projdim()))?;
        ensure(table.reg() >= Some(t as u64), || format!("t={t}: reg {:?}", table.reg()))?;
        seen.runs.push((i, table, mb));
    }
    Ok(())
}

fn criterion_7(seen: &mut Computed) -> Check {
    for seed in 0..50u64 {
        let n = 3 + (seed % 4) as usize;
        let i = random_squarefree_ideal(n, 2 + (seed % 5) as usize, 1, n, 500 + seed);
        let nonfaces: Vec<Vec<usize>> = i
            .generators()
            .iter()
            .map(|g| g.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, _)| v).collect())
            .collect();
        let complex = NonfaceComplex::new(n, nonfaces.clone()).map_err(|e| e.to_string())?;
        for field in [Q, F2] {
            let dims = homology_dims(&complex, field).map_err(|e| e.to_string())?;
            let (t, mb) = both(&i, field, Start::Lyubeznik)?;
            let ones = vec![1u32; n];
            // dims[k] is H~ in dimension k - 1, matched by β_{n-k,(1,..,1)}
            let hochster: Vec<usize> = (0..=n).map(|k| mb.get(n - k, &ones) as usize).collect();
            ensure(dims == hochster, || format!("{i} over {field}: {dims:?} vs {hochster:?}"))?;
            let faces = expand_faces(n, &nonfaces).map_err(|e| e.to_string())?;
            let direct = reduced_cohomology(n, &faces, field).map_err(|e| e.to_string())?;
            ensure(dims == direct, || format!("{i} over {field}: {dims:?} vs cohomology {direct:?}"))?;
            seen.runs.push((i.clone(), t, mb));
        }
    }
    Ok(())
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

fn criterion_8(seen: &mut Computed) -> Check {
    let complex = rp2();
    let i = complex.stanley_reisner_ideal();
    let mut tables = Vec::new();
    for field in [Q, F2] {
        let (t, mb) = both(&i, field, Start::Lyubeznik)?;
        let expected = oracle_betti_table(&i, field).map_err(|e| e.to_string())?;
        ensure(t == expected, || format!("over {field}:\n{t}\noracle\n{expected}"))?;
        let expected_mb = oracle_multigraded(&i, field).map_err(|e| e.to_string())?;
        ensure(mb == expected_mb, || format!("multigraded mismatch over {field}"))?;
        tables.push(t.clone());
        seen.runs.push((i.clone(), t, mb));
    }
    ensure(tables[0] != tables[1], || "tables agree across characteristics".into())?;
    let h1 = |field| homology_dims(&complex, field).map(|d| d[2]).map_err(|e| e.to_string());
    ensure(h1(F2)? == 1 && h1(Q)? == 0, || "H~_1 should be 1 over F_2 and 0 over Q".into())
}

fn criterion_9() -> Check {
    for (n, r, d, limit) in [(10, 12, 2, 1.0), (15, 15, 4, 10.0)] {
        let mut worst = 0f64;
        for seed in 0..10u64 {
            let i = random_ideal(n, r, DegreeSpec::Fixed(d), seed).map_err(|e| e.to_string())?;
            let started = Instant::now();
            both(&i, Q, Start::Lyubeznik)?;
            worst = worst.max(started.elapsed().as_secs_f64());
        }
        ensure(worst < limit, || format!("cell ({n},{r},{d}): slowest instance {worst:.3}s"))?;
        println!("      cell ({n},{r},{d}): slowest of 10 instances {worst:.4}s (limit {limit}s)");
    }
    Ok(())
}

fn criterion_10(seen: &Computed) -> Check {
    for (i, t, mb) in &seen.runs {
        let mut sums: BTreeMap<(usize, u64), u64> = BTreeMap::new();
        for (k, a, c) in mb.iter() {
            *sums.entry((k, a.iter().map(|&e| u64::from(e)).sum())).or_default() += c;
        }
        ensure(sums == t.nonzero(), || format!("{i}: {sums:?} vs {:?}", t.nonzero()))?;
    }
    ensure(seen.runs.len() > 1000, || format!("only {} runs recorded", seen.runs.len()))
}

fn report(id: usize, name: &str, check: impl FnOnce() -> Check) -> bool {
    let started = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = started.elapsed().as_secs_f64();
    match result {
        Ok(()) => {
            println!("[PASS] {id:>2}. {name} ({secs:.2}s)");
            true
        }
        Err(why) => {
            println!("[FAIL] {id:>2}. {name}: {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let corpus = corpus();
    let mut seen = Computed::default();
    let results = [
        report(1, "engine equals oracle on 200 random ideals over Q and F_2, both starts", || criterion_1(&corpus, &mut seen)),
        report(2, "hand-traced fixtures", || criterion_2(&mut seen)),
        report(3, "generator-order invariance", || criterion_3(&corpus, &mut seen)),
        report(4, "vanishing verifier clean on computed tables, catches corrupted table", || criterion_4(&seen)),
        report(5, "critical-set bounds on projdim and reg", || criterion_5(&corpus, &seen)),
        report(6, "disjoint edges: projdim = t and reg >= t", || criterion_6(&mut seen)),
        report(7, "Hochster consistency of homology mode", || criterion_7(&mut seen)),
        report(8, "projective plane distinguishes Q from F_2", || criterion_8(&mut seen)),
        report(9, "performance cells (10,12,2) < 1s and (15,15,4) < 10s", criterion_9),
        report(10, "multigraded sums equal graded entries", || criterion_10(&seen)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
