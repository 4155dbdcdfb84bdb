//! Timing harness over a grid of random-ideal parameters.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{compute_betti_table_with, EngineError, EngineOptions};
use crate::field::FieldKind;
use crate::random::{random_ideal, DegreeSpec};
use crate::simplicial::Start;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad grid cell `{0}` (expected n,r,d or n,r,lo-hi)")]
pub struct GridError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchCell {
    pub n: usize,
    pub r: usize,
    pub degree: DegreeSpec,
}

impl FromStr for BenchCell {
    type Err = GridError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GridError(s.to_string());
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [n, r, d] = parts.as_slice() else { return Err(bad()) };
        let n: usize = n.parse().map_err(|_| bad())?;
        let r: usize = r.parse().map_err(|_| bad())?;
        if n == 0 || r == 0 {
            return Err(bad());
        }
        Ok(BenchCell { n, r, degree: d.parse().map_err(|_| bad())? })
    }
}

/// `"10,8,2;10,12,2;10,10,5-8"`.
pub fn parse_grid(s: &str) -> Result<Vec<BenchCell>, GridError> {
    s.split(';').filter(|c| !c.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub cells: Vec<BenchCell>,
    pub reps: usize,
    pub seed: u64,
    pub field: FieldKind,
    pub start: Start,
    pub timeout: Option<Duration>,
    /// Run cells concurrently. Timings then interfere with each other.
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Done { seconds: f64 },
    Timeout,
    Failed(String),
}

#[derive(Debug, Clone)]
pub struct CellReport {
    pub cell: BenchCell,
    pub outcomes: Vec<Outcome>,
}

impl CellReport {
    pub fn times(&self) -> Vec<f64> {
        self.outcomes
            .iter()
            .filter_map(|o| match o {
                Outcome::Done { seconds } => Some(*seconds),
                _ => None,
            })
            .collect()
    }

    pub fn mean(&self) -> Option<f64> {
        let t = self.times();
        (!t.is_empty()).then(|| t.iter().sum::<f64>() / t.len() as f64)
    }

    pub fn median(&self) -> Option<f64> {
        let mut t = self.times();
        if t.is_empty() {
            return None;
        }
        t.sort_by(f64::total_cmp);
        let m = t.len() / 2;
        Some(if t.len().is_multiple_of(2) { (t[m - 1] + t[m]) / 2.0 } else { t[m] })
    }

    pub fn max(&self) -> Option<f64> {
        self.times().into_iter().reduce(f64::max)
    }

    pub fn timeouts(&self) -> usize {
        self.outcomes.iter().filter(|o| matches!(o, Outcome::Timeout)).count()
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| matches!(o, Outcome::Failed(_))).count()
    }
}

/// Seed of instance `rep`; the same across cells, which differ in parameters.
pub fn instance_seed(seed: u64, rep: usize) -> u64 {
    seed.wrapping_add(rep as u64)
}

pub fn run_instance(cell: &BenchCell, seed: u64, cfg: &BenchConfig) -> Outcome {
    let ideal = match random_ideal(cell.n, cell.r, cell.degree, seed) {
        Ok(i) => i,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let started = Instant::now();
    let opts = EngineOptions { deadline: cfg.timeout.map(|t| started + t), ..EngineOptions::new(cfg.field, cfg.start) };
    match compute_betti_table_with(&ideal, &opts) {
        Ok(_) => Outcome::Done { seconds: started.elapsed().as_secs_f64() },
        Err(EngineError::Timeout) => Outcome::Timeout,
        Err(e) => Outcome::Failed(e.to_string()),
    }
}

fn run_cell(cell: &BenchCell, cfg: &BenchConfig) -> CellReport {
    let outcomes = (0..cfg.reps).map(|rep| run_instance(cell, instance_seed(cfg.seed, rep), cfg)).collect();
    CellReport { cell: *cell, outcomes }
}

pub fn run_bench(cfg: &BenchConfig) -> Vec<CellReport> {
    if cfg.reps == 0 {
        return Vec::new();
    }
    if cfg.parallel {
        cfg.cells.par_iter().map(|c| run_cell(c, cfg)).collect()
    } else {
        cfg.cells.iter().map(|c| run_cell(c, cfg)).collect()
    }
}

/// CSV with `#` comment lines describing the generation protocol.
pub fn report_csv(cfg: &BenchConfig, reports: &[CellReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# ideals: r minimal generators, each drawn uniformly among monomials of its degree (fixed, or uniform over lo-hi), comparable draws rejected"
    );
    let _ = writeln!(
        out,
        "# seed={} reps={} field={} start={:?} timeout={} parallel={}",
        cfg.seed,
        cfg.reps,
        cfg.field,
        cfg.start,
        cfg.timeout.map_or("none".to_string(), |t| format!("{}s", t.as_secs_f64())),
        cfg.parallel
    );
    out.push_str("n,r,d,instances,completed,timeouts,failures,mean_s,median_s,max_s\n");
    let num = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.6}"));
    for rep in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            rep.cell.n,
            rep.cell.r,
            rep.cell.degree,
            rep.outcomes.len(),
            rep.times().len(),
            rep.timeouts(),
            rep.failures(),
            num(rep.mean()),
            num(rep.median()),
            num(rep.max())
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compute_betti_table;

    fn cfg(cells: &str, reps: usize) -> BenchConfig {
        BenchConfig {
            cells: parse_grid(cells).unwrap(),
            reps,
            seed: 1,
            field: FieldKind::Rational,
            start: Start::Lyubeznik,
            timeout: None,
            parallel: false,
        }
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("10,8,2; 10,10,5-8").unwrap();
        assert_eq!(g[1], BenchCell { n: 10, r: 10, degree: DegreeSpec::Range(5, 8) });
        assert!(parse_grid("10,8").is_err());
        assert!(parse_grid("0,8,2").is_err());
    }

    #[test]
    fn zero_reps_is_empty() {
        let c = cfg("4,3,2", 0);
        let reports = run_bench(&c);
        assert!(reports.is_empty());
        assert_eq!(report_csv(&c, &reports).lines().filter(|l| !l.starts_with('#')).count(), 1);
    }

    #[test]
    fn statistics_and_report() {
        let c = cfg("5,4,2;4,3,1-3", 5);
        let reports = run_bench(&c);
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert_eq!(r.times().len(), 5);
            assert!(r.median().unwrap() <= r.max().unwrap());
        }
        let csv = report_csv(&c, &reports);
        assert!(csv.contains("\n5,4,2,5,5,0,0,"));
        assert!(csv.starts_with("# ideals"));
    }

    #[test]
    fn infeasible_and_timeout_are_data() {
        let c = cfg("1,2,1", 2);
        assert_eq!(run_bench(&c)[0].failures(), 2);
        let mut c = cfg("12,16,3", 1);
        c.timeout = Some(Duration::ZERO);
        assert_eq!(run_bench(&c)[0].timeouts(), 1);
    }

    #[test]
    fn timing_does_not_change_tables() {
        let c = cfg("6,5,3", 1);
        let ideal = random_ideal(6, 5, DegreeSpec::Fixed(3), instance_seed(1, 0)).unwrap();
        let before = compute_betti_table(&ideal, c.field, c.start).unwrap();
        run_bench(&c);
        assert_eq!(compute_betti_table(&ideal, c.field, c.start).unwrap(), before);
    }
}
