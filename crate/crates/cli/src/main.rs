use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::Parser;

use betti_morse::bench::{parse_grid, report_csv, run_bench, BenchConfig};
use betti_morse::engine::{compute_both_with, EngineOptions};
use betti_morse::homology::{homology_dims_from, NonfaceComplex};
use betti_morse::invariants::{
    check_bounds, critical_nonvanishing_failures, pr_invariants_capped, verify_vanishing, DEFAULT_CRITICAL_CAP,
};
use betti_morse::oracle::{expand_faces, oracle_betti_table, oracle_multigraded, reduced_cohomology};
use betti_morse::random::{random_ideal, DegreeSpec};
use betti_morse::render::{render_homology, render_multigraded, render_table, Format};
use betti_morse::{FieldKind, MonomialIdeal, Start};

/// Graded Betti tables of monomial ideals by Morse reduction of the Taylor
/// or Lyubeznik resolution.
#[derive(Debug, Parser)]
#[command(name = "betti", version)]
struct Args {
    /// Ideal file: one monomial per line (`x1^2*x3`), or JSON {"n", "generators"}.
    /// With --homology, a JSON {"n", "nonfaces"} complex.
    #[arg(long, conflicts_with_all = ["random", "graph", "bench"])]
    input: Option<PathBuf>,

    /// Random ideals `n,r,d[,count]`; d is a degree or a range `lo-hi`.
    #[arg(long, conflicts_with_all = ["graph", "bench"])]
    random: Option<String>,

    /// Edge list (`u v` per line) whose clique complex is analysed; implies --homology.
    #[arg(long, conflicts_with = "bench")]
    graph: Option<PathBuf>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// `rational` or `prime:P`.
    #[arg(long, default_value = "rational")]
    field: FieldKind,

    /// `lyubeznik` or `taylor`.
    #[arg(long, default_value = "lyubeznik")]
    start: Start,

    /// Print multigraded Betti numbers instead of the graded table.
    #[arg(long)]
    multigraded: bool,

    /// Reduced simplicial homology of the complex given by --input or --graph.
    #[arg(long)]
    homology: bool,

    /// Cross-check against the direct Taylor-strand computation.
    #[arg(long)]
    oracle: bool,

    /// Check the critical-set bounds and the vanishing patterns on every table.
    #[arg(long)]
    verify: bool,

    /// Benchmark grid `n,r,d;n,r,d;...`.
    #[arg(long)]
    bench: Option<String>,

    #[arg(long, default_value_t = 10)]
    reps: usize,

    /// Run benchmark cells concurrently.
    #[arg(long)]
    parallel: bool,

    /// `text`, `csv` or `json`.
    #[arg(long, default_value = "text")]
    format: Format,

    /// Per-instance time limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

struct RandomSpec {
    n: usize,
    r: usize,
    degree: DegreeSpec,
    count: u64,
}

fn parse_random(s: &str) -> Result<RandomSpec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let (n, r, d, count) = match parts.as_slice() {
        [n, r, d] => (n, r, d, "1"),
        [n, r, d, c] => (n, r, d, *c),
        _ => bail!("--random expects n,r,d[,count], got `{s}`"),
    };
    let spec = RandomSpec {
        n: n.parse().with_context(|| format!("bad n `{n}`"))?,
        r: r.parse().with_context(|| format!("bad r `{r}`"))?,
        degree: d.parse()?,
        count: count.parse().with_context(|| format!("bad count `{count}`"))?,
    };
    if spec.n == 0 || spec.r == 0 || spec.count == 0 {
        bail!("--random parameters must be positive");
    }
    Ok(spec)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_ideal(path: &Path) -> Result<MonomialIdeal> {
    let text = read(path)?;
    let ideal = if text.trim_start().starts_with('{') {
        MonomialIdeal::parse_json(&text)?
    } else {
        MonomialIdeal::parse_text(&text, None)?
    };
    Ok(ideal)
}

fn timeout(args: &Args) -> Result<Option<Duration>> {
    args.timeout
        .map(|t| Duration::try_from_secs_f64(t).with_context(|| format!("bad timeout {t}")))
        .transpose()
}

/// Everything printed for one ideal; `Ok(false)` when a check failed.
fn run_ideal(ideal: &MonomialIdeal, args: &Args, out: &mut String) -> Result<bool> {
    let opts = EngineOptions {
        deadline: timeout(args)?.map(|t| Instant::now() + t),
        ..EngineOptions::new(args.field, args.start)
    };
    let (table, multi) = compute_both_with(ideal, &opts)?;
    if args.multigraded {
        out.push_str(&render_multigraded(&multi, args.format));
    } else {
        out.push_str(&render_table(&table, args.format));
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    let mut ok = true;
    if args.oracle {
        if oracle_betti_table(ideal, args.field)? != table || oracle_multigraded(ideal, args.field)? != multi {
            eprintln!("oracle: MISMATCH for {ideal}");
            ok = false;
        } else {
            eprintln!("oracle: agrees");
        }
    }
    if args.verify {
        match pr_invariants_capped(ideal, DEFAULT_CRITICAL_CAP) {
            Ok(report) => {
                if !check_bounds(&table, &report) {
                    eprintln!(
                        "verify: bound violated (projdim {:?} vs p {:?}, reg {:?} vs r {:?})",
                        table.projdim(),
                        report.p,
                        table.reg(),
                        report.r
                    );
                    ok = false;
                }
                for face in critical_nonvanishing_failures(&table, &report, ideal) {
                    eprintln!("verify: critical set {face} has a zero Betti number");
                    ok = false;
                }
            }
            Err(e) => eprintln!("verify: skipping critical sets: {e}"),
        }
        let violations = verify_vanishing(&table, Some(&multi), ideal);
        for v in &violations {
            eprintln!("verify: {v}");
        }
        ok &= violations.is_empty();
        if ok {
            eprintln!("verify: ok");
        }
    }
    Ok(ok)
}

fn run_homology(complex: &NonfaceComplex, args: &Args, out: &mut String) -> Result<bool> {
    let dims = homology_dims_from(complex, args.field, args.start)?;
    out.push_str(&render_homology(&dims, args.format));
    if !out.ends_with('\n') {
        out.push('\n');
    }
    if args.oracle {
        let faces = expand_faces(complex.num_vertices(), complex.nonfaces())?;
        if reduced_cohomology(complex.num_vertices(), &faces, args.field)? != dims {
            eprintln!("oracle: MISMATCH");
            return Ok(false);
        }
        eprintln!("oracle: agrees");
    }
    Ok(true)
}

fn run(args: &Args) -> Result<bool> {
    let mut out = String::new();
    let ok = if let Some(grid) = &args.bench {
        let cfg = BenchConfig {
            cells: parse_grid(grid)?,
            reps: args.reps,
            seed: args.seed,
            field: args.field,
            start: args.start,
            timeout: timeout(args)?,
            parallel: args.parallel,
        };
        out = report_csv(&cfg, &run_bench(&cfg));
        true
    } else if let Some(path) = &args.graph {
        run_homology(&NonfaceComplex::parse_edge_list(&read(path)?)?, args, &mut out)?
    } else if args.homology {
        let Some(path) = &args.input else { bail!("--homology needs --input or --graph") };
        run_homology(&NonfaceComplex::parse_json(&read(path)?)?, args, &mut out)?
    } else if let Some(path) = &args.input {
        run_ideal(&load_ideal(path)?, args, &mut out)?
    } else if let Some(spec) = &args.random {
        let spec = parse_random(spec)?;
        let mut ok = true;
        for k in 0..spec.count {
            let seed = args.seed.wrapping_add(k);
            let ideal = random_ideal(spec.n, spec.r, spec.degree, seed)?;
            if spec.count > 1 || args.format == Format::Text {
                out.push_str(&format!("# seed {seed}: {ideal}\n"));
            }
            ok &= run_ideal(&ideal, args, &mut out)?;
        }
        ok
    } else {
        bail!("one of --input, --random, --graph or --bench is required");
    };
    print!("{out}");
    Ok(ok)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
