//! Timing harness writing one CSV row per (instance, algorithm).

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::{random_polynomial, Family, GenSpec, XorShift64Star};
use crate::oracle::oracle_count;
use crate::poly::classify;
use crate::solve::{solve, Algorithm, SolveConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    /// A polynomial family; `cnf3` and `graph` are rejected.
    pub family: Family,
    /// Clause counts to sweep.
    pub sizes: Vec<usize>,
    pub s: usize,
    pub t: usize,
    /// Variable count; defaults to the clause count of each size.
    pub n: Option<usize>,
    /// Front clauses for the `product` family.
    pub k: usize,
    pub ragged: bool,
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub solve: SolveConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            family: Family::PiSigma,
            sizes: vec![1_000, 10_000, 100_000],
            s: 5,
            t: 2,
            n: None,
            k: 2,
            ragged: false,
            algorithms: vec![Algorithm::Auto],
            seeds: vec![0],
            solve: SolveConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub instance_id: String,
    pub m: usize,
    pub s: usize,
    pub t: u64,
    pub n: usize,
    pub algorithm: String,
    /// `found`, `none`, `budget_exceeded`, or `error: <message>` when the
    /// algorithm does not apply to the instance.
    pub answer: String,
    pub wall_time_ns: u128,
}

impl BenchRow {
    pub fn budget_exceeded(&self) -> bool {
        self.answer == "budget_exceeded"
    }
}

/// Runs every algorithm on every generated instance, in order of size, then
/// seed, then algorithm as listed.
///
/// `oracle` here stands for full expansion: an instance whose expansion has
/// more products than the oracle budget is flagged without running, and the
/// rest are counted exhaustively instead of stopping at the first witness.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if matches!(config.family, Family::Cnf3 | Family::Graph) {
        return Err(Error::invalid_argument(format!(
            "bench needs a polynomial family, not {}",
            config.family
        )));
    }
    let mut sizes = config.sizes.clone();
    sizes.sort_unstable();
    let mut seeds = config.seeds.clone();
    seeds.sort_unstable();
    let mut rows = Vec::new();
    for &m in &sizes {
        for &seed in &seeds {
            let spec = GenSpec {
                family: config.family,
                m,
                s: config.s,
                t: config.t,
                n: config.n.unwrap_or(m.max(1)),
                k: config.k,
                ragged: config.ragged,
                seed,
                ..GenSpec::default()
            };
            spec.validate()?;
            let poly = random_polynomial(&spec, &mut XorShift64Star::new(seed));
            let shape = classify(&poly);
            for &algorithm in &config.algorithms {
                let solve_config = SolveConfig {
                    algorithm,
                    ..config.solve
                };
                let start = Instant::now();
                let outcome = if algorithm == Algorithm::Oracle {
                    let limit = solve_config.oracle.max_products;
                    if poly.expansion_size() > u128::from(limit) {
                        Err(Error::BudgetExceeded {
                            what: "oracle products",
                            limit,
                        })
                    } else {
                        oracle_count(&poly, solve_config.c, solve_config.oracle).map(|n| n > 0)
                    }
                } else {
                    solve(&poly, &solve_config).map(|s| s.found())
                };
                let wall_time_ns = start.elapsed().as_nanos();
                let answer = match outcome {
                    Ok(true) => "found".to_owned(),
                    Ok(false) => "none".to_owned(),
                    Err(e) if e.is_budget_exceeded() => "budget_exceeded".to_owned(),
                    Err(e) => format!("error: {e}"),
                };
                rows.push(BenchRow {
                    instance_id: format!("{}-m{m}-seed{seed}", config.family),
                    m: shape.m,
                    s: shape.s,
                    t: shape.t,
                    n: shape.n,
                    algorithm: algorithm.name().to_owned(),
                    answer,
                    wall_time_ns,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
