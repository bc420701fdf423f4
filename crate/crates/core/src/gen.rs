//! Deterministic random instance generation.
//!
//! All randomness comes from [`XorShift64Star`], seeded through one round of
//! SplitMix64 so that every `u64` seed (including 0) gives a usable state.
//! The exact algorithms are documented on each method so that corpora can be
//! regenerated bit-for-bit by other implementations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, Monomial, PolyBuilder};
use crate::textio::{render_dimacs, render_graph, render_polynomial, CnfFormula, Graph};

/// xorshift64* generator (Vigna 2014, shifts 12/25/27, multiplier
/// `0x2545F4914F6CDD1D`).
#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    /// State is `splitmix64(seed)`, replaced by `0x9E3779B97F4A7C15` if that is zero.
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        XorShift64Star {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `0..bound` by multiply-shift: `(next_u64() * bound) >> 64`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    /// Uniform in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    PiSigma,
    TwoTerm,
    ThreeTerm,
    Product,
    Cnf3,
    Graph,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::PiSigma,
        Family::TwoTerm,
        Family::ThreeTerm,
        Family::Product,
        Family::Cnf3,
        Family::Graph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::PiSigma => "pisigma",
            Family::TwoTerm => "two_term",
            Family::ThreeTerm => "three_term",
            Family::Product => "product",
            Family::Cnf3 => "cnf3",
            Family::Graph => "graph",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid_argument(format!("unknown family {s:?}")))
    }
}

/// Parameters for one generated instance.
///
/// * `pisigma`: `m` clauses of `s` single-variable terms over `x1..xn`.
/// * `two_term` / `three_term`: `m` clauses of 2 / 3 terms, each term of
///   degree uniform in `1..=t` with variables drawn with replacement (so
///   powers occur).
/// * `product`: a `k`-clause front factor shaped like `three_term` but with
///   `s` terms, then `;`, then an `m`-clause `pisigma` back factor.
/// * `cnf3`: `m` clauses of `min(3, n)` literals on distinct variables.
/// * `graph`: `n` vertices, each pair joined with probability `density`.
///
/// With `ragged`, polynomial clause widths are uniform in `1..=s` instead of
/// exactly `s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenSpec {
    pub family: Family,
    pub m: usize,
    pub s: usize,
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub density: f64,
    pub ragged: bool,
    pub seed: u64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            family: Family::PiSigma,
            m: 4,
            s: 2,
            t: 2,
            n: 6,
            k: 2,
            density: 0.3,
            ragged: false,
            seed: 0,
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::invalid_argument(format!("{}: {msg}", self.family)));
        match self.family {
            Family::PiSigma | Family::TwoTerm | Family::ThreeTerm | Family::Product => {
                if self.n == 0 && (self.m > 0 || (self.family == Family::Product && self.k > 0)) {
                    return bad("n must be positive");
                }
                if matches!(self.family, Family::PiSigma | Family::Product) && self.s == 0 {
                    return bad("s must be positive");
                }
                if matches!(self.family, Family::TwoTerm | Family::ThreeTerm | Family::Product) && self.t == 0 {
                    return bad("t must be positive");
                }
            }
            Family::Cnf3 => {
                if self.n == 0 && self.m > 0 {
                    return bad("n must be positive");
                }
                if self.n > i32::MAX as usize {
                    return bad("n too large");
                }
            }
            Family::Graph => {
                if !(0.0..=1.0).contains(&self.density) {
                    return bad("density must lie in [0, 1]");
                }
                if self.n > u32::MAX as usize {
                    return bad("n too large");
                }
            }
        }
        Ok(())
    }
}

fn var_name(i: u64) -> String {
    format!("x{}", i + 1)
}

fn push_random_clause(builder: &mut PolyBuilder, rng: &mut XorShift64Star, width: usize, max_degree: usize, n: usize) {
    let terms = (0..width)
        .map(|_| {
            let degree = rng.range_inclusive(1, max_degree as u64);
            Monomial::from_vars((0..degree).map(|_| {
                let i = rng.below(n as u64);
                builder.var(&var_name(i))
            }))
        })
        .collect();
    builder.push_clause(terms);
}

fn width(spec: &GenSpec, s: usize, rng: &mut XorShift64Star) -> usize {
    if spec.ragged {
        rng.range_inclusive(1, s as u64) as usize
    } else {
        s
    }
}

/// Random polynomial of a polynomial family, drawing from `rng`.
///
/// Panics for the `cnf3` and `graph` families.
pub fn random_polynomial(spec: &GenSpec, rng: &mut XorShift64Star) -> FactoredPolynomial {
    let mut b = PolyBuilder::new();
    match spec.family {
        Family::PiSigma => {
            for _ in 0..spec.m {
                let w = width(spec, spec.s, rng);
                push_random_clause(&mut b, rng, w, 1, spec.n);
            }
        }
        Family::TwoTerm | Family::ThreeTerm => {
            let s = if spec.family == Family::TwoTerm { 2 } else { 3 };
            for _ in 0..spec.m {
                let w = width(spec, s, rng);
                push_random_clause(&mut b, rng, w, spec.t, spec.n);
            }
        }
        Family::Product => {
            for _ in 0..spec.k {
                let w = width(spec, spec.s, rng);
                push_random_clause(&mut b, rng, w, spec.t, spec.n);
            }
            b.mark_split();
            for _ in 0..spec.m {
                let w = width(spec, spec.s, rng);
                push_random_clause(&mut b, rng, w, 1, spec.n);
            }
        }
        Family::Cnf3 | Family::Graph => panic!("{} is not a polynomial family", spec.family),
    }
    b.build()
}

pub fn random_cnf3(spec: &GenSpec, rng: &mut XorShift64Star) -> CnfFormula {
    let n = spec.n as u64;
    let width = n.min(3);
    let clauses = (0..spec.m)
        .map(|_| {
            let mut vars: Vec<u64> = Vec::with_capacity(width as usize);
            while (vars.len() as u64) < width {
                let v = rng.below(n) + 1;
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            vars.into_iter()
                .map(|v| if rng.bool() { v as i32 } else { -(v as i32) })
                .collect()
        })
        .collect();
    CnfFormula::new(spec.n as u32, clauses)
}

pub fn random_graph(spec: &GenSpec, rng: &mut XorShift64Star) -> Graph {
    let n = spec.n as u32;
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.unit() < spec.density {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Instance text for `spec`, seeded from `spec.seed`.
pub fn generate(spec: &GenSpec) -> Result<String> {
    spec.validate()?;
    let mut rng = XorShift64Star::new(spec.seed);
    Ok(match spec.family {
        Family::Cnf3 => render_dimacs(&random_cnf3(spec, &mut rng)),
        Family::Graph => render_graph(&random_graph(spec, &mut rng)),
        _ => {
            let mut text = render_polynomial(&random_polynomial(spec, &mut rng));
            text.push('\n');
            text
        }
    })
}
