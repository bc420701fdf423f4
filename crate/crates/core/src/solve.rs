//! Algorithm selection and a single entry point over all deciders.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::clique::{find_multilinear_clique_with, CliqueConfig};
use crate::error::{check_c, Error, Result};
use crate::hybrid::{front_times_pisigma, two_term_times_small, HybridConfig};
use crate::matcher::{find_c_monomial_pisigma, find_multilinear_pisigma};
use crate::oracle::{oracle_find, OracleBudget};
use crate::poly::{all_terms_linear, witness_monomial, FactoredPolynomial, Monomial, Witness};
use crate::purger::{find_multilinear_two_term, find_multilinear_two_term_scc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Auto,
    Matcher,
    Purger,
    /// The purger's 2-SAT encoding.
    Scc,
    Hybrid,
    Clique,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Auto,
        Algorithm::Matcher,
        Algorithm::Purger,
        Algorithm::Scc,
        Algorithm::Hybrid,
        Algorithm::Clique,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Matcher => "matcher",
            Algorithm::Purger => "purger",
            Algorithm::Scc => "scc",
            Algorithm::Hybrid => "hybrid",
            Algorithm::Clique => "clique",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::invalid_argument(format!("unknown algorithm '{s}'")))
    }
}

/// Which hybrid operation a split polynomial admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum HybridMode {
    /// Enumerate the front, match the ΠΣ back.
    FrontTimesPiSigma,
    /// Enumerate the back, purge the two-term front.
    TwoTermTimesSmall,
}

fn hybrid_mode(poly: &FactoredPolynomial) -> Option<HybridMode> {
    let (front, back) = poly.factors()?;
    let pisigma_back = all_terms_linear(back.clauses());
    let two_term_front = front.clauses().iter().all(|c| c.len() <= 2);
    match (pisigma_back, two_term_front) {
        (true, true) if back.expansion_size() < front.expansion_size() => Some(HybridMode::TwoTermTimesSmall),
        (true, _) => Some(HybridMode::FrontTimesPiSigma),
        (false, true) => Some(HybridMode::TwoTermTimesSmall),
        (false, false) => None,
    }
}

/// The algorithm `auto` resolves to: ΠΣ goes to the matcher, at most two
/// terms per clause to the purger, a split product with a tractable factor
/// to the hybrid, anything else to the clique search. For `c > 2` only ΠΣ
/// has a dedicated decider; the rest falls back to the oracle.
pub fn select_algorithm(poly: &FactoredPolynomial, c: u32) -> Algorithm {
    if all_terms_linear(poly.clauses()) {
        Algorithm::Matcher
    } else if c != 2 {
        Algorithm::Oracle
    } else if poly.clauses().iter().all(|cl| cl.len() <= 2) {
        Algorithm::Purger
    } else if hybrid_mode(poly).is_some() {
        Algorithm::Hybrid
    } else {
        Algorithm::Clique
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub c: u32,
    pub algorithm: Algorithm,
    pub oracle: OracleBudget,
    pub clique: CliqueConfig,
    pub hybrid: HybridConfig,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            c: 2,
            algorithm: Algorithm::Auto,
            oracle: OracleBudget::default(),
            clique: CliqueConfig::default(),
            hybrid: HybridConfig::default(),
        }
    }
}

impl SolveConfig {
    /// Caps every enumerating algorithm at `budget` steps.
    pub fn with_budget(mut self, budget: u64) -> Result<Self> {
        self.oracle = OracleBudget::new(budget)?;
        self.clique.max_nodes = budget;
        self.hybrid.max_small_products = u128::from(budget);
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// The algorithm that actually ran.
    pub algorithm: Algorithm,
    pub witness: Option<Witness>,
    /// Product of the witness's terms.
    pub monomial: Option<Monomial>,
}

impl Solution {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

fn require_multilinear(algorithm: Algorithm, c: u32) -> Result<()> {
    if c != 2 {
        return Err(Error::invalid_argument(format!(
            "{algorithm} only tests for multilinear monomials (c = 2)"
        )));
    }
    Ok(())
}

/// Decides whether `poly` has a `c`-monomial with the configured algorithm.
/// Any witness found is re-checked against the polynomial.
pub fn solve(poly: &FactoredPolynomial, config: &SolveConfig) -> Result<Solution> {
    let c = config.c;
    check_c(c)?;
    let algorithm = match config.algorithm {
        Algorithm::Auto => select_algorithm(poly, c),
        a => a,
    };
    let witness = match algorithm {
        Algorithm::Auto => unreachable!("resolved above"),
        Algorithm::Matcher if c == 2 => find_multilinear_pisigma(poly)?,
        Algorithm::Matcher => find_c_monomial_pisigma(poly, c)?,
        Algorithm::Purger => {
            require_multilinear(algorithm, c)?;
            find_multilinear_two_term(poly)?
        }
        Algorithm::Scc => {
            require_multilinear(algorithm, c)?;
            find_multilinear_two_term_scc(poly)?
        }
        Algorithm::Hybrid => {
            require_multilinear(algorithm, c)?;
            let (front, back) = poly
                .factors()
                .ok_or_else(|| Error::shape("hybrid needs a split polynomial (mark it with ';' or --split)"))?;
            match hybrid_mode(poly) {
                Some(HybridMode::FrontTimesPiSigma) => front_times_pisigma(&front, &back, &config.hybrid)?.witness,
                Some(HybridMode::TwoTermTimesSmall) => two_term_times_small(&front, &back, &config.hybrid)?.witness,
                None => {
                    return Err(Error::shape(
                        "hybrid needs a ΠΣ back factor or a front factor with at most two terms per clause",
                    ))
                }
            }
        }
        Algorithm::Clique => {
            require_multilinear(algorithm, c)?;
            find_multilinear_clique_with(poly, &config.clique)?
        }
        Algorithm::Oracle => oracle_find(poly, c, config.oracle)?,
    };
    let monomial = match &witness {
        Some(w) => {
            let m = witness_monomial(poly, w)?;
            if !m.is_c_monomial(c)? {
                return Err(Error::invalid_witness(format!(
                    "{algorithm} returned a witness whose product is not a {c}-monomial"
                )));
            }
            Some(m)
        }
        None => None,
    };
    Ok(Solution {
        algorithm,
        witness,
        monomial,
    })
}
