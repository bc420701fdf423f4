//! Multilinear testing for products of a small factor with a tractable one.
//!
//! Every product of the small factor's expansion is listed (in lexicographic
//! order of term choices, skipping any prefix that is already not
//! multilinear) and the remaining factor is decided in polynomial time
//! relative to that product: by matching when it is ΠΣ, by purging when it
//! has at most two terms per clause.

use crate::error::{Error, Result};
use crate::matcher::{max_bipartite_matching, BipartiteGraph};
use crate::poly::{all_terms_linear, FactoredPolynomial, Monomial, Witness};
use crate::purger::find_multilinear_two_term_with_fixed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HybridConfig {
    /// Most clauses the enumerated factor may have.
    pub max_small_clauses: usize,
    /// Most selections the enumerated factor's expansion may have.
    pub max_small_products: u128,
}

impl Default for HybridConfig {
    fn default() -> Self {
        HybridConfig {
            max_small_clauses: 20,
            max_small_products: 1 << 32,
        }
    }
}

/// Result plus how many multilinear small-factor products were tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridOutcome {
    /// Witness over the concatenated clause list (front clauses first).
    pub witness: Option<Witness>,
    pub products_tried: u64,
}

/// A product of the enumerated factor: chosen term per clause and the
/// accumulated monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontProduct<'a> {
    pub choices: &'a [usize],
    pub monomial: &'a Monomial,
}

fn check_small(small: &FactoredPolynomial, config: &HybridConfig) -> Result<()> {
    if small.num_clauses() > config.max_small_clauses {
        return Err(Error::BudgetExceeded {
            what: "small-factor clauses",
            limit: config.max_small_clauses as u64,
        });
    }
    if small.expansion_size() > config.max_small_products {
        return Err(Error::BudgetExceeded {
            what: "small-factor products",
            limit: u64::try_from(config.max_small_products).unwrap_or(u64::MAX),
        });
    }
    Ok(())
}

/// Lists multilinear products of `small` lexicographically until `visit`
/// returns true. A prefix whose product is not multilinear is skipped along
/// with every extension of it.
fn for_each_multilinear_product(small: &FactoredPolynomial, mut visit: impl FnMut(FrontProduct<'_>) -> bool) -> bool {
    fn go(
        small: &FactoredPolynomial,
        depth: usize,
        choices: &mut Vec<usize>,
        acc: &Monomial,
        visit: &mut dyn FnMut(FrontProduct<'_>) -> bool,
    ) -> bool {
        if depth == small.num_clauses() {
            return visit(FrontProduct { choices, monomial: acc });
        }
        for (j, term) in small.clause(depth).monomials().enumerate() {
            if !term.is_multilinear() || term.shares_variable_with(acc) {
                continue;
            }
            choices.push(j);
            let next = acc.mul(term);
            if go(small, depth + 1, choices, &next, visit) {
                return true;
            }
            choices.pop();
        }
        false
    }
    go(small, 0, &mut Vec::new(), &Monomial::one(), &mut visit)
}

/// Multilinear test for `front · back` with `back` a ΠΣ polynomial and
/// `front` small, using [`HybridConfig::default`].
pub fn find_multilinear_front_times_pisigma(
    front: &FactoredPolynomial,
    back: &FactoredPolynomial,
) -> Result<Option<Witness>> {
    Ok(front_times_pisigma(front, back, &HybridConfig::default())?.witness)
}

/// For each multilinear product ψ of `front`, drops from every clause of
/// `back` the variables of ψ; if no clause is emptied, a clause-variable
/// matching decides the rest.
pub fn front_times_pisigma(
    front: &FactoredPolynomial,
    back: &FactoredPolynomial,
    config: &HybridConfig,
) -> Result<HybridOutcome> {
    let joined = FactoredPolynomial::product(front, back);
    let (front, back) = joined.factors().expect("product is split");
    if !all_terms_linear(back.clauses()) {
        return Err(Error::shape("back factor must be ΠΣ (every term a single variable)"));
    }
    check_small(&front, config)?;

    let n = joined.num_vars();
    let mut blocked = vec![false; n];
    let mut tried = 0u64;
    let mut found: Option<Witness> = None;
    if back.has_empty_clause() {
        return Ok(HybridOutcome {
            witness: None,
            products_tried: 0,
        });
    }

    // Back clauses with a constant term take it and never need matching.
    let mut fixed_choice = vec![None; back.num_clauses()];
    for (i, clause) in back.clauses().iter().enumerate() {
        fixed_choice[i] = clause.monomials().position(Monomial::is_constant);
    }
    let back_vars: Vec<Vec<usize>> = back
        .clauses()
        .iter()
        .map(|c| {
            c.monomials()
                .map(|m| m.vars().next().map_or(usize::MAX, |v| v.index()))
                .collect()
        })
        .collect();

    for_each_multilinear_product(&front, |psi| {
        tried += 1;
        for v in psi.monomial.vars() {
            blocked[v.index()] = true;
        }
        let mut left = Vec::new();
        let mut adjacency = Vec::new();
        let mut emptied = false;
        for (i, vars) in back_vars.iter().enumerate() {
            if fixed_choice[i].is_some() {
                continue;
            }
            let adj: Vec<usize> = vars.iter().copied().filter(|&v| !blocked[v]).collect();
            if adj.is_empty() {
                emptied = true;
                break;
            }
            left.push(i);
            adjacency.push(adj);
        }
        let mut witness = None;
        if !emptied {
            let g = BipartiteGraph::new(n, adjacency).expect("ids in range");
            let matching = max_bipartite_matching(&g);
            if matching.size == left.len() {
                let mut choices = psi.choices.to_vec();
                let mut back_choices: Vec<usize> = fixed_choice.iter().map(|c| c.unwrap_or(0)).collect();
                for (l, &i) in left.iter().enumerate() {
                    let var = matching.pair_for_left[l].expect("perfect on left");
                    back_choices[i] = back_vars[i].iter().position(|&v| v == var).expect("matched var");
                }
                choices.extend(back_choices);
                witness = Some(Witness::new(choices));
            }
        }
        for v in psi.monomial.vars() {
            blocked[v.index()] = false;
        }
        found = witness;
        found.is_some()
    });

    Ok(HybridOutcome {
        witness: found,
        products_tried: tried,
    })
}

/// Multilinear test for `front · back` with `front` having at most two terms
/// per clause and `back` small, using [`HybridConfig::default`].
pub fn find_multilinear_two_term_times_small(
    front: &FactoredPolynomial,
    back: &FactoredPolynomial,
) -> Result<Option<Witness>> {
    Ok(two_term_times_small(front, back, &HybridConfig::default())?.witness)
}

/// For each multilinear product π of `back`, runs the purging search on
/// `front` times the one-term clause `(π)`.
pub fn two_term_times_small(
    front: &FactoredPolynomial,
    back: &FactoredPolynomial,
    config: &HybridConfig,
) -> Result<HybridOutcome> {
    let joined = FactoredPolynomial::product(front, back);
    let (front, back) = joined.factors().expect("product is split");
    if let Some(i) = front.clauses().iter().position(|c| c.len() > 2) {
        return Err(Error::shape(format!(
            "front factor clause {i} has {} terms; at most 2 allowed",
            front.clause(i).len()
        )));
    }
    check_small(&back, config)?;

    let mut tried = 0u64;
    let mut found = None;
    for_each_multilinear_product(&back, |pi| {
        tried += 1;
        let purged = find_multilinear_two_term_with_fixed(&front, pi.monomial).expect("shape checked");
        if let Some(w) = purged {
            let mut choices = w.choices;
            choices.extend_from_slice(pi.choices);
            found = Some(Witness::new(choices));
            return true;
        }
        false
    });
    Ok(HybridOutcome {
        witness: found,
        products_tried: tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_polynomial, Family, GenSpec, XorShift64Star};
    use crate::oracle::{oracle_count, oracle_find, OracleBudget};
    use crate::poly::witness_monomial;
    use crate::textio::parse_polynomial;

    fn p(s: &str) -> FactoredPolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn front_times_pisigma_examples() {
        let (a, b) = (p("(x1*x2+x3)"), p("(x1+x4)(x2+x4)"));
        let w = find_multilinear_front_times_pisigma(&a, &b).unwrap().unwrap();
        assert_eq!(w.choices[0], 1);
        let joined = FactoredPolynomial::product(&a, &b);
        assert!(witness_monomial(&joined, &w).unwrap().is_multilinear());

        assert_eq!(
            find_multilinear_front_times_pisigma(&p("(x1)"), &p("(x1)")).unwrap(),
            None
        );
        assert_eq!(
            find_multilinear_front_times_pisigma(&p("(x1+x2)"), &p("(x1)(x2)")).unwrap(),
            None
        );
    }

    #[test]
    fn two_term_times_small_examples() {
        let (a, b) = (p("(x1*x2+x3*x4)"), p("(x1+x3)"));
        let w = find_multilinear_two_term_times_small(&a, &b).unwrap().unwrap();
        assert_eq!(w.choices, [1, 0]);

        assert_eq!(
            find_multilinear_two_term_times_small(&p("(x1*x2+x1*x3)"), &p("(x1)")).unwrap(),
            None
        );
        let (a, b) = (p("(x1+x2)"), p("(x1+x2)"));
        let w = find_multilinear_two_term_times_small(&a, &b).unwrap().unwrap();
        assert!(w.choices == [1, 0] || w.choices == [0, 1]);
    }

    #[test]
    fn shape_and_cap_errors() {
        assert!(matches!(
            find_multilinear_front_times_pisigma(&p("(x1)"), &p("(x1*x2)")),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            find_multilinear_two_term_times_small(&p("(a+b+c)"), &p("(x)")),
            Err(Error::Shape(_))
        ));
        let big = p(&"(a+b)".repeat(5));
        let tight = HybridConfig {
            max_small_clauses: 4,
            ..HybridConfig::default()
        };
        assert!(front_times_pisigma(&big, &p("(x)"), &tight)
            .unwrap_err()
            .is_budget_exceeded());
        let tight = HybridConfig {
            max_small_products: 16,
            ..HybridConfig::default()
        };
        assert!(two_term_times_small(&p("(x)"), &big, &tight)
            .unwrap_err()
            .is_budget_exceeded());
    }

    #[test]
    fn constants_and_empty_factors() {
        let (a, b) = (p("(x + 1)"), p("(x)(1 + x)"));
        let w = find_multilinear_front_times_pisigma(&a, &b).unwrap().unwrap();
        let joined = FactoredPolynomial::product(&a, &b);
        assert!(witness_monomial(&joined, &w).unwrap().is_multilinear());
        let one = FactoredPolynomial::one();
        assert_eq!(
            find_multilinear_front_times_pisigma(&one, &one).unwrap(),
            Some(Witness::default())
        );
        assert_eq!(
            find_multilinear_two_term_times_small(&p("(a)"), &one)
                .unwrap()
                .unwrap()
                .choices,
            [0]
        );
    }

    #[test]
    fn skipped_products_are_exactly_the_non_multilinear_ones() {
        let mut rng = XorShift64Star::new(17);
        for _ in 0..300 {
            let front = random_polynomial(
                &GenSpec {
                    family: Family::ThreeTerm,
                    m: 3,
                    t: 2,
                    n: 6,
                    ..GenSpec::default()
                },
                &mut rng,
            );
            // A back factor with no multilinear completion forces a full scan.
            let back = p("(zz)(zz)");
            let out = front_times_pisigma(&front, &back, &HybridConfig::default()).unwrap();
            assert_eq!(out.witness, None);
            let expected = oracle_count(&front, 2, OracleBudget::default()).unwrap();
            assert_eq!(out.products_tried, expected);
            let out = two_term_times_small(&back, &front, &HybridConfig::default()).unwrap();
            assert_eq!(out.products_tried, expected);
        }
    }

    #[test]
    fn oracle_equivalence_small() {
        let mut rng = XorShift64Star::new(23);
        for i in 0..600 {
            let n = 3 + i % 8;
            let small = random_polynomial(
                &GenSpec {
                    family: Family::ThreeTerm,
                    m: 1 + i % 3,
                    t: 2,
                    n,
                    ragged: true,
                    ..GenSpec::default()
                },
                &mut rng,
            );
            let pisigma = random_polynomial(
                &GenSpec {
                    family: Family::PiSigma,
                    m: 1 + i % 5,
                    s: 3,
                    n,
                    ragged: true,
                    ..GenSpec::default()
                },
                &mut rng,
            );
            let two = random_polynomial(
                &GenSpec {
                    family: Family::TwoTerm,
                    m: 1 + i % 5,
                    t: 3,
                    n,
                    ragged: true,
                    ..GenSpec::default()
                },
                &mut rng,
            );
            let joined = FactoredPolynomial::product(&small, &pisigma);
            let oracle = oracle_find(&joined, 2, OracleBudget::default()).unwrap();
            let got = find_multilinear_front_times_pisigma(&small, &pisigma).unwrap();
            assert_eq!(got.is_some(), oracle.is_some());
            if let Some(w) = got {
                assert!(witness_monomial(&joined, &w).unwrap().is_multilinear());
            }

            let joined = FactoredPolynomial::product(&two, &small);
            let oracle = oracle_find(&joined, 2, OracleBudget::default()).unwrap();
            let got = find_multilinear_two_term_times_small(&two, &small).unwrap();
            assert_eq!(got.is_some(), oracle.is_some());
            if let Some(w) = got {
                assert!(witness_monomial(&joined, &w).unwrap().is_multilinear());
            }
        }
    }
}
