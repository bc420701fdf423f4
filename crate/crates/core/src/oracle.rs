//! Brute-force search over the sum-product expansion.
//!
//! Depth-first in clause order, trying terms in index order, so the first
//! witness found is the lexicographically smallest. A partial product is
//! abandoned as soon as one of its exponents reaches `c`.

use std::ops::ControlFlow;

use crate::error::{check_c, Error, Result};
use crate::poly::{FactoredPolynomial, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Maximum number of partial products (term extensions) examined.
    pub max_products: u64,
}

impl OracleBudget {
    pub const DEFAULT_MAX_PRODUCTS: u64 = 10_000_000;

    pub fn new(max_products: u64) -> Result<Self> {
        if max_products == 0 {
            return Err(Error::invalid_argument("oracle budget must be positive"));
        }
        Ok(OracleBudget { max_products })
    }

    pub fn unlimited() -> Self {
        OracleBudget { max_products: u64::MAX }
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_products: Self::DEFAULT_MAX_PRODUCTS,
        }
    }
}

/// Walks every selection whose product is a c-monomial, calling `leaf` on each.
fn walk(
    poly: &FactoredPolynomial,
    c: u32,
    budget: OracleBudget,
    mut leaf: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    check_c(c)?;
    let m = poly.num_clauses();
    let clauses = poly.clauses();
    let mut counts = vec![0u32; poly.num_vars()];
    let mut choices = vec![0usize; m];
    let mut visited = 0u64;
    let mut depth = 0usize;

    let fits = |counts: &[u32], depth: usize, choice: usize| {
        clauses[depth]
            .term(choice)
            .iter()
            .all(|(v, e)| u64::from(counts[v.index()]) + u64::from(e) < u64::from(c))
    };
    let apply = |counts: &mut [u32], depth: usize, choice: usize, add: bool| {
        for (v, e) in clauses[depth].term(choice).iter() {
            if add {
                counts[v.index()] += e;
            } else {
                counts[v.index()] -= e;
            }
        }
    };

    loop {
        if depth == m {
            if leaf(&choices).is_break() {
                return Ok(());
            }
            if depth == 0 {
                return Ok(());
            }
            depth -= 1;
            apply(&mut counts, depth, choices[depth], false);
            choices[depth] += 1;
            continue;
        }
        let choice = choices[depth];
        if choice < clauses[depth].len() {
            visited += 1;
            if visited > budget.max_products {
                return Err(Error::BudgetExceeded {
                    what: "partial products",
                    limit: budget.max_products,
                });
            }
            if fits(&counts, depth, choice) {
                apply(&mut counts, depth, choice, true);
                depth += 1;
                if depth < m {
                    choices[depth] = 0;
                }
            } else {
                choices[depth] += 1;
            }
            continue;
        }
        if depth == 0 {
            return Ok(());
        }
        depth -= 1;
        apply(&mut counts, depth, choices[depth], false);
        choices[depth] += 1;
    }
}

/// Lexicographically smallest witness whose monomial is a c-monomial.
pub fn oracle_find(poly: &FactoredPolynomial, c: u32, budget: OracleBudget) -> Result<Option<Witness>> {
    let mut found = None;
    walk(poly, c, budget, |choices| {
        found = Some(Witness::new(choices.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Number of witnesses whose monomial is a c-monomial.
pub fn oracle_count(poly: &FactoredPolynomial, c: u32, budget: OracleBudget) -> Result<u64> {
    let mut count = 0u64;
    walk(poly, c, budget, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_polynomial, Family, GenSpec, XorShift64Star};
    use crate::poly::witness_monomial;
    use crate::textio::parse_polynomial;

    fn p(s: &str) -> FactoredPolynomial {
        parse_polynomial(s).unwrap()
    }

    /// Pruning-free enumeration of every selection in mixed-radix order.
    fn full_enumeration(poly: &FactoredPolynomial, c: u32) -> Vec<Witness> {
        let m = poly.num_clauses();
        if poly.has_empty_clause() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; m];
        loop {
            let w = Witness::new(idx.clone());
            if witness_monomial(poly, &w).unwrap().is_c_monomial(c).unwrap() {
                out.push(w);
            }
            let mut d = m;
            loop {
                if d == 0 {
                    return out;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < poly.clause(d).len() {
                    break;
                }
                idx[d] = 0;
            }
        }
    }

    #[test]
    fn find_examples() {
        let b = OracleBudget::default();
        let w = oracle_find(&p("(x1+x2)(x1+x2)"), 2, b).unwrap().unwrap();
        assert_eq!(w.choices, [0, 1]);
        assert_eq!(oracle_find(&p("(x1)(x1)"), 2, b).unwrap(), None);

        let pf = p("(y11+y21*y22+y31)(y11*y12+y21+y41)(y12+y22+y31)(y42+y51)");
        let w = oracle_find(&pf, 2, b).unwrap().unwrap();
        assert!(witness_monomial(&pf, &w).unwrap().is_multilinear());
        let reported = Witness::new(vec![2, 0, 1, 0]);
        assert!(witness_monomial(&pf, &reported).unwrap().is_multilinear());
    }

    #[test]
    fn count_examples() {
        let b = OracleBudget::default();
        assert_eq!(oracle_count(&p("(x1+x2)(x1+x2)"), 2, b).unwrap(), 2);
        assert_eq!(oracle_count(&p("(x1)(x2)"), 2, b).unwrap(), 1);
        assert_eq!(oracle_count(&p("(x1)(x1)"), 2, b).unwrap(), 0);
        assert_eq!(oracle_count(&p("(x1)(x1)"), 3, b).unwrap(), 1);
    }

    #[test]
    fn empty_product_and_zero_clause() {
        let b = OracleBudget::default();
        let one = FactoredPolynomial::one();
        assert_eq!(oracle_find(&one, 2, b).unwrap(), Some(Witness::default()));
        assert_eq!(oracle_count(&one, 2, b).unwrap(), 1);
        let zero = FactoredPolynomial::new(
            parse_polynomial("(x1)").unwrap().vars().clone(),
            vec![crate::poly::Clause::new(vec![])],
            None,
        )
        .unwrap();
        assert_eq!(oracle_find(&zero, 2, b).unwrap(), None);
    }

    #[test]
    fn constant_terms() {
        let b = OracleBudget::default();
        let w = oracle_find(&p("(x1 + 1)(x1)"), 2, b).unwrap().unwrap();
        assert_eq!(w.choices, [1, 0]);
    }

    #[test]
    fn rejects_small_c() {
        assert!(oracle_find(&p("(x1)"), 1, OracleBudget::default()).is_err());
    }

    #[test]
    fn budget_exceeded() {
        let text = "(a+b+c)".repeat(20);
        let poly = p(&text);
        let err = oracle_count(&poly, 30, OracleBudget::new(1000).unwrap()).unwrap_err();
        assert!(err.is_budget_exceeded());
        assert!(OracleBudget::new(0).is_err());
    }

    #[test]
    fn agrees_with_full_enumeration() {
        let mut rng = XorShift64Star::new(11);
        for i in 0..400 {
            let spec = GenSpec {
                family: Family::ThreeTerm,
                m: 1 + (i % 6),
                s: 3,
                t: 3,
                n: 2 + (i % 7),
                ..GenSpec::default()
            };
            let poly = random_polynomial(&spec, &mut rng);
            for c in 2..=4 {
                let all = full_enumeration(&poly, c);
                let found = oracle_find(&poly, c, OracleBudget::default()).unwrap();
                assert_eq!(found.as_ref(), all.first());
                let count = oracle_count(&poly, c, OracleBudget::default()).unwrap();
                assert_eq!(count as usize, all.len());
            }
        }
    }
}
