use multimono::oracle::{oracle_find, OracleBudget};
use multimono::reduce::{decode_assignment, mlm_to_3monomial, normalize_3sat, sat3_to_poly, threeterm_to_product};
use multimono::textio::{parse_dimacs, render_dimacs, CnfFormula};
use multimono::{
    parse_polynomial, render_polynomial, solve, witness_monomial, Algorithm, FactoredPolynomial, Monomial, PolyBuilder,
    SolveConfig,
};
use proptest::prelude::*;

/// Clauses as lists of terms, each term a list of (variable, exponent).
type Raw = Vec<Vec<Vec<(u8, u32)>>>;

fn raw(m: usize, s: usize, t: usize, n: u8, max_exp: u32) -> impl Strategy<Value = Raw> {
    let term = prop::collection::vec((0..n, 1..=max_exp), 1..=t);
    let clause = prop::collection::vec(term, 1..=s);
    prop::collection::vec(clause, 1..=m)
}

fn build(raw: &Raw, split: Option<usize>) -> FactoredPolynomial {
    let mut b = PolyBuilder::new();
    for (i, clause) in raw.iter().enumerate() {
        if split == Some(i) {
            b.mark_split();
        }
        let terms = clause
            .iter()
            .map(|term| Monomial::from_pairs(term.iter().map(|&(v, e)| (b.var(&format!("x{v}")), e))))
            .collect();
        b.push_clause(terms);
    }
    b.build()
}

fn oracle(poly: &FactoredPolynomial, c: u32) -> bool {
    oracle_find(poly, c, OracleBudget::unlimited()).unwrap().is_some()
}

fn check(poly: &FactoredPolynomial, algorithm: Algorithm, c: u32) -> Result<(), TestCaseError> {
    let config = SolveConfig {
        c,
        algorithm,
        ..SolveConfig::default()
    };
    let s = solve(poly, &config).unwrap();
    prop_assert_eq!(
        s.found(),
        oracle(poly, c),
        "{} on {}",
        algorithm,
        render_polynomial(poly)
    );
    if let Some(w) = &s.witness {
        prop_assert!(witness_monomial(poly, w).unwrap().is_c_monomial(c).unwrap());
    }
    Ok(())
}

fn cnf() -> impl Strategy<Value = CnfFormula> {
    (1u32..=6).prop_flat_map(|n| {
        let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
        let clause = prop::collection::vec(lit, 1..=3).prop_filter("distinct vars", |c| {
            let mut vs: Vec<_> = c.iter().map(|l| l.abs()).collect();
            vs.sort_unstable();
            vs.windows(2).all(|w| w[0] != w[1])
        });
        prop::collection::vec(clause, 1..=6).prop_map(move |cs| CnfFormula::new(n, cs))
    })
}

fn brute_sat(f: &CnfFormula) -> bool {
    (0u32..1 << f.num_vars).any(|bits| {
        let a: Vec<bool> = (0..f.num_vars).map(|i| bits >> i & 1 == 1).collect();
        f.is_satisfied_by(&a)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matcher_matches_oracle(r in raw(6, 4, 1, 8, 1), c in 2u32..=4) {
        check(&build(&r, None), Algorithm::Matcher, c)?;
    }

    #[test]
    fn purger_and_scc_match_oracle(r in raw(8, 2, 3, 10, 2)) {
        let poly = build(&r, None);
        check(&poly, Algorithm::Purger, 2)?;
        check(&poly, Algorithm::Scc, 2)?;
    }

    #[test]
    fn clique_matches_oracle(r in raw(6, 3, 3, 9, 2)) {
        check(&build(&r, None), Algorithm::Clique, 2)?;
    }

    #[test]
    fn hybrid_front_times_pisigma(front in raw(3, 3, 3, 8, 2), back in raw(5, 4, 1, 8, 1)) {
        let mut all = front.clone();
        all.extend(back);
        check(&build(&all, Some(front.len())), Algorithm::Hybrid, 2)?;
    }

    #[test]
    fn hybrid_two_term_times_small(front in raw(6, 2, 3, 8, 2), back in raw(3, 3, 3, 8, 2)) {
        let mut all = front.clone();
        all.extend(back);
        check(&build(&all, Some(front.len())), Algorithm::Hybrid, 2)?;
    }

    #[test]
    fn auto_matches_oracle(r in raw(6, 3, 3, 8, 3), c in 2u32..=3) {
        check(&build(&r, None), Algorithm::Auto, c)?;
    }

    #[test]
    fn render_then_parse_is_stable(r in raw(5, 4, 3, 10, 3)) {
        let poly = build(&r, None);
        let text = render_polynomial(&poly);
        let again = parse_polynomial(&text).unwrap();
        prop_assert_eq!(render_polynomial(&again), text);
        prop_assert_eq!(again.expansion_size(), poly.expansion_size());
    }

    #[test]
    fn sat3_reduction_is_equisatisfiable(f in cnf()) {
        let sat = brute_sat(&f);
        let normalized = normalize_3sat(&f);
        prop_assert_eq!(brute_sat(&normalized), sat);
        let (poly, map) = sat3_to_poly(&normalized).unwrap();
        let w = oracle_find(&poly, 2, OracleBudget::unlimited()).unwrap();
        prop_assert_eq!(w.is_some(), sat);
        if let Some(w) = w {
            let assignment = decode_assignment(&map, &w).unwrap();
            prop_assert!(normalized.is_satisfied_by(&assignment));
        }
    }

    #[test]
    fn dimacs_roundtrip(f in cnf()) {
        let again = parse_dimacs(&render_dimacs(&f)).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn product_gadget_preserves_answer(r in raw(4, 3, 2, 6, 1).prop_map(|mut r| {
        for clause in &mut r {
            while clause.len() < 3 {
                clause.push(clause[0].clone());
            }
            clause.truncate(3);
        }
        r
    })) {
        let poly = build(&r, None);
        let reduced = threeterm_to_product(&poly).unwrap();
        prop_assert_eq!(oracle(&reduced, 2), oracle(&poly, 2));
    }

    #[test]
    fn cmono_gadget_preserves_answer(r in raw(4, 3, 2, 6, 1).prop_map(|mut r| {
        for clause in &mut r {
            while clause.len() < 3 {
                clause.push(clause[0].clone());
            }
            clause.truncate(3);
            for term in clause.iter_mut() {
                term.sort_unstable();
                term.dedup_by_key(|p| p.0);
            }
        }
        r
    })) {
        let poly = build(&r, None);
        let reduced = mlm_to_3monomial(&poly).unwrap();
        prop_assert_eq!(oracle(&reduced, 3), oracle(&poly, 2));
    }
}
