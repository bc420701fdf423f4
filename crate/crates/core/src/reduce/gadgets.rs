//! Clause gadgets rewriting three-term clauses.

use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, Monomial, PolyBuilder, VarId};

/// Prefix for gadget variables: the shortest of `""`, `"g_"`, `"gg_"`, ...
/// under which no generated name collides with a variable of `poly`.
fn fresh_prefix(poly: &FactoredPolynomial, letters: &[char]) -> String {
    let m = poly.num_clauses();
    let mut prefix = String::new();
    loop {
        let collides = (1..=m).any(|i| {
            letters
                .iter()
                .any(|l| poly.vars().get(&format!("{prefix}{l}{i}")).is_some())
        });
        if !collides {
            return prefix;
        }
        prefix = if prefix.is_empty() {
            "g_".to_string()
        } else {
            format!("g{prefix}")
        };
    }
}

fn require_three_terms(poly: &FactoredPolynomial) -> Result<()> {
    match poly.clauses().iter().position(|c| c.len() != 3) {
        Some(i) => Err(Error::shape(format!(
            "clause {i} has {} terms; exactly 3 required",
            poly.clause(i).len()
        ))),
        None => Ok(()),
    }
}

/// Builder whose table starts with `poly`'s variables, so they keep their ids
/// and precede every gadget variable inside a term.
fn seeded_builder(poly: &FactoredPolynomial) -> PolyBuilder {
    let mut b = PolyBuilder::new();
    for name in poly.vars().names() {
        b.var(name);
    }
    b
}

fn transfer(b: &mut PolyBuilder, poly: &FactoredPolynomial, mono: &Monomial) -> Monomial {
    Monomial::from_pairs(
        mono.iter()
            .map(|(v, e)| (b.var(poly.var_name(v)), e))
            .collect::<Vec<_>>(),
    )
}

/// Replaces each clause `(T1 + T2 + T3)` with the two-term clauses
/// `(T1*u + v)(T2*u + w)(T3*u + z)` and the back clause `(v + w + z)`,
/// giving a split polynomial whose front has two terms per clause and whose
/// back is ΠΣ. The input has a multilinear monomial iff the output does.
///
/// Gadget `i` (1-based) uses `u{i}`, `v{i}`, `w{i}`, `z{i}`, prefixed to
/// avoid existing names.
pub fn threeterm_to_product(poly: &FactoredPolynomial) -> Result<FactoredPolynomial> {
    require_three_terms(poly)?;
    let prefix = fresh_prefix(poly, &['u', 'v', 'w', 'z']);
    let mut b = seeded_builder(poly);
    let mut backs: Vec<[VarId; 3]> = Vec::with_capacity(poly.num_clauses());
    for (i, clause) in poly.clauses().iter().enumerate() {
        let i = i + 1;
        let mut u = None;
        let mut tails = [VarId(0); 3];
        for (j, (term, letter)) in clause.monomials().zip(['v', 'w', 'z']).enumerate() {
            let head = transfer(&mut b, poly, term);
            let u = *u.get_or_insert_with(|| b.var(&format!("{prefix}u{i}")));
            tails[j] = b.var(&format!("{prefix}{letter}{i}"));
            b.push_clause(vec![head.mul(&Monomial::var(u)), Monomial::var(tails[j])]);
        }
        backs.push(tails);
    }
    b.mark_split();
    for tails in backs {
        b.push_clause(tails.iter().map(|&v| Monomial::var(v)).collect());
    }
    Ok(b.build())
}

/// Replaces each clause `(T1 + T2 + T3)` with
/// `(T1²u² + v)(T2²u² + v)(T3²u² + v)`. The input has a multilinear monomial
/// iff the output has a 3-monomial.
///
/// Requires exactly three terms per clause, each multilinear with at most two
/// variables. Gadget `i` uses `u{i}`, `v{i}` as for [`threeterm_to_product`].
pub fn mlm_to_3monomial(poly: &FactoredPolynomial) -> Result<FactoredPolynomial> {
    require_three_terms(poly)?;
    for (i, clause) in poly.clauses().iter().enumerate() {
        if let Some(t) = clause.monomials().position(|m| !m.is_multilinear() || m.num_vars() > 2) {
            return Err(Error::shape(format!(
                "clause {i} term {t} must be multilinear with at most 2 variables"
            )));
        }
    }
    let prefix = fresh_prefix(poly, &['u', 'v']);
    let mut b = seeded_builder(poly);
    for (i, clause) in poly.clauses().iter().enumerate() {
        let i = i + 1;
        let mut uv = None;
        let mut gadget = Vec::with_capacity(3);
        for term in clause.monomials() {
            let head = transfer(&mut b, poly, term).pow(2);
            let (u, v) = *uv.get_or_insert_with(|| {
                let u = b.var(&format!("{prefix}u{i}"));
                (u, b.var(&format!("{prefix}v{i}")))
            });
            gadget.push(vec![head.mul(&Monomial::var(u).pow(2)), Monomial::var(v)]);
        }
        for c in gadget {
            b.push_clause(c);
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_polynomial, Family, GenSpec, XorShift64Star};
    use crate::oracle::{oracle_find, OracleBudget};
    use crate::textio::{parse_polynomial, render_polynomial};

    fn p(s: &str) -> FactoredPolynomial {
        parse_polynomial(s).unwrap()
    }

    type Named = (Vec<Vec<Vec<(String, u32)>>>, Option<usize>);

    /// Clause structure by variable name, independent of id order.
    fn named(poly: &FactoredPolynomial) -> Named {
        let clauses = poly
            .clauses()
            .iter()
            .map(|c| {
                c.monomials()
                    .map(|m| {
                        let mut t: Vec<_> = m.iter().map(|(v, e)| (poly.var_name(v).to_string(), e)).collect();
                        t.sort();
                        t
                    })
                    .collect()
            })
            .collect();
        (clauses, poly.split())
    }

    #[test]
    fn product_gadget_text() {
        let out = threeterm_to_product(&p("(x1 + x2 + x3)")).unwrap();
        assert_eq!(render_polynomial(&out), "(x1*u1+v1)(x2*u1+w1)(x3*u1+z1) ; (v1+w1+z1)");
        assert_eq!(named(&parse_polynomial(&render_polynomial(&out)).unwrap()), named(&out));
        assert_eq!(out.split(), Some(3));
        assert_eq!(out.vars().names()[..3], ["x1", "x2", "x3"]);
    }

    #[test]
    fn three_monomial_gadget_text() {
        let out = mlm_to_3monomial(&p("(a + b*c + 1)")).unwrap();
        assert_eq!(render_polynomial(&out), "(a^2*u1^2+v1)(b^2*c^2*u1^2+v1)(u1^2+v1)");
        assert_eq!(named(&parse_polynomial(&render_polynomial(&out)).unwrap()), named(&out));
    }

    #[test]
    fn names_avoid_collisions() {
        let out = threeterm_to_product(&p("(u1 + x + y)")).unwrap();
        assert_eq!(
            render_polynomial(&out),
            "(u1*g_u1+g_v1)(x*g_u1+g_w1)(y*g_u1+g_z1) ; (g_v1+g_w1+g_z1)"
        );
        let out = mlm_to_3monomial(&p("(v1 + g_u1 + y)")).unwrap();
        assert!(render_polynomial(&out).contains("gg_u1"));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(threeterm_to_product(&p("(a + b)")), Err(Error::Shape(_))));
        assert!(matches!(mlm_to_3monomial(&p("(a + b + c*d*e)")), Err(Error::Shape(_))));
        assert!(matches!(mlm_to_3monomial(&p("(a + b + c^2)")), Err(Error::Shape(_))));
        assert!(threeterm_to_product(&FactoredPolynomial::one()).unwrap().num_clauses() == 0);
    }

    #[test]
    fn gadgets_preserve_answers() {
        let mut rng = XorShift64Star::new(21);
        let budget = OracleBudget::unlimited();
        for i in 0..150 {
            let spec = GenSpec {
                family: Family::ThreeTerm,
                m: 1 + i % 4,
                t: 2,
                n: 3 + i % 5,
                ..GenSpec::default()
            };
            let poly = random_polynomial(&spec, &mut rng);
            let want = oracle_find(&poly, 2, budget).unwrap().is_some();
            let prod = threeterm_to_product(&poly).unwrap();
            assert_eq!(
                oracle_find(&prod, 2, budget).unwrap().is_some(),
                want,
                "{}",
                render_polynomial(&poly)
            );
            if poly
                .clauses()
                .iter()
                .flat_map(|c| c.monomials())
                .all(|m| m.is_multilinear())
            {
                let cm = mlm_to_3monomial(&poly).unwrap();
                assert_eq!(
                    oracle_find(&cm, 3, budget).unwrap().is_some(),
                    want,
                    "{}",
                    render_polynomial(&poly)
                );
            }
        }
    }
}
