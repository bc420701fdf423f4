//! Polynomial intermediate representation.
//!
//! A [`FactoredPolynomial`] is an ordered product of clauses, each clause an
//! ordered sum of terms, each term a monomial with implicit coefficient 1.
//! Nothing here is ever expanded; the sum-product expansion is only ever
//! walked implicitly, one term choice per clause, through a [`Witness`].

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{check_c, Error, Result};

/// Dense index into a polynomial's variable name table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VarId(pub u32);

impl VarId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Product of variable powers. Stored as `(var, exponent)` pairs sorted by
/// variable with every exponent positive; the empty monomial is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables multiply and
    /// zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        exps.dedup_by(|later, kept| {
            if later.0 == kept.0 {
                kept.1 = kept.1.saturating_add(later.1);
                true
            } else {
                false
            }
        });
        Monomial { exps }
    }

    pub fn from_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |i| self.exps[i].1)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    /// Number of distinct variables.
    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn max_exponent(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    /// True iff every exponent is strictly below `c`. Rejects `c < 2`.
    pub fn is_c_monomial(&self, c: u32) -> Result<bool> {
        check_c(c)?;
        Ok(self.exps.iter().all(|&(_, e)| e < c))
    }

    /// True iff the two monomials have a variable in common.
    pub fn shares_variable_with(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Exponent-wise product.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    exps.push((a.0, a.1.saturating_add(b.1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    /// Raises every exponent to the given power.
    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e.saturating_mul(k))).collect(),
        }
    }
}

pub fn is_multilinear(mono: &Monomial) -> bool {
    mono.is_multilinear()
}

pub fn is_c_monomial(mono: &Monomial, c: u32) -> Result<bool> {
    mono.is_c_monomial(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    /// Ordinal within the owning clause.
    pub position: usize,
}

impl Term {
    pub fn degree(&self) -> u64 {
        self.monomial.degree()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Clause {
    terms: Vec<Term>,
}

impl Clause {
    pub fn new<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        Clause {
            terms: monomials
                .into_iter()
                .enumerate()
                .map(|(position, monomial)| Term { monomial, position })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: usize) -> &Monomial {
        &self.terms[i].monomial
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter().map(|t| &t.monomial)
    }
}

/// Interned variable names; ids are dense and assigned in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, VarId>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> VarId {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = VarId(u32::try_from(self.names.len()).expect("too many variables"));
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), v);
        v
    }

    pub fn get(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Product of clauses, optionally split into a front factor `[0, split)` and
/// a back factor `[split, m)`. Immutable once built.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredPolynomial {
    vars: VarTable,
    clauses: Vec<Clause>,
    split: Option<usize>,
}

impl FactoredPolynomial {
    pub fn new(vars: VarTable, clauses: Vec<Clause>, split: Option<usize>) -> Result<Self> {
        if let Some(k) = split {
            if k > clauses.len() {
                return Err(Error::invalid_argument(format!(
                    "split index {k} exceeds clause count {}",
                    clauses.len()
                )));
            }
        }
        let n = vars.len();
        for clause in &clauses {
            for mono in clause.monomials() {
                if let Some(v) = mono.vars().find(|v| v.index() >= n) {
                    return Err(Error::invalid_argument(format!("variable {v} not in name table")));
                }
            }
        }
        Ok(FactoredPolynomial { vars, clauses, split })
    }

    /// The empty product, i.e. the constant 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn var_name(&self, v: VarId) -> &str {
        self.vars.name(v)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, i: usize) -> &Clause {
        &self.clauses[i]
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn split(&self) -> Option<usize> {
        self.split
    }

    pub fn with_split(mut self, split: Option<usize>) -> Result<Self> {
        if let Some(k) = split {
            if k > self.clauses.len() {
                return Err(Error::invalid_argument(format!(
                    "split index {k} exceeds clause count {}",
                    self.clauses.len()
                )));
            }
        }
        self.split = split;
        Ok(self)
    }

    /// Number of entries in the name table.
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// True iff some clause has no terms, making the whole product zero.
    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Number of selections in the sum-product expansion, saturating.
    pub fn expansion_size(&self) -> u128 {
        self.clauses
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// The two factors of a split polynomial. Both share this polynomial's
    /// variable table, so variable ids stay comparable across them.
    pub fn factors(&self) -> Option<(FactoredPolynomial, FactoredPolynomial)> {
        let k = self.split?;
        let front = FactoredPolynomial {
            vars: self.vars.clone(),
            clauses: self.clauses[..k].to_vec(),
            split: None,
        };
        let back = FactoredPolynomial {
            vars: self.vars.clone(),
            clauses: self.clauses[k..].to_vec(),
            split: None,
        };
        Some((front, back))
    }

    /// Concatenates two polynomials into one split at `front.num_clauses()`.
    /// Variables are identified by name.
    pub fn product(front: &FactoredPolynomial, back: &FactoredPolynomial) -> FactoredPolynomial {
        let mut vars = front.vars.clone();
        let remap: Vec<VarId> = back.vars.names().iter().map(|n| vars.intern(n)).collect();
        let mut clauses = front.clauses.clone();
        clauses.extend(back.clauses.iter().map(|c| {
            Clause::new(
                c.monomials()
                    .map(|m| Monomial::from_pairs(m.iter().map(|(v, e)| (remap[v.index()], e)))),
            )
        }));
        FactoredPolynomial {
            vars,
            clauses,
            split: Some(front.clauses.len()),
        }
    }

    pub fn classify(&self) -> ShapeDescriptor {
        classify(self)
    }
}

/// Incrementally builds a polynomial, interning variable names on first use.
#[derive(Debug, Default)]
pub struct PolyBuilder {
    vars: VarTable,
    clauses: Vec<Clause>,
    split: Option<usize>,
}

impl PolyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(&mut self, name: &str) -> VarId {
        self.vars.intern(name)
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn push_clause(&mut self, terms: Vec<Monomial>) {
        self.clauses.push(Clause::new(terms));
    }

    /// Marks the current clause count as the split point.
    pub fn mark_split(&mut self) {
        self.split = Some(self.clauses.len());
    }

    pub fn build(self) -> FactoredPolynomial {
        FactoredPolynomial {
            vars: self.vars,
            clauses: self.clauses,
            split: self.split,
        }
    }
}

/// One term index per clause, in clause order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub choices: Vec<usize>,
}

impl Witness {
    pub fn new(choices: Vec<usize>) -> Self {
        Witness { choices }
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn validate(&self, poly: &FactoredPolynomial) -> Result<()> {
        if self.choices.len() != poly.num_clauses() {
            return Err(Error::invalid_witness(format!(
                "witness has {} choices for {} clauses",
                self.choices.len(),
                poly.num_clauses()
            )));
        }
        for (i, (&choice, clause)) in self.choices.iter().zip(poly.clauses()).enumerate() {
            if choice >= clause.len() {
                return Err(Error::invalid_witness(format!(
                    "clause {i} has {} terms, choice {choice} out of range",
                    clause.len()
                )));
            }
        }
        Ok(())
    }
}

/// Product of the terms a witness selects.
pub fn witness_monomial(poly: &FactoredPolynomial, w: &Witness) -> Result<Monomial> {
    w.validate(poly)?;
    Ok(Monomial::from_pairs(
        w.choices
            .iter()
            .zip(poly.clauses())
            .flat_map(|(&i, clause)| clause.term(i).iter()),
    ))
}

/// Structural parameters of a polynomial (clause count `m`, max clause width
/// `s`, max term degree `t`, distinct variable count `n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeDescriptor {
    pub m: usize,
    pub s: usize,
    pub t: u64,
    pub n: usize,
    pub is_pi_sigma: bool,
    pub is_two_term: bool,
    /// Largest number of distinct variables in any term; absent when there are no terms.
    pub uniform_term_vars: Option<usize>,
    /// Shapes of the front and back factor when the polynomial is split.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Box<(ShapeDescriptor, ShapeDescriptor)>>,
}

fn describe(clauses: &[Clause]) -> ShapeDescriptor {
    let m = clauses.len();
    let s = clauses.iter().map(Clause::len).max().unwrap_or(0);
    let t = clauses
        .iter()
        .flat_map(Clause::monomials)
        .map(Monomial::degree)
        .max()
        .unwrap_or(0);
    let mut seen: Vec<VarId> = clauses
        .iter()
        .flat_map(Clause::monomials)
        .flat_map(|m| m.vars())
        .collect();
    seen.sort_unstable();
    seen.dedup();
    let uniform_term_vars = clauses.iter().flat_map(Clause::monomials).map(Monomial::num_vars).max();
    ShapeDescriptor {
        m,
        s,
        t,
        n: seen.len(),
        is_pi_sigma: t == 1,
        is_two_term: s <= 2,
        uniform_term_vars,
        factors: None,
    }
}

pub fn classify(poly: &FactoredPolynomial) -> ShapeDescriptor {
    let mut shape = describe(&poly.clauses);
    if let Some(k) = poly.split {
        shape.factors = Some(Box::new((describe(&poly.clauses[..k]), describe(&poly.clauses[k..]))));
    }
    shape
}

/// True iff every term has degree at most one, i.e. is a single variable or
/// the constant 1.
pub(crate) fn all_terms_linear(clauses: &[Clause]) -> bool {
    clauses.iter().flat_map(Clause::monomials).all(|m| m.degree() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_polynomial;

    fn p(s: &str) -> FactoredPolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        let s = classify(&p("(x1 + x2*x3)(x2 + x4)"));
        assert_eq!((s.m, s.s, s.t, s.n), (2, 2, 2, 4));
        assert!(!s.is_pi_sigma);
        assert!(s.is_two_term);
        assert_eq!(s.uniform_term_vars, Some(2));

        let s = classify(&p("(x1 + x2)(x3)"));
        assert_eq!((s.m, s.s, s.t), (2, 2, 1));
        assert!(s.is_pi_sigma);

        let s = classify(&p("(x1^2 + x2)"));
        assert_eq!((s.m, s.s, s.t), (1, 2, 2));
        assert_eq!(s.uniform_term_vars, Some(1));
    }

    #[test]
    fn classify_split_factors() {
        let s = classify(&p("(x1*x2 + x3) ; (x3 + x4)(x5)"));
        let (front, back) = *s.factors.unwrap();
        assert_eq!((front.m, front.t), (1, 2));
        assert_eq!((back.m, back.s, back.t), (2, 2, 1));
        assert!(back.is_pi_sigma);
    }

    #[test]
    fn classify_empty() {
        let s = classify(&FactoredPolynomial::one());
        assert_eq!((s.m, s.s, s.t, s.n), (0, 0, 0, 0));
        assert_eq!(s.uniform_term_vars, None);
    }

    #[test]
    fn multilinear_and_c_monomial() {
        let (a, b) = (VarId(0), VarId(1));
        assert!(Monomial::from_vars([a, b, VarId(2)]).is_multilinear());
        let sq = Monomial::from_pairs([(a, 2), (b, 1)]);
        assert!(!sq.is_multilinear());
        assert!(Monomial::one().is_multilinear());
        assert!(sq.is_c_monomial(3).unwrap());
        assert!(!Monomial::from_pairs([(a, 3)]).is_c_monomial(3).unwrap());
        assert!(Monomial::from_vars([a, b]).is_c_monomial(2).unwrap());
        assert!(is_c_monomial(&sq, 1).is_err());
        assert!(is_c_monomial(&sq, 0).is_err());
    }

    #[test]
    fn from_pairs_merges_and_drops_zero() {
        let m = Monomial::from_pairs([(VarId(2), 1), (VarId(0), 0), (VarId(2), 2), (VarId(1), 1)]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![(VarId(1), 1), (VarId(2), 3)]);
        assert_eq!(m.degree(), 4);
        assert_eq!(m.exponent(VarId(0)), 0);
    }

    #[test]
    fn witness_monomial_examples() {
        let poly = p("(x1 + x2*x3)(x2 + x4)");
        let v = |n: &str| poly.vars().get(n).unwrap();
        let got = witness_monomial(&poly, &Witness::new(vec![1, 1])).unwrap();
        assert_eq!(got, Monomial::from_vars([v("x2"), v("x3"), v("x4")]));
        let got = witness_monomial(&poly, &Witness::new(vec![0, 0])).unwrap();
        assert_eq!(got, Monomial::from_vars([v("x1"), v("x2")]));
        let got = witness_monomial(&poly, &Witness::new(vec![1, 0])).unwrap();
        assert_eq!(got, Monomial::from_pairs([(v("x2"), 2), (v("x3"), 1)]));
    }

    #[test]
    fn witness_out_of_range() {
        let poly = p("(x1 + x2*x3)(x2 + x4)");
        assert!(matches!(
            witness_monomial(&poly, &Witness::new(vec![2, 0])),
            Err(Error::InvalidWitness(_))
        ));
        assert!(matches!(
            witness_monomial(&poly, &Witness::new(vec![0])),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn empty_product_is_one() {
        let poly = FactoredPolynomial::one();
        let m = witness_monomial(&poly, &Witness::default()).unwrap();
        assert!(m.is_constant() && m.is_multilinear());
    }

    #[test]
    fn product_merges_names() {
        let a = p("(x1 + x2)");
        let b = p("(x3)(x1)");
        let prod = FactoredPolynomial::product(&a, &b);
        assert_eq!(prod.split(), Some(1));
        assert_eq!(prod.num_vars(), 3);
        assert_eq!(prod.clause(2).term(0), prod.clause(0).term(0));
    }

    #[test]
    fn split_out_of_range_rejected() {
        assert!(p("(x1)").with_split(Some(2)).is_err());
        assert!(p("(x1)").with_split(Some(1)).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mono() -> impl Strategy<Value = Monomial> {
            prop::collection::vec((0u32..6, 1u32..4), 0..5)
                .prop_map(|v| Monomial::from_pairs(v.into_iter().map(|(a, e)| (VarId(a), e))))
        }

        proptest! {
            #[test]
            fn two_monomial_iff_multilinear(m in mono()) {
                prop_assert_eq!(m.is_c_monomial(2).unwrap(), m.is_multilinear());
            }

            #[test]
            fn product_degree_adds(a in mono(), b in mono()) {
                prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
                prop_assert_eq!(a.mul(&b), b.mul(&a));
            }

            #[test]
            fn multilinear_product_iff_disjoint(a in mono(), b in mono()) {
                let expect = a.is_multilinear() && b.is_multilinear() && !a.shares_variable_with(&b);
                prop_assert_eq!(a.mul(&b).is_multilinear(), expect);
            }
        }
    }
}
