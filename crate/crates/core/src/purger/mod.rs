//! Multilinear testing for polynomials whose clauses have at most two terms.
//!
//! [`find_multilinear_two_term`] is the purging search: choosing a term
//! purges every term of another clause that shares one of its variables, a
//! clause left with one live term is forced to take it, and a clause left
//! with none is a conflict. [`find_multilinear_two_term_scc`] encodes the
//! same selection problem as 2-SAT and serves as an independent check.

mod twosat;

use std::collections::VecDeque;

pub use twosat::{Lit, TwoSat};

use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, Monomial, Witness};

fn require_two_term(poly: &FactoredPolynomial) -> Result<()> {
    match poly.clauses().iter().position(|c| c.len() > 2) {
        Some(i) => Err(Error::shape(format!(
            "clause {i} has {} terms; at most 2 allowed",
            poly.clause(i).len()
        ))),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Open,
    /// Queued for propagation with the given term.
    Forced(usize),
    Decided(usize),
}

#[derive(Clone, Copy, Debug)]
enum Change {
    Kill(usize),
    Status(usize, ClauseStatus),
}

/// Search state: per-clause status, per-term liveness and an undo trail.
///
/// Terms are numbered globally; term `first_term[i] + j` is term `j` of
/// clause `i`.
#[derive(Debug)]
pub struct ChoiceState<'p> {
    poly: &'p FactoredPolynomial,
    first_term: Vec<usize>,
    term_clause: Vec<usize>,
    occurrences: Vec<Vec<usize>>,
    alive: Vec<bool>,
    alive_count: Vec<u8>,
    status: Vec<ClauseStatus>,
    trail: Vec<Change>,
    queue: VecDeque<usize>,
}

impl<'p> ChoiceState<'p> {
    fn new(poly: &'p FactoredPolynomial) -> Self {
        let m = poly.num_clauses();
        let mut first_term = Vec::with_capacity(m + 1);
        let mut term_clause = Vec::new();
        let mut occurrences = vec![Vec::new(); poly.num_vars()];
        let mut alive = Vec::new();
        let mut alive_count = vec![0u8; m];
        for (i, clause) in poly.clauses().iter().enumerate() {
            first_term.push(term_clause.len());
            for mono in clause.monomials() {
                let id = term_clause.len();
                term_clause.push(i);
                // Pre-purge: a non-multilinear term is never usable.
                let usable = mono.is_multilinear();
                alive.push(usable);
                if usable {
                    alive_count[i] += 1;
                    for v in mono.vars() {
                        occurrences[v.index()].push(id);
                    }
                }
            }
        }
        first_term.push(term_clause.len());
        ChoiceState {
            poly,
            first_term,
            term_clause,
            occurrences,
            alive,
            alive_count,
            status: vec![ClauseStatus::Open; m],
            trail: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn terms_of(&self, clause: usize) -> std::ops::Range<usize> {
        self.first_term[clause]..self.first_term[clause + 1]
    }

    fn set_status(&mut self, clause: usize, status: ClauseStatus) {
        self.trail.push(Change::Status(clause, self.status[clause]));
        self.status[clause] = status;
    }

    fn kill(&mut self, term: usize) {
        self.alive[term] = false;
        self.alive_count[self.term_clause[term]] -= 1;
        self.trail.push(Change::Kill(term));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("non-empty trail") {
                Change::Kill(term) => {
                    self.alive[term] = true;
                    self.alive_count[self.term_clause[term]] += 1;
                }
                Change::Status(clause, old) => self.status[clause] = old,
            }
        }
        self.queue.clear();
    }

    fn live_term(&self, clause: usize) -> usize {
        self.terms_of(clause)
            .find(|&t| self.alive[t])
            .expect("clause has a live term")
    }

    /// Commits `term` for its clause, purging the clause's other term.
    fn force(&mut self, term: usize) {
        let clause = self.term_clause[term];
        for other in self.terms_of(clause) {
            if other != term && self.alive[other] {
                self.kill(other);
            }
        }
        self.set_status(clause, ClauseStatus::Forced(term));
        self.queue.push_back(clause);
    }

    /// Drains the queue; false on conflict (some clause lost both terms).
    fn propagate(&mut self) -> bool {
        while let Some(clause) = self.queue.pop_front() {
            let ClauseStatus::Forced(term) = self.status[clause] else {
                unreachable!("queued clause is forced");
            };
            if !self.alive[term] {
                return false;
            }
            self.set_status(clause, ClauseStatus::Decided(term));
            let poly = self.poly;
            let local = term - self.first_term[clause];
            for v in poly.clause(clause).term(local).vars() {
                for k in 0..self.occurrences[v.index()].len() {
                    let other = self.occurrences[v.index()][k];
                    let other_clause = self.term_clause[other];
                    if other_clause == clause
                        || !self.alive[other]
                        || matches!(self.status[other_clause], ClauseStatus::Decided(_))
                    {
                        continue;
                    }
                    self.kill(other);
                    match (self.alive_count[other_clause], self.status[other_clause]) {
                        (0, _) => return false,
                        (1, ClauseStatus::Open) => {
                            let remaining = self.live_term(other_clause);
                            self.force(remaining);
                        }
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn witness(&self) -> Witness {
        Witness::new(
            self.status
                .iter()
                .enumerate()
                .map(|(i, s)| match *s {
                    ClauseStatus::Decided(t) => t - self.first_term[i],
                    other => unreachable!("clause {i} left {other:?}"),
                })
                .collect(),
        )
    }

    pub fn status(&self, clause: usize) -> ClauseStatus {
        self.status[clause]
    }
}

/// Purging search for a multilinear monomial in a polynomial with at most
/// two terms per clause.
///
/// One-term clauses (and clauses whose other term is not multilinear) are
/// forced up front. Then, repeatedly, the lowest-index open clause takes its
/// first term and the consequences are propagated; on conflict everything
/// since that decision is undone and the clause takes its second term
/// instead, and if that conflicts too there is no multilinear monomial.
/// After a conflict-free wave every remaining open clause is untouched by the
/// decided ones, so the search simply continues on that independent rest.
pub fn find_multilinear_two_term(poly: &FactoredPolynomial) -> Result<Option<Witness>> {
    require_two_term(poly)?;
    Ok(search(poly, &Monomial::one()))
}

/// As [`find_multilinear_two_term`] on `poly` times the one-term clause
/// `(fixed)`, which must be multilinear. The returned witness covers the
/// clauses of `poly` only.
pub(crate) fn find_multilinear_two_term_with_fixed(
    poly: &FactoredPolynomial,
    fixed: &Monomial,
) -> Result<Option<Witness>> {
    require_two_term(poly)?;
    debug_assert!(fixed.is_multilinear());
    Ok(search(poly, fixed))
}

fn search(poly: &FactoredPolynomial, fixed: &Monomial) -> Option<Witness> {
    let mut state = ChoiceState::new(poly);
    let m = poly.num_clauses();

    // The fixed clause is decided before anything else: purge its conflicts.
    for v in fixed.vars() {
        for k in 0..state.occurrences[v.index()].len() {
            let t = state.occurrences[v.index()][k];
            if state.alive[t] {
                state.kill(t);
            }
        }
    }

    for i in 0..m {
        match state.alive_count[i] {
            0 => return None,
            1 => {
                let t = state.live_term(i);
                state.force(t);
            }
            _ => {}
        }
    }
    if !state.propagate() {
        return None;
    }

    for seed in 0..m {
        if state.status[seed] != ClauseStatus::Open {
            continue;
        }
        let mark = state.trail.len();
        let [first, second] = [state.first_term[seed], state.first_term[seed] + 1];
        state.force(first);
        if state.propagate() {
            continue;
        }
        state.undo_to(mark);
        state.force(second);
        if !state.propagate() {
            return None;
        }
    }
    Some(state.witness())
}

/// The same decision through 2-SAT: one boolean per clause (true selects
/// term 0), a unit clause excluding each unusable term, and a binary clause
/// `¬(a ∧ b)` for every pair of terms in different clauses sharing a
/// variable.
pub fn find_multilinear_two_term_scc(poly: &FactoredPolynomial) -> Result<Option<Witness>> {
    require_two_term(poly)?;
    let m = poly.num_clauses();
    let selects = |clause: usize, term: usize| Lit {
        var: clause,
        positive: term == 0,
    };
    let mut sat = TwoSat::new(m);
    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); poly.num_vars()];
    for (i, clause) in poly.clauses().iter().enumerate() {
        let usable: Vec<bool> = clause.monomials().map(|t| t.is_multilinear()).collect();
        match usable[..] {
            [] | [false] | [false, false] => return Ok(None),
            [true] | [true, false] => sat.add_unit(selects(i, 0)),
            [false, true] => sat.add_unit(selects(i, 1)),
            _ => {}
        }
        for (j, term) in clause.monomials().enumerate() {
            if usable[j] {
                for v in term.vars() {
                    occurrences[v.index()].push((i, j));
                }
            }
        }
    }
    for occ in &occurrences {
        for (k, &(i, a)) in occ.iter().enumerate() {
            for &(j, b) in &occ[k + 1..] {
                if i != j {
                    sat.add_clause(selects(i, a).negate(), selects(j, b).negate());
                }
            }
        }
    }
    Ok(sat
        .solve()
        .map(|values| Witness::new(values.into_iter().map(|x| usize::from(!x)).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_polynomial, Family, GenSpec, XorShift64Star};
    use crate::oracle::{oracle_find, OracleBudget};
    use crate::poly::witness_monomial;
    use crate::textio::parse_polynomial;

    fn p(s: &str) -> FactoredPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn check_valid(poly: &FactoredPolynomial, w: &Witness) {
        assert!(witness_monomial(poly, w).unwrap().is_multilinear(), "{w:?}");
    }

    #[test]
    fn examples() {
        let poly = p("(x1*x2 + x3)(x2 + x4)");
        let w = find_multilinear_two_term(&poly).unwrap().unwrap();
        assert!(w.choices == [1, 0] || w.choices == [0, 1]);
        check_valid(&poly, &w);

        let poly = p("(x1*x2 + x3*x4)(x1*x3 + x2*x4)(x1*x4 + x2*x3)");
        assert_eq!(find_multilinear_two_term(&poly).unwrap(), None);
        assert_eq!(find_multilinear_two_term_scc(&poly).unwrap(), None);

        let w = find_multilinear_two_term(&p("(x1*x1 + x2)")).unwrap().unwrap();
        assert_eq!(w.choices, [1]);
    }

    #[test]
    fn scc_examples() {
        assert!(find_multilinear_two_term_scc(&p("(x1*x2 + x3)(x2 + x4)"))
            .unwrap()
            .is_some());
        assert_eq!(find_multilinear_two_term_scc(&p("(x1)(x1)")).unwrap(), None);
        let poly = p("(x1*x4 + x2)(x2 + x3)(x3 + x4)");
        let a = find_multilinear_two_term(&poly).unwrap();
        let b = find_multilinear_two_term_scc(&poly).unwrap();
        let oracle = oracle_find(&poly, 2, OracleBudget::default()).unwrap();
        assert_eq!(a.is_some(), oracle.is_some());
        assert_eq!(b.is_some(), oracle.is_some());
        check_valid(&poly, &a.unwrap());
        check_valid(&poly, &b.unwrap());
    }

    #[test]
    fn shape_error() {
        assert!(matches!(find_multilinear_two_term(&p("(a+b+c)")), Err(Error::Shape(_))));
        assert!(matches!(
            find_multilinear_two_term_scc(&p("(a+b+c)")),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn trivial_inputs() {
        let one = FactoredPolynomial::one();
        assert_eq!(find_multilinear_two_term(&one).unwrap(), Some(Witness::default()));
        assert_eq!(find_multilinear_two_term_scc(&one).unwrap(), Some(Witness::default()));
        assert_eq!(find_multilinear_two_term(&p("(x^2)")).unwrap(), None);
        assert_eq!(find_multilinear_two_term_scc(&p("(x^2 + y^3)")).unwrap(), None);
        let w = find_multilinear_two_term(&p("(1 + x)(x)")).unwrap().unwrap();
        assert_eq!(w.choices, [0, 0]);
    }

    #[test]
    fn same_clause_terms_may_overlap() {
        let poly = p("(x1*x2 + x1*x3)(x3)");
        assert_eq!(find_multilinear_two_term(&poly).unwrap().unwrap().choices, [0, 0]);
    }

    #[test]
    fn conflict_needs_second_seed_term() {
        // Taking a in the seed clause forces d in both later clauses.
        let poly = p("(a + b)(a*c + d)(a*e + d)");
        let w = find_multilinear_two_term(&poly).unwrap().unwrap();
        assert_eq!(w.choices[0], 1);
        check_valid(&poly, &w);
    }

    #[test]
    fn deterministic() {
        let poly = p("(a + b)(b + c)(c + d)(d + e)");
        let w1 = find_multilinear_two_term(&poly).unwrap();
        let w2 = find_multilinear_two_term(&poly).unwrap();
        assert_eq!(w1, w2);
    }

    #[test]
    fn oracle_equivalence_small() {
        let mut rng = XorShift64Star::new(21);
        for i in 0..1500 {
            let spec = GenSpec {
                family: Family::TwoTerm,
                m: 1 + i % 10,
                t: 1 + i % 3,
                n: 2 + i % 11,
                ragged: i % 4 == 0,
                ..GenSpec::default()
            };
            let poly = random_polynomial(&spec, &mut rng);
            let oracle = oracle_find(&poly, 2, OracleBudget::default()).unwrap();
            let purge = find_multilinear_two_term(&poly).unwrap();
            let scc = find_multilinear_two_term_scc(&poly).unwrap();
            assert_eq!(purge.is_some(), oracle.is_some(), "{poly:?}");
            assert_eq!(scc.is_some(), oracle.is_some(), "{poly:?}");
            for w in purge.iter().chain(scc.iter()) {
                check_valid(&poly, w);
            }
        }
    }
}
