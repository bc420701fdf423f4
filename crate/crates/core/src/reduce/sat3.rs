//! 3-CNF to two-variable-term polynomial, and back to an assignment.

use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, Monomial, PolyBuilder, VarId, Witness};
use crate::textio::CnfFormula;

/// Normalised formula plus, per normalised variable, the original variable
/// it stands for and whether its polarity was flipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub formula: CnfFormula,
    pub origin: Vec<(u32, bool)>,
    original_vars: u32,
}

impl Normalized {
    /// Assignment to the original variables from one of the normalised formula.
    pub fn lift_assignment(&self, assignment: &[bool]) -> Vec<bool> {
        (0..self.original_vars as usize)
            .map(|i| assignment.get(i).copied().unwrap_or(false) ^ self.origin[i].1)
            .collect()
    }
}

fn occurrences(f: &CnfFormula) -> Vec<Vec<(usize, usize)>> {
    let mut occ = vec![Vec::new(); f.num_vars as usize];
    for (c, clause) in f.clauses.iter().enumerate() {
        for (p, &lit) in clause.iter().enumerate() {
            occ[lit.unsigned_abs() as usize - 1].push((c, p));
        }
    }
    occ
}

/// Rewrites `f` so that each variable occurs at most three times, and a
/// variable occurring three times does so positively twice and negatively
/// once. Equisatisfiable with `f`.
pub fn normalize_3sat(f: &CnfFormula) -> CnfFormula {
    normalize_3sat_traced(f).formula
}

/// [`normalize_3sat`] keeping the map back to the original variables.
///
/// A variable with more than three occurrences, or exactly three of one
/// polarity, is split into one copy per occurrence (the first keeps the
/// original number, the rest are appended) tied together by the cycle
/// `(¬c1 ∨ c2)(¬c2 ∨ c3)…(¬ck ∨ c1)`. Each copy then occurs three times.
/// Finally every variable occurring negatively twice and positively once
/// is negated throughout.
pub fn normalize_3sat_traced(f: &CnfFormula) -> Normalized {
    let mut clauses = f.clauses.clone();
    let mut origin: Vec<(u32, bool)> = (1..=f.num_vars).map(|v| (v, false)).collect();
    let mut next_var = f.num_vars;
    let mut cycles = Vec::new();

    for (i, occ) in occurrences(f).into_iter().enumerate() {
        let positives = occ.iter().filter(|&&(c, p)| f.clauses[c][p] > 0).count();
        let split = occ.len() > 3 || (occ.len() == 3 && (positives == 0 || positives == 3));
        if !split {
            continue;
        }
        let var = i as u32 + 1;
        let copies: Vec<u32> = std::iter::once(var)
            .chain((1..occ.len()).map(|_| {
                next_var += 1;
                origin.push((var, false));
                next_var
            }))
            .collect();
        for (&(c, p), &copy) in occ.iter().zip(&copies) {
            let lit = clauses[c][p];
            clauses[c][p] = if lit > 0 { copy as i32 } else { -(copy as i32) };
        }
        for (j, &copy) in copies.iter().enumerate() {
            let next = copies[(j + 1) % copies.len()];
            cycles.push(vec![-(copy as i32), next as i32]);
        }
    }
    clauses.extend(cycles);

    let mut formula = CnfFormula::new(next_var, clauses);
    for (i, occ) in occurrences(&formula).into_iter().enumerate() {
        let negatives = occ.iter().filter(|&&(c, p)| formula.clauses[c][p] < 0).count();
        if occ.len() == 3 && negatives == 2 {
            for (c, p) in occ {
                formula.clauses[c][p] = -formula.clauses[c][p];
            }
            origin[i].1 = !origin[i].1;
        }
    }
    Normalized {
        formula,
        origin,
        original_vars: f.num_vars,
    }
}

/// Link between a formula and its polynomial encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    /// Replacement variables for each literal occurrence, by clause then position.
    pub forward: Vec<Vec<Vec<VarId>>>,
    /// The literal at each occurrence; polynomial clause `j`, term `p` came from it.
    pub literals: Vec<Vec<i32>>,
    /// For each polynomial variable, the formula variable and copy number (1 or 2).
    pub backward: Vec<(u32, u8)>,
    pub num_vars: u32,
}

impl VarMap {
    /// The literal a polynomial term stands for.
    pub fn literal(&self, clause: usize, term: usize) -> i32 {
        self.literals[clause][term]
    }
}

/// Shape check for [`sat3_to_poly`]: at most three occurrences per
/// variable, and three only as two positive and one negative.
pub fn is_normalized(f: &CnfFormula) -> bool {
    occurrences(f).iter().all(|occ| {
        let positives = occ.iter().filter(|&&(c, p)| f.clauses[c][p] > 0).count();
        occ.len() < 3 || (occ.len() == 3 && positives == 2)
    })
}

/// Replaces each literal occurrence by fresh variables `y{i}1`, `y{i}2`:
///
/// * a variable occurring once becomes `y{i}1`;
/// * two occurrences of the same polarity become `y{i}1` then `y{i}2`;
/// * one positive and one negative occurrence both become `y{i}1`;
/// * the pattern x, x, ¬x becomes `y{i}1`, `y{i}2` and `y{i}1*y{i}2`.
///
/// The formula is satisfiable iff the result has a multilinear monomial.
pub fn sat3_to_poly(f: &CnfFormula) -> Result<(FactoredPolynomial, VarMap)> {
    if !is_normalized(f) {
        return Err(Error::shape(
            "formula not normalised: a variable occurs more than three times or three times without the pattern x, x, ¬x",
        ));
    }
    let occ = occurrences(f);
    // Copy numbers (1-based) that each occurrence maps to.
    let mut replacement: Vec<Vec<Vec<u8>>> = f.clauses.iter().map(|c| vec![Vec::new(); c.len()]).collect();
    for list in &occ {
        let positive: Vec<bool> = list.iter().map(|&(c, p)| f.clauses[c][p] > 0).collect();
        let copies: Vec<Vec<u8>> = match positive[..] {
            [] => vec![],
            [_] => vec![vec![1]],
            [a, b] if a == b => vec![vec![1], vec![2]],
            [_, _] => vec![vec![1], vec![1]],
            _ => {
                let mut seen_pos = 0u8;
                positive
                    .iter()
                    .map(|&pos| {
                        if pos {
                            seen_pos += 1;
                            vec![seen_pos]
                        } else {
                            vec![1, 2]
                        }
                    })
                    .collect()
            }
        };
        for (&(c, p), copy) in list.iter().zip(copies) {
            replacement[c][p] = copy;
        }
    }

    let mut builder = PolyBuilder::new();
    let mut backward: Vec<(u32, u8)> = Vec::new();
    let mut forward = Vec::with_capacity(f.clauses.len());
    for (c, clause) in f.clauses.iter().enumerate() {
        let mut terms = Vec::with_capacity(clause.len());
        let mut clause_forward = Vec::with_capacity(clause.len());
        for (p, &lit) in clause.iter().enumerate() {
            let var = lit.unsigned_abs();
            let ids: Vec<VarId> = replacement[c][p]
                .iter()
                .map(|&j| {
                    let before = builder.vars().len();
                    let id = builder.var(&format!("y{var}{j}"));
                    if builder.vars().len() > before {
                        backward.push((var, j));
                    }
                    id
                })
                .collect();
            terms.push(Monomial::from_vars(ids.iter().copied()));
            clause_forward.push(ids);
        }
        builder.push_clause(terms);
        forward.push(clause_forward);
    }
    let map = VarMap {
        forward,
        literals: f.clauses.clone(),
        backward,
        num_vars: f.num_vars,
    };
    Ok((builder.build(), map))
}

/// Sets every literal selected by a multilinear witness true; variables no
/// selected literal mentions default to false.
pub fn decode_assignment(map: &VarMap, w: &Witness) -> Result<Vec<bool>> {
    if w.choices.len() != map.literals.len() {
        return Err(Error::invalid_witness(format!(
            "witness has {} choices for {} clauses",
            w.choices.len(),
            map.literals.len()
        )));
    }
    let mut used = vec![false; map.backward.len()];
    let mut assignment: Vec<Option<bool>> = vec![None; map.num_vars as usize];
    for (c, &choice) in w.choices.iter().enumerate() {
        let Some(&lit) = map.literals[c].get(choice) else {
            return Err(Error::invalid_witness(format!(
                "clause {c}: choice {choice} out of range"
            )));
        };
        for v in &map.forward[c][choice] {
            if std::mem::replace(&mut used[v.index()], true) {
                return Err(Error::invalid_witness(
                    "selected terms do not form a multilinear monomial",
                ));
            }
        }
        let slot = &mut assignment[lit.unsigned_abs() as usize - 1];
        match *slot {
            Some(prev) if prev != (lit > 0) => {
                return Err(Error::invalid_witness(format!(
                    "witness selects both polarities of variable {}",
                    lit.unsigned_abs()
                )))
            }
            _ => *slot = Some(lit > 0),
        }
    }
    Ok(assignment.into_iter().map(|v| v.unwrap_or(false)).collect())
}
