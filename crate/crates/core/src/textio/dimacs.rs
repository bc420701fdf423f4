use std::fmt::Write as _;

use serde::Serialize;

use super::ParseError;

/// CNF formula over variables `1..=num_vars`; literals are signed, positive
/// meaning the variable itself and negative its negation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Vec<i32>>) -> Self {
        CnfFormula { num_vars, clauses }
    }

    /// Evaluates under `assignment[v - 1]` for variable `v`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment
                    .get(lit.unsigned_abs() as usize - 1)
                    .copied()
                    .unwrap_or(false);
                value == (lit > 0)
            })
        })
    }
}

struct Token<'a> {
    text: &'a str,
    offset: usize,
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut current_start = 0usize;
    let mut line_start = 0usize;

    'lines: for line in text.split_inclusive('\n') {
        let offset = line_start;
        line_start += line.len();
        let trimmed = line.trim_start();
        let lead = line.len() - trimmed.len();
        if trimmed.starts_with('c') || trimmed.trim().is_empty() {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::at(text, offset + lead, "duplicate problem line"));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", vars, count] => vars.parse::<u32>().ok().zip(count.parse::<usize>().ok()),
                _ => None,
            };
            match parsed {
                Some(h) if h.0 <= i32::MAX as u32 => header = Some(h),
                _ => {
                    return Err(ParseError::at(
                        text,
                        offset + lead,
                        "malformed problem line, expected 'p cnf <vars> <clauses>'",
                    ))
                }
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::at(
                text,
                offset + lead,
                "expected 'p cnf' problem line before clauses",
            ));
        };
        let mut rest = line;
        let mut base = offset;
        loop {
            let skip = rest.len() - rest.trim_start().len();
            rest = &rest[skip..];
            base += skip;
            if rest.is_empty() {
                break;
            }
            let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let tok = Token {
                text: &rest[..len],
                offset: base,
            };
            rest = &rest[len..];
            base += len;
            if tok.text == "%" {
                break 'lines;
            }
            let lit: i64 = tok
                .text
                .parse()
                .map_err(|_| ParseError::at(text, tok.offset, format!("expected literal, found {:?}", tok.text)))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() > u64::from(num_vars) {
                return Err(ParseError::at(
                    text,
                    tok.offset,
                    format!("literal {lit} out of range for {num_vars} variables"),
                ));
            }
            if current.is_empty() {
                current_start = tok.offset;
            }
            current.push(lit as i32);
        }
    }

    let Some((num_vars, _)) = header else {
        return Err(ParseError::at(text, text.len(), "missing 'p cnf' problem line"));
    };
    if !current.is_empty() {
        return Err(ParseError::at(
            text,
            current_start,
            "clause is missing its terminating 0",
        ));
    }
    Ok(CnfFormula { num_vars, clauses })
}

pub fn render_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for clause in &f.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}
