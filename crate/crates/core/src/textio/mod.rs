//! Text formats: the polynomial syntax, DIMACS CNF and edge-list graphs.

mod dimacs;
mod graph;
mod poly_text;

use std::fmt;

pub use dimacs::{parse_dimacs, render_dimacs, CnfFormula};
pub use graph::{parse_graph, render_graph, Graph};
pub use poly_text::{parse_polynomial, render_monomial, render_polynomial, render_witness_terms};

/// Location-annotated parse failure. `line` and `column` are 1-based;
/// `column` counts characters, `offset` counts bytes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(input: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(input.len());
        let mut offset = offset;
        while !input.is_char_boundary(offset) {
            offset -= 1;
        }
        let before = &input[..offset];
        let line = before.bytes().filter(|&b| b == b'\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = input[line_start..offset].chars().count() + 1;
        ParseError {
            offset,
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn position_counts_lines_and_columns() {
        let e = ParseError::at("ab\ncd", 4, "x");
        assert_eq!((e.offset, e.line, e.column), (4, 2, 2));
        let e = ParseError::at("ab", 99, "x");
        assert_eq!((e.offset, e.line, e.column), (2, 1, 3));
    }

    #[test]
    fn position_snaps_to_char_boundary() {
        let e = ParseError::at("é", 1, "x");
        assert_eq!(e.offset, 0);
    }
}
