//! Multilinear and c-monomial detection for polynomials given as products of
//! sums of monomials.

pub mod bench;
pub mod cli;
pub mod clique;
pub mod error;
pub mod gen;
pub mod hybrid;
pub mod matcher;
pub mod oracle;
pub mod poly;
pub mod purger;
pub mod reduce;
pub mod solve;
pub mod textio;

pub use error::{Error, Result};
pub use poly::{
    classify, is_c_monomial, is_multilinear, witness_monomial, Clause, FactoredPolynomial, Monomial, PolyBuilder,
    ShapeDescriptor, Term, VarId, VarTable, Witness,
};
pub use solve::{solve, Algorithm, Solution, SolveConfig};
pub use textio::{parse_polynomial, render_polynomial, ParseError};
