//! Reductions into multilinear and c-monomial testing.

mod gadgets;
mod kpath;
mod sat3;

pub use gadgets::{mlm_to_3monomial, threeterm_to_product};
pub use kpath::{find_kpath, kpath_test, KpathConfig};
pub use sat3::{
    decode_assignment, is_normalized, normalize_3sat, normalize_3sat_traced, sat3_to_poly, Normalized, VarMap,
};
