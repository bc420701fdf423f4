//! Simple k-paths as c-monomials of the walk polynomial.
//!
//! The walk polynomial of a graph sums, over every walk `v1 v2 … vk`, the
//! monomial `x_{v1}^c … x_{vk}^c`. A walk's monomial is a c-monomial exactly
//! when no vertex repeats, so the graph has a simple path on `k` vertices iff
//! the polynomial has a c-monomial. Walks are enumerated depth first and a
//! partial walk is abandoned as soon as a vertex repeats, since no extension
//! of it can produce a c-monomial.

use crate::error::{Error, Result};
use crate::textio::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KpathConfig {
    /// Most partial walks visited before giving up.
    pub max_walks: u64,
}

impl Default for KpathConfig {
    fn default() -> Self {
        KpathConfig { max_walks: 10_000_000 }
    }
}

/// Whether `g` has a simple path on `k` vertices, decided through the walk
/// polynomial with exponent `c`.
pub fn kpath_test(g: &Graph, k: usize, c: u32) -> Result<bool> {
    Ok(find_kpath(g, k, c, &KpathConfig::default())?.is_some())
}

/// A path on `k` distinct vertices (1-based), if one exists.
pub fn find_kpath(g: &Graph, k: usize, c: u32, config: &KpathConfig) -> Result<Option<Vec<u32>>> {
    if k == 0 {
        return Err(Error::invalid_argument("k must be at least 1"));
    }
    if c == 0 {
        return Err(Error::invalid_argument("c must be at least 1"));
    }
    let adj = g.adjacency();
    let n = adj.len();
    if k > n {
        return Ok(None);
    }
    // Exponent of each vertex variable in the current partial walk product.
    let mut exponent = vec![0u32; n];
    let mut walk: Vec<usize> = Vec::with_capacity(k);
    // Next neighbour index to try at each depth.
    let mut cursor: Vec<usize> = Vec::with_capacity(k);
    let mut visited = 0u64;
    let visit = |walks: &mut u64| -> Result<()> {
        *walks += 1;
        if *walks > config.max_walks {
            return Err(Error::BudgetExceeded {
                what: "k-path walks",
                limit: config.max_walks,
            });
        }
        Ok(())
    };

    for start in 0..n {
        visit(&mut visited)?;
        exponent[start] = c;
        walk.push(start);
        cursor.push(0);
        while let Some(&last) = walk.last() {
            if walk.len() == k {
                return Ok(Some(walk.iter().map(|&v| v as u32 + 1).collect()));
            }
            let depth = walk.len() - 1;
            let Some(&next) = adj[last].get(cursor[depth]) else {
                exponent[last] -= c;
                walk.pop();
                cursor.pop();
                continue;
            };
            cursor[depth] += 1;
            if exponent[next] + c > c {
                continue;
            }
            visit(&mut visited)?;
            exponent[next] += c;
            walk.push(next);
            cursor.push(0);
        }
    }
    Ok(None)
}
