//! Multilinear testing for general ΠΣΠ polynomials via the compatibility
//! graph on terms.
//!
//! Two terms from different clauses are joined when they share no variable.
//! A multilinear monomial is exactly a clique with one vertex in every
//! clause group, found here by clause-indexed depth-first search with
//! forward checking over bitsets.

use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, Witness};

type Bits = Vec<u64>;

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn has(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn and_count(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[derive(Clone, Debug)]
pub struct ConflictGraph {
    /// `(clause, term)` for each vertex, in clause then term order.
    vertices: Vec<(usize, usize)>,
    /// Terms dropped up front because they are not multilinear.
    purged: Vec<(usize, usize)>,
    /// Vertex ids per clause.
    groups: Vec<Vec<usize>>,
    group_masks: Vec<Bits>,
    compatible: Vec<Bits>,
}

impl ConflictGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> (usize, usize) {
        self.vertices[v]
    }

    pub fn purged(&self) -> &[(usize, usize)] {
        &self.purged
    }

    pub fn group(&self, clause: usize) -> &[usize] {
        &self.groups[clause]
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        has(&self.compatible[a], b)
    }

    pub fn edge_count(&self) -> usize {
        let twice: u32 = self
            .compatible
            .iter()
            .map(|b| b.iter().map(|w| w.count_ones()).sum::<u32>())
            .sum();
        twice as usize / 2
    }
}

pub fn build_conflict_graph(poly: &FactoredPolynomial) -> ConflictGraph {
    let mut vertices = Vec::new();
    let mut purged = Vec::new();
    let mut groups = vec![Vec::new(); poly.num_clauses()];
    for (i, clause) in poly.clauses().iter().enumerate() {
        for (j, term) in clause.monomials().enumerate() {
            if term.is_multilinear() {
                groups[i].push(vertices.len());
                vertices.push((i, j));
            } else {
                purged.push((i, j));
            }
        }
    }
    let n = vertices.len();
    let w = words(n);
    let mut compatible = vec![vec![0u64; w]; n];
    for a in 0..n {
        let (ca, ta) = vertices[a];
        let ma = poly.clause(ca).term(ta);
        for b in a + 1..n {
            let (cb, tb) = vertices[b];
            if ca != cb && !ma.shares_variable_with(poly.clause(cb).term(tb)) {
                set(&mut compatible[a], b);
                set(&mut compatible[b], a);
            }
        }
    }
    let group_masks = groups
        .iter()
        .map(|g| {
            let mut bits = vec![0u64; w];
            for &v in g {
                set(&mut bits, v);
            }
            bits
        })
        .collect();
    ConflictGraph {
        vertices,
        purged,
        groups,
        group_masks,
        compatible,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueConfig {
    /// Most search nodes (tentative vertex choices) before giving up.
    pub max_nodes: u64,
}

impl Default for CliqueConfig {
    fn default() -> Self {
        CliqueConfig { max_nodes: 100_000_000 }
    }
}

struct Search<'g> {
    graph: &'g ConflictGraph,
    chosen: Vec<Option<usize>>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, alive: &[u64]) -> Result<bool> {
        // Undecided clause with the fewest surviving candidates.
        let mut pick: Option<(usize, u32)> = None;
        for (c, mask) in self.graph.group_masks.iter().enumerate() {
            if self.chosen[c].is_some() {
                continue;
            }
            let count = and_count(alive, mask);
            if count == 0 {
                return Ok(false);
            }
            if pick.is_none_or(|(_, best)| count < best) {
                pick = Some((c, count));
            }
        }
        let Some((clause, _)) = pick else {
            return Ok(true);
        };
        for &v in &self.graph.groups[clause] {
            if !has(alive, v) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded {
                    what: "clique search nodes",
                    limit: self.max_nodes,
                });
            }
            let next: Bits = alive
                .iter()
                .zip(&self.graph.compatible[v])
                .map(|(a, b)| a & b)
                .collect();
            self.chosen[clause] = Some(v);
            if self.run(&next)? {
                return Ok(true);
            }
            self.chosen[clause] = None;
        }
        Ok(false)
    }
}

/// Witness for a multilinear monomial, if one exists, using
/// [`CliqueConfig::default`].
pub fn find_multilinear_clique(poly: &FactoredPolynomial) -> Result<Option<Witness>> {
    find_multilinear_clique_with(poly, &CliqueConfig::default())
}

pub fn find_multilinear_clique_with(poly: &FactoredPolynomial, config: &CliqueConfig) -> Result<Option<Witness>> {
    let graph = build_conflict_graph(poly);
    find_clique_in(&graph, config)
}

/// Searches `graph` for a clique meeting every clause group once.
pub fn find_clique_in(graph: &ConflictGraph, config: &CliqueConfig) -> Result<Option<Witness>> {
    let mut alive = vec![0u64; words(graph.num_vertices())];
    for v in 0..graph.num_vertices() {
        set(&mut alive, v);
    }
    let mut search = Search {
        graph,
        chosen: vec![None; graph.num_groups()],
        nodes: 0,
        max_nodes: config.max_nodes,
    };
    if !search.run(&alive)? {
        return Ok(None);
    }
    Ok(Some(Witness::new(
        search
            .chosen
            .iter()
            .map(|v| graph.vertex(v.expect("every clause chosen")).1)
            .collect(),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::witness_monomial;
    use crate::textio::parse_polynomial;

    fn p(s: &str) -> FactoredPolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn graph_examples() {
        let poly = p("(x1+x2*x3)(x2+x4)");
        let g = build_conflict_graph(&poly);
        assert_eq!(g.num_vertices(), 4);
        // Pairwise disjointness by hand: x1-x2, x1-x4, x2x3-x4 (x2x3-x2 missing).
        assert_eq!(g.edge_count(), 3);
        assert!(!g.are_adjacent(1, 2));
        assert!(g.are_adjacent(1, 3));

        let g = build_conflict_graph(&p("(x1)(x1)"));
        assert_eq!((g.num_vertices(), g.edge_count()), (2, 0));

        let g = build_conflict_graph(&p("(x1*x1 + x2)(x3)"));
        assert_eq!(g.purged(), [(0, 0)]);
        assert_eq!((g.num_vertices(), g.edge_count()), (2, 1));
        assert_eq!(g.group(0), [0]);
    }

    #[test]
    fn no_edges_inside_groups() {
        let g = build_conflict_graph(&p("(a + b + c)(d + e)"));
        assert!(!g.are_adjacent(0, 1));
        assert!(!g.are_adjacent(3, 4));
        assert!(g.are_adjacent(0, 4) && g.are_adjacent(4, 0));
    }

    #[test]
    fn clique_examples() {
        let pf = p("(y11+y21*y22+y31)(y11*y12+y21+y41)(y12+y22+y31)(y42+y51)");
        let w = find_multilinear_clique(&pf).unwrap().unwrap();
        assert!(witness_monomial(&pf, &w).unwrap().is_multilinear());
        let g = build_conflict_graph(&pf);
        let reported = [(0, 2), (1, 0), (2, 1), (3, 0)];
        let ids: Vec<usize> = reported
            .iter()
            .map(|&(c, t)| (0..g.num_vertices()).find(|&v| g.vertex(v) == (c, t)).unwrap())
            .collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                assert!(g.are_adjacent(a, b));
            }
        }

        assert_eq!(find_multilinear_clique(&p("(x1+x2)(x1)(x2)")).unwrap(), None);
        assert_eq!(find_multilinear_clique(&p("(x1*x2)")).unwrap().unwrap().choices, [0]);
    }

    #[test]
    fn trivial_inputs() {
        assert_eq!(
            find_multilinear_clique(&FactoredPolynomial::one()).unwrap(),
            Some(Witness::default())
        );
        assert_eq!(find_multilinear_clique(&p("(x^2)")).unwrap(), None);
        assert_eq!(
            find_multilinear_clique(&p("(1 + x)(x)")).unwrap().unwrap().choices,
            [0, 0]
        );
    }

    #[test]
    fn node_budget() {
        // 12 clauses over 2 variables: no multilinear monomial, wide search.
        let poly = p(&"(a + b + 1)".repeat(12).replace("+ 1", "+ c"));
        let err = find_multilinear_clique_with(&poly, &CliqueConfig { max_nodes: 3 }).unwrap_err();
        assert!(err.is_budget_exceeded());
    }
}
