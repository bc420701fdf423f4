//! Multilinear and c-monomial testing for ΠΣ polynomials by bipartite
//! maximum matching.
//!
//! Clauses form the left side, variables (or `c - 1` copies of each
//! variable) the right side, and a clause is joined to every variable it
//! contains. A c-monomial exists iff every clause can be matched.

use std::collections::VecDeque;

use crate::error::{check_c, Error, Result};
use crate::poly::{all_terms_linear, FactoredPolynomial, Witness};

const NIL: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Adjacency lists are deduplicated, keeping first-occurrence order.
    pub fn new(right_count: usize, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let mut adjacency = adjacency;
        let mut seen = vec![false; right_count];
        for list in &mut adjacency {
            if let Some(&bad) = list.iter().find(|&&r| r >= right_count) {
                return Err(Error::invalid_argument(format!(
                    "right vertex {bad} out of range {right_count}"
                )));
            }
            list.retain(|&r| !std::mem::replace(&mut seen[r], true));
            for &r in list.iter() {
                seen[r] = false;
            }
        }
        Ok(BipartiteGraph {
            left_count: adjacency.len(),
            right_count,
            adjacency,
        })
    }

    pub fn from_edges(left_count: usize, right_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); left_count];
        for &(l, r) in edges {
            if l >= left_count {
                return Err(Error::invalid_argument(format!("left vertex {l} out of range")));
            }
            adjacency[l].push(r);
        }
        Self::new(right_count, adjacency)
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adjacency[left]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pair_for_left: Vec<Option<usize>>,
    pub size: usize,
}

/// Hopcroft–Karp: BFS layering from free left vertices, then vertex-disjoint
/// shortest augmenting paths found by an iterative DFS.
pub fn max_bipartite_matching(g: &BipartiteGraph) -> Matching {
    let (nl, nr) = (g.left_count, g.right_count);
    let mut pair_l = vec![NIL; nl];
    let mut pair_r = vec![NIL; nr];
    let mut dist = vec![u32::MAX; nl];
    let mut next_edge = vec![0usize; nl];
    let mut queue = VecDeque::with_capacity(nl);
    let mut stack: Vec<usize> = Vec::new();
    let mut via: Vec<usize> = Vec::new();
    let mut size = 0usize;

    // Greedy warm start.
    for (u, adj) in g.adjacency.iter().enumerate() {
        if let Some(&v) = adj.iter().find(|&&v| pair_r[v] == NIL) {
            pair_l[u] = v;
            pair_r[v] = u;
            size += 1;
        }
    }

    loop {
        queue.clear();
        for u in 0..nl {
            if pair_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &g.adjacency[u] {
                let w = pair_r[v];
                if w == NIL {
                    reachable_free = true;
                } else if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }

        next_edge.iter_mut().for_each(|e| *e = 0);
        for root in 0..nl {
            if pair_l[root] != NIL || dist[root] != 0 {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                let adj = &g.adjacency[u];
                if next_edge[u] == adj.len() {
                    dist[u] = u32::MAX;
                    stack.pop();
                    via.pop();
                    continue;
                }
                let v = adj[next_edge[u]];
                next_edge[u] += 1;
                let w = pair_r[v];
                if w == NIL {
                    via.push(v);
                    for (&u, &v) in stack.iter().zip(&via) {
                        pair_l[u] = v;
                        pair_r[v] = u;
                    }
                    size += 1;
                    break;
                }
                if dist[w] == dist[u] + 1 {
                    via.push(v);
                    stack.push(w);
                }
            }
        }
    }

    Matching {
        pair_for_left: pair_l.into_iter().map(|v| (v != NIL).then_some(v)).collect(),
        size,
    }
}

/// True iff some augmenting path exists with respect to `matching`.
pub fn has_augmenting_path(g: &BipartiteGraph, matching: &Matching) -> bool {
    let mut pair_r = vec![NIL; g.right_count];
    for (u, v) in matching.pair_for_left.iter().enumerate() {
        if let Some(v) = *v {
            pair_r[v] = u;
        }
    }
    let mut seen_left = vec![false; g.left_count];
    let mut queue: VecDeque<usize> = (0..g.left_count)
        .filter(|&u| matching.pair_for_left[u].is_none())
        .collect();
    for &u in &queue {
        seen_left[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &g.adjacency[u] {
            if matching.pair_for_left[u] == Some(v) {
                continue;
            }
            match pair_r[v] {
                NIL => return true,
                w if !seen_left[w] => {
                    seen_left[w] = true;
                    queue.push_back(w);
                }
                _ => {}
            }
        }
    }
    false
}

fn require_pi_sigma(poly: &FactoredPolynomial) -> Result<()> {
    if all_terms_linear(poly.clauses()) {
        Ok(())
    } else {
        Err(Error::shape(
            "matcher requires a ΠΣ polynomial (every term a single variable)",
        ))
    }
}

/// Clause-to-variable-copy matching with `copies` right vertices per variable.
fn match_copies(poly: &FactoredPolynomial, copies: usize) -> Option<Witness> {
    if poly.has_empty_clause() {
        return None;
    }
    let mut choices = vec![0usize; poly.num_clauses()];
    // Clauses holding the constant term take it and stay out of the matching.
    let mut left_clauses = Vec::new();
    let mut adjacency = Vec::new();
    for (i, clause) in poly.clauses().iter().enumerate() {
        if let Some(j) = clause.monomials().position(|m| m.is_constant()) {
            choices[i] = j;
            continue;
        }
        let mut adj = Vec::with_capacity(clause.len() * copies);
        for mono in clause.monomials() {
            let v = mono.vars().next().expect("linear term").index();
            adj.extend(v * copies..(v + 1) * copies);
        }
        left_clauses.push(i);
        adjacency.push(adj);
    }
    let g = BipartiteGraph::new(poly.num_vars() * copies, adjacency).expect("ids in range");
    let matching = max_bipartite_matching(&g);
    if matching.size < left_clauses.len() {
        return None;
    }
    for (l, &clause_idx) in left_clauses.iter().enumerate() {
        let var = matching.pair_for_left[l].expect("perfect on left") / copies;
        choices[clause_idx] = poly
            .clause(clause_idx)
            .monomials()
            .position(|m| m.vars().next().is_some_and(|v| v.index() == var))
            .expect("matched variable occurs in clause");
    }
    Some(Witness::new(choices))
}

/// Witness for a multilinear monomial of a ΠΣ polynomial, if one exists.
pub fn find_multilinear_pisigma(poly: &FactoredPolynomial) -> Result<Option<Witness>> {
    require_pi_sigma(poly)?;
    Ok(match_copies(poly, 1))
}

/// Witness for a c-monomial of a ΠΣ polynomial: each variable gets `c - 1`
/// right-hand copies, so it can serve at most `c - 1` clauses.
pub fn find_c_monomial_pisigma(poly: &FactoredPolynomial, c: u32) -> Result<Option<Witness>> {
    check_c(c)?;
    require_pi_sigma(poly)?;
    // More copies than clauses never helps.
    let copies = ((c - 1) as usize).min(poly.num_clauses().max(1));
    if poly.num_vars().checked_mul(copies).is_none() {
        return Err(Error::invalid_argument("c too large for this many variables"));
    }
    Ok(match_copies(poly, copies))
}
