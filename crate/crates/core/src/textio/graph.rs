use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::ParseError;

/// Simple undirected graph on vertices `1..=n`. Edges are stored as
/// `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    pub n: u32,
    pub edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    /// Builds a graph, normalising edge orientation. Panics on a self-loop or
    /// an endpoint outside `1..=n`.
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(n: u32, edges: I) -> Self {
        let edges = edges
            .into_iter()
            .map(|(u, v)| {
                assert!(u != v, "self-loop at {u}");
                assert!((1..=n).contains(&u) && (1..=n).contains(&v), "endpoint out of range");
                (u.min(v), u.max(v))
            })
            .collect();
        Graph { n, edges }
    }

    /// 0-based adjacency lists in increasing neighbour order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(u, v) in &self.edges {
            adj[u as usize - 1].push(v as usize - 1);
            adj[v as usize - 1].push(u as usize - 1);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<u32> = None;
    let mut max_vertex = 0u32;
    let mut edges = BTreeSet::new();
    let mut seen_edge = false;
    let mut offset = 0usize;

    for line in text.split_inclusive('\n') {
        let line_offset = offset;
        offset += line.len();
        let mut tokens = Vec::new();
        let mut pos = line_offset;
        for piece in line.split_inclusive(char::is_whitespace) {
            let tok = piece.trim_end();
            if !tok.is_empty() {
                tokens.push((tok, pos));
            }
            pos += piece.len();
        }
        if tokens.is_empty() {
            continue;
        }
        if tokens[0].0 == "n" && !seen_edge && declared.is_none() {
            let [_, (count, at)] = tokens[..] else {
                return Err(ParseError::at(text, tokens[0].1, "expected 'n <count>'"));
            };
            let n = count
                .parse::<u32>()
                .map_err(|_| ParseError::at(text, at, format!("expected vertex count, found {count:?}")))?;
            declared = Some(n);
            continue;
        }
        if tokens.len() != 2 {
            return Err(ParseError::at(
                text,
                tokens[0].1,
                format!("expected an edge 'u v', found {} tokens", tokens.len()),
            ));
        }
        let mut ends = [0u32; 2];
        for (slot, &(tok, at)) in ends.iter_mut().zip(&tokens) {
            let v = tok
                .parse::<u32>()
                .map_err(|_| ParseError::at(text, at, format!("expected vertex number, found {tok:?}")))?;
            if v == 0 {
                return Err(ParseError::at(text, at, "vertices are numbered from 1"));
            }
            if declared.is_some_and(|n| v > n) {
                return Err(ParseError::at(text, at, format!("vertex {v} exceeds declared count")));
            }
            *slot = v;
        }
        let [u, v] = ends;
        if u == v {
            return Err(ParseError::at(text, tokens[0].1, format!("self-loop at vertex {u}")));
        }
        seen_edge = true;
        max_vertex = max_vertex.max(u).max(v);
        edges.insert((u.min(v), u.max(v)));
    }

    Ok(Graph {
        n: declared.unwrap_or(max_vertex),
        edges,
    })
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n);
    for &(u, v) in &g.edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path() {
        let g = parse_graph("1 2\n2 3").unwrap();
        assert_eq!(g, Graph::new(3, [(1, 2), (2, 3)]));
    }

    #[test]
    fn triangle_and_duplicates() {
        let g = parse_graph("1 2\n2 3\n1 3\n3 1\n").unwrap();
        assert_eq!(g.n, 3);
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.adjacency()[0], vec![1, 2]);
    }

    #[test]
    fn header_sets_count() {
        let g = parse_graph("n 5\n1 2\n").unwrap();
        assert_eq!(g.n, 5);
        assert!(parse_graph("n 2\n1 3").is_err());
        assert_eq!(parse_graph("n 4\n").unwrap().n, 4);
    }

    #[test]
    fn errors() {
        let e = parse_graph("1 1").unwrap_err();
        assert!(e.message.contains("self-loop"));
        assert!(parse_graph("1 x").is_err());
        assert!(parse_graph("0 1").is_err());
        assert!(parse_graph("1 2 3").is_err());
        let e = parse_graph("1 2\n2 -3").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_graph("").unwrap(), Graph::default());
    }

    #[test]
    fn render_round_trip() {
        let g = Graph::new(6, [(1, 2), (5, 3)]);
        assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
    }
}
