//! Simple undirected graphs on vertex set `0..n` with edge-list text I/O.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Parse failure for the edge-list format. Every variant names the offending line.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: malformed header, expected \"n m\"")]
    Header { line: usize },
    #[error("line {line}: malformed edge, expected \"u v\"")]
    EdgeSyntax { line: usize },
    #[error("line {line}: vertex {vertex} out of range 0..{n}")]
    VertexRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop {u} {u} not allowed")]
    Loop { line: usize, u: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: expected {expected} edges, found extra data")]
    ExtraData { line: usize, expected: usize },
    #[error("expected {expected} edges, found only {found}")]
    MissingEdges { expected: usize, found: usize },
}

/// Attempt to add an invalid edge through the programmatic API.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphBuildError {
    #[error("vertex {vertex} out of range 0..{n}")]
    VertexRange { vertex: usize, n: usize },
    #[error("loop at {u} not allowed")]
    Loop { u: usize },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: usize, v: usize },
}

/// Simple undirected graph: no loops, no parallel edges, vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>, // sorted neighbor lists
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphBuildError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphBuildError> {
        if u >= self.n {
            return Err(GraphBuildError::VertexRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphBuildError::VertexRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(GraphBuildError::Loop { u });
        }
        if self.has_edge(u, v) {
            let (u, v) = (u.min(v), u.max(v));
            return Err(GraphBuildError::DuplicateEdge { u, v });
        }
        let pos_u = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos_u, v);
        let pos_v = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos_v, u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices of degree different from 2.
    pub fn non_degree2_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) != 2).collect()
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on `keep` (sorted, deduplicated internally).
    /// Returns the relabeled graph together with the original vertex ids,
    /// where new vertex `i` corresponds to `ids[i]`.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut ids: Vec<usize> = keep.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(ids.len());
        for (i, &v) in ids.iter().enumerate() {
            for &w in &self.adj[v] {
                if w > v && index[w] != usize::MAX {
                    g.add_edge(i, index[w]).expect("induced edge");
                }
            }
        }
        (g, ids)
    }

    /// Induced subgraph dropping `remove`.
    pub fn without(&self, remove: &[usize]) -> (Graph, Vec<usize>) {
        let drop: Vec<bool> = {
            let mut d = vec![false; self.n];
            for &v in remove {
                d[v] = true;
            }
            d
        };
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop[v]).collect();
        self.induced(&keep)
    }

    /// True when every connected component is a complete graph.
    pub fn is_cluster_graph(&self) -> bool {
        self.components().iter().all(|comp| {
            comp.iter()
                .all(|&v| self.degree(v) == comp.len() - 1)
        })
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Star with `legs` leaves; the center is vertex 0.
    pub fn star(legs: usize) -> Graph {
        Graph::from_edges(legs + 1, (1..=legs).map(|v| (0, v))).unwrap()
    }

    /// Disjoint union, relabeling `other` after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n).unwrap();
        }
        g
    }

    /// Replace every edge by a path with `factor` edges.
    pub fn subdivide(&self, factor: usize) -> Graph {
        assert!(factor >= 1);
        let extra = factor - 1;
        let mut g = Graph::empty(self.n + self.m * extra);
        let mut next = self.n;
        for (u, v) in self.edges() {
            if extra == 0 {
                g.add_edge(u, v).unwrap();
            } else {
                let mut prev = u;
                for _ in 0..extra {
                    g.add_edge(prev, next).unwrap();
                    prev = next;
                    next += 1;
                }
                g.add_edge(prev, v).unwrap();
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Serialization: header `n m`, then one `u v` line per edge in lexicographic
/// order. `parse` below is the exact inverse.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m)?;
        for (u, v) in self.edges() {
            writeln!(f, "{} {}", u, v)?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = GraphParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(GraphParseError::Header { line: 1 })?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(GraphParseError::Header { line: 1 })?;
        let m: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(GraphParseError::Header { line: 1 })?;
        if parts.next().is_some() {
            return Err(GraphParseError::Header { line: 1 });
        }

        let mut g = Graph::empty(n);
        let mut found = 0usize;
        for (idx, raw) in lines {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            if found == m {
                return Err(GraphParseError::ExtraData { line, expected: m });
            }
            let mut parts = raw.split_whitespace();
            let u: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(GraphParseError::EdgeSyntax { line })?;
            let v: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(GraphParseError::EdgeSyntax { line })?;
            if parts.next().is_some() {
                return Err(GraphParseError::EdgeSyntax { line });
            }
            g.add_edge(u, v).map_err(|e| match e {
                GraphBuildError::VertexRange { vertex, n } => {
                    GraphParseError::VertexRange { line, vertex, n }
                }
                GraphBuildError::Loop { u } => GraphParseError::Loop { line, u },
                GraphBuildError::DuplicateEdge { u, v } => {
                    GraphParseError::DuplicateEdge { line, u, v }
                }
            })?;
            found += 1;
        }
        if found != m {
            return Err(GraphParseError::MissingEdges { expected: m, found });
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path() {
        let g: Graph = "3 2\n0 1\n1 2".parse().unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_isolated_vertex() {
        let g: Graph = "1 0".parse().unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn parse_rejects_loop() {
        let err = "2 1\n0 0".parse::<Graph>().unwrap_err();
        assert_eq!(err, GraphParseError::Loop { line: 2, u: 0 });
    }

    #[test]
    fn parse_rejects_duplicate() {
        let err = "3 2\n0 1\n1 0".parse::<Graph>().unwrap_err();
        assert_eq!(err, GraphParseError::DuplicateEdge { line: 3, u: 0, v: 1 });
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = "2 1\n0 5".parse::<Graph>().unwrap_err();
        assert_eq!(err, GraphParseError::VertexRange { line: 2, vertex: 5, n: 2 });
    }

    #[test]
    fn parse_rejects_bad_header() {
        assert_eq!("x y".parse::<Graph>().unwrap_err(), GraphParseError::Header { line: 1 });
        assert_eq!("3".parse::<Graph>().unwrap_err(), GraphParseError::Header { line: 1 });
    }

    #[test]
    fn parse_rejects_missing_and_extra_edges() {
        assert_eq!(
            "3 2\n0 1".parse::<Graph>().unwrap_err(),
            GraphParseError::MissingEdges { expected: 2, found: 1 }
        );
        assert_eq!(
            "3 1\n0 1\n1 2".parse::<Graph>().unwrap_err(),
            GraphParseError::ExtraData { line: 3, expected: 1 }
        );
    }

    #[test]
    fn display_round_trip() {
        let g = Graph::complete(4).disjoint_union(&Graph::path(3));
        let text = g.to_string();
        let back: Graph = text.parse().unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn components_and_cluster() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(1));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3]]);
        assert!(g.is_cluster_graph());
        assert!(!Graph::path(3).is_cluster_graph());
    }

    #[test]
    fn induced_keeps_ids() {
        let g = Graph::path(5);
        let (h, ids) = g.induced(&[1, 2, 4]);
        assert_eq!(ids, vec![1, 2, 4]);
        assert_eq!(h.edges(), vec![(0, 1)]);
    }

    #[test]
    fn subdivide_factor_two() {
        let g = Graph::complete(4).subdivide(2);
        assert_eq!(g.n(), 10);
        assert_eq!(g.m(), 12);
        assert_eq!(g.max_degree(), 3);
    }
}
