//! Maximal degree-2 trails and graph smoothing.
//!
//! A maximal degree-2 trail is a trail whose internal vertices all have
//! degree 2 and whose endpoints do not; a component that is a simple cycle
//! (all degrees 2) also counts as one trail, anchored at its lowest-index
//! vertex. The edge sets of the trails partition the edge set of the graph.
//! Collapsing every trail to a single edge yields the smoothing: a
//! multigraph with loops and no degree-2 vertices except isolated loops.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrailKind {
    /// Distinct endpoints of degree != 2.
    Path,
    /// Equal endpoints of degree != 2 (a cycle through a branch vertex).
    Cycle,
    /// A whole component that is a simple cycle, anchored at its lowest vertex.
    IsolatedCycle,
}

/// A trail as its vertex sequence `v0, ..., vk`; edge i joins `v(i-1)` and `v(i)`.
/// Cycles repeat the anchor: `v0 == vk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trail {
    pub vertices: Vec<usize>,
    pub kind: TrailKind,
}

impl Trail {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn is_cycle(&self) -> bool {
        !matches!(self.kind, TrailKind::Path)
    }

    /// Vertices strictly between the endpoints (for cycles: all but the anchor).
    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailDecomposition {
    pub trails: Vec<Trail>,
}

impl TrailDecomposition {
    pub fn len(&self) -> usize {
        self.trails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trails.is_empty()
    }
}

/// All maximal degree-2 trails, in deterministic order: first the trails
/// discovered from non-degree-2 vertices in ascending order (walking toward
/// the ascending neighbor first), then isolated cycles by anchor.
pub fn degree2_trails(g: &Graph) -> TrailDecomposition {
    let mut used = vec![false; g.m()];
    let edge_index = {
        let mut map = std::collections::HashMap::new();
        for (i, e) in g.edges().into_iter().enumerate() {
            map.insert(e, i);
        }
        map
    };
    let idx = |u: usize, v: usize| edge_index[&(u.min(v), u.max(v))];

    let mut trails = Vec::new();
    for start in g.vertices().filter(|&v| g.degree(v) != 2) {
        for &first in g.neighbors(start) {
            if used[idx(start, first)] {
                continue;
            }
            let mut verts = vec![start, first];
            used[idx(start, first)] = true;
            let (mut prev, mut cur) = (start, first);
            while g.degree(cur) == 2 {
                let next = if g.neighbors(cur)[0] == prev {
                    g.neighbors(cur)[1]
                } else {
                    g.neighbors(cur)[0]
                };
                used[idx(cur, next)] = true;
                verts.push(next);
                prev = cur;
                cur = next;
            }
            let kind = if verts[0] == *verts.last().unwrap() {
                TrailKind::Cycle
            } else {
                TrailKind::Path
            };
            trails.push(Trail { vertices: verts, kind });
        }
    }

    // Remaining edges lie in components where every degree is 2: isolated cycles.
    for anchor in g.vertices() {
        if g.degree(anchor) != 2 || g.neighbors(anchor).iter().any(|&w| used[idx(anchor, w)]) {
            continue;
        }
        let mut verts = vec![anchor];
        let mut prev = anchor;
        let mut cur = g.neighbors(anchor)[0];
        used[idx(anchor, cur)] = true;
        verts.push(cur);
        while cur != anchor {
            let next = if g.neighbors(cur)[0] == prev {
                g.neighbors(cur)[1]
            } else {
                g.neighbors(cur)[0]
            };
            used[idx(cur, next)] = true;
            verts.push(next);
            prev = cur;
            cur = next;
        }
        trails.push(Trail { vertices: verts, kind: TrailKind::IsolatedCycle });
    }

    TrailDecomposition { trails }
}

/// Undirected multigraph with loops; the result of smoothing and the shape
/// of guessed skeletons. Edge identifiers are indices into `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSkeleton {
    pub n: usize,
    /// Each edge as `(u, v)` with `u <= v`; `u == v` is a loop. Sorted.
    pub edges: Vec<(usize, usize)>,
}

impl MultiSkeleton {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        MultiSkeleton { n, edges }
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    /// Loop whose carrier has no other incident edge.
    pub fn is_isolated_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v && self.degree(u) == 2
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == b).count()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }
}

/// Smoothing: suppress all degree-2 vertices by collapsing each maximal
/// degree-2 trail to a single edge (isolated cycles become isolated loops).
/// Kept vertices are relabeled in ascending order of their original index;
/// the original indices are returned alongside.
pub fn smoothing(g: &Graph) -> (MultiSkeleton, Vec<usize>) {
    let trails = degree2_trails(g);
    let mut kept: Vec<usize> = g.non_degree2_vertices();
    for t in &trails.trails {
        if t.kind == TrailKind::IsolatedCycle {
            kept.push(t.vertices[0]);
        }
    }
    kept.sort_unstable();
    let index = |v: usize| kept.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = trails
        .trails
        .iter()
        .map(|t| {
            let (a, b) = t.endpoints();
            (index(a), index(b))
        })
        .collect();
    (MultiSkeleton::new(kept.len(), edges), kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path5_single_trail() {
        let d = degree2_trails(&Graph::path(5));
        assert_eq!(d.len(), 1);
        assert_eq!(d.trails[0].vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(d.trails[0].kind, TrailKind::Path);
    }

    #[test]
    fn cycle6_isolated_cycle() {
        let d = degree2_trails(&Graph::cycle(6));
        assert_eq!(d.len(), 1);
        assert_eq!(d.trails[0].kind, TrailKind::IsolatedCycle);
        assert_eq!(d.trails[0].vertices[0], 0);
        assert_eq!(d.trails[0].len(), 6);
    }

    #[test]
    fn subdivided_star_three_trails() {
        // K_{1,3} with each leg subdivided once: center 0, legs 0-4-1, 0-5-2, 0-6-3.
        let g = Graph::star(3).subdivide(2);
        let d = degree2_trails(&g);
        assert_eq!(d.len(), 3);
        for t in &d.trails {
            assert_eq!(t.kind, TrailKind::Path);
            assert_eq!(t.len(), 2);
            assert_eq!(t.vertices[0], 0);
        }
    }

    #[test]
    fn paw_has_cycle_trail() {
        // Triangle 0-1-2 plus pendant 3 at 0.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let d = degree2_trails(&g);
        assert_eq!(d.len(), 2);
        let kinds: Vec<TrailKind> = d.trails.iter().map(|t| t.kind).collect();
        assert!(kinds.contains(&TrailKind::Cycle));
        assert!(kinds.contains(&TrailKind::Path));
    }

    #[test]
    fn trails_partition_edges() {
        for g in [
            Graph::path(7),
            Graph::cycle(5),
            Graph::complete(4),
            Graph::star(3).subdivide(3),
            Graph::cycle(4).disjoint_union(&Graph::path(3)),
        ] {
            let d = degree2_trails(&g);
            let mut seen = std::collections::BTreeSet::new();
            for t in &d.trails {
                for e in t.edges() {
                    assert!(seen.insert(e), "edge {e:?} repeated in {g:?}");
                }
            }
            assert_eq!(seen.len(), g.m());
        }
    }

    #[test]
    fn smoothing_path_is_edge() {
        let (s, ids) = smoothing(&Graph::path(5));
        assert_eq!(s.n, 2);
        assert_eq!(s.edges, vec![(0, 1)]);
        assert_eq!(ids, vec![0, 4]);
    }

    #[test]
    fn smoothing_cycle_is_isolated_loop() {
        let (s, _) = smoothing(&Graph::cycle(6));
        assert_eq!(s.n, 1);
        assert_eq!(s.edges, vec![(0, 0)]);
        assert!(s.is_isolated_loop(0));
    }

    #[test]
    fn smoothing_recovers_subdivided_k4() {
        let (s, _) = smoothing(&Graph::complete(4).subdivide(2));
        assert_eq!(s.n, 4);
        assert_eq!(s.edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn smoothing_has_no_plain_degree2() {
        for g in [
            Graph::path(6),
            Graph::cycle(4),
            Graph::star(3).subdivide(2),
            Graph::cycle(5).disjoint_union(&Graph::path(4)),
        ] {
            let (s, _) = smoothing(&g);
            for v in 0..s.n {
                if s.degree(v) == 2 {
                    let carries_isolated_loop = (0..s.edges.len())
                        .any(|e| s.is_isolated_loop(e) && s.edges[e].0 == v);
                    assert!(carries_isolated_loop, "plain degree-2 vertex {v} in {s:?}");
                }
            }
        }
    }
}
