//! Max-leaf number, the expansion-grown leafy spanning tree, and the
//! degree-2 reduction.

use thiserror::Error;

use crate::graph::Graph;

/// Default cap on the component size for the exact max-leaf search.
pub const DEFAULT_ML_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MlError {
    #[error("exact ml infeasible: component with {size} vertices exceeds cap {cap} (lower bound {lower_bound})")]
    ComponentOverCap { size: usize, cap: usize, lower_bound: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LeafyError {
    #[error("leafy spanning tree needs a connected input")]
    Disconnected,
    #[error("leafy spanning tree needs at least 2 vertices")]
    TooSmall,
    #[error("input has a degree-2 vertex ({vertex}); apply reduce_degree2 first")]
    HasDegree2 { vertex: usize },
}

/// Spanning tree of a connected graph as a parent structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub leaves: Vec<usize>,
}

impl SpanningTree {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }
}

/// Per-operation deltas of the tree-growth procedure; every admissible
/// operation satisfies `3*dl + dm >= dn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthStep {
    pub dl: i64,
    pub dm: i64,
    pub dn: i64,
}

/// Exact max-leaf number: the sum over connected components of the maximum
/// leaf count over all spanning trees. An isolated vertex contributes 1.
///
/// Per component with n >= 3 vertices this is `n` minus the minimum size of
/// a connected dominating set (the internal vertices of a spanning tree form
/// one, and any such set extends to a spanning tree with all other vertices
/// as leaves). Components are capped at `cap` vertices; larger ones yield an
/// error carrying the lower bound obtained from the tree-growth procedure.
pub fn max_leaf_number(g: &Graph, cap: usize) -> Result<usize, MlError> {
    let mut total = 0usize;
    for comp in g.components() {
        let (sub, _) = g.induced(&comp);
        total += component_ml(&sub, cap)?;
    }
    Ok(total)
}

fn component_ml(g: &Graph, cap: usize) -> Result<usize, MlError> {
    let n = g.n();
    if n == 1 {
        return Ok(1);
    }
    if n == 2 {
        return Ok(2);
    }
    if n > cap.min(63) {
        let reduced = reduce_degree2(g);
        let lower_bound = if reduced.n() < 2 {
            2
        } else {
            leafy_spanning_tree(&reduced).map(|t| t.leaf_count()).unwrap_or(2)
        };
        return Err(MlError::ComponentOverCap { size: n, cap, lower_bound });
    }

    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | (1 << w)))
        .collect();
    let all: u64 = (1 << n) - 1;
    let mut best = n - 1; // a star interior when some vertex dominates
    for mask in 1u64..=all {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        // dominating
        let mut dominated = mask;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            dominated |= nbr[v];
        }
        if dominated != all {
            continue;
        }
        // connected
        let start = mask.trailing_zeros() as usize;
        let mut reach = 1u64 << start;
        loop {
            let mut grow = reach;
            let mut bits = reach;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grow |= nbr[v] & mask;
            }
            if grow == reach {
                break;
            }
            reach = grow;
        }
        if reach == mask {
            best = size;
        }
    }
    Ok(n - best)
}

/// Spanning tree with many leaves, grown by expansions from an initial star.
/// Requires a connected graph with at least 2 vertices and no degree-2
/// vertices; the leaf count `L` then satisfies `|V| <= 4L - 6`.
pub fn leafy_spanning_tree(g: &Graph) -> Result<SpanningTree, LeafyError> {
    leafy_spanning_tree_logged(g).map(|(t, _)| t)
}

/// Same as [`leafy_spanning_tree`] but also returns the per-operation deltas
/// for checking the augmentation inequality.
pub fn leafy_spanning_tree_logged(g: &Graph) -> Result<(SpanningTree, Vec<GrowthStep>), LeafyError> {
    if g.n() < 2 {
        return Err(LeafyError::TooSmall);
    }
    if !g.is_connected() {
        return Err(LeafyError::Disconnected);
    }
    if let Some(&v) = g.vertices().collect::<Vec<_>>().iter().find(|&&v| g.degree(v) == 2) {
        return Err(LeafyError::HasDegree2 { vertex: v });
    }

    let n = g.n();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut in_tree = vec![false; n];
    let mut tree_deg = vec![0usize; n];

    // K2 base case: the single edge, both endpoints leaves.
    if n == 2 {
        parent[1] = Some(0);
        let tree = SpanningTree { root: 0, parent, leaves: vec![0, 1] };
        return Ok((tree, Vec::new()));
    }

    // Initialize at the neighbor of a degree-1 vertex when one exists,
    // otherwise at a maximum-degree vertex.
    let root = match g.vertices().find(|&v| g.degree(v) == 1) {
        Some(u) => g.neighbors(u)[0],
        None => {
            let mut best = 0;
            for v in g.vertices() {
                if g.degree(v) > g.degree(best) {
                    best = v;
                }
            }
            best
        }
    };
    in_tree[root] = true;
    let mut tree_size = 1usize;
    let expand = |x: usize,
                      parent: &mut Vec<Option<usize>>,
                      in_tree: &mut Vec<bool>,
                      tree_deg: &mut Vec<usize>,
                      tree_size: &mut usize| {
        let fresh: Vec<usize> =
            g.neighbors(x).iter().copied().filter(|&w| !in_tree[w]).collect();
        for w in fresh {
            in_tree[w] = true;
            parent[w] = Some(x);
            tree_deg[w] += 1;
            tree_deg[x] += 1;
            *tree_size += 1;
        }
    };
    expand(root, &mut parent, &mut in_tree, &mut tree_deg, &mut tree_size);

    let out_deg = |x: usize, in_tree: &[bool]| -> usize {
        g.neighbors(x).iter().filter(|&&w| !in_tree[w]).count()
    };
    let counts = |in_tree: &[bool], tree_deg: &[usize]| -> (i64, i64) {
        let mut leaves = 0i64;
        let mut dead = 0i64;
        for v in g.vertices() {
            if in_tree[v] && tree_deg[v] == 1 {
                leaves += 1;
                if out_deg(v, in_tree) == 0 {
                    dead += 1;
                }
            }
        }
        (leaves, dead)
    };

    let mut steps = Vec::new();
    loop {
        let (l0, m0) = counts(&in_tree, &tree_deg);
        let n0 = tree_size as i64;

        let leaves: Vec<usize> = g
            .vertices()
            .filter(|&v| in_tree[v] && tree_deg[v] == 1)
            .collect();
        // Case 1: a leaf with out-degree >= 2.
        if let Some(&x) = leaves.iter().find(|&&x| out_deg(x, &in_tree) >= 2) {
            expand(x, &mut parent, &mut in_tree, &mut tree_deg, &mut tree_size);
        } else if let Some(&x) = leaves.iter().find(|&&x| out_deg(x, &in_tree) == 1) {
            let y = *g.neighbors(x).iter().find(|&&w| !in_tree[w]).unwrap();
            if g.degree(y) == 1 {
                // Case 3: the outside neighbor is a degree-1 vertex.
                expand(x, &mut parent, &mut in_tree, &mut tree_deg, &mut tree_size);
            } else {
                let y_in_tree = g.neighbors(y).iter().filter(|&&w| in_tree[w]).count();
                if y_in_tree >= 2 {
                    // Case 2(a): y hooks at least two tree vertices.
                    expand(x, &mut parent, &mut in_tree, &mut tree_deg, &mut tree_size);
                } else {
                    // Case 2(b): expand at x and then at y.
                    expand(x, &mut parent, &mut in_tree, &mut tree_deg, &mut tree_size);
                    expand(y, &mut parent, &mut in_tree, &mut tree_deg, &mut tree_size);
                }
            }
        } else {
            break;
        }

        let (l1, m1) = counts(&in_tree, &tree_deg);
        steps.push(GrowthStep { dl: l1 - l0, dm: m1 - m0, dn: tree_size as i64 - n0 });
    }

    debug_assert_eq!(tree_size, n, "expansion did not span the graph");
    let leaves: Vec<usize> = g.vertices().filter(|&v| tree_deg[v] == 1).collect();
    let tree = SpanningTree { root, parent, leaves };
    debug_assert!(n <= 4 * tree.leaf_count() - 6, "leaf bound violated: n={n} L={}", tree.leaf_count());
    Ok((tree, steps))
}

/// Eliminate degree-2 vertices from a connected graph without decreasing
/// `|V_{!=2}|` and without increasing the max-leaf number: a separating
/// degree-2 vertex is contracted along one of its bridges, a non-separating
/// one loses one incident edge.
pub fn reduce_degree2(g: &Graph) -> Graph {
    let mut cur = g.clone();
    loop {
        let Some(v) = cur.vertices().find(|&v| cur.degree(v) == 2) else {
            return cur;
        };
        let u = cur.neighbors(v)[0];
        let w = cur.neighbors(v)[1];
        let (rest, _) = cur.without(&[v]);
        if rest.is_connected() {
            // Case 2: drop the edge to the lower-indexed neighbor.
            let mut edges = cur.edges();
            edges.retain(|&e| e != (u.min(v), u.max(v)));
            cur = Graph::from_edges(cur.n(), edges).unwrap();
        } else {
            // Case 1: v sits on a bridge; contract {u, v} by rerouting v's
            // other edge to u and deleting v. The bridge guarantees u and w
            // are non-adjacent, so no parallel edge can arise.
            let mut edges: Vec<(usize, usize)> = cur
                .edges()
                .into_iter()
                .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)) && (a, b) != (v.min(w), v.max(w)))
                .collect();
            edges.push((u.min(w), u.max(w)));
            let with_u: Graph = Graph::from_edges(cur.n(), edges).unwrap();
            let (next, _) = with_u.without(&[v]);
            cur = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force ml by enumerating all spanning trees through edge subsets.
    fn ml_by_tree_enumeration(g: &Graph) -> usize {
        let mut total = 0;
        for comp in g.components() {
            let (sub, _) = g.induced(&comp);
            let n = sub.n();
            if n == 1 {
                total += 1;
                continue;
            }
            let edges = sub.edges();
            let mut best = 0;
            for mask in 0u32..(1 << edges.len()) {
                if mask.count_ones() as usize != n - 1 {
                    continue;
                }
                let chosen: Vec<(usize, usize)> = edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let t = Graph::from_edges(n, chosen).unwrap();
                if t.is_connected() {
                    let leaves = t.vertices().filter(|&v| t.degree(v) == 1).count();
                    best = best.max(leaves);
                }
            }
            total += best;
        }
        total
    }

    #[test]
    fn ml_examples() {
        assert_eq!(max_leaf_number(&Graph::path(7), DEFAULT_ML_CAP), Ok(2));
        assert_eq!(max_leaf_number(&Graph::cycle(6), DEFAULT_ML_CAP), Ok(2));
        assert_eq!(max_leaf_number(&Graph::complete(4), DEFAULT_ML_CAP), Ok(3));
        assert_eq!(max_leaf_number(&Graph::star(5), DEFAULT_ML_CAP), Ok(5));
        assert_eq!(max_leaf_number(&Graph::empty(3), DEFAULT_ML_CAP), Ok(3));
    }

    #[test]
    fn ml_matches_tree_enumeration() {
        let cases = [
            Graph::path(5),
            Graph::cycle(5),
            Graph::complete(5),
            Graph::star(3).subdivide(2),
            Graph::cycle(4).disjoint_union(&Graph::path(3)),
            Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap(),
        ];
        for g in cases {
            assert_eq!(
                max_leaf_number(&g, DEFAULT_ML_CAP).unwrap(),
                ml_by_tree_enumeration(&g),
                "ml mismatch on {g:?}"
            );
        }
    }

    #[test]
    fn ml_over_cap_reports_lower_bound() {
        let g = Graph::complete(6).subdivide(3); // 6 + 15*2 = 36 vertices
        let err = max_leaf_number(&g, 16).unwrap_err();
        match err {
            MlError::ComponentOverCap { size, cap, lower_bound } => {
                assert_eq!(size, 36);
                assert_eq!(cap, 16);
                assert!(lower_bound >= 2);
            }
        }
    }

    #[test]
    fn leafy_base_cases() {
        let t = leafy_spanning_tree(&Graph::complete(2)).unwrap();
        assert_eq!(t.leaf_count(), 2);
        let t = leafy_spanning_tree(&Graph::star(3)).unwrap();
        assert_eq!(t.leaf_count(), 3);
        let t = leafy_spanning_tree(&Graph::complete(4)).unwrap();
        assert_eq!(t.leaf_count(), 3);
    }

    #[test]
    fn leafy_rejects_degree2() {
        assert_eq!(
            leafy_spanning_tree(&Graph::path(3)).unwrap_err(),
            LeafyError::HasDegree2 { vertex: 1 }
        );
    }

    #[test]
    fn leafy_satisfies_bound_and_augmentation() {
        let cases = [
            Graph::complete(5),
            Graph::star(6),
            Graph::complete(4).subdivide(1),
            Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5)])
                .unwrap(),
        ];
        for g in cases {
            let (t, steps) = leafy_spanning_tree_logged(&g).unwrap();
            assert!(g.n() <= 4 * t.leaf_count() - 6, "bound fails on {g:?}");
            for s in steps {
                assert!(3 * s.dl + s.dm >= s.dn, "augmentation fails: {s:?} on {g:?}");
            }
            assert!(t.leaf_count() <= max_leaf_number(&g, DEFAULT_ML_CAP).unwrap());
        }
    }

    #[test]
    fn reduce_path_and_cycle() {
        let r = reduce_degree2(&Graph::path(5));
        assert_eq!(r.n(), 2);
        assert_eq!(r.m(), 1);
        let r = reduce_degree2(&Graph::cycle(4));
        assert_eq!(r.n(), 2);
        assert_eq!(r.m(), 1);
        let r = reduce_degree2(&Graph::complete(4));
        assert_eq!(r, Graph::complete(4));
    }

    #[test]
    fn reduce_preserves_invariants() {
        let cases = [
            Graph::path(6),
            Graph::cycle(7),
            Graph::star(3).subdivide(3),
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap(),
        ];
        for g in cases {
            let r = reduce_degree2(&g);
            assert!(r.is_connected());
            assert!(r.vertices().all(|v| r.degree(v) != 2));
            assert!(r.non_degree2_vertices().len() >= g.non_degree2_vertices().len());
            assert!(
                max_leaf_number(&r, DEFAULT_ML_CAP).unwrap()
                    <= max_leaf_number(&g, DEFAULT_ML_CAP).unwrap(),
                "ml increased on {g:?}"
            );
        }
    }
}
