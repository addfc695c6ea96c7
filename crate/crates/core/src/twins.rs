//! Twin classes and neighborhood diversity.
//!
//! Two vertices are twins when they have the same neighborhood once the
//! adjacency between them is ignored. Twin classes are the equivalence
//! classes of this relation; each class is a clique or an independent set,
//! and between two classes the connection is either full or empty.

use crate::graph::Graph;

/// Partition of the vertex set into maximal twin classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinClassPartition {
    classes: Vec<Vec<usize>>,
    clique: Vec<bool>,
    full: Vec<Vec<bool>>,
    class_of: Vec<usize>,
}

impl TwinClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes as sorted vertex lists, ordered by minimum vertex.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    /// Whether class `i` is a clique. Singleton classes count as cliques.
    pub fn is_clique(&self, i: usize) -> bool {
        self.clique[i]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Whether the connection between two distinct classes is full.
    pub fn full_between(&self, i: usize, j: usize) -> bool {
        self.full[i][j]
    }

    /// Adjacent-pair predicate on class indices: a class paired with itself
    /// is adjacent when it is a clique, two distinct classes are adjacent
    /// when their connection is full.
    pub fn adjacent_pair(&self, i: usize, j: usize) -> bool {
        if i == j {
            self.clique[i]
        } else {
            self.full[i][j]
        }
    }
}

/// Twin test: `N(u) \ {v} = N(v) \ {u}`.
pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let nu: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| w != v).collect();
    let nv: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w != u).collect();
    nu == nv
}

/// Maximal twin classes with clique flags and the full/empty class matrix.
pub fn twin_classes(g: &Graph) -> TwinClassPartition {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let mut placed = false;
        for (i, class) in classes.iter_mut().enumerate() {
            if are_twins(g, class[0], v) {
                class.push(v);
                class_of[v] = i;
                placed = true;
                break;
            }
        }
        if !placed {
            class_of[v] = classes.len();
            classes.push(vec![v]);
        }
    }

    let k = classes.len();
    let clique: Vec<bool> = classes
        .iter()
        .map(|c| c.len() == 1 || g.has_edge(c[0], c[1]))
        .collect();
    let mut full = vec![vec![false; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let f = g.has_edge(classes[i][0], classes[j][0]);
            full[i][j] = f;
            full[j][i] = f;
        }
    }
    TwinClassPartition { classes, clique, full, class_of }
}

/// Number of twin classes.
pub fn neighborhood_diversity(g: &Graph) -> usize {
    twin_classes(g).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_one_clique_class() {
        let p = twin_classes(&Graph::complete(3));
        assert_eq!(p.classes(), &[vec![0, 1, 2]]);
        assert!(p.is_clique(0));
    }

    #[test]
    fn path3_classes() {
        let p = twin_classes(&Graph::path(3));
        assert_eq!(p.classes(), &[vec![0, 2], vec![1]]);
        assert!(!p.is_clique(0));
        assert!(p.full_between(0, 1));
    }

    #[test]
    fn cycle4_two_independent_classes() {
        // 0-1-2-3-0: {0,2} and {1,3}, full connection.
        let p = twin_classes(&Graph::cycle(4));
        assert_eq!(p.len(), 2);
        assert_eq!(p.classes(), &[vec![0, 2], vec![1, 3]]);
        assert!(!p.is_clique(0));
        assert!(!p.is_clique(1));
        assert!(p.full_between(0, 1));
    }

    #[test]
    fn nd_values() {
        assert_eq!(neighborhood_diversity(&Graph::complete(5)), 1);
        assert_eq!(neighborhood_diversity(&Graph::cycle(4)), 2);
        assert_eq!(neighborhood_diversity(&Graph::path(4)), 4);
    }

    /// Classes are exactly the equivalence classes of the pairwise twin test.
    #[test]
    fn partition_matches_pairwise_relation() {
        for g in [Graph::path(6), Graph::cycle(5), Graph::star(4), Graph::complete(4)] {
            let p = twin_classes(&g);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    assert_eq!(
                        p.class_of(u) == p.class_of(v),
                        are_twins(&g, u, v),
                        "twin relation mismatch at {u},{v} in {g:?}"
                    );
                }
            }
        }
    }
}
