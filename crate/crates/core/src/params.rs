//! Minimum twin cover and minimum cluster vertex deletion set, by bounded
//! branching at desk scale.

use crate::graph::Graph;
use crate::twins::are_twins;

/// Edges whose endpoints are not twins.
pub fn non_twin_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| !are_twins(g, u, v))
        .collect()
}

/// A minimum twin cover: a smallest vertex set hitting every non-twin edge.
/// Computed as a minimum vertex cover of the non-twin edges, branching on an
/// uncovered edge with the current best size as depth bound. Every connected
/// component of `G - S` is then a complete graph of mutual twins.
pub fn minimum_twin_cover(g: &Graph) -> Vec<usize> {
    let edges = non_twin_edges(g);
    let mut best: Vec<usize> = {
        // trivial cover: all endpoints
        let mut all: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        all.sort_unstable();
        all.dedup();
        all
    };
    let mut chosen = Vec::new();
    branch_vc(&edges, &mut chosen, &mut best);
    best
}

fn branch_vc(edges: &[(usize, usize)], chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
    if chosen.len() >= best.len() {
        return;
    }
    let uncovered = edges
        .iter()
        .find(|&&(u, v)| !chosen.contains(&u) && !chosen.contains(&v));
    match uncovered {
        None => {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            *best = sol;
        }
        Some(&(u, v)) => {
            chosen.push(u);
            branch_vc(edges, chosen, best);
            chosen.pop();
            chosen.push(v);
            branch_vc(edges, chosen, best);
            chosen.pop();
        }
    }
}

/// Size of a minimum twin cover.
pub fn twin_cover_number(g: &Graph) -> usize {
    minimum_twin_cover(g).len()
}

/// A minimum set whose removal leaves a disjoint union of complete graphs.
/// Branches three ways on an induced path on three vertices, memoizing the
/// best answer per remaining vertex set.
pub fn minimum_cluster_deletion(g: &Graph) -> Vec<usize> {
    assert!(g.n() <= 63, "cluster deletion branching is capped at 63 vertices");
    let all: u64 = if g.n() == 0 { 0 } else { (1 << g.n()) - 1 };
    let mut memo = std::collections::HashMap::new();
    let sol = branch_cvd(g, all, &mut memo);
    sol.into_iter().collect()
}

fn find_induced_p3(g: &Graph, alive: u64) -> Option<(usize, usize, usize)> {
    for v in g.vertices().filter(|&v| alive >> v & 1 == 1) {
        let nbrs: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| alive >> w & 1 == 1)
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !g.has_edge(a, b) {
                    return Some((a, v, b));
                }
            }
        }
    }
    None
}

fn branch_cvd(
    g: &Graph,
    alive: u64,
    memo: &mut std::collections::HashMap<u64, Vec<usize>>,
) -> Vec<usize> {
    if let Some(sol) = memo.get(&alive) {
        return sol.clone();
    }
    let sol = match find_induced_p3(g, alive) {
        None => Vec::new(),
        Some((a, v, b)) => {
            let mut best: Option<Vec<usize>> = None;
            for del in [a, v, b] {
                let mut sub = branch_cvd(g, alive & !(1 << del), memo);
                sub.push(del);
                if best.as_ref().map_or(true, |b| sub.len() < b.len()) {
                    sub.sort_unstable();
                    best = Some(sub);
                }
            }
            best.unwrap()
        }
    };
    memo.insert(alive, sol.clone());
    sol
}

/// Size of a minimum cluster vertex deletion set.
pub fn cluster_deletion_number(g: &Graph) -> usize {
    minimum_cluster_deletion(g).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_twin_cover(g: &Graph, s: &[usize]) -> bool {
        non_twin_edges(g)
            .iter()
            .all(|&(u, v)| s.contains(&u) || s.contains(&v))
    }

    fn brute_min_size<F: Fn(&[usize]) -> bool>(n: usize, ok: F) -> usize {
        for size in 0..=n {
            let mut found = false;
            subsets_of_size(n, size, &mut |s| {
                if ok(s) {
                    found = true;
                }
            });
            if found {
                return size;
            }
        }
        n
    }

    fn subsets_of_size(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
            if cur.len() == k {
                f(cur);
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(n, k, v + 1, cur, f);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut Vec::new(), f);
    }

    #[test]
    fn cliques_have_empty_cover() {
        let g = Graph::complete(4).disjoint_union(&Graph::complete(3));
        assert_eq!(minimum_twin_cover(&g), Vec::<usize>::new());
        assert_eq!(minimum_cluster_deletion(&g), Vec::<usize>::new());
    }

    #[test]
    fn path4_twin_cover_two() {
        let s = minimum_twin_cover(&Graph::path(4));
        assert_eq!(s.len(), 2);
        assert!(is_twin_cover(&Graph::path(4), &s));
    }

    #[test]
    fn k4_minus_edge() {
        // The non-twin edges of K4 minus an edge form a 4-cycle, so the
        // minimum twin cover has size 2 (confirmed by subset enumeration
        // in sizes_match_subset_enumeration below).
        let mut g = Graph::complete(4);
        g = {
            let edges: Vec<_> = g.edges().into_iter().filter(|&e| e != (2, 3)).collect();
            Graph::from_edges(4, edges).unwrap()
        };
        assert_eq!(non_twin_edges(&g).len(), 4);
        assert_eq!(twin_cover_number(&g), 2);
        assert_eq!(cluster_deletion_number(&g), 1);
    }

    #[test]
    fn residual_components_are_twin_cliques() {
        for g in [Graph::path(5), Graph::cycle(5), Graph::star(3).subdivide(2)] {
            let s = minimum_twin_cover(&g);
            let (rest, ids) = g.without(&s);
            for comp in rest.components() {
                for (i, &a) in comp.iter().enumerate() {
                    for &b in &comp[i + 1..] {
                        assert!(rest.has_edge(a, b), "component not a clique");
                        assert!(are_twins(&g, ids[a], ids[b]), "component not twins");
                    }
                }
            }
        }
    }

    #[test]
    fn cvd_examples() {
        assert_eq!(cluster_deletion_number(&Graph::path(4)), 1);
        assert_eq!(cluster_deletion_number(&Graph::cycle(5)), 2);
    }

    #[test]
    fn sizes_match_subset_enumeration() {
        let cases = [
            Graph::path(5),
            Graph::cycle(6),
            Graph::star(4),
            Graph::complete(4).disjoint_union(&Graph::path(3)),
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap(),
        ];
        for g in cases {
            let tc_expect = brute_min_size(g.n(), |s| is_twin_cover(&g, s));
            assert_eq!(twin_cover_number(&g), tc_expect, "tc mismatch on {g:?}");
            let cvd_expect = brute_min_size(g.n(), |s| g.without(s).0.is_cluster_graph());
            assert_eq!(cluster_deletion_number(&g), cvd_expect, "cvd mismatch on {g:?}");
            assert!(cluster_deletion_number(&g) <= twin_cover_number(&g));
        }
    }
}
