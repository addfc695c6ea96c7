//! Brute-force ground truth: (induced) subgraph embedding by backtracking,
//! exhaustive maximum common (induced) subgraph, and nothing clever.

use thiserror::Error;

use crate::certificate::{EmbeddingCertificate, Mode};
use crate::graph::Graph;

/// Default cap on `min(|V(G1)|, |V(G2)|)` for the induced oracle.
pub const DEFAULT_MCIS_ORACLE_CAP: usize = 10;
/// Default cap on `min(|E(G1)|, |E(G2)|)` for the subgraph oracle.
pub const DEFAULT_MCS_ORACLE_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle infeasible: instance measure {measure} exceeds cap {cap}")]
    OverCap { measure: usize, cap: usize },
}

/// Injection witnessing that `h` is an (induced) subgraph of `g`, or `None`.
/// Deterministic: returns the lexicographically least witness, mapping the
/// vertices of `h` in index order to the smallest feasible images.
pub fn embed(h: &Graph, g: &Graph, mode: Mode) -> Option<Vec<usize>> {
    if h.n() > g.n() {
        return None;
    }
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    if backtrack(h, g, mode, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn backtrack(
    h: &Graph,
    g: &Graph,
    mode: Mode,
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v == h.n() {
        return true;
    }
    'cand: for c in g.vertices() {
        if used[c] || g.degree(c) < h.degree(v) {
            continue;
        }
        for u in 0..v {
            let in_h = h.has_edge(u, v);
            let in_g = g.has_edge(map[u], c);
            if in_h && !in_g {
                continue 'cand;
            }
            if mode == Mode::Induced && !in_h && in_g {
                continue 'cand;
            }
        }
        map[v] = c;
        used[c] = true;
        if backtrack(h, g, mode, v + 1, map, used) {
            return true;
        }
        used[c] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Exhaustive maximum common induced subgraph. Enumerates vertex subsets of
/// the smaller graph in decreasing size (lexicographic within a size) and
/// returns the first hit.
pub fn mcis_oracle(
    g1: &Graph,
    g2: &Graph,
    cap: usize,
) -> Result<(usize, EmbeddingCertificate), OracleError> {
    let measure = g1.n().min(g2.n());
    if measure > cap {
        return Err(OracleError::OverCap { measure, cap });
    }
    let g1_small = g1.n() <= g2.n();
    let (small, big) = if g1_small { (g1, g2) } else { (g2, g1) };

    for k in (0..=small.n()).rev() {
        let mut found = None;
        for_each_subset(small.n(), k, &mut |subset| {
            if found.is_some() {
                return;
            }
            let (h, ids) = small.induced(subset);
            if let Some(eta_big) = embed(&h, big, Mode::Induced) {
                found = Some((h, ids, eta_big));
            }
        });
        if let Some((h, ids, eta_big)) = found {
            let (eta1, eta2) = if g1_small { (ids, eta_big) } else { (eta_big, ids) };
            let cert = EmbeddingCertificate::new(Mode::Induced, h, eta1, eta2);
            return Ok((k, cert));
        }
    }
    unreachable!("the empty subgraph always embeds")
}

/// Exhaustive maximum common subgraph (edge count). Enumerates edge subsets
/// of the graph with fewer edges in decreasing size; the candidate `H` is
/// the graph carried by the chosen edges (isolated vertices dropped).
pub fn mcs_oracle(
    g1: &Graph,
    g2: &Graph,
    cap: usize,
) -> Result<(usize, EmbeddingCertificate), OracleError> {
    let measure = g1.m().min(g2.m());
    if measure > cap {
        return Err(OracleError::OverCap { measure, cap });
    }
    let g1_small = g1.m() <= g2.m();
    let (small, big) = if g1_small { (g1, g2) } else { (g2, g1) };
    let edges = small.edges();

    for k in (0..=edges.len()).rev() {
        let mut found = None;
        for_each_subset(edges.len(), k, &mut |subset| {
            if found.is_some() {
                return;
            }
            let chosen: Vec<(usize, usize)> = subset.iter().map(|&i| edges[i]).collect();
            let mut verts: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect();
            verts.sort_unstable();
            verts.dedup();
            let index = |v: usize| verts.binary_search(&v).unwrap();
            let h = Graph::from_edges(
                verts.len(),
                chosen.iter().map(|&(u, v)| (index(u), index(v))),
            )
            .unwrap();
            if let Some(eta_big) = embed(&h, big, Mode::Subgraph) {
                found = Some((h, verts, eta_big));
            }
        });
        if let Some((h, ids, eta_big)) = found {
            let (eta1, eta2) = if g1_small { (ids, eta_big) } else { (eta_big, ids) };
            let cert = EmbeddingCertificate::new(Mode::Subgraph, h, eta1, eta2);
            return Ok((k, cert));
        }
    }
    unreachable!("the empty edge set always embeds")
}

/// All k-subsets of 0..n in lexicographic order.
fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let remaining = k - cur.len();
        for v in start..=(n - remaining) {
            cur.push(v);
            rec(n, k, v + 1, cur, f);
            cur.pop();
        }
    }
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    rec(n, k, 0, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;

    #[test]
    fn embed_examples() {
        let p3 = Graph::path(3);
        let k3 = Graph::complete(3);
        assert_eq!(embed(&p3, &k3, Mode::Subgraph), Some(vec![0, 1, 2]));
        assert_eq!(embed(&p3, &k3, Mode::Induced), None);
        let c4 = Graph::cycle(4);
        let k4 = Graph::complete(4);
        assert!(embed(&c4, &k4, Mode::Subgraph).is_some());
        assert_eq!(embed(&c4, &k4, Mode::Induced), None);
    }

    #[test]
    fn mcis_identity_and_examples() {
        let g = Graph::cycle(5);
        let (v, cert) = mcis_oracle(&g, &g, DEFAULT_MCIS_ORACLE_CAP).unwrap();
        assert_eq!(v, 5);
        assert_eq!(verify_certificate(&g, &g, &cert), Ok(()));

        let k3 = Graph::complete(3);
        let i3 = Graph::empty(3);
        assert_eq!(mcis_oracle(&k3, &i3, 10).unwrap().0, 1);

        let a = Graph::complete(2).disjoint_union(&Graph::complete(3));
        let b = Graph::complete(4).disjoint_union(&Graph::complete(1));
        let (v, cert) = mcis_oracle(&a, &b, 10).unwrap();
        assert_eq!(v, 4);
        assert_eq!(verify_certificate(&a, &b, &cert), Ok(()));
    }

    #[test]
    fn mcs_identity_and_examples() {
        let g = Graph::complete(4);
        let (v, cert) = mcs_oracle(&g, &g, DEFAULT_MCS_ORACLE_CAP).unwrap();
        assert_eq!(v, 6);
        assert_eq!(verify_certificate(&g, &g, &cert), Ok(()));

        assert_eq!(mcs_oracle(&Graph::complete(3), &Graph::empty(3), 12).unwrap().0, 0);

        let (v, cert) = mcs_oracle(&Graph::cycle(4), &Graph::path(4), 12).unwrap();
        assert_eq!(v, 3);
        assert_eq!(verify_certificate(&Graph::cycle(4), &Graph::path(4), &cert), Ok(()));
    }

    #[test]
    fn over_cap_is_an_error() {
        let g = Graph::complete(11);
        assert_eq!(
            mcis_oracle(&g, &g, 10).unwrap_err(),
            OracleError::OverCap { measure: 11, cap: 10 }
        );
        assert_eq!(
            mcs_oracle(&Graph::complete(6), &Graph::complete(6), 12).unwrap_err(),
            OracleError::OverCap { measure: 15, cap: 12 }
        );
    }

    #[test]
    fn oracle_is_symmetric_on_smalls() {
        let a = Graph::path(4);
        let b = Graph::cycle(4);
        assert_eq!(mcis_oracle(&a, &b, 10).unwrap().0, mcis_oracle(&b, &a, 10).unwrap().0);
        assert_eq!(mcs_oracle(&a, &b, 12).unwrap().0, mcs_oracle(&b, &a, 12).unwrap().0);
        assert_eq!(mcis_oracle(&a, &b, 10).unwrap().0, 3);
    }

    #[test]
    fn adding_isolated_vertex_bumps_mcis() {
        let a = Graph::path(3);
        let b = Graph::cycle(4);
        let base = mcis_oracle(&a, &b, 10).unwrap().0;
        let a2 = a.disjoint_union(&Graph::empty(1));
        let b2 = b.disjoint_union(&Graph::empty(1));
        assert_eq!(mcis_oracle(&a2, &b2, 10).unwrap().0, base + 1);
    }
}
