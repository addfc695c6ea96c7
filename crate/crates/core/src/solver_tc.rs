//! Maximum common induced subgraph parameterized by twin cover.
//!
//! Guesses the retained cover vertices on both sides, the image of a twin
//! cover `T` of the solution (free placements canonicalized to the smallest
//! cliques of each component class), cleans up vertices that cannot be in
//! the solution, and finishes each guess with one maximum-weight matching
//! between the residual clique components. Also contains the polynomial
//! special case for two cluster graphs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::certificate::{EmbeddingCertificate, Mode};
use crate::graph::Graph;
use crate::matching::{max_weight_matching_covering, MatchingInstance, MatchingOutcome};
use crate::params::minimum_twin_cover;
use crate::twins::are_twins;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TcError {
    #[error("prune_noncover precondition violated: T image is not a twin cover of G[S ∪ T]")]
    NotCoverOfUnion,
    #[error("input is not a disjoint union of complete graphs")]
    NotClusterGraph,
}

/// Result of [`mcis_tc`]; `min_cover_graph_size` is the smallest `|T|` over
/// all guesses that attain the optimum.
#[derive(Debug, Clone)]
pub struct TcSolution {
    pub size: usize,
    pub certificate: EmbeddingCertificate,
    pub min_cover_graph_size: usize,
}

/// `T_img` must be a twin cover of `G[S ∪ T_img]`. Repeatedly removes a
/// vertex `y ∉ S ∪ T_img` joined by a non-twin edge to some `x ∈ S \ T_img`
/// until `T_img` is a twin cover of the residual graph. Returns the residual
/// graph with the kept original vertex ids.
pub fn prune_noncover(
    g: &Graph,
    s: &BTreeSet<usize>,
    t_img: &BTreeSet<usize>,
) -> Result<(Graph, Vec<usize>), TcError> {
    {
        let union: Vec<usize> = s.union(t_img).copied().collect();
        let (sub, ids) = g.induced(&union);
        let t_local: BTreeSet<usize> = t_img
            .iter()
            .map(|&v| ids.binary_search(&v).expect("t in union"))
            .collect();
        if !is_twin_cover_of(&sub, &t_local) {
            return Err(TcError::NotCoverOfUnion);
        }
    }

    let mut cur = g.clone();
    let mut ids: Vec<usize> = g.vertices().collect();
    loop {
        let s_cur: BTreeSet<usize> = positions(&ids, s);
        let t_cur: BTreeSet<usize> = positions(&ids, t_img);
        let offender = cur.edges().into_iter().find(|&(a, b)| {
            if are_twins(&cur, a, b) {
                return false;
            }
            let a_in_s = s_cur.contains(&a) && !t_cur.contains(&a);
            let b_in_s = s_cur.contains(&b) && !t_cur.contains(&b);
            let a_out = !s_cur.contains(&a) && !t_cur.contains(&a);
            let b_out = !s_cur.contains(&b) && !t_cur.contains(&b);
            (a_in_s && b_out) || (b_in_s && a_out)
        });
        match offender {
            None => {
                debug_assert!(is_twin_cover_of(&cur, &t_cur));
                return Ok((cur, ids));
            }
            Some((a, b)) => {
                let y = if s_cur.contains(&a) { b } else { a };
                let (next, kept) = cur.without(&[y]);
                ids = kept.into_iter().map(|i| ids[i]).collect();
                cur = next;
            }
        }
    }
}

fn positions(ids: &[usize], originals: &BTreeSet<usize>) -> BTreeSet<usize> {
    ids.iter()
        .enumerate()
        .filter(|(_, v)| originals.contains(v))
        .map(|(i, _)| i)
        .collect()
}

fn is_twin_cover_of(g: &Graph, s: &BTreeSet<usize>) -> bool {
    g.edges()
        .into_iter()
        .all(|(u, v)| s.contains(&u) || s.contains(&v) || are_twins(g, u, v))
}

/// Exact MCIS of two cluster graphs: one maximum-weight matching between the
/// component sets with weight `min(|K1|, |K2|)` per pair.
pub fn mcis_cluster_graphs(
    g1: &Graph,
    g2: &Graph,
) -> Result<(usize, EmbeddingCertificate), TcError> {
    if !g1.is_cluster_graph() || !g2.is_cluster_graph() {
        return Err(TcError::NotClusterGraph);
    }
    let comps1 = g1.components();
    let comps2 = g2.components();
    let mut inst = MatchingInstance::new(comps1.len(), comps2.len());
    for (i, k1) in comps1.iter().enumerate() {
        for (j, k2) in comps2.iter().enumerate() {
            inst.set_weight(i, j, k1.len().min(k2.len()) as i64);
        }
    }
    match max_weight_matching_covering(&inst) {
        MatchingOutcome::Matched { pairs, weight } => {
            let mut h = Graph::empty(weight as usize);
            let mut eta1 = Vec::new();
            let mut eta2 = Vec::new();
            let mut at = 0usize;
            for (i, j) in pairs {
                let take = comps1[i].len().min(comps2[j].len());
                for a in at..at + take {
                    for b in (a + 1)..at + take {
                        h.add_edge(a, b).unwrap();
                    }
                }
                eta1.extend_from_slice(&comps1[i][..take]);
                eta2.extend_from_slice(&comps2[j][..take]);
                at += take;
            }
            let cert = EmbeddingCertificate::new(Mode::Induced, h, eta1, eta2);
            Ok((weight as usize, cert))
        }
        MatchingOutcome::Infeasible => unreachable!("no required vertices"),
    }
}

/// One candidate image of the solution's twin cover on one side.
#[derive(Debug, Clone)]
struct Placement {
    /// Sorted vertex set (indices of the retained graph).
    a: Vec<usize>,
    /// Vertices of components of `G - C` consumed by free placements but not
    /// themselves placed; excluded from the matching phase.
    leftover: BTreeSet<usize>,
    /// Sorted degree sequence of the induced subgraph, for pairing filters.
    degrees: Vec<usize>,
}

/// One side of the guess loop after removing the non-retained cover part.
struct Side {
    g: Graph,
    ids: Vec<usize>, // retained-graph index -> original vertex
    cover: BTreeSet<usize>,
    placements: Vec<Placement>,
}

/// Exact MCIS parameterized by the twin covers of both inputs.
pub fn mcis_tc(g1: &Graph, g2: &Graph) -> TcSolution {
    let s1: BTreeSet<usize> = minimum_twin_cover(g1).into_iter().collect();
    let s2: BTreeSet<usize> = minimum_twin_cover(g2).into_iter().collect();
    let budget = s1.len() + s2.len();

    let mut best_value = 0usize;
    let mut best_cert = EmbeddingCertificate::empty(Mode::Induced);
    let mut best_min_t = 0usize;

    let subsets = |s: &BTreeSet<usize>| -> Vec<BTreeSet<usize>> {
        let items: Vec<usize> = s.iter().copied().collect();
        (0..(1u32 << items.len()))
            .map(|mask| {
                items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect()
    };

    for keep1 in subsets(&s1) {
        let side1 = make_side(g1, &s1, &keep1, budget);
        for keep2 in subsets(&s2) {
            let side2 = make_side(g2, &s2, &keep2, budget);
            search_guess_pair(&side1, &side2, &mut best_value, &mut best_cert, &mut best_min_t);
        }
    }

    debug_assert!(crate::certificate::verify_certificate(g1, g2, &best_cert).is_ok());
    TcSolution { size: best_value, certificate: best_cert, min_cover_graph_size: best_min_t }
}

fn make_side(g: &Graph, s_full: &BTreeSet<usize>, keep: &BTreeSet<usize>, budget: usize) -> Side {
    let removed: Vec<usize> = s_full.difference(keep).copied().collect();
    let (gp, ids) = g.without(&removed);
    let cover: BTreeSet<usize> = positions(&ids, keep);
    let placements = enumerate_placements(&gp, &cover, budget);
    Side { g: gp, ids, cover, placements }
}

/// All candidate `T` images: any subset of the retained cover plus a free
/// part drawn from the components of `G - C`, canonicalized per component
/// class (grouped by neighborhood in `C`) to the smallest cliques, taking
/// lowest-index vertices. Placements whose set is not a twin cover of
/// `G[C ∪ A]` are rejected here.
fn enumerate_placements(g: &Graph, cover: &BTreeSet<usize>, budget: usize) -> Vec<Placement> {
    let comps = g.without(&cover.iter().copied().collect::<Vec<_>>());
    // components in original (retained-graph) labels
    let comp_sets: Vec<Vec<usize>> = {
        let (cg, cids) = comps;
        cg.components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| cids[v]).collect())
            .collect()
    };
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, comp) in comp_sets.iter().enumerate() {
        let mut x: Vec<usize> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|w| cover.contains(w))
            .collect();
        x.sort_unstable();
        x.dedup();
        classes.entry(x).or_default().push(i);
    }
    for members in classes.values_mut() {
        members.sort_by_key(|&i| (comp_sets[i].len(), comp_sets[i][0]));
    }
    let class_list: Vec<Vec<usize>> = classes.into_values().collect();

    let cover_items: Vec<usize> = cover.iter().copied().collect();
    let mut placements = Vec::new();
    for mask in 0..(1u32 << cover_items.len()) {
        let a_cov: Vec<usize> = cover_items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if a_cov.len() > budget {
            continue;
        }
        let left = budget - a_cov.len();
        let mut demand_sets = Vec::new();
        enumerate_demands(&class_list, &comp_sets, 0, left, &mut Vec::new(), &mut demand_sets);
        for (free, consumed) in demand_sets {
            let mut a: Vec<usize> = a_cov.iter().copied().chain(free).collect();
            a.sort_unstable();
            let a_set: BTreeSet<usize> = a.iter().copied().collect();
            // reject unless A is a twin cover of G[C ∪ A]
            let union: Vec<usize> = cover.union(&a_set).copied().collect();
            let (sub, sub_ids) = g.induced(&union);
            let a_local = positions(&sub_ids, &a_set);
            if !is_twin_cover_of(&sub, &a_local) {
                continue;
            }
            let mut leftover = BTreeSet::new();
            for &ci in &consumed {
                for &v in &comp_sets[ci] {
                    if !a_set.contains(&v) {
                        leftover.insert(v);
                    }
                }
            }
            let (ind, _) = g.induced(&a);
            let mut degrees: Vec<usize> = (0..ind.n()).map(|v| ind.degree(v)).collect();
            degrees.sort_unstable();
            placements.push(Placement { a, leftover, degrees });
        }
    }
    placements
}

/// Per class, non-increasing take vectors realized greedily on the smallest
/// member cliques; yields the free vertex set and the consumed components.
fn enumerate_demands(
    classes: &[Vec<usize>],
    comp_sets: &[Vec<usize>],
    at: usize,
    budget_left: usize,
    acc: &mut Vec<(Vec<usize>, Vec<usize>)>, // per class: (free vertices, consumed comps)
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    if at == classes.len() {
        let mut free = Vec::new();
        let mut consumed = Vec::new();
        for (f, c) in acc.iter() {
            free.extend_from_slice(f);
            consumed.extend_from_slice(c);
        }
        out.push((free, consumed));
        return;
    }
    let members = &classes[at];
    let mut demands: Vec<Vec<usize>> = Vec::new();
    gen_take_vectors(members.len(), budget_left, comp_sets, members, &mut Vec::new(), &mut demands);
    for d in demands {
        match realize(&d, members, comp_sets) {
            None => continue,
            Some((free, consumed)) => {
                let used: usize = d.iter().sum();
                acc.push((free, consumed));
                enumerate_demands(classes, comp_sets, at + 1, budget_left - used, acc, out);
                acc.pop();
            }
        }
    }
}

/// Non-increasing positive vectors with bounded sum and length.
fn gen_take_vectors(
    max_len: usize,
    budget: usize,
    comp_sets: &[Vec<usize>],
    members: &[usize],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(cur.clone());
    if cur.len() == max_len || budget == 0 {
        return;
    }
    let largest = members.iter().map(|&i| comp_sets[i].len()).max().unwrap_or(0);
    let cap = cur.last().copied().unwrap_or(usize::MAX).min(budget).min(largest);
    for d in (1..=cap).rev() {
        cur.push(d);
        gen_take_vectors(max_len, budget - d, comp_sets, members, cur, out);
        cur.pop();
    }
}

/// Greedy smallest-fitting-clique realization of a non-increasing demand
/// vector; takes the lowest-index vertices of each chosen component.
fn realize(
    demands: &[usize],
    members: &[usize],
    comp_sets: &[Vec<usize>],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut used = vec![false; members.len()];
    let mut free = Vec::new();
    let mut consumed = Vec::new();
    for &d in demands {
        // members are sorted by (size, min vertex)
        let slot = (0..members.len())
            .find(|&k| !used[k] && comp_sets[members[k]].len() >= d)?;
        used[slot] = true;
        let comp = &comp_sets[members[slot]];
        free.extend_from_slice(&comp[..d]);
        consumed.push(members[slot]);
    }
    Some((free, consumed))
}

fn search_guess_pair(
    side1: &Side,
    side2: &Side,
    best_value: &mut usize,
    best_cert: &mut EmbeddingCertificate,
    best_min_t: &mut usize,
) {
    for p1 in &side1.placements {
        for p2 in &side2.placements {
            if p1.a.len() != p2.a.len() || p1.degrees != p2.degrees {
                continue;
            }
            let t = p1.a.len();
            let gain_cap = (side1.g.n() - t).min(side2.g.n() - t);
            if t + gain_cap < *best_value {
                continue;
            }
            let mut phi = vec![usize::MAX; t];
            let mut used = vec![false; t];
            enumerate_isos(side1, side2, p1, p2, 0, &mut phi, &mut used, &mut |phi| {
                finish_guess(side1, side2, p1, p2, phi, best_value, best_cert, best_min_t);
            });
        }
    }
}

/// All isomorphisms between the subgraphs induced by the two placements,
/// as index maps `p1.a[i] -> p2.a[phi[i]]`.
#[allow(clippy::too_many_arguments)]
fn enumerate_isos(
    side1: &Side,
    side2: &Side,
    p1: &Placement,
    p2: &Placement,
    i: usize,
    phi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    f: &mut impl FnMut(&[usize]),
) {
    let t = p1.a.len();
    if i == t {
        f(phi);
        return;
    }
    'cand: for j in 0..t {
        if used[j] {
            continue;
        }
        for k in 0..i {
            let e1 = side1.g.has_edge(p1.a[i], p1.a[k]);
            let e2 = side2.g.has_edge(p2.a[j], p2.a[phi[k]]);
            if e1 != e2 {
                continue 'cand;
            }
        }
        phi[i] = j;
        used[j] = true;
        enumerate_isos(side1, side2, p1, p2, i + 1, phi, used, f);
        used[j] = false;
        phi[i] = usize::MAX;
    }
}

#[allow(clippy::too_many_arguments)]
fn finish_guess(
    side1: &Side,
    side2: &Side,
    p1: &Placement,
    p2: &Placement,
    phi: &[usize],
    best_value: &mut usize,
    best_cert: &mut EmbeddingCertificate,
    best_min_t: &mut usize,
) {
    let t = p1.a.len();
    let a1: BTreeSet<usize> = p1.a.iter().copied().collect();
    let a2: BTreeSet<usize> = p2.a.iter().copied().collect();
    let Ok((gc1, kept1)) = prune_noncover(&side1.g, &side1.cover, &a1) else { return };
    let Ok((gc2, kept2)) = prune_noncover(&side2.g, &side2.cover, &a2) else { return };

    // Residual components outside T on both sides, with leftovers of
    // consumed components excluded so that a touched component hosts only T.
    let comps1 = residual_components(&gc1, &kept1, &a1, &p1.leftover, &side1.cover, &p1.a);
    let comps2 = residual_components(&gc2, &kept2, &a2, &p2.leftover, &side2.cover, &p2.a);

    let mut inst = MatchingInstance::new(comps1.len(), comps2.len());
    for (i, c1) in comps1.iter().enumerate() {
        if c1.special {
            inst.require_left(i);
        }
    }
    for (j, c2) in comps2.iter().enumerate() {
        if c2.special {
            inst.require_right(j);
        }
    }
    // transport side-2 labels through phi to compare neighborhoods
    for (i, c1) in comps1.iter().enumerate() {
        for (j, c2) in comps2.iter().enumerate() {
            let mapped: BTreeSet<usize> = c1.nbr_labels.iter().map(|&l| phi[l]).collect();
            if mapped != c2.nbr_labels {
                continue;
            }
            let w = c1.verts.len().min(c2.verts.len());
            // a matched pair must be able to host every retained cover vertex
            if w < c1.cover_count || w < c2.cover_count {
                continue;
            }
            inst.set_weight(i, j, w as i64);
        }
    }
    let MatchingOutcome::Matched { pairs, weight } = max_weight_matching_covering(&inst) else {
        return;
    };

    let value = t + weight as usize;
    if value < *best_value {
        return;
    }
    if value == *best_value {
        *best_min_t = (*best_min_t).min(t);
        return;
    }

    // strictly better: build the certificate
    let mut h = Graph::empty(value);
    for i in 0..t {
        for k in (i + 1)..t {
            if side1.g.has_edge(p1.a[i], p1.a[k]) {
                h.add_edge(i, k).unwrap();
            }
        }
    }
    let mut eta1: Vec<usize> = p1.a.iter().map(|&v| side1.ids[v]).collect();
    let mut eta2: Vec<usize> = phi.iter().map(|&j| side2.ids[p2.a[j]]).collect();
    let mut at = t;
    for (i, j) in pairs {
        let c1 = &comps1[i];
        let c2 = &comps2[j];
        let take = c1.verts.len().min(c2.verts.len());
        for x in at..at + take {
            for y in (x + 1)..at + take {
                h.add_edge(x, y).unwrap();
            }
            for &l in &c1.nbr_labels {
                h.add_edge(x, l).unwrap();
            }
        }
        eta1.extend(c1.verts[..take].iter().map(|&v| side1.ids[v]));
        eta2.extend(c2.verts[..take].iter().map(|&v| side2.ids[v]));
        at += take;
    }
    *best_value = value;
    *best_cert = EmbeddingCertificate::new(Mode::Induced, h, eta1, eta2);
    *best_min_t = t;
}

struct ResidualComp {
    /// Vertices in retained-graph labels, retained cover vertices first,
    /// ascending within each part.
    verts: Vec<usize>,
    /// Neighborhood as T labels (positions in the placement's sorted set).
    nbr_labels: BTreeSet<usize>,
    special: bool,
    cover_count: usize,
}

fn residual_components(
    gc: &Graph,
    kept: &[usize],
    a: &BTreeSet<usize>,
    leftover: &BTreeSet<usize>,
    cover: &BTreeSet<usize>,
    a_sorted: &[usize],
) -> Vec<ResidualComp> {
    let a_local: Vec<usize> = kept
        .iter()
        .enumerate()
        .filter(|(_, v)| a.contains(v))
        .map(|(i, _)| i)
        .collect();
    let (rest, rest_ids) = gc.without(&a_local);
    let mut out = Vec::new();
    for comp in rest.components() {
        let verts_gp: Vec<usize> = comp.iter().map(|&v| kept[rest_ids[v]]).collect();
        if verts_gp.iter().any(|v| leftover.contains(v)) {
            continue;
        }
        let mut nbr_labels = BTreeSet::new();
        for &v in &verts_gp {
            // neighbors within the cleaned graph
            let v_local = kept.binary_search(&v).unwrap();
            for &w_local in gc.neighbors(v_local) {
                let w = kept[w_local];
                if a.contains(&w) {
                    nbr_labels.insert(a_sorted.binary_search(&w).unwrap());
                }
            }
        }
        let cover_count = verts_gp.iter().filter(|v| cover.contains(v)).count();
        let mut verts: Vec<usize> = verts_gp.clone();
        verts.sort_by_key(|v| (!cover.contains(v), *v));
        out.push(ResidualComp { verts, nbr_labels, special: cover_count > 0, cover_count });
    }
    out
}
