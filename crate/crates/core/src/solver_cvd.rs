//! Maximum common induced subgraph parameterized by cluster vertex deletion:
//! the XP search over matched deletion-set extensions and the
//! (1-eps)-approximation scheme built on twin-class truncation.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::certificate::{EmbeddingCertificate, Mode};
use crate::graph::Graph;
use crate::matching::{max_weight_matching_covering, MatchingInstance, MatchingOutcome};
use crate::oracle;
use crate::params::minimum_cluster_deletion;
use crate::solver_tc;
use crate::twins::twin_classes;

/// Default cap on explored (R1, R2, phi) guesses in the XP search.
pub const DEFAULT_CVD_GUESS_CAP: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CvdError {
    #[error("guess cap exceeded after {guesses} guesses (cap {cap})")]
    GuessCap { guesses: u64, cap: u64 },
    #[error("approximation sub-solve infeasible: {0}")]
    SubSolve(String),
    #[error("epsilon must satisfy 0 < eps < 1")]
    BadEpsilon,
}

/// Rational accuracy parameter in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eps {
    pub num: u64,
    pub den: u64,
}

impl Eps {
    pub fn new(num: u64, den: u64) -> Result<Self, CvdError> {
        if num == 0 || den == 0 || num >= den {
            return Err(CvdError::BadEpsilon);
        }
        Ok(Eps { num, den })
    }

    /// Parses "1/4" or a decimal like "0.25".
    pub fn parse(text: &str) -> Result<Self, CvdError> {
        if let Some((a, b)) = text.split_once('/') {
            let num: u64 = a.trim().parse().map_err(|_| CvdError::BadEpsilon)?;
            let den: u64 = b.trim().parse().map_err(|_| CvdError::BadEpsilon)?;
            return Eps::new(num, den);
        }
        if let Some(frac) = text.strip_prefix("0.").or_else(|| text.strip_prefix(".")) {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 9 {
                return Err(CvdError::BadEpsilon);
            }
            let num: u64 = frac.parse().map_err(|_| CvdError::BadEpsilon)?;
            let den = 10u64.pow(frac.len() as u32);
            return Eps::new(num, den);
        }
        Err(CvdError::BadEpsilon)
    }

    /// ceil(2 * p / eps)
    pub fn class_cap(&self, p: usize) -> usize {
        let num = 2 * p as u64 * self.den;
        (num.div_ceil(self.num)) as usize
    }
}

/// Exact MCIS via the XP search: guess the deleted cover vertices, the
/// partner sets matched with the remaining covers, and the bijection between
/// both augmented deletion sets, then match residual clique components with
/// the pair-gain weights.
pub fn mcis_cvd_xp(
    g1: &Graph,
    g2: &Graph,
    guess_cap: u64,
) -> Result<(usize, EmbeddingCertificate), CvdError> {
    let s1 = minimum_cluster_deletion(g1);
    let s2 = minimum_cluster_deletion(g2);

    let mut best_value = 0usize;
    let mut best_cert = EmbeddingCertificate::empty(Mode::Induced);
    let mut guesses = 0u64;

    for mask1 in 0..(1u32 << s1.len()) {
        let drop1: Vec<usize> =
            s1.iter().enumerate().filter(|(i, _)| mask1 >> i & 1 == 1).map(|(_, &v)| v).collect();
        let (g1p, ids1) = g1.without(&drop1);
        let c1: BTreeSet<usize> = locate(&ids1, s1.iter().filter(|v| !drop1.contains(v)));
        for mask2 in 0..(1u32 << s2.len()) {
            let drop2: Vec<usize> = s2
                .iter()
                .enumerate()
                .filter(|(i, _)| mask2 >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let (g2p, ids2) = g2.without(&drop2);
            let c2: BTreeSet<usize> = locate(&ids2, s2.iter().filter(|v| !drop2.contains(v)));

            search_removal_guess(
                &g1p,
                &ids1,
                &c1,
                &g2p,
                &ids2,
                &c2,
                guess_cap,
                &mut guesses,
                &mut best_value,
                &mut best_cert,
            )?;
        }
    }
    debug_assert!(crate::certificate::verify_certificate(g1, g2, &best_cert).is_ok());
    Ok((best_value, best_cert))
}

fn locate<'a>(ids: &[usize], originals: impl Iterator<Item = &'a usize>) -> BTreeSet<usize> {
    let set: BTreeSet<usize> = originals.copied().collect();
    ids.iter().enumerate().filter(|(_, v)| set.contains(v)).map(|(i, _)| i).collect()
}

#[allow(clippy::too_many_arguments)]
fn search_removal_guess(
    g1: &Graph,
    ids1: &[usize],
    c1: &BTreeSet<usize>,
    g2: &Graph,
    ids2: &[usize],
    c2: &BTreeSet<usize>,
    guess_cap: u64,
    guesses: &mut u64,
    best_value: &mut usize,
    best_cert: &mut EmbeddingCertificate,
) -> Result<(), CvdError> {
    let free1: Vec<usize> = g1.vertices().filter(|v| !c1.contains(v)).collect();
    let free2: Vec<usize> = g2.vertices().filter(|v| !c2.contains(v)).collect();

    let mut r1_choices = Vec::new();
    subsets_up_to(&free1, c2.len(), &mut r1_choices);
    let mut r2_choices = Vec::new();
    subsets_up_to(&free2, c1.len(), &mut r2_choices);

    for r1 in &r1_choices {
        for r2 in &r2_choices {
            let d1_len = c1.len() + r1.len();
            let d2_len = c2.len() + r2.len();
            if d1_len != d2_len {
                continue;
            }
            // |phi(C1) ∩ C2| is forced from both sides; the counts must agree.
            if c1.len() < r2.len() || c2.len() < r1.len() || c1.len() - r2.len() != c2.len() - r1.len()
            {
                continue;
            }
            let d1: Vec<usize> = c1.iter().copied().chain(r1.iter().copied()).collect();
            let d2: Vec<usize> = c2.iter().copied().chain(r2.iter().copied()).collect();
            let mut d1_sorted = d1.clone();
            d1_sorted.sort_unstable();
            let mut d2_sorted = d2.clone();
            d2_sorted.sort_unstable();
            if sorted_induced_degrees(g1, &d1_sorted) != sorted_induced_degrees(g2, &d2_sorted) {
                continue;
            }

            *guesses += 1;
            if *guesses > guess_cap {
                return Err(CvdError::GuessCap { guesses: *guesses, cap: guess_cap });
            }

            let r1_set: BTreeSet<usize> = r1.iter().copied().collect();
            let r2_set: BTreeSet<usize> = r2.iter().copied().collect();
            let mut phi = vec![usize::MAX; d1_sorted.len()];
            let mut used = vec![false; d2_sorted.len()];
            enumerate_phis(
                g1,
                g2,
                &d1_sorted,
                &d2_sorted,
                c1,
                c2,
                &r1_set,
                &r2_set,
                0,
                &mut phi,
                &mut used,
                guesses,
                guess_cap,
                &mut |phi| {
                    finish_cvd_guess(
                        g1, ids1, g2, ids2, &d1_sorted, &d2_sorted, phi, best_value, best_cert,
                    );
                },
            )?;
        }
    }
    Ok(())
}

fn subsets_up_to(items: &[usize], max_len: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(items: &[usize], max_len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, max_len, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, max_len, 0, &mut Vec::new(), out);
}

fn sorted_induced_degrees(g: &Graph, verts: &[usize]) -> Vec<usize> {
    let mut degs: Vec<usize> = verts
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|w| verts.binary_search(w).is_ok()).count())
        .collect();
    degs.sort_unstable();
    degs
}

/// Isomorphisms `G1[D1] -> G2[D2]` respecting the partner-set structure:
/// R1 maps into C2 and only C1 may map onto R2.
#[allow(clippy::too_many_arguments)]
fn enumerate_phis(
    g1: &Graph,
    g2: &Graph,
    d1: &[usize],
    d2: &[usize],
    c1: &BTreeSet<usize>,
    c2: &BTreeSet<usize>,
    r1: &BTreeSet<usize>,
    r2: &BTreeSet<usize>,
    i: usize,
    phi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    guesses: &mut u64,
    guess_cap: u64,
    f: &mut impl FnMut(&[usize]),
) -> Result<(), CvdError> {
    if i == d1.len() {
        *guesses += 1;
        if *guesses > guess_cap {
            return Err(CvdError::GuessCap { guesses: *guesses, cap: guess_cap });
        }
        f(phi);
        return Ok(());
    }
    let v1 = d1[i];
    'cand: for (j, &v2) in d2.iter().enumerate() {
        if used[j] {
            continue;
        }
        if r1.contains(&v1) && !c2.contains(&v2) {
            continue; // R1 is matched with S2
        }
        if r2.contains(&v2) && !c1.contains(&v1) {
            continue; // R2 is matched with S1
        }
        for k in 0..i {
            if g1.has_edge(v1, d1[k]) != g2.has_edge(v2, d2[phi[k]]) {
                continue 'cand;
            }
        }
        phi[i] = j;
        used[j] = true;
        enumerate_phis(g1, g2, d1, d2, c1, c2, r1, r2, i + 1, phi, used, guesses, guess_cap, f)?;
        used[j] = false;
        phi[i] = usize::MAX;
    }
    Ok(())
}

/// Number of vertices gained by matching the clique components `k1` and
/// `k2`: the sum over neighborhoods `X` inside the first base set of
/// `min(#{v in k1 : N(v) ∩ base1 = X}, #{v in k2 : N(v) ∩ base2 = phi(X)})`.
pub fn pair_gain(
    g1: &Graph,
    k1: &[usize],
    g2: &Graph,
    k2: &[usize],
    base1: &[usize],
    base2: &[usize],
    phi: &BTreeMap<usize, usize>,
) -> usize {
    let buckets1 = bucket_by_base(g1, k1, base1);
    let buckets2 = bucket_by_base(g2, k2, base2);
    let mut total = 0;
    for (x, verts1) in &buckets1 {
        let mapped: BTreeSet<usize> = x.iter().map(|v| phi[v]).collect();
        if let Some(verts2) = buckets2.get(&mapped) {
            total += verts1.len().min(verts2.len());
        }
    }
    total
}

fn bucket_by_base(
    g: &Graph,
    comp: &[usize],
    base: &[usize],
) -> BTreeMap<BTreeSet<usize>, Vec<usize>> {
    let base_set: BTreeSet<usize> = base.iter().copied().collect();
    let mut out: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for &v in comp {
        let x: BTreeSet<usize> =
            g.neighbors(v).iter().copied().filter(|w| base_set.contains(w)).collect();
        out.entry(x).or_default().push(v);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn finish_cvd_guess(
    g1: &Graph,
    ids1: &[usize],
    g2: &Graph,
    ids2: &[usize],
    d1: &[usize],
    d2: &[usize],
    phi_idx: &[usize],
    best_value: &mut usize,
    best_cert: &mut EmbeddingCertificate,
) {
    let phi: BTreeMap<usize, usize> =
        d1.iter().enumerate().map(|(i, &v)| (v, d2[phi_idx[i]])).collect();

    let (rest1, rids1) = g1.without(d1);
    let (rest2, rids2) = g2.without(d2);
    let comps1: Vec<Vec<usize>> = rest1
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|v| rids1[v]).collect())
        .collect();
    let comps2: Vec<Vec<usize>> = rest2
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|v| rids2[v]).collect())
        .collect();

    let mut inst = MatchingInstance::new(comps1.len().max(1), comps2.len().max(1));
    for (i, k1) in comps1.iter().enumerate() {
        for (j, k2) in comps2.iter().enumerate() {
            let w = pair_gain(g1, k1, g2, k2, d1, d2, &phi);
            inst.set_weight(i, j, w as i64);
        }
    }
    let MatchingOutcome::Matched { pairs, weight } = max_weight_matching_covering(&inst) else {
        return;
    };
    let value = d1.len() + weight as usize;
    if value <= *best_value {
        return;
    }

    // build certificate: D part first, then per-pair bucket draws
    let t = d1.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..t {
        for k in (i + 1)..t {
            if g1.has_edge(d1[i], d1[k]) {
                edges.push((i, k));
            }
        }
    }
    let mut eta1: Vec<usize> = d1.iter().map(|&v| ids1[v]).collect();
    let mut eta2: Vec<usize> = d1.iter().map(|&v| ids2[phi[&v]]).collect();
    let label_of = |v: usize| d1.binary_search(&v).unwrap();

    let mut at = t;
    for (i, j) in pairs {
        if comps1.is_empty() || comps2.is_empty() {
            break;
        }
        let buckets1 = bucket_by_base(g1, &comps1[i], d1);
        let buckets2 = bucket_by_base(g2, &comps2[j], d2);
        let block_start = at;
        for (x, verts1) in &buckets1 {
            let mapped: BTreeSet<usize> = x.iter().map(|v| phi[v]).collect();
            let Some(verts2) = buckets2.get(&mapped) else { continue };
            let take = verts1.len().min(verts2.len());
            for s in 0..take {
                let hv = at;
                for &b in x {
                    edges.push((label_of(b).min(hv), hv.max(label_of(b))));
                }
                eta1.push(ids1[verts1[s]]);
                eta2.push(ids2[verts2[s]]);
                at += 1;
            }
        }
        for a in block_start..at {
            for b in (a + 1)..at {
                edges.push((a, b)); // the component blocks are cliques
            }
        }
    }
    let h = Graph::from_edges(at, edges).unwrap();
    let cert = EmbeddingCertificate::new(Mode::Induced, h, eta1, eta2);
    debug_assert_eq!(at, value);
    *best_value = value;
    *best_cert = cert;
}

/// Induced subgraph keeping at most `cap` lowest-index vertices per twin class.
pub fn truncate_twin_classes(g: &Graph, cap: usize) -> (Graph, Vec<usize>) {
    assert!(cap >= 1);
    let classes = twin_classes(g);
    let mut keep = Vec::new();
    for class in classes.classes() {
        keep.extend_from_slice(&class[..class.len().min(cap)]);
    }
    keep.sort_unstable();
    g.induced(&keep)
}

/// Which exact solver the truncation branch of the approximation dispatches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApproxBackend {
    #[default]
    Oracle,
    TwinCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxBranch {
    /// Exact solve of the twin-class truncations.
    TruncatedExact,
    /// MCIS of the cluster remainders after deleting both CVD sets.
    ClusterRemainder,
}

#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub value: usize,
    pub certificate: EmbeddingCertificate,
    pub branch: ApproxBranch,
    /// Per-class truncation cap used by the exact branch; `None` when the
    /// inputs are already cluster graphs (p = 0).
    pub class_cap: Option<usize>,
}

/// (1-eps)-approximation: the better of an exact solve on the twin-class
/// truncations (cap `ceil(2p/eps)`, `p = max(cvd(G1), cvd(G2))`) and the
/// exact cluster MCIS of both graphs minus their deletion sets.
pub fn mcis_cvd_approx(
    g1: &Graph,
    g2: &Graph,
    eps: Eps,
    backend: ApproxBackend,
) -> Result<ApproxResult, CvdError> {
    let s1 = minimum_cluster_deletion(g1);
    let s2 = minimum_cluster_deletion(g2);
    let p = s1.len().max(s2.len());

    if p == 0 {
        let (value, certificate) =
            solver_tc::mcis_cluster_graphs(g1, g2).expect("cvd 0 means cluster graphs");
        return Ok(ApproxResult {
            value,
            certificate,
            branch: ApproxBranch::ClusterRemainder,
            class_cap: None,
        });
    }

    let cap = eps.class_cap(p);
    let (t1, tids1) = truncate_twin_classes(g1, cap);
    let (t2, tids2) = truncate_twin_classes(g2, cap);
    let (a_value, a_cert_local) = match backend {
        ApproxBackend::Oracle => oracle::mcis_oracle(&t1, &t2, oracle::DEFAULT_MCIS_ORACLE_CAP)
            .map_err(|e| CvdError::SubSolve(e.to_string()))?,
        ApproxBackend::TwinCover => {
            let sol = solver_tc::mcis_tc(&t1, &t2);
            (sol.size, sol.certificate)
        }
    };
    let a_cert = EmbeddingCertificate::new(
        Mode::Induced,
        a_cert_local.h.clone(),
        a_cert_local.eta1.iter().map(|&v| tids1[v]).collect(),
        a_cert_local.eta2.iter().map(|&v| tids2[v]).collect(),
    );

    let (r1, rids1) = g1.without(&s1);
    let (r2, rids2) = g2.without(&s2);
    let (b_value, b_cert_local) =
        solver_tc::mcis_cluster_graphs(&r1, &r2).expect("remainders are cluster graphs");
    let b_cert = EmbeddingCertificate::new(
        Mode::Induced,
        b_cert_local.h.clone(),
        b_cert_local.eta1.iter().map(|&v| rids1[v]).collect(),
        b_cert_local.eta2.iter().map(|&v| rids2[v]).collect(),
    );

    Ok(if a_value >= b_value {
        ApproxResult {
            value: a_value,
            certificate: a_cert,
            branch: ApproxBranch::TruncatedExact,
            class_cap: Some(cap),
        }
    } else {
        ApproxResult {
            value: b_value,
            certificate: b_cert,
            branch: ApproxBranch::ClusterRemainder,
            class_cap: Some(cap),
        }
    })
}
