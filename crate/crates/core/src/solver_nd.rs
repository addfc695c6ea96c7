//! MCIS and MCS parameterized by neighborhood diversity, over the variable
//! grid `x[i][j] = |X_{i,j}|` counting solution vertices drawn from twin
//! class `i` of the first graph and class `j` of the second.
//!
//! The induced solver branches every cell into `x = 0`, `x = 1`, `x >= 2`,
//! rejects branches where the two sides disagree (inside one cell, or on the
//! connection between two nonzero cells), and solves one bounded ILP per
//! surviving branch. The subgraph solver needs no branching: one integer
//! quadratic program whose objective doubles the edge count.

use thiserror::Error;

use crate::certificate::{EmbeddingCertificate, Mode};
use crate::graph::Graph;
use crate::ipsolve::{solve_ip, BoundedIntegerProgram, IpOutcome};
use crate::twins::{twin_classes, TwinClassPartition};

/// Default cap compared against `3^(p*q)` before branching.
pub const DEFAULT_ND_BRANCH_CAP: u64 = 50_000_000;
/// Default cap on `p*q` for the quadratic program.
pub const DEFAULT_ND_VAR_CAP: usize = 24;
/// Node cap handed to the integer-program solver per (sub)problem.
const IP_NODES: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NdError {
    #[error("3^(p*q) = 3^{pq} exceeds the branch cap {cap}")]
    BranchCap { pq: usize, cap: u64 },
    #[error("p*q = {pq} exceeds the variable cap {cap}")]
    VarCap { pq: usize, cap: usize },
    #[error("integer program solver gave up: {0}")]
    IpResource(String),
}

struct NdModel {
    p1: TwinClassPartition,
    p2: TwinClassPartition,
}

impl NdModel {
    fn new(g1: &Graph, g2: &Graph) -> Self {
        NdModel { p1: twin_classes(g1), p2: twin_classes(g2) }
    }

    fn p(&self) -> usize {
        self.p1.len()
    }

    fn q(&self) -> usize {
        self.p2.len()
    }

    fn cell_bound(&self, i: usize, j: usize) -> i64 {
        self.p1.class(i).len().min(self.p2.class(j).len()) as i64
    }

    /// Both sides agree that two (possibly equal) cells see each other.
    fn doubly_adjacent(&self, a: (usize, usize), b: (usize, usize)) -> Option<bool> {
        let rows = self.p1.adjacent_pair(a.0, b.0);
        let cols = self.p2.adjacent_pair(a.1, b.1);
        if rows == cols {
            Some(rows)
        } else {
            None // the sides disagree
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CellBranch {
    Zero,
    One,
    TwoPlus,
}

/// Exact MCIS via `3^(p*q)` branches with incremental rejection.
pub fn mcis_nd(
    g1: &Graph,
    g2: &Graph,
    branch_cap: u64,
) -> Result<(usize, EmbeddingCertificate), NdError> {
    let model = NdModel::new(g1, g2);
    let pq = model.p() * model.q();
    let branches = 3u64.checked_pow(pq.min(63) as u32).unwrap_or(u64::MAX);
    if branches > branch_cap {
        return Err(NdError::BranchCap { pq, cap: branch_cap });
    }

    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut fixed: Vec<CellBranch> = Vec::with_capacity(pq);
    branch_cells(&model, &mut fixed, &mut best)?;

    match best {
        None => Ok((0, EmbeddingCertificate::empty(Mode::Induced))),
        Some((value, assignment)) => {
            let cert = materialize(&model, g1, g2, &assignment, Mode::Induced);
            debug_assert!(crate::certificate::verify_certificate(g1, g2, &cert).is_ok());
            Ok((value, cert))
        }
    }
}

fn branch_cells(
    model: &NdModel,
    fixed: &mut Vec<CellBranch>,
    best: &mut Option<(usize, Vec<i64>)>,
) -> Result<(), NdError> {
    let q = model.q();
    let pq = model.p() * q;
    let at = fixed.len();
    if at == pq {
        return solve_branch(model, fixed, best);
    }
    let cell = (at / q, at % q);
    'options: for opt in [CellBranch::TwoPlus, CellBranch::One, CellBranch::Zero] {
        match opt {
            CellBranch::Zero => {}
            CellBranch::One | CellBranch::TwoPlus => {
                if opt == CellBranch::TwoPlus {
                    if model.cell_bound(cell.0, cell.1) < 2 {
                        continue 'options;
                    }
                    // the two sides must agree inside the cell
                    if model.p1.is_clique(cell.0) != model.p2.is_clique(cell.1) {
                        continue 'options;
                    }
                }
                // connection agreement against every earlier nonzero cell
                for (k, &b) in fixed.iter().enumerate() {
                    if b == CellBranch::Zero {
                        continue;
                    }
                    let other = (k / q, k % q);
                    if model.doubly_adjacent(other, cell).is_none() {
                        continue 'options;
                    }
                }
            }
        }
        fixed.push(opt);
        branch_cells(model, fixed, best)?;
        fixed.pop();
    }
    Ok(())
}

fn solve_branch(
    model: &NdModel,
    fixed: &[CellBranch],
    best: &mut Option<(usize, Vec<i64>)>,
) -> Result<(), NdError> {
    let (p, q) = (model.p(), model.q());
    // quick upper bound before building the program
    let ub: i64 = (0..p * q)
        .map(|k| match fixed[k] {
            CellBranch::Zero => 0,
            CellBranch::One => 1,
            CellBranch::TwoPlus => model.cell_bound(k / q, k % q),
        })
        .sum();
    if let Some((bv, _)) = best {
        if ub as usize <= *bv {
            return Ok(());
        }
    }

    let mut prog = BoundedIntegerProgram::new();
    for k in 0..p * q {
        let cap = model.cell_bound(k / q, k % q);
        let (lo, hi) = match fixed[k] {
            CellBranch::Zero => (0, 0),
            CellBranch::One => (1, 1),
            CellBranch::TwoPlus => (2, cap),
        };
        if lo > hi {
            return Ok(()); // branch infeasible outright
        }
        let v = prog.add_var(lo, hi);
        prog.set_linear(v, 1);
    }
    for i in 0..p {
        let coeffs: Vec<(usize, i64)> = (0..q).map(|j| (i * q + j, 1)).collect();
        prog.add_le(coeffs, model.p1.class(i).len() as i64);
    }
    for j in 0..q {
        let coeffs: Vec<(usize, i64)> = (0..p).map(|i| (i * q + j, 1)).collect();
        prog.add_le(coeffs, model.p2.class(j).len() as i64);
    }

    match solve_ip(&prog, IP_NODES).map_err(|e| NdError::IpResource(e.to_string()))? {
        IpOutcome::Infeasible => Ok(()),
        IpOutcome::Optimal { assignment, value } => {
            let value = value as usize;
            if best.as_ref().map_or(true, |(bv, _)| value > *bv) {
                *best = Some((value, assignment));
            }
            Ok(())
        }
    }
}

/// Exact MCS via one integer quadratic program; the objective counts each
/// solution edge twice so that all coefficients stay integral.
pub fn mcs_nd(
    g1: &Graph,
    g2: &Graph,
    var_cap: usize,
) -> Result<(usize, EmbeddingCertificate), NdError> {
    let model = NdModel::new(g1, g2);
    let (p, q) = (model.p(), model.q());
    let pq = p * q;
    if pq > var_cap {
        return Err(NdError::VarCap { pq, cap: var_cap });
    }

    let mut prog = BoundedIntegerProgram::new();
    for k in 0..pq {
        let v = prog.add_var(0, model.cell_bound(k / q, k % q));
        prog.set_linear(v, 0);
    }
    for i in 0..p {
        let coeffs: Vec<(usize, i64)> = (0..q).map(|j| (i * q + j, 1)).collect();
        prog.add_le(coeffs, model.p1.class(i).len() as i64);
    }
    for j in 0..q {
        let coeffs: Vec<(usize, i64)> = (0..p).map(|i| (i * q + j, 1)).collect();
        prog.add_le(coeffs, model.p2.class(j).len() as i64);
    }
    for a in 0..pq {
        let ca = (a / q, a % q);
        // x(x-1) inside a cell both sides call a clique
        if model.p1.is_clique(ca.0) && model.p2.is_clique(ca.1) {
            prog.add_quadratic(a, a, 1);
            prog.set_linear(a, -1);
        }
        for b in (a + 1)..pq {
            let cb = (b / q, b % q);
            if model.doubly_adjacent(ca, cb) == Some(true) {
                prog.add_quadratic(a, b, 2);
            }
        }
    }

    match solve_ip(&prog, IP_NODES).map_err(|e| NdError::IpResource(e.to_string()))? {
        IpOutcome::Infeasible => unreachable!("the zero assignment is feasible"),
        IpOutcome::Optimal { assignment, value } => {
            debug_assert!(value >= 0 && value % 2 == 0, "doubled edge count must be even");
            let cert = materialize(&model, g1, g2, &assignment, Mode::Subgraph);
            debug_assert!(crate::certificate::verify_certificate(g1, g2, &cert).is_ok());
            Ok(((value / 2) as usize, cert))
        }
    }
}

/// Draw `x[i][j]` lowest-index unused vertices from each side's class and
/// connect drawn cells exactly where both sides agree on adjacency. In
/// subgraph mode, vertices that end up isolated are dropped.
fn materialize(
    model: &NdModel,
    g1: &Graph,
    g2: &Graph,
    assignment: &[i64],
    mode: Mode,
) -> EmbeddingCertificate {
    let q = model.q();
    let mut cursor1 = vec![0usize; model.p()];
    let mut cursor2 = vec![0usize; model.q()];
    let mut cell_of: Vec<(usize, usize)> = Vec::new();
    let mut eta1 = Vec::new();
    let mut eta2 = Vec::new();
    for (k, &x) in assignment.iter().enumerate() {
        let (i, j) = (k / q, k % q);
        for _ in 0..x {
            cell_of.push((i, j));
            eta1.push(model.p1.class(i)[cursor1[i]]);
            eta2.push(model.p2.class(j)[cursor2[j]]);
            cursor1[i] += 1;
            cursor2[j] += 1;
        }
    }
    let n = cell_of.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if model.doubly_adjacent(cell_of[a], cell_of[b]) == Some(true) {
                edges.push((a, b));
            }
        }
    }

    if mode == Mode::Subgraph {
        // keep only vertices carrying edges
        let mut keep = vec![false; n];
        for &(a, b) in &edges {
            keep[a] = true;
            keep[b] = true;
        }
        let map: Vec<usize> = {
            let mut m = Vec::new();
            let mut next = 0;
            for k in keep.iter() {
                m.push(next);
                if *k {
                    next += 1;
                }
            }
            m
        };
        let kept = keep.iter().filter(|k| **k).count();
        let h = Graph::from_edges(kept, edges.into_iter().map(|(a, b)| (map[a], map[b]))).unwrap();
        let e1: Vec<usize> =
            (0..n).filter(|&v| keep[v]).map(|v| eta1[v]).collect();
        let e2: Vec<usize> =
            (0..n).filter(|&v| keep[v]).map(|v| eta2[v]).collect();
        EmbeddingCertificate::new(mode, h, e1, e2)
    } else {
        let h = Graph::from_edges(n, edges).unwrap();
        EmbeddingCertificate::new(mode, h, eta1, eta2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use crate::oracle::{mcis_oracle, mcs_oracle};

    #[test]
    fn cliques() {
        let (v, _) = mcis_nd(&Graph::complete(4), &Graph::complete(6), DEFAULT_ND_BRANCH_CAP).unwrap();
        assert_eq!(v, 4);
        let (v, _) = mcs_nd(&Graph::complete(4), &Graph::complete(6), DEFAULT_ND_VAR_CAP).unwrap();
        assert_eq!(v, 6); // C(4,2)
    }

    #[test]
    fn mcis_examples() {
        let a = Graph::complete(2).disjoint_union(&Graph::empty(1));
        let b = Graph::path(3);
        let (v, cert) = mcis_nd(&a, &b, DEFAULT_ND_BRANCH_CAP).unwrap();
        assert_eq!(v, 2);
        assert_eq!(verify_certificate(&a, &b, &cert), Ok(()));

        let c4 = Graph::cycle(4);
        let (v, cert) = mcis_nd(&c4, &c4, DEFAULT_ND_BRANCH_CAP).unwrap();
        assert_eq!(v, 4);
        assert_eq!(verify_certificate(&c4, &c4, &cert), Ok(()));
    }

    #[test]
    fn mcs_examples() {
        let (v, cert) = mcs_nd(&Graph::cycle(4), &Graph::path(4), DEFAULT_ND_VAR_CAP).unwrap();
        assert_eq!(v, 3);
        assert_eq!(verify_certificate(&Graph::cycle(4), &Graph::path(4), &cert), Ok(()));

        let (v, cert) = mcs_nd(&Graph::complete(3), &Graph::empty(3), DEFAULT_ND_VAR_CAP).unwrap();
        assert_eq!(v, 0);
        assert_eq!(cert.h.n(), 0);
    }

    #[test]
    fn nd_matches_oracles() {
        let paw = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let cases = [
            (Graph::path(4), Graph::cycle(4)),
            (Graph::star(3), paw.clone()),
            (Graph::complete(3).disjoint_union(&Graph::empty(2)), Graph::cycle(5)),
            (Graph::complete(2).disjoint_union(&Graph::complete(3)), Graph::complete(4).disjoint_union(&Graph::complete(1))),
        ];
        for (a, b) in cases {
            let (v, cert) = mcis_nd(&a, &b, DEFAULT_ND_BRANCH_CAP).unwrap();
            assert_eq!(v, mcis_oracle(&a, &b, 10).unwrap().0, "mcis_nd mismatch {a:?} {b:?}");
            assert_eq!(verify_certificate(&a, &b, &cert), Ok(()));
            let (v, cert) = mcs_nd(&a, &b, DEFAULT_ND_VAR_CAP).unwrap();
            assert_eq!(v, mcs_oracle(&a, &b, 12).unwrap().0, "mcs_nd mismatch {a:?} {b:?}");
            assert_eq!(verify_certificate(&a, &b, &cert), Ok(()));
        }
    }

    #[test]
    fn branch_cap_respected() {
        // nd(P4) = 4 on both sides: 3^16 branches exceed a tiny cap
        let err = mcis_nd(&Graph::path(4), &Graph::path(4), 100).unwrap_err();
        assert_eq!(err, NdError::BranchCap { pq: 16, cap: 100 });
    }

    #[test]
    fn var_cap_respected() {
        let err = mcs_nd(&Graph::path(5), &Graph::path(5), 24).unwrap_err();
        assert_eq!(err, NdError::VarCap { pq: 25, cap: 24 });
    }
}
