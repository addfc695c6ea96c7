//! Maximum-weight bipartite matching with mandatory coverage of a set of
//! required vertices.
//!
//! Coverage is bought with a weight shift: every real edge incident to a
//! required vertex gains a constant `M = 1 + sum of all weights` (twice when
//! both endpoints are required). Any matching covering one more required
//! vertex then dominates every matching that does not, so the unconstrained
//! optimum covers all of them exactly when that is possible at all.

use std::collections::{BTreeMap, BTreeSet};

/// Weighted bipartite instance. Pairs absent from `weights` are non-edges.
#[derive(Debug, Clone, Default)]
pub struct MatchingInstance {
    pub left: usize,
    pub right: usize,
    pub weights: BTreeMap<(usize, usize), i64>,
    pub required_left: BTreeSet<usize>,
    pub required_right: BTreeSet<usize>,
}

impl MatchingInstance {
    pub fn new(left: usize, right: usize) -> Self {
        MatchingInstance { left, right, ..Default::default() }
    }

    pub fn set_weight(&mut self, l: usize, r: usize, w: i64) {
        assert!(w >= 0, "weights must be non-negative");
        assert!(l < self.left && r < self.right);
        self.weights.insert((l, r), w);
    }

    pub fn require_left(&mut self, l: usize) {
        assert!(l < self.left);
        self.required_left.insert(l);
    }

    pub fn require_right(&mut self, r: usize) {
        assert!(r < self.right);
        self.required_right.insert(r);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingOutcome {
    /// Pairs `(left, right)` over real edges only, and their original weight.
    Matched { pairs: Vec<(usize, usize)>, weight: i64 },
    /// No matching covers every required vertex.
    Infeasible,
}

/// Maximum-weight matching among matchings covering all required vertices.
pub fn max_weight_matching_covering(inst: &MatchingInstance) -> MatchingOutcome {
    let total: i64 = inst.weights.values().sum();
    let shift = total + 1;
    let n = inst.left.max(inst.right);
    if n == 0 {
        return if inst.required_left.is_empty() && inst.required_right.is_empty() {
            MatchingOutcome::Matched { pairs: Vec::new(), weight: 0 }
        } else {
            MatchingOutcome::Infeasible
        };
    }

    // Zero-padded square profit matrix over the shifted weights.
    let mut profit = vec![vec![0i64; n]; n];
    for (&(l, r), &w) in &inst.weights {
        let mut p = w;
        if inst.required_left.contains(&l) {
            p += shift;
        }
        if inst.required_right.contains(&r) {
            p += shift;
        }
        profit[l][r] = p;
    }

    let assignment = max_assignment(&profit);

    let mut pairs = Vec::new();
    let mut weight = 0i64;
    let mut covered_left = BTreeSet::new();
    let mut covered_right = BTreeSet::new();
    for (l, r) in assignment {
        if l < inst.left && r < inst.right {
            if let Some(&w) = inst.weights.get(&(l, r)) {
                pairs.push((l, r));
                weight += w;
                covered_left.insert(l);
                covered_right.insert(r);
            }
        }
    }
    if inst.required_left.iter().all(|l| covered_left.contains(l))
        && inst.required_right.iter().all(|r| covered_right.contains(r))
    {
        pairs.sort_unstable();
        MatchingOutcome::Matched { pairs, weight }
    } else {
        MatchingOutcome::Infeasible
    }
}

/// Exact maximum-profit assignment on a square non-negative matrix via the
/// potential-based augmenting-path algorithm (minimizing negated profits).
/// Returns one pair per row.
fn max_assignment(profit: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let n = profit.len();
    let inf = i64::MAX / 4;
    // 1-indexed potentials, minimization over cost = -profit.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut match_of_col = vec![0usize; n + 1]; // row matched to column, 1-indexed

    for i in 1..=n {
        match_of_col[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = match_of_col[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = -profit[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[match_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if match_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            match_of_col[j0] = match_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        if match_of_col[j] != 0 {
            out.push((match_of_col[j] - 1, j - 1));
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All matchings by recursion over left vertices, keeping the best that
    /// covers the required set.
    pub(crate) fn brute_force(inst: &MatchingInstance) -> MatchingOutcome {
        fn rec(
            inst: &MatchingInstance,
            l: usize,
            used_right: &mut Vec<bool>,
            cur: &mut Vec<(usize, usize)>,
            best: &mut Option<(i64, Vec<(usize, usize)>)>,
        ) {
            if l == inst.left {
                let covered_l =
                    inst.required_left.iter().all(|&x| cur.iter().any(|&(a, _)| a == x));
                let covered_r =
                    inst.required_right.iter().all(|&y| cur.iter().any(|&(_, b)| b == y));
                if covered_l && covered_r {
                    let w: i64 = cur.iter().map(|p| inst.weights[p]).sum();
                    if best.as_ref().map_or(true, |(bw, _)| w > *bw) {
                        *best = Some((w, cur.clone()));
                    }
                }
                return;
            }
            rec(inst, l + 1, used_right, cur, best);
            for r in 0..inst.right {
                if !used_right[r] && inst.weights.contains_key(&(l, r)) {
                    used_right[r] = true;
                    cur.push((l, r));
                    rec(inst, l + 1, used_right, cur, best);
                    cur.pop();
                    used_right[r] = false;
                }
            }
        }
        let mut best = None;
        rec(inst, 0, &mut vec![false; inst.right], &mut Vec::new(), &mut best);
        match best {
            Some((weight, mut pairs)) => {
                pairs.sort_unstable();
                MatchingOutcome::Matched { pairs, weight }
            }
            None => MatchingOutcome::Infeasible,
        }
    }

    fn weight_of(o: &MatchingOutcome) -> Option<i64> {
        match o {
            MatchingOutcome::Matched { weight, .. } => Some(*weight),
            MatchingOutcome::Infeasible => None,
        }
    }

    #[test]
    fn single_edge() {
        let mut inst = MatchingInstance::new(1, 1);
        inst.set_weight(0, 0, 3);
        assert_eq!(
            max_weight_matching_covering(&inst),
            MatchingOutcome::Matched { pairs: vec![(0, 0)], weight: 3 }
        );
    }

    #[test]
    fn two_by_two_ties() {
        let mut inst = MatchingInstance::new(2, 2);
        inst.set_weight(0, 0, 5);
        inst.set_weight(0, 1, 1);
        inst.set_weight(1, 0, 4);
        inst.set_weight(1, 1, 0);
        assert_eq!(weight_of(&max_weight_matching_covering(&inst)), Some(5));
    }

    #[test]
    fn infeasible_required() {
        let mut inst = MatchingInstance::new(2, 1);
        inst.set_weight(0, 0, 7);
        inst.require_left(1);
        assert_eq!(max_weight_matching_covering(&inst), MatchingOutcome::Infeasible);
    }

    #[test]
    fn coverage_can_cost_weight() {
        // Best free matching pairs (0,0)=9; covering required left 1 forces
        // (1,0) and loses (0,0), keeping total lower but covered.
        let mut inst = MatchingInstance::new(2, 1);
        inst.set_weight(0, 0, 9);
        inst.set_weight(1, 0, 2);
        inst.require_left(1);
        assert_eq!(
            max_weight_matching_covering(&inst),
            MatchingOutcome::Matched { pairs: vec![(1, 0)], weight: 2 }
        );
    }

    #[test]
    fn zero_weight_edge_still_covers() {
        let mut inst = MatchingInstance::new(1, 1);
        inst.set_weight(0, 0, 0);
        inst.require_left(0);
        assert_eq!(
            max_weight_matching_covering(&inst),
            MatchingOutcome::Matched { pairs: vec![(0, 0)], weight: 0 }
        );
    }

    #[test]
    fn matches_brute_force_on_smalls() {
        // deterministic pseudo-random instances, no rand dependency needed here
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..300 {
            let left = 1 + (next() % 5) as usize;
            let right = 1 + (next() % 5) as usize;
            let mut inst = MatchingInstance::new(left, right);
            for l in 0..left {
                for r in 0..right {
                    if next() % 100 < 60 {
                        inst.set_weight(l, r, (next() % 9) as i64);
                    }
                }
            }
            for l in 0..left {
                if next() % 100 < 25 {
                    inst.require_left(l);
                }
            }
            for r in 0..right {
                if next() % 100 < 25 {
                    inst.require_right(r);
                }
            }
            let got = max_weight_matching_covering(&inst);
            let want = brute_force(&inst);
            assert_eq!(weight_of(&got), weight_of(&want), "trial {trial}: {inst:?}");
        }
    }
}
