//! Exact maximization of bounded integer programs: linear constraints, a
//! linear plus optional quadratic objective, branch and bound over the
//! variable box with interval-arithmetic bounding and constraint
//! propagation. No LP relaxation, no floating point.

use std::fmt;

use thiserror::Error;

/// Default cap on explored branch-and-bound nodes.
pub const DEFAULT_IP_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarBounds {
    pub lo: i64,
    pub hi: i64,
}

/// One constraint `sum(coeff * var) <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<(usize, i64)>,
    pub bound: i64,
}

/// Integer program over finitely bounded variables, maximizing
/// `sum(linear[i] * x_i) + sum(c * x_i * x_j for (i, j, c) in quadratic)`.
#[derive(Debug, Clone, Default)]
pub struct BoundedIntegerProgram {
    pub bounds: Vec<VarBounds>,
    pub constraints: Vec<LinearConstraint>,
    pub linear: Vec<i64>,
    /// Terms `(i, j, c)` with `i <= j`, each contributing `c * x_i * x_j`.
    pub quadratic: Vec<(usize, usize, i64)>,
}

impl BoundedIntegerProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, lo: i64, hi: i64) -> usize {
        assert!(lo <= hi, "empty variable domain");
        self.bounds.push(VarBounds { lo, hi });
        self.linear.push(0);
        self.bounds.len() - 1
    }

    pub fn set_linear(&mut self, var: usize, coeff: i64) {
        self.linear[var] = coeff;
    }

    pub fn add_quadratic(&mut self, i: usize, j: usize, coeff: i64) {
        let (i, j) = (i.min(j), i.max(j));
        self.quadratic.push((i, j, coeff));
    }

    /// `sum(coeff * var) <= bound`.
    pub fn add_le(&mut self, coeffs: Vec<(usize, i64)>, bound: i64) {
        self.constraints.push(LinearConstraint { coeffs, bound });
    }

    /// Equality as a pair of inequalities.
    pub fn add_eq(&mut self, coeffs: Vec<(usize, i64)>, bound: i64) {
        self.add_le(coeffs.clone(), bound);
        let neg: Vec<(usize, i64)> = coeffs.into_iter().map(|(v, c)| (v, -c)).collect();
        self.add_le(neg, -bound);
    }

    pub fn evaluate(&self, x: &[i64]) -> i64 {
        let mut val: i64 = self.linear.iter().zip(x).map(|(c, v)| c * v).sum();
        for &(i, j, c) in &self.quadratic {
            val += c * x[i] * x[j];
        }
        val
    }
}

/// Stable one-line-per-constraint dump for debugging.
impl fmt::Display for BoundedIntegerProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "maximize")?;
        let mut first = true;
        for (i, &c) in self.linear.iter().enumerate() {
            if c != 0 {
                write!(f, "{} {}*x{}", if first { "" } else { " +" }, c, i)?;
                first = false;
            }
        }
        for &(i, j, c) in &self.quadratic {
            write!(f, "{} {}*x{}*x{}", if first { "" } else { " +" }, c, i, j)?;
            first = false;
        }
        if first {
            write!(f, " 0")?;
        }
        writeln!(f)?;
        writeln!(f, "subject to")?;
        for c in &self.constraints {
            let mut first = true;
            for &(v, a) in &c.coeffs {
                write!(f, "{}{}*x{}", if first { "" } else { " + " }, a, v)?;
                first = false;
            }
            writeln!(f, " <= {}", c.bound)?;
        }
        writeln!(f, "bounds")?;
        for (i, b) in self.bounds.iter().enumerate() {
            writeln!(f, "{} <= x{} <= {}", b.lo, i, b.hi)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IpOutcome {
    Optimal { assignment: Vec<i64>, value: i64 },
    Infeasible,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IpError {
    #[error("branch-and-bound node cap {cap} exceeded")]
    NodeCapExceeded { cap: u64 },
}

struct Searcher<'a> {
    prog: &'a BoundedIntegerProgram,
    nodes: u64,
    cap: u64,
    best: Option<(Vec<i64>, i64)>,
}

/// Provably optimal assignment, or `Infeasible`; errors only on the node cap.
pub fn solve_ip(prog: &BoundedIntegerProgram, node_cap: u64) -> Result<IpOutcome, IpError> {
    let mut s = Searcher { prog, nodes: 0, cap: node_cap, best: None };
    let bounds: Vec<VarBounds> = prog.bounds.clone();
    s.search(bounds)?;
    Ok(match s.best {
        Some((assignment, value)) => IpOutcome::Optimal { assignment, value },
        None => IpOutcome::Infeasible,
    })
}

impl Searcher<'_> {
    fn search(&mut self, mut bounds: Vec<VarBounds>) -> Result<(), IpError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(IpError::NodeCapExceeded { cap: self.cap });
        }

        if !propagate(self.prog, &mut bounds) {
            return Ok(());
        }

        let ub = objective_upper_bound(self.prog, &bounds);
        if let Some((_, best_val)) = &self.best {
            if ub <= *best_val {
                return Ok(());
            }
        }

        let widest = (0..bounds.len())
            .filter(|&v| bounds[v].lo < bounds[v].hi)
            .max_by_key(|&v| (bounds[v].hi - bounds[v].lo, std::cmp::Reverse(v)));
        match widest {
            None => {
                // fully assigned; propagation already checked feasibility
                let x: Vec<i64> = bounds.iter().map(|b| b.lo).collect();
                let val = self.prog.evaluate(&x);
                if self.best.as_ref().map_or(true, |(_, bv)| val > *bv) {
                    self.best = Some((x, val));
                }
                Ok(())
            }
            Some(v) => {
                let mid = bounds[v].lo + (bounds[v].hi - bounds[v].lo) / 2;
                // Upper half first: reaches large objective values early for
                // the maximization problems built in this crate.
                let mut upper = bounds.clone();
                upper[v].lo = mid + 1;
                self.search(upper)?;
                let mut lower = bounds;
                lower[v].hi = mid;
                self.search(lower)
            }
        }
    }
}

/// Tighten the box against every constraint until a fixpoint; false when a
/// domain empties or a constraint is interval-infeasible.
fn propagate(prog: &BoundedIntegerProgram, bounds: &mut [VarBounds]) -> bool {
    loop {
        let mut changed = false;
        for c in &prog.constraints {
            let mut min_sum: i64 = 0;
            for &(v, a) in &c.coeffs {
                min_sum += if a >= 0 { a * bounds[v].lo } else { a * bounds[v].hi };
            }
            if min_sum > c.bound {
                return false;
            }
            for &(v, a) in &c.coeffs {
                if a == 0 {
                    continue;
                }
                let own_min = if a >= 0 { a * bounds[v].lo } else { a * bounds[v].hi };
                let slack = c.bound - (min_sum - own_min);
                if a > 0 {
                    let hi = slack.div_euclid(a);
                    if hi < bounds[v].hi {
                        bounds[v].hi = hi;
                        changed = true;
                        if bounds[v].lo > bounds[v].hi {
                            return false;
                        }
                    }
                } else {
                    // a * x <= slack, a < 0: x >= ceil(slack / a)
                    let lo = -(slack.div_euclid(-a));
                    if lo > bounds[v].lo {
                        bounds[v].lo = lo;
                        changed = true;
                        if bounds[v].lo > bounds[v].hi {
                            return false;
                        }
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn objective_upper_bound(prog: &BoundedIntegerProgram, bounds: &[VarBounds]) -> i64 {
    let mut ub: i64 = 0;
    for (i, &c) in prog.linear.iter().enumerate() {
        ub += if c >= 0 { c * bounds[i].hi } else { c * bounds[i].lo };
    }
    for &(i, j, c) in &prog.quadratic {
        let (pmin, pmax) = if i == j {
            square_range(bounds[i])
        } else {
            product_range(bounds[i], bounds[j])
        };
        ub += if c >= 0 { c * pmax } else { c * pmin };
    }
    ub
}

fn product_range(a: VarBounds, b: VarBounds) -> (i64, i64) {
    let products = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi];
    (*products.iter().min().unwrap(), *products.iter().max().unwrap())
}

fn square_range(a: VarBounds) -> (i64, i64) {
    let lo2 = a.lo * a.lo;
    let hi2 = a.hi * a.hi;
    let min = if a.lo <= 0 && 0 <= a.hi { 0 } else { lo2.min(hi2) };
    (min, lo2.max(hi2))
}
