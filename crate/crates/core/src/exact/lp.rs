//! Exact rational simplex for problems in equality form
//! `maximize c.x  s.t.  A x = b, x >= 0`.
//!
//! Two-phase dense tableau with Bland's rule, so it always terminates.
//! Infeasibility comes with a Farkas certificate `y` satisfying
//! `y^T A >= 0` and `y.b < 0`.

use num::{Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded { x: Vec<Rational>, ray: Vec<Rational> },
    Infeasible { farkas: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    rhs: usize,
}

enum Step {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn reduced_costs(&self, cost: &[Rational], allowed: usize) -> Vec<Rational> {
        (0..allowed)
            .map(|j| {
                let mut r = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        r -= cb * &row[j];
                    }
                }
                r
            })
            .collect()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *x -= &f * pr;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs primal simplex over columns `0..allowed`.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Step {
        loop {
            let rc = self.reduced_costs(cost, allowed);
            let Some(enter) = (0..allowed).find(|&j| rc[j].is_positive()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Step::Unbounded(enter),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[i][self.rhs].clone();
            }
        }
        x
    }
}

/// Solves `maximize c.x s.t. A x = b, x >= 0` exactly.
///
/// `a` is row-major with `b.len()` rows; `c` has one entry per column.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = b.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));

    // Phase 1: artificial basis on sign-normalized rows.
    let signs: Vec<bool> = b.iter().map(|bi| bi.is_negative()).collect();
    let width = n + m + 1;
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if signs[i] { -a[i][j].clone() } else { a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rational::from_integer(1.into()) } else { Rational::zero() });
            }
            row.push(if signs[i] { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut t = Tableau { rows, basis: (n..n + m).collect(), rhs: n + m };

    let mut phase1 = vec![Rational::zero(); n + m];
    for cost in phase1.iter_mut().skip(n) {
        *cost = -Rational::from_integer(1.into());
    }
    // Phase 1 is bounded above by zero.
    let _ = t.optimize(&phase1, n + m);
    let value: Rational = t
        .basis
        .iter()
        .zip(&t.rows)
        .fold(Rational::zero(), |acc, (&bi, row)| acc + &phase1[bi] * &row[t.rhs]);
    if value.is_negative() {
        // pi = c_B^T B^{-1}; B^{-1} sits in the artificial columns.
        let farkas = (0..m)
            .map(|i| {
                let pi = t
                    .basis
                    .iter()
                    .zip(&t.rows)
                    .fold(Rational::zero(), |acc, (&bk, row)| acc + &phase1[bk] * &row[n + i]);
                if signs[i] {
                    -pi
                } else {
                    pi
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive remaining (zero-valued) artificials out of the basis; drop
    // redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut phase2 = c.to_vec();
    phase2.extend((0..m).map(|_| Rational::zero()));
    match t.optimize(&phase2, n) {
        Step::Optimal => {
            let x = t.solution(n);
            let value = x.iter().zip(c).fold(Rational::zero(), |acc, (xi, ci)| acc + xi * ci);
            LpOutcome::Optimal { x, value }
        }
        Step::Unbounded(enter) => {
            let x = t.solution(n);
            let mut ray = vec![Rational::zero(); n];
            ray[enter] = Rational::from_integer(1.into());
            for (i, &bi) in t.basis.iter().enumerate() {
                if bi < n {
                    ray[bi] = -t.rows[i][enter].clone();
                }
            }
            LpOutcome::Unbounded { x, ray }
        }
    }
}

/// Feasibility of `A x = b, x >= 0`: a solution or a Farkas certificate.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational], n: usize) -> LpOutcome {
    solve(a, b, &vec![Rational::zero(); n])
}
