//! The pair `K = B₊ ⊂ L = W₁` of positive operators inside block-positive
//! operators, as a [`ConePairOracle`].

use std::cmp::Ordering;

use nalgebra::DMatrix;
use serde_json::Value;

use super::hermitian::{random_matrix, random_unit_vector, BipartiteHermitian};
use super::seesaw::{has_product_below, start_rng, SearchConfig};
use super::witness::{is_psd, product_zero_set, require_witness, ZeroSet, ZERO_TOLERANCE};
use crate::detection::{is_optimal_with, Backend, ConePairOracle, FinerDecision, OptimalityVerdict, ToJson};
use crate::error::Result;
use crate::exec::Exec;

/// Random PSD subtraction directions tried by [`lkch_optimality`].
pub const RANDOM_DIRECTIONS: usize = 4;
/// Eigenvalue ratio below which a PSD operator counts as singular.
const FULL_RANK_RATIO: f64 = 1e-12;
/// A step counts as an improvement when `λ ‖k‖ > IMPROVEMENT_FACTOR · τ ‖w‖`.
const IMPROVEMENT_FACTOR: f64 = 1e3;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

#[derive(Clone, Debug)]
pub struct QuantumPair {
    d1: usize,
    d2: usize,
    cfg: SearchConfig,
}

fn full_rank(y: &BipartiteHermitian) -> bool {
    let s = y.spectrum();
    s.max() > 0.0 && s.min() > FULL_RANK_RATIO * s.max()
}

impl QuantumPair {
    pub fn new(d1: usize, d2: usize, cfg: SearchConfig) -> Self {
        Self { d1, d2, cfg }
    }

    pub fn for_operator(w: &BipartiteHermitian, cfg: SearchConfig) -> Self {
        Self::new(w.d1(), w.d2(), cfg)
    }

    pub fn config(&self) -> &SearchConfig {
        &self.cfg
    }

    fn fits(&self, x: &BipartiteHermitian) -> bool {
        x.d1() == self.d1 && x.d2() == self.d2
    }

    fn starts(&self) -> usize {
        self.cfg.starts.unwrap_or_else(|| super::seesaw::default_starts(self.d1, self.d2)).max(1)
    }

    fn g(&self, w1: &BipartiteHermitian, w2: &BipartiteHermitian, lambda: f64) -> f64 {
        w2.sub_scaled(lambda, w1).min_eigenvalue()
    }

    /// Maximizes the concave `λ ↦ λ_min(w2 - λ w1)` over `λ > 0`.
    fn best_lambda(&self, w1: &BipartiteHermitian, w2: &BipartiteHermitian) -> f64 {
        let grid: Vec<f64> = (-40..=40).map(|k| 2f64.powi(k)).collect();
        let vals: Vec<f64> = grid.iter().map(|&l| self.g(w1, w2, l)).collect();
        let i = (0..grid.len()).fold(0, |b, i| if vals[i] > vals[b] { i } else { b });
        let mut a = if i == 0 { 0.0 } else { grid[i - 1] };
        let mut b = if i + 1 == grid.len() { grid[i] } else { grid[i + 1] };
        let mut x1 = b - GOLDEN * (b - a);
        let mut x2 = a + GOLDEN * (b - a);
        let (mut f1, mut f2) = (self.g(w1, w2, x1), self.g(w1, w2, x2));
        for _ in 0..200 {
            if b - a <= 1e-14 * b.max(1e-300) {
                break;
            }
            if f1 < f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + GOLDEN * (b - a);
                f2 = self.g(w1, w2, x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - GOLDEN * (b - a);
                f1 = self.g(w1, w2, x1);
            }
        }
        let mid = 0.5 * (a + b);
        // The grid point may beat the refined one when the maximum sits at a bracket end.
        if self.g(w1, w2, mid) >= vals[i] {
            mid
        } else {
            grid[i]
        }
    }

    /// Orthonormal basis of the complement of the zero-set span.
    fn complement_projectors(&self, zero: &ZeroSet) -> Vec<BipartiteHermitian> {
        let d = self.d1 * self.d2;
        if zero.vectors.is_empty() || zero.spans() {
            return Vec::new();
        }
        let mut m = DMatrix::zeros(d, d);
        for t in zero.tensors() {
            m += &t * t.adjoint();
        }
        let s = BipartiteHermitian::from_computed(self.d1, self.d2, m).spectrum();
        let cut = FULL_RANK_RATIO * s.max();
        let basis: Vec<_> = (0..d).filter(|&i| s.values[i] <= cut).map(|i| s.vector(i)).collect();
        let mut perp = DMatrix::zeros(d, d);
        for v in &basis {
            perp += v * v.adjoint();
        }
        let mut out = vec![BipartiteHermitian::from_computed(self.d1, self.d2, perp)];
        out.extend(basis.iter().map(|v| BipartiteHermitian::projector(self.d1, self.d2, v)));
        out
    }
}

impl ConePairOracle for QuantumPair {
    type Scalar = f64;
    type Element = BipartiteHermitian;
    type Functional = BipartiteHermitian;

    fn backend(&self) -> Backend {
        Backend::Quantum
    }

    fn tolerance(&self) -> f64 {
        self.cfg.tolerance
    }

    fn seed(&self) -> u64 {
        self.cfg.seed
    }

    fn exec(&self) -> Exec {
        self.cfg.exec
    }

    fn in_k(&self, x: &BipartiteHermitian) -> bool {
        self.fits(x) && is_psd(x, self.cfg.tolerance).psd
    }

    fn in_l(&self, x: &BipartiteHermitian) -> bool {
        if !self.fits(x) {
            return false;
        }
        let threshold = -self.cfg.tolerance * x.op_norm();
        !has_product_below(x, threshold, self.starts(), self.cfg.seed, self.cfg.exec)
    }

    fn in_kstar(&self, y: &BipartiteHermitian) -> bool {
        self.in_k(y)
    }

    /// `L* = S₁` (separable). Decided by PPT in 2×2 and 2×3; elsewhere only
    /// an NPT state is known to lie outside.
    fn in_lstar(&self, y: &BipartiteHermitian) -> Option<bool> {
        if !self.in_k(y) {
            return Some(false);
        }
        let ppt = is_psd(&y.partial_transpose(), self.cfg.tolerance).psd;
        match (self.d1, self.d2) {
            (2, 2) | (2, 3) | (3, 2) => Some(ppt),
            _ if !ppt => Some(false),
            _ => None,
        }
    }

    fn pairing(&self, y: &BipartiteHermitian, x: &BipartiteHermitian) -> f64 {
        y.hs(x)
    }

    fn sign(&self, value: &f64, y: &BipartiteHermitian, x: &BipartiteHermitian) -> Ordering {
        let trace_norm: f64 = y.eigenvalues().iter().map(|e| e.abs()).sum();
        let eps = self.cfg.tolerance * x.op_norm() * trace_norm;
        if *value < -eps {
            Ordering::Less
        } else if *value > eps {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    fn is_zero_pairing(&self, y: &BipartiteHermitian, x: &BipartiteHermitian) -> bool {
        let trace_norm: f64 = y.eigenvalues().iter().map(|e| e.abs()).sum();
        y.hs(x).abs() <= ZERO_TOLERANCE * x.op_norm() * trace_norm
    }

    fn sub_scaled(&self, x: &BipartiteHermitian, lambda: &f64, d: &BipartiteHermitian) -> BipartiteHermitian {
        x.sub_scaled(*lambda, d)
    }

    fn is_zero_element(&self, x: &BipartiteHermitian) -> bool {
        x.matrix().iter().all(|z| z.norm() == 0.0)
    }

    fn zero_functionals(&self, w: &BipartiteHermitian) -> Vec<BipartiteHermitian> {
        product_zero_set(w, &self.cfg).projectors()
    }

    /// Uniform weights work whenever any convex combination is full rank.
    fn interior_combination(&self, ys: &[BipartiteHermitian]) -> Option<Vec<f64>> {
        if ys.is_empty() {
            return None;
        }
        let weights = vec![1.0 / ys.len() as f64; ys.len()];
        full_rank(&self.combine(&weights, ys)).then_some(weights)
    }

    fn combine(&self, weights: &[f64], ys: &[BipartiteHermitian]) -> BipartiteHermitian {
        let d = self.d1 * self.d2;
        let mut m = DMatrix::zeros(d, d);
        for (c, y) in weights.iter().zip(ys) {
            m += y.matrix().scale(*c);
        }
        BipartiteHermitian::from_computed(self.d1, self.d2, m)
    }

    fn interior_kstar_point(&self, y: &BipartiteHermitian) -> bool {
        self.fits(y) && full_rank(y)
    }

    fn sample_kstar(&self, n: usize, seed: u64) -> Vec<BipartiteHermitian> {
        let d = self.d1 * self.d2;
        (0..n)
            .map(|i| {
                let mut r = start_rng(seed, i);
                BipartiteHermitian::projector(self.d1, self.d2, &random_unit_vector(&mut r, d))
            })
            .collect()
    }

    /// The identity, `n` random full-rank PSD operators, then the projector
    /// onto the complement of the zero-set span and its basis projectors.
    fn subtract_search_directions(&self, w: &BipartiteHermitian, n: usize, seed: u64) -> Vec<BipartiteHermitian> {
        let d = self.d1 * self.d2;
        let mut out = vec![BipartiteHermitian::identity(self.d1, self.d2)];
        for i in 0..n {
            let mut r = start_rng(seed ^ 0x5eed, i);
            let g = random_matrix(&mut r, d, d);
            let p = BipartiteHermitian::from_computed(self.d1, self.d2, &g * g.adjoint());
            let p = p.scale(1.0 / p.op_norm()).add(&BipartiteHermitian::identity(self.d1, self.d2).scale(0.1));
            out.push(p.scale(1.0 / p.op_norm()));
        }
        out.extend(self.complement_projectors(&product_zero_set(w, &self.cfg)));
        out
    }

    /// Bisection against `in_l` after doubling to an infeasible step.
    fn max_step_in_l(&self, w: &BipartiteHermitian, k: &BipartiteHermitian) -> Option<f64> {
        let (nw, nk) = (w.op_norm(), k.op_norm());
        if nk == 0.0 {
            return None;
        }
        let feasible = |l: f64| self.in_l(&w.sub_scaled(l, k));
        if !feasible(0.0) {
            return Some(0.0);
        }
        let unit = nw.max(f64::MIN_POSITIVE) / nk;
        let mut hi = unit;
        let mut lo = 0.0;
        while feasible(hi) {
            lo = hi;
            hi *= 2.0;
            if hi > 1e12 * unit {
                return None;
            }
        }
        let resolution = self.cfg.tolerance * unit;
        for _ in 0..200 {
            if hi - lo <= resolution {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if feasible(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }

    fn is_improving_step(&self, lambda: &f64, w: &BipartiteHermitian, k: &BipartiteHermitian) -> bool {
        *lambda * k.op_norm() > IMPROVEMENT_FACTOR * self.cfg.tolerance * w.op_norm()
    }

    fn decide_finer(
        &self,
        w1: &BipartiteHermitian,
        w2: &BipartiteHermitian,
    ) -> FinerDecision<f64, BipartiteHermitian, BipartiteHermitian> {
        let w2_in_k = self.in_k(w2);
        let lambda = self.best_lambda(w1, w2);
        let k = w2.sub_scaled(lambda, w1);
        if lambda > 0.0 && self.in_k(&k) {
            return FinerDecision::Finer { lambda, k, w2_detects_nothing: w2_in_k };
        }
        if w2_in_k {
            return FinerDecision::Finer { lambda: 0.0, k: w2.clone(), w2_detects_nothing: true };
        }
        // A minimal eigenvector at the optimum is a counterexample when it
        // does not pair negatively with w1.
        let s = k.spectrum();
        let rho = BipartiteHermitian::projector(self.d1, self.d2, &s.vector(0));
        let ok = self.sign(&rho.hs(w2), &rho, w2) == Ordering::Less
            && self.sign(&rho.hs(w1), &rho, w1) != Ordering::Less;
        FinerDecision::NotFiner { counterexample: ok.then_some(rho) }
    }
}

/// Optimality of a witness with respect to `B₊`: the spanning verdict from
/// the zero set and the subtraction verdict, side by side.
#[derive(Clone, Debug)]
pub struct LkchReport {
    pub verdict: OptimalityVerdict<f64, BipartiteHermitian, BipartiteHermitian>,
    pub zero_set: ZeroSet,
}

impl ToJson for LkchReport {
    fn to_json(&self) -> Value {
        let mut v = self.verdict.to_json();
        if let Value::Object(m) = &mut v {
            m.insert("span_rank".into(), Value::from(self.zero_set.span_rank));
            m.insert("product_vectors".into(), self.zero_set.vectors.to_json());
            m.remove("zero_set");
        }
        v
    }
}

pub fn lkch_optimality(w: &BipartiteHermitian, cfg: &SearchConfig) -> Result<LkchReport> {
    require_witness(w, cfg)?;
    let pair = QuantumPair::for_operator(w, *cfg);
    let verdict = is_optimal_with(&pair, w, RANDOM_DIRECTIONS)?;
    let zero_set = product_zero_set(w, cfg);
    Ok(LkchReport { verdict, zero_set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{detects, improve, is_finer, verify_finer, verify_optimality};

    fn swap() -> BipartiteHermitian {
        BipartiteHermitian::swap(2)
    }

    fn shifted() -> BipartiteHermitian {
        swap().add(&BipartiteHermitian::identity(2, 2).scale(0.1))
    }

    fn pair() -> QuantumPair {
        QuantumPair::new(2, 2, SearchConfig::with_seed(1))
    }

    #[test]
    fn swap_detects_singlet() {
        let d = detects(&pair(), &swap(), &BipartiteHermitian::singlet()).unwrap();
        assert!(d.detected && d.domain_ok);
        assert!((d.value + 1.0).abs() < 1e-9);
    }

    #[test]
    fn swap_is_finer_than_shift() {
        let p = pair();
        let v = is_finer(&p, &swap(), &shifted()).unwrap();
        assert!(v.finer && !v.w2_detects_nothing);
        assert!((v.lambda.unwrap() - 1.0).abs() < 1e-6);
        let k = v.k_certificate.as_ref().unwrap();
        assert!(k.hs_distance(&BipartiteHermitian::identity(2, 2).scale(0.1)) < 1e-6);
        assert!(verify_finer(&p, &swap(), &shifted(), &v));
        let back = is_finer(&p, &shifted(), &swap()).unwrap();
        assert!(!back.finer);
        assert!(verify_finer(&p, &shifted(), &swap(), &back));
    }

    #[test]
    fn swap_is_optimal_on_both_verdicts() {
        let r = lkch_optimality(&swap(), &SearchConfig::with_seed(0)).unwrap();
        assert!(r.verdict.optimal && r.verdict.spanning_verdict && r.verdict.subtraction_verdict);
        assert_eq!(r.zero_set.span_rank, 4);
        assert_eq!(r.zero_set.vectors.len(), r.verdict.zero_set.len());
        assert!(verify_optimality(&pair(), &swap(), &r.verdict));
    }

    #[test]
    fn shifted_swap_improves_back_to_swap() {
        let p = pair();
        let r = improve(&p, &shifted(), &BipartiteHermitian::identity(2, 2)).unwrap();
        assert!((r.lambda_max - 0.1).abs() < 1e-6);
        assert!(r.w_prime.hs_distance(&swap()) < 1e-6);
        let o = lkch_optimality(&shifted(), &SearchConfig::with_seed(0)).unwrap();
        assert!(!o.verdict.optimal && !o.verdict.subtraction_verdict);
        let imp = o.verdict.improvement.as_ref().unwrap();
        assert!((imp.lambda - 0.1).abs() < 1e-6);
        assert!(verify_optimality(&p, &shifted(), &o.verdict));
    }

    #[test]
    fn non_witness_rejected() {
        let psd = BipartiteHermitian::identity(2, 2).add(&swap());
        assert!(lkch_optimality(&psd, &SearchConfig::default()).is_err());
    }
}
