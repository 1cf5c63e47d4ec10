//! Exact polyhedral instantiation of [`ConePairOracle`].

use num::{One, Signed, Zero};

use super::cone::ProperCone;
use super::lp::{self, LpOutcome};
use super::random::{random_dual_point, random_point_in, rng};
use super::rational::{Rational, RationalVector};
use crate::detection::oracle::{Backend, ConePairOracle, FinerDecision};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// A nested pair of polyhedral proper cones `K ⊂ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPair {
    pub k: ProperCone,
    pub l: ProperCone,
    pub seed: u64,
    pub exec: Exec,
}

impl ExactPair {
    /// Checks `K ⊂ L` exactly on the extreme rays of `K`.
    pub fn new(k: ProperCone, l: ProperCone, seed: u64) -> Result<Self> {
        if k.space_dim != l.space_dim {
            return Err(Error::DimensionMismatch { expected: l.space_dim, got: k.space_dim });
        }
        if !k.generators.iter().all(|g| l.contains(g)) {
            return Err(Error::InvalidInput("K is not contained in L".into()));
        }
        Ok(Self { k, l, seed, exec: Exec::default() })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn dim(&self) -> usize {
        self.k.space_dim
    }

    /// A nonzero `k ∈ K` with `w - k ∈ L`, found by an exact LP over the
    /// generators of `K`, or `None` when `F_L(w) ∩ K = {0}`.
    pub fn subtractable_direction(&self, w: &RationalVector) -> Option<RationalVector> {
        // max sum(u) s.t. h.(G u) + s_h = h.w for each facet h of L; u, s >= 0
        let gens = &self.k.generators;
        let facets = &self.l.facets;
        let m = gens.len();
        let f = facets.len();
        let a: Vec<Vec<Rational>> = facets
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let mut row: Vec<Rational> = gens.iter().map(|g| h.dot(g)).collect();
                row.extend((0..f).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let b: Vec<Rational> = facets.iter().map(|h| h.dot(w)).collect();
        let mut c = vec![Rational::one(); m];
        c.extend((0..f).map(|_| Rational::zero()));
        let u = match lp::solve(&a, &b, &c) {
            LpOutcome::Optimal { x, value } if value.is_positive() => x,
            LpOutcome::Unbounded { x, ray } => {
                x.iter().zip(&ray).map(|(xi, ri)| xi + ri).collect()
            }
            _ => return None,
        };
        let k = RationalVector::combination(self.dim(), &u[..m], gens);
        (!k.is_zero()).then_some(k)
    }

    /// `F ∩ K = {0}` for the cone spanned by `face_gens` (a face of `L`).
    pub fn face_meets_k_trivially(&self, face_gens: &[RationalVector]) -> bool {
        if face_gens.is_empty() {
            return true;
        }
        // sum mu_j f_j - sum nu_i g_i = 0, sum mu_j = 1, mu, nu >= 0
        let n = self.dim();
        let p = face_gens.len();
        let q = self.k.generators.len();
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = face_gens.iter().map(|f| f[i].clone()).collect();
                row.extend(self.k.generators.iter().map(|g| -g[i].clone()));
                row
            })
            .collect();
        let mut norm = vec![Rational::one(); p];
        norm.extend((0..q).map(|_| Rational::zero()));
        a.push(norm);
        let mut b = vec![Rational::zero(); n];
        b.push(Rational::one());
        !lp::feasible(&a, &b, p + q).is_feasible()
    }

    fn counterexample(&self, w1: &RationalVector, w2: &RationalVector) -> Option<RationalVector> {
        // ρ = sum nu_j d_j over extreme rays d_j of K*;
        // -ρ(w2) - s1 = 1, ρ(w1) - s2 = 0
        let duals = &self.k.facets;
        let m = duals.len();
        let mut r1: Vec<Rational> = duals.iter().map(|d| -d.dot(w2)).collect();
        r1.extend([-Rational::one(), Rational::zero()]);
        let mut r2: Vec<Rational> = duals.iter().map(|d| d.dot(w1)).collect();
        r2.extend([Rational::zero(), -Rational::one()]);
        match lp::feasible(&[r1, r2], &[Rational::one(), Rational::zero()], m + 2) {
            LpOutcome::Optimal { x, .. } | LpOutcome::Unbounded { x, .. } => {
                Some(RationalVector::combination(self.dim(), &x[..m], duals))
            }
            LpOutcome::Infeasible { .. } => None,
        }
    }
}

impl ConePairOracle for ExactPair {
    type Scalar = Rational;
    type Element = RationalVector;
    type Functional = RationalVector;

    fn backend(&self) -> Backend {
        Backend::Exact
    }

    fn tolerance(&self) -> f64 {
        0.0
    }

    fn seed(&self) -> u64 {
        self.seed
    }

    fn exec(&self) -> Exec {
        self.exec
    }

    fn in_k(&self, x: &RationalVector) -> bool {
        self.k.contains(x)
    }

    fn in_l(&self, x: &RationalVector) -> bool {
        self.l.contains(x)
    }

    fn in_kstar(&self, y: &RationalVector) -> bool {
        self.k.generators.iter().all(|g| !y.dot(g).is_negative())
    }

    fn in_lstar(&self, y: &RationalVector) -> Option<bool> {
        Some(self.l.generators.iter().all(|g| !y.dot(g).is_negative()))
    }

    fn pairing(&self, y: &RationalVector, x: &RationalVector) -> Rational {
        y.dot(x)
    }

    fn sub_scaled(&self, x: &RationalVector, lambda: &Rational, d: &RationalVector) -> RationalVector {
        x.sub_scaled(lambda, d)
    }

    fn is_zero_element(&self, x: &RationalVector) -> bool {
        x.is_zero()
    }

    fn zero_functionals(&self, w: &RationalVector) -> Vec<RationalVector> {
        self.l.facets.iter().filter(|y| y.dot(w).is_zero()).cloned().collect()
    }

    fn interior_combination(&self, ys: &[RationalVector]) -> Option<Vec<Rational>> {
        if ys.is_empty() {
            return None;
        }
        // sum_j c_j (y_j . g_i) - s_i = 1 for each extreme ray g_i of K
        let gens = &self.k.generators;
        let p = ys.len();
        let q = gens.len();
        let a: Vec<Vec<Rational>> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut row: Vec<Rational> = ys.iter().map(|y| y.dot(g)).collect();
                row.extend((0..q).map(|j| if i == j { -Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        match lp::feasible(&a, &vec![Rational::one(); q], p + q) {
            LpOutcome::Optimal { x, .. } | LpOutcome::Unbounded { x, .. } => {
                let c = &x[..p];
                let total: Rational = c.iter().fold(Rational::zero(), |acc, v| acc + v);
                Some(c.iter().map(|v| v / &total).collect())
            }
            LpOutcome::Infeasible { .. } => None,
        }
    }

    fn combine(&self, weights: &[Rational], ys: &[RationalVector]) -> RationalVector {
        RationalVector::combination(self.dim(), weights, ys)
    }

    fn interior_kstar_point(&self, y: &RationalVector) -> bool {
        self.k.generators.iter().all(|g| y.dot(g).is_positive())
    }

    /// Extreme rays of `K*` followed by random interior combinations.
    fn sample_kstar(&self, n: usize, seed: u64) -> Vec<RationalVector> {
        let mut r = rng(seed);
        let mut out = self.k.facets.clone();
        out.extend((0..n).map(|_| random_dual_point(&mut r, &self.k)));
        out
    }

    /// Extreme rays of `K`, then the LP-derived direction (if any), then
    /// random elements of `K`.
    fn subtract_search_directions(&self, w: &RationalVector, n: usize, seed: u64) -> Vec<RationalVector> {
        let mut out = self.k.generators.clone();
        out.extend(self.subtractable_direction(w));
        let mut r = rng(seed ^ 0x5eed);
        out.extend((0..n).map(|_| random_point_in(&mut r, &self.k)));
        out
    }

    fn max_step_in_l(&self, w: &RationalVector, k: &RationalVector) -> Option<Rational> {
        self.l.max_step(w, k)
    }

    fn decide_finer(
        &self,
        w1: &RationalVector,
        w2: &RationalVector,
    ) -> FinerDecision<Rational, RationalVector, RationalVector> {
        // Each facet h of K gives h.w2 - λ h.w1 >= 0: an interval in λ.
        let mut lo = Rational::zero();
        let mut hi: Option<Rational> = None;
        let mut feasible = true;
        for h in &self.k.facets {
            let a = h.dot(w1);
            let b = h.dot(w2);
            if a.is_positive() {
                let bound = &b / &a;
                hi = Some(match hi {
                    Some(cur) if cur < bound => cur,
                    _ => bound,
                });
            } else if a.is_negative() {
                let bound = &b / &a;
                if bound > lo {
                    lo = bound;
                }
            } else if b.is_negative() {
                feasible = false;
            }
        }
        if let Some(h) = &hi {
            if *h < lo {
                feasible = false;
            }
        }
        if !feasible {
            return FinerDecision::NotFiner { counterexample: self.counterexample(w1, w2) };
        }
        if lo.is_positive() {
            let k = w2.sub_scaled(&lo, w1);
            return FinerDecision::Finer { lambda: lo, k, w2_detects_nothing: false };
        }
        // λ = 0 is feasible: w2 ∈ K.
        let lambda = match hi {
            Some(h) if h.is_zero() => Rational::zero(),
            Some(h) => h.min(Rational::one()),
            None => Rational::one(),
        };
        let k = w2.sub_scaled(&lambda, w1);
        FinerDecision::Finer { lambda, k, w2_detects_nothing: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::ops::*;
    use crate::exact::rational::{rat, ratio};

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn running_pair() -> ExactPair {
        let k = ProperCone::orthant(2);
        let l = ProperCone::from_ints(&[&[2, -1], &[-1, 2]]).unwrap();
        ExactPair::new(k, l, 0).unwrap()
    }

    #[test]
    fn rejects_non_nested() {
        let k = ProperCone::from_ints(&[&[2, -1], &[-1, 2]]).unwrap();
        let l = ProperCone::orthant(2);
        assert!(ExactPair::new(k, l, 0).is_err());
    }

    #[test]
    fn detection_running_example() {
        let p = running_pair();
        let d = detects(&p, &v(&[3, -1]), &v(&[0, 1])).unwrap();
        assert!(d.detected && d.domain_ok);
        assert_eq!(d.value, rat(-1));
        for rho in p.sample_kstar(16, 1) {
            assert!(!detects(&p, &v(&[1, 1]), &rho).unwrap().detected);
        }
        assert_eq!(detects(&p, &v(&[1, -1]), &v(&[0, 1])).unwrap_err(), Error::NotInL);
    }

    #[test]
    fn finer_running_example() {
        let p = running_pair();
        let w1 = RationalVector::new(vec![rat(1), ratio(-1, 2)]);
        let w2 = v(&[3, -1]);
        let f = is_finer(&p, &w1, &w2).unwrap();
        assert!(f.finer);
        assert_eq!(f.lambda, Some(rat(2)));
        assert_eq!(f.k_certificate, Some(v(&[1, 0])));
        assert!(verify_finer(&p, &w1, &w2, &f));

        let same = is_finer(&p, &w2, &w2).unwrap();
        assert_eq!(same.lambda, Some(rat(1)));
        assert_eq!(same.k_certificate, Some(v(&[0, 0])));

        // (3,-1) is not finer than (1,-1/2).
        let rev = is_finer(&p, &w2, &w1).unwrap();
        assert!(!rev.finer);
        let rho = rev.counterexample.clone().unwrap();
        assert!(rho.dot(&w1).is_negative() && !rho.dot(&w2).is_negative());
        assert!(verify_finer(&p, &w2, &w1, &rev));
    }

    #[test]
    fn lambda_star_running_example() {
        let p = running_pair();
        let w1 = RationalVector::new(vec![rat(1), ratio(-1, 2)]);
        let w2 = v(&[3, -1]);
        let samples = vec![v(&[1, 0]), v(&[0, 1])];
        assert_eq!(lambda_star(&p, &w1, &w2, &samples).unwrap(), ratio(1, 2));
        assert_eq!(lambda_star(&p, &w2, &w2, &samples).unwrap(), rat(1));
        assert_eq!(
            lambda_star(&p, &w1, &w2, &[v(&[1, 0])]).unwrap_err(),
            Error::EmptyDetectionSample
        );
    }

    #[test]
    fn zero_sets() {
        let p = running_pair();
        let w1 = RationalVector::new(vec![rat(1), ratio(-1, 2)]);
        assert_eq!(zero_set(&p, &w1).unwrap(), vec![v(&[1, 2])]);
        assert!(zero_set(&p, &v(&[3, -1])).unwrap().is_empty());
    }

    #[test]
    fn optimality_examples() {
        let p = running_pair();
        let w1 = RationalVector::new(vec![rat(1), ratio(-1, 2)]);
        let o = is_optimal(&p, &w1).unwrap();
        assert!(o.optimal && o.subtraction_verdict && o.verdicts_agree());
        assert_eq!(o.interior_combination, Some(vec![rat(1)]));
        assert!(verify_optimality(&p, &w1, &o));
        // Hand check: (1 - ε, -1/2) leaves L since 2(1-ε) - 1/2 ... x1 + 2x2 = -ε < 0.
        assert!(!p.in_l(&w1.sub_scaled(&ratio(1, 100), &v(&[1, 0]))));

        let w = v(&[3, -1]);
        let o = is_optimal(&p, &w).unwrap();
        assert!(!o.optimal && !o.subtraction_verdict);
        assert!(o.zero_set.is_empty());
        assert!(verify_optimality(&p, &w, &o));
        assert!(p.in_l(&v(&[2, -1])));

        assert_eq!(is_optimal(&p, &v(&[1, 1])).unwrap_err(), Error::ElementInK);
    }

    #[test]
    fn improve_running_example() {
        let p = running_pair();
        let r = improve(&p, &v(&[3, -1]), &v(&[1, 0])).unwrap();
        assert_eq!(r.lambda_max, rat(1));
        assert_eq!(r.w_prime, v(&[2, -1]));
        // w' lies on the boundary: one membership coefficient is zero.
        assert!(p.l.facets.iter().any(|h| h.dot(&r.w_prime).is_zero()));
        assert_eq!(improve(&p, &v(&[3, -1]), &v(&[0, 0])).unwrap_err(), Error::ZeroDirection);
        assert_eq!(improve(&p, &v(&[3, -1]), &v(&[1, -1])).unwrap_err(), Error::NotInK);
    }

    #[test]
    fn superset_check() {
        let p = running_pair();
        let w1 = RationalVector::new(vec![rat(1), ratio(-1, 2)]);
        let w2 = v(&[3, -1]);
        let samples = p.sample_kstar(64, 9);
        assert!(detection_superset_check(&p, &w1, &w2, &samples));
        assert!(detection_superset_check(&p, &w2, &w2, &samples));
        let rev = is_finer(&p, &w2, &w1).unwrap();
        let mut with_counter = samples.clone();
        with_counter.push(rev.counterexample.unwrap());
        assert!(!detection_superset_check(&p, &w2, &w1, &with_counter));
    }

    #[test]
    fn direction_lp() {
        let p = running_pair();
        assert!(p.subtractable_direction(&v(&[3, -1])).is_some());
        let w1 = RationalVector::new(vec![rat(1), ratio(-1, 2)]);
        assert!(p.subtractable_direction(&w1).is_none());
        assert!(p.face_meets_k_trivially(&[v(&[2, -1])]));
        assert!(!p.face_meets_k_trivially(&[v(&[2, -1]), v(&[-1, 2])]));
    }
}
