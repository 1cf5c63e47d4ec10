//! Multistart see-saw minimization of `⟨φ⊗ψ|W|φ⊗ψ⟩` over unit product
//! vectors.
//!
//! Each run alternates between the two factors: with `φ` fixed the best `ψ`
//! is a minimal eigenvector of the contracted operator, and vice versa. The
//! result is an upper bound on the true minimum.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hermitian::{random_unit_vector, BipartiteHermitian, ProductVector, C64};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

pub const CONVERGENCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 500;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Default number of multistarts for a `d1 × d2` system.
pub fn default_starts(d1: usize, d2: usize) -> usize {
    64 * d1 * d2
}

/// Tolerance, start count, seed and execution mode for numerical searches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub tolerance: f64,
    /// `None` means [`default_starts`].
    pub starts: Option<usize>,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, starts: None, seed: 0, exec: Exec::Parallel }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn starts_for(&self, w: &BipartiteHermitian) -> usize {
        self.starts.unwrap_or_else(|| default_starts(w.d1(), w.d2())).max(1)
    }
}

/// Independent RNG for start `index`, so runs do not depend on scheduling.
pub fn start_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index as u64);
    r
}

fn min_eigvec(m: DMatrix<C64>) -> (f64, DVector<C64>) {
    let h = (&m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let i = eig.eigenvalues.imin();
    (eig.eigenvalues[i], eig.eigenvectors.column(i).into_owned())
}

/// One converged run.
#[derive(Clone, Debug)]
pub struct SeesawRun {
    pub value: f64,
    pub vector: ProductVector,
    /// Objective after every half-step.
    pub history: Vec<f64>,
}

/// Runs the see-saw from `phi0`. `scale` is `‖W‖`, used for the stopping rule.
pub fn seesaw_from(w: &BipartiteHermitian, phi0: &DVector<C64>, scale: f64) -> SeesawRun {
    let stop = CONVERGENCE * scale.max(f64::MIN_POSITIVE);
    let mut phi = phi0.normalize();
    let (mut value, mut psi) = min_eigvec(w.contract_first(&phi));
    let mut history = vec![value];
    for _ in 0..MAX_ITERATIONS {
        let prev = value;
        let (v1, p) = min_eigvec(w.contract_second(&psi));
        phi = p;
        history.push(v1);
        let (v2, q) = min_eigvec(w.contract_first(&phi));
        psi = q;
        history.push(v2);
        value = v2;
        if prev - value < stop {
            break;
        }
    }
    SeesawRun { value, vector: ProductVector { phi, psi }, history }
}

fn run_start(w: &BipartiteHermitian, seed: u64, index: usize, scale: f64) -> SeesawRun {
    let mut r = start_rng(seed, index);
    let phi0 = random_unit_vector(&mut r, w.d1());
    seesaw_from(w, &phi0, scale)
}

/// All runs, in start order.
pub fn multistart(w: &BipartiteHermitian, starts: usize, seed: u64, exec: Exec) -> Vec<SeesawRun> {
    let scale = w.op_norm();
    exec::map_indexed(exec, starts, |i| run_start(w, seed, i, scale))
}

/// Best value over `starts` runs and its minimizer (unit factors).
/// Ties go to the lowest start index.
pub fn seesaw_min_product(
    w: &BipartiteHermitian,
    starts: usize,
    seed: u64,
    exec: Exec,
) -> Result<(f64, ProductVector)> {
    if starts == 0 {
        return Err(Error::InvalidInput("starts must be at least 1".into()));
    }
    let runs = multistart(w, starts, seed, exec);
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("starts >= 1");
    Ok((best.value, best.vector))
}

/// Searches for a unit product vector with expectation below `threshold`.
/// Stops as soon as one is found.
pub fn has_product_below(w: &BipartiteHermitian, threshold: f64, starts: usize, seed: u64, exec: Exec) -> bool {
    let diag_hit = (0..w.dim()).any(|i| w.matrix()[(i, i)].re < threshold);
    if diag_hit {
        return true;
    }
    let scale = w.op_norm();
    exec::any_index(exec, starts, |i| run_start(w, seed, i, scale).value < threshold)
}

/// `⟨φ⊗ψ|W|φ⊗ψ⟩` for unnormalized factors.
pub fn product_expectation(w: &BipartiteHermitian, v: &ProductVector) -> Result<f64> {
    if v.phi.len() != w.d1() {
        return Err(Error::DimensionMismatch { expected: w.d1(), got: v.phi.len() });
    }
    if v.psi.len() != w.d2() {
        return Err(Error::DimensionMismatch { expected: w.d2(), got: v.psi.len() });
    }
    if v.phi.norm() == 0.0 || v.psi.norm() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    Ok(w.expectation(&v.tensor()))
}
