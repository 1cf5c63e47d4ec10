//! Faces of the PSD cone: the face generated by `ρ` consists of the PSD
//! operators whose range lies in `range(ρ)`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use super::hermitian::{random_matrix, random_psd, BipartiteHermitian, C64};
use super::seesaw::start_rng;
use super::witness::is_psd;

/// Eigenvalue ratio separating the range of `ρ` from its kernel.
const RANGE_RATIO: f64 = 1e-9;

/// Orthonormal bases of `range(ρ)` and `ker(ρ)`, as columns.
pub fn range_and_kernel(rho: &BipartiteHermitian) -> (Vec<DVector<C64>>, Vec<DVector<C64>>) {
    let s = rho.spectrum();
    let top = s.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (mut range, mut kernel) = (Vec::new(), Vec::new());
    for i in 0..s.values.len() {
        if s.values[i] > RANGE_RATIO * top {
            range.push(s.vector(i));
        } else {
            kernel.push(s.vector(i));
        }
    }
    (range, kernel)
}

/// Random PSD operator `U A U†` supported on the span of `basis`.
pub fn random_supported_psd<R: Rng>(
    rng: &mut R,
    d1: usize,
    d2: usize,
    basis: &[DVector<C64>],
) -> BipartiteHermitian {
    let d = d1 * d2;
    if basis.is_empty() {
        return BipartiteHermitian::from_computed(d1, d2, DMatrix::zeros(d, d));
    }
    let u = DMatrix::from_columns(basis);
    let g = random_matrix(rng, basis.len(), basis.len());
    BipartiteHermitian::from_computed(d1, d2, &u * (&g * g.adjoint()) * u.adjoint())
}

/// Is the PSD operator `x` in the face of `ρ`, i.e. `ρ - α x ∈ B₊` for some
/// `α > 0`? Tested at `α = λ_r(ρ) / (2 ‖x‖)`, where `λ_r` is the smallest
/// nonzero eigenvalue.
pub fn alpha_oracle(rho: &BipartiteHermitian, x: &BipartiteHermitian, tol: f64) -> bool {
    let nx = x.op_norm();
    if nx == 0.0 {
        return true;
    }
    let s = rho.spectrum();
    let top = s.max();
    let Some(lr) = s.values.iter().copied().find(|&v| v > RANGE_RATIO * top) else {
        return false;
    };
    let alpha = lr / (2.0 * nx);
    is_psd(&rho.sub_scaled(alpha, x), tol).psd
}

fn real_coords(x: &BipartiteHermitian) -> Vec<f64> {
    x.matrix().iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Real dimension of the span of the face of `ρ`, estimated from `samples`
/// random PSD candidates filtered through [`alpha_oracle`]. Half the
/// candidates are supported on `range(ρ)`, half are generic.
pub fn face_dimension(rho: &BipartiteHermitian, samples: usize, seed: u64, tol: f64) -> usize {
    let (range, _) = range_and_kernel(rho);
    let (d1, d2) = (rho.d1(), rho.d2());
    let accepted: Vec<Vec<f64>> = (0..samples)
        .filter_map(|i| {
            let mut r = start_rng(seed, i);
            let x = if i % 2 == 0 {
                random_supported_psd(&mut r, d1, d2, &range)
            } else {
                random_psd(&mut r, d1, d2, d1 * d2)
            };
            alpha_oracle(rho, &x, tol).then(|| real_coords(&x))
        })
        .collect();
    if accepted.is_empty() {
        return 0;
    }
    let rows = accepted[0].len();
    let m = DMatrix::from_fn(rows, accepted.len(), |i, j| accepted[j][i]);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    sv.iter().filter(|&&s| s > 1e-9 * top).count()
}
