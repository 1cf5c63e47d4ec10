//! Hermitian operators on `C^d1 ⊗ C^d2` and product vectors.
//!
//! Basis ordering is row-major: `|a⟩ ⊗ |b⟩` has index `a * d2 + b`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Absolute Hermiticity tolerance applied to loaded matrices.
pub const LOAD_TOLERANCE: f64 = 1e-12;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteHermitian {
    d1: usize,
    d2: usize,
    m: DMatrix<C64>,
}

/// Eigenvalues in ascending order together with their eigenvectors (columns).
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<C64>,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn vector(&self, i: usize) -> DVector<C64> {
        self.vectors.column(i).into_owned()
    }
}

impl BipartiteHermitian {
    /// Validates shape and Hermiticity (absolute tolerance 1e-12), then
    /// symmetrizes away the residual.
    pub fn new(d1: usize, d2: usize, m: DMatrix<C64>) -> Result<Self> {
        Self::with_tolerance(d1, d2, m, LOAD_TOLERANCE)
    }

    pub fn with_tolerance(d1: usize, d2: usize, m: DMatrix<C64>, tol: f64) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidInput("subsystem dimensions must be positive".into()));
        }
        let d = d1 * d2;
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: m.nrows().max(m.ncols()) });
        }
        let dev = (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if dev > tol || m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self::from_computed(d1, d2, m))
    }

    /// Wraps a matrix known to be Hermitian up to rounding.
    pub fn from_computed(d1: usize, d2: usize, m: DMatrix<C64>) -> Self {
        let h = (&m + m.adjoint()).scale(0.5);
        Self { d1, d2, m: h }
    }

    pub fn from_real(d1: usize, d2: usize, rows: &[&[f64]]) -> Result<Self> {
        let d = rows.len();
        let m = DMatrix::from_fn(d, d, |i, j| c(rows[i][j]));
        Self::new(d1, d2, m)
    }

    pub fn identity(d1: usize, d2: usize) -> Self {
        Self::from_computed(d1, d2, DMatrix::identity(d1 * d2, d1 * d2))
    }

    /// Swap operator `V |a⟩|b⟩ = |b⟩|a⟩` on `C^d ⊗ C^d`.
    pub fn swap(d: usize) -> Self {
        let n = d * d;
        let mut m = DMatrix::zeros(n, n);
        for a in 0..d {
            for b in 0..d {
                m[(b * d + a, a * d + b)] = c(1.0);
            }
        }
        Self::from_computed(d, d, m)
    }

    /// Rank-one projector `|v⟩⟨v| / ⟨v|v⟩`.
    pub fn projector(d1: usize, d2: usize, v: &DVector<C64>) -> Self {
        let n2 = v.norm_squared();
        Self::from_computed(d1, d2, (v * v.adjoint()).unscale(n2))
    }

    /// Unnormalized rank-one operator `|v⟩⟨v|`.
    pub fn outer(d1: usize, d2: usize, v: &DVector<C64>) -> Self {
        Self::from_computed(d1, d2, v * v.adjoint())
    }

    /// Projector onto `Σ_i |ii⟩ / √d`.
    pub fn max_entangled(d: usize) -> Self {
        let mut v = DVector::zeros(d * d);
        for i in 0..d {
            v[i * d + i] = c(1.0);
        }
        Self::projector(d, d, &v)
    }

    /// Projector onto `(|01⟩ - |10⟩)/√2`.
    pub fn singlet() -> Self {
        let mut v = DVector::zeros(4);
        v[1] = c(1.0);
        v[2] = c(-1.0);
        Self::projector(2, 2, &v)
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.d1 == other.d1 && self.d2 == other.d2
    }

    pub fn spectrum(&self) -> Spectrum {
        let eig = SymmetricEigen::new(self.m.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(self.dim(), self.dim(), |r, k| eig.eigenvectors[(r, order[k])]);
        Spectrum { values, vectors }
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum().values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum().min()
    }

    /// Operator norm (largest absolute eigenvalue).
    pub fn op_norm(&self) -> f64 {
        let s = self.spectrum();
        s.min().abs().max(s.max().abs())
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Hilbert–Schmidt pairing `Tr(self · other)`, real for Hermitian pairs.
    pub fn hs(&self, other: &Self) -> f64 {
        self.m.iter().zip(other.m.transpose().iter()).map(|(a, b)| (a * b).re).sum()
    }

    pub fn hs_distance(&self, other: &Self) -> f64 {
        (&self.m - &other.m).norm()
    }

    /// Transposition on the second tensor factor.
    pub fn partial_transpose(&self) -> Self {
        let (d1, d2) = (self.d1, self.d2);
        let n = self.dim();
        let m = DMatrix::from_fn(n, n, |r, col| {
            let (a, b) = (r / d2, r % d2);
            let (ap, bp) = (col / d2, col % d2);
            self.m[(a * d2 + bp, ap * d2 + b)]
        });
        Self { d1, d2, m }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { d1: self.d1, d2: self.d2, m: self.m.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { d1: self.d1, d2: self.d2, m: &self.m + &other.m }
    }

    /// `self - s · other`
    pub fn sub_scaled(&self, s: f64, other: &Self) -> Self {
        Self { d1: self.d1, d2: self.d2, m: &self.m - other.m.scale(s) }
    }

    /// `⟨v|self|v⟩`
    pub fn expectation(&self, v: &DVector<C64>) -> f64 {
        (v.adjoint() * &self.m * v)[(0, 0)].re
    }

    /// `(⟨φ| ⊗ I) W (|φ⟩ ⊗ I)`, a `d2 × d2` operator.
    pub fn contract_first(&self, phi: &DVector<C64>) -> DMatrix<C64> {
        let (d1, d2) = (self.d1, self.d2);
        DMatrix::from_fn(d2, d2, |b, bp| {
            let mut s = C64::new(0.0, 0.0);
            for a in 0..d1 {
                for ap in 0..d1 {
                    s += phi[a].conj() * self.m[(a * d2 + b, ap * d2 + bp)] * phi[ap];
                }
            }
            s
        })
    }

    /// `(I ⊗ ⟨ψ|) W (I ⊗ |ψ⟩)`, a `d1 × d1` operator.
    pub fn contract_second(&self, psi: &DVector<C64>) -> DMatrix<C64> {
        let (d1, d2) = (self.d1, self.d2);
        DMatrix::from_fn(d1, d1, |a, ap| {
            let mut s = C64::new(0.0, 0.0);
            for b in 0..d2 {
                for bp in 0..d2 {
                    s += psi[b].conj() * self.m[(a * d2 + b, ap * d2 + bp)] * psi[bp];
                }
            }
            s
        })
    }

    /// Numerical rank with eigenvalue threshold `rel · λ_max`.
    pub fn rank(&self, rel: f64) -> usize {
        let s = self.spectrum();
        let top = s.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        s.values.iter().filter(|v| v.abs() > rel * top).count()
    }
}

/// Unnormalized product vector `φ ⊗ ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductVector {
    pub phi: DVector<C64>,
    pub psi: DVector<C64>,
}

impl ProductVector {
    pub fn new(phi: DVector<C64>, psi: DVector<C64>) -> Result<Self> {
        if phi.norm() == 0.0 || psi.norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { phi, psi })
    }

    pub fn basis(d1: usize, d2: usize, a: usize, b: usize) -> Self {
        Self { phi: unit(d1, a), psi: unit(d2, b) }
    }

    pub fn tensor(&self) -> DVector<C64> {
        let (d1, d2) = (self.phi.len(), self.psi.len());
        DVector::from_fn(d1 * d2, |i, _| self.phi[i / d2] * self.psi[i % d2])
    }

    pub fn normalized(&self) -> Self {
        Self { phi: self.phi.normalize(), psi: self.psi.normalize() }
    }

    /// Projector onto `φ ⊗ ψ` (unit trace).
    pub fn projector(&self) -> BipartiteHermitian {
        BipartiteHermitian::projector(self.phi.len(), self.psi.len(), &self.tensor())
    }
}

pub fn unit(d: usize, i: usize) -> DVector<C64> {
    let mut v = DVector::zeros(d);
    v[i] = c(1.0);
    v
}

/// Complex Gaussian vector (Haar direction after normalization).
pub fn random_vector<R: Rng>(rng: &mut R, d: usize) -> DVector<C64> {
    DVector::from_fn(d, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

pub fn random_unit_vector<R: Rng>(rng: &mut R, d: usize) -> DVector<C64> {
    random_vector(rng, d).normalize()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

/// Random PSD operator of the given rank, `G G†` with Gaussian `G`.
pub fn random_psd<R: Rng>(rng: &mut R, d1: usize, d2: usize, rank: usize) -> BipartiteHermitian {
    let g = random_matrix(rng, d1 * d2, rank);
    BipartiteHermitian::from_computed(d1, d2, &g * g.adjoint())
}

/// Random Hermitian operator with Gaussian entries.
pub fn random_hermitian<R: Rng>(rng: &mut R, d1: usize, d2: usize) -> BipartiteHermitian {
    let g = random_matrix(rng, d1 * d2, d1 * d2);
    BipartiteHermitian::from_computed(d1, d2, &g + g.adjoint())
}

/// Separable state `Σ_i |φ_i ⊗ ψ_i⟩⟨φ_i ⊗ ψ_i|` with unnormalized factors.
pub fn random_separable<R: Rng>(rng: &mut R, d1: usize, d2: usize, terms: usize) -> BipartiteHermitian {
    let mut acc = DMatrix::zeros(d1 * d2, d1 * d2);
    for _ in 0..terms {
        let v = ProductVector { phi: random_vector(rng, d1), psi: random_vector(rng, d2) }.tensor();
        acc += &v * v.adjoint();
    }
    BipartiteHermitian::from_computed(d1, d2, acc)
}

/// Numerical rank of the matrix whose columns are `vs`: singular values above
/// `rel · σ_max`.
pub fn span_rank(vs: &[DVector<C64>], rel: f64) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let m = DMatrix::from_columns(vs);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * top).count()
}
