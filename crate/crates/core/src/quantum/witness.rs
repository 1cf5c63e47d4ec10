//! Witness classification, product-vector zero sets, PPT tests and the
//! necessary condition for optimality with respect to decomposable witnesses.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::hermitian::{random_unit_vector, span_rank, BipartiteHermitian, ProductVector, C64};
use super::seesaw::{multistart, start_rng, SearchConfig};
use crate::detection::ToJson;
use crate::error::{Error, Result};
use crate::exec;

/// Zero-set membership threshold, relative to `‖W‖`.
pub const ZERO_TOLERANCE: f64 = 1e-7;
/// Hilbert–Schmidt distance below which two product projectors coincide.
pub const DEDUP_DISTANCE: f64 = 1e-6;
/// Relative singular-value threshold for span ranks.
pub const RANK_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessClass {
    #[serde(rename = "positive")]
    Positive,
    #[serde(rename = "witness")]
    Witness,
    #[serde(rename = "not_in_W1")]
    NotInW1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Exact,
    Heuristic,
}

fn enum_json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("unit enum")
}

fn complex_json(z: &C64) -> Value {
    json!([z.re, z.im])
}

impl ToJson for BipartiteHermitian {
    fn to_json(&self) -> Value {
        let m = self.matrix();
        let rows: Vec<Value> = (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(&m[(i, j)])).collect()))
            .collect();
        json!({ "d1": self.d1(), "d2": self.d2(), "matrix": rows })
    }
}

fn vector_json(v: &DVector<C64>) -> Value {
    Value::Array(v.iter().map(complex_json).collect())
}

impl ToJson for ProductVector {
    fn to_json(&self) -> Value {
        json!({ "phi": vector_json(&self.phi), "psi": vector_json(&self.psi) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

impl ToJson for PsdReport {
    fn to_json(&self) -> Value {
        json!({ "psd": self.psd, "min_eigenvalue": self.min_eigenvalue })
    }
}

/// `λ_min(A) ≥ -τ ‖A‖`.
pub fn is_psd(a: &BipartiteHermitian, tol: f64) -> PsdReport {
    let s = a.spectrum();
    let norm = s.min().abs().max(s.max().abs());
    PsdReport { psd: s.min() >= -tol * norm, min_eigenvalue: s.min() }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptReport {
    pub ppt: bool,
    pub min_gamma_eigenvalue: f64,
}

impl ToJson for PptReport {
    fn to_json(&self) -> Value {
        json!({ "ppt": self.ppt, "min_gamma_eigenvalue": self.min_gamma_eigenvalue })
    }
}

/// PPT test for a state. Non-PSD input is rejected.
pub fn is_ppt(rho: &BipartiteHermitian, tol: f64) -> Result<PptReport> {
    let p = is_psd(rho, tol);
    if !p.psd {
        return Err(Error::NotPsd(p.min_eigenvalue));
    }
    let g = is_psd(&rho.partial_transpose(), tol);
    Ok(PptReport { ppt: g.psd, min_gamma_eigenvalue: g.min_eigenvalue })
}

/// Exact separability where PPT is equivalent to it: 2×2, 2×3 and 3×2.
pub fn separability_small(rho: &BipartiteHermitian, tol: f64) -> Result<bool> {
    match (rho.d1(), rho.d2()) {
        (2, 2) | (2, 3) | (3, 2) => Ok(is_ppt(rho, tol)?.ppt),
        (d1, d2) => Err(Error::UndecidableDimension { d1, d2 }),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub min_eigenvalue: f64,
    /// Best value found on unit product vectors.
    pub min_product_value: f64,
    pub classification: WitnessClass,
    pub confidence: Confidence,
    /// Product vector with negative expectation, for `not_in_W1`.
    pub certificate: Option<ProductVector>,
}

impl ToJson for WitnessReport {
    fn to_json(&self) -> Value {
        json!({
            "min_eigenvalue": self.min_eigenvalue,
            "min_product_value": self.min_product_value,
            "classification": enum_json(&self.classification),
            "confidence": enum_json(&self.confidence),
            "certificate": self.certificate.to_json(),
        })
    }
}

impl WitnessReport {
    pub fn is_witness(&self) -> bool {
        self.classification == WitnessClass::Witness
    }
}

/// Most negative computational-basis product, first index on ties.
fn best_basis_product(w: &BipartiteHermitian) -> (f64, ProductVector) {
    let m = w.matrix();
    let i = (0..w.dim()).fold(0, |best, i| if m[(i, i)].re < m[(best, best)].re { i } else { best });
    (m[(i, i)].re, ProductVector::basis(w.d1(), w.d2(), i / w.d2(), i % w.d2()))
}

pub fn classify_witness(w: &BipartiteHermitian, cfg: &SearchConfig) -> WitnessReport {
    let psd = is_psd(w, cfg.tolerance);
    let threshold = -cfg.tolerance * w.op_norm();
    let runs = multistart(w, cfg.starts_for(w), cfg.seed, cfg.exec);
    let (seesaw_value, seesaw_vector) = runs
        .into_iter()
        .map(|r| (r.value, r.vector))
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one start");
    let (basis_value, basis_vector) = best_basis_product(w);
    let (min_product_value, best) = if basis_value <= seesaw_value {
        (basis_value, basis_vector)
    } else {
        (seesaw_value, seesaw_vector)
    };
    let (classification, confidence, certificate) = if psd.psd {
        (WitnessClass::Positive, Confidence::Exact, None)
    } else if min_product_value < threshold {
        (WitnessClass::NotInW1, Confidence::Exact, Some(best))
    } else {
        (WitnessClass::Witness, Confidence::Heuristic, None)
    };
    WitnessReport {
        min_eigenvalue: psd.min_eigenvalue,
        min_product_value,
        classification,
        confidence,
        certificate,
    }
}

/// Errors unless `w` classifies as a witness.
pub fn require_witness(w: &BipartiteHermitian, cfg: &SearchConfig) -> Result<WitnessReport> {
    let report = classify_witness(w, cfg);
    match report.classification {
        WitnessClass::Witness => Ok(report),
        WitnessClass::Positive => Err(Error::NotWitness("operator is positive semidefinite".into())),
        WitnessClass::NotInW1 => {
            Err(Error::NotWitness("operator is negative on a product vector".into()))
        }
    }
}

/// Unit product vectors on which `W` vanishes, as found by the see-saw.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub vectors: Vec<ProductVector>,
    /// `|⟨φ⊗ψ|W|φ⊗ψ⟩|` per vector.
    pub values: Vec<f64>,
    pub span_rank: usize,
    pub dim: usize,
}

impl ZeroSet {
    pub fn spans(&self) -> bool {
        self.span_rank == self.dim
    }

    pub fn tensors(&self) -> Vec<DVector<C64>> {
        self.vectors.iter().map(ProductVector::tensor).collect()
    }

    pub fn projectors(&self) -> Vec<BipartiteHermitian> {
        self.vectors.iter().map(ProductVector::projector).collect()
    }

    /// Every member is a unit product vector with `|value| ≤ τ_zero ‖W‖`.
    pub fn verify(&self, w: &BipartiteHermitian) -> bool {
        let bound = ZERO_TOLERANCE * w.op_norm();
        self.vectors.iter().all(|v| {
            let unit = (v.phi.norm() - 1.0).abs() < 1e-9 && (v.psi.norm() - 1.0).abs() < 1e-9;
            unit && w.expectation(&v.tensor()).abs() <= bound
        }) && self.span_rank == span_rank(&self.tensors(), RANK_THRESHOLD)
    }
}

impl ToJson for ZeroSet {
    fn to_json(&self) -> Value {
        json!({
            "vectors": self.vectors.to_json(),
            "values": self.values.to_json(),
            "span_rank": self.span_rank,
            "dim": self.dim,
        })
    }
}

/// HS distance between the projectors onto two unit vectors.
fn projector_distance(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    let overlap = a.dotc(b).norm_sqr();
    (2.0 - 2.0 * overlap).max(0.0).sqrt()
}

/// Zero set of any `W ∈ W₁`, without the witness precondition.
pub fn product_zero_set(w: &BipartiteHermitian, cfg: &SearchConfig) -> ZeroSet {
    let bound = ZERO_TOLERANCE * w.op_norm();
    let mut vectors: Vec<ProductVector> = Vec::new();
    let mut tensors: Vec<DVector<C64>> = Vec::new();
    let mut values = Vec::new();
    for run in multistart(w, cfg.starts_for(w), cfg.seed, cfg.exec) {
        if run.value.abs() > bound {
            continue;
        }
        let pv = run.vector.normalized();
        let t = pv.tensor();
        if tensors.iter().any(|u| projector_distance(u, &t) < DEDUP_DISTANCE) {
            continue;
        }
        values.push(run.value.abs());
        tensors.push(t);
        vectors.push(pv);
    }
    ZeroSet { span_rank: span_rank(&tensors, RANK_THRESHOLD), vectors, values, dim: w.dim() }
}

pub fn witness_zero_set(w: &BipartiteHermitian, cfg: &SearchConfig) -> Result<ZeroSet> {
    require_witness(w, cfg)?;
    Ok(product_zero_set(w, cfg))
}

/// Necessary condition for optimality with respect to decomposable witnesses:
/// both `W` and `W^Γ` must have spanning zero sets.
#[derive(Clone, Debug, PartialEq)]
pub struct NdReport {
    pub applicable: bool,
    pub w_spanning: bool,
    pub w_gamma_spanning: bool,
    pub passes: bool,
    pub w_span_rank: usize,
    pub w_gamma_span_rank: usize,
    pub explanation: Option<String>,
}

impl ToJson for NdReport {
    fn to_json(&self) -> Value {
        json!({
            "applicable": self.applicable,
            "w_spanning": self.w_spanning,
            "wGamma_spanning": self.w_gamma_spanning,
            "passes": self.passes,
            "w_span_rank": self.w_span_rank,
            "wGamma_span_rank": self.w_gamma_span_rank,
            "explanation": self.explanation,
            "necessary_only": true,
        })
    }
}

pub fn nd_optimality_necessary(w: &BipartiteHermitian, cfg: &SearchConfig) -> Result<NdReport> {
    require_witness(w, cfg)?;
    let gamma = w.partial_transpose();
    if is_psd(&gamma, cfg.tolerance).psd {
        return Ok(NdReport {
            applicable: false,
            w_spanning: false,
            w_gamma_spanning: false,
            passes: false,
            w_span_rank: 0,
            w_gamma_span_rank: 0,
            explanation: Some("partial transpose is PSD, so W detects no PPT state".into()),
        });
    }
    let zw = product_zero_set(w, cfg);
    let zg = product_zero_set(&gamma, cfg);
    Ok(NdReport {
        applicable: true,
        w_spanning: zw.spans(),
        w_gamma_spanning: zg.spans(),
        passes: zw.spans() && zg.spans(),
        w_span_rank: zw.span_rank,
        w_gamma_span_rank: zg.span_rank,
        explanation: None,
    })
}

/// Sampled test of `ρ ∈ S_PPT` against the extreme rays `P`, `P^Γ` of `W_D`,
/// next to the direct eigenvalue test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WdPairingReport {
    pub sampled_route: bool,
    pub eigen_route: bool,
    /// The sampled route never rejects what the eigenvalue route accepts.
    pub consistent: bool,
    pub samples: usize,
}

impl ToJson for WdPairingReport {
    fn to_json(&self) -> Value {
        json!({
            "sampled_route": self.sampled_route,
            "eigen_route": self.eigen_route,
            "consistent": self.consistent,
            "samples": self.samples,
        })
    }
}

pub fn wd_pairing_check(rho: &BipartiteHermitian, samples: usize, cfg: &SearchConfig) -> WdPairingReport {
    let bound = -cfg.tolerance * rho.op_norm();
    let (d1, d2) = (rho.d1(), rho.d2());
    let sampled_route = exec::all(cfg.exec, &(0..samples).collect::<Vec<_>>(), |&i| {
        let mut r = start_rng(cfg.seed, i);
        let p = BipartiteHermitian::projector(d1, d2, &random_unit_vector(&mut r, d1 * d2));
        rho.hs(&p) >= bound && rho.hs(&p.partial_transpose()) >= bound
    });
    let eigen_route =
        is_psd(rho, cfg.tolerance).psd && is_psd(&rho.partial_transpose(), cfg.tolerance).psd;
    WdPairingReport { sampled_route, eigen_route, consistent: sampled_route || !eigen_route, samples }
}
