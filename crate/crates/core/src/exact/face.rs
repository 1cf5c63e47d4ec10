//! Faces of polyhedral proper cones.
//!
//! A face is identified by the set of facets that vanish on it; its
//! generators are the extreme rays lying in all of those facets.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cone::ProperCone;
use super::lp::{self, LpOutcome};
use super::rational::{rank, Rational, RationalVector};
use crate::error::{Error, Result};

/// Default cap on facets for face enumeration (`2^facets` subsets).
pub const FACET_BUDGET: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Indices into the parent's facet list that vanish on the face.
    pub tight_set: Vec<usize>,
    pub generators: Vec<RationalVector>,
    pub dim: usize,
}

impl Face {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Subface order: generator inclusion.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.generators.iter().all(|g| other.generators.contains(g))
    }

    /// Relative-interior point (sum of generators).
    pub fn relative_interior_point(&self, space_dim: usize) -> RationalVector {
        self.generators
            .iter()
            .fold(RationalVector::zeros(space_dim), |acc, g| &acc + g)
    }
}

fn tight_facets(cone: &ProperCone, pts: &[RationalVector]) -> Vec<usize> {
    (0..cone.facets.len())
        .filter(|&i| pts.iter().all(|p| cone.facets[i].dot(p).is_zero()))
        .collect()
}

fn face_for_tight_set(cone: &ProperCone, tight: Vec<usize>) -> Face {
    let generators: Vec<RationalVector> = cone
        .generators
        .iter()
        .filter(|g| tight.iter().all(|&i| cone.facets[i].dot(g).is_zero()))
        .cloned()
        .collect();
    let dim = rank(&generators);
    Face { tight_set: tight, generators, dim }
}

/// Smallest face containing all `pts` (which must lie in the cone).
pub fn face_spanned_by(cone: &ProperCone, pts: &[RationalVector]) -> Face {
    if pts.is_empty() || pts.iter().all(RationalVector::is_zero) {
        return face_for_tight_set(cone, (0..cone.facets.len()).collect());
    }
    face_for_tight_set(cone, tight_facets(cone, pts))
}

/// Minimal face `F_K(x)` from the tight set of `x`.
pub fn face_of(cone: &ProperCone, x: &RationalVector) -> Result<Face> {
    if x.dim() != cone.space_dim {
        return Err(Error::DimensionMismatch { expected: cone.space_dim, got: x.dim() });
    }
    if !cone.contains(x) {
        return Err(Error::NotInCone);
    }
    Ok(face_spanned_by(cone, std::slice::from_ref(x)))
}

/// Largest `alpha >= 0` (capped at 1) with `x0 - alpha x1` in the cone,
/// decided from the generator form alone. `Some` iff some `alpha > 0` works,
/// which is exactly `x1 ∈ F_K(x0)`.
pub fn alpha_step(cone: &ProperCone, x0: &RationalVector, x1: &RationalVector) -> Option<Rational> {
    // alpha x1 + sum_j mu_j g_j = x0, maximize alpha
    let n = cone.space_dim;
    let m = cone.generators.len();
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = vec![x1[i].clone()];
            row.extend(cone.generators.iter().map(|g| g[i].clone()));
            row
        })
        .collect();
    let mut c = vec![Rational::zero(); m + 1];
    c[0] = Rational::one();
    match lp::solve(&a, x0.coords(), &c) {
        LpOutcome::Optimal { value, .. } if value.is_positive() => Some(value.min(Rational::one())),
        LpOutcome::Unbounded { .. } => Some(Rational::one()),
        _ => None,
    }
}

/// Generators of `F_K(x)` selected with the alpha-step test.
pub fn face_generators_via_alpha(cone: &ProperCone, x: &RationalVector) -> Vec<RationalVector> {
    cone.generators
        .iter()
        .filter(|g| alpha_step(cone, x, g).is_some())
        .cloned()
        .collect()
}

/// `Φ(F)`: the face of the dual cone orthogonal to every generator of `F`.
pub fn complementary_face(cone: &ProperCone, face: &Face) -> Face {
    let dual = cone.dual();
    let orth: Vec<RationalVector> = dual
        .generators
        .iter()
        .filter(|y| face.generators.iter().all(|g| y.dot(g).is_zero()))
        .cloned()
        .collect();
    face_spanned_by(&dual, &orth)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
}

impl FaceLattice {
    /// `(i, j)` pairs with face `i` a proper subface of face `j`.
    pub fn subface_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            for (j, g) in self.faces.iter().enumerate() {
                if i != j && f.is_subface_of(g) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// All faces, from `{0}` up to the whole cone, ordered by dimension then
/// generator list.
pub fn enumerate_faces(cone: &ProperCone) -> Result<FaceLattice> {
    enumerate_faces_with_budget(cone, FACET_BUDGET)
}

pub fn enumerate_faces_with_budget(cone: &ProperCone, budget: usize) -> Result<FaceLattice> {
    let f = cone.facets.len();
    if f > budget {
        return Err(Error::FacetBudget { facets: f, limit: budget });
    }
    let mut seen: BTreeSet<Vec<RationalVector>> = BTreeSet::new();
    let mut faces = Vec::new();
    for mask in 0u32..(1u32 << f) {
        let subset: Vec<usize> = (0..f).filter(|i| mask & (1 << i) != 0).collect();
        let gens = face_for_tight_set(cone, subset).generators;
        if seen.insert(gens.clone()) {
            // Close the tight set so each face carries all its facets.
            faces.push(face_spanned_by(cone, &gens));
        }
    }
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.generators.cmp(&b.generators)));
    Ok(FaceLattice { faces })
}
