//! Polyhedral cones in `R^N` with exact arithmetic.
//!
//! `ConeV` is the generator form `cone{g_1, .., g_m}`, `ConeH` the inequality
//! form `{x : h_i . x >= 0}`. `ProperCone` holds both, reduced to extreme
//! rays and facets, and is what the face and detection code works with.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp::{self, LpOutcome};
use super::rational::{rank, null_vector, Rational, RationalVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperConeReport {
    pub is_closed: bool,
    pub is_full: bool,
    pub is_pointed: bool,
}

impl ProperConeReport {
    pub fn is_proper(&self) -> bool {
        self.is_closed && self.is_full && self.is_pointed
    }
}

fn check_dims(space_dim: usize, vs: &[RationalVector]) -> Result<()> {
    match vs.iter().find(|v| v.dim() != space_dim) {
        Some(v) => Err(Error::DimensionMismatch { expected: space_dim, got: v.dim() }),
        None => Ok(()),
    }
}

/// Canonical ray representatives, sorted and deduplicated.
fn canonical_set(vs: impl IntoIterator<Item = RationalVector>) -> Vec<RationalVector> {
    let mut out: Vec<RationalVector> = vs.into_iter().map(|v| v.canonical()).collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeV {
    pub space_dim: usize,
    pub generators: Vec<RationalVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeH {
    pub space_dim: usize,
    pub inequalities: Vec<RationalVector>,
}

/// Certificate attached to a membership decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipCertificate {
    /// Nonnegative coefficients on the generators reproducing the point.
    Combination(Vec<RationalVector>, #[serde(with = "rational_list")] Vec<Rational>),
    /// Functional nonnegative on the cone and negative on the point.
    Separator(RationalVector),
    /// All inequalities hold (H-form membership needs no further witness).
    Inequalities,
}

mod rational_list {
    use super::Rational;
    use crate::exact::rational::{format_rational, parse_rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub certificate: MembershipCertificate,
}

impl Membership {
    /// Re-checks the certificate against a generator list.
    pub fn verify(&self, gens: &[RationalVector], x: &RationalVector) -> bool {
        match &self.certificate {
            MembershipCertificate::Combination(vs, coeffs) => {
                self.member
                    && coeffs.iter().all(|c| !c.is_negative())
                    && vs.iter().all(|v| gens.contains(v))
                    && RationalVector::combination(x.dim(), coeffs, vs) == *x
            }
            MembershipCertificate::Separator(y) => {
                !self.member
                    && gens.iter().all(|g| !y.dot(g).is_negative())
                    && y.dot(x).is_negative()
            }
            MembershipCertificate::Inequalities => self.member,
        }
    }
}

/// Builds a canonical V-form cone and reports whether it is proper.
pub fn cone_from_generators(
    space_dim: usize,
    gens: Vec<RationalVector>,
) -> Result<(ConeV, ProperConeReport)> {
    let cone = ConeV::new(space_dim, gens)?;
    let report = cone.report();
    Ok((cone, report))
}

impl ConeV {
    pub fn new(space_dim: usize, gens: Vec<RationalVector>) -> Result<Self> {
        check_dims(space_dim, &gens)?;
        if let Some(i) = gens.iter().position(RationalVector::is_zero) {
            return Err(Error::ZeroGenerator(i));
        }
        Ok(Self { space_dim, generators: canonical_set(gens) })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        Self::new(n, rows.iter().map(|r| RationalVector::from_ints(r)).collect())
    }

    pub fn report(&self) -> ProperConeReport {
        ProperConeReport {
            is_closed: true,
            is_full: rank(&self.generators) == self.space_dim,
            is_pointed: is_pointed_v(&self.generators),
        }
    }

    fn require_proper(&self) -> Result<()> {
        let r = self.report();
        if !r.is_full {
            return Err(Error::UnsupportedCone("generators do not span the space".into()));
        }
        if !r.is_pointed {
            return Err(Error::UnsupportedCone("cone contains a line".into()));
        }
        Ok(())
    }

    /// Facet description.
    pub fn to_h_rep(&self) -> Result<ConeH> {
        self.require_proper()?;
        let normals = double_description(self.space_dim, &self.generators)?;
        Ok(ConeH { space_dim: self.space_dim, inequalities: normals })
    }

    /// `K* = {y : y.x >= 0 for all x in K}` in generator form.
    pub fn dual(&self) -> Result<ConeV> {
        let h = self.to_h_rep()?;
        Ok(ConeV { space_dim: self.space_dim, generators: h.inequalities })
    }

    /// Generators reduced to extreme rays. Requires a pointed cone.
    pub fn extreme_rays(&self) -> Result<ConeV> {
        if !is_pointed_v(&self.generators) {
            return Err(Error::UnsupportedCone("cone contains a line".into()));
        }
        let gens = prune_redundant(&self.generators);
        Ok(ConeV { space_dim: self.space_dim, generators: gens })
    }

    /// Exact membership via nonnegative-combination feasibility.
    pub fn membership(&self, x: &RationalVector) -> Result<Membership> {
        if x.dim() != self.space_dim {
            return Err(Error::DimensionMismatch { expected: self.space_dim, got: x.dim() });
        }
        Ok(combination_membership(&self.generators, x))
    }
}

impl ConeH {
    pub fn new(space_dim: usize, ineqs: Vec<RationalVector>) -> Result<Self> {
        check_dims(space_dim, &ineqs)?;
        if let Some(i) = ineqs.iter().position(RationalVector::is_zero) {
            return Err(Error::ZeroFunctional(i));
        }
        Ok(Self { space_dim, inequalities: canonical_set(ineqs) })
    }

    pub fn report(&self) -> ProperConeReport {
        ProperConeReport {
            is_closed: true,
            is_full: has_interior_h(self.space_dim, &self.inequalities),
            is_pointed: rank(&self.inequalities) == self.space_dim,
        }
    }

    /// Extreme rays of the cone. Requires a proper cone.
    pub fn to_v_rep(&self) -> Result<ConeV> {
        if rank(&self.inequalities) < self.space_dim {
            return Err(Error::UnsupportedCone("cone contains a line".into()));
        }
        let rays = double_description(self.space_dim, &self.inequalities)?;
        if rank(&rays) < self.space_dim {
            return Err(Error::UnsupportedCone("cone has empty interior".into()));
        }
        Ok(ConeV { space_dim: self.space_dim, generators: rays })
    }

    /// Drops redundant inequalities, leaving one normal per facet.
    pub fn facets(&self) -> Result<ConeH> {
        let v = self.to_v_rep()?;
        v.to_h_rep()
    }

    pub fn membership(&self, x: &RationalVector) -> Result<Membership> {
        if x.dim() != self.space_dim {
            return Err(Error::DimensionMismatch { expected: self.space_dim, got: x.dim() });
        }
        Ok(match self.inequalities.iter().find(|h| h.dot(x).is_negative()) {
            Some(h) => Membership {
                member: false,
                certificate: MembershipCertificate::Separator(h.clone()),
            },
            None => Membership { member: true, certificate: MembershipCertificate::Inequalities },
        })
    }
}

/// `K ∩ L` in inequality form. The result may be improper.
pub fn intersect(k: &ConeH, l: &ConeH) -> Result<ConeH> {
    if k.space_dim != l.space_dim {
        return Err(Error::DimensionMismatch { expected: k.space_dim, got: l.space_dim });
    }
    let all = k.inequalities.iter().chain(&l.inequalities).cloned().collect();
    ConeH::new(k.space_dim, all)
}

/// `conv(K ∪ L)` in generator form, pruned to extreme rays when pointed.
pub fn conv_union(k: &ConeV, l: &ConeV) -> Result<ConeV> {
    if k.space_dim != l.space_dim {
        return Err(Error::DimensionMismatch { expected: k.space_dim, got: l.space_dim });
    }
    let all = k.generators.iter().chain(&l.generators).cloned().collect();
    let joined = ConeV::new(k.space_dim, all)?;
    if is_pointed_v(&joined.generators) {
        joined.extreme_rays()
    } else {
        Ok(joined)
    }
}

/// A proper cone carried in both forms: sorted extreme rays and sorted facet
/// normals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperCone {
    pub space_dim: usize,
    pub generators: Vec<RationalVector>,
    pub facets: Vec<RationalVector>,
}

impl ProperCone {
    pub fn from_v(cone: &ConeV) -> Result<Self> {
        let facets = cone.to_h_rep()?.inequalities;
        // Extreme rays are recovered from the facets so both lists are minimal.
        let generators = double_description(cone.space_dim, &facets)?;
        Ok(Self { space_dim: cone.space_dim, generators, facets })
    }

    pub fn from_h(cone: &ConeH) -> Result<Self> {
        Self::from_v(&cone.to_v_rep()?)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_v(&ConeV::from_ints(rows)?)
    }

    pub fn orthant(n: usize) -> Self {
        let units: Vec<_> = (0..n).rev().map(|i| RationalVector::unit(n, i)).collect();
        Self { space_dim: n, generators: units.clone(), facets: units }
    }

    pub fn dual(&self) -> Self {
        Self {
            space_dim: self.space_dim,
            generators: self.facets.clone(),
            facets: self.generators.clone(),
        }
    }

    pub fn v(&self) -> ConeV {
        ConeV { space_dim: self.space_dim, generators: self.generators.clone() }
    }

    pub fn h(&self) -> ConeH {
        ConeH { space_dim: self.space_dim, inequalities: self.facets.clone() }
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.facets.iter().all(|h| !h.dot(x).is_negative())
    }

    /// Strictly positive on every facet.
    pub fn contains_interior(&self, x: &RationalVector) -> bool {
        self.facets.iter().all(|h| h.dot(x).is_positive())
    }

    /// Membership with a generator-combination or facet certificate.
    pub fn membership(&self, x: &RationalVector) -> Result<Membership> {
        if x.dim() != self.space_dim {
            return Err(Error::DimensionMismatch { expected: self.space_dim, got: x.dim() });
        }
        if let Some(h) = self.facets.iter().find(|h| h.dot(x).is_negative()) {
            return Ok(Membership {
                member: false,
                certificate: MembershipCertificate::Separator(h.clone()),
            });
        }
        Ok(combination_membership(&self.generators, x))
    }

    /// Largest `t >= 0` with `x - t d` still in the cone; `None` if unbounded.
    pub fn max_step(&self, x: &RationalVector, d: &RationalVector) -> Option<Rational> {
        self.facets
            .iter()
            .filter_map(|h| {
                let hd = h.dot(d);
                hd.is_positive().then(|| h.dot(x) / hd)
            })
            .min()
    }

    /// Sum of the extreme rays, an interior point.
    pub fn interior_point(&self) -> RationalVector {
        self.generators
            .iter()
            .fold(RationalVector::zeros(self.space_dim), |acc, g| &acc + g)
    }
}

/// `true` iff no nonzero nonnegative combination of `gens` vanishes.
fn is_pointed_v(gens: &[RationalVector]) -> bool {
    let Some(first) = gens.first() else {
        return true;
    };
    let n = first.dim();
    let m = gens.len();
    // sum_j mu_j g_j = 0, sum_j mu_j = 1, mu >= 0
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); m]);
    let mut b = vec![Rational::zero(); n];
    b.push(Rational::one());
    !lp::feasible(&a, &b, m).is_feasible()
}

/// `true` iff some `x` has `h.x > 0` for every inequality.
fn has_interior_h(n: usize, ineqs: &[RationalVector]) -> bool {
    if ineqs.is_empty() {
        return true;
    }
    // h.(u - v) - s = 1 with u, v, s >= 0
    let m = ineqs.len();
    let a: Vec<Vec<Rational>> = ineqs
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut row: Vec<Rational> = h.coords().to_vec();
            row.extend(h.coords().iter().map(|x| -x));
            row.extend((0..m).map(|j| if i == j { -Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let b = vec![Rational::one(); m];
    lp::feasible(&a, &b, 2 * n + m).is_feasible()
}

fn combination_membership(gens: &[RationalVector], x: &RationalVector) -> Membership {
    let n = x.dim();
    let m = gens.len();
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    match lp::feasible(&a, x.coords(), m) {
        LpOutcome::Optimal { x: mu, .. } | LpOutcome::Unbounded { x: mu, .. } => Membership {
            member: true,
            certificate: MembershipCertificate::Combination(gens.to_vec(), mu),
        },
        LpOutcome::Infeasible { farkas } => Membership {
            member: false,
            certificate: MembershipCertificate::Separator(RationalVector::new(farkas)),
        },
    }
}

/// Removes generators that are nonnegative combinations of the others.
fn prune_redundant(gens: &[RationalVector]) -> Vec<RationalVector> {
    let mut kept: Vec<RationalVector> = gens.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<RationalVector> =
            kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        if !others.is_empty() && combination_membership(&others, &kept[i]).member {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Incremental double description: extreme rays of `{x : A x >= 0}`.
///
/// `rows` must have rank `n` (pointed cone). The returned rays are canonical
/// and sorted; the zero cone yields an empty list.
pub fn double_description(n: usize, rows: &[RationalVector]) -> Result<Vec<RationalVector>> {
    if rank(rows) < n {
        return Err(Error::UnsupportedCone("inequalities do not have full rank".into()));
    }
    // Pick n independent rows for the starting simplicial cone.
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    for (i, _) in rows.iter().enumerate() {
        let mut trial: Vec<RationalVector> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    let mut rays: Vec<RationalVector> = (0..n)
        .map(|k| {
            let others: Vec<RationalVector> =
                basis.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &r)| rows[r].clone()).collect();
            let mut v = if n == 1 {
                RationalVector::unit(1, 0)
            } else {
                null_vector(&others, n).expect("independent rows")
            };
            if rows[basis[k]].dot(&v).is_negative() {
                v = -&v;
            }
            v.canonical()
        })
        .collect();
    let mut processed: Vec<usize> = basis.clone();

    for (i, h) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| h.dot(r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        if neg.is_empty() {
            processed.push(i);
            continue;
        }
        let tight = |r: &RationalVector| -> Vec<usize> {
            processed.iter().copied().filter(|&p| rows[p].dot(r).is_zero()).collect()
        };
        let tight_sets: Vec<Vec<usize>> = rays.iter().map(tight).collect();
        let mut next: Vec<RationalVector> = (0..rays.len())
            .filter(|j| !vals[*j].is_negative())
            .map(|j| rays[j].clone())
            .collect();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = tight_sets[p]
                    .iter()
                    .copied()
                    .filter(|t| tight_sets[q].contains(t))
                    .collect();
                if n >= 2 && common.len() < n - 2 {
                    continue;
                }
                let common_rows: Vec<RationalVector> = common.iter().map(|&t| rows[t].clone()).collect();
                if n >= 2 && rank(&common_rows) != n - 2 {
                    continue;
                }
                // (h.p) q - (h.q) p lies on the new hyperplane.
                let new_ray = &rays[q].scale(&vals[p]) - &rays[p].scale(&vals[q]);
                if !new_ray.is_zero() {
                    next.push(new_ray.canonical());
                }
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(i);
    }
    rays.sort();
    Ok(rays)
}
