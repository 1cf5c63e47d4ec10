//! Seeded sampling of proper cones, cone pairs and points for property
//! checks and audits.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cone::{ConeV, ProperCone};
use super::rational::{rat, RationalVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const COORD_RANGE: i64 = 5;
const MAX_ATTEMPTS: usize = 10_000;

fn random_int_vector<R: Rng>(rng: &mut R, n: usize) -> RationalVector {
    RationalVector::new((0..n).map(|_| rat(rng.random_range(-COORD_RANGE..=COORD_RANGE))).collect())
}

/// Random proper cone in `R^n` with integer generators in `[-5, 5]`,
/// rejection-sampled until full and pointed.
pub fn random_proper_cone<R: Rng>(rng: &mut R, n: usize) -> ProperCone {
    for _ in 0..MAX_ATTEMPTS {
        let m = rng.random_range(n..=n + 3);
        let gens: Vec<RationalVector> =
            (0..m).map(|_| random_int_vector(rng, n)).filter(|g| !g.is_zero()).collect();
        let Ok(cone) = ConeV::new(n, gens) else { continue };
        if !cone.report().is_proper() {
            continue;
        }
        if let Ok(p) = ProperCone::from_v(&cone) {
            if p.facets.len() <= super::face::FACET_BUDGET {
                return p;
            }
        }
    }
    panic!("could not sample a proper cone in R^{n}");
}

/// Random nonnegative integer combination of `gens`; some coefficients are
/// zero so points also land on proper faces.
pub fn random_combination<R: Rng>(rng: &mut R, n: usize, gens: &[RationalVector]) -> RationalVector {
    loop {
        let coeffs: Vec<_> = gens
            .iter()
            .map(|_| if rng.random_bool(0.35) { rat(0) } else { rat(rng.random_range(1..=4)) })
            .collect();
        let x = RationalVector::combination(n, &coeffs, gens);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random point of `R^n` inside the cone (nonzero).
pub fn random_point_in<R: Rng>(rng: &mut R, cone: &ProperCone) -> RationalVector {
    random_combination(rng, cone.space_dim, &cone.generators)
}

/// A proper pair `K ⊂ L` with `K ≠ L`: `K` is spanned by random points of `L`.
pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (ProperCone, ProperCone) {
    for _ in 0..MAX_ATTEMPTS {
        let l = random_proper_cone(rng, n);
        let m = rng.random_range(n..=n + 2);
        let gens: Vec<RationalVector> = (0..m).map(|_| random_point_in(rng, &l)).collect();
        let Ok(kv) = ConeV::new(n, gens) else { continue };
        if !kv.report().is_proper() {
            continue;
        }
        let Ok(k) = ProperCone::from_v(&kv) else { continue };
        if k.generators == l.generators {
            continue;
        }
        if k.facets.len() > super::face::FACET_BUDGET {
            continue;
        }
        return (k, l);
    }
    panic!("could not sample a cone pair in R^{n}");
}

/// Random element of `L \ K`, or `None` if sampling keeps landing in `K`.
pub fn random_outside<R: Rng>(rng: &mut R, k: &ProperCone, l: &ProperCone) -> Option<RationalVector> {
    (0..200).map(|_| random_point_in(rng, l)).find(|w| !k.contains(w))
}

/// Random functional in `K*`.
pub fn random_dual_point<R: Rng>(rng: &mut R, k: &ProperCone) -> RationalVector {
    random_point_in(rng, &k.dual())
}
