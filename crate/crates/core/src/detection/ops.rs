//! Detection, the finer order and optimality, written against
//! [`ConePairOracle`] so both backends share one implementation.

use std::cmp::Ordering;

use num::{One, Signed};

use super::oracle::{ConePairOracle, FinerDecision};
use super::verdict::{DetectionVerdict, FinerVerdict, ImproveResult, Improvement, OptimalityVerdict};
use crate::error::{Error, Result};
use crate::exec;

pub const DEFAULT_KSTAR_SAMPLES: usize = 64;
pub const DEFAULT_SUBTRACTION_DIRECTIONS: usize = 32;

type Finer<P> = FinerVerdict<
    <P as ConePairOracle>::Scalar,
    <P as ConePairOracle>::Element,
    <P as ConePairOracle>::Functional,
>;
type Optimality<P> = OptimalityVerdict<
    <P as ConePairOracle>::Scalar,
    <P as ConePairOracle>::Element,
    <P as ConePairOracle>::Functional,
>;

fn is_neg<P: ConePairOracle>(pair: &P, y: &P::Functional, x: &P::Element) -> bool {
    let v = pair.pairing(y, x);
    pair.sign(&v, y, x) == Ordering::Less
}

/// Does `w ∈ L` detect `ρ`, i.e. `ρ(w) < 0` with `ρ ∈ K* \ L*`?
pub fn detects<P: ConePairOracle>(
    pair: &P,
    w: &P::Element,
    rho: &P::Functional,
) -> Result<DetectionVerdict<P::Scalar>> {
    if !pair.in_l(w) {
        return Err(Error::NotInL);
    }
    let value = pair.pairing(rho, w);
    let negative = pair.sign(&value, rho, w) == Ordering::Less;
    // A negative pairing against w ∈ L already proves ρ ∉ L*.
    let domain_ok = pair.in_kstar(rho) && (negative || pair.in_lstar(rho) == Some(false));
    Ok(DetectionVerdict { detected: negative && domain_ok, value, domain_ok })
}

/// Decides `w1 ≥_f w2` through the equivalent order `∃ λ > 0: w2 - λ w1 ∈ K`.
pub fn is_finer<P: ConePairOracle>(pair: &P, w1: &P::Element, w2: &P::Element) -> Result<Finer<P>> {
    if !pair.in_l(w1) || !pair.in_l(w2) {
        return Err(Error::NotInL);
    }
    Ok(match pair.decide_finer(w1, w2) {
        FinerDecision::Finer { lambda, k, w2_detects_nothing } => FinerVerdict {
            finer: true,
            lambda: Some(lambda),
            k_certificate: Some(k),
            counterexample: None,
            w2_detects_nothing,
        },
        FinerDecision::NotFiner { counterexample } => FinerVerdict {
            finer: false,
            lambda: None,
            k_certificate: None,
            counterexample,
            w2_detects_nothing: false,
        },
    })
}

/// Re-checks a finer verdict through the oracle's membership and pairing.
pub fn verify_finer<P: ConePairOracle>(
    pair: &P,
    w1: &P::Element,
    w2: &P::Element,
    verdict: &Finer<P>,
) -> bool {
    match (&verdict.k_certificate, &verdict.counterexample) {
        (Some(k), None) => {
            let Some(lambda) = &verdict.lambda else { return false };
            let positive_or_trivial = lambda.is_positive() || verdict.w2_detects_nothing;
            verdict.finer
                && positive_or_trivial
                && !lambda.is_negative()
                && pair.in_k(k)
                && pair.in_k(&pair.sub_scaled(w2, lambda, w1))
        }
        (None, Some(rho)) => {
            if verdict.finer || !pair.in_kstar(rho) {
                return false;
            }
            let v1 = pair.pairing(rho, w1);
            let v2 = pair.pairing(rho, w2);
            pair.sign(&v2, rho, w2) == Ordering::Less && pair.sign(&v1, rho, w1) != Ordering::Less
        }
        // Numerical backends may answer "not finer" without a functional.
        (None, None) => !verdict.finer,
        (Some(_), Some(_)) => false,
    }
}

/// Sampled estimate of `inf_{ρ ∈ D(w2)} |ρ(w1) / ρ(w2)|`.
///
/// Only the sampled subset of `D(w2)` is seen, so the result is an upper
/// estimate of the true infimum.
pub fn lambda_star<P: ConePairOracle>(
    pair: &P,
    w1: &P::Element,
    w2: &P::Element,
    samples: &[P::Functional],
) -> Result<P::Scalar> {
    samples
        .iter()
        .filter(|rho| is_neg(pair, rho, w2))
        .map(|rho| (pair.pairing(rho, w1) / pair.pairing(rho, w2)).abs())
        .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        .ok_or(Error::EmptyDetectionSample)
}

/// `P^L(w)`: extreme functionals of `L*` vanishing on `w`.
pub fn zero_set<P: ConePairOracle>(pair: &P, w: &P::Element) -> Result<Vec<P::Functional>> {
    if !pair.in_l(w) {
        return Err(Error::NotInL);
    }
    Ok(pair.zero_functionals(w))
}

/// Largest step along `k ∈ K` keeping `w` inside `L`.
pub fn improve<P: ConePairOracle>(
    pair: &P,
    w: &P::Element,
    k: &P::Element,
) -> Result<ImproveResult<P::Scalar, P::Element>> {
    if pair.is_zero_element(k) {
        return Err(Error::ZeroDirection);
    }
    if !pair.in_l(w) {
        return Err(Error::NotInL);
    }
    if !pair.in_k(k) {
        return Err(Error::NotInK);
    }
    let lambda_max = pair
        .max_step_in_l(w, k)
        .ok_or_else(|| Error::UnsupportedCone("L contains the line through k".into()))?;
    let w_prime = pair.sub_scaled(w, &lambda_max, k);
    Ok(ImproveResult { w_prime, lambda_max })
}

/// Optimality of `w ∈ L \ K`, decided twice: by the spanning criterion on
/// the zero set and by searching for a subtractable `k ∈ K`.
pub fn is_optimal<P: ConePairOracle>(pair: &P, w: &P::Element) -> Result<Optimality<P>> {
    is_optimal_with(pair, w, DEFAULT_SUBTRACTION_DIRECTIONS)
}

pub fn is_optimal_with<P: ConePairOracle>(
    pair: &P,
    w: &P::Element,
    directions: usize,
) -> Result<Optimality<P>> {
    if !pair.in_l(w) {
        return Err(Error::NotInL);
    }
    if pair.in_k(w) {
        return Err(Error::ElementInK);
    }
    let zero_set = pair.zero_functionals(w);
    let interior_combination = pair.interior_combination(&zero_set);
    let spanning_verdict = interior_combination.is_some();

    let candidates = pair.subtract_search_directions(w, directions, pair.seed());
    let steps = exec::map_slice(pair.exec(), &candidates, |k| pair.max_step_in_l(w, k));
    let improvement = candidates.iter().zip(steps).find_map(|(k, step)| match step {
        Some(lambda) if pair.is_improving_step(&lambda, w, k) => {
            Some(Improvement { k: k.clone(), lambda })
        }
        Some(_) => None,
        // Unbounded steps cannot occur for proper L; treat as improving.
        None => Some(Improvement { k: k.clone(), lambda: P::Scalar::one() }),
    });
    let subtraction_verdict = improvement.is_none();

    Ok(OptimalityVerdict {
        optimal: spanning_verdict,
        spanning_verdict,
        subtraction_verdict,
        zero_set,
        interior_combination,
        improvement,
        directions_tried: candidates.len(),
    })
}

/// Re-checks both optimality certificates.
pub fn verify_optimality<P: ConePairOracle>(pair: &P, w: &P::Element, verdict: &Optimality<P>) -> bool {
    let spanning_ok = match &verdict.interior_combination {
        Some(weights) => {
            let nonneg = weights.iter().all(|c| !c.is_negative());
            nonneg
                && weights.len() == verdict.zero_set.len()
                && pair.interior_kstar_point(&pair.combine(weights, &verdict.zero_set))
        }
        None => !verdict.spanning_verdict,
    };
    let zero_ok = verdict.zero_set.iter().all(|y| pair.is_zero_pairing(y, w));
    let improvement_ok = match &verdict.improvement {
        Some(imp) => {
            !verdict.subtraction_verdict
                && pair.in_k(&imp.k)
                && imp.lambda.is_positive()
                && pair.in_l(&pair.sub_scaled(w, &imp.lambda, &imp.k))
        }
        None => verdict.subtraction_verdict,
    };
    spanning_ok && zero_ok && improvement_ok
}

/// Every sampled `ρ` detected by `w2` is also detected by `w1`.
pub fn detection_superset_check<P: ConePairOracle>(
    pair: &P,
    w1: &P::Element,
    w2: &P::Element,
    samples: &[P::Functional],
) -> bool {
    exec::all(pair.exec(), samples, |rho| !is_neg(pair, rho, w2) || is_neg(pair, rho, w1))
}

/// Convenience: `K*` samples drawn with the oracle's seed.
pub fn default_samples<P: ConePairOracle>(pair: &P) -> Vec<P::Functional> {
    pair.sample_kstar(DEFAULT_KSTAR_SAMPLES, pair.seed())
}

/// `w ∈ K` is the trivial case in which `w` detects nothing.
pub fn detects_nothing<P: ConePairOracle>(pair: &P, w: &P::Element) -> bool {
    pair.in_k(w)
}
