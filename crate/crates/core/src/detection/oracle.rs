use std::cmp::Ordering;
use std::fmt::Debug;

use num::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact::rational::{format_rational, Rational, RationalVector};
use crate::exec::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Exact,
    Quantum,
}

/// JSON encoding used in verdict records.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for f64 {
    fn to_json(&self) -> Value {
        Value::from(*self)
    }
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl ToJson for RationalVector {
    fn to_json(&self) -> Value {
        Value::from(self.to_strings())
    }
}

impl<T: ToJson> ToJson for Vec<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: ToJson> ToJson for Option<T> {
    fn to_json(&self) -> Value {
        self.as_ref().map_or(Value::Null, ToJson::to_json)
    }
}

/// Ordered field of scalars the pairing takes values in.
pub trait Scalar: Signed + PartialOrd + Clone + Debug + Send + Sync + ToJson {
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Outcome of a backend's search for `lambda > 0` with `w2 - lambda w1 ∈ K`.
#[derive(Clone, Debug, PartialEq)]
pub enum FinerDecision<S, E, F> {
    Finer {
        lambda: S,
        k: E,
        /// `w2 ∈ K`, so `D(w2)` is empty and `w1` is trivially finer.
        w2_detects_nothing: bool,
    },
    NotFiner {
        /// `ρ ∈ K*` with `ρ(w2) < 0 <= ρ(w1)`, when the backend can produce one.
        counterexample: Option<F>,
    },
}

/// A pair of proper cones `K ⊂ L` as seen by the detection machinery.
///
/// Implementations must be safe for concurrent read-only use.
pub trait ConePairOracle: Sync {
    type Scalar: Scalar;
    type Element: Clone + Debug + Send + Sync + ToJson;
    type Functional: Clone + Debug + Send + Sync + ToJson;

    fn backend(&self) -> Backend;
    /// Relative tolerance for zero/sign decisions (`0` for exact backends).
    fn tolerance(&self) -> f64;
    fn seed(&self) -> u64;
    fn exec(&self) -> Exec {
        Exec::Parallel
    }

    fn in_k(&self, x: &Self::Element) -> bool;
    fn in_l(&self, x: &Self::Element) -> bool;
    fn in_kstar(&self, y: &Self::Functional) -> bool;
    /// `None` when the backend cannot decide membership in `L*`.
    fn in_lstar(&self, y: &Self::Functional) -> Option<bool>;

    fn pairing(&self, y: &Self::Functional, x: &Self::Element) -> Self::Scalar;

    /// Sign of a pairing value, with the backend's tolerance scaled to the
    /// operands.
    fn sign(&self, value: &Self::Scalar, y: &Self::Functional, x: &Self::Element) -> Ordering {
        let _ = (y, x);
        if value.is_negative() {
            Ordering::Less
        } else if value.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }

    /// Whether `y` vanishes on `x`, as used for zero-set membership.
    fn is_zero_pairing(&self, y: &Self::Functional, x: &Self::Element) -> bool {
        self.sign(&self.pairing(y, x), y, x) == Ordering::Equal
    }

    /// `x - lambda d`
    fn sub_scaled(&self, x: &Self::Element, lambda: &Self::Scalar, d: &Self::Element) -> Self::Element;
    fn is_zero_element(&self, x: &Self::Element) -> bool;

    /// Extreme functionals of `L*` vanishing on `w` (the set `P^L(w)`).
    fn zero_functionals(&self, w: &Self::Element) -> Vec<Self::Functional>;
    /// Convex weights on `ys` whose combination lies in `Int K*`, if any.
    fn interior_combination(&self, ys: &[Self::Functional]) -> Option<Vec<Self::Scalar>>;
    fn combine(&self, weights: &[Self::Scalar], ys: &[Self::Functional]) -> Self::Functional;
    fn interior_kstar_point(&self, y: &Self::Functional) -> bool;

    fn sample_kstar(&self, n: usize, seed: u64) -> Vec<Self::Functional>;
    /// Candidate elements `k ∈ K` to subtract from `w`.
    fn subtract_search_directions(&self, w: &Self::Element, n: usize, seed: u64) -> Vec<Self::Element>;

    /// `sup{lambda >= 0 : w - lambda k ∈ L}`; `None` if unbounded.
    fn max_step_in_l(&self, w: &Self::Element, k: &Self::Element) -> Option<Self::Scalar>;
    /// Whether a step of size `lambda` along `k` counts as a real improvement.
    fn is_improving_step(&self, lambda: &Self::Scalar, w: &Self::Element, k: &Self::Element) -> bool {
        let _ = (w, k);
        lambda.is_positive()
    }

    fn decide_finer(
        &self,
        w1: &Self::Element,
        w2: &Self::Element,
    ) -> FinerDecision<Self::Scalar, Self::Element, Self::Functional>;
}
