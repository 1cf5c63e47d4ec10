//! Verdict records and their JSON form.

use serde_json::{json, Map, Value};

use super::oracle::{Backend, ToJson};

/// Tolerance, seed and backend stamped onto every serialized verdict.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunContext {
    pub tolerance: f64,
    pub seed: u64,
    pub backend: Backend,
}

impl RunContext {
    pub fn stamp(&self, mut v: Value) -> Value {
        if let Value::Object(map) = &mut v {
            map.insert("tolerance".into(), json!(self.tolerance));
            map.insert("seed".into(), json!(self.seed));
            map.insert("backend".into(), serde_json::to_value(self.backend).unwrap());
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionVerdict<S> {
    pub detected: bool,
    pub value: S,
    pub domain_ok: bool,
}

impl<S: ToJson> ToJson for DetectionVerdict<S> {
    fn to_json(&self) -> Value {
        json!({
            "detected": self.detected,
            "value": self.value.to_json(),
            "domain_ok": self.domain_ok,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FinerVerdict<S, E, F> {
    pub finer: bool,
    pub lambda: Option<S>,
    pub k_certificate: Option<E>,
    pub counterexample: Option<F>,
    /// `w2 ∈ K`: the pair is finer only because `w2` detects nothing.
    pub w2_detects_nothing: bool,
}

impl<S: ToJson, E: ToJson, F: ToJson> ToJson for FinerVerdict<S, E, F> {
    fn to_json(&self) -> Value {
        json!({
            "finer": self.finer,
            "lambda": self.lambda.to_json(),
            "k_certificate": self.k_certificate.to_json(),
            "counterexample": self.counterexample.to_json(),
            "w2_detects_nothing": self.w2_detects_nothing,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Improvement<S, E> {
    pub k: E,
    pub lambda: S,
}

impl<S: ToJson, E: ToJson> ToJson for Improvement<S, E> {
    fn to_json(&self) -> Value {
        json!({ "k": self.k.to_json(), "lambda": self.lambda.to_json() })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimalityVerdict<S, E, F> {
    /// Equals the spanning verdict.
    pub optimal: bool,
    pub spanning_verdict: bool,
    pub subtraction_verdict: bool,
    pub zero_set: Vec<F>,
    pub interior_combination: Option<Vec<S>>,
    pub improvement: Option<Improvement<S, E>>,
    pub directions_tried: usize,
}

impl<S, E, F> OptimalityVerdict<S, E, F> {
    pub fn verdicts_agree(&self) -> bool {
        self.spanning_verdict == self.subtraction_verdict
    }
}

impl<S: ToJson, E: ToJson, F: ToJson> ToJson for OptimalityVerdict<S, E, F> {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("optimal".into(), json!(self.optimal));
        m.insert("spanning_verdict".into(), json!(self.spanning_verdict));
        m.insert("subtraction_verdict".into(), json!(self.subtraction_verdict));
        m.insert("verdicts_agree".into(), json!(self.verdicts_agree()));
        m.insert("zero_set".into(), self.zero_set.to_json());
        m.insert("interior_combination".into(), self.interior_combination.to_json());
        m.insert("improvement".into(), self.improvement.to_json());
        m.insert("directions_tried".into(), json!(self.directions_tried));
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImproveResult<S, E> {
    pub w_prime: E,
    pub lambda_max: S,
}

impl<S: ToJson, E: ToJson> ToJson for ImproveResult<S, E> {
    fn to_json(&self) -> Value {
        json!({ "w_prime": self.w_prime.to_json(), "lambda_max": self.lambda_max.to_json() })
    }
}
