//! Randomized audit of the main results on exact polyhedral pairs.
//!
//! Each trial draws a random pair `K ⊂ L` in `R^3..R^5` and checks
//!
//! * finer order: `is_finer(w1, w2)` against the detection sets, through a
//!   re-verified `K`-certificate plus sampled superset check when finer, or
//!   a re-verified counterexample functional when not;
//! * optimality: the spanning and subtraction verdicts for `w1` agree and
//!   both re-verify;
//! * faces: for every face `F` of `L` not contained in `K`, a relative
//!   interior point is optimal iff `F ∩ K = {0}`.

use num::BigInt;
use rand::Rng;
use serde_json::{json, Value};

use crate::detection::{
    detection_superset_check, is_finer, is_optimal, verify_finer, verify_optimality, ConePairOracle, ToJson,
};
use crate::error::{Error, Result};
use crate::exact::face::enumerate_faces;
use crate::exact::random::{random_outside, random_pair, random_point_in, rng};
use crate::exact::rational::Rational;
use crate::exact::ExactPair;
use crate::exec::{self, Exec};

#[derive(Clone, Debug, PartialEq)]
pub struct Disagreement {
    pub trial: usize,
    pub check: &'static str,
    pub detail: Value,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub checks: usize,
    pub agreements: usize,
}

impl Tally {
    fn add(&mut self, ok: bool) {
        self.checks += 1;
        self.agreements += usize::from(ok);
    }

    fn merge(&mut self, other: &Tally) {
        self.checks += other.checks;
        self.agreements += other.agreements;
    }

    pub fn all_agree(&self) -> bool {
        self.checks == self.agreements
    }
}

impl ToJson for Tally {
    fn to_json(&self) -> Value {
        json!({ "checks": self.checks, "agreements": self.agreements })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub trials: usize,
    pub seed: u64,
    /// Trials where the finer verdict and the detection sets agree.
    pub agreements: usize,
    pub finer_pairs: usize,
    pub optimality: Tally,
    pub faces: Tally,
    /// One entry per trial whose finer check failed, so
    /// `agreements + counterexamples.len() == trials`.
    pub counterexamples: Vec<Disagreement>,
    /// Optimality and face-check failures.
    pub disagreements: Vec<Disagreement>,
}

impl AuditReport {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.trials && self.optimality.all_agree() && self.faces.all_agree()
    }
}

impl ToJson for AuditReport {
    fn to_json(&self) -> Value {
        let list = |ds: &[Disagreement]| -> Vec<Value> {
            ds.iter().map(|d| json!({ "trial": d.trial, "check": d.check, "detail": d.detail })).collect()
        };
        json!({
            "trials": self.trials,
            "agreements": self.agreements,
            "finer_pairs": self.finer_pairs,
            "optimality": self.optimality.to_json(),
            "faces": self.faces.to_json(),
            "counterexamples": list(&self.counterexamples),
            "disagreements": list(&self.disagreements),
            "all_agree": self.all_agree(),
        })
    }
}

struct TrialOutcome {
    finer_failure: Option<Disagreement>,
    finer: bool,
    optimality: Tally,
    faces: Tally,
    disagreements: Vec<Disagreement>,
}

fn pair_json(p: &ExactPair) -> Value {
    json!({ "K": p.k.generators.to_json(), "L": p.l.generators.to_json() })
}

fn run_trial(seed: u64, trial: usize) -> Result<TrialOutcome> {
    let mut r = rng(seed);
    r.set_stream(trial as u64);
    let n = 3 + trial % 3;
    let (k, l) = random_pair(&mut r, n);
    let pair = ExactPair::new(k, l, seed ^ trial as u64)?.with_exec(Exec::Sequential);
    let w1 = random_outside(&mut r, &pair.k, &pair.l).unwrap_or_else(|| random_point_in(&mut r, &pair.l));
    let w2 = if trial % 2 == 0 {
        let lambda = Rational::from_integer(BigInt::from(r.random_range(1..4i64)));
        let kk = random_point_in(&mut r, &pair.k);
        &w1.scale(&lambda) + &kk
    } else {
        random_point_in(&mut r, &pair.l)
    };
    let verdict = is_finer(&pair, &w1, &w2)?;
    let samples = pair.sample_kstar(64, pair.seed);
    let superset = detection_superset_check(&pair, &w1, &w2, &samples);
    let finer_ok = verify_finer(&pair, &w1, &w2, &verdict)
        && if verdict.finer { superset } else { verdict.counterexample.is_some() };
    let finer_failure = (!finer_ok).then(|| Disagreement {
        trial,
        check: "finer",
        detail: json!({ "pair": pair_json(&pair), "w1": w1.to_json(), "w2": w2.to_json() }),
    });

    let mut disagreements = Vec::new();

    let mut optimality = Tally::default();
    if !pair.in_k(&w1) {
        let v = is_optimal(&pair, &w1)?;
        let ok = v.verdicts_agree() && verify_optimality(&pair, &w1, &v);
        optimality.add(ok);
        if !ok {
            disagreements.push(Disagreement {
                trial,
                check: "optimality",
                detail: json!({ "pair": pair_json(&pair), "w": w1.to_json() }),
            });
        }
    }

    let mut faces = Tally::default();
    for face in enumerate_faces(&pair.l)?.faces {
        if face.is_zero() {
            continue;
        }
        let x = face.relative_interior_point(n);
        if pair.in_k(&x) {
            continue;
        }
        let trivial = pair.face_meets_k_trivially(&face.generators);
        let v = is_optimal(&pair, &x)?;
        let ok = v.optimal == trivial && v.verdicts_agree();
        faces.add(ok);
        if !ok {
            disagreements.push(Disagreement {
                trial,
                check: "face",
                detail: json!({ "pair": pair_json(&pair), "w": x.to_json(), "meets_k_trivially": trivial }),
            });
        }
    }

    Ok(TrialOutcome { finer_failure, finer: verdict.finer, optimality, faces, disagreements })
}

/// Runs `trials` seeded trials, in parallel when `exec` allows. The report
/// does not depend on `exec`.
pub fn theorem_audit(trials: usize, seed: u64, exec: Exec) -> Result<AuditReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be positive".into()));
    }
    let outcomes = exec::map_indexed(exec, trials, |i| run_trial(seed, i));
    let mut report = AuditReport {
        trials,
        seed,
        agreements: 0,
        finer_pairs: 0,
        optimality: Tally::default(),
        faces: Tally::default(),
        counterexamples: Vec::new(),
        disagreements: Vec::new(),
    };
    for o in outcomes {
        let o = o?;
        report.agreements += usize::from(o.finer_failure.is_none());
        report.counterexamples.extend(o.finer_failure);
        report.finer_pairs += usize::from(o.finer);
        report.optimality.merge(&o.optimality);
        report.faces.merge(&o.faces);
        report.disagreements.extend(o.disagreements);
    }
    Ok(report)
}
