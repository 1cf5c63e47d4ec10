use cone_detect::detection::{
    detection_superset_check, detects, improve, is_finer, is_optimal, lambda_star, verify_finer,
    verify_optimality, ConePairOracle,
};
use cone_detect::exact::random::{random_outside, random_pair, random_point_in, rng};
use cone_detect::exact::{ExactPair, Rational, RationalVector};
use cone_detect::Exec;
use num::{One, Signed};
use proptest::prelude::*;

fn pair(seed: u64, n: usize) -> (ExactPair, rand_chacha::ChaCha8Rng) {
    let mut r = rng(seed);
    let (k, l) = random_pair(&mut r, n);
    (ExactPair::new(k, l, seed).unwrap().with_exec(Exec::Sequential), r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn finer_iff_detection_superset(seed in any::<u64>(), n in 2usize..=4, constructed in any::<bool>()) {
        let (p, mut r) = pair(seed, n);
        let w1 = random_point_in(&mut r, &p.l);
        let w2 = if constructed {
            &w1.scale(&Rational::from_integer(3.into())) + &random_point_in(&mut r, &p.k)
        } else {
            random_point_in(&mut r, &p.l)
        };
        let v = is_finer(&p, &w1, &w2).unwrap();
        prop_assert!(verify_finer(&p, &w1, &w2, &v));
        let samples = p.sample_kstar(64, seed);
        if v.finer {
            prop_assert!(detection_superset_check(&p, &w1, &w2, &samples));
            let mut with_cert = samples.clone();
            with_cert.extend(p.k.facets.iter().cloned());
            prop_assert!(detection_superset_check(&p, &w1, &w2, &with_cert));
        } else {
            let rho = v.counterexample.clone().unwrap();
            prop_assert!(!detection_superset_check(&p, &w1, &w2, &[rho]));
        }
        if constructed {
            prop_assert!(v.finer);
        }
    }

    #[test]
    fn sampled_ratio_bounds_the_finer_scale(seed in any::<u64>(), n in 2usize..=4) {
        let (p, mut r) = pair(seed, n);
        let Some(w1) = random_outside(&mut r, &p.k, &p.l) else { return Ok(()) };
        let w2 = &w1.scale(&Rational::from_integer(2.into())) + &random_point_in(&mut r, &p.k);
        let v = is_finer(&p, &w1, &w2).unwrap();
        prop_assert!(v.finer);
        let lambda = v.lambda.unwrap();
        let samples = p.sample_kstar(64, seed);
        if let Ok(ls) = lambda_star(&p, &w1, &w2, &samples) {
            // rho(w2) = lambda rho(w1) + rho(k) with rho(k) >= 0
            prop_assert!(ls * &lambda >= Rational::one());
        }
    }

    #[test]
    fn optimality_verdicts_agree_and_verify(seed in any::<u64>(), n in 2usize..=4) {
        let (p, mut r) = pair(seed, n);
        let Some(w) = random_outside(&mut r, &p.k, &p.l) else { return Ok(()) };
        let v = is_optimal(&p, &w).unwrap();
        prop_assert!(v.verdicts_agree());
        prop_assert!(verify_optimality(&p, &w, &v));
        if let Some(imp) = &v.improvement {
            let w_prime = w.sub_scaled(&imp.lambda, &imp.k);
            let f = is_finer(&p, &w_prime, &w).unwrap();
            prop_assert!(f.finer);
        }
    }

    #[test]
    fn improve_stays_in_l_and_refines(seed in any::<u64>(), n in 2usize..=4) {
        let (p, mut r) = pair(seed, n);
        let w = random_point_in(&mut r, &p.l);
        let k = random_point_in(&mut r, &p.k);
        let res = improve(&p, &w, &k).unwrap();
        prop_assert!(p.in_l(&res.w_prime));
        prop_assert!(!res.lambda_max.is_negative());
        // one step further leaves L
        let beyond = w.sub_scaled(&(&res.lambda_max + Rational::new(1.into(), 1000.into())), &k);
        prop_assert!(!p.in_l(&beyond));
        let samples = p.sample_kstar(64, seed);
        prop_assert!(detection_superset_check(&p, &res.w_prime, &w, &samples));
    }

    #[test]
    fn elements_of_k_detect_nothing(seed in any::<u64>(), n in 2usize..=4) {
        let (p, mut r) = pair(seed, n);
        let w = random_point_in(&mut r, &p.k);
        for rho in p.sample_kstar(32, seed) {
            prop_assert!(!detects(&p, &w, &rho).unwrap().detected);
        }
    }
}

#[test]
fn finer_is_reflexive_and_transitive_on_a_chain() {
    let (p, mut r) = pair(5, 3);
    let w1 = random_outside(&mut r, &p.k, &p.l).unwrap();
    let w2 = &w1 + &random_point_in(&mut r, &p.k);
    let w3 = &w2 + &random_point_in(&mut r, &p.k);
    let refl = is_finer(&p, &w1, &w1).unwrap();
    assert!(refl.finer && refl.lambda == Some(Rational::one()));
    assert!(refl.k_certificate.unwrap().is_zero());
    assert!(is_finer(&p, &w1, &w2).unwrap().finer);
    assert!(is_finer(&p, &w2, &w3).unwrap().finer);
    assert!(is_finer(&p, &w1, &w3).unwrap().finer);
    let zero = RationalVector::zeros(3);
    assert!(improve(&p, &w1, &zero).is_err());
}
