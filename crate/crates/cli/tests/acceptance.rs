//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

use cone_detect::detection::{
    detects, improve, is_finer, is_optimal, verify_finer, verify_optimality,
};
use cone_detect::exact::cone::{conv_union, intersect, ConeH};
use cone_detect::exact::face::{
    complementary_face, enumerate_faces, face_generators_via_alpha, face_of, Face,
};
use cone_detect::exact::random::{random_outside, random_pair, random_point_in, random_proper_cone, rng};
use cone_detect::exact::{ExactPair, ProperCone};
use cone_detect::quantum::corpus::corpus_3x3;
use cone_detect::quantum::hermitian::{random_psd, random_separable};
use cone_detect::quantum::psd_face::{face_dimension, random_supported_psd, range_and_kernel};
use cone_detect::quantum::seesaw::start_rng;
use cone_detect::quantum::witness::product_zero_set;
use cone_detect::quantum::{
    classify_witness, is_ppt, lkch_optimality, nd_optimality_necessary, product_expectation, separability_small,
    witness_zero_set, BipartiteHermitian, QuantumPair, SearchConfig, WitnessClass,
};
use cone_detect::Error;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conedetect")).args(args).output().expect("binary runs")
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let out = cli(&["theorem-audit", "--trials", "100", "--seed", "7"]);
    let t = within(start, Duration::from_secs(60))?;
    ensure(out.status.success(), "audit exited nonzero")?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["agreements"] == 100, format!("agreements {}", v["agreements"]))?;
    ensure(v["counterexamples"].as_array().is_some_and(Vec::is_empty), "counterexamples present")?;
    let faces = &v["faces"];
    ensure(faces["checks"] == faces["agreements"], "face lemma disagreement")?;
    Ok(format!(
        "100/100 finer agreements, {} face checks, {} finer pairs, {:.1}s",
        faces["checks"],
        v["finer_pairs"],
        t.as_secs_f64()
    ))
}

fn dual_from_scratch(k: &ProperCone) -> Result<ProperCone, Error> {
    ProperCone::from_v(&ConeH::new(k.space_dim, k.generators.clone())?.to_v_rep()?)
}

fn criterion_2() -> Check {
    let (mut double, mut meets, mut hulls) = (0, 0, 0);
    let mut seed = 0u64;
    while double < 20 || meets < 20 || hulls < 20 {
        seed += 1;
        ensure(seed < 10_000, "ran out of instances")?;
        let n = 3 + (seed % 3) as usize;
        let mut r = rng(seed);
        let k = random_proper_cone(&mut r, n);
        let l = random_proper_cone(&mut r, n);
        if double < 20 {
            let dd = dual_from_scratch(&dual_from_scratch(&k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(dd == k, format!("(K*)* != K at seed {seed}"))?;
            double += 1;
        }
        let meet = intersect(&k.h(), &l.h()).map_err(|e| e.to_string())?;
        if meets < 20 && meet.report().is_full {
            let lhs = ProperCone::from_h(&meet).map_err(|e| e.to_string())?.dual().generators;
            let rhs = conv_union(&k.dual().v(), &l.dual().v()).map_err(|e| e.to_string())?.generators;
            ensure(lhs == rhs, format!("dual of intersection at seed {seed}"))?;
            meets += 1;
        }
        let hull = conv_union(&k.v(), &l.v()).map_err(|e| e.to_string())?;
        if hulls < 20 && hull.report().is_pointed {
            let lhs = ProperCone::from_v(&hull).map_err(|e| e.to_string())?.dual().generators;
            let dmeet = intersect(&k.dual().h(), &l.dual().h()).map_err(|e| e.to_string())?;
            let rhs = ProperCone::from_h(&dmeet).map_err(|e| e.to_string())?.generators;
            ensure(lhs == rhs, format!("dual of hull at seed {seed}"))?;
            hulls += 1;
        }
    }
    Ok("20 double duals, 20 intersections, 20 hulls equal in canonical form".into())
}

fn criterion_3() -> Check {
    let mut faces_checked = 0;
    for seed in 0..50u64 {
        let n = 2 + (seed % 4) as usize;
        let mut r = rng(1000 + seed);
        let cone = random_proper_cone(&mut r, n);
        let x = random_point_in(&mut r, &cone);
        let f = face_of(&cone, &x).map_err(|e| e.to_string())?;
        ensure(f.generators == face_generators_via_alpha(&cone, &x), format!("alpha oracle at {seed}"))?;
        let dual = cone.dual();
        let lattice = enumerate_faces(&cone).map_err(|e| e.to_string())?;
        let phis: Vec<Face> = lattice.faces.iter().map(|g| complementary_face(&cone, g)).collect();
        for (g, phi) in lattice.faces.iter().zip(&phis) {
            ensure(complementary_face(&dual, phi).generators == g.generators, "double complement")?;
            faces_checked += 1;
        }
        for (i, j) in lattice.subface_pairs() {
            ensure(phis[j].is_subface_of(&phis[i]), "complement not antitone")?;
        }
        ensure(phis[0].generators == dual.generators, "complement of zero face")?;
        ensure(phis.last().is_some_and(Face::is_zero), "complement of whole cone")?;
    }
    Ok(format!("50 instances, {faces_checked} faces with double complement identity"))
}

fn criterion_4() -> Check {
    let mut worst: f64 = 0.0;
    for i in 0..20usize {
        let d = 3 + i % 2;
        let rank = 1 + i % d;
        let mut r = start_rng(40, i);
        let rho = random_psd(&mut r, d, 1, rank);
        let dim = face_dimension(&rho, 4 * d * d, i as u64, 1e-9);
        ensure(dim == rank * rank, format!("d={d} r={rank}: face dimension {dim}"))?;
        let (range, kernel) = range_and_kernel(&rho);
        let a = random_supported_psd(&mut r, d, 1, &range);
        let b = random_supported_psd(&mut r, d, 1, &kernel);
        worst = worst.max(a.hs(&b).abs());
    }
    ensure(worst <= 1e-10, format!("complement pairing {worst:e}"))?;
    Ok(format!("20 matrices, dimension r^2, max complement pairing {worst:.1e}"))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let v = BipartiteHermitian::swap(2);
    let cfg = SearchConfig::default();
    let report = classify_witness(&v, &cfg);
    ensure(report.classification == WitnessClass::Witness, "swap not classified as witness")?;
    ensure((report.min_eigenvalue + 1.0).abs() <= 1e-9, "min eigenvalue")?;
    let z = witness_zero_set(&v, &cfg).map_err(|e| e.to_string())?;
    ensure(z.span_rank == 4, format!("span rank {}", z.span_rank))?;
    let l = lkch_optimality(&v, &cfg).map_err(|e| e.to_string())?;
    ensure(l.verdict.spanning_verdict && l.verdict.subtraction_verdict, "not optimal on both verdicts")?;
    let pair = QuantumPair::for_operator(&v, cfg);
    let d = detects(&pair, &v, &BipartiteHermitian::singlet()).map_err(|e| e.to_string())?;
    ensure(d.detected && (d.value + 1.0).abs() <= 1e-9, "singlet detection value")?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("witness, span rank 4, optimal on both verdicts, value {:.3}, {:.2}s", d.value, t.as_secs_f64()))
}

fn criterion_6() -> Check {
    let v = BipartiteHermitian::swap(2);
    let i = BipartiteHermitian::identity(2, 2);
    let w = v.add(&i.scale(0.1));
    let cfg = SearchConfig::default();
    let pair = QuantumPair::for_operator(&w, cfg);
    let r = improve(&pair, &w, &i).map_err(|e| e.to_string())?;
    ensure((r.lambda_max - 0.1).abs() <= 1e-6, format!("lambda_max {}", r.lambda_max))?;
    let dist = r.w_prime.hs_distance(&v);
    ensure(dist <= 1e-6, format!("|w' - V| = {dist:e}"))?;
    let l = lkch_optimality(&w, &cfg).map_err(|e| e.to_string())?;
    ensure(!l.verdict.optimal, "reported optimal")?;
    ensure(l.verdict.improvement.is_some(), "no improvement certificate")?;
    ensure(verify_optimality(&pair, &w, &l.verdict), "improvement does not verify")?;
    Ok(format!("lambda_max {:.9}, |w' - V| {dist:.1e}, improvement verifies", r.lambda_max))
}

fn criterion_7() -> Check {
    let p = BipartiteHermitian::max_entangled(2);
    let r = is_ppt(&p, 1e-9).map_err(|e| e.to_string())?;
    ensure(!r.ppt && (r.min_gamma_eigenvalue + 0.5).abs() <= 1e-9, "P+ PPT report")?;
    let shapes = [(2, 2), (2, 3), (3, 2), (3, 3)];
    for i in 0..20usize {
        let (d1, d2) = shapes[i % 4];
        let rho = random_separable(&mut start_rng(70, i), d1, d2, 10);
        let ppt = is_ppt(&rho, 1e-9).map_err(|e| e.to_string())?;
        ensure(ppt.ppt, format!("separable mixture {i} not PPT"))?;
        match separability_small(&rho, 1e-9) {
            Ok(s) => ensure(s == ppt.ppt && d1 * d2 <= 6, "separability disagrees")?,
            Err(Error::UndecidableDimension { .. }) => ensure(d1 * d2 > 6, "small dims rejected")?,
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure(!separability_small(&BipartiteHermitian::singlet(), 1e-9).map_err(|e| e.to_string())?, "singlet")?;
    Ok(format!("P+ min gamma eigenvalue {:.3}, 20 separable mixtures PPT", r.min_gamma_eigenvalue))
}

fn criterion_8() -> Check {
    let cfg = SearchConfig::with_seed(8);
    let v = nd_optimality_necessary(&BipartiteHermitian::swap(2), &cfg).map_err(|e| e.to_string())?;
    ensure(!v.applicable, "swap reported applicable")?;
    let mut summary = Vec::new();
    for (name, w) in corpus_3x3() {
        let a = nd_optimality_necessary(&w, &cfg).map_err(|e| e.to_string())?;
        let b = nd_optimality_necessary(&w, &cfg).map_err(|e| e.to_string())?;
        ensure(a == b, format!("{name} not deterministic"))?;
        if a.applicable {
            ensure(a.passes == (a.w_spanning && a.w_gamma_spanning), "passes flag")?;
            ensure(product_zero_set(&w, &cfg).verify(&w), format!("{name} zero set"))?;
            ensure(product_zero_set(&w.partial_transpose(), &cfg).verify(&w.partial_transpose()), "gamma zero set")?;
        }
        summary.push(format!("{name}: applicable={} w={} wG={}", a.applicable, a.w_spanning, a.w_gamma_spanning));
    }
    Ok(summary.join("; "))
}

fn criterion_9() -> Check {
    let mut verified = 0;
    for seed in 0..10u64 {
        let mut r = rng(900 + seed);
        let (k, l) = random_pair(&mut r, 3 + (seed % 3) as usize);
        let pair = ExactPair::new(k, l, seed).map_err(|e| e.to_string())?;
        let w1 = random_point_in(&mut r, &pair.l);
        let w2 = random_point_in(&mut r, &pair.l);
        let f = is_finer(&pair, &w1, &w2).map_err(|e| e.to_string())?;
        ensure(verify_finer(&pair, &w1, &w2, &f), "finer certificate")?;
        if let Some(w) = random_outside(&mut r, &pair.k, &pair.l) {
            let o = is_optimal(&pair, &w).map_err(|e| e.to_string())?;
            ensure(verify_optimality(&pair, &w, &o), "optimality certificates")?;
            verified += 1;
        }
        let m = pair.l.membership(&w1).map_err(|e| e.to_string())?;
        ensure(m.verify(&pair.l.generators, &w1), "membership certificate")?;
        verified += 2;
    }
    let minus = BipartiteHermitian::identity(2, 2).scale(-1.0);
    let c = classify_witness(&minus, &SearchConfig::default());
    let cert = c.certificate.ok_or("missing product certificate")?;
    ensure(product_expectation(&minus, &cert).map_err(|e| e.to_string())? < 0.0, "product certificate")?;

    let runs: [Vec<String>; 4] = [
        vec!["optimal".into(), "--backend".into(), "quantum".into(), "--w".into(), fixture("swap.json")],
        vec!["nd-check".into(), "--matrix".into(), fixture("choi.json"), "--seed".into(), "3".into()],
        vec!["theorem-audit".into(), "--trials".into(), "5".into(), "--seed".into(), "2".into()],
        vec!["finer".into(), "--pair".into(), fixture("pair.json"), "--w1".into(), fixture("w1.json"), "--w2".into(), fixture("w2.json")],
    ];
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (cli(&args), cli(&args));
        ensure(a.status.success() && a.stdout == b.stdout, format!("{} not byte-identical", args[0]))?;
    }
    Ok(format!("{verified} exact certificates and a product certificate re-verify, 4 commands byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 exact main-theorem audit", criterion_1),
        ("2 duality suite", criterion_2),
        ("3 face laws", criterion_3),
        ("4 PSD face law", criterion_4),
        ("5 swap-witness pipeline", criterion_5),
        ("6 non-optimal witness recovery", criterion_6),
        ("7 PPT suite", criterion_7),
        ("8 nd necessary condition", criterion_8),
        ("9 determinism and certificate soundness", criterion_9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {}/9 passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
