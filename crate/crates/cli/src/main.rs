use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cone_detect::audit::theorem_audit;
use cone_detect::detection::{
    detects, improve, is_finer, is_optimal, lambda_star, ops::default_samples, zero_set, Backend, ConePairOracle,
    RunContext, ToJson,
};
use cone_detect::exact::face::{enumerate_faces, face_of};
use cone_detect::exact::io::{parse_cone, parse_pair, parse_point, ConeFile};
use cone_detect::exact::{ExactPair, ProperCone, RationalVector};
use cone_detect::quantum::io::parse_matrix;
use cone_detect::quantum::{
    classify_witness, is_ppt, lkch_optimality, nd_optimality_necessary, separability_small, wd_pairing_check,
    witness_zero_set, BipartiteHermitian, QuantumPair, SearchConfig,
};
use cone_detect::{Error, Exec};

#[derive(Parser)]
#[command(name = "conedetect", version, about = "Detection and optimality for nested pairs of proper cones")]
struct Cli {
    /// Relative tolerance for numerical zero and sign decisions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// See-saw multistarts (default 64·d1·d2)
    #[arg(long, global = true)]
    starts: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Quantum,
}

#[derive(Subcommand)]
enum Command {
    /// Closedness, fullness and pointedness of a cone, with both representations
    ConeCheck {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Dual cone
    ConeDual {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Membership with a certificate
    ConeMember {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// All faces and the subface relation
    ConeFaces {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Smallest face containing a point
    ConeFaceOf {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Does w detect rho?
    Detect {
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        w: PathBuf,
        #[arg(long)]
        rho: PathBuf,
    },
    /// Is w1 finer than w2?
    Finer {
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        w1: PathBuf,
        #[arg(long)]
        w2: PathBuf,
    },
    /// Sampled ratio bound between the detection values of w1 and w2
    LambdaStar {
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        w1: PathBuf,
        #[arg(long)]
        w2: PathBuf,
        /// Number of sampled functionals (default 64 exact, 200 quantum)
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Extreme functionals of the dual of L vanishing on w
    ZeroSet {
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        w: PathBuf,
    },
    /// Optimality by spanning and by subtraction
    Optimal {
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        w: PathBuf,
    },
    /// Largest step along k in K that keeps w in L
    Improve {
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        w: PathBuf,
        #[arg(long)]
        k: PathBuf,
    },
    /// Positive operator, entanglement witness, or neither
    WitnessClassify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// PPT test, small-dimension separability and the sampled pairing check
    Ppt {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Necessary condition for optimality among decomposable witnesses
    NdCheck {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Randomized audit of the finer order, optimality and face results
    TheoremAudit {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// A rendered record and whether the evidence behind it conflicts.
struct Report {
    value: Value,
    inconclusive: bool,
}

impl Report {
    fn ok(value: Value) -> Self {
        Self { value, inconclusive: false }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read file", path.display()))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> cone_detect::Result<T>) -> Result<T> {
    parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_cone(path: &Path) -> Result<ProperCone> {
    load(path, |s| parse_cone(s)?.to_proper())
}

fn load_point(path: &Path, dim: usize) -> Result<RationalVector> {
    let p = load(path, parse_point)?;
    if p.dim() != dim {
        bail!("{}: {}", path.display(), Error::DimensionMismatch { expected: dim, got: p.dim() });
    }
    Ok(p)
}

fn load_pair(path: Option<&Path>, seed: u64) -> Result<ExactPair> {
    let path = path.ok_or_else(|| anyhow!("--pair is required with the exact backend"))?;
    let f = load(path, parse_pair)?;
    let k = f.k.to_proper().map_err(|e| anyhow!("{}: K: {e}", path.display()))?;
    let l = f.l.to_proper().map_err(|e| anyhow!("{}: L: {e}", path.display()))?;
    ExactPair::new(k, l, seed).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_matrix(path: &Path) -> Result<BipartiteHermitian> {
    load(path, parse_matrix)
}

fn load_matrix_like(path: &Path, like: &BipartiteHermitian) -> Result<BipartiteHermitian> {
    let m = load_matrix(path)?;
    if !m.same_shape(like) {
        bail!("{}: dimensions {}x{} do not match {}x{}", path.display(), m.d1(), m.d2(), like.d1(), like.d2());
    }
    Ok(m)
}

fn lib<T>(r: cone_detect::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!("{e}"))
}

struct Ctx {
    tol: f64,
    seed: u64,
    starts: Option<usize>,
    backend: BackendArg,
}

impl Ctx {
    fn search(&self) -> SearchConfig {
        SearchConfig { tolerance: self.tol, starts: self.starts, seed: self.seed, exec: Exec::Parallel }
    }

    fn quantum_pair(&self, w: &BipartiteHermitian) -> QuantumPair {
        QuantumPair::for_operator(w, self.search())
    }
}

fn cone_json(c: &ProperCone) -> Value {
    json!({ "space_dim": c.space_dim, "generators": c.generators.to_json(), "facets": c.facets.to_json() })
}

fn run(cmd: &Command, ctx: &Ctx) -> Result<(Report, Backend)> {
    use Command::*;
    let quantum = ctx.backend == BackendArg::Quantum;
    let exact = |r: Report| Ok((r, Backend::Exact));
    let numeric = |r: Report| Ok((r, Backend::Quantum));
    match cmd {
        ConeCheck { cone } => {
            let f = load(cone, parse_cone)?;
            let report = match &f {
                ConeFile::V(c) => c.report(),
                ConeFile::H(c) => c.report(),
            };
            let canonical = if report.is_proper() { cone_json(&lib(f.to_proper())?) } else { Value::Null };
            exact(Report::ok(json!({
                "is_closed": report.is_closed,
                "is_full": report.is_full,
                "is_pointed": report.is_pointed,
                "is_proper": report.is_proper(),
                "canonical": canonical,
            })))
        }
        ConeDual { cone } => exact(Report::ok(cone_json(&load_cone(cone)?.dual()))),
        ConeMember { cone, point } => {
            let c = load_cone(cone)?;
            let x = load_point(point, c.space_dim)?;
            let m = lib(c.membership(&x))?;
            exact(Report::ok(serde_json::to_value(&m)?))
        }
        ConeFaces { cone } => {
            let lattice = lib(enumerate_faces(&load_cone(cone)?))?;
            let pairs = lattice.subface_pairs();
            exact(Report::ok(json!({
                "count": lattice.faces.len(),
                "faces": serde_json::to_value(&lattice.faces)?,
                "subface_pairs": pairs,
            })))
        }
        ConeFaceOf { cone, point } => {
            let c = load_cone(cone)?;
            let x = load_point(point, c.space_dim)?;
            exact(Report::ok(serde_json::to_value(lib(face_of(&c, &x))?)?))
        }
        Detect { w, rho, .. } if quantum => {
            let w = load_matrix(w)?;
            let rho = load_matrix_like(rho, &w)?;
            numeric(Report::ok(lib(detects(&ctx.quantum_pair(&w), &w, &rho))?.to_json()))
        }
        Detect { pair, w, rho } => {
            let p = load_pair(pair.as_deref(), ctx.seed)?;
            let (w, rho) = (load_point(w, p.dim())?, load_point(rho, p.dim())?);
            exact(Report::ok(lib(detects(&p, &w, &rho))?.to_json()))
        }
        Finer { w1, w2, .. } if quantum => {
            let w1 = load_matrix(w1)?;
            let w2 = load_matrix_like(w2, &w1)?;
            numeric(Report::ok(lib(is_finer(&ctx.quantum_pair(&w1), &w1, &w2))?.to_json()))
        }
        Finer { pair, w1, w2 } => {
            let p = load_pair(pair.as_deref(), ctx.seed)?;
            let (w1, w2) = (load_point(w1, p.dim())?, load_point(w2, p.dim())?);
            exact(Report::ok(lib(is_finer(&p, &w1, &w2))?.to_json()))
        }
        LambdaStar { w1, w2, samples, .. } if quantum => {
            let w1 = load_matrix(w1)?;
            let w2 = load_matrix_like(w2, &w1)?;
            let p = ctx.quantum_pair(&w1);
            let n = samples.unwrap_or(200);
            let lambda = lib(lambda_star(&p, &w1, &w2, &p.sample_kstar(n, ctx.seed)))?;
            numeric(Report::ok(json!({ "lambda_star": lambda, "samples": n })))
        }
        LambdaStar { pair, w1, w2, samples } => {
            let p = load_pair(pair.as_deref(), ctx.seed)?;
            let (w1, w2) = (load_point(w1, p.dim())?, load_point(w2, p.dim())?);
            let s = match samples {
                Some(n) => p.sample_kstar(*n, ctx.seed),
                None => default_samples(&p),
            };
            let lambda = lib(lambda_star(&p, &w1, &w2, &s))?;
            exact(Report::ok(json!({ "lambda_star": lambda.to_json(), "samples": s.len() })))
        }
        ZeroSet { w, .. } if quantum => {
            let w = load_matrix(w)?;
            numeric(Report::ok(lib(witness_zero_set(&w, &ctx.search()))?.to_json()))
        }
        ZeroSet { pair, w } => {
            let p = load_pair(pair.as_deref(), ctx.seed)?;
            let w = load_point(w, p.dim())?;
            exact(Report::ok(json!({ "zero_set": lib(zero_set(&p, &w))?.to_json() })))
        }
        Optimal { w, .. } if quantum => {
            let w = load_matrix(w)?;
            let r = lib(lkch_optimality(&w, &ctx.search()))?;
            let inconclusive = !r.verdict.verdicts_agree();
            numeric(Report { value: r.to_json(), inconclusive })
        }
        Optimal { pair, w } => {
            let p = load_pair(pair.as_deref(), ctx.seed)?;
            let w = load_point(w, p.dim())?;
            exact(Report::ok(lib(is_optimal(&p, &w))?.to_json()))
        }
        Improve { w, k, .. } if quantum => {
            let w = load_matrix(w)?;
            let k = load_matrix_like(k, &w)?;
            numeric(Report::ok(lib(improve(&ctx.quantum_pair(&w), &w, &k))?.to_json()))
        }
        Improve { pair, w, k } => {
            let p = load_pair(pair.as_deref(), ctx.seed)?;
            let (w, k) = (load_point(w, p.dim())?, load_point(k, p.dim())?);
            exact(Report::ok(lib(improve(&p, &w, &k))?.to_json()))
        }
        WitnessClassify { matrix } => {
            let w = load_matrix(matrix)?;
            numeric(Report::ok(classify_witness(&w, &ctx.search()).to_json()))
        }
        Ppt { matrix, samples } => {
            let rho = load_matrix(matrix)?;
            let ppt = lib(is_ppt(&rho, ctx.tol))?;
            let separable = match separability_small(&rho, ctx.tol) {
                Ok(b) => json!(b),
                Err(Error::UndecidableDimension { .. }) => Value::Null,
                Err(e) => return Err(anyhow!("{e}")),
            };
            let mut v = ppt.to_json();
            v["separable"] = separable;
            v["wd_pairing"] = wd_pairing_check(&rho, *samples, &ctx.search()).to_json();
            numeric(Report::ok(v))
        }
        NdCheck { matrix } => {
            let w = load_matrix(matrix)?;
            numeric(Report::ok(lib(nd_optimality_necessary(&w, &ctx.search()))?.to_json()))
        }
        TheoremAudit { trials } => {
            if quantum {
                bail!("theorem-audit runs on the exact backend only");
            }
            let r = lib(theorem_audit(*trials, ctx.seed, Exec::Parallel))?;
            exact(Report::ok(r.to_json()))
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match (format, v) {
        (Format::Json, _) => serde_json::to_string_pretty(v).expect("serializable"),
        (Format::Text, Value::Object(m)) => {
            m.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n")
        }
        (Format::Text, _) => v.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { tol: cli.tol, seed: cli.seed, starts: cli.starts, backend: cli.backend };
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        eprintln!("error: --tol must be a non-negative number");
        return ExitCode::from(1);
    }
    if cli.starts == Some(0) {
        eprintln!("error: --starts must be at least 1");
        return ExitCode::from(1);
    }
    match run(&cli.command, &ctx) {
        Ok((report, backend)) => {
            let tolerance = if backend == Backend::Exact { 0.0 } else { cli.tol };
            let stamped = RunContext { tolerance, seed: cli.seed, backend }.stamp(report.value);
            println!("{}", render(&stamped, cli.format));
            if report.inconclusive && backend == Backend::Quantum {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
