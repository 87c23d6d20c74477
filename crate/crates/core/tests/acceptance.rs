//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.
//!
//! The criteria run one at a time behind a lock so every runtime budget is
//! measured without the others competing for cores.

mod common;

use std::sync::Mutex;
use std::time::{Duration, Instant};

use hlb::experiments::{
    run_correction_heatmap, run_cosine_curve, run_noise_heatmap, run_norm_curve, run_retrieval,
    run_sequential, HeatmapConfig, NegativeCase, RelationConfig, RetrievalConfig, SequentialConfig,
    SequentialMode, XmlCodec,
};
use hlb::theory::pipeline_equivalence_check;
use hlb::transforms::{circ_conv, fwht};
use hlb::{BindingModel, HyperVector, Metric, ModelKind};
use rand::Rng;

use common::*;

static SERIAL: Mutex<()> = Mutex::new(());

const SEED: u64 = 7;

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

/// Prints the criterion line and returns whether every check held.
fn verdict(
    id: u32,
    name: &str,
    checks: &[(bool, String)],
    elapsed: Duration,
    budget: Option<Duration>,
) -> bool {
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let pass = in_time && checks.iter().all(|c| c.0);
    let details: Vec<&str> = checks.iter().map(|c| c.1.as_str()).collect();
    println!(
        "[{}] C{id} {name}: {}; runtime {:.2}s{}",
        if pass { "PASS" } else { "FAIL" },
        details.join("; "),
        elapsed.as_secs_f64(),
        budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()))
    );
    pass
}

fn hv(v: Vec<f64>) -> HyperVector {
    HyperVector::new(v).unwrap()
}

#[test]
fn c01_exact_inverse() {
    let _g = serial();
    let start = Instant::now();
    let mut rng = rng(SEED);
    let mut worst = 0.0f64;
    for &d in &[64, 1024, 4096] {
        for &mu in &[0.5, 1.0] {
            let model = BindingModel::hlb(d, mu).unwrap();
            for _ in 0..1000 {
                let x = hv(mind(d, mu, &mut rng));
                let y = hv(mind(d, mu, &mut rng));
                let back = model.unbind(&model.bind(&x, &y).unwrap(), &y).unwrap();
                worst = worst.max(norm(&sub(back.as_slice(), x.as_slice())) / x.norm());
            }
        }
    }
    let ok = verdict(
        1,
        "exact inverse",
        &[(
            worst <= 1e-10,
            format!("max relative error {worst:.3e} (tol 1e-10) over 6000 trials"),
        )],
        start.elapsed(),
        Some(Duration::from_secs(5)),
    );
    assert!(ok);
}

#[test]
fn c02_fwht_involution_and_dense_match() {
    let _g = serial();
    let start = Instant::now();
    let mut rng = rng(SEED);
    let mut worst_ratio = 0.0f64;
    let mut d = 2;
    while d <= 1024 {
        for _ in 0..20 {
            let x = gaussian(d, &mut rng);
            let twice = fwht(&fwht(&hv(x.clone())).unwrap()).unwrap();
            let err = twice
                .iter()
                .zip(&x)
                .fold(0.0f64, |m, (a, b)| m.max((a - d as f64 * b).abs()));
            worst_ratio = worst_ratio.max(err / (1e-12 * d as f64 * max_abs(&x)));
        }
        d *= 2;
    }
    // Integer inputs keep every partial sum exact, so both paths must agree bitwise.
    let mut dense_exact = true;
    let mut d = 1;
    while d <= 64 {
        let h = dense_hadamard(d);
        for _ in 0..20 {
            let x: Vec<f64> = (0..d)
                .map(|_| rng.random_range(-1000i32..=1000) as f64)
                .collect();
            dense_exact &= fwht(&hv(x.clone())).unwrap().as_slice() == mat_vec(&h, &x).as_slice();
        }
        d *= 2;
    }
    let ok = verdict(
        2,
        "fwht involution",
        &[
            (
                worst_ratio <= 1.0,
                format!("worst error / (1e-12·d·‖x‖∞) = {worst_ratio:.3e} for d = 2..1024"),
            ),
            (
                dense_exact,
                format!("dense Hadamard match exact for d ≤ 64: {dense_exact}"),
            ),
        ],
        start.elapsed(),
        Some(Duration::from_secs(5)),
    );
    assert!(ok);
}

#[test]
fn c03_pipeline_equivalence() {
    let _g = serial();
    let start = Instant::now();
    let mut rng = rng(SEED);
    let mut worst_lib = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for _ in 0..200 {
        let d = 1usize << rng.random_range(1..=10);
        let rho = rng.random_range(1..=10);
        let pairs: Vec<(HyperVector, HyperVector)> = (0..rho)
            .map(|_| (hv(mind(d, 1.0, &mut rng)), hv(mind(d, 1.0, &mut rng))))
            .collect();
        let i = rng.random_range(0..rho);
        let forms = pipeline_equivalence_check(&pairs, i).unwrap();
        worst_lib = worst_lib.max(forms.relative_gap().unwrap());
        // x_i + Σ_{j≠i} x_j⊙y_j ⊘ y_i, assembled here without the library.
        let yi = pairs[i].1.as_slice();
        let mut linear = pairs[i].0.as_slice().to_vec();
        for (j, (x, y)) in pairs.iter().enumerate() {
            if j != i {
                for k in 0..d {
                    linear[k] += x.as_slice()[k] * y.as_slice()[k] / yi[k];
                }
            }
        }
        let gap = norm(&sub(forms.transform_form.as_slice(), &linear)) / norm(&linear);
        worst_oracle = worst_oracle.max(gap);
    }
    let ok = verdict(
        3,
        "derivation oracle",
        &[
            (
                worst_lib <= 1e-9,
                format!("library forms gap {worst_lib:.3e}"),
            ),
            (
                worst_oracle <= 1e-9,
                format!("transform form vs test oracle {worst_oracle:.3e} (tol 1e-9)"),
            ),
        ],
        start.elapsed(),
        Some(Duration::from_secs(10)),
    );
    assert!(ok);
}

#[test]
fn c04_cosine_curve() {
    let _g = serial();
    let start = Instant::now();
    let cfg = RelationConfig {
        seed: SEED,
        ..RelationConfig::default()
    };
    assert_eq!((cfg.cos_d, cfg.cos_rho_max, cfg.trials), (512, 50, 100));
    let curve = run_cosine_curve(&cfg).unwrap();
    let (worst, at) = curve
        .iter()
        .map(|p| ((p.mean - 1.0 / (p.rho as f64).sqrt()).abs(), p.rho))
        .fold((0.0, 0), |a, b| if b.0 > a.0 { b } else { a });
    let ok = verdict(
        4,
        "cosine relation",
        &[(
            curve.len() == 50 && worst <= 0.05,
            format!("max |mean φ − 1/√ρ| = {worst:.4} at ρ={at} (tol 0.05)"),
        )],
        start.elapsed(),
        Some(Duration::from_secs(30)),
    );
    assert!(ok);
}

#[test]
fn c05_norm_curve() {
    let _g = serial();
    let start = Instant::now();
    let cfg = RelationConfig {
        seed: SEED,
        ..RelationConfig::default()
    };
    assert_eq!(
        (cfg.norm_mu, cfg.norm_d, cfg.norm_rho_max, cfg.trials),
        (0.5, 1024, 200, 100)
    );
    let curve = run_norm_curve(&cfg).unwrap();
    let (worst, at) = curve
        .iter()
        .map(|p| {
            let theory = 0.25 * ((p.rho * 1024) as f64).sqrt();
            ((p.mean / theory - 1.0).abs(), p.rho)
        })
        .fold((0.0, 0), |a, b| if b.0 > a.0 { b } else { a });
    let ok = verdict(
        5,
        "norm relation",
        &[(
            curve.len() == 200 && worst <= 0.10,
            format!("max relative deviation {worst:.4} at ρ={at} (tol 0.10)"),
        )],
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
    assert!(ok);
}

#[test]
fn c06_correction_heatmap() {
    let _g = serial();
    let start = Instant::now();
    let cfg = HeatmapConfig {
        ns: vec![8, 9, 10],
        rhos: (1..=50).collect(),
        trials: 100,
        mu: 1.0,
        seed: SEED,
        negative: NegativeCase::RandomOther,
    };
    let (pos, neg) = run_correction_heatmap(&cfg).unwrap();
    let pos_vals: Vec<f64> = pos.iter_cells().map(|c| c.2).collect();
    let neg_vals: Vec<f64> = neg.iter_cells().map(|c| c.2).collect();
    let (pmin, pmax) = pos_vals
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    let nmax = neg_vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let ok = verdict(
        6,
        "correction heatmap",
        &[
            (
                pmin >= 0.85 && pmax <= 1.15,
                format!("positive φ′ in [{pmin:.4}, {pmax:.4}] (band [0.85, 1.15])"),
            ),
            (
                nmax <= 0.15,
                format!("max |negative φ′| {nmax:.4} (tol 0.15)"),
            ),
        ],
        start.elapsed(),
        Some(Duration::from_secs(120)),
    );
    assert!(ok);
}

#[test]
fn c07_noise_ordering() {
    let _g = serial();
    let start = Instant::now();
    let cfg = HeatmapConfig {
        ns: (3..=10).collect(),
        rhos: (2..=50).collect(),
        trials: 100,
        mu: 1.0,
        seed: SEED,
        negative: NegativeCase::RandomOther,
    };
    let out = run_noise_heatmap(&cfg).unwrap();
    let violations: Vec<(u32, usize)> = out
        .reports
        .iter()
        .filter(|r| {
            r.mean_abs_eta_proj
                .partial_cmp(&r.mean_abs_eta_circ)
                .is_none_or(|o| o.is_gt())
        })
        .map(|r| (r.n, r.rho))
        .collect();
    let proj_finite = out.reports.iter().all(|r| r.mean_abs_eta_proj.is_finite());
    let ok = verdict(
        7,
        "noise ordering",
        &[
            (
                violations.is_empty(),
                format!(
                    "{} of {} cells with mean|η^π| > mean|η°| {:?}",
                    violations.len(),
                    out.reports.len(),
                    violations
                ),
            ),
            (proj_finite, format!("all η^π cells finite: {proj_finite}")),
        ],
        start.elapsed(),
        Some(Duration::from_secs(120)),
    );
    assert!(ok);
}

#[test]
fn c08_sequential_stability() {
    let _g = serial();
    let start = Instant::now();
    let cfg = SequentialConfig {
        modes: vec![SequentialMode::Random, SequentialMode::Auto],
        depth: 50,
        d: 1024,
        trials: 10,
        models: vec![ModelKind::Hlb, ModelKind::MapC, ModelKind::Hrr],
        mu: 1.0,
        seed: SEED,
    };
    let out = run_sequential(&cfg).unwrap();
    let root_d = 1024f64.sqrt();
    let mut checks = Vec::new();
    for mode in [SequentialMode::Random, SequentialMode::Auto] {
        let sim_err = out
            .series(ModelKind::Hlb, mode)
            .fold(0.0f64, |m, r| m.max((r.similarity - 1.0).abs()));
        let mag_dev = out
            .series(ModelKind::Hlb, mode)
            .fold(0.0f64, |m, r| m.max((r.magnitude / root_d - 1.0).abs()));
        checks.push((
            sim_err <= 1e-9,
            format!("HLB {mode}: max |sim − 1| {sim_err:.2e} (tol 1e-9)"),
        ));
        checks.push((
            mag_dev <= 0.05,
            format!("HLB {mode}: max |‖·‖/√d − 1| {mag_dev:.4} (tol 0.05)"),
        ));
    }
    let varying: Vec<String> = [ModelKind::MapC, ModelKind::Hrr]
        .iter()
        .flat_map(|&m| [SequentialMode::Random, SequentialMode::Auto].map(move |mode| (m, mode)))
        .filter_map(|(m, mode)| {
            let mags = out.mean_magnitude(m, mode);
            let (lo, hi) = mags
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
            (hi / lo > 1.05).then(|| format!("{m} {mode} max/min {:.3e}", hi / lo))
        })
        .collect();
    checks.push((
        !varying.is_empty(),
        format!("non-constant baselines: {varying:?}"),
    ));
    let ok = verdict(
        8,
        "sequential stability",
        &checks,
        start.elapsed(),
        Some(Duration::from_secs(10)),
    );
    assert!(ok);
}

#[test]
fn c09_retrieval_dominance() {
    let _g = serial();
    let start = Instant::now();
    let cfg = RetrievalConfig {
        pool_size: 1000,
        dims: vec![16, 64, 256, 1024],
        rhos: (1..=25).collect(),
        trials: 50,
        models: vec![ModelKind::Hlb, ModelKind::MapC, ModelKind::MapB],
        metric: Metric::Dot,
        mu: 1.0,
        seed: SEED,
    };
    let out = run_retrieval(&cfg).unwrap();
    let mut checks = Vec::new();
    for &d in &cfg.dims {
        let hlb = out.auc_of(ModelKind::Hlb, d).unwrap();
        let mapc = out.auc_of(ModelKind::MapC, d).unwrap();
        let mapb = out.auc_of(ModelKind::MapB, d).unwrap();
        checks.push((
            hlb >= mapc && hlb >= mapb,
            format!("d={d} AUC hlb {hlb:.4} map-c {mapc:.4} map-b {mapb:.4}"),
        ));
    }
    let rho1 = out
        .records
        .iter()
        .filter(|r| r.model == ModelKind::Hlb && r.rho == 1)
        .all(|r| r.accuracy == 1.0);
    checks.push((
        rho1,
        format!("HLB accuracy 1.0 at ρ=1 in every trial: {rho1}"),
    ));
    let ok = verdict(
        9,
        "retrieval dominance",
        &checks,
        start.elapsed(),
        Some(Duration::from_secs(600)),
    );
    assert!(ok);
}

#[test]
fn c10_hrr_convolution_oracle() {
    let _g = serial();
    let start = Instant::now();
    let mut rng = rng(SEED);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let d = rng.random_range(1..=256);
        let x = gaussian(d, &mut rng);
        let y = gaussian(d, &mut rng);
        let fast = circ_conv(&hv(x.clone()), &hv(y.clone())).unwrap();
        let slow = naive_circular_convolution(&x, &y);
        worst = worst.max(norm(&sub(fast.as_slice(), &slow)) / norm(&slow));
    }
    let ok = verdict(
        10,
        "HRR convolution oracle",
        &[(
            worst <= 1e-9,
            format!("max relative error {worst:.3e} (tol 1e-9), d in 1..=256"),
        )],
        start.elapsed(),
        Some(Duration::from_secs(5)),
    );
    assert!(ok);
}

fn oracle_bind(kind: ModelKind, x: &[f64], y: &[f64]) -> Vec<f64> {
    match kind {
        ModelKind::Hlb | ModelKind::MapC | ModelKind::MapB => {
            x.iter().zip(y).map(|(a, b)| a * b).collect()
        }
        ModelKind::Hrr => naive_circular_convolution(x, y),
        ModelKind::Vtb => {
            let d = x.len();
            let side = (d as f64).sqrt().round() as usize;
            let scale = (d as f64).powf(0.25);
            let mut out = vec![0.0; d];
            for b in 0..side {
                for r in 0..side {
                    out[b * side + r] = scale
                        * (0..side)
                            .map(|c| y[r * side + c] * x[b * side + c])
                            .sum::<f64>();
                }
            }
            out
        }
    }
}

#[test]
fn c11_xml_complement_identity() {
    let _g = serial();
    let start = Instant::now();
    let mut rng = rng(SEED);
    let d = 256;
    let labels = 1000;
    let mut checks = Vec::new();
    for kind in ModelKind::ALL {
        let codec =
            XmlCodec::random(BindingModel::new(kind, d).unwrap(), labels, &mut rng).unwrap();
        let classes: Vec<Vec<f64>> = codec
            .classes
            .iter()
            .map(|c| c.as_slice().to_vec())
            .collect();
        let mut worst = 0.0f64;
        for k in [1, 5, 50] {
            let present = rand::seq::index::sample(&mut rng, labels, k).into_vec();
            let fast = codec.encode(&present).unwrap();
            let brute = brute_force_xml(
                &classes,
                &present,
                codec.p.as_slice(),
                codec.m.as_slice(),
                |x, y| oracle_bind(kind, x, y),
            );
            worst = worst.max(max_abs(&sub(fast.as_slice(), &brute)));
        }
        checks.push((worst <= 1e-9, format!("{kind} max abs gap {worst:.2e}")));
    }
    let ok = verdict(
        11,
        "XML complement identity",
        &checks,
        start.elapsed(),
        Some(Duration::from_secs(10)),
    );
    assert!(ok);
}

fn run_cli(args: &[&str], out: &std::path::Path) -> i32 {
    let mut argv = vec!["hlb"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--out", out.to_str().unwrap()]);
    hlb::cli::run(argv)
}

fn csv_bytes(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn c12_determinism() {
    let _g = serial();
    let start = Instant::now();
    let commands: &[&[&str]] = &[
        &[
            "bench",
            "retrieval",
            "--dims",
            "16,64",
            "--rho",
            "1..6",
            "--trials",
            "4",
            "--pool-size",
            "200",
        ],
        &[
            "bench",
            "sequential",
            "--d",
            "64",
            "--depth",
            "8",
            "--trials",
            "3",
        ],
        &[
            "heatmap",
            "correction",
            "--n",
            "1..6",
            "--rho",
            "1..8",
            "--trials",
            "5",
        ],
        &[
            "heatmap", "noise", "--n", "1..6", "--rho", "2..8", "--trials", "5",
        ],
        &[
            "relation",
            "norm",
            "--d",
            "128",
            "--rho-max",
            "20",
            "--trials",
            "5",
        ],
        &[
            "relation",
            "cosine",
            "--d",
            "128",
            "--rho-max",
            "10",
            "--trials",
            "5",
        ],
        &[
            "xml", "demo", "--d", "64", "--labels", "30", "--k", "1,4", "--trials", "2",
        ],
        &["csps", "demo", "--d", "64", "--trials", "5"],
    ];
    let tmp = tempfile::tempdir().unwrap();
    let mut checks = Vec::new();
    for (i, cmd) in commands.iter().enumerate() {
        let mut runs = Vec::new();
        for (r, jobs) in ["1", "1", "3"].iter().enumerate() {
            let dir = tmp.path().join(format!("{i}-{r}"));
            let mut args = cmd.to_vec();
            args.extend_from_slice(&["--seed", "11", "--jobs", jobs]);
            assert_eq!(run_cli(&args, &dir), 0, "{cmd:?}");
            runs.push(csv_bytes(&dir));
        }
        let same = !runs[0].is_empty() && runs.iter().all(|r| *r == runs[0]);
        checks.push((
            same,
            format!(
                "{} {}: {}",
                cmd[0],
                cmd[1],
                if same { "identical" } else { "differs" }
            ),
        ));
    }
    let ok = verdict(12, "determinism", &checks, start.elapsed(), None);
    assert!(ok);
}
