//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use lrdstable::harness::{run_cell, ExperimentSpec, TableRow, DEFAULT_GAMMAS};
use lrdstable::hermite::{j_oracle, normalization::LrdNormalization, OracleSettings, J_TOL};
use lrdstable::seeds::rng_from_seed;
use lrdstable::{
    c0, hermite_rank, j01, j10, ks_statistic, stable_cdf, C0Grid, Execution, LrdModel, Sample,
    StableLaw,
};
use rand_distr::{Distribution, StandardNormal};

const TABLES: [(f64, f64); 3] = [(0.5, 0.5), (1.0, 0.0), (1.5, 0.8)];
const MASTER_SEED: u64 = 20_240_601;
const REPS: usize = 1000;

/// Reference cell: parameters, then mean, sd, K* coverage and K^sd coverage
/// at γ = 0.8, 0.9, 0.95.
struct Reference {
    alpha: f64,
    beta2: f64,
    d: f64,
    n: usize,
    mean: f64,
    sd: f64,
    kstar: [f64; 3],
    ksd: [f64; 3],
}

const CELLS: [Reference; 6] = [
    Reference {
        alpha: 0.5,
        beta2: 0.5,
        d: 0.5,
        n: 128,
        mean: 1.1019,
        sd: 0.5365,
        kstar: [0.6856, 0.8392, 0.9194],
        ksd: [0.7998, 0.8944, 0.9474],
    },
    Reference {
        alpha: 0.5,
        beta2: 0.5,
        d: 0.5,
        n: 512,
        mean: 1.0385,
        sd: 0.5503,
        kstar: [0.7126, 0.8562, 0.9308],
        ksd: [0.7972, 0.9000, 0.9520],
    },
    Reference {
        alpha: 0.5,
        beta2: 0.5,
        d: 0.8,
        n: 128,
        mean: 0.9505,
        sd: 0.4444,
        kstar: [0.7898, 0.9208, 0.9688],
        ksd: [0.8030, 0.9032, 0.9510],
    },
    Reference {
        alpha: 0.5,
        beta2: 0.5,
        d: 0.8,
        n: 512,
        mean: 0.9541,
        sd: 0.4798,
        kstar: [0.7824, 0.9036, 0.9576],
        ksd: [0.8042, 0.8996, 0.9486],
    },
    Reference {
        alpha: 1.0,
        beta2: 0.0,
        d: 0.5,
        n: 1024,
        mean: 0.9446,
        sd: 0.5633,
        kstar: [0.7546, 0.8762, 0.9372],
        ksd: [0.8036, 0.8964, 0.9466],
    },
    Reference {
        alpha: 1.5,
        beta2: 0.8,
        d: 0.8,
        n: 512,
        mean: 0.9635,
        sd: 0.4782,
        kstar: [0.7628, 0.9022, 0.9618],
        ksd: [0.7954, 0.9012, 0.9524],
    },
];

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("table reproduction", table_reproduction),
        ("mean and sd", mean_and_sd),
        ("coefficient oracle", coefficient_oracle),
        ("sampler distribution", sampler_distribution),
        ("symmetry", symmetry),
        ("rank one", rank_one),
        ("normalization", normalization),
        ("closed forms", closed_forms),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} ({name}): {verdict} [{:.1} s] {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn cell(p: &Reference) -> TableRow {
    let spec = ExperimentSpec {
        alpha: p.alpha,
        beta2: p.beta2,
        ds: vec![p.d],
        ns: vec![p.n],
        reps: REPS,
        master_seed: MASTER_SEED,
        gammas: DEFAULT_GAMMAS.to_vec(),
        workers: None,
    };
    run_cell(&spec, p.d, p.n).expect("cell runs")
}

fn table_reproduction() -> Outcome {
    let mut worst_kstar = 0.0f64;
    let mut worst_ksd = 0.0f64;
    let mut misses = Vec::new();
    for p in &CELLS {
        let row = cell(p);
        for (g, gamma) in DEFAULT_GAMMAS.iter().enumerate() {
            let dk = (row.kstar_coverage[g] - p.kstar[g]).abs();
            let ds = (row.ksd_coverage[g] - p.ksd[g]).abs();
            worst_kstar = worst_kstar.max(dk);
            worst_ksd = worst_ksd.max(ds);
            if dk > 0.05 {
                misses.push(format!(
                    "K* a={} D={} n={} g={gamma}: {:.4} vs {:.4}",
                    p.alpha, p.d, p.n, row.kstar_coverage[g], p.kstar[g]
                ));
            }
            if ds > 0.04 {
                misses.push(format!(
                    "Ksd a={} D={} n={} g={gamma}: {:.4} vs {:.4}",
                    p.alpha, p.d, p.n, row.ksd_coverage[g], p.ksd[g]
                ));
            }
        }
    }
    outcome(
        misses.is_empty(),
        format!(
            "{} cells, N={REPS}: max |dK*| = {worst_kstar:.4} (tol 0.05), max |dKsd| = {worst_ksd:.4} (tol 0.04){}",
            CELLS.len(),
            if misses.is_empty() { String::new() } else { format!("; misses: {}", misses.join("; ")) }
        ),
    )
}

fn mean_and_sd() -> Outcome {
    let p = &CELLS[3];
    let row = cell(p);
    let pass = (row.mean - p.mean).abs() <= 0.05 && (row.sd - p.sd).abs() <= 0.05;
    outcome(
        pass,
        format!(
            "D=0.8 n=512: mean {:.4} (table {}), sd {:.4} (table {})",
            row.mean, p.mean, row.sd, p.sd
        ),
    )
}

fn coefficient_oracle() -> Outcome {
    let settings = OracleSettings::default();
    let mut worst = 0.0f64;
    for &(a, b) in &TABLES {
        for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let d10 = j10(x, a, b, J_TOL).unwrap().value
                - j_oracle(1, 0, x, a, b, settings).unwrap().value;
            let d01 = j01(x, a, b, J_TOL).unwrap().value
                - j_oracle(0, 1, x, a, b, settings).unwrap().value;
            worst = worst.max(d10.abs()).max(d01.abs());
        }
    }
    outcome(
        worst <= 1e-5,
        format!("max deviation {worst:.2e} over 15 points x 2 coefficients (tol 1e-5)"),
    )
}

fn sampler_distribution() -> Outcome {
    let draws = 100_000;
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for (k, &(a, b)) in TABLES.iter().enumerate() {
        let law = StableLaw::new(a, b).unwrap();
        let mut rng = rng_from_seed(MASTER_SEED + k as u64);
        let xs: Vec<f64> = (0..draws)
            .map(|_| {
                let z1: f64 = StandardNormal.sample(&mut rng);
                let z2: f64 = StandardNormal.sample(&mut rng);
                law.transform(z1, z2)
            })
            .collect();
        let ks = ks_statistic(&Sample::new(xs).unwrap(), |x| law.cdf(x)).unwrap();
        worst = worst.max(ks);
        detail.push(format!("({a}, {b}): {ks:.4}"));
    }
    outcome(
        worst < 0.01,
        format!(
            "KS distance at 1e5 iid draws {} (tol 0.01)",
            detail.join(", ")
        ),
    )
}

fn symmetry() -> Outcome {
    let mut worst_cdf = 0.0f64;
    for &(a, b) in &TABLES {
        for i in 0..101 {
            let x = -10.0 + 0.2 * i as f64;
            let lhs = stable_cdf(x, a, b).unwrap();
            let rhs = 1.0 - stable_cdf(-x, a, -b).unwrap();
            worst_cdf = worst_cdf.max((lhs - rhs).abs());
        }
    }
    let settings = OracleSettings::default();
    let mut worst_coef = 0.0f64;
    for &(a, b) in &TABLES {
        for x in [-3.0, -1.5, -0.5, -0.1] {
            let d10 = j10(x, a, b, J_TOL).unwrap().value
                - j_oracle(1, 0, x, a, b, settings).unwrap().value;
            let d01 = j01(x, a, b, J_TOL).unwrap().value
                - j_oracle(0, 1, x, a, b, settings).unwrap().value;
            worst_coef = worst_coef.max(d10.abs()).max(d01.abs());
        }
    }
    outcome(
        worst_cdf <= 2e-8 && worst_coef <= 1e-5,
        format!("CDF mirror {worst_cdf:.2e} (tol 2e-8), reflected coefficients vs oracle {worst_coef:.2e} (tol 1e-5)"),
    )
}

fn rank_one() -> Outcome {
    let tol = 1e-8;
    let mut bad = Vec::new();
    for &(a, b) in &TABLES {
        for i in 0..41 {
            let x = -10.0 + 0.5 * i as f64;
            match hermite_rank(x, a, b, tol) {
                Ok(1) => {}
                other => bad.push(format!("({a}, {b}, x={x}): {other:?}")),
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "123 points, tol {tol:.0e}; failures: {}",
            if bad.is_empty() {
                "none".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn normalization() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for d in [0.2, 0.5, 0.8] {
        let model = LrdModel::new(d).unwrap();
        let ratio = |p: u32| {
            LrdNormalization::new(&model, 1, 1 << p, true)
                .unwrap()
                .variance_ratio()
                .unwrap()
        };
        let (small, large) = (ratio(7), ratio(14));
        pass &= (0.8..=1.25).contains(&large) && (large - 1.0).abs() < (small - 1.0).abs();
        detail.push(format!("D={d}: {small:.4} at 2^7, {large:.4} at 2^14"));
    }
    outcome(pass, detail.join(", "))
}

fn closed_forms() -> Outcome {
    let mut worst_cdf = 0.0f64;
    let mut worst_oracle = 0.0f64;
    let settings = OracleSettings::default();
    for i in 0..41 {
        let x = -20.0 + i as f64;
        let exact = (2.0 * x / PI).atan() / PI + 0.5;
        worst_cdf = worst_cdf.max((stable_cdf(x, 1.0, 0.0).unwrap() - exact).abs());
        if i % 4 == 0 {
            // independent route through the CMS map
            let o = j_oracle(0, 0, x, 1.0, 0.0, settings).unwrap().value;
            worst_oracle = worst_oracle.max((o - exact).abs());
        }
    }
    let c = c0(1.0, 0.0, &C0Grid::default(), J_TOL, Execution::default())
        .unwrap()
        .value;
    let dc = (c - 1.0 / (2.0 * PI).sqrt()).abs();
    outcome(
        worst_cdf <= 1e-7 && worst_oracle <= 1e-7 && dc <= 1e-5,
        format!("Cauchy CDF {worst_cdf:.2e}, via oracle {worst_oracle:.2e} (tol 1e-7); c0 error {dc:.2e} (tol 1e-5)"),
    )
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_lrdstable");
    let input = dir.path().join("stable.csv");
    let generate_input = Command::new(bin)
        .args([
            "generate-stable",
            "--alpha",
            "1.5",
            "--beta2",
            "0.8",
            "--d",
            "0.5",
            "--n",
            "256",
            "--seed",
            "3",
            "--out",
        ])
        .arg(&input)
        .status()
        .unwrap();
    assert!(generate_input.success());
    let input = input.to_str().unwrap();

    let commands: Vec<(&str, Vec<&str>)> = vec![
        (
            "generate-gaussian",
            vec![
                "generate-gaussian",
                "--d",
                "0.3",
                "--n",
                "1000",
                "--seed",
                "9",
                "--pair",
                "--out",
                "{out}",
            ],
        ),
        (
            "generate-stable",
            vec![
                "generate-stable",
                "--alpha",
                "0.5",
                "--beta2",
                "0.5",
                "--d",
                "0.8",
                "--n",
                "500",
                "--seed",
                "9",
                "--out",
                "{out}",
            ],
        ),
        (
            "cdf",
            vec![
                "cdf",
                "--alpha",
                "0.5",
                "--beta2",
                "0.5",
                "--x",
                "-2,-0.5,0,1,10",
            ],
        ),
        (
            "coeffs",
            vec![
                "coeffs", "--alpha", "1.5", "--beta2", "0.8", "--xmin", "-3", "--xmax", "3",
                "--points", "13", "--tol", "1e-9", "--out", "{out}",
            ],
        ),
        ("c0", vec!["c0", "--alpha", "1.5", "--beta2", "0.8"]),
        (
            "ks",
            vec![
                "ks", "--input", input, "--alpha", "1.5", "--beta2", "0.8", "--d", "0.5",
            ],
        ),
        (
            "test",
            vec![
                "test", "--input", input, "--alpha", "1.5", "--beta2", "0.8", "--d", "0.5",
                "--level", "0.05", "--json",
            ],
        ),
        (
            "mc-table",
            vec![
                "mc-table", "--alpha", "1", "--beta2", "0", "--d-list", "0.3,0.7", "--n-list",
                "64", "--reps", "40", "--seed", "5", "--out", "{out}",
            ],
        ),
    ];
    let mut differing = Vec::new();
    for (name, args) in &commands {
        let run = |tag: &str, workers: &str| -> Vec<u8> {
            let out = dir.path().join(format!("{name}-{tag}.out"));
            let args: Vec<String> = args
                .iter()
                .map(|a| {
                    if *a == "{out}" {
                        out.to_str().unwrap().to_string()
                    } else {
                        a.to_string()
                    }
                })
                .collect();
            let o = Command::new(bin)
                .args(&args)
                .env("LRDSTABLE_WORKERS", workers)
                .output()
                .unwrap();
            assert!(
                o.status.success(),
                "{name}: {}",
                String::from_utf8_lossy(&o.stderr)
            );
            let mut bytes = o.stdout;
            if Path::new(&out).exists() {
                bytes.extend(std::fs::read(&out).unwrap());
            }
            bytes
        };
        let a = run("a", "1");
        let b = run("b", "1");
        let c = run("c", "3");
        if a != b || a != c || a.is_empty() {
            differing.push(*name);
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} commands run twice and with a different worker count; differing: {}",
            commands.len(),
            if differing.is_empty() {
                "none".into()
            } else {
                differing.join(", ")
            }
        ),
    )
}
