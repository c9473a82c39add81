use lrdstable::lrd_gaussian::{LrdModel, PathSampler};
use lrdstable::normal;

fn lag_products(paths: &[Vec<f64>], lag: usize) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for p in paths {
        for i in 0..p.len() - lag {
            sum += p[i] * p[i + lag];
            count += 1;
        }
    }
    sum / count as f64
}

#[test]
fn sample_autocovariance_matches_the_model() {
    for d in [0.2, 0.5, 0.8] {
        let model = LrdModel::new(d).unwrap();
        let sampler = PathSampler::new(model, 256).unwrap();
        let paths: Vec<Vec<f64>> = (0..2000).map(|s| sampler.sample_seeded(s)).collect();
        for lag in [0, 1, 2, 5, 20, 100] {
            let est = lag_products(&paths, lag);
            let r = model.autocovariance(lag);
            assert!((est - r).abs() < 0.02, "D={d} lag {lag}: {est} vs {r}");
        }
    }
}

#[test]
fn marginals_are_standard_normal() {
    let model = LrdModel::new(0.5).unwrap();
    let sampler = PathSampler::new(model, 64).unwrap();
    let mut first: Vec<f64> = Vec::new();
    let mut last: Vec<f64> = Vec::new();
    for s in 0..20_000 {
        let p = sampler.sample_seeded(s);
        first.push(p[0]);
        last.push(p[63]);
    }
    for mut v in [first, last] {
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        let ks = v
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = normal::cdf(x);
                ((i + 1) as f64 / n - f).abs().max((f - i as f64 / n).abs())
            })
            .fold(0.0, f64::max);
        // 1.63 / sqrt(n) is the 1% critical value
        assert!(ks < 1.63 / n.sqrt(), "KS {ks}");
    }
}

#[test]
fn pair_components_are_uncorrelated() {
    let model = LrdModel::new(0.8).unwrap();
    let sampler = PathSampler::new(model, 128).unwrap();
    let reps = 2000;
    let mut cross = 0.0;
    for s in 0..reps {
        let p = sampler.sample_pair(s);
        cross += p.z1.iter().zip(&p.z2).map(|(a, b)| a * b).sum::<f64>() / 128.0;
    }
    let cross = cross / reps as f64;
    assert!(cross.abs() < 0.01, "cross moment {cross}");
}

#[test]
fn long_paths_use_the_fft_method() {
    let model = LrdModel::new(0.3).unwrap();
    let s = PathSampler::new(model, 100_000).unwrap();
    assert!(s.is_circulant());
    let p = s.sample_seeded(1);
    assert_eq!(p.len(), 100_000);
    assert!(p.iter().all(|x| x.is_finite()));
}
