use lrdstable::harness::{run_experiment, ExperimentSpec, DEFAULT_GAMMAS};

fn spec(workers: Option<usize>) -> ExperimentSpec {
    ExperimentSpec {
        alpha: 1.5,
        beta2: 0.8,
        ds: vec![0.3, 0.8],
        ns: vec![32, 100],
        reps: 50,
        master_seed: 99,
        gammas: DEFAULT_GAMMAS.to_vec(),
        workers,
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let a = run_experiment(&spec(Some(1))).unwrap();
    let b = run_experiment(&spec(Some(3))).unwrap();
    let c = run_experiment(&spec(None)).unwrap();
    assert_eq!(a.rows, b.rows);
    assert_eq!(a.rows, c.rows);
    assert_eq!(a.rows.len(), 4);
    assert_eq!(
        serde_json::to_string(&a.rows).unwrap(),
        serde_json::to_string(&c.rows).unwrap()
    );
}

#[test]
fn cells_are_ordered_and_bounded() {
    let r = run_experiment(&spec(None)).unwrap();
    let cells: Vec<(f64, usize)> = r.rows.iter().map(|row| (row.d, row.n)).collect();
    assert_eq!(cells, vec![(0.3, 32), (0.3, 100), (0.8, 32), (0.8, 100)]);
    assert!((r.coverage_se_bound - (0.25f64 / 50.0).sqrt()).abs() < 1e-15);
    for row in &r.rows {
        assert_eq!(row.failed, 0);
        for (p, se) in row.kstar_coverage.iter().zip(&row.kstar_coverage_se) {
            assert!((0.0..=1.0).contains(p));
            assert!(*se <= r.coverage_se_bound + 1e-15);
        }
        // coverage grows with γ
        assert!(row.ksd_coverage.windows(2).all(|w| w[0] <= w[1]));
    }
}
