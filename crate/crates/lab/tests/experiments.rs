use smoothlab_lab::config::{ExperimentConfig, ExperimentKind, Settings};
use smoothlab_lab::report::Cell;
use smoothlab_lab::{experiments, replay, Report};
use statrs::function::erf::erf;

fn settings(pairs: &[(&str, &str)]) -> Settings {
    pairs.iter().fold(Settings::new(), |s, (k, v)| s.with(k, *v).unwrap())
}

fn run(kind: ExperimentKind, pairs: &[(&str, &str)]) -> Report {
    let cfg = ExperimentConfig::resolve(kind, &settings(pairs)).unwrap();
    experiments::run(&cfg, true).unwrap()
}

fn column(report: &Report, name: &str) -> Vec<f64> {
    (0..report.rows.len()).map(|r| report.number(r, name).unwrap()).collect()
}

#[test]
fn one_dimensional_matrix_tail_matches_closed_form() {
    let trials = 20_000.0;
    let r = run(
        ExperimentKind::MatrixTail,
        &[("d", "1"), ("sigma", "1"), ("threshold", "2,10"), ("trials", "20000"), ("seed", "3")],
    );
    for (row, t) in [2.0f64, 10.0].into_iter().enumerate() {
        let exact = erf(1.0 / (t * std::f64::consts::SQRT_2));
        let se = (exact * (1.0 - exact) / trials).sqrt();
        let emp = r.number(row, "empirical").unwrap();
        assert!((emp - exact).abs() <= 3.0 * se, "t = {t}: {emp} vs {exact}");
    }
    // At t = 10 the probability is about 0.0797, under the 1/t bound.
    assert!((erf(0.1 / std::f64::consts::SQRT_2) - 0.0797).abs() < 1e-4);
    assert_eq!(r.number(1, "bound_edelman"), Some(0.1));
}

#[test]
fn single_trial_gives_zero_or_one() {
    let r = run(ExperimentKind::MatrixTail, &[("d", "3"), ("sigma", "0.5"), ("threshold", "1,5,50"), ("trials", "1")]);
    assert!(column(&r, "empirical").iter().all(|&p| p == 0.0 || p == 1.0));
}

#[test]
fn exceedance_is_monotone_and_stderr_is_binomial() {
    let r = run(
        ExperimentKind::MatrixTail,
        &[("d", "3"), ("sigma", "0.2,1"), ("threshold", "1,3,10,30"), ("trials", "500"), ("center", "ones")],
    );
    for chunk in r.rows.chunks(4).enumerate() {
        let ps: Vec<f64> = (0..4).map(|k| r.number(chunk.0 * 4 + k, "empirical").unwrap()).collect();
        assert!(ps.windows(2).all(|w| w[0] >= w[1]), "{ps:?}");
    }
    for row in 0..r.rows.len() {
        let p = r.number(row, "empirical").unwrap();
        assert_eq!(r.number(row, "stderr").unwrap(), (p * (1.0 - p) / 500.0).sqrt());
    }
}

#[test]
fn bounds_are_recomputable_from_the_config() {
    let r = run(ExperimentKind::MatrixTail, &[("d", "4"), ("sigma", "0.1"), ("threshold", "160"), ("trials", "10")]);
    let (d, x, s) = (4.0f64, 160.0, 0.1);
    assert_eq!(r.number(0, "bound_sst"), Some(1.823 * d.sqrt() / (x * s)));
    assert_eq!(r.number(0, "bound_thm43"), Some(d.powf(1.5) / (x * s)));
    assert_eq!(r.number(0, "bound_conj1"), Some(d.sqrt() / (x * s)));
    // Only the zero center at sigma = 1 gets the Gaussian bound.
    assert_eq!(r.cell(0, "bound_edelman"), Some(&Cell::Na));
}

#[test]
fn submatrix_lemma_enumerates_every_subset() {
    let r = run(ExperimentKind::SubmatrixLemma, &[("n", "4"), ("d", "3"), ("sigma", "boundary"), ("trials", "20")]);
    assert_eq!(r.number(0, "subsets"), Some(4.0));
    let sigma = r.number(0, "sigma").unwrap();
    let expected = sigma * sigma / (8.0 * 3f64.powf(1.5) * 4f64.powi(7));
    assert_eq!(r.number(0, "indicator_threshold"), Some(expected));
}

#[test]
fn submatrix_lemma_rejects_sigma_outside_regime() {
    let cfg = ExperimentConfig::resolve(
        ExperimentKind::SubmatrixLemma,
        &settings(&[("n", "6"), ("d", "3"), ("sigma", "1"), ("trials", "2")]),
    )
    .unwrap();
    let err = experiments::run(&cfg, false).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn zero_sigma_profile_is_the_worst_center() {
    let r = run(
        ExperimentKind::SmoothedProfile,
        &[("n", "4"), ("d", "2"), ("sigma", "0"), ("trials", "1"), ("center", "zero,klee-minty")],
    );
    let means = column(&r, "mean");
    let best = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(column(&r, "smoothed_estimate").iter().all(|&e| e == best));
}

#[test]
fn profile_max_is_recomputable_from_trial_records() {
    let r = run(
        ExperimentKind::SmoothedProfile,
        &[("n", "4"), ("d", "2"), ("sigma", "0.5"), ("trials", "40"), ("center", "ones,klee-minty"), ("seed", "9")],
    );
    let records = r.per_trial.as_ref().unwrap()["per_center"].as_array().unwrap();
    let means: Vec<f64> = records
        .iter()
        .map(|c| {
            let xs: Vec<f64> = c[0].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
            xs.iter().sum::<f64>() / xs.len() as f64
        })
        .collect();
    let best = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(r.number(0, "smoothed_estimate"), Some(best));
    for (row, m) in means.iter().enumerate() {
        assert!((r.number(row, "mean").unwrap() - m).abs() < 1e-12);
        assert!(best >= *m);
    }
}

#[test]
fn single_center_profile_is_its_mean() {
    let r = run(ExperimentKind::SmoothedProfile, &[("n", "5"), ("d", "2"), ("sigma", "0.3"), ("trials", "25")]);
    assert_eq!(r.number(0, "mean"), r.number(0, "smoothed_estimate"));
}

#[test]
fn perceptron_tail_respects_block_novikoff() {
    let r = run(
        ExperimentKind::PerceptronTail,
        &[("n", "10"), ("d", "2"), ("sigma", "0.1"), ("threshold", "10,1000"), ("trials", "300"), ("center", "e1")],
    );
    let per_sigma = &r.summary["per_sigma"][0];
    assert_eq!(per_sigma["block_novikoff_violations"], 0);
    let emp = column(&r, "empirical");
    assert!(emp[0] >= emp[1]);
}

#[test]
fn every_kind_replays_exactly() {
    let cases: [(ExperimentKind, &[(&str, &str)]); 7] = [
        (ExperimentKind::MatrixTail, &[("threshold", "3,30")]),
        (ExperimentKind::RademacherTail, &[("d", "3"), ("threshold", "3")]),
        (ExperimentKind::ShadowSize, &[("sigma", "boundary")]),
        (ExperimentKind::SimplexPivots, &[("sigma", "0.05,0.2")]),
        (ExperimentKind::PerceptronTail, &[("sigma", "0.2"), ("threshold", "5")]),
        (ExperimentKind::SubmatrixLemma, &[("n", "6"), ("sigma", "boundary")]),
        (ExperimentKind::SmoothedProfile, &[("sigma", "0.1"), ("center", "zero,ones")]),
    ];
    for (kind, pairs) in cases {
        let mut all = pairs.to_vec();
        all.push(("trials", "30"));
        let r = run(kind, &all);
        let text = r.to_json();
        let rebuilt = replay::verify(&text).unwrap_or_else(|e| panic!("{kind:?}: {e}"));
        assert_eq!(rebuilt.to_json(), text);
    }
}

#[test]
fn replay_needs_trial_records() {
    let cfg = ExperimentConfig::resolve(
        ExperimentKind::MatrixTail,
        &settings(&[("threshold", "3"), ("trials", "5")]),
    )
    .unwrap();
    let text = experiments::run(&cfg, false).unwrap().to_json();
    assert_eq!(replay::verify(&text).unwrap_err().exit_code(), 1);
}
