use qpower::rational::{int, to_f64};
use qpower::simulate::{
    bargaining_exact, bargaining_montecarlo, estimate_awards, estimate_qbar, exact_query_cdf,
    SimConfig,
};
use qpower::{q_star_individual, Coalition, Model, RescalingFamily, SimpleGame};

fn battery() -> Vec<(&'static str, SimpleGame)> {
    vec![
        ("dictator", SimpleGame::dictator(4, 0).unwrap()),
        ("majority", SimpleGame::quota_majority(5, 3).unwrap()),
        ("manipulation", SimpleGame::from_digits(4, "3;4").unwrap()),
        (
            "unanimity",
            SimpleGame::unanimity(4, Model::Standard, Coalition::grand(4)).unwrap(),
        ),
    ]
}

#[test]
fn empirical_cdf_matches_exact() {
    let trials = 200_000u64;
    for (name, g) in battery() {
        let report = estimate_qbar(&g, &SimConfig::new(trials, 17).with_workers(4)).unwrap();
        let counts = report.stop_time_counts.unwrap();
        let cdf = exact_query_cdf(&g).unwrap();
        let mut cumulative = 0u64;
        for (k, exact) in cdf.iter().enumerate() {
            cumulative += counts[k];
            let p = to_f64(exact);
            let phat = cumulative as f64 / trials as f64;
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            if se == 0.0 {
                assert_eq!(phat, p, "{name} k={k}");
            } else {
                assert!((phat - p).abs() < 4.0 * se, "{name} k={k}: {phat} vs {p}");
            }
        }
    }
}

#[test]
fn awards_match_weighted_semivalue() {
    for (name, g) in battery() {
        let n = g.n();
        let row = RescalingFamily::uniform().row(n).unwrap();
        let report =
            estimate_awards(&g, &row, &SimConfig::new(100_000, 5).with_workers(4)).unwrap();
        for i in 0..n {
            let exact = q_star_individual(&g, &row, i).unwrap();
            let z = report.estimates[i].z_score(&exact);
            assert!(z < 4.0, "{name} player {i}: z = {z}");
        }
    }
}

#[test]
fn montecarlo_bargaining_matches_exact() {
    for (name, g) in battery() {
        let n = g.n();
        for fam in [RescalingFamily::uniform(), RescalingFamily::coleman()] {
            let row = fam.row(n).unwrap();
            let exact = bargaining_exact(&g, &row).unwrap();
            let mc = bargaining_montecarlo(&g, &row, &SimConfig::new(50_000, 8).with_workers(4))
                .unwrap();
            assert_eq!(mc.pi.capped_trials, 0, "{name}");
            for i in 0..n {
                assert!(
                    mc.r.estimates[i].z_score(&exact.r[i]) < 4.0,
                    "{name} {} r[{i}]",
                    fam.name()
                );
                assert!(
                    mc.pi.estimates[i].z_score(&exact.pi[i]) < 4.0,
                    "{name} {} pi[{i}]",
                    fam.name()
                );
            }
        }
    }
}

#[test]
fn manipulation_pivot_award() {
    let g = SimpleGame::from_digits(4, "3;4").unwrap();
    let row = RescalingFamily::uniform().row(4).unwrap();
    assert_eq!(
        q_star_individual(&g, &row, 3).unwrap(),
        qpower::rational::ratio(1, 6)
    );
    let report = estimate_awards(&g, &row, &SimConfig::new(200_000, 99).with_workers(2)).unwrap();
    assert!(report.estimates[3].z_score(&qpower::rational::ratio(1, 6)) < 4.0);
    assert_eq!(
        report
            .estimates
            .iter()
            .take(2)
            .map(|e| e.mean.clone())
            .collect::<Vec<_>>(),
        vec![int(0), int(0)]
    );
}
