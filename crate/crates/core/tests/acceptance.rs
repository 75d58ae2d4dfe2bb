//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use resroc::comparators::{normal_cdf, normal_quantile, yeo_johnson};
use resroc::empirical::{empirical_roc, polyline_area};
use resroc::estimators::{
    clamp_to_family, combined_counts, estimate, mw_auc, pl_estimate, pl_information, pl_score,
    rojo_auc, theta_estimate, Method,
};
use resroc::model::{auc_from_theta, sigma2_tau, sigma2_theta, youden_from_theta};
use resroc::simulation::{
    ged_cdf, ged_quantile, ged_sample, rng_stream, run_study, GedParams, SimulationReport,
    StudyConfig,
};
use resroc::{ResilienceTheta, SampleProportion, TwoSampleData};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const SEED: u64 = 20_240_601;

fn theta(v: f64) -> ResilienceTheta {
    ResilienceTheta::new(v).unwrap()
}

fn check(ok: bool, msg: String, failures: &mut Vec<String>) {
    if !ok {
        failures.push(msg);
    }
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures.join("; "))
    }
}

// Table 1 of the reference study: (theta, m, n, method) ->
// (avg, sd, rmse, coverage, avg_tau, avg_youden).
const TABLE1: &[(f64, usize, usize, Method, [f64; 6])] = &[
    (2.0, 60, 60, Method::PartialLikelihood, [2.0581, 0.4193, 0.4232, 0.9476, 0.6730, 0.2599]),
    (2.0, 60, 60, Method::MannWhitney, [2.0712, 0.4835, 0.4887, 0.9434, 0.6744, 0.2621]),
    (2.0, 60, 60, Method::Rojo, [2.0759, 0.4795, 0.4855, 0.9482, 0.6749, 0.2629]),
    (4.0, 60, 60, Method::PartialLikelihood, [4.1792, 0.9902, 1.0062, 0.9467, 0.8069, 0.4851]),
    (4.0, 60, 60, Method::MannWhitney, [4.2285, 1.1784, 1.2003, 0.9385, 0.8087, 0.4885]),
    (4.0, 60, 60, Method::Rojo, [4.2300, 1.1777, 1.1999, 0.9392, 0.8088, 0.4886]),
    (6.0, 60, 60, Method::PartialLikelihood, [6.3505, 1.7011, 1.7367, 0.9479, 0.8639, 0.5964]),
    (6.0, 60, 60, Method::MannWhitney, [6.4738, 2.1064, 2.1590, 0.9358, 0.8662, 0.6011]),
    (6.0, 60, 60, Method::Rojo, [6.4749, 2.1061, 2.1588, 0.9360, 0.8662, 0.6011]),
];

fn ac1_closed_form() -> Outcome {
    let mut f = Vec::new();
    for (t, tau, j) in [(2.0, 0.6667, 0.25), (4.0, 0.8, 0.4725), (6.0, 0.8571, 0.5824)] {
        let a = auc_from_theta(theta(t));
        let y = youden_from_theta(theta(t)).unwrap();
        check((a - tau).abs() <= 5e-5, format!("tau({t}) = {a:.6} vs {tau}"), &mut f);
        check((y - j).abs() <= 5e-5, format!("J({t}) = {y:.6} vs {j}"), &mut f);
    }
    finish(f, "tau and J reproduce 0.6667/0.8/0.8571 and 0.25/0.4725/0.5824 within 5e-5".into())
}

fn ac2_table1(report: &SimulationReport) -> Outcome {
    let mut f = Vec::new();
    let mut worst_avg: f64 = 0.0;
    for &(t, m, n, method, [avg, sd, rmse, cov, tau, j]) in TABLE1 {
        let row = report.row(t, m, n, method).ok_or("missing row")?;
        let sd_tol = if t == 2.0 { 0.02 } else { 0.05 };
        let tag = format!("theta={t} {method}");
        worst_avg = worst_avg.max((row.avg_theta - avg).abs());
        check((row.avg_theta - avg).abs() <= 0.02, format!("{tag} avg {:.4} vs {avg}", row.avg_theta), &mut f);
        check((row.sd_theta - sd).abs() <= sd_tol, format!("{tag} sd {:.4} vs {sd}", row.sd_theta), &mut f);
        check((row.rmse_theta - rmse).abs() <= sd_tol, format!("{tag} rmse {:.4} vs {rmse}", row.rmse_theta), &mut f);
        check((row.coverage - cov).abs() <= 0.01, format!("{tag} coverage {:.4} vs {cov}", row.coverage), &mut f);
        check((row.avg_tau - tau).abs() <= 0.005, format!("{tag} avg tau {:.4} vs {tau}", row.avg_tau), &mut f);
        check((row.avg_youden - j).abs() <= 0.005, format!("{tag} avg J {:.4} vs {j}", row.avg_youden), &mut f);
    }
    finish(
        f,
        format!("9 (60,60) rows match at R=10000 (largest avg deviation {worst_avg:.4})"),
    )
}

fn ac3_orderings(report: &SimulationReport) -> Outcome {
    let mut f = Vec::new();
    for (_, t, m, n) in report.config.cells() {
        let pl = report.row(t, m, n, Method::PartialLikelihood).unwrap();
        let mw = report.row(t, m, n, Method::MannWhitney).unwrap();
        let rj = report.row(t, m, n, Method::Rojo).unwrap();
        check(pl.rmse_theta < mw.rmse_theta, format!("theta={t} ({m},{n}) RMSE PL {:.4} >= MW {:.4}", pl.rmse_theta, mw.rmse_theta), &mut f);
        check(pl.rmse_theta < rj.rmse_theta, format!("theta={t} ({m},{n}) RMSE PL {:.4} >= Rojo {:.4}", pl.rmse_theta, rj.rmse_theta), &mut f);
        for r in [pl, mw, rj] {
            check(r.avg_theta > t, format!("theta={t} ({m},{n}) {} avg {:.4} <= theta", r.method, r.avg_theta), &mut f);
        }
    }
    finish(f, format!("{} cells: PL has lowest RMSE and every average exceeds theta", report.config.cells().len()))
}

fn ac4_variance() -> Outcome {
    let cfg = StudyConfig {
        theta_values: vec![2.0],
        size_pairs: vec![(500, 500)],
        replications: 10_000,
        methods: vec![Method::MannWhitney],
        seed: SEED,
        ..StudyConfig::default()
    };
    let report = run_study(&cfg).map_err(|e| e.to_string())?;
    let row = &report.rows[0];
    let scale = 1000.0;
    let var_theta = scale * row.sd_theta.powi(2);
    let var_tau = scale * row.sd_tau.powi(2);
    let half = SampleProportion::new(0.5).unwrap();
    let target_theta = sigma2_theta(theta(2.0), half);
    let target_tau = sigma2_tau(theta(2.0), half);
    let tau: f64 = 2.0 / 3.0;
    let printed = 2.0 * tau * (1.0 - tau).powi(2) / (2.0 - tau) + 2.0 * tau * tau * (1.0 - tau) / (1.0 + tau).powi(2);
    let mut f = Vec::new();
    check(((var_theta - target_theta) / target_theta).abs() <= 0.10, format!("Var theta {var_theta:.3} vs {target_theta}"), &mut f);
    check(((var_tau - target_tau) / target_tau).abs() <= 0.10, format!("Var tau {var_tau:.5} vs {target_tau:.5}"), &mut f);
    check((var_tau - target_tau).abs() < (var_tau - printed).abs(), format!("Var tau {var_tau:.5} closer to printed {printed:.5}"), &mut f);
    finish(
        f,
        format!(
            "Var theta {var_theta:.3} (target {target_theta}), Var tau {var_tau:.5} (target {target_tau:.5}, rejected variant {printed:.5})"
        ),
    )
}

fn ac5_fixtures() -> Outcome {
    let d = TwoSampleData::new(vec![1.0, 3.0], vec![2.0, 4.0]).unwrap();
    let rev = TwoSampleData::new(vec![2.0, 4.0], vec![1.0, 3.0]).unwrap();
    let pl = pl_estimate(&d, 0.05).map_err(|e| e.to_string())?.estimate.theta_hat;
    let root = (1.0 + 17f64.sqrt()) / 2.0;
    let mut f = Vec::new();
    check((pl - root).abs() <= 1e-8, format!("PL {pl} vs {root}"), &mut f);
    check(mw_auc(&d).auc == 0.75, format!("MW {}", mw_auc(&d).auc), &mut f);
    check(rojo_auc(&d) == 0.75, format!("Rojo {}", rojo_auc(&d)), &mut f);
    check(rojo_auc(&rev) == 0.625, format!("Rojo reversed {}", rojo_auc(&rev)), &mut f);
    finish(f, format!("PL {pl:.10}, MW 0.75, Rojo 0.75, Rojo reversed 0.625"))
}

fn brute_mw(x: &[f64], y: &[f64]) -> f64 {
    let mut twice = 0u64;
    for a in x {
        for b in y {
            twice += if a < b { 2 } else if a == b { 1 } else { 0 };
        }
    }
    twice as f64 / (2 * x.len() * y.len()) as f64
}

fn random_fixture(rep: u64, coarse: bool) -> TwoSampleData {
    let mut s = rng_stream(SEED, 900, rep);
    let m = 1 + (s.next_u64() % 40) as usize;
    let n = 1 + (s.next_u64() % 40) as usize;
    let mut draw = |k: usize| -> Vec<f64> {
        (0..k)
            .map(|_| {
                let u = s.next_open01();
                if coarse { (u * 12.0).floor() } else { u * 10.0 }
            })
            .collect()
    };
    let x = draw(m);
    let y = draw(n);
    TwoSampleData::new(x, y).unwrap()
}

fn ac6_oracles() -> Outcome {
    let mut f = Vec::new();
    let mut mismatches = 0;
    for rep in 0..1000 {
        let d = random_fixture(rep, rep % 2 == 0);
        if mw_auc(&d).auc != brute_mw(d.negative(), d.positive()) {
            mismatches += 1;
        }
    }
    check(mismatches == 0, format!("{mismatches} merge-rank vs brute-force mismatches"), &mut f);

    let mut worst_area: f64 = 0.0;
    for rep in 1000..1100 {
        let d = random_fixture(rep, rep % 2 == 0);
        worst_area = worst_area.max((polyline_area(&empirical_roc(&d)) - mw_auc(&d).auc).abs());
    }
    check(worst_area <= 1e-12, format!("trapezoid vs MW {worst_area:e}"), &mut f);

    let mut worst_fd: f64 = 0.0;
    for rep in 1100..1120 {
        let d = random_fixture(rep, false);
        let c = combined_counts(&d);
        for t in [0.5, 1.0, 2.0, 4.0] {
            let h = 1e-6;
            let fd = -(pl_score(t + h, &c) - pl_score(t - h, &c)) / (2.0 * h);
            let an = pl_information(t, &c);
            if an.abs() > 1e-3 {
                worst_fd = worst_fd.max(((an - fd) / an).abs());
            }
        }
    }
    check(worst_fd <= 1e-6, format!("information vs finite difference {worst_fd:e}"), &mut f);
    finish(
        f,
        format!("MW exact on 1000 fixtures; area error {worst_area:.1e}; information rel. error {worst_fd:.1e}"),
    )
}

fn ac7_invariance() -> Outcome {
    let mut f = Vec::new();
    let mut checked = 0;
    for (rep, t) in [(0u64, 2.0), (1, 4.0), (2, 1.3)] {
        let mut s = rng_stream(SEED, 700, rep);
        let x = ged_sample(GedParams::new(1.0, 1.0).unwrap(), 60, &mut s);
        let y = ged_sample(GedParams::new(1.0, t).unwrap(), 80, &mut s);
        let d = TwoSampleData::new(x, y).unwrap();
        let mut transforms: Vec<(String, TwoSampleData)> = vec![("shift 6.85".into(), d.map(|v| 6.85 + v).unwrap())];
        for l in [-2.0, -0.5, 0.0, 0.7, 1.5, 2.5] {
            transforms.push((format!("yeo-johnson {l}"), d.map(|v| yeo_johnson(v - 1.0, l)).unwrap()));
        }
        for method in Method::ALL {
            let base = theta_estimate(&d, method, 0.05).map_err(|e| e.to_string())?.theta_hat;
            for (name, td) in &transforms {
                let v = theta_estimate(td, method, 0.05).map_err(|e| e.to_string())?.theta_hat;
                check(v == base, format!("{method} under {name}: {v} != {base}"), &mut f);
                checked += 1;
            }
        }
    }
    // family restriction
    let below = TwoSampleData::new(vec![2.0, 4.0, 6.0], vec![1.0, 3.0, 5.5]).unwrap();
    let raw = theta_estimate(&below, Method::MannWhitney, 0.05).unwrap();
    check(raw.theta_hat < 1.0, format!("fixture theta {} not below 1", raw.theta_hat), &mut f);
    let clamped = estimate(&below, Method::MannWhitney, 0.05, true).unwrap();
    check(clamped.estimate.theta_hat == 1.0 && clamped.estimate.clamped, "enforce did not clamp to 1".into(), &mut f);
    let kept = clamp_to_family(raw.clone(), false);
    check(kept.theta_hat == raw.theta_hat && !kept.warnings.is_empty(), "non-enforced estimate changed or lacks warning".into(), &mut f);
    finish(f, format!("{checked} transformed estimates bit-identical; clamp max(1, theta) behaves"))
}

fn ac8_numerics() -> Outcome {
    let mut f = Vec::new();
    let q = normal_quantile(0.975).unwrap();
    check((q - 1.959964).abs() <= 1e-6, format!("z(0.975) = {q}"), &mut f);
    let mut worst_rt: f64 = 0.0;
    for k in 1..10_000 {
        let p = k as f64 / 10_000.0;
        worst_rt = worst_rt.max((normal_cdf(normal_quantile(p).unwrap()) - p).abs());
    }
    for e in 1..=8 {
        let p = 10f64.powi(-e);
        worst_rt = worst_rt.max((normal_cdf(normal_quantile(p).unwrap()) - p).abs());
        worst_rt = worst_rt.max((normal_cdf(normal_quantile(1.0 - p).unwrap()) - (1.0 - p)).abs());
    }
    check(worst_rt <= 1e-9, format!("normal round trip {worst_rt:e}"), &mut f);
    let mut worst_ged: f64 = 0.0;
    for t in [1.0, 2.0, 4.0, 6.0] {
        let p = GedParams::new(1.0, t).unwrap();
        for k in 1..1000 {
            let u = k as f64 / 1000.0;
            worst_ged = worst_ged.max((ged_cdf(p, ged_quantile(p, u).unwrap()) - u).abs());
        }
    }
    check(worst_ged <= 1e-12, format!("GED round trip {worst_ged:e}"), &mut f);
    finish(f, format!("z(0.975) = {q:.9}; normal round trip {worst_rt:.1e}; GED round trip {worst_ged:.1e}"))
}

fn main() {
    let start = Instant::now();
    let table1 = StudyConfig { seed: SEED, ..StudyConfig::default() };
    let report = run_study(&table1).expect("study config is valid");
    let study_secs = start.elapsed().as_secs_f64();

    let criteria: Vec<Criterion> = vec![
        ("AC1 closed-form parity", Box::new(ac1_closed_form)),
        ("AC2 Table 1 replication", Box::new(|| ac2_table1(&report))),
        ("AC3 Table 1 orderings", Box::new(|| ac3_orderings(&report))),
        ("AC4 asymptotic variance calibration", Box::new(ac4_variance)),
        ("AC5 analytic estimator fixtures", Box::new(ac5_fixtures)),
        ("AC6 oracle equivalences", Box::new(ac6_oracles)),
        ("AC7 invariance suite", Box::new(ac7_invariance)),
        ("AC8 numerical utilities", Box::new(ac8_numerics)),
    ];

    println!("acceptance: Table 1 study (27 rows, R=10000) ran in {study_secs:.1}s");
    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(msg) => println!("[PASS] {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({:.1}s)",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
