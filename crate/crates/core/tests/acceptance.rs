//! Acceptance criteria. Each prints one PASS/FAIL line; the process exits
//! nonzero if any fails.
//!
//! Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bohr::functionals::{
    bohr_sum, mobius_bohr_sum, phi0, phi0_mobius, upsilon, upsilon_mobius, Radius, WeightFunction,
};
use bohr::minimize::scan_then_golden;
use bohr::series::{mobius, DEFAULT_ORDER};
use bohr::sharp::{
    astar, lambda_bounds, lambda_generic_mobius, lambda_phi0, lambda_weighted, m_ratio,
    mobius_ratio, PsiFunctional,
};
use bohr::verify::{
    condition_i_spotcheck, dominance_check, scalar_dominance_bound, sharpness_probe,
    verify_bohr_classic, verify_improved, ImprovedKind, ProbeKind, VerifyConfig, VIOLATION_TOL,
};
use bohr::Exec;

const THIRD: Radius = Radius::ONE_THIRD;

struct Outcome {
    passed: bool,
    detail: String,
}

fn criterion(id: u32, name: &str, budget: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let passed = out.passed && in_time;
    println!(
        "{} [{id:>2}] {name}: {} ({:.3} s, budget {} s{})",
        if passed { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { ", over budget" },
    );
    passed
}

fn radius(r: f64) -> Radius {
    Radius::new(r.min(1.0 / 3.0)).unwrap()
}

fn c1_lambda_at_third() -> Outcome {
    let res = lambda_phi0(THIRD).unwrap();
    let err = (res.lambda - 16.0 / 9.0).abs();
    Outcome {
        passed: err <= 1e-9,
        detail: format!("lambda = {:.12}, |lambda - 16/9| = {err:.1e}", res.lambda),
    }
}

fn c2_weighted_lambda() -> Outcome {
    let res = lambda_weighted(&WeightFunction::worked_example(), THIRD).unwrap();
    let printed = lambda_weighted(&WeightFunction::worked_example_as_printed(), THIRD).unwrap();
    let err = (res.lambda - 4.0 / 3.0).abs();
    Outcome {
        passed: err <= 1e-9,
        detail: format!(
            "g(a) = (9 - a^2)/((2 + a^2)(3 - a)): lambda = {:.12}, |lambda - 4/3| = {err:.1e}; \
             numerator 9 + a^4 gives {:.12}",
            res.lambda, printed.lambda
        ),
    }
}

fn c3_psi_constant() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        let big_r = radius(k as f64 / 30.0);
        let res = lambda_generic_mobius(&PsiFunctional, big_r, Exec::default()).unwrap();
        worst = worst.max((res.lambda - 1.0).abs());
    }
    let mut family: f64 = 0.0;
    for r in Radius::grid(THIRD, 11).into_iter().skip(1) {
        for i in 0..100 {
            let a = r.get() + (1.0 - r.get()) * i as f64 / 100.0;
            family = family.max((mobius_ratio(&PsiFunctional, a, r) - 1.0).abs());
        }
    }
    Outcome {
        passed: worst <= 1e-9 && family <= 1e-9,
        detail: format!("max |Lambda_psi(R) - 1| = {worst:.1e} over 10 radii, Mobius a >= r ratio off by {family:.1e}"),
    }
}

fn c4_sandwich() -> Outcome {
    let mut worst_margin = f64::INFINITY;
    for i in 1..=50 {
        let r = radius(0.01 + (1.0 / 3.0 - 0.01) * i as f64 / 50.0);
        let lam = lambda_phi0(r).unwrap().lambda;
        let b = lambda_bounds(r).unwrap();
        worst_margin = worst_margin.min(lam - b.lower).min(b.upper - lam);
    }
    let lower_third = lambda_bounds(THIRD).unwrap().lower;
    Outcome {
        passed: worst_margin >= -1e-9 && lower_third == 16.0 / 9.0,
        detail: format!("min envelope margin = {worst_margin:.3e}, lower(1/3) = {lower_third:.17}"),
    }
}

fn c5_astar() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=6 {
        let r = radius(0.05 * k as f64);
        let root = astar(r).unwrap().a;
        let direct = scan_then_golden(|a| m_ratio(a, r).unwrap(), 0.0, 1.0, 4096, 1e-12);
        worst = worst.max((root - direct.x).abs());
    }
    let near_zero = astar(radius(0.001)).unwrap().a;
    let limit_err = (near_zero - 1.0 / 3.0).abs();
    Outcome {
        passed: worst <= 1e-6 && limit_err <= 5e-3,
        detail: format!(
            "max |a*(r) - argmin M| = {worst:.1e} for r = 0.05..0.30, a*(0.001) = {near_zero:.7}"
        ),
    }
}

fn c6_random_certification() -> Outcome {
    let cfg = VerifyConfig::default();
    let reports = [
        verify_bohr_classic(THIRD, &cfg),
        verify_improved(ImprovedKind::Phi0With169, THIRD, &cfg).unwrap(),
        verify_improved(ImprovedKind::PsiWith1, THIRD, &cfg).unwrap(),
        verify_improved(ImprovedKind::WeightedG, THIRD, &cfg).unwrap(),
    ];
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} violations, slack {:.2e}",
                r.suite,
                r.violations.len(),
                r.slack_min
            )
        })
        .collect();
    Outcome {
        passed: reports.iter().all(|r| r.is_clean()),
        detail: format!(
            "{} samples x {} radii, N = {}, threshold {VIOLATION_TOL:e}; {}",
            cfg.samples,
            cfg.radii,
            cfg.order,
            summary.join("; ")
        ),
    }
}

fn c7_sharpness_witnesses() -> Outcome {
    let witness = mobius_bohr_sum(0.95, 0.35);
    let probe = sharpness_probe(ProbeKind::Phi0, THIRD, 400, Exec::default()).unwrap();
    let (a_last, ratio_last) = *probe.approach.last().unwrap();
    let target = 16.0 / 9.0;
    let passed = witness > 1.0
        && (witness - 1.001_123_6).abs() < 1e-7
        && probe.passed
        && (probe.min_ratio - target).abs() <= 1e-3
        && (ratio_last - target).abs() <= 1e-3;
    Outcome {
        passed,
        detail: format!(
            "Bohr sum(phi_0.95, 0.35) = {witness:.7}, probe min ratio = {:.9} at a = {:.6}, ratio at a = {a_last} is {ratio_last:.9}",
            probe.min_ratio, probe.at_a
        ),
    }
}

fn c8_dominance() -> Outcome {
    let rep = dominance_check(1000, Exec::default());
    let eq = (scalar_dominance_bound(1.0 / 3.0) - 91.0 / 27.0).abs();
    let ratio_eq = (rep.ratio_at_third - 91.0 / 27.0).abs();
    Outcome {
        passed: rep.passed && eq <= 1e-12 && ratio_eq <= 1e-12,
        detail: format!(
            "1000x1000 max excess = {:.1e}, scalar margin min = {:.1e}, equality at 1/3 off by {eq:.1e}",
            rep.max_excess, rep.scalar_min_margin
        ),
    }
}

fn c9_oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let a = i as f64 / 99.0;
        let f = mobius(a, DEFAULT_ORDER).unwrap();
        for j in 0..100 {
            let r = radius(j as f64 / 99.0 / 3.0);
            let pairs = [
                (bohr_sum(&f, r), mobius_bohr_sum(a, r.get())),
                (upsilon(&f, r), upsilon_mobius(a, r)),
                (phi0(&f, r).unwrap(), phi0_mobius(a, r)),
            ];
            for (e, closed) in pairs {
                worst = worst.max((e.lo - closed).abs()).max((e.hi - closed).abs());
            }
        }
    }
    Outcome {
        passed: worst <= 1e-12,
        detail: format!("100x100 grid, N = {DEFAULT_ORDER}, max deviation = {worst:.1e}"),
    }
}

fn c10_condition_i() -> Outcome {
    let rep = condition_i_spotcheck(THIRD, &VerifyConfig::default());
    Outcome {
        passed: rep.violations.is_empty() && rep.max_excess <= 1e-9,
        detail: format!(
            "1000 samples x 20 radii, max phi0(f) - phi0(phi_|a0|) = {:.1e}, {} strict",
            rep.max_excess, rep.strict
        ),
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "Lambda(1/3) = 16/9", secs(1), c1_lambda_at_third),
        criterion(2, "weighted Lambda(1/3) = 4/3", secs(1), c2_weighted_lambda),
        criterion(3, "sharp constant of Psi is 1", secs(5), c3_psi_constant),
        criterion(4, "envelope sandwich", secs(10), c4_sandwich),
        criterion(5, "a*(r) roots and limit", secs(5), c5_astar),
        criterion(
            6,
            "randomized certification",
            secs(60),
            c6_random_certification,
        ),
        criterion(7, "sharpness witnesses", secs(5), c7_sharpness_witnesses),
        criterion(8, "dominance of 16/9 phi0 by Psi", secs(10), c8_dominance),
        criterion(
            9,
            "Mobius oracle equivalence",
            secs(10),
            c9_oracle_equivalence,
        ),
        criterion(10, "condition (i) spot check", secs(60), c10_condition_i),
    ];
    let failed: Vec<usize> = (1..=results.len()).filter(|&i| !results[i - 1]).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
