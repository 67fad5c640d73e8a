//! Certification of the Bohr-type inequalities on random Schur-class
//! populations and on dense Möbius grids.
//!
//! Every left-hand side is an [`Enclosure`]. A violation is only recorded when
//! the certified lower bound exceeds `1 + VIOLATION_TOL`, so truncation and
//! rounding can never manufacture one.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::functionals::{
    bohr_sum, j_factor, mobius_bohr_sum, phi0, phi0_mobius, psi_functional, Enclosure, Radius,
    WeightFunction,
};
use crate::minimize::golden_section;
use crate::par::Exec;
use crate::series::{random_schur, sample_seed, SchurFunction, DEFAULT_ORDER};
use crate::sharp::{
    lambda_phi0, lambda_weighted, m_ratio, mobius_ratio, PsiFunctional, GOLDEN_WIDTH,
};

/// Tolerance above 1 before a certified left-hand side counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Population mix used by [`random_schur`], reported with every run.
pub const POPULATION_MIX: &str =
    "40% blaschke (degree 1-6), 40% schur_params (depth 1-8), 10% rotations, 10% convex combos (2-3)";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub order: usize,
    /// Number of radii in the closed grid `{0, ..., R}`.
    pub radii: usize,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            order: DEFAULT_ORDER,
            radii: 20,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationDescriptor {
    pub families: String,
    pub samples: usize,
    pub seed: u64,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub sample: usize,
    pub seed: u64,
    pub family: &'static str,
    pub r: f64,
    pub lhs_lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tightest {
    pub sample: usize,
    pub family: &'static str,
    pub r: f64,
    pub lhs_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub population: PopulationDescriptor,
    pub radius_grid: Vec<f64>,
    pub lambda: f64,
    /// Largest certified upper bound of the left-hand side.
    pub max_lhs: f64,
    /// `1 - max_lhs`.
    pub slack_min: f64,
    pub tightest: Option<Tightest>,
    /// Upper bound above `1 + VIOLATION_TOL` while the lower bound is not.
    pub uncertified_exceedances: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImprovedKind {
    /// `Bohr + (16/9) phi0 <= 1`.
    Phi0With169,
    /// `Bohr + Lambda(R) phi0 <= 1` for `r <= R`.
    Phi0WithLambdaR,
    /// `Bohr + (4/3) g(|a_0|) phi0 <= 1` with the worked-example weight.
    WeightedG,
    /// `Bohr + Psi(|a_0|, r) <= 1`.
    PsiWith1,
}

/// An inequality `LHS(f, r) <= 1` with its constant fixed.
#[derive(Debug, Clone)]
pub enum Inequality {
    Classic,
    Improved {
        kind: ImprovedKind,
        lambda: f64,
        weight: Option<WeightFunction>,
    },
}

impl Inequality {
    /// Fixes the constant for `kind`; `Phi0WithLambdaR` computes `Lambda(R)`.
    pub fn improved(kind: ImprovedKind, big_r: Radius) -> Result<Self> {
        let (lambda, weight) = match kind {
            ImprovedKind::Phi0With169 => (16.0 / 9.0, None),
            ImprovedKind::Phi0WithLambdaR => (lambda_phi0(big_r)?.lambda, None),
            ImprovedKind::WeightedG => (4.0 / 3.0, Some(WeightFunction::worked_example())),
            ImprovedKind::PsiWith1 => (1.0, None),
        };
        Ok(Inequality::Improved {
            kind,
            lambda,
            weight,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Inequality::Classic => "classic",
            Inequality::Improved { kind, .. } => match kind {
                ImprovedKind::Phi0With169 => "improved-16-9",
                ImprovedKind::Phi0WithLambdaR => "improved-lambda",
                ImprovedKind::WeightedG => "weighted",
                ImprovedKind::PsiWith1 => "psi",
            },
        }
    }

    pub fn lambda(&self) -> f64 {
        match self {
            Inequality::Classic => 0.0,
            Inequality::Improved { lambda, .. } => *lambda,
        }
    }

    /// Certified enclosure of the left-hand side.
    pub fn lhs(&self, f: &SchurFunction, r: Radius) -> Result<Enclosure> {
        let bohr = bohr_sum(f, r);
        let extra = match self {
            Inequality::Classic => return Ok(bohr),
            Inequality::Improved {
                kind,
                lambda,
                weight,
            } => match kind {
                ImprovedKind::Phi0With169 | ImprovedKind::Phi0WithLambdaR => {
                    phi0(f, r)?.scale(*lambda)
                }
                ImprovedKind::WeightedG => {
                    let g = weight.as_ref().expect("weighted inequality carries g");
                    phi0(f, r)?.scale(lambda * g.checked(f.a0_mod())?)
                }
                ImprovedKind::PsiWith1 => {
                    let psi = psi_functional(f.a0_mod(), r);
                    Enclosure::outward(psi, psi).scale(*lambda)
                }
            },
        };
        Ok(bohr.add(&extra))
    }
}

struct SampleOutcome {
    family: &'static str,
    seed: u64,
    max_hi: f64,
    max_r: f64,
    uncertified: usize,
    violations: Vec<(f64, f64)>,
}

fn check_sample(
    ineq: &Inequality,
    f: &SchurFunction,
    seed: u64,
    radii: &[Radius],
) -> SampleOutcome {
    let mut out = SampleOutcome {
        family: f.provenance().family(),
        seed,
        max_hi: f64::NEG_INFINITY,
        max_r: 0.0,
        uncertified: 0,
        violations: Vec::new(),
    };
    for &r in radii {
        // an evaluation error means the input left the Schur class: treat the
        // left-hand side as unbounded but uncertified
        let e = ineq
            .lhs(f, r)
            .unwrap_or(Enclosure::new(f64::NEG_INFINITY, f64::INFINITY));
        if e.hi > out.max_hi {
            out.max_hi = e.hi;
            out.max_r = r.get();
        }
        if e.lo > 1.0 + VIOLATION_TOL {
            out.violations.push((r.get(), e.lo));
        } else if e.hi > 1.0 + VIOLATION_TOL {
            out.uncertified += 1;
        }
    }
    out
}

fn aggregate(
    ineq: &Inequality,
    population: PopulationDescriptor,
    radii: &[Radius],
    outcomes: Vec<SampleOutcome>,
) -> VerificationReport {
    let mut max_lhs = f64::NEG_INFINITY;
    let mut tightest = None;
    let mut uncertified = 0;
    let mut violations = Vec::new();
    for (sample, o) in outcomes.into_iter().enumerate() {
        if o.max_hi > max_lhs {
            max_lhs = o.max_hi;
            tightest = Some(Tightest {
                sample,
                family: o.family,
                r: o.max_r,
                lhs_upper: o.max_hi,
            });
        }
        uncertified += o.uncertified;
        violations.extend(o.violations.into_iter().map(|(r, lhs_lower)| Violation {
            sample,
            seed: o.seed,
            family: o.family,
            r,
            lhs_lower,
        }));
    }
    VerificationReport {
        suite: ineq.name().to_string(),
        population,
        radius_grid: radii.iter().map(|r| r.get()).collect(),
        lambda: ineq.lambda(),
        max_lhs,
        slack_min: 1.0 - max_lhs,
        tightest,
        uncertified_exceedances: uncertified,
        violations,
    }
}

fn population(cfg: &VerifyConfig) -> PopulationDescriptor {
    PopulationDescriptor {
        families: POPULATION_MIX.to_string(),
        samples: cfg.samples,
        seed: cfg.seed,
        order: cfg.order,
    }
}

/// Checks `ineq` on `cfg.samples` random Schur functions and the closed radius
/// grid `{0, ..., R}`. Sample `i` is `random_schur(sample_seed(seed, i))`.
pub fn verify_population(
    ineq: &Inequality,
    big_r: Radius,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let radii = Radius::grid(big_r, cfg.radii);
    let outcomes = cfg.exec.map_range(cfg.samples, |i| {
        let seed = sample_seed(cfg.seed, i);
        let f = random_schur(seed, cfg.order);
        check_sample(ineq, &f, seed, &radii)
    });
    aggregate(ineq, population(cfg), &radii, outcomes)
}

/// Same as [`verify_population`] for an explicit list of functions.
pub fn verify_functions(
    ineq: &Inequality,
    functions: &[SchurFunction],
    big_r: Radius,
    radii: usize,
) -> VerificationReport {
    let grid = Radius::grid(big_r, radii);
    let outcomes = functions
        .iter()
        .map(|f| check_sample(ineq, f, 0, &grid))
        .collect();
    let descriptor = PopulationDescriptor {
        families: "explicit".to_string(),
        samples: functions.len(),
        seed: 0,
        order: functions.first().map_or(0, |f| f.order()),
    };
    aggregate(ineq, descriptor, &grid, outcomes)
}

/// Bohr's inequality `sum |a_n| r^n <= 1` for `r <= R <= 1/3`.
pub fn verify_bohr_classic(big_r: Radius, cfg: &VerifyConfig) -> VerificationReport {
    verify_population(&Inequality::Classic, big_r, cfg)
}

pub fn verify_improved(
    kind: ImprovedKind,
    big_r: Radius,
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    Ok(verify_population(
        &Inequality::improved(kind, big_r)?,
        big_r,
        cfg,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub r: f64,
    pub a: f64,
    pub bohr_sum: f64,
}

/// For `1/3 < r < 1`, a Möbius map `phi_a` whose Bohr sum at `r` exceeds 1.
/// Any `a > (1/r - 1)/2` works; the returned `a` maximizes the excess.
pub fn witness_beyond_third(r: f64) -> Result<Witness> {
    if !(r > 1.0 / 3.0 && r < 1.0) {
        return domain(format!("witness radius {r} must lie in (1/3, 1)"));
    }
    let threshold = (1.0 / r - 1.0) / 2.0;
    let m = golden_section(|a| -mobius_bohr_sum(a, r), threshold, 1.0, GOLDEN_WIDTH);
    let a = if m.x > threshold && m.x < 1.0 {
        m.x
    } else {
        0.5 * (threshold + 1.0)
    };
    Ok(Witness {
        r,
        a,
        bohr_sum: mobius_bohr_sum(a, r),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    Phi0,
    WeightedG,
    Psi,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub kind: ProbeKind,
    pub big_r: f64,
    pub min_ratio: f64,
    pub at_a: f64,
    pub at_r: f64,
    pub claimed: f64,
    /// `(a, ratio)` at `r = R` for `a = 1 - 10^-k`, `k = 1..=6`.
    pub approach: Vec<(f64, f64)>,
    /// `min_ratio <= claimed (1 + 1e-6)`: no larger constant survives.
    pub passed: bool,
}

fn probe_ratio(kind: ProbeKind, g: &WeightFunction, a: f64, r: Radius) -> f64 {
    match kind {
        ProbeKind::Phi0 => m_ratio(a, r).unwrap(),
        ProbeKind::WeightedG => m_ratio(a, r).unwrap() / g.eval(a),
        ProbeKind::Psi => mobius_ratio(&PsiFunctional, a, r),
    }
}

/// Smallest `Upsilon/phi` over Möbius maps `phi_a` with `a < 1` and
/// `0 < r <= R`. Each value is attained by an actual function, so a constant
/// larger than `min_ratio` fails for that `phi_a`.
///
/// The `a` axis is uniform with `density` points in `[0, 1)`, plus the
/// geometric refinement `1 - 10^(-k/4)`, `k = 4..=36`; the best node is then
/// refined by golden section in `a`.
pub fn sharpness_probe(
    kind: ProbeKind,
    big_r: Radius,
    density: usize,
    exec: Exec,
) -> Result<ProbeResult> {
    if big_r.get() == 0.0 || density < 2 {
        return domain("sharpness probe needs R > 0 and density >= 2");
    }
    let g = WeightFunction::worked_example();
    let claimed = match kind {
        ProbeKind::Phi0 => lambda_phi0(big_r)?.lambda,
        ProbeKind::WeightedG => lambda_weighted(&g, big_r)?.lambda,
        ProbeKind::Psi => 1.0,
    };
    let mut a_axis: Vec<f64> = (0..density).map(|i| i as f64 / density as f64).collect();
    a_axis.extend((4..=36).map(|k| 1.0 - 10f64.powf(-(k as f64) / 4.0)));
    a_axis.sort_by(f64::total_cmp);
    a_axis.dedup();

    let rows = exec.map_range(density, |j| {
        let r = Radius::new(big_r.get() * (j + 1) as f64 / density as f64).unwrap_or(big_r);
        let mut best = (f64::INFINITY, 0usize);
        for (i, &a) in a_axis.iter().enumerate() {
            let v = probe_ratio(kind, &g, a, r);
            if v < best.0 {
                best = (v, i);
            }
        }
        (best.0, best.1, r)
    });
    let &(mut min_ratio, i, at_r) = rows
        .iter()
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("density >= 2");
    let mut at_a = a_axis[i];
    let lo = a_axis[i.saturating_sub(1)];
    let hi = a_axis[(i + 1).min(a_axis.len() - 1)];
    let refined = golden_section(|a| probe_ratio(kind, &g, a, at_r), lo, hi, GOLDEN_WIDTH);
    if refined.value < min_ratio && refined.x < 1.0 {
        (min_ratio, at_a) = (refined.value, refined.x);
    }
    let approach = (1..=6)
        .map(|k| {
            let a = 1.0 - 10f64.powi(-k);
            (a, probe_ratio(kind, &g, a, big_r))
        })
        .collect();
    Ok(ProbeResult {
        kind,
        big_r: big_r.get(),
        min_ratio,
        at_a,
        at_r: at_r.get(),
        claimed,
        approach,
        passed: min_ratio <= claimed * (1.0 + 1e-6),
    })
}

/// Tolerance of the pointwise comparison `(16/9) phi0 <= Psi`.
pub const DOMINANCE_TOL: f64 = 1e-12;
/// Tolerance of the scalar bound `(1 - 2r)(1 + r^2 + r^4)/r^2 >= 91/27`.
pub const SCALAR_BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub grid: usize,
    /// `max (16/9) phi0(phi_a, r) - Psi(a, r)` over the grid.
    pub max_excess: f64,
    pub worst: (f64, f64),
    /// `min_r (1 - 2r)(1 + r^2 + r^4)/r^2 - 91/27` over `(0, 1/3]`.
    pub scalar_min_margin: f64,
    /// `J(r, r) / phi0(phi_r, r)` at `r = 1/3`.
    pub ratio_at_third: f64,
    pub violations: Vec<(f64, f64, f64)>,
    pub passed: bool,
}

/// `(1 - 2r)(1 + r^2 + r^4) / r^2`.
pub fn scalar_dominance_bound(r: f64) -> f64 {
    let r2 = r * r;
    (1.0 - 2.0 * r) * (1.0 + r2 + r2 * r2) / r2
}

/// `(16/9) phi0(phi_a, r) <= Psi(a, r)` on a `density x density` grid of
/// `[0,1] x [0,1/3]`, and the scalar bound on `density` radii in `(0, 1/3]`.
pub fn dominance_check(density: usize, exec: Exec) -> DominanceReport {
    let n = density.max(2);
    let rows = exec.map_range(n, |j| {
        let r = Radius::new((j as f64 / (n - 1) as f64 / 3.0).min(1.0 / 3.0)).unwrap();
        let r = if j + 1 == n { Radius::ONE_THIRD } else { r };
        let mut worst = (f64::NEG_INFINITY, 0.0);
        let mut bad = Vec::new();
        for i in 0..n {
            let a = i as f64 / (n - 1) as f64;
            let excess = 16.0 / 9.0 * phi0_mobius(a, r) - psi_functional(a, r);
            if excess > worst.0 {
                worst = (excess, a);
            }
            if excess > DOMINANCE_TOL {
                bad.push((a, r.get(), excess));
            }
        }
        (worst, r.get(), bad)
    });
    let mut max_excess = f64::NEG_INFINITY;
    let mut worst = (0.0, 0.0);
    let mut violations = Vec::new();
    for ((excess, a), r, bad) in rows {
        if excess > max_excess {
            max_excess = excess;
            worst = (a, r);
        }
        violations.extend(bad);
    }
    let third = 91.0 / 27.0;
    let scalar_min_margin = (1..=n)
        .map(|k| {
            let r = if k == n {
                1.0 / 3.0
            } else {
                k as f64 / n as f64 / 3.0
            };
            scalar_dominance_bound(r) - third
        })
        .fold(f64::INFINITY, f64::min);
    let r = Radius::ONE_THIRD;
    let ratio_at_third = j_factor(r.get(), r) / phi0_mobius(r.get(), r);
    DominanceReport {
        grid: n,
        max_excess,
        worst,
        scalar_min_margin,
        ratio_at_third,
        passed: violations.is_empty() && scalar_min_margin >= -SCALAR_BOUND_TOL,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionIReport {
    pub population: PopulationDescriptor,
    pub radius_grid: Vec<f64>,
    /// `max phi0(f, r).hi - phi0(phi_{|a_0|}, r)`.
    pub max_excess: f64,
    /// Pairs `(f, r)` with `r > 0` where the inequality is strict by more than `1e-12`.
    pub strict: usize,
    pub violations: Vec<Violation>,
}

/// Random spot check of `phi0(f, r) <= phi0(phi_{|a_0|}, r)`.
pub fn condition_i_spotcheck(big_r: Radius, cfg: &VerifyConfig) -> ConditionIReport {
    let radii = Radius::grid(big_r, cfg.radii);
    let rows = cfg.exec.map_range(cfg.samples, |i| {
        let seed = sample_seed(cfg.seed, i);
        let f = random_schur(seed, cfg.order);
        let mut max_excess = f64::NEG_INFINITY;
        let mut strict = 0;
        let mut bad = Vec::new();
        for &r in &radii {
            let hi = phi0(&f, r).map_or(f64::INFINITY, |e| e.hi);
            let lo = phi0(&f, r).map_or(f64::INFINITY, |e| e.lo);
            let bound = phi0_mobius(f.a0_mod(), r);
            max_excess = max_excess.max(hi - bound);
            if r.get() > 0.0 && hi < bound - 1e-12 {
                strict += 1;
            }
            if lo > bound + VIOLATION_TOL {
                bad.push(Violation {
                    sample: i,
                    seed,
                    family: f.provenance().family(),
                    r: r.get(),
                    lhs_lower: lo,
                });
            }
        }
        (max_excess, strict, bad)
    });
    let mut report = ConditionIReport {
        population: population(cfg),
        radius_grid: radii.iter().map(|r| r.get()).collect(),
        max_excess: f64::NEG_INFINITY,
        strict: 0,
        violations: Vec::new(),
    };
    for (excess, strict, bad) in rows {
        report.max_excess = report.max_excess.max(excess);
        report.strict += strict;
        report.violations.extend(bad);
    }
    report
}
