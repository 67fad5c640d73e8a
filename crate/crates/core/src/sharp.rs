//! Sharp constants `Lambda(R)` for improved Bohr inequalities of the form
//! `sum |a_n| r^n + Lambda * phi(f, r) <= 1`, reduced to the Möbius family.
//!
//! For `phi0 = S_r/(pi - S_r)` the constant is `inf_a M(a, R)` with
//! `M = Upsilon(phi_a, R) / phi0(phi_a, R)`; it is computed by a coarse scan
//! plus golden-section refinement. The critical polynomial `p_r` gives an
//! independent route to the minimizer.

use serde::Serialize;

use crate::error::{BohrError, Result};
use crate::functionals::{
    j_factor, mobius_bohr_sum, one_minus_r_one_plus_2a, phi0_mobius, psi_functional,
    upsilon_mobius, Radius, WeightFunction,
};
use crate::minimize::{golden_section, scan_then_golden, Minimum};
use crate::par::Exec;
use crate::roots::Polynomial;

/// Coarse scan size for the closed-form minimization over `a`.
pub const SCAN_POINTS: usize = 4096;
/// Final golden-section bracket width.
pub const GOLDEN_WIDTH: f64 = 1e-12;
/// Accuracy claimed for closed-form sharp constants.
pub const LAMBDA_TOL: f64 = 1e-9;
/// Accuracy claimed for the generic Möbius-grid infimum.
pub const GENERIC_TOL: f64 = 1e-6;
/// Points per axis of the generic Möbius grid.
pub const GRID_POINTS: usize = 512;
/// Sign-scan subintervals used to isolate roots of `p_r` in `(0, 1)`.
pub const ROOT_SCAN_SUBINTERVALS: usize = 10_000;
/// Bisection width for roots of `p_r`.
pub const ROOT_WIDTH: f64 = 1e-13;
/// Largest relative increase tolerated by [`condition_check`].
pub const CONDITION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormMin,
    GridRefine,
    BoundaryLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpResult {
    pub lambda: f64,
    pub argmin_a: f64,
    pub argmin_r: f64,
    pub method: Method,
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

fn nonzero(r: Radius) -> Result<()> {
    if r.get() == 0.0 {
        Err(BohrError::UndefinedAtZeroRadius)
    } else {
        Ok(())
    }
}

/// `M(a, r) = Upsilon(phi_a, r) / phi0(phi_a, r)`.
///
/// At `r = 1/3` the common factor `1 - a` is cancelled,
/// `M(a, 1/3) = (16/9)(9 - a^4)/((1 + a)^2 (3 - a))`, which is finite at
/// `a = 1`. For `r < 1/3` the ratio blows up at `a = 1` and `+inf` is returned.
pub fn m_ratio(a: f64, r: Radius) -> Result<f64> {
    nonzero(r)?;
    if r.is_one_third() {
        let a2 = a * a;
        return Ok(16.0 / 9.0 * (9.0 - a2 * a2) / ((1.0 + a) * (1.0 + a) * (3.0 - a)));
    }
    if a >= 1.0 {
        return Ok(f64::INFINITY);
    }
    let r = r.get();
    let r2 = r * r;
    Ok(
        (1.0 - r2) / r2 * (1.0 - a.powi(4) * r2) / ((1.0 - a) * (1.0 + a) * (1.0 + a))
            * one_minus_r_one_plus_2a(a, r)
            / (1.0 - a * r),
    )
}

fn minimize_in_a<F: Fn(f64) -> f64>(objective: F, r: Radius) -> SharpResult {
    let Minimum { x, value } = scan_then_golden(objective, 0.0, 1.0, SCAN_POINTS, GOLDEN_WIDTH);
    SharpResult {
        lambda: value,
        argmin_a: x,
        argmin_r: r.get(),
        method: if x >= 1.0 {
            Method::BoundaryLimit
        } else {
            Method::ClosedFormMin
        },
        tol: LAMBDA_TOL,
    }
}

/// Half-width of the window around the golden-section minimizer in which
/// [`lambda_phi0`] looks for a sign change of `p_r`.
const POLISH_WINDOW: f64 = 1e-6;

/// Sharp constant for `phi0`: `inf_{a in [0,1]} M(a, R)`.
///
/// Golden section alone pins the minimizer only to about `1e-8` (M is flat
/// there), so an interior minimizer is polished by bisecting `p_r` inside a
/// `1e-6` window, provided `M` does not get worse.
pub fn lambda_phi0(big_r: Radius) -> Result<SharpResult> {
    nonzero(big_r)?;
    let mut best = minimize_in_a(|a| m_ratio(a, big_r).unwrap(), big_r);
    if best.method == Method::ClosedFormMin && best.argmin_a > 0.0 {
        let lo = (best.argmin_a - POLISH_WINDOW).max(0.0);
        let hi = (best.argmin_a + POLISH_WINDOW).min(1.0);
        let poly = critical_poly(big_r).to_polynomial();
        if let Some(&root) = poly.roots_in(lo, hi, 1, 1e-16).first() {
            let m = m_ratio(root, big_r)?;
            if m <= best.lambda * (1.0 + 4.0 * f64::EPSILON) {
                best.argmin_a = root;
                best.lambda = best.lambda.min(m);
            }
        }
    }
    Ok(best)
}

/// Sharp constant for `g(|a_0|) phi0`: `inf_a M(a, R) / g(a)`.
pub fn lambda_weighted(g: &WeightFunction, big_r: Radius) -> Result<SharpResult> {
    nonzero(big_r)?;
    g.validate()?;
    Ok(minimize_in_a(
        |a| m_ratio(a, big_r).unwrap() / g.eval(a),
        big_r,
    ))
}

/// A functional known through its values `phi(phi_a, r)` on Möbius maps.
pub trait MobiusFunctional: Sync {
    fn name(&self) -> String;

    fn value(&self, a: f64, r: Radius) -> f64;

    /// `r -> phi(phi_a, r)` is nondecreasing for every `a`; the infimum over
    /// `r <= R` is then taken at `r = R`.
    fn increasing_in_r(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Phi0Functional;

impl MobiusFunctional for Phi0Functional {
    fn name(&self) -> String {
        "phi0".into()
    }
    fn value(&self, a: f64, r: Radius) -> f64 {
        phi0_mobius(a, r)
    }
    fn increasing_in_r(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct WeightedPhi0Functional(pub WeightFunction);

impl MobiusFunctional for WeightedPhi0Functional {
    fn name(&self) -> String {
        format!("g * phi0, g = {}", self.0.name())
    }
    fn value(&self, a: f64, r: Radius) -> f64 {
        self.0.eval(a) * phi0_mobius(a, r)
    }
    fn increasing_in_r(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PsiFunctional;

impl MobiusFunctional for PsiFunctional {
    fn name(&self) -> String {
        "psi".into()
    }
    fn value(&self, a: f64, r: Radius) -> f64 {
        psi_functional(a, r)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct UpsilonFunctional;

impl MobiusFunctional for UpsilonFunctional {
    fn name(&self) -> String {
        "upsilon".into()
    }
    fn value(&self, a: f64, r: Radius) -> f64 {
        upsilon_mobius(a, r)
    }
}

/// Closure-backed functional.
pub struct FnFunctional<F> {
    pub name: String,
    pub f: F,
    pub increasing_in_r: bool,
}

impl<F: Fn(f64, f64) -> f64 + Sync> FnFunctional<F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        Self {
            name: name.into(),
            f,
            increasing_in_r: false,
        }
    }
}

impl<F: Fn(f64, f64) -> f64 + Sync> MobiusFunctional for FnFunctional<F> {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn value(&self, a: f64, r: Radius) -> f64 {
        (self.f)(a, r.get())
    }
    fn increasing_in_r(&self) -> bool {
        self.increasing_in_r
    }
}

/// Steps used to extrapolate `Upsilon/phi` into the `0/0` corner at `a = 1`.
const LIMIT_STEPS: (f64, f64) = (1e-4, 1e-5);

/// `Upsilon(phi_a, r) / phi(phi_a, r)` with `x/0 = +inf` and `0/0` replaced by
/// the Richardson-extrapolated limit along `a -> 1`.
pub fn mobius_ratio<P: MobiusFunctional + ?Sized>(phi: &P, a: f64, r: Radius) -> f64 {
    let u = upsilon_mobius(a, r);
    let p = phi.value(a, r);
    if p != 0.0 {
        return u / p;
    }
    if u != 0.0 {
        return f64::INFINITY;
    }
    let raw = |a: f64| {
        let p = phi.value(a, r);
        if p == 0.0 {
            f64::INFINITY
        } else {
            upsilon_mobius(a, r) / p
        }
    };
    let (h1, h2) = LIMIT_STEPS;
    let (v1, v2) = (raw(1.0 - h1), raw(1.0 - h2));
    let limit = (10.0 * v2 - v1) / 9.0;
    if limit.is_finite() {
        limit
    } else {
        f64::INFINITY
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// `inf` over `[0,1] x [0,R]` of `Upsilon(phi_a, r)/phi(phi_a, r)` on a
/// 512 x 512 grid, then coordinate-wise golden refinement around the best
/// node. Functionals increasing in `r` are only scanned at `r = R`.
///
/// Conditions (i) and (ii) for the reduction to Möbius maps are the caller's
/// responsibility; see [`condition_check`].
pub fn lambda_generic_mobius<P: MobiusFunctional + ?Sized>(
    phi: &P,
    big_r: Radius,
    exec: Exec,
) -> Result<SharpResult> {
    nonzero(big_r)?;
    let a_axis = axis(0.0, 1.0, GRID_POINTS);
    let r_axis: Vec<Radius> = if phi.increasing_in_r() {
        vec![big_r]
    } else {
        Radius::grid(big_r, GRID_POINTS)
    };
    let rows = exec.map_range(r_axis.len(), |j| {
        let r = r_axis[j];
        let mut best = (f64::INFINITY, 0usize);
        for (i, &a) in a_axis.iter().enumerate() {
            let v = mobius_ratio(phi, a, r);
            if v < best.0 {
                best = (v, i);
            }
        }
        best
    });
    let (mut lambda, mut i_best, mut j_best) = (f64::INFINITY, 0, 0);
    for (j, &(v, i)) in rows.iter().enumerate() {
        if v < lambda {
            (lambda, i_best, j_best) = (v, i, j);
        }
    }
    let mut a_star = a_axis[i_best];
    let mut r_star = r_axis[j_best];

    let a_lo = a_axis[i_best.saturating_sub(1)];
    let a_hi = a_axis[(i_best + 1).min(a_axis.len() - 1)];
    let r_lo = r_axis[j_best.saturating_sub(1)].get();
    let r_hi = r_axis[(j_best + 1).min(r_axis.len() - 1)].get();
    for _ in 0..3 {
        let m = golden_section(|a| mobius_ratio(phi, a, r_star), a_lo, a_hi, GOLDEN_WIDTH);
        if m.value < lambda {
            (lambda, a_star) = (m.value, m.x);
        }
        if r_axis.len() > 1 {
            let m = golden_section(
                |r| mobius_ratio(phi, a_star, Radius::new(r).unwrap()),
                r_lo,
                r_hi,
                GOLDEN_WIDTH,
            );
            if m.value < lambda {
                (lambda, r_star) = (m.value, Radius::new(m.x).unwrap());
            }
        }
    }
    Ok(SharpResult {
        lambda,
        argmin_a: a_star,
        argmin_r: r_star.get(),
        method: if a_star >= 1.0 {
            Method::BoundaryLimit
        } else {
            Method::GridRefine
        },
        tol: GENERIC_TOL,
    })
}

/// Critical polynomial `p_r` whose roots in `(0, 1)` are the critical points
/// of `a -> M(a, r)`. Coefficients highest degree first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Poly7 {
    pub coeffs: [f64; 8],
}

impl Poly7 {
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_descending(self.coeffs.to_vec())
    }
}

pub fn critical_poly(r: Radius) -> Poly7 {
    let r = r.get();
    let r2 = r * r;
    Poly7 {
        coeffs: [
            2.0 * r2 * r2,
            2.0 * (r - 2.0) * r2 * r,
            r2 * (-7.0 * r2 - 4.0 * r + 1.0),
            r2 * (-3.0 * r2 + 12.0 * r + 1.0),
            2.0 * r2 * (2.0 * r + 1.0),
            2.0 * r * (r - 4.0),
            -(r2 - 3.0),
            -r2 - 1.0,
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    /// The selected root `a*(r)`.
    pub a: f64,
    /// `|p_r(a*)|`.
    pub residual: f64,
    /// `M(a*, r)`.
    pub m_value: f64,
    /// Every root of `p_r` found in `(0, 1)`, ascending.
    pub roots: Vec<f64>,
}

/// `a*(r)`: the root of `p_r` in `(0, 1)` with the smallest `M(., r)`; ties
/// within `1e-12` go to the smaller root. Requires `0 < r < 1/3`.
pub fn astar(r: Radius) -> Result<CriticalPoint> {
    nonzero(r)?;
    let poly = critical_poly(r);
    let roots: Vec<f64> = poly
        .to_polynomial()
        .roots_in(0.0, 1.0, ROOT_SCAN_SUBINTERVALS, ROOT_WIDTH)
        .into_iter()
        .filter(|&x| x > 0.0 && x < 1.0)
        .collect();
    if r.is_one_third() || roots.is_empty() {
        return Err(BohrError::BoundaryMinimum { r: r.get(), roots });
    }
    let mut best: Option<(f64, f64)> = None;
    for &x in &roots {
        let m = m_ratio(x, r)?;
        match best {
            Some((_, bm)) if m >= bm - 1e-12 => {}
            _ => best = Some((x, m)),
        }
    }
    let (a, m_value) = best.expect("roots is nonempty");
    Ok(CriticalPoint {
        a,
        residual: poly.eval(a).abs(),
        m_value,
        roots,
    })
}

/// Envelopes `(2/9)(1 - R^2)/R^2 <= Lambda(R) <= M(1/3, R)`.
pub fn lambda_bounds(big_r: Radius) -> Result<BoundPair> {
    nonzero(big_r)?;
    let r = big_r.get();
    let k = (1.0 - r * r) / (r * r);
    let lower = 2.0 / 9.0 * k;
    let upper = (81.0 - r * r) * (3.0 - 5.0 * r) / (3.0 - r) * k / 96.0;
    assert!(lower <= upper, "envelopes crossed at R = {r}");
    Ok(BoundPair { lower, upper })
}

fn lambda_term(a: f64, r: Radius, lam: f64) -> f64 {
    lam * phi0_mobius(a, r)
}

/// `C1(a, r, lam) = a + r(1 - a^2)/(1 - ar) + lam * phi0(phi_a, r)`.
pub fn envelope_c1(a: f64, r: Radius, lam: f64) -> f64 {
    mobius_bohr_sum(a, r.get()) + lambda_term(a, r, lam)
}

/// `C2(a, r, lam) = a + r sqrt((1 - a^2)/(1 - r^2)) + lam * phi0(phi_a, r)`.
pub fn envelope_c2(a: f64, r: Radius, lam: f64) -> f64 {
    let rv = r.get();
    a + rv * ((1.0 - a * a) / (1.0 - rv * rv)).sqrt() + lambda_term(a, r, lam)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub functional: String,
    pub big_r: f64,
    pub grid: usize,
    /// Largest relative step-to-step increase of `a -> J(a,r)/phi(phi_a,r)` on `[0, r]`.
    pub max_increase: f64,
    /// `(a, r)` where the largest increase starts.
    pub worst: Option<(f64, f64)>,
    pub monotone_decreasing: bool,
    /// Condition (i) compares every `f` with `phi_{|a_0|}`; Möbius data alone
    /// cannot settle it.
    pub condition_i: &'static str,
}

/// Scans `a -> J(a, r) / phi(phi_a, r)` on `[0, r]` for 512 radii in `(0, R]`
/// and reports whether it is decreasing, the sufficient form of condition (ii).
pub fn condition_check<P: MobiusFunctional + ?Sized>(
    phi: &P,
    big_r: Radius,
    exec: Exec,
) -> ConditionReport {
    let n = GRID_POINTS;
    let rows = exec.map_range(n, |j| {
        let r = Radius::new(big_r.get() * (j + 1) as f64 / n as f64).unwrap();
        let q = |k: usize| {
            let a = r.get() * k as f64 / (n - 1) as f64;
            (a, j_factor(a, r) / phi.value(a, r))
        };
        let mut worst = (f64::NEG_INFINITY, None);
        let (mut a_prev, mut prev) = q(0);
        for k in 1..n {
            let (a, cur) = q(k);
            if prev.is_finite() && cur.is_finite() && prev != 0.0 {
                let inc = (cur - prev) / prev.abs();
                if inc > worst.0 {
                    worst = (inc, Some((a_prev, r.get())));
                }
            }
            (a_prev, prev) = (a, cur);
        }
        worst
    });
    let (max_increase, worst) = rows
        .into_iter()
        .fold((f64::NEG_INFINITY, None), |acc, row| {
            if row.0 > acc.0 {
                row
            } else {
                acc
            }
        });
    ConditionReport {
        functional: phi.name(),
        big_r: big_r.get(),
        grid: n,
        max_increase,
        worst,
        monotone_decreasing: big_r.get() == 0.0 || max_increase <= CONDITION_TOL,
        condition_i: "caller-asserted",
    }
}

/// Threshold above which an estimated `Lambda(1/3)` counts as positive.
pub const FEASIBILITY_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub functional: String,
    pub lambda_third: SharpResult,
    /// `(a, phi(phi_a, 1/3))` for `a = 1 - 10^-k`, `k = 2..=8`.
    pub approach_to_one: Vec<(f64, f64)>,
    pub vanishes_at_one: bool,
    pub feasible: bool,
}

/// Estimates `Lambda(1/3)` and checks the necessary condition
/// `phi(phi_a, 1/3) -> 0` as `a -> 1`.
pub fn feasibility_check<P: MobiusFunctional + ?Sized>(phi: &P, exec: Exec) -> FeasibilityReport {
    let third = Radius::ONE_THIRD;
    let lambda_third = lambda_generic_mobius(phi, third, exec).expect("1/3 is a nonzero radius");
    let approach_to_one: Vec<(f64, f64)> = (2..=8)
        .map(|k| {
            let a = 1.0 - 10f64.powi(-k);
            (a, phi.value(a, third))
        })
        .collect();
    let vanishes_at_one = approach_to_one.windows(2).all(|w| w[1].1 < w[0].1)
        && approach_to_one.last().unwrap().1.abs() < 1e-6;
    FeasibilityReport {
        functional: phi.name(),
        feasible: lambda_third.lambda > FEASIBILITY_THRESHOLD && vanishes_at_one,
        lambda_third,
        approach_to_one,
        vanishes_at_one,
    }
}
