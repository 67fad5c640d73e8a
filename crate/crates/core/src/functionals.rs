//! Bohr-type functionals, evaluated from jets (with certified truncation
//! enclosures) and in closed form on the Möbius family.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{domain, BohrError, Result};
use crate::series::SchurFunction;

/// Outward slop applied to every enclosure endpoint, in units of `f64::EPSILON`
/// relative to the endpoint.
pub const ENCLOSURE_SLOP_ULPS: f64 = 4.0;

/// A radius in `[0, 1/3]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Radius(f64);

impl Radius {
    pub const ZERO: Radius = Radius(0.0);
    pub const ONE_THIRD: Radius = Radius(1.0 / 3.0);

    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=Self::ONE_THIRD.0).contains(&r) {
            return domain(format!("radius {r} outside [0, 1/3]"));
        }
        Ok(Radius(r))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_one_third(self) -> bool {
        self.0 == Self::ONE_THIRD.0
    }

    /// `count` equally spaced radii from 0 to `max`, both endpoints included.
    pub fn grid(max: Radius, count: usize) -> Vec<Radius> {
        match count {
            0 => Vec::new(),
            1 => vec![max],
            _ => (0..count)
                .map(|i| {
                    if i + 1 == count {
                        max
                    } else {
                        Radius(max.0 * i as f64 / (count - 1) as f64)
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Interval `[lo, hi]` containing an exact value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

fn slop(x: f64) -> f64 {
    ENCLOSURE_SLOP_ULPS * f64::EPSILON * x.abs()
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty enclosure [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    /// `[lo, hi]` widened outward by the fixed slop.
    pub fn outward(lo: f64, hi: f64) -> Self {
        Self::new(lo - slop(lo), hi + slop(hi))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Self::outward(self.lo + other.lo, self.hi + other.hi)
    }

    /// `k * self` for `k >= 0`.
    pub fn scale(&self, k: f64) -> Enclosure {
        debug_assert!(k >= 0.0);
        Self::outward(k * self.lo, k * self.hi)
    }

    /// `1 - self`.
    pub fn complement(&self) -> Enclosure {
        Self::outward(1.0 - self.hi, 1.0 - self.lo)
    }
}

/// Upper bound on `sum_{n>N} |c_n| r^n` from `|c_n| <= 1 - |c_0|^2`.
pub fn bohr_truncation_tail(a0_mod: f64, r: Radius, order: usize) -> f64 {
    let r = r.get();
    (1.0 - a0_mod * a0_mod) * r.powi(order as i32 + 1) / (1.0 - r)
}

/// Upper bound on `sum_{n>N} n |c_n|^2 r^(2n)`.
pub fn area_truncation_tail(a0_mod: f64, r: Radius, order: usize) -> f64 {
    let x = r.get() * r.get();
    let n = order as f64;
    let k = 1.0 - a0_mod * a0_mod;
    k * k * x.powi(order as i32 + 1) * ((n + 1.0) - n * x) / ((1.0 - x) * (1.0 - x))
}

/// `sum_{n>=1} |c_n| r^n`.
pub fn bohr_tail_sum(f: &SchurFunction, r: Radius) -> Enclosure {
    let rv = r.get();
    let mut pow = 1.0;
    let mut sum = 0.0;
    for c in &f.coeffs()[1..] {
        pow *= rv;
        sum += c.norm() * pow;
    }
    let tail = bohr_truncation_tail(f.a0_mod(), r, f.order());
    Enclosure::outward(sum, sum + tail)
}

/// Bohr sum `sum_{n>=0} |c_n| r^n`.
pub fn bohr_sum(f: &SchurFunction, r: Radius) -> Enclosure {
    let tail = bohr_tail_sum(f, r);
    Enclosure::outward(f.a0_mod() + tail.lo, f.a0_mod() + tail.hi)
}

/// Slack `1 - sum |c_n| r^n`.
pub fn upsilon(f: &SchurFunction, r: Radius) -> Enclosure {
    bohr_sum(f, r).complement()
}

/// `S_r / pi = sum n |c_n|^2 r^(2n)`.
pub fn area_ratio(f: &SchurFunction, r: Radius) -> Enclosure {
    let x = r.get() * r.get();
    let mut pow = 1.0;
    let mut sum = 0.0;
    for (n, c) in f.coeffs().iter().enumerate().skip(1) {
        pow *= x;
        sum += n as f64 * c.norm_sqr() * pow;
    }
    let tail = area_truncation_tail(f.a0_mod(), r, f.order());
    Enclosure::outward(sum, sum + tail)
}

/// `S_r / (pi - S_r)`.
pub fn phi0(f: &SchurFunction, r: Radius) -> Result<Enclosure> {
    let s = area_ratio(f, r);
    if !(s.hi < 1.0) {
        return Err(BohrError::NotInSchurClass(s.hi));
    }
    Ok(Enclosure::outward(s.lo / (1.0 - s.lo), s.hi / (1.0 - s.hi)))
}

/// Bohr sum of the Möbius map `phi_a` in closed form; valid for any `0 <= r < 1`.
pub fn mobius_bohr_sum(a: f64, r: f64) -> f64 {
    a + r * (1.0 - a * a) / (1.0 - a * r)
}

/// `1 - r(1 + 2a)`, written as `(1 - 3r) + 2r(1 - a)` so that it stays
/// accurate when both terms are small (`a -> 1`, `r -> 1/3`).
pub(crate) fn one_minus_r_one_plus_2a(a: f64, r: f64) -> f64 {
    (-3.0f64).mul_add(r, 1.0) + 2.0 * r * (1.0 - a)
}

/// `Upsilon(phi_a, r) = 1 - a - r(1 - a^2)/(1 - ar)`, evaluated in the
/// factored form `(1 - a)(1 - r(1 + 2a))/(1 - ar)`.
pub fn upsilon_mobius(a: f64, r: Radius) -> f64 {
    let r = r.get();
    (1.0 - a) * one_minus_r_one_plus_2a(a, r) / (1.0 - a * r)
}

/// `phi0(phi_a, r) = r^2/(1 - r^2) * (1 - a^2)^2/(1 - a^4 r^2)`.
pub fn phi0_mobius(a: f64, r: Radius) -> f64 {
    let r = r.get();
    let a2 = a * a;
    let r2 = r * r;
    let k = (1.0 - a) * (1.0 + a);
    r2 / (1.0 - r2) * k * k / (1.0 - a2 * a2 * r2)
}

/// Which denominator the `|a_0| < r` branch of [`tail_bound`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailVariant {
    /// `r sqrt(1 - a0^2) / sqrt(1 - r)`; weaker, as printed in the literature.
    PaperSqrt1MinusR,
    /// `r sqrt(1 - a0^2) / sqrt(1 - r^2)`; what every downstream use needs.
    #[default]
    ConsistentSqrt1MinusR2,
}

/// Upper bound for `sum_{n>=1} |a_n| r^n` given only `|a_0|`.
pub fn tail_bound(a0: f64, r: Radius, variant: TailVariant) -> f64 {
    let rv = r.get();
    if a0 >= rv {
        rv * (1.0 - a0 * a0) / (1.0 - rv * a0)
    } else {
        let denom = match variant {
            TailVariant::PaperSqrt1MinusR => 1.0 - rv,
            TailVariant::ConsistentSqrt1MinusR2 => 1.0 - rv * rv,
        };
        rv * (1.0 - a0 * a0).sqrt() / denom.sqrt()
    }
}

/// `J(a, r) = 1 - a - r sqrt(1 - a^2) / sqrt(1 - r^2)`.
pub fn j_factor(a: f64, r: Radius) -> f64 {
    let r = r.get();
    1.0 - a - r * (1.0 - a * a).sqrt() / (1.0 - r * r).sqrt()
}

/// `Psi(a0, r)`: the Möbius slack for `a0 >= r`, `J(a0, r)` below. The point
/// `a0 = r` belongs to the upper branch (both give `1 - 2r` there).
pub fn psi_functional(a0: f64, r: Radius) -> f64 {
    if a0 >= r.get() {
        upsilon_mobius(a0, r)
    } else {
        j_factor(a0, r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Unknown,
}

/// Positive weight `g` on `[0, 1]`, applied to `|f(0)|`.
#[derive(Clone)]
pub struct WeightFunction {
    name: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    claim: Monotonicity,
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFunction")
            .field("name", &self.name)
            .field("claim", &self.claim)
            .finish()
    }
}

/// Grid used to validate positivity and claimed monotonicity.
pub const WEIGHT_CHECK_POINTS: usize = 10_000;

impl WeightFunction {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        claim: Monotonicity,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            claim,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(
            format!("constant {c}"),
            move |_| c,
            Monotonicity::Increasing,
        )
    }

    /// `g(a) = (9 - a^2) / ((2 + a^2)(3 - a)) = (3 + a)/(2 + a^2)`, with
    /// `g(0) = 3/2`, `g(1) = 4/3 = min g`. Its weighted sharp constant at
    /// `R = 1/3` is `4/3`.
    pub fn worked_example() -> Self {
        Self::new(
            "worked example (9 - a^2)/((2 + a^2)(3 - a))",
            |a| (9.0 - a * a) / ((2.0 + a * a) * (3.0 - a)),
            Monotonicity::Unknown,
        )
    }

    /// `(9 + a^4) / ((2 + a^2)(3 - a))`: the same example with the numerator
    /// as it is usually printed. Kept for comparison; `g(1) = 5/3` here.
    pub fn worked_example_as_printed() -> Self {
        Self::new(
            "(9 + a^4)/((2 + a^2)(3 - a))",
            |a| (9.0 + a * a * a * a) / ((2.0 + a * a) * (3.0 - a)),
            Monotonicity::Unknown,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn claim(&self) -> Monotonicity {
        self.claim
    }

    pub fn eval(&self, a: f64) -> f64 {
        (self.eval)(a)
    }

    pub fn checked(&self, a: f64) -> Result<f64> {
        let value = self.eval(a);
        if !(value > 0.0) {
            return Err(BohrError::NonPositiveWeight { a, value });
        }
        Ok(value)
    }

    /// Checks positivity on a 10^4-point grid of `[0, 1]` and, when claimed,
    /// that `g` is nondecreasing there.
    pub fn validate(&self) -> Result<()> {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..WEIGHT_CHECK_POINTS {
            let a = i as f64 / (WEIGHT_CHECK_POINTS - 1) as f64;
            let v = self.checked(a)?;
            if self.claim == Monotonicity::Increasing && v < prev {
                return domain(format!(
                    "weight '{}' claimed increasing but drops at a = {a}",
                    self.name
                ));
            }
            prev = v;
        }
        Ok(())
    }
}

/// `g(a) * phi0(phi_a, r)`.
pub fn weighted_phi0_mobius(g: &WeightFunction, a: f64, r: Radius) -> f64 {
    g.eval(a) * phi0_mobius(a, r)
}
