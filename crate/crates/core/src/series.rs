//! Truncated power series ("jets") and constructors for Schur-class functions.
//!
//! A [`TruncatedSeries`] of order `N` holds the exact Taylor coefficients
//! `c_0..=c_N`; products and reciprocals are computed on the jet, so no
//! truncation error leaks into the stored coefficients.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, BohrError, Result};

pub type C64 = Complex64;

/// Order used throughout the library unless stated otherwise. At `r <= 1/3`
/// the tail factor `r^(N+1)/(1-r)` is below `1e-120`.
pub const DEFAULT_ORDER: usize = 256;

/// Smallest constant-term modulus accepted by [`TruncatedSeries::reciprocal`].
pub const RECIPROCAL_THRESHOLD: f64 = 1e-300;

/// Largest zero / Schur-parameter modulus drawn by [`random_schur`].
pub const GENERATOR_MODULUS_CAP: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<C64>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient vector (a jet always has `c_0`).
    pub fn new(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(C64::new(0.0, 0.0), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C64::new(1.0, 0.0), order)
    }

    pub fn constant(value: C64, order: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The jet of `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C64::new(1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> C64 {
        self.coeffs[n]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(BohrError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
            .collect();
        Ok(Self { coeffs })
    }

    /// `B` with `A * B = 1` on the jet.
    pub fn reciprocal(&self) -> Result<Self> {
        let a = &self.coeffs;
        let modulus = a[0].norm();
        if !(modulus > RECIPROCAL_THRESHOLD) {
            return Err(BohrError::DivisionByZeroConstantTerm { modulus });
        }
        let inv0 = a[0].inv();
        let mut b = Vec::with_capacity(a.len());
        b.push(inv0);
        for k in 1..a.len() {
            let s: C64 = (1..=k).map(|i| a[i] * b[k - i]).sum();
            b.push(-s * inv0);
        }
        Ok(Self { coeffs: b })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `z * self`, truncated (the top coefficient falls off).
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        Self { coeffs }
    }

    pub fn add_constant(&self, k: C64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval_polynomial(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// How a [`SchurFunction`] was built; evaluates the closed rational form
/// independently of the jet.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Mobius {
        a: f64,
    },
    Blaschke {
        #[serde(serialize_with = "ser_complex_vec")]
        zeros: Vec<C64>,
        rotation: f64,
    },
    SchurParams {
        #[serde(serialize_with = "ser_complex_vec")]
        params: Vec<C64>,
    },
    ConvexCombo {
        members: Vec<Provenance>,
        weights: Vec<f64>,
    },
    Constant {
        #[serde(serialize_with = "ser_complex")]
        value: C64,
    },
}

fn ser_complex<S: serde::Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_complex_vec<S: serde::Serializer>(v: &[C64], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter()
        .map(|z| [z.re, z.im])
        .collect::<Vec<_>>()
        .serialize(s)
}

impl Provenance {
    /// Pointwise value of the exact (untruncated) function at `z`.
    pub fn eval(&self, z: C64) -> C64 {
        let one = C64::new(1.0, 0.0);
        match self {
            Provenance::Mobius { a } => (z - a) / (one - a * z),
            Provenance::Blaschke { zeros, rotation } => zeros
                .iter()
                .fold(C64::from_polar(1.0, *rotation), |acc, alpha| {
                    acc * (z - alpha) / (one - alpha.conj() * z)
                }),
            Provenance::SchurParams { params } => {
                params.iter().rev().fold(C64::new(0.0, 0.0), |tail, g| {
                    let t = z * tail;
                    (g + t) / (one + g.conj() * t)
                })
            }
            Provenance::ConvexCombo { members, weights } => members
                .iter()
                .zip(weights)
                .map(|(m, w)| m.eval(z) * w)
                .sum(),
            Provenance::Constant { value } => *value,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Provenance::Mobius { .. } => "mobius",
            Provenance::Blaschke { .. } => "blaschke",
            Provenance::SchurParams { .. } => "schur_params",
            Provenance::ConvexCombo { .. } => "convex_combo",
            Provenance::Constant { .. } => "constant",
        }
    }
}

/// A member of the Schur class: jet plus the data it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurFunction {
    series: TruncatedSeries,
    a0_mod: f64,
    provenance: Provenance,
}

impl SchurFunction {
    fn from_parts(series: TruncatedSeries, provenance: Provenance) -> Self {
        let a0_mod = series.coeff(0).norm();
        Self {
            series,
            a0_mod,
            provenance,
        }
    }

    #[cfg(test)]
    pub(crate) fn unchecked_for_tests(series: TruncatedSeries) -> Self {
        Self::from_parts(
            series,
            Provenance::Constant {
                value: C64::new(0.0, 0.0),
            },
        )
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn coeffs(&self) -> &[C64] {
        self.series.coeffs()
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `|f(0)|`.
    pub fn a0_mod(&self) -> f64 {
        self.a0_mod
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Largest violation of `|c_n| <= 1 - |c_0|^2` (n >= 1) and `|c_n| <= 1`;
    /// non-positive when both bounds hold.
    pub fn coefficient_bound_excess(&self) -> f64 {
        let bound = 1.0 - self.a0_mod * self.a0_mod;
        let c = self.coeffs();
        let tail = c[1..]
            .iter()
            .map(|x| x.norm() - bound)
            .fold(f64::NEG_INFINITY, f64::max);
        tail.max(self.a0_mod - 1.0)
    }
}

/// The constant function `value`, `|value| <= 1`.
pub fn constant(value: C64, order: usize) -> Result<SchurFunction> {
    if !(value.norm() <= 1.0 + 4.0 * f64::EPSILON) {
        return domain(format!("constant {value} has modulus above 1"));
    }
    Ok(SchurFunction::from_parts(
        TruncatedSeries::constant(value, order),
        Provenance::Constant { value },
    ))
}

/// Disk automorphism `(z - a)/(1 - a z)` for real `a` in `[0, 1]`:
/// `c_0 = -a`, `c_n = (1 - a^2) a^(n-1)`.
pub fn mobius(a: f64, order: usize) -> Result<SchurFunction> {
    if !(0.0..=1.0).contains(&a) {
        return domain(format!("Mobius parameter a = {a} outside [0, 1]"));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(C64::new(-a, 0.0));
    let k = 1.0 - a * a;
    let mut pow = 1.0;
    for _ in 1..=order {
        coeffs.push(C64::new(k * pow, 0.0));
        pow *= a;
    }
    Ok(SchurFunction::from_parts(
        TruncatedSeries::new(coeffs),
        Provenance::Mobius { a },
    ))
}

/// Finite Blaschke product `e^{i rotation} prod (z - alpha)/(1 - conj(alpha) z)`.
pub fn blaschke(zeros: &[C64], rotation: f64, order: usize) -> Result<SchurFunction> {
    if let Some(bad) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
        return domain(format!("Blaschke zero {bad} is not inside the unit disk"));
    }
    let mut acc = TruncatedSeries::constant(C64::from_polar(1.0, rotation), order);
    for alpha in zeros {
        let numer = TruncatedSeries::identity(order).add_constant(-alpha);
        let denom = TruncatedSeries::one(order)
            .add(&TruncatedSeries::identity(order).scale(-alpha.conj()))?;
        acc = acc.mul(&numer)?.mul(&denom.reciprocal()?)?;
    }
    Ok(SchurFunction::from_parts(
        acc,
        Provenance::Blaschke {
            zeros: zeros.to_vec(),
            rotation,
        },
    ))
}

/// Function whose leading Schur parameters are `params`, via the inverse Schur
/// recursion `f_j = (g_j + z f_{j+1}) / (1 + conj(g_j) z f_{j+1})` from `f = 0`.
pub fn schur_from_parameters(params: &[C64], order: usize) -> Result<SchurFunction> {
    if let Some(bad) = params.iter().find(|g| !(g.norm() < 1.0)) {
        return domain(format!("Schur parameter {bad} is not inside the unit disk"));
    }
    let mut f = TruncatedSeries::zero(order);
    for g in params.iter().rev() {
        let t = f.shift();
        let numer = t.add_constant(*g);
        // constant term of the denominator is exactly 1
        let denom = t.scale(g.conj()).add_constant(C64::new(1.0, 0.0));
        f = numer.mul(&denom.reciprocal()?)?;
    }
    Ok(SchurFunction::from_parts(
        f,
        Provenance::SchurParams {
            params: params.to_vec(),
        },
    ))
}

/// Coefficient-wise convex combination.
pub fn convex_combination(members: &[SchurFunction], weights: &[f64]) -> Result<SchurFunction> {
    if members.is_empty() || members.len() != weights.len() {
        return domain("convex combination needs one weight per member");
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
        return domain(format!("negative weight {w}"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return domain(format!("weights sum to {total}, not 1"));
    }
    let order = members[0].order();
    let mut acc = TruncatedSeries::zero(order);
    for (m, w) in members.iter().zip(weights) {
        acc = acc.add(&m.series.scale(C64::new(*w, 0.0)))?;
    }
    Ok(SchurFunction::from_parts(
        acc,
        Provenance::ConvexCombo {
            members: members.iter().map(|m| m.provenance.clone()).collect(),
            weights: weights.to_vec(),
        },
    ))
}

fn draw_disk_point(rng: &mut ChaCha8Rng) -> C64 {
    let modulus = GENERATOR_MODULUS_CAP * rng.random::<f64>();
    C64::from_polar(modulus, TAU * rng.random::<f64>())
}

fn draw_blaschke(rng: &mut ChaCha8Rng, rotate: bool, order: usize) -> SchurFunction {
    let degree = rng.random_range(1..=6);
    let zeros: Vec<C64> = (0..degree).map(|_| draw_disk_point(rng)).collect();
    let rotation = if rotate {
        TAU * rng.random::<f64>()
    } else {
        0.0
    };
    blaschke(&zeros, rotation, order).expect("zeros drawn inside the disk")
}

fn draw_schur_params(rng: &mut ChaCha8Rng, rotate: bool, order: usize) -> SchurFunction {
    let depth = rng.random_range(1..=8);
    let mut params: Vec<C64> = (0..depth).map(|_| draw_disk_point(rng)).collect();
    if rotate {
        // e^{it} f has Schur parameters e^{it} g_j
        let u = C64::from_polar(1.0, TAU * rng.random::<f64>());
        params.iter_mut().for_each(|g| *g *= u);
    }
    schur_from_parameters(&params, order).expect("parameters drawn inside the disk")
}

fn draw_basic(rng: &mut ChaCha8Rng, rotate: bool, order: usize) -> SchurFunction {
    if rng.random_bool(0.5) {
        draw_blaschke(rng, rotate, order)
    } else {
        draw_schur_params(rng, rotate, order)
    }
}

/// Deterministic random Schur-class function.
///
/// Mix: 40% Blaschke products (degree 1..=6), 40% Schur-parameter functions
/// (depth 1..=8), 10% rotations of either, 10% convex combinations of 2 or 3
/// of those. Zeros and parameters have modulus below [`GENERATOR_MODULUS_CAP`].
pub fn random_schur(seed: u64, order: usize) -> SchurFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: f64 = rng.random();
    if u < 0.4 {
        draw_blaschke(&mut rng, false, order)
    } else if u < 0.8 {
        draw_schur_params(&mut rng, false, order)
    } else if u < 0.9 {
        draw_basic(&mut rng, true, order)
    } else {
        let k = rng.random_range(2..=3);
        let members: Vec<SchurFunction> = (0..k)
            .map(|_| {
                let rotate = rng.random_bool(0.5);
                draw_basic(&mut rng, rotate, order)
            })
            .collect();
        let raw: Vec<f64> = (0..k).map(|_| 0.05 + rng.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
        convex_combination(&members, &weights).expect("normalized weights")
    }
}

/// Seed of sample `index` in a population seeded by `seed`.
pub fn sample_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64 ^ 0xA076_1D64_78BD_642F))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn assert_coeffs(s: &TruncatedSeries, expected: &[f64], tol: f64) {
        assert_eq!(s.order() + 1, expected.len());
        for (n, (got, want)) in s.coeffs().iter().zip(expected).enumerate() {
            assert!(
                (got - c(*want)).norm() <= tol,
                "c_{n}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = TruncatedSeries::from_real(&[1.0, 1.0, 0.0]);
        let b = TruncatedSeries::from_real(&[1.0, -1.0, 0.0]);
        assert_coeffs(&a.mul(&b).unwrap(), &[1.0, 0.0, -1.0], 0.0);
    }

    #[test]
    fn mul_identity_and_telescoping() {
        let a = TruncatedSeries::from_real(&[0.3, -2.0, 5.0, 0.25]);
        assert_eq!(a.mul(&TruncatedSeries::one(3)).unwrap(), a);

        let geometric = TruncatedSeries::from_real(&[1.0; 5]);
        let one_minus_z = TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]);
        assert_coeffs(
            &geometric.mul(&one_minus_z).unwrap(),
            &[1.0, 0.0, 0.0, 0.0, 0.0],
            0.0,
        );
    }

    #[test]
    fn mul_rejects_order_mismatch() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert_eq!(
            a.mul(&b),
            Err(BohrError::OrderMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn reciprocal_examples() {
        let s = TruncatedSeries::from_real(&[1.0, -0.5, 0.0, 0.0]);
        assert_coeffs(&s.reciprocal().unwrap(), &[1.0, 0.5, 0.25, 0.125], 0.0);

        let one = TruncatedSeries::from_real(&[1.0, 0.0, 0.0]);
        assert_coeffs(&one.reciprocal().unwrap(), &[1.0, 0.0, 0.0], 0.0);

        let s = TruncatedSeries::from_real(&[2.0, 1.0]);
        assert_coeffs(&s.reciprocal().unwrap(), &[0.5, -0.25], 0.0);
    }

    #[test]
    fn reciprocal_rejects_vanishing_constant() {
        let s = TruncatedSeries::from_real(&[0.0, 1.0]);
        assert!(matches!(
            s.reciprocal(),
            Err(BohrError::DivisionByZeroConstantTerm { .. })
        ));
        let s = TruncatedSeries::from_real(&[1e-301, 1.0]);
        assert!(s.reciprocal().is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_coeffs(mobius(0.0, 3).unwrap().series(), &[0.0, 1.0, 0.0, 0.0], 0.0);
        assert_coeffs(
            mobius(1.0, 3).unwrap().series(),
            &[-1.0, 0.0, 0.0, 0.0],
            0.0,
        );
        assert_coeffs(
            mobius(0.5, 3).unwrap().series(),
            &[-0.5, 0.75, 0.375, 0.1875],
            1e-16,
        );
        assert!(mobius(1.5, 3).is_err());
        assert!(mobius(-0.1, 3).is_err());
    }

    #[test]
    fn mobius_tail_is_geometric() {
        for a in [0.0, 0.1, 0.5, 0.9, 0.99] {
            let f = mobius(a, 40).unwrap();
            let c = f.coeffs();
            for n in 1..40 {
                assert!(c[n].re >= 0.0 && c[n].im == 0.0);
                assert!((c[n + 1].re - a * c[n].re).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn blaschke_single_real_zero_is_mobius() {
        for a in [0.0, 0.2, 0.5, 0.77, 0.9] {
            let b = blaschke(&[c(a)], 0.0, 64).unwrap();
            let m = mobius(a, 64).unwrap();
            assert!(b.series().max_abs_diff(m.series()) <= 1e-14, "a = {a}");
        }
    }

    #[test]
    fn blaschke_empty_product_is_one() {
        let b = blaschke(&[], 0.0, 5).unwrap();
        assert_coeffs(b.series(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn blaschke_conjugate_pair_matches_long_division() {
        // (z^2 + 1/4) / (1 + z^2/4), divided by hand:
        // 1/4 + (1 - 1/16) z^2 - (15/64) z^4 + ...
        let zeros = [C64::new(0.0, 0.5), C64::new(0.0, -0.5)];
        let b = blaschke(&zeros, 0.0, 4).unwrap();
        assert_coeffs(b.series(), &[0.25, 0.0, 0.9375, 0.0, -0.234375], 1e-15);
    }

    #[test]
    fn blaschke_rejects_boundary_zero() {
        assert!(blaschke(&[c(1.0)], 0.0, 4).is_err());
        assert!(blaschke(&[C64::new(0.8, 0.7)], 0.0, 4).is_err());
    }

    #[test]
    fn schur_parameters_examples() {
        let g = C64::new(0.3, -0.2);
        let f = schur_from_parameters(&[g], 3).unwrap();
        assert_eq!(f.coeffs(), &[g, c(0.0), c(0.0), c(0.0)]);

        let f = schur_from_parameters(&[c(0.0)], 3).unwrap();
        assert!(f.coeffs().iter().all(|x| x.norm() == 0.0));

        // (0.3 + 0.4 z)/(1 + 0.12 z): c_0 = 0.3, c_n = (0.4 - 0.036)(-0.12)^(n-1)
        let f = schur_from_parameters(&[c(0.3), c(0.4)], 4).unwrap();
        let k = 0.4 - 0.3 * 0.12;
        let expected = [0.3, k, -0.12 * k, 0.0144 * k, -0.001728 * k];
        assert_coeffs(f.series(), &expected, 1e-15);

        assert!(schur_from_parameters(&[c(0.5), C64::new(0.0, 1.0)], 3).is_err());
    }

    #[test]
    fn convex_combination_examples() {
        let f = mobius(0.3, 8).unwrap();
        let same = convex_combination(std::slice::from_ref(&f), &[1.0]).unwrap();
        assert_eq!(same.series(), f.series());

        let p = constant(c(1.0), 8).unwrap();
        let m = constant(c(-1.0), 8).unwrap();
        let z = convex_combination(&[p, m], &[0.5, 0.5]).unwrap();
        assert!(z.coeffs().iter().all(|x| x.norm() == 0.0));

        let mix = convex_combination(
            &[mobius(0.5, 8).unwrap(), mobius(0.25, 8).unwrap()],
            &[0.5, 0.5],
        )
        .unwrap();
        assert_eq!(mix.coeffs()[0], c(-0.375));

        assert!(convex_combination(&[f.clone(), f.clone()], &[0.5, 0.6]).is_err());
        assert!(convex_combination(&[f.clone(), f], &[1.5, -0.5]).is_err());
    }

    #[test]
    fn random_schur_is_deterministic() {
        for seed in [0u64, 1, 42, u64::MAX] {
            let a = random_schur(seed, 64);
            let b = random_schur(seed, 64);
            assert_eq!(a, b);
        }
        assert_ne!(random_schur(1, 16), random_schur(2, 16));
    }

    #[test]
    fn random_population_satisfies_coefficient_bound() {
        let mut families = std::collections::BTreeMap::new();
        for i in 0..1000 {
            let f = random_schur(sample_seed(11, i), 64);
            assert!(
                f.coefficient_bound_excess() <= 1e-12,
                "sample {i}: excess {}",
                f.coefficient_bound_excess()
            );
            *families.entry(f.provenance().family()).or_insert(0) += 1;
        }
        assert!(families["blaschke"] > 300);
        assert!(families["schur_params"] > 300);
        assert!(families["convex_combo"] > 50);
    }

    #[test]
    fn random_samples_bounded_near_boundary() {
        for i in 0..50 {
            let f = random_schur(sample_seed(5, i), 16);
            for k in 0..64 {
                let z = C64::from_polar(0.999, TAU * k as f64 / 64.0);
                let v = f.provenance().eval(z).norm();
                assert!(v <= 1.0 + 1e-6, "sample {i}: |f| = {v}");
            }
        }
    }

    #[test]
    fn provenance_matches_jet_inside_small_disk() {
        for i in 0..20 {
            let f = random_schur(sample_seed(3, i), DEFAULT_ORDER);
            let z = C64::from_polar(0.3, 0.7 * i as f64);
            let exact = f.provenance().eval(z);
            let jet = f.series().eval_polynomial(z);
            assert!((exact - jet).norm() <= 1e-13, "sample {i}");
        }
    }
}
