//! Real polynomials and root isolation by sign scan plus bisection.

/// Real polynomial with coefficients stored highest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn from_descending(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn coeffs_descending(&self) -> &[f64] {
        &self.coeffs
    }

    /// Nominal degree (leading coefficients may be zero).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    /// All sign changes of `self` on `subintervals` equal pieces of `[lo, hi]`,
    /// each bisected until the bracket is narrower than `tol`. Grid points where
    /// the polynomial is exactly zero are reported as roots. Sorted ascending.
    pub fn roots_in(&self, lo: f64, hi: f64, subintervals: usize, tol: f64) -> Vec<f64> {
        let step = (hi - lo) / subintervals as f64;
        let xs: Vec<f64> = (0..=subintervals)
            .map(|i| {
                if i == subintervals {
                    hi
                } else {
                    lo + step * i as f64
                }
            })
            .collect();
        let vals: Vec<f64> = xs.iter().map(|&x| self.eval(x)).collect();
        let mut roots = Vec::new();
        for i in 0..subintervals {
            let (fa, fb) = (vals[i], vals[i + 1]);
            if fa == 0.0 {
                roots.push(xs[i]);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                roots.push(self.bisect(xs[i], xs[i + 1], tol));
            }
        }
        if vals[subintervals] == 0.0 {
            roots.push(hi);
        }
        roots
    }

    fn bisect(&self, mut a: f64, mut b: f64, tol: f64) -> f64 {
        let mut fa = self.eval(a);
        while b - a > tol {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = self.eval(m);
            if fm == 0.0 {
                return m;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolates_cubic_roots() {
        // (x - 0.1)(x - 0.5)(x - 0.9)
        let p = Polynomial::from_descending(vec![1.0, -1.5, 0.59, -0.045]);
        let roots = p.roots_in(0.0, 1.0, 1000, 1e-13);
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([0.1, 0.5, 0.9]) {
            assert!((r - want).abs() < 1e-12, "{r} vs {want}");
        }
    }

    #[test]
    fn reports_exact_grid_zero_once() {
        let p = Polynomial::from_descending(vec![1.0, -0.5]);
        assert_eq!(p.roots_in(0.0, 1.0, 10, 1e-13), vec![0.5]);
    }

    #[test]
    fn no_roots_when_positive() {
        let p = Polynomial::from_descending(vec![1.0, 0.0, 1.0]);
        assert!(p.roots_in(-2.0, 2.0, 100, 1e-13).is_empty());
    }
}
