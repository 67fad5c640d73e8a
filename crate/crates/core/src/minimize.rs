//! One-dimensional minimization: uniform coarse scan followed by golden-section
//! refinement inside the best bracket.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search on `[lo, hi]` until the bracket is narrower than
/// `tol`. Assumes unimodality inside the bracket; the returned point is the
/// best one evaluated, endpoints included.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Minimum {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut best = [a, b]
        .into_iter()
        .map(|x| Minimum { x, value: f(x) })
        .fold(None, pick)
        .unwrap();

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink any bracket in [0,1] far below 1e-16
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if lt(f1, f2) || (f1 == f2 && f1.is_infinite()) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    for (x, value) in [(x1, f1), (x2, f2)] {
        best = pick(Some(best), Minimum { x, value }).unwrap();
    }
    best
}

/// Minimum of `f` over `[lo, hi]`: `points` uniform samples (endpoints
/// included), then golden-section refinement to width `tol` on the bracket
/// around the best sample. Ties go to the smaller abscissa.
pub fn scan_then_golden<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    points: usize,
    tol: f64,
) -> Minimum {
    assert!(points >= 2);
    let step = (hi - lo) / (points - 1) as f64;
    let grid = |i: usize| {
        if i + 1 == points {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut best_i = 0;
    let mut best = Minimum {
        x: lo,
        value: f(lo),
    };
    for i in 1..points {
        let x = grid(i);
        let v = f(x);
        if lt(v, best.value) {
            best = Minimum { x, value: v };
            best_i = i;
        }
    }
    let left = grid(best_i.saturating_sub(1));
    let right = grid((best_i + 1).min(points - 1));
    let refined = golden_section(&f, left, right, tol);
    if lt(refined.value, best.value) {
        refined
    } else {
        best
    }
}

/// NaN-aware strict comparison: NaN is never smaller.
fn lt(a: f64, b: f64) -> bool {
    a < b || (b.is_nan() && !a.is_nan())
}

fn pick(acc: Option<Minimum>, m: Minimum) -> Option<Minimum> {
    match acc {
        None => Some(m),
        Some(best) if lt(m.value, best.value) || (m.value == best.value && m.x < best.x) => Some(m),
        Some(best) => Some(best),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let m = golden_section(|x| (x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-12);
        assert!((m.x - 0.3).abs() < 1e-7);
        assert!((m.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn golden_handles_boundary_minimum() {
        let m = golden_section(|x| -x, 0.0, 1.0, 1e-12);
        assert_eq!(m.x, 1.0);
        assert_eq!(m.value, -1.0);
    }

    #[test]
    fn scan_escapes_local_minimum() {
        // two wells; the deeper one at x = 0.8
        let f = |x: f64| (x - 0.2).powi(2) * (x - 0.8).powi(2) + 0.1 * (x - 0.8).abs();
        let m = scan_then_golden(f, 0.0, 1.0, 101, 1e-12);
        assert!((m.x - 0.8).abs() < 1e-6);
    }

    #[test]
    fn scan_tolerates_infinite_values() {
        let f = |x: f64| {
            if x >= 0.999 {
                f64::INFINITY
            } else {
                (x - 0.5).powi(2)
            }
        };
        let m = scan_then_golden(f, 0.0, 1.0, 4096, 1e-12);
        assert!((m.x - 0.5).abs() < 1e-7);
    }
}
