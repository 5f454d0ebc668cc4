//! Physicists' Hermite polynomials.

use std::f64::consts::PI;

/// Hₘ(x) by the three-term recurrence H_{k+1} = 2x H_k − 2k H_{k−1}.
///
/// Overflows for large m·|x|; use [`hermite_function_ln`] there.
pub fn hermite(m: usize, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if m == 0 {
        return h0;
    }
    for k in 1..m {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// ln(m!) by direct summation.
pub fn ln_factorial(m: usize) -> f64 {
    (2..=m).map(|k| (k as f64).ln()).sum()
}

/// Sign and natural log of |ψₘ(x)| with ψₘ(x) = Hₘ(x)/√(2ᵐ m! √π).
///
/// Runs the orthonormal recurrence
/// ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}
/// and rescales whenever the iterate grows past 1e150, so the result is
/// finite for any m and x. A true zero is reported as (0, −∞).
pub fn hermite_function_ln(m: usize, x: f64) -> (f64, f64) {
    const BIG: f64 = 1e150;
    let mut log_scale = 0.0;
    let mut p0 = PI.powf(-0.25);
    if m == 0 {
        return (1.0, p0.ln());
    }
    let mut p1 = 2f64.sqrt() * x * p0;
    for k in 1..m {
        let kf = k as f64;
        let p2 = (2.0 / (kf + 1.0)).sqrt() * x * p1 - (kf / (kf + 1.0)).sqrt() * p0;
        p0 = p1;
        p1 = p2;
        if p1.abs() > BIG {
            p0 /= BIG;
            p1 /= BIG;
            log_scale += BIG.ln();
        }
    }
    if p1 == 0.0 {
        (0.0, f64::NEG_INFINITY)
    } else {
        (p1.signum(), p1.abs().ln() + log_scale)
    }
}

/// Sign and natural log of |Hₘ(x)|, finite where Hₘ itself overflows.
pub fn hermite_ln(m: usize, x: f64) -> (f64, f64) {
    let (sign, ln_psi) = hermite_function_ln(m, x);
    let norm = 0.5 * (m as f64 * 2f64.ln() + ln_factorial(m) + 0.5 * PI.ln());
    (sign, ln_psi + norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_closed_forms() {
        let x = 0.7;
        assert_eq!(hermite(0, x), 1.0);
        assert_eq!(hermite(1, x), 2.0 * x);
        assert!((hermite(2, x) - (4.0 * x * x - 2.0)).abs() < 1e-14);
        assert!((hermite(3, x) - (8.0 * x.powi(3) - 12.0 * x)).abs() < 1e-14);
        assert!((hermite(4, x) - (16.0 * x.powi(4) - 48.0 * x * x + 12.0)).abs() < 1e-13);
    }

    #[test]
    fn parity() {
        for m in 0..12 {
            let s = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((hermite(m, -1.3) - s * hermite(m, 1.3)).abs() < 1e-9 * hermite(m, 1.3).abs().max(1.0));
        }
    }

    #[test]
    fn normalized_matches_raw() {
        for m in 0..30 {
            for x in [-3.1, -0.4, 0.0, 0.9, 2.5] {
                let raw = hermite(m, x);
                let norm = (m as f64 * 2f64.ln() + ln_factorial(m) + 0.5 * PI.ln()).exp().sqrt();
                let (s, l) = hermite_function_ln(m, x);
                let v = s * l.exp();
                assert!((v - raw / norm).abs() <= 1e-11 * (raw / norm).abs().max(1e-3), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn large_order_stays_finite() {
        let (s, l) = hermite_function_ln(400, 1e3);
        assert!(l.is_finite() && s != 0.0);
        assert!(l > 1000.0);
    }

    #[test]
    fn ln_factorial_small() {
        assert_eq!(ln_factorial(0), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_raw_matches_direct() {
        for m in [0, 1, 5, 12, 25] {
            for x in [-2.3, -0.4, 0.9, 3.1] {
                let h = hermite(m, x);
                let (s, l) = hermite_ln(m, x);
                assert!((s * l.exp() - h).abs() <= 1e-11 * h.abs().max(1.0), "m={m} x={x}");
            }
        }
    }
}
