//! The Riemann–Siegel theta function `ϑ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π`.

use num_complex::Complex64;

use crate::constants::LN_2PI;

/// Asymptotic expansion of `ϑ(t)`; the first omitted term is below `1e-12` at `t = 10`.
pub(crate) fn theta_asymptotic(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    // 1/48, 7/5760, 31/80640, 127/430080, 511/1216512
    let tail = inv
        * (1.0 / 48.0
            + inv2
                * (7.0 / 5760.0
                    + inv2
                        * (31.0 / 80640.0
                            + inv2 * (127.0 / 430_080.0 + inv2 * (511.0 / 1_216_512.0)))));
    0.5 * t * (t.ln() - LN_2PI - 1.0) - std::f64::consts::FRAC_PI_8 + tail
}

/// `ϑ(t)` through the complex log-gamma function. Valid for every `t ≥ 0`.
pub(crate) fn theta_log_gamma(t: f64) -> f64 {
    let z = Complex64::new(0.25, 0.5 * t);
    ln_gamma(z).im - 0.5 * t * std::f64::consts::PI.ln()
}

// B_2k / (2k (2k - 1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Continuous branch of `ln Γ(z)` for `Re z > 0`.
///
/// Shifts the argument to `Re z ≥ 16` and applies Stirling's series there;
/// the shift terms `ln(z + j)` all have arguments in `(−π/2, π/2)`, so the
/// imaginary part is continuous along vertical lines.
pub(crate) fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 16.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for &c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    series *= inv;
    (w - 0.5) * w.ln() - w + 0.5 * LN_2PI + series - shift
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_real_axis() {
        // Γ(1/4) = 3.6256099082219083119
        let v = ln_gamma(Complex64::new(0.25, 0.0));
        assert!((v.re - 3.625_609_908_221_908_f64.ln()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
        // Γ(5) = 24
        assert!((ln_gamma(Complex64::new(5.0, 0.0)).re - 24f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn ln_gamma_recurrence_off_axis() {
        let z = Complex64::new(0.25, 37.5);
        let lhs = ln_gamma(z + 1.0);
        let rhs = ln_gamma(z) + z.ln();
        assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn asymptotic_agrees_with_log_gamma() {
        for &t in &[10.0, 14.0, 50.0, 1e3, 1e5] {
            let a = theta_asymptotic(t);
            let b = theta_log_gamma(t);
            assert!(
                (a - b).abs() < 1e-10 * (1.0 + b.abs() * 1e-6),
                "t={t}: {a} vs {b}"
            );
        }
    }
}
