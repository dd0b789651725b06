//! Named mathematical constants shared by every module.

/// Euler's constant `c` (Euler–Mascheroni).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ln(2π)`.
pub const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// `2π`.
pub const TWO_PI: f64 = std::f64::consts::TAU;

/// `1 − c`, the coefficient of the gap law `ρ ∼ (1 − c) T / ln T`.
pub const ONE_MINUS_GAMMA: f64 = 1.0 - EULER_GAMMA;

/// Coefficient of the linear term in the Hardy–Littlewood–Ingham main term,
/// `2c − 1 − ln 2π`.
pub const HL_LINEAR: f64 = 2.0 * EULER_GAMMA - 1.0 - LN_2PI;

/// Model spacing of consecutive reverse iterates, `(1 − c) T / ln T`.
pub fn gap_model(t: f64) -> f64 {
    ONE_MINUS_GAMMA * t / t.ln()
}

/// Logarithmic integral `li(x)` for `x > 1`, by Ramanujan's series.
///
/// Only used as an alternative comparator for `π(T)` in reports.
pub fn log_integral(x: f64) -> f64 {
    assert!(x > 1.0, "li(x) needs x > 1");
    let ln_x = x.ln();
    let mut sum = 0.0;
    let mut power = 1.0; // (ln x)^n / (n! 2^(n-1))
    let mut inner = 0.0; // sum_{k=0}^{floor((n-1)/2)} 1/(2k+1)
    for n in 1..200 {
        power *= ln_x / n as f64;
        if n > 1 {
            power /= 2.0;
        }
        if (n - 1) % 2 == 0 {
            inner += 1.0 / (n as f64);
        }
        let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * power * inner;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    EULER_GAMMA + ln_x.ln() + x.sqrt() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_gamma_matches_harmonic_limit() {
        // H_n - ln n - 1/(2n) + 1/(12 n^2) - 1/(120 n^4) converges to c with O(n^-6) error.
        let n = 10_000u32;
        let mut h = 0.0f64;
        for k in (1..=n).rev() {
            h += 1.0 / f64::from(k);
        }
        let nf = f64::from(n);
        let approx =
            h - nf.ln() - 1.0 / (2.0 * nf) + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4));
        assert!((approx - EULER_GAMMA).abs() < 1e-14, "{approx}");
    }

    #[test]
    fn ln_two_pi_matches_independent_series() {
        // ln 2 from the series sum 1/(k 2^k), ln π = ln 4 + ln(π/4) via atanh series.
        let ln2: f64 = (1..60).map(|k| 1.0 / (k as f64 * 2f64.powi(k))).sum();
        let y = (std::f64::consts::PI - 4.0) / (std::f64::consts::PI + 4.0);
        let ln_pi_over_4: f64 = (0..40)
            .map(|j| 2.0 * y.powi(2 * j + 1) / (2 * j + 1) as f64)
            .sum();
        let ln_2pi = 3.0 * ln2 + ln_pi_over_4;
        assert!((ln_2pi - LN_2PI).abs() < 1e-15, "{ln_2pi}");
    }

    #[test]
    fn log_integral_known_values() {
        // li(10) = 6.1655995047872979..., li(1e6) = 78627.549159462181...
        assert!((log_integral(10.0) - 6.165_599_504_787_298).abs() < 1e-12);
        assert!((log_integral(1e6) / 78_627.549_159_462_18 - 1.0).abs() < 1e-13);
    }
}
