//! Riemann–Siegel formula for Hardy's `Z(t)`.

use crate::constants::TWO_PI;

use super::rs_coeffs::{C0, C1, C2, C3, C4};
use super::tables::{ln_n, rsqrt_n, slices};
use super::theta::theta_asymptotic;

/// Number of correction terms `C_0 … C_4` applied after the main sum.
pub(crate) const CORRECTION_TERMS: usize = 5;

#[inline]
fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Correction terms `C_k(p)` for `p` the fractional part of `√(t/2π)`,
/// evaluated from their Taylor series about `p = 1/2`.
pub(crate) fn corrections(p: f64) -> [f64; CORRECTION_TERMS] {
    let x = p - 0.5;
    [
        horner(&C0, x),
        horner(&C1, x),
        horner(&C2, x),
        horner(&C3, x),
        horner(&C4, x),
    ]
}

/// `Z(t)` by the Riemann–Siegel main sum plus the `C_0 … C_4` remainder.
pub(crate) fn z_riemann_siegel(t: f64) -> f64 {
    let a2 = t / TWO_PI;
    let a = a2.sqrt();
    let n = a.floor() as usize;
    let p = a - n as f64;
    let theta = theta_asymptotic(t);

    let main = match slices(n) {
        Some((ln, rsqrt)) => ln
            .iter()
            .zip(rsqrt)
            .map(|(&l, &w)| w * (theta - t * l).cos())
            .sum::<f64>(),
        None => (1..=n)
            .map(|k| rsqrt_n(k) * (theta - t * ln_n(k)).cos())
            .sum::<f64>(),
    };

    let c = corrections(p);
    let w = 1.0 / a;
    let remainder = c[0] + w * (c[1] + w * (c[2] + w * (c[3] + w * c[4])));
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * w.sqrt() * remainder
}
