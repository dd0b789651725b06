//! Euler–Maclaurin evaluation of `ζ(1/2 + it)`.
//!
//! Slow (the direct sum has about `t/π` terms) but independent of the
//! Riemann–Siegel machinery. It serves as the reference for `z_fast` and as
//! the engine below the crossover.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::tables::{ln_n, rsqrt_n};

const MAX_BERNOULLI: usize = 40;

/// `B_2k / (2k)!` for `k = 1..=MAX_BERNOULLI`, from `B_2k/(2k)! = (−1)^(k+1) 2 ζ(2k) / (2π)^(2k)`.
fn bernoulli_ratios() -> &'static [f64; MAX_BERNOULLI] {
    static TABLE: OnceLock<[f64; MAX_BERNOULLI]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; MAX_BERNOULLI];
        for (i, slot) in out.iter_mut().enumerate() {
            let k = i + 1;
            let two_k = 2 * k as i32;
            let zeta = if k == 1 {
                PI * PI / 6.0
            } else {
                // direct sum plus Euler–Maclaurin tail at n = 1000
                let n0 = 1000.0f64;
                let head: f64 = (1..1000).rev().map(|n| (n as f64).powi(-two_k)).sum();
                head + n0.powi(1 - two_k) / f64::from(two_k - 1)
                    + 0.5 * n0.powi(-two_k)
                    + f64::from(two_k) / 12.0 * n0.powi(-two_k - 1)
            };
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * zeta / (2.0 * PI).powi(two_k);
        }
        out
    })
}

/// Neumaier-compensated accumulator.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `ζ(1/2 + it)` by Euler–Maclaurin summation.
///
/// The cut-off `N ≈ (t + 2K)/π` keeps the ratio of consecutive Bernoulli
/// correction terms below 1/4 for the first `K = 40` terms; summation stops
/// once a correction term drops under `1e-17`.
pub(crate) fn zeta_half_line(t: f64) -> Complex64 {
    let t = t.abs();
    let s = Complex64::new(0.5, t);
    let n = ((t + 2.0 * MAX_BERNOULLI as f64) / PI).ceil() as usize + 10;

    let mut re = Compensated::default();
    let mut im = Compensated::default();
    for k in 1..n {
        let (sin, cos) = (t * ln_n(k)).sin_cos();
        let w = rsqrt_n(k);
        re.add(w * cos);
        im.add(-w * sin);
    }

    let big_n = n as f64;
    let ln_big_n = big_n.ln();
    // N^{-s}
    let n_pow_s = Complex64::from_polar(1.0 / big_n.sqrt(), -t * ln_big_n);
    let mut tail = n_pow_s * big_n / (s - 1.0) + 0.5 * n_pow_s;

    let ratios = bernoulli_ratios();
    let mut rising = s; // s (s+1) ... (s + 2k - 2)
    let mut n_pow = n_pow_s / big_n; // N^{-s-2k+1}
    let inv_n2 = 1.0 / (big_n * big_n);
    let mut previous = f64::INFINITY;
    for (i, &ratio) in ratios.iter().enumerate() {
        let term = rising * n_pow * ratio;
        let size = term.norm();
        tail += term;
        if size < 1e-17 || size > previous {
            break;
        }
        previous = size;
        let k = (i + 1) as f64;
        rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        n_pow *= inv_n2;
    }

    re.add(tail.re);
    im.add(tail.im);
    Complex64::new(re.value(), im.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_at_one_half() {
        // ζ(1/2) = -1.4603545088095868129
        let z = zeta_half_line(0.0);
        assert!((z.re + 1.460_354_508_809_586_8).abs() < 1e-13, "{z}");
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn bernoulli_table_head() {
        let r = bernoulli_ratios();
        assert!((r[0] - 1.0 / 12.0).abs() < 1e-16);
        assert!((r[1] + 1.0 / 720.0).abs() < 1e-17);
        assert!((r[2] - 1.0 / 30240.0).abs() < 1e-18);
    }

    #[test]
    fn cutoff_independence() {
        // The value must not depend on the summation cut-off: compare with a
        // long direct sum closed by two correction terms.
        let t = 123.456;
        let a = zeta_half_line(t);
        let s = Complex64::new(0.5, t);
        let n = 20_000usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..n {
            acc += Complex64::from_polar(1.0 / (k as f64).sqrt(), -t * (k as f64).ln());
        }
        let nf = n as f64;
        let np = Complex64::from_polar(1.0 / nf.sqrt(), -t * nf.ln());
        acc += np * nf / (s - 1.0) + 0.5 * np + s * np / nf / 12.0
            - s * (s + 1.0) * (s + 2.0) * np / (nf * nf * nf) / 720.0;
        assert!((a - acc).norm() < 1e-10, "{a} vs {acc}");
    }
}
