//! Hardy's function `Z(t)`, `ϑ(t)` and `|ζ(1/2 + it)|²` on the critical line.
//!
//! Two independent evaluators are provided. [`ZetaEngine::z_fast`] is the
//! Riemann–Siegel formula with five correction terms; [`ZetaEngine::z_oracle`]
//! is Euler–Maclaurin summation with a log-gamma phase. [`ZetaEngine::zeta_sq`]
//! switches from the latter to the former at the configured crossover.
//!
//! Empirical error of `z_fast` against the oracle is below `1e-7` absolute
//! from `t = 50` upward and shrinks like `t^{-11/4}`.

mod oracle;
mod riemann_siegel;
#[rustfmt::skip]
#[allow(clippy::excessive_precision)]
mod rs_coeffs;
mod tables;
mod theta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Engine settings. All evaluations are pure functions of these and `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Heights at or above this use Riemann–Siegel; below, Euler–Maclaurin.
    pub crossover: f64,
    /// Smallest `t` accepted by the asymptotic [`ZetaEngine::theta`].
    pub theta_min: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            crossover: 30.0,
            theta_min: 1.0,
        }
    }
}

/// One evaluation of the critical-line quantities at height `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalLineSample {
    pub t: f64,
    pub theta: f64,
    pub z: f64,
    /// `|ζ(1/2 + it)|² = z²`.
    pub zeta_sq: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZetaEngine {
    cfg: EngineConfig,
}

impl ZetaEngine {
    /// The Riemann–Siegel formula needs at least one main-sum term, so the
    /// crossover may not go below `2π`.
    pub fn new(cfg: EngineConfig) -> Result<Self> {
        if !(cfg.crossover >= crate::constants::TWO_PI) {
            return Err(domain("crossover", cfg.crossover, "crossover >= 2π"));
        }
        if !(cfg.theta_min > 0.0) {
            return Err(domain("theta_min", cfg.theta_min, "theta_min > 0"));
        }
        Ok(Self { cfg })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    /// Short text identifying everything that influences `zeta_sq` values.
    pub fn fingerprint(&self) -> String {
        let text = format!(
            "rs{}-em{}-x{:?}",
            riemann_siegel::CORRECTION_TERMS,
            1,
            self.cfg.crossover
        );
        format!("{:016x}", fnv1a(text.as_bytes()))
    }

    /// `ϑ(t)` from its asymptotic series.
    pub fn theta(&self, t: f64) -> Result<f64> {
        if !(t >= self.cfg.theta_min) {
            return Err(domain(
                "t",
                t,
                format!(
                    "theta needs t >= {} (asymptotic series)",
                    self.cfg.theta_min
                ),
            ));
        }
        Ok(theta::theta_asymptotic(t))
    }

    /// `ϑ(t)` through `Im ln Γ(1/4 + it/2)`; valid for all `t ≥ 0`.
    pub fn theta_oracle(&self, t: f64) -> f64 {
        theta::theta_log_gamma(t)
    }

    /// `Z(t)` by the Riemann–Siegel formula.
    pub fn z_fast(&self, t: f64) -> Result<f64> {
        if !(t >= self.cfg.crossover) {
            return Err(domain(
                "t",
                t,
                format!(
                    "z_fast needs t >= {} (crossover); use z_oracle below it",
                    self.cfg.crossover
                ),
            ));
        }
        Ok(riemann_siegel::z_riemann_siegel(t))
    }

    /// `Z(t)` by Euler–Maclaurin summation. Slow; for `t ≥ 0`.
    ///
    /// The phase comes from log-gamma, so the sign of `Z` is meaningful all
    /// the way down to `t = 0`, where `Z(0) = ζ(1/2)`.
    pub fn z_oracle(&self, t: f64) -> f64 {
        let t = t.abs();
        let zeta = oracle::zeta_half_line(t);
        let phase = Complex64::from_polar(1.0, theta::theta_log_gamma(t));
        (phase * zeta).re
    }

    /// `ζ(1/2 + it)` by Euler–Maclaurin summation.
    pub fn zeta_oracle(&self, t: f64) -> Complex64 {
        oracle::zeta_half_line(t)
    }

    /// `Z(t)` from whichever evaluator is in charge at height `t`.
    pub fn z(&self, t: f64) -> f64 {
        if t >= self.cfg.crossover {
            riemann_siegel::z_riemann_siegel(t)
        } else {
            self.z_oracle(t)
        }
    }

    /// `|ζ(1/2 + it)|²`, always `≥ 0`.
    pub fn zeta_sq(&self, t: f64) -> f64 {
        let z = self.z(t);
        z * z
    }

    pub fn sample(&self, t: f64) -> CriticalLineSample {
        let theta = if t >= self.cfg.theta_min {
            theta::theta_asymptotic(t)
        } else {
            theta::theta_log_gamma(t)
        };
        let z = self.z(t);
        CriticalLineSample {
            t,
            theta,
            z,
            zeta_sq: z * z,
        }
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
