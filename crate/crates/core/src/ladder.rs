//! The Jacob's ladder `φ₁` and its reverse iterates.
//!
//! `φ₁(T)` is the root on the increasing branch `x ≥ 2` of
//!
//! ```text
//! G(x) = x ln x + (c − ln 2π) x + c₀ = F(T),
//! ```
//!
//! so `φ₁′(T) = |ζ(1/2 + iT)|² / G′(φ₁(T))` and `ω(T) = G′(φ₁(T))`.
//! A reverse step from `t` solves `φ₁(x) = t`, which is the same as
//! `F(x) = G(t)`; that is how it is computed.

use serde::Serialize;

use crate::constants::{gap_model, EULER_GAMMA, LN_2PI};
use crate::error::{domain, Error, Result};
use crate::integral::IntegralCache;

/// Left end of the increasing branch of `G` used for root bracketing.
pub const BRANCH_FLOOR: f64 = 2.0;

const MAX_ITER: usize = 200;
const MAX_WIDENINGS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderConfig {
    /// Additive constant `c₀` of the defining equation.
    pub c0: f64,
    /// Smallest admissible `T`; stands in for the ladder's threshold `T₀[φ₁]`.
    pub t_min: f64,
    /// Relative tolerance on `|G(φ₁(T)) − F(T)| / F(T)`.
    pub newton_tol: f64,
    /// Initial reverse-step bracket, in units of `(1 − c) t / ln t`.
    pub bracket_slack: f64,
    /// Largest admissible iteration depth `k₀`.
    pub k0: usize,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self {
            c0: 0.0,
            t_min: 1000.0,
            newton_tol: 1e-12,
            bracket_slack: 2.0,
            k0: 10,
        }
    }
}

impl LadderConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_min >= 100.0) {
            return Err(domain("t_min", self.t_min, "t_min >= 100"));
        }
        if !(self.newton_tol > 0.0) {
            return Err(domain("newton_tol", self.newton_tol, "newton_tol > 0"));
        }
        if !(self.bracket_slack > 0.0) {
            return Err(domain(
                "bracket_slack",
                self.bracket_slack,
                "bracket_slack > 0",
            ));
        }
        if !self.c0.is_finite() {
            return Err(domain("c0", self.c0, "finite c0"));
        }
        if self.k0 == 0 {
            return Err(domain("k0", 0.0, "k0 >= 1"));
        }
        Ok(())
    }
}

/// `φ₁` and its companions at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderPoint {
    pub t: f64,
    pub phi1: f64,
    /// `φ₁′(t) = Z̃²(t)`.
    pub phi1_prime: f64,
    /// `ω(t) = |ζ(1/2 + it)|² / φ₁′(t)`.
    pub omega: f64,
}

/// `G(x) = x ln x + (c − ln 2π) x + c₀`.
pub fn g(x: f64, c0: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("x", x, "x > 0"));
    }
    Ok(x * x.ln() + (EULER_GAMMA - LN_2PI) * x + c0)
}

/// `G′(x) = ln x + 1 + c − ln 2π`.
pub fn g_prime(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("x", x, "x > 0"));
    }
    Ok(x.ln() + 1.0 + EULER_GAMMA - LN_2PI)
}

/// A ladder bound to an integral cache.
#[derive(Debug, Clone, Copy)]
pub struct Ladder<'c> {
    cache: &'c IntegralCache,
    cfg: LadderConfig,
}

impl<'c> Ladder<'c> {
    pub fn new(cache: &'c IntegralCache, cfg: LadderConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self { cache, cfg })
    }

    pub fn cache(&self) -> &'c IntegralCache {
        self.cache
    }

    pub fn config(&self) -> &LadderConfig {
        &self.cfg
    }

    pub fn g(&self, x: f64) -> Result<f64> {
        g(x, self.cfg.c0)
    }

    fn check_admissible(&self, what: &'static str, t: f64) -> Result<()> {
        if !(t >= self.cfg.t_min) {
            return Err(domain(
                what,
                t,
                format!("{what} >= T_min = {}", self.cfg.t_min),
            ));
        }
        Ok(())
    }

    /// Solves `G(x) = target` on `x ≥ 2` by Newton's method, with bisection
    /// whenever the Newton step leaves the bracket.
    fn invert_g(&self, target: f64, guess: f64) -> Result<f64> {
        let mut lo = BRANCH_FLOOR;
        if self.g(lo)? > target {
            return Err(Error::Numerical {
                context: "phi1",
                detail: format!("G({lo}) > F = {target}: no root on the increasing branch"),
            });
        }
        let mut hi = guess.max(4.0);
        let mut doublings = 0;
        while self.g(hi)? < target {
            hi *= 2.0;
            doublings += 1;
            if doublings > 64 {
                return Err(Error::Numerical {
                    context: "phi1",
                    detail: format!("could not bracket G(x) = {target}"),
                });
            }
        }
        let mut x = guess.clamp(lo, hi);
        for _ in 0..MAX_ITER {
            let r = self.g(x)? - target;
            if r == 0.0 {
                return Ok(x);
            }
            if r < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let newton = x - r / g_prime(x)?;
            let next = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - x).abs() <= 2.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * hi {
                return Ok(next);
            }
            x = next;
        }
        Err(Error::Numerical {
            context: "phi1",
            detail: format!(
                "no convergence after {MAX_ITER} iterations for G(x) = {target}; bracket [{lo}, {hi}]"
            ),
        })
    }

    /// `φ₁(T)` alone.
    pub fn phi1_value(&self, t: f64) -> Result<f64> {
        self.check_admissible("T", t)?;
        self.cache.ensure(t)?;
        let f = self.cache.integral(t)?;
        let x = self.invert_g(f, t - gap_model(t))?;
        let residual = (self.g(x)? - f).abs();
        if residual > self.cfg.newton_tol * f {
            return Err(Error::Numerical {
                context: "phi1",
                detail: format!(
                    "|G(phi1) - F| = {residual:e} exceeds {} * F at T = {t}",
                    self.cfg.newton_tol
                ),
            });
        }
        Ok(x)
    }

    /// `φ₁(T)` with `φ₁′(T)` and `ω(T)`.
    pub fn phi1(&self, t: f64) -> Result<LadderPoint> {
        let phi1 = self.phi1_value(t)?;
        let omega = g_prime(phi1)?;
        let zeta_sq = self.cache.engine().zeta_sq(t);
        Ok(LadderPoint {
            t,
            phi1,
            phi1_prime: zeta_sq / omega,
            omega,
        })
    }

    /// The `x > t` with `φ₁(x) = t`.
    pub fn reverse_step(&self, t: f64) -> Result<f64> {
        self.check_admissible("t", t)?;
        let target = self.g(t)?;
        self.cache.ensure(t)?;
        if self.cache.integral(t)? >= target {
            return Err(Error::Numerical {
                context: "reverse_step",
                detail: format!("phi1({t}) >= {t}; no preimage above t"),
            });
        }
        let mut width = self.cfg.bracket_slack * gap_model(t);
        let mut widenings = 0;
        loop {
            let upper = t + width;
            self.cache.ensure(upper)?;
            if self.cache.integral(upper)? >= target {
                break;
            }
            widenings += 1;
            if widenings > MAX_WIDENINGS {
                return Err(Error::Numerical {
                    context: "reverse_step",
                    detail: format!("no root in [{t}, {upper}] after {MAX_WIDENINGS} widenings"),
                });
            }
            width *= 2.0;
        }
        let x = self.cache.solve_for(target)?;
        if !(x > t) {
            return Err(Error::Numerical {
                context: "reverse_step",
                detail: format!("root {x} does not exceed {t}"),
            });
        }
        let back = self.phi1_value(x)?;
        if (back - t).abs() > 1e-8 * t {
            return Err(Error::Numerical {
                context: "reverse_step",
                detail: format!("phi1({x}) = {back} misses {t} by more than 1e-8 t"),
            });
        }
        Ok(x)
    }

    /// `[T⃗⁰, …, T⃗ᵏ]` with `T⃗⁰ = T`.
    pub fn reverse_iterates(&self, t: f64, k: usize) -> Result<Vec<f64>> {
        self.check_admissible("T", t)?;
        if k == 0 || k > self.cfg.k0 {
            return Err(domain(
                "k",
                k as f64,
                format!("1 <= k <= k0 = {}", self.cfg.k0),
            ));
        }
        let mut out = Vec::with_capacity(k + 1);
        out.push(t);
        for _ in 0..k {
            let next = self.reverse_step(*out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}
