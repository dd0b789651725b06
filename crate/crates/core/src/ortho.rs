//! A sine system transplanted onto the reversely iterated segment
//! `[T⃗ᵏ, (T+2l)⃗ᵏ]` and its weighted Gram matrix.
//!
//! With `u = φ₁ᵏ(t) − T` the weight `∏_{r<k} Z̃²[φ₁ʳ(t)]` is exactly `du/dt`, so
//! `∫ f_m(u) f_n(u) ∏ Z̃² dt = ∫₀^{2l} f_m f_n du = l δ_{mn}`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::ladder::Ladder;
use crate::quadrature::GaussLegendre;
use crate::segments::fmt17;

/// Largest panel on the iterated segment; `|ζ|²` varies on the scale `2π / ln T`.
pub const MAX_PANEL: f64 = 0.1;

const GL_ORDER: usize = 8;

/// Adaptive target for the whole matrix, in units of `l`.
const PANEL_TOL: f64 = 1e-6;

const MAX_DEPTH: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoConfig {
    /// Half-length: the basis lives on `[0, 2l]`.
    pub l: f64,
    pub n_max: usize,
    pub k: usize,
    /// Panels per `2l`, before the `MAX_PANEL` cap.
    pub quad_points: usize,
}

impl Default for OrthoConfig {
    fn default() -> Self {
        Self {
            l: PI,
            n_max: 5,
            k: 1,
            quad_points: 64,
        }
    }
}

impl OrthoConfig {
    pub fn validate(&self, t: f64) -> Result<()> {
        let l_max = 0.05 * t / t.ln();
        if !(self.l > 0.0 && self.l <= l_max) {
            return Err(domain(
                "l",
                self.l,
                format!("0 < l <= 0.05 T/ln T = {l_max}"),
            ));
        }
        if self.n_max < 2 {
            return Err(domain("n_max", self.n_max as f64, "n_max >= 2"));
        }
        if self.k == 0 {
            return Err(domain("k", 0.0, "k >= 1"));
        }
        if self.quad_points == 0 {
            return Err(domain("quad_points", 0.0, "quad_points >= 1"));
        }
        Ok(())
    }

    pub fn panel_width(&self) -> f64 {
        MAX_PANEL.min(2.0 * self.l / self.quad_points as f64)
    }
}

/// `f_n(u) = sin(nπu / 2l)` on `[0, 2l]`.
pub fn basis_f(n: usize, u: f64, l: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("n", 0.0, "n >= 1"));
    }
    if !(0.0..=2.0 * l).contains(&u) {
        return Err(domain("u", u, format!("0 <= u <= 2l = {}", 2.0 * l)));
    }
    Ok((n as f64 * PI * u / (2.0 * l)).sin())
}

/// `φ₁ᵏ(t)` and its derivative `∏_{r<k} φ₁′(φ₁ʳ(t))`.
pub fn iterate_forward(ladder: &Ladder<'_>, t: f64, k: usize) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(domain("k", 0.0, "k >= 1"));
    }
    let mut x = t;
    let mut derivative = 1.0;
    for _ in 0..k {
        let p = ladder.phi1(x)?;
        derivative *= p.phi1_prime;
        x = p.phi1;
    }
    Ok((x, derivative))
}

/// Weighted Gram matrix of `F_n(t) = f_n(φ₁ᵏ(t) − T)`, `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramMatrix {
    pub t: f64,
    pub l: f64,
    pub k: usize,
    /// `[T⃗ᵏ, (T+2l)⃗ᵏ]`.
    pub interval: (f64, f64),
    /// Row-major, `values[m − 1][n − 1]`.
    pub values: Vec<Vec<f64>>,
}

/// Declared max-norm tolerance for `|G − l I|`.
pub fn gram_tolerance(k: usize, l: f64) -> f64 {
    if k <= 1 {
        1e-3 * l
    } else {
        5e-3 * l
    }
}

impl GramMatrix {
    pub fn entry(&self, m: usize, n: usize) -> f64 {
        self.values[m - 1][n - 1]
    }

    /// `max |G_{mn} − l δ_{mn}|`.
    pub fn max_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { self.l } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn tolerance(&self) -> f64 {
        gram_tolerance(self.k, self.l)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# T={},l={},k={},tol={},max_dev={}\nm,n,value\n",
            fmt17(self.t),
            fmt17(self.l),
            self.k,
            fmt17(self.tolerance()),
            fmt17(self.max_deviation())
        );
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", i + 1, j + 1, fmt17(*v));
            }
        }
        out
    }
}

/// Maps a quadrature node to `u = φ₁ᵏ(t) − T`, absorbing root-finding
/// round-off at the ends of `[0, 2l]`.
fn node_u(ladder: &Ladder<'_>, t0: f64, l: f64, k: usize, t: f64) -> Result<(f64, f64)> {
    let (x, w) = iterate_forward(ladder, t, k)?;
    let u = x - t0;
    let slack = 1e-9 * t0;
    if u < -slack || u > 2.0 * l + slack {
        return Err(Error::Invariant(format!(
            "node {t} maps to u = {u}, outside [0, {}]",
            2.0 * l
        )));
    }
    Ok((u.clamp(0.0, 2.0 * l), w))
}

pub fn gram_matrix(ladder: &Ladder<'_>, t: f64, cfg: &OrthoConfig) -> Result<GramMatrix> {
    cfg.validate(t)?;
    let a = *ladder.reverse_iterates(t, cfg.k)?.last().unwrap();
    let b = *ladder
        .reverse_iterates(t + 2.0 * cfg.l, cfg.k)?
        .last()
        .unwrap();
    let panels = ((b - a) / cfg.panel_width()).ceil().max(1.0) as usize;
    let width = (b - a) / panels as f64;
    let rule = GaussLegendre::new(GL_ORDER)?;
    let n_max = cfg.n_max;

    let tol = PANEL_TOL * cfg.l / panels as f64;
    let node = |x: f64, f: &mut [f64]| -> Result<f64> {
        let (u, weight) = node_u(ladder, t, cfg.l, cfg.k, x)?;
        for (n, fv) in f.iter_mut().enumerate() {
            *fv = basis_f(n + 1, u, cfg.l)?;
        }
        Ok(weight)
    };

    // Per-panel partial Gram matrices, summed in panel order.
    let partials: Vec<Vec<f64>> = (0..panels)
        .into_par_iter()
        .map(|p| {
            let lo = a + p as f64 * width;
            let hi = if p + 1 == panels { b } else { lo + width };
            let whole = panel_gram(&rule, n_max, lo, hi, &node)?;
            refine(&rule, n_max, lo, hi, whole, tol, 0, &node)
        })
        .collect::<Result<_>>()?;

    let mut upper = vec![0.0; n_max * n_max];
    for part in &partials {
        for (u, p) in upper.iter_mut().zip(part) {
            *u += p;
        }
    }
    let values = (0..n_max)
        .map(|m| {
            (0..n_max)
                .map(|n| upper[m.min(n) * n_max + m.max(n)])
                .collect()
        })
        .collect();
    Ok(GramMatrix {
        t,
        l: cfg.l,
        k: cfg.k,
        interval: (a, b),
        values,
    })
}

/// Upper triangle of the Gram matrix over one panel, by a single rule.
fn panel_gram(
    rule: &GaussLegendre,
    n_max: usize,
    lo: f64,
    hi: f64,
    node: &impl Fn(f64, &mut [f64]) -> Result<f64>,
) -> Result<Vec<f64>> {
    let mut acc = vec![0.0; n_max * n_max];
    let mut f = vec![0.0; n_max];
    for (x, wq) in rule.mapped(lo, hi) {
        let weight = node(x, &mut f)?;
        for m in 0..n_max {
            for n in m..n_max {
                acc[m * n_max + n] += wq * weight * f[m] * f[n];
            }
        }
    }
    Ok(acc)
}

/// Bisects a panel until both halves agree with the whole to `tol`.
///
/// `∏ Z̃²` can make `u` sweep many periods of `f_n` across one base panel when
/// several factors peak together.
#[allow(clippy::too_many_arguments)]
fn refine(
    rule: &GaussLegendre,
    n_max: usize,
    lo: f64,
    hi: f64,
    whole: Vec<f64>,
    tol: f64,
    depth: usize,
    node: &impl Fn(f64, &mut [f64]) -> Result<f64>,
) -> Result<Vec<f64>> {
    let mid = 0.5 * (lo + hi);
    let left = panel_gram(rule, n_max, lo, mid, node)?;
    let right = panel_gram(rule, n_max, mid, hi, node)?;
    let split: Vec<f64> = left.iter().zip(&right).map(|(x, y)| x + y).collect();
    let diff = split
        .iter()
        .zip(&whole)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if diff <= tol || depth >= MAX_DEPTH {
        return Ok(split);
    }
    let l = refine(rule, n_max, lo, mid, left, 0.5 * tol, depth + 1, node)?;
    let r = refine(rule, n_max, mid, hi, right, 0.5 * tol, depth + 1, node)?;
    Ok(l.iter().zip(&r).map(|(x, y)| x + y).collect())
}

/// A single Gram entry; see [`gram_matrix`].
pub fn weighted_inner_product(
    ladder: &Ladder<'_>,
    t: f64,
    cfg: &OrthoConfig,
    m: usize,
    n: usize,
) -> Result<f64> {
    for (what, v) in [("m", m), ("n", n)] {
        if v == 0 || v > cfg.n_max {
            return Err(domain(
                what,
                v as f64,
                format!("1 <= {what} <= n_max = {}", cfg.n_max),
            ));
        }
    }
    Ok(gram_matrix(ladder, t, cfg)?.entry(m, n))
}
