//! The Hardy–Littlewood integral `F(T) = ∫₀ᵀ |ζ(1/2 + it)|² dt`.
//!
//! `F` is accumulated over fixed-width panels, each integrated by a
//! Gauss–Legendre rule. Every `checkpoint_stride` panels a checkpoint
//! `(t, F(t))` is recorded; only checkpoints are persisted. Values between
//! checkpoints are rebuilt from the panel prefix sums of the enclosing block,
//! which are recomputed on demand and memoized. Because panel integrals are
//! pure functions of the panel index, a cache reloaded from disk yields the
//! same `F` bit for bit.
//!
//! File format (text):
//!
//! ```text
//! ZLCACHE 1 <panel_width> <quad_order> <checkpoint_stride> <engine_fingerprint>
//! <t> <F>
//! ...
//! ```
//!
//! with 17 significant digits per number and `t` strictly increasing from 0.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::{HL_LINEAR, TWO_PI};
use crate::error::{domain, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::zeta::ZetaEngine;

const MAGIC: &str = "ZLCACHE";
const FORMAT_VERSION: u32 = 1;

/// Largest admissible `panel_width · ln(t / 2π)`: the phase advance of the
/// fastest oscillation of `Z²` across one panel.
pub const MAX_PANEL_PHASE: f64 = 4.0;

/// Quadrature layout of the cache.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CacheConfig {
    pub panel_width: f64,
    pub quad_order: usize,
    pub checkpoint_stride: usize,
}

impl Default for CacheConfig {
    fn default() -> Self {
        Self {
            panel_width: 0.25,
            quad_order: 8,
            checkpoint_stride: 256,
        }
    }
}

impl CacheConfig {
    fn validate(&self) -> Result<()> {
        if !(self.panel_width > 0.0 && self.panel_width.is_finite()) {
            return Err(domain("panel_width", self.panel_width, "panel_width > 0"));
        }
        if self.checkpoint_stride == 0 {
            return Err(domain("checkpoint_stride", 0.0, "checkpoint_stride >= 1"));
        }
        Ok(())
    }

    /// Distance between consecutive checkpoints.
    pub fn block_span(&self) -> f64 {
        self.panel_width * self.checkpoint_stride as f64
    }

    /// Largest `t` this panel width resolves (see [`MAX_PANEL_PHASE`]).
    pub fn resolvable_max(&self) -> f64 {
        TWO_PI * (MAX_PANEL_PHASE / self.panel_width).exp()
    }
}

/// `R(T)` and its normalizations against `T^{1/4}` and `T^{1/3}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorTermSample {
    pub t: f64,
    pub r: f64,
    pub r_quarter_ratio: f64,
    pub r_third_ratio: f64,
}

/// Main terms `T ln T + (2c − 1 − ln 2π) T` of the second moment.
pub fn hl_main_term(t: f64) -> f64 {
    t * t.ln() + HL_LINEAR * t
}

/// Monotone checkpoint table for `F`, optionally backed by a file.
///
/// Extension is single-writer; reads may run concurrently with each other
/// and with an extension in progress.
pub struct IntegralCache {
    cfg: CacheConfig,
    engine: ZetaEngine,
    rule: GaussLegendre,
    path: Option<PathBuf>,
    checkpoints: RwLock<Vec<f64>>,
    blocks: Mutex<HashMap<usize, Arc<[f64]>>>,
    writer: Mutex<()>,
}

impl std::fmt::Debug for IntegralCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IntegralCache")
            .field("cfg", &self.cfg)
            .field("path", &self.path)
            .field("cached_max", &self.cached_max())
            .finish()
    }
}

impl IntegralCache {
    /// A cache that lives only in memory, holding the single checkpoint `(0, 0)`.
    pub fn in_memory(cfg: CacheConfig, engine: ZetaEngine) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            rule: GaussLegendre::new(cfg.quad_order)?,
            cfg,
            engine,
            path: None,
            checkpoints: RwLock::new(vec![0.0]),
            blocks: Mutex::new(HashMap::new()),
            writer: Mutex::new(()),
        })
    }

    /// Opens the cache at `path`, creating it if absent. Extensions are
    /// appended to the file as they are computed.
    pub fn open(path: impl AsRef<Path>, cfg: CacheConfig, engine: ZetaEngine) -> Result<Self> {
        let path = path.as_ref();
        let mut cache = Self::in_memory(cfg, engine)?;
        if path.exists() {
            let checkpoints = cache.read_file(path)?;
            *cache.checkpoints.get_mut().unwrap() = checkpoints;
        } else {
            cache.write_file(path)?;
        }
        cache.path = Some(path.to_path_buf());
        Ok(cache)
    }

    /// Writes the full checkpoint table to `path`.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_file(path.as_ref())
    }

    pub fn config(&self) -> &CacheConfig {
        &self.cfg
    }

    pub fn engine(&self) -> &ZetaEngine {
        &self.engine
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// The header line identifying the configuration.
    pub fn header(&self) -> String {
        format!(
            "{MAGIC} {FORMAT_VERSION} {:?} {} {} {}",
            self.cfg.panel_width,
            self.cfg.quad_order,
            self.cfg.checkpoint_stride,
            self.engine.fingerprint()
        )
    }

    /// Largest `t` for which `F` is available.
    pub fn cached_max(&self) -> f64 {
        let n = self.checkpoints.read().unwrap().len();
        self.checkpoint_t(n - 1)
    }

    /// All checkpoints `(t, F(t))`, starting at `(0, 0)`.
    pub fn checkpoints(&self) -> Vec<(f64, f64)> {
        self.checkpoints
            .read()
            .unwrap()
            .iter()
            .enumerate()
            .map(|(j, &f)| (self.checkpoint_t(j), f))
            .collect()
    }

    fn checkpoint_t(&self, j: usize) -> f64 {
        j as f64 * self.cfg.block_span()
    }

    fn panel_start(&self, index: usize) -> f64 {
        index as f64 * self.cfg.panel_width
    }

    /// Gauss–Legendre integral of `|ζ|²` over `[a, b]`.
    fn quad(&self, a: f64, b: f64) -> f64 {
        if a == b {
            return 0.0;
        }
        self.rule.integrate(a, b, |t| self.engine.zeta_sq(t))
    }

    /// Prefix sums of the panel integrals in block `j` (length `stride + 1`).
    fn compute_block(&self, j: usize) -> Arc<[f64]> {
        let stride = self.cfg.checkpoint_stride;
        let first = j * stride;
        let panels: Vec<f64> = (first..first + stride)
            .into_par_iter()
            .map(|i| self.quad(self.panel_start(i), self.panel_start(i + 1)))
            .collect();
        let mut prefix = Vec::with_capacity(stride + 1);
        let mut acc = 0.0;
        prefix.push(acc);
        for p in panels {
            acc += p;
            prefix.push(acc);
        }
        prefix.into()
    }

    fn block(&self, j: usize) -> Arc<[f64]> {
        if let Some(b) = self.blocks.lock().unwrap().get(&j) {
            return Arc::clone(b);
        }
        let b = self.compute_block(j);
        self.blocks
            .lock()
            .unwrap()
            .entry(j)
            .or_insert_with(|| Arc::clone(&b));
        b
    }

    /// Extends the cache to cover `[0, to]`, rounding up to whole blocks.
    /// Returns the number of checkpoints added (0 if already covered).
    pub fn extend_to(&self, to: f64) -> Result<usize> {
        if !to.is_finite() {
            return Err(domain("to", to, "finite extension target"));
        }
        if to > self.cfg.resolvable_max() {
            return Err(domain(
                "to",
                to,
                format!(
                    "panel_width {} resolves t <= {:.6e}; use a smaller panel width",
                    self.cfg.panel_width,
                    self.cfg.resolvable_max()
                ),
            ));
        }
        let _guard = self.writer.lock().unwrap();
        let mut added = 0;
        let mut pending = Vec::new();
        loop {
            let (j, f_j) = {
                let cps = self.checkpoints.read().unwrap();
                (cps.len() - 1, *cps.last().unwrap())
            };
            if self.checkpoint_t(j) >= to {
                break;
            }
            let block = self.block(j);
            let f_next = f_j + block[self.cfg.checkpoint_stride];
            self.checkpoints.write().unwrap().push(f_next);
            pending.push((self.checkpoint_t(j + 1), f_next));
            added += 1;
            if pending.len() >= 64 {
                self.append_lines(&pending)?;
                pending.clear();
            }
        }
        self.append_lines(&pending)?;
        Ok(added)
    }

    /// Extends only if `t` is not yet covered.
    pub fn ensure(&self, t: f64) -> Result<()> {
        if t > self.cached_max() {
            self.extend_to(t)?;
        }
        Ok(())
    }

    /// `F(t)`: enclosing checkpoint, plus whole panels of its block, plus a
    /// partial panel ending at `t`.
    pub fn integral(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(domain("T", t, "T >= 0"));
        }
        let (j, f_j, last) = {
            let cps = self.checkpoints.read().unwrap();
            let last = cps.len() - 1;
            let max = self.checkpoint_t(last);
            if t > max {
                return Err(Error::OutOfRange {
                    requested: t,
                    cached_max: max,
                });
            }
            if t == max {
                return Ok(cps[last]);
            }
            let mut j = ((t / self.cfg.block_span()).floor() as usize).min(last - 1);
            if t < self.checkpoint_t(j) {
                j -= 1;
            } else if j + 1 < last && t >= self.checkpoint_t(j + 1) {
                j += 1;
            }
            (j, cps[j], last)
        };
        debug_assert!(j < last);
        let stride = self.cfg.checkpoint_stride;
        let prefix = self.block(j);
        let first = j * stride;
        let mut i =
            (((t - self.checkpoint_t(j)) / self.cfg.panel_width).floor() as usize).min(stride - 1);
        if i > 0 && t < self.panel_start(first + i) {
            i -= 1;
        } else if i + 1 < stride && t >= self.panel_start(first + i + 1) {
            i += 1;
        }
        let a = self.panel_start(first + i);
        Ok(f_j + prefix[i] + self.quad(a, t))
    }

    /// `∫_a^b |ζ(1/2 + it)|² dt = F(b) − F(a)`.
    pub fn segment_integral(&self, a: f64, b: f64) -> Result<f64> {
        if !(a >= 0.0) {
            return Err(domain("a", a, "0 <= a <= b"));
        }
        if !(b >= a) {
            return Err(domain("b", b, format!("b >= a = {a}")));
        }
        if a == b {
            return Ok(0.0);
        }
        Ok((self.integral(b)? - self.integral(a)?).max(0.0))
    }

    /// `R(T) = F(T) − T ln T − (2c − 1 − ln 2π) T`.
    pub fn r_term(&self, t: f64) -> Result<ErrorTermSample> {
        if !(t >= 1.0) {
            return Err(domain("T", t, "T >= 1"));
        }
        let r = self.integral(t)? - hl_main_term(t);
        Ok(ErrorTermSample {
            t,
            r,
            r_quarter_ratio: r.abs() / t.powf(0.25),
            r_third_ratio: r.abs() / t.cbrt(),
        })
    }

    /// The `x` with `F(x) = target`, for `0 ≤ target ≤ F(cached_max)`.
    ///
    /// Locates the checkpoint block and panel by binary search, then runs a
    /// bisection-safeguarded Newton iteration inside the panel, using
    /// `F' = |ζ|²`.
    pub fn solve_for(&self, target: f64) -> Result<f64> {
        let (j, f_j) = {
            let cps = self.checkpoints.read().unwrap();
            let last = cps.len() - 1;
            if !(target >= 0.0) {
                return Err(domain("target", target, "target >= 0"));
            }
            if target > cps[last] {
                return Err(domain(
                    "target",
                    target,
                    format!(
                        "target <= F({}) = {}; extend the cache first",
                        self.checkpoint_t(last),
                        cps[last]
                    ),
                ));
            }
            if target == cps[last] {
                return Ok(self.checkpoint_t(last));
            }
            // largest j with cps[j] <= target
            let j = cps.partition_point(|&f| f <= target) - 1;
            (j, cps[j])
        };
        let prefix = self.block(j);
        let stride = self.cfg.checkpoint_stride;
        let i = prefix[..stride].partition_point(|&p| f_j + p <= target) - 1;
        let base = f_j + prefix[i];
        let lo0 = self.panel_start(j * stride + i);
        let hi0 = self.panel_start(j * stride + i + 1);
        let panel = prefix[i + 1] - prefix[i];

        let residual = |x: f64| base + self.quad(lo0, x) - target;
        let (mut lo, mut hi) = (lo0, hi0);
        let mut x = if panel > 0.0 {
            lo0 + (hi0 - lo0) * ((target - base) / panel).clamp(0.0, 1.0)
        } else {
            0.5 * (lo0 + hi0)
        };
        for _ in 0..200 {
            let r = residual(x);
            if r == 0.0 {
                return Ok(x);
            }
            if r < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi.max(1.0) {
                return Ok(0.5 * (lo + hi));
            }
            let slope = self.engine.zeta_sq(x);
            let newton = x - r / slope;
            let next = if slope > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(1.0) {
                return Ok(next);
            }
            x = next;
        }
        Err(Error::Numerical {
            context: "solve_for",
            detail: format!("no convergence for F(x) = {target} in [{lo}, {hi}]"),
        })
    }

    fn append_lines(&self, lines: &[(f64, f64)]) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if lines.is_empty() {
            return Ok(());
        }
        let mut out = BufWriter::new(OpenOptions::new().append(true).open(path)?);
        for &(t, f) in lines {
            writeln!(out, "{}", format_line(t, f))?;
        }
        out.flush()?;
        Ok(())
    }

    fn write_file(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "{}", self.header())?;
        for (t, f) in self.checkpoints() {
            writeln!(out, "{}", format_line(t, f))?;
        }
        out.flush()?;
        Ok(())
    }

    fn read_file(&self, path: &Path) -> Result<Vec<f64>> {
        let corrupt = |line: usize, detail: String| Error::Corrupt {
            path: path.to_path_buf(),
            line,
            detail,
        };
        let reader = BufReader::new(File::open(path)?);
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| corrupt(1, "empty file".into()))??;
        let expected = self.header();
        if header.trim_end() != expected {
            if !header.starts_with(MAGIC) {
                return Err(corrupt(1, format!("missing {MAGIC} header")));
            }
            return Err(Error::FingerprintMismatch {
                path: path.to_path_buf(),
                expected,
                found: header,
            });
        }
        let mut values: Vec<f64> = Vec::new();
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let lineno = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<f64> {
                s.ok_or_else(|| corrupt(lineno, "expected `t F`".into()))?
                    .parse::<f64>()
                    .map_err(|e| corrupt(lineno, e.to_string()))
            };
            let t = parse(parts.next())?;
            let f = parse(parts.next())?;
            let j = values.len();
            if t != self.checkpoint_t(j) {
                return Err(corrupt(
                    lineno,
                    format!("checkpoint t = {t} is not {}", self.checkpoint_t(j)),
                ));
            }
            if j == 0 && f != 0.0 {
                return Err(corrupt(lineno, "first checkpoint must be (0, 0)".into()));
            }
            if let Some(&prev) = values.last() {
                if f < prev {
                    return Err(corrupt(lineno, format!("F decreases: {f} < {prev}")));
                }
            }
            values.push(f);
        }
        if values.is_empty() {
            return Err(corrupt(2, "no checkpoints".into()));
        }
        Ok(values)
    }
}

fn format_line(t: f64, f: f64) -> String {
    format!("{t:.16e} {f:.16e}")
}
