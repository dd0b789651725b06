//! Chains of reversely iterated segments `[T⃗ʳ, (T+H)⃗ʳ]`, `r = 0..k`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::constants::{gap_model, log_integral, ONE_MINUS_GAMMA};
use crate::error::{domain, Error, Result};
use crate::ladder::Ladder;

/// Upper guard standing in for `H = o(T / ln T)`.
pub const H_GUARD: f64 = 0.1;

/// `H_GUARD · T / ln T`.
pub fn h_limit(t: f64) -> f64 {
    H_GUARD * t / t.ln()
}

/// The segments `[left[r], right[r]]` for `r = 0..=k`. Their union is the
/// disconnected set `Δ(T, H, k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentChain {
    pub t: f64,
    pub h: f64,
    pub k: usize,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    /// Non-fatal remarks, e.g. `H` above the `o(T / ln T)` guard.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainMetrics {
    /// `right[r] − left[r]` for `r = 0..=k`.
    pub measures: Vec<f64>,
    /// `ρ_l = left[l] − right[l − 1]` for `l = 1..=k`.
    pub gaps: Vec<f64>,
    /// `(1 − c) T / ln T`.
    pub gap_model: f64,
    /// `(1 − c) li(T)`, for reporting only.
    pub gap_model_li: f64,
}

impl SegmentChain {
    pub fn build(ladder: &Ladder<'_>, t: f64, h: f64, k: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(domain("H", h, "H > 0"));
        }
        let mut warnings = Vec::new();
        if h > h_limit(t) {
            warnings.push(format!(
                "H = {h} exceeds {H_GUARD} T/ln T = {:.6}; o(T/ln T) regime not represented",
                h_limit(t)
            ));
        }
        let left = ladder.reverse_iterates(t, k)?;
        let right = ladder.reverse_iterates(t + h, k)?;
        let chain = Self {
            t,
            h,
            k,
            left,
            right,
            warnings,
        };
        chain.check()?;
        Ok(chain)
    }

    /// Positive measures and strict interleaving `right[r] < left[r + 1]`.
    pub fn check(&self) -> Result<()> {
        for r in 0..=self.k {
            if !(self.left[r] < self.right[r]) {
                return Err(Error::Invariant(format!(
                    "segment {r} is empty: [{}, {}]",
                    self.left[r], self.right[r]
                )));
            }
            if r < self.k && !(self.right[r] < self.left[r + 1]) {
                return Err(Error::Invariant(format!(
                    "ordering violated: right[{r}] = {} >= left[{}] = {}",
                    self.right[r],
                    r + 1,
                    self.left[r + 1]
                )));
            }
        }
        Ok(())
    }

    pub fn segment_count(&self) -> usize {
        self.k + 1
    }

    pub fn metrics(&self) -> ChainMetrics {
        let measures = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| r - l)
            .collect();
        let gaps = (1..=self.k)
            .map(|l| self.left[l] - self.right[l - 1])
            .collect();
        ChainMetrics {
            measures,
            gaps,
            gap_model: gap_model(self.t),
            gap_model_li: ONE_MINUS_GAMMA * log_integral(self.t),
        }
    }

    /// Whether `tau ∈ Δ(T, H, k)`.
    pub fn in_delta(&self, tau: f64) -> bool {
        self.left
            .iter()
            .zip(&self.right)
            .any(|(&l, &r)| l <= tau && tau <= r)
    }

    /// The same chain cut back to depth `k`.
    pub fn truncated(&self, k: usize) -> Self {
        let k = k.min(self.k);
        Self {
            t: self.t,
            h: self.h,
            k,
            left: self.left[..=k].to_vec(),
            right: self.right[..=k].to_vec(),
            warnings: self.warnings.clone(),
        }
    }

    /// CSV with header `r,left,right,measure,gap`; the gap column of `r = 0`
    /// is empty.
    pub fn to_csv(&self) -> String {
        let m = self.metrics();
        let mut out = String::from("r,left,right,measure,gap\n");
        for r in 0..=self.k {
            let gap = if r == 0 {
                String::new()
            } else {
                fmt17(m.gaps[r - 1])
            };
            let _ = writeln!(
                out,
                "{r},{},{},{},{gap}",
                fmt17(self.left[r]),
                fmt17(self.right[r]),
                fmt17(m.measures[r])
            );
        }
        out
    }
}

/// 17 significant digits, round-trip exact.
pub(crate) fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use super::*;
    use crate::integral::{CacheConfig, IntegralCache};
    use crate::ladder::LadderConfig;
    use crate::zeta::ZetaEngine;

    fn cache() -> &'static IntegralCache {
        static CACHE: OnceLock<IntegralCache> = OnceLock::new();
        CACHE.get_or_init(|| {
            IntegralCache::in_memory(CacheConfig::default(), ZetaEngine::default()).unwrap()
        })
    }

    fn ladder() -> Ladder<'static> {
        Ladder::new(cache(), LadderConfig::default()).unwrap()
    }

    #[test]
    fn single_step_ordering() {
        let c = SegmentChain::build(&ladder(), 1e4, 10.0, 1).unwrap();
        assert_eq!(c.left[0], 1e4);
        assert_eq!(c.right[0], 1e4 + 10.0);
        assert!(c.right[1] > c.left[1] && c.left[1] > c.right[0]);
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn metrics_contract() {
        let c = SegmentChain::build(&ladder(), 5000.0, 25.0, 3).unwrap();
        let m = c.metrics();
        assert_eq!(m.measures[0], 25.0);
        assert_eq!(m.measures.len(), 4);
        assert_eq!(m.gaps.len(), 3);
        assert!(m.gaps.iter().all(|&g| g > 0.0));
        for g in &m.gaps {
            assert!((0.6..=1.4).contains(&(g / m.gap_model)));
        }
    }

    #[test]
    fn endpoint_images_step_down_the_chain() {
        let l = ladder();
        let c = SegmentChain::build(&l, 4000.0, 7.5, 2).unwrap();
        for r in 1..=2 {
            assert!((l.phi1_value(c.left[r]).unwrap() - c.left[r - 1]).abs() <= 1e-6 * c.t);
            assert!((l.phi1_value(c.right[r]).unwrap() - c.right[r - 1]).abs() <= 1e-6 * c.t);
        }
    }

    #[test]
    fn membership() {
        let c = SegmentChain::build(&ladder(), 3000.0, 5.0, 2).unwrap();
        assert!(c.in_delta(3000.0));
        assert!(c.in_delta(c.right[2]));
        assert!(!c.in_delta(0.5 * (c.right[0] + c.left[1])));
        assert!(!c.in_delta(2999.0));
    }

    #[test]
    fn truncation_is_prefix_of_shallower_build() {
        let l = ladder();
        let deep = SegmentChain::build(&l, 2000.0, 3.0, 3).unwrap();
        let shallow = SegmentChain::build(&l, 2000.0, 3.0, 2).unwrap();
        assert_eq!(deep.truncated(2), shallow);
    }

    #[test]
    fn oversized_h_warns_but_builds() {
        let c = SegmentChain::build(&ladder(), 2000.0, 40.0, 1).unwrap();
        assert_eq!(c.warnings.len(), 1);
        assert!(SegmentChain::build(&ladder(), 2000.0, 0.0, 1).is_err());
    }

    #[test]
    fn check_detects_overlap() {
        let mut c = SegmentChain::build(&ladder(), 2000.0, 3.0, 1).unwrap();
        c.right[0] = c.left[1] + 1.0;
        assert!(matches!(c.check(), Err(Error::Invariant(_))));
    }

    #[test]
    fn csv_shape() {
        let c = SegmentChain::build(&ladder(), 2500.0, 2.0, 2).unwrap();
        let csv = c.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "r,left,right,measure,gap");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].ends_with(','));
        let first: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(first[1].parse::<f64>().unwrap(), 2500.0);
    }
}
