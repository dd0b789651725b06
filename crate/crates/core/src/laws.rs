//! Executable checks of the laws governing the measures of reversely
//! iterated segments.
//!
//! Each check builds the relevant chain and returns a [`LawReport`]. Two kinds
//! of law are distinguished:
//!
//! * asymptotic laws (`theorem1`): `ratios` are `observed / comparator` and the
//!   verdict is `pass` iff every ratio lies in `[1 − tolerance, 1 + tolerance]`;
//! * bound laws (everything else): `observed` and `comparator` hold natural
//!   logarithms, `ratios` hold log-slacks oriented so that a positive slack
//!   means the inequality holds, and `tolerance` is 0.
//!
//! Log space keeps bounds such as `(ln³T / 64T)^{k₀/3}` with `k₀ = 3000`
//! representable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::ladder::Ladder;
use crate::segments::{fmt17, h_limit, SegmentChain};

/// Default `A` for the drop threshold `A · T^{1/3+ε}` in [`corollary2_check`].
pub const COROLLARY2_A_DEFAULT: f64 = 0.9;

/// Default `D` of the conditional bound.
pub const D_DEFAULT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Named {
    pub name: String,
    pub value: f64,
}

fn named(name: impl Into<String>, value: f64) -> Named {
    Named {
        name: name.into(),
        value,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub law_id: String,
    pub inputs: BTreeMap<String, f64>,
    pub observed: Vec<Named>,
    pub comparator: Vec<Named>,
    pub ratios: Vec<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl LawReport {
    fn new(law_id: &str, tolerance: f64) -> Self {
        Self {
            law_id: law_id.to_string(),
            inputs: BTreeMap::new(),
            observed: Vec::new(),
            comparator: Vec::new(),
            ratios: Vec::new(),
            tolerance,
            verdict: Verdict::Inconclusive,
            notes: Vec::new(),
        }
    }

    fn input(&mut self, name: &str, value: f64) -> &mut Self {
        self.inputs.insert(name.to_string(), value);
        self
    }

    fn ratio_pair(
        &mut self,
        name: String,
        observed: f64,
        comparator: f64,
        comparator_name: String,
    ) {
        self.observed.push(named(name, observed));
        self.comparator.push(named(comparator_name, comparator));
        self.ratios.push(observed / comparator);
    }

    /// Records `ln lower < ln upper` as a bound pair with slack `ln upper − ln lower`.
    fn bound_pair(&mut self, observed: Named, comparator: Named, observed_is_upper: bool) {
        let slack = if observed_is_upper {
            observed.value - comparator.value
        } else {
            comparator.value - observed.value
        };
        self.observed.push(observed);
        self.comparator.push(comparator);
        self.ratios.push(slack);
    }

    fn ratios_within_tolerance(&self) -> bool {
        self.ratios
            .iter()
            .all(|r| (1.0 - self.tolerance..=1.0 + self.tolerance).contains(r))
    }

    fn slacks_positive(&self) -> bool {
        self.ratios.iter().all(|&s| s > 0.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("law reports serialize")
    }

    /// Flat CSV: `law_id,section,name,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("law_id,section,name,value\n");
        let id = &self.law_id;
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{id},input,{k},{}", fmt17(*v));
        }
        for n in &self.observed {
            let _ = writeln!(out, "{id},observed,{},{}", n.name, fmt17(n.value));
        }
        for n in &self.comparator {
            let _ = writeln!(out, "{id},comparator,{},{}", n.name, fmt17(n.value));
        }
        for (i, r) in self.ratios.iter().enumerate() {
            let _ = writeln!(out, "{id},ratio,{i},{}", fmt17(*r));
        }
        let _ = writeln!(out, "{id},tolerance,tolerance,{}", fmt17(self.tolerance));
        let _ = writeln!(out, "{id},verdict,verdict,{}", self.verdict.as_str());
        out
    }
}

/// `T^{1/3 + ε}`.
pub fn third_level(t: f64, eps: f64) -> f64 {
    t.powf(1.0 / 3.0 + eps)
}

fn check_depth(ladder: &Ladder<'_>, what: &'static str, n: usize) -> Result<()> {
    let k0 = ladder.config().k0;
    if n == 0 || n > k0 {
        return Err(domain(what, n as f64, format!("1 <= {what} <= k0 = {k0}")));
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 2.0 / 3.0) {
        return Err(domain("eps", eps, "0 < eps < 2/3"));
    }
    Ok(())
}

/// Stabilization of measures: if `|[T⃗ⁿ, (T+H̄)⃗ⁿ]| ≥ T^{1/3+ε}` then the
/// measure is asymptotically `H̄`.
///
/// Records the cascade `measure[r] / measure[r−1]` for `r = 1..=n` followed by
/// `measure[n] / H̄`. An unmet hypothesis gives `inconclusive`.
pub fn theorem1_check(
    ladder: &Ladder<'_>,
    t: f64,
    hbar: f64,
    n: usize,
    eps: f64,
    tol: f64,
) -> Result<LawReport> {
    check_depth(ladder, "n", n)?;
    check_eps(eps)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(domain("tol", tol, "0 < tol < 1"));
    }
    let chain = SegmentChain::build(ladder, t, hbar, n)?;
    let m = chain.metrics();
    let level = third_level(t, eps);

    let mut report = LawReport::new("theorem1", tol);
    report
        .input("T", t)
        .input("Hbar", hbar)
        .input("n", n as f64)
        .input("eps", eps);
    for r in 1..=n {
        report.ratio_pair(
            format!("measure_{r}"),
            m.measures[r],
            m.measures[r - 1],
            format!("measure_{}", r - 1),
        );
    }
    report.ratio_pair(format!("measure_{n}"), m.measures[n], hbar, "Hbar".into());
    report.notes.extend(chain.warnings.iter().cloned());

    let hypothesis = m.measures[n] >= level;
    report.notes.push(format!(
        "hypothesis measure_{n} = {} {} T^(1/3+eps) = {}",
        m.measures[n],
        if hypothesis { ">=" } else { "<" },
        level
    ));
    report.verdict = if !hypothesis {
        Verdict::Inconclusive
    } else if report.ratios_within_tolerance() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

/// With `H₁ = A(T) T^{1/3+ε}`, `0 < A(T) < 1`, every measure for
/// `k = 1..=k_max` stays below `T^{1/3+ε}`.
pub fn corollary1_check(
    ladder: &Ladder<'_>,
    t: f64,
    eps: f64,
    a_of_t: f64,
    k_max: usize,
) -> Result<LawReport> {
    if !(a_of_t > 0.0 && a_of_t < 1.0) {
        return Err(domain("A(T)", a_of_t, "0 < A(T) < 1"));
    }
    check_eps(eps)?;
    check_depth(ladder, "k_max", k_max)?;
    let level = third_level(t, eps);
    let h1 = a_of_t * level;
    let chain = SegmentChain::build(ladder, t, h1, k_max)?;
    let m = chain.metrics();

    let mut report = LawReport::new("corollary1", 0.0);
    report
        .input("T", t)
        .input("eps", eps)
        .input("A", a_of_t)
        .input("H1", h1)
        .input("k_max", k_max as f64);
    for k in 1..=k_max {
        report.bound_pair(
            named(format!("ln_measure_{k}"), m.measures[k].ln()),
            named("ln_level", level.ln()),
            false,
        );
    }
    report.notes.extend(chain.warnings.iter().cloned());
    report.verdict = if report.slacks_positive() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

/// Scan of a measure sequence `measures[0..=k_max]` for the drop index `n`
/// (first `n ≥ 1` with `measures[n] < a · level`) and the verdict on
/// re-crossings of `level` after it.
///
/// No drop, or a drop only at the last index, is `inconclusive`.
pub fn corollary2_verdict(measures: &[f64], level: f64, a: f64) -> (Option<usize>, Verdict) {
    let k_max = measures.len().saturating_sub(1);
    let drop = (1..=k_max).find(|&k| measures[k] < a * level);
    match drop {
        Some(n) if n < k_max => {
            let stays_below = measures[n + 1..].iter().all(|&m| m < level);
            (
                Some(n),
                if stays_below {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
            )
        }
        other => (other, Verdict::Inconclusive),
    }
}

/// With `H₂ = B(T) T^{1/3+ε}`, `B(T) > 1`: once some measure drops below
/// `A · T^{1/3+ε}`, no later measure climbs back over `T^{1/3+ε}`.
///
/// `tol` sets the band `[(1 − tol), (1 + tol)] · T^{1/3+ε}` around the level;
/// entries into it after the drop are reported in the notes.
pub fn corollary2_check(
    ladder: &Ladder<'_>,
    t: f64,
    eps: f64,
    b_of_t: f64,
    k_max: usize,
    tol: f64,
    a_default: f64,
) -> Result<LawReport> {
    if !(b_of_t > 1.0) {
        return Err(domain("B(T)", b_of_t, "B(T) > 1"));
    }
    if !(a_default > 0.0 && a_default < 1.0) {
        return Err(domain("A", a_default, "0 < A < 1"));
    }
    check_eps(eps)?;
    check_depth(ladder, "k_max", k_max)?;
    let level = third_level(t, eps);
    let h2 = b_of_t * level;
    let chain = SegmentChain::build(ladder, t, h2, k_max)?;
    let m = chain.metrics();

    let mut report = LawReport::new("corollary2", 0.0);
    report
        .input("T", t)
        .input("eps", eps)
        .input("B", b_of_t)
        .input("H2", h2)
        .input("A", a_default)
        .input("band_tol", tol)
        .input("k_max", k_max as f64);
    let (drop, verdict) = corollary2_verdict(&m.measures, level, a_default);
    match drop {
        Some(n) => {
            report.input("n", n as f64);
            for k in n + 1..=k_max {
                report.bound_pair(
                    named(format!("ln_measure_{k}"), m.measures[k].ln()),
                    named("ln_level", level.ln()),
                    false,
                );
                let ratio = m.measures[k] / level;
                if (1.0 - tol..=1.0 + tol).contains(&ratio) {
                    report.notes.push(format!(
                        "measure_{k} enters the band around the level (ratio {ratio})"
                    ));
                }
            }
        }
        None => report.notes.push(format!(
            "no measure drops below A T^(1/3+eps) = {}; premise unmet",
            a_default * level
        )),
    }
    report.notes.extend(chain.warnings.iter().cloned());
    report.verdict = verdict;
    Ok(report)
}

/// `ln[(ln³T / 64T)^{k₀/3} H]`.
pub fn unconditional_bound_ln(t: f64, h: f64, k0: usize) -> f64 {
    let ln_t = t.ln();
    k0 as f64 / 3.0 * (3.0 * ln_t.ln() - 64f64.ln() - ln_t) + h.ln()
}

/// `ln[H T^{−2 k₀ D / ln ln T}]`.
pub fn conditional_bound_ln(t: f64, h: f64, k0: usize, d: f64) -> f64 {
    let ln_t = t.ln();
    h.ln() - 2.0 * k0 as f64 * d * ln_t / ln_t.ln()
}

/// Whether the conditional bound is at least the unconditional one for the
/// same `H`, in which case a conditional pass implies an unconditional pass.
pub fn conditional_dominates(t: f64, k0: usize, d: f64) -> bool {
    conditional_bound_ln(t, 1.0, k0, d) >= unconditional_bound_ln(t, 1.0, k0)
}

/// Unconditional lower bound `|[T⃗ᵏ, (T+H)⃗ᵏ]| > (ln³T / 64T)^{k₀/3} H` for
/// `k = 1..=k₀`.
///
/// The comparison is made in log space. Depths beyond the ladder's `k0` are
/// not built; the bound is then checked for the built depths only and the
/// truncation is noted.
///
/// The bound is derived from `|ζ(1/2+it)|² < 2T^{1/3}` on `Δ(T, H, k₀)`, which
/// holds only for large `T`. A violated bound together with a sampled
/// `|ζ|²` above that envelope is `inconclusive`, not `fail`.
pub fn lower_bound_check(ladder: &Ladder<'_>, t: f64, h: f64, k0: usize) -> Result<LawReport> {
    if k0 == 0 {
        return Err(domain("k0", 0.0, "k0 >= 1"));
    }
    if !(h > 0.0 && h <= h_limit(t)) {
        return Err(domain(
            "H",
            h,
            format!("0 < H <= 0.1 T/ln T = {}", h_limit(t)),
        ));
    }
    let depth = k0.min(ladder.config().k0);
    let chain = SegmentChain::build(ladder, t, h, depth)?;
    let m = chain.metrics();
    let ln_bound = unconditional_bound_ln(t, h, k0);

    let mut report = LawReport::new("lower_bound", 0.0);
    report
        .input("T", t)
        .input("H", h)
        .input("k0", k0 as f64)
        .input("k_checked", depth as f64);
    for k in 1..=depth {
        report.bound_pair(
            named(format!("ln_measure_{k}"), m.measures[k].ln()),
            named("ln_bound", ln_bound),
            true,
        );
    }
    if depth < k0 {
        report.notes.push(format!(
            "bound exponent uses k0 = {k0}; measures checked for k = 1..={depth}"
        ));
    }
    let min_slack = report.ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    report.notes.push(format!(
        "smallest slack factor 10^{:.3}",
        min_slack / std::f64::consts::LN_10
    ));
    report.notes.extend(chain.warnings.iter().cloned());

    let envelope = 2.0 * t.cbrt();
    let peak = peak_zeta_sq(ladder, &chain);
    report.input("max_zeta_sq_on_delta", peak);
    report.input("zeta_sq_envelope", envelope);
    let premise = peak < envelope;
    if !premise {
        report.notes.push(format!(
            "premise |zeta|^2 < 2 T^(1/3) = {envelope} on Delta unmet: sampled maximum {peak}"
        ));
    }
    report.verdict = if report.slacks_positive() {
        Verdict::Pass
    } else if premise {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

/// Largest sampled `|ζ(1/2+it)|²` over the segments of a chain.
fn peak_zeta_sq(ladder: &Ladder<'_>, chain: &SegmentChain) -> f64 {
    const MAX_STEP: f64 = 0.02;
    let engine = ladder.cache().engine();
    let mut peak = 0.0f64;
    for (&a, &b) in chain.left.iter().zip(&chain.right) {
        let n = (((b - a) / MAX_STEP).ceil() as usize).max(64);
        for i in 0..=n {
            peak = peak.max(engine.zeta_sq(a + (b - a) * i as f64 / n as f64));
        }
    }
    peak
}

/// Conditional lower bound `|[T⃗ᵏ, (T+H)⃗ᵏ]| > H T^{−2k₀D/ln ln T}` with
/// `H = T^Δ`, plus the form `|[T⃗ᵏ, (T+H)⃗ᵏ]| > T^{Δ − δ}` with `δ = delta_slack`.
pub fn rh_bound_check(
    ladder: &Ladder<'_>,
    t: f64,
    delta: f64,
    k0: usize,
    d: f64,
    delta_slack: f64,
) -> Result<LawReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain("Delta", delta, "0 < Delta < 1"));
    }
    if !(d > 0.0) {
        return Err(domain("D", d, "D > 0"));
    }
    if !(delta_slack > 0.0) {
        return Err(domain("delta_slack", delta_slack, "delta_slack > 0"));
    }
    check_depth(ladder, "k0", k0)?;
    let h = t.powf(delta);
    let chain = SegmentChain::build(ladder, t, h, k0)?;
    let m = chain.metrics();
    let ln_bound = conditional_bound_ln(t, h, k0, d);
    let ln_power = (delta - delta_slack) * t.ln();

    let mut report = LawReport::new("rh_bound", 0.0);
    report
        .input("T", t)
        .input("Delta", delta)
        .input("H", h)
        .input("k0", k0 as f64)
        .input("D", d)
        .input("delta_slack", delta_slack);
    for k in 1..=k0 {
        report.bound_pair(
            named(format!("ln_measure_{k}"), m.measures[k].ln()),
            named("ln_bound", ln_bound),
            true,
        );
    }
    for k in 1..=k0 {
        report.bound_pair(
            named(format!("ln_measure_{k}"), m.measures[k].ln()),
            named("ln_T_pow_delta_minus_slack", ln_power),
            true,
        );
    }
    report.notes.extend(chain.warnings.iter().cloned());
    report.verdict = if report.slacks_positive() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

/// One row of the unconditional-versus-conditional comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    pub t: f64,
    /// `ln[(¼ ln T)^{k₀} T^{Δ − k₀/3}]`.
    pub ln_unconditional: f64,
    /// `ln[T^{Δ − 2k₀D/ln ln T}]`.
    pub ln_conditional: f64,
}

pub fn bound_rows(t_list: &[f64], delta: f64, k0: usize, d: f64) -> Vec<BoundRow> {
    t_list
        .iter()
        .map(|&t| {
            let ln_t = t.ln();
            BoundRow {
                t,
                ln_unconditional: k0 as f64 * (0.25 * ln_t).ln() + (delta - k0 as f64 / 3.0) * ln_t,
                ln_conditional: conditional_bound_ln(t, t.powf(delta), k0, d),
            }
        })
        .collect()
}

/// Side-by-side tabulation of the two lower bounds for `H = T^Δ`.
///
/// Flags the case `Δ − k₀/3 < 0`, where the unconditional bound decays
/// with `T`. The verdict is always `pass`: nothing is being tested.
pub fn bound_comparison_report(t_list: &[f64], delta: f64, k0: usize, d: f64) -> Result<LawReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain("Delta", delta, "0 < Delta < 1"));
    }
    if k0 == 0 {
        return Err(domain("k0", 0.0, "k0 >= 1"));
    }
    if !(d > 0.0) {
        return Err(domain("D", d, "D > 0"));
    }
    if let Some(&bad) = t_list.iter().find(|&&t| !(t > std::f64::consts::E)) {
        return Err(domain("T", bad, "T > e"));
    }
    let exponent = delta - k0 as f64 / 3.0;
    let mut report = LawReport::new("bound_comparison", 0.0);
    report
        .input("Delta", delta)
        .input("k0", k0 as f64)
        .input("D", d)
        .input("unconditional_exponent", exponent)
        .input(
            "unconditional_trivial",
            if exponent < 0.0 { 1.0 } else { 0.0 },
        );
    for row in bound_rows(t_list, delta, k0, d) {
        report.observed.push(named(
            format!("ln_unconditional@{}", row.t),
            row.ln_unconditional,
        ));
        report.comparator.push(named(
            format!("ln_conditional@{}", row.t),
            row.ln_conditional,
        ));
        report
            .ratios
            .push(row.ln_unconditional - row.ln_conditional);
    }
    if exponent < 0.0 {
        report.notes.push(format!(
            "Delta - k0/3 = {exponent} < 0: the unconditional bound tends to 0"
        ));
    }
    report.verdict = Verdict::Pass;
    Ok(report)
}
