use std::sync::OnceLock;

use proptest::prelude::*;
use zeta_ladder::laws::{self, Verdict};
use zeta_ladder::ortho::iterate_forward;
use zeta_ladder::segments::h_limit;
use zeta_ladder::{CacheConfig, IntegralCache, Ladder, LadderConfig, SegmentChain, ZetaEngine};

fn cache() -> &'static IntegralCache {
    static CACHE: OnceLock<IntegralCache> = OnceLock::new();
    CACHE.get_or_init(|| {
        let c = IntegralCache::in_memory(CacheConfig::default(), ZetaEngine::default()).unwrap();
        c.extend_to(6e4).unwrap();
        c
    })
}

fn ladder() -> Ladder<'static> {
    Ladder::new(cache(), LadderConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chains_interleave_and_map_back(t in 1.5e3f64..3e4, h_frac in 0.001f64..1.0, k in 1usize..5) {
        let h = h_frac * h_limit(t);
        let l = ladder();
        let c = SegmentChain::build(&l, t, h, k).unwrap();
        prop_assert!(c.check().is_ok());
        let m = c.metrics();
        prop_assert!(m.measures.iter().all(|&x| x > 0.0));
        prop_assert!(m.gaps.iter().all(|&g| g > 0.0));
        // The k-fold forward image of the chain's far end is the near end.
        let (a, _) = iterate_forward(&l, c.left[k], k).unwrap();
        let (b, _) = iterate_forward(&l, c.right[k], k).unwrap();
        prop_assert!((a - t).abs() <= 1e-6 * t);
        prop_assert!((b - (t + h)).abs() <= 1e-6 * t);
    }

    #[test]
    fn theorem1_pass_is_monotone_in_depth(t in 5e3f64..2e4, hbar_frac in 0.3f64..1.0, n in 2usize..4) {
        let hbar = hbar_frac * h_limit(t);
        let l = ladder();
        let r = laws::theorem1_check(&l, t, hbar, n, 0.05, 0.15).unwrap();
        if r.verdict == Verdict::Pass {
            for m in 1..n {
                let shallow = laws::theorem1_check(&l, t, hbar, m, 0.05, 0.15).unwrap();
                prop_assert_eq!(shallow.verdict, Verdict::Pass);
            }
        }
    }

    // Windows much shorter than ~150 zero spacings see local swings of the mean
    // of |zeta|^2 well beyond the band, even where measure_n >= T^(1/3+eps)
    // (T = 15777, Hbar = 49 gives a first ratio of 1.263).
    #[test]
    fn cascade_ratios_stay_in_band(t in 2.5e4f64..5.5e4, hbar_frac in 0.0f64..1.0) {
        let hbar = 200.0 + hbar_frac * (h_limit(t) - 200.0);
        let c = SegmentChain::build(&ladder(), t, hbar, 3).unwrap();
        let m = c.metrics();
        if m.measures[3] >= laws::third_level(t, 0.05) {
            let band = 5.0 * zeta_ladder::constants::ONE_MINUS_GAMMA / t.ln();
            for r in 1..=3 {
                let q = m.measures[r] / m.measures[r - 1];
                prop_assert!((q - 1.0).abs() <= band, "ratio {q} at r = {r}, band {band}");
            }
        }
    }
}

#[test]
fn in_memory_and_reloaded_caches_agree_bitwise() {
    let dir = tempfile::TempDir::new().unwrap();
    let path = dir.path().join("c.zlcache");
    let a = IntegralCache::open(&path, CacheConfig::default(), ZetaEngine::default()).unwrap();
    a.extend_to(8e3).unwrap();
    let b = IntegralCache::open(&path, CacheConfig::default(), ZetaEngine::default()).unwrap();
    for t in [0.3, 77.7, 1234.5678, 7999.99] {
        assert_eq!(
            a.integral(t).unwrap().to_bits(),
            b.integral(t).unwrap().to_bits()
        );
        assert_eq!(
            a.integral(t).unwrap().to_bits(),
            cache().integral(t).unwrap().to_bits()
        );
    }
}
