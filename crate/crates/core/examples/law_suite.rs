//! Runs every law check at T = 10⁵ and prints one verdict per law, then the
//! full JSON report of the stabilization law.
//!
//! The first run builds the integral to about 1.2e5, which takes some seconds.

use zeta_ladder::laws;
use zeta_ladder::{CacheConfig, IntegralCache, Ladder, LadderConfig, ZetaEngine};

fn main() -> zeta_ladder::Result<()> {
    let cache = IntegralCache::in_memory(CacheConfig::default(), ZetaEngine::default())?;
    let ladder = Ladder::new(&cache, LadderConfig::default())?;
    let t = 1e5;

    let reports = vec![
        laws::theorem1_check(&ladder, t, 800.0, 2, 0.05, 0.1)?,
        laws::corollary1_check(&ladder, t, 0.05, 0.5, 3)?,
        laws::corollary2_check(&ladder, t, 0.05, 2.0, 5, 0.05, laws::COROLLARY2_A_DEFAULT)?,
        laws::lower_bound_check(&ladder, t, 100.0, 3)?,
        laws::lower_bound_check(&ladder, t, 1.0, 3000)?,
        laws::rh_bound_check(&ladder, t, 0.5, 3, laws::D_DEFAULT, 0.1)?,
        laws::bound_comparison_report(&[1e4, 1e5, 1e6], 0.5, 3, laws::D_DEFAULT)?,
    ];
    for r in &reports {
        println!(
            "{:<18} {:<13} {}",
            r.law_id,
            r.verdict.as_str(),
            r.notes.join("; ")
        );
    }

    println!("\n{}", reports[0].to_json());
    Ok(())
}
