//! A chain of reversely iterated segments [T⃗ʳ, (T+H)⃗ʳ]: measures, gaps
//! against (1 − c)T/ln T, and the CSV form.

use zeta_ladder::{CacheConfig, IntegralCache, Ladder, LadderConfig, SegmentChain, ZetaEngine};

fn main() -> zeta_ladder::Result<()> {
    let cache = IntegralCache::in_memory(CacheConfig::default(), ZetaEngine::default())?;
    let ladder = Ladder::new(&cache, LadderConfig::default())?;

    let (t, h, k) = (1e5, 100.0, 3);
    let chain = SegmentChain::build(&ladder, t, h, k)?;
    print!("{}", chain.to_csv());

    let m = chain.metrics();
    println!(
        "\ngap model (1-c)T/lnT = {:.6}, (1-c)li(T) = {:.6}",
        m.gap_model, m.gap_model_li
    );
    for (l, g) in m.gaps.iter().enumerate() {
        println!("  rho_{} / model = {:.6}", l + 1, g / m.gap_model);
    }

    // A small H is far more sensitive to the local size of |zeta|².
    let thin = SegmentChain::build(&ladder, t, 1.0, k)?;
    println!("\nH = 1 measures: {:?}", thin.metrics().measures);
    println!("T + 0.5 in Delta: {}", thin.in_delta(t + 0.5));
    Ok(())
}
