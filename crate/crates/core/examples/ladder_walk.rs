//! The ladder φ₁ from its defining equation F(T) = G(φ₁(T)), its derivative,
//! and the reverse iterates T⃗ᵏ with φ₁(T⃗ᵏ) = T⃗ᵏ⁻¹.

use zeta_ladder::{CacheConfig, IntegralCache, Ladder, LadderConfig, ZetaEngine};

fn main() -> zeta_ladder::Result<()> {
    let cache = IntegralCache::in_memory(CacheConfig::default(), ZetaEngine::default())?;
    let ladder = Ladder::new(&cache, LadderConfig::default())?;

    println!(
        "{:>8} {:>18} {:>12} {:>10} {:>12}",
        "T", "phi1(T)", "T - phi1", "omega", "phi1'"
    );
    for t in [1e3, 1e4, 5e4, 1e5] {
        let p = ladder.phi1(t)?;
        let residual = (ladder.g(p.phi1)? - cache.integral(t)?).abs() / cache.integral(t)?;
        println!(
            "{t:>8} {:>18.9} {:>12.6} {:>10.6} {:>12.6}   residual {residual:.1e}",
            p.phi1,
            t - p.phi1,
            p.omega,
            p.phi1_prime
        );
    }

    let t = 2e4;
    let iterates = ladder.reverse_iterates(t, 5)?;
    println!("\nreverse iterates of T = {t}:");
    for (k, x) in iterates.iter().enumerate() {
        let back = if k == 0 {
            f64::NAN
        } else {
            ladder.phi1_value(*x)?
        };
        println!("  k = {k}: {x:>18.9}   phi1 = {back:.9}");
    }
    Ok(())
}
