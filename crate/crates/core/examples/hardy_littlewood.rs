//! F(T) = ∫₀ᵀ |ζ(1/2+it)|² dt against the main term T ln(T/2π) + (2c − 1)T,
//! and the error term R(T) measured against T^{1/4} and T^{1/3}.
//!
//! Pass a file path to persist the cache between runs.

use zeta_ladder::integral::hl_main_term;
use zeta_ladder::{CacheConfig, IntegralCache, ZetaEngine};

fn main() -> zeta_ladder::Result<()> {
    let cfg = CacheConfig::default();
    let cache = match std::env::args().nth(1) {
        Some(path) => IntegralCache::open(path, cfg, ZetaEngine::default())?,
        None => IntegralCache::in_memory(cfg, ZetaEngine::default())?,
    };
    println!("{}", cache.header());

    cache.extend_to(1e5)?;
    println!("cached to t = {}", cache.cached_max());

    println!(
        "\n{:>8} {:>22} {:>22} {:>12} {:>9} {:>9}",
        "T", "F(T)", "main term", "R(T)", "R/T^1/4", "R/T^1/3"
    );
    for t in [1e3, 3e3, 1e4, 3e4, 1e5] {
        let s = cache.r_term(t)?;
        println!(
            "{t:>8} {:>22.10} {:>22.10} {:>12.5} {:>9.4} {:>9.4}",
            cache.integral(t)?,
            hl_main_term(t),
            s.r,
            s.r_quarter_ratio,
            s.r_third_ratio
        );
    }

    let (a, b) = (50_000.0, 50_010.0);
    println!(
        "\n∫ over [{a}, {b}] = {:.12} (mean |zeta|^2 {:.6})",
        cache.segment_integral(a, b)?,
        cache.segment_integral(a, b)? / (b - a)
    );
    Ok(())
}
