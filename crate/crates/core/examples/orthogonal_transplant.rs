//! The sine system f_n(u) = sin(nπu/2l) transplanted onto [T⃗ᵏ, (T+2l)⃗ᵏ]
//! stays orthogonal under the weight ∏ Z̃²[φ₁ʳ(t)].

use zeta_ladder::ortho::{gram_matrix, iterate_forward};
use zeta_ladder::{CacheConfig, IntegralCache, Ladder, LadderConfig, OrthoConfig, ZetaEngine};

fn main() -> zeta_ladder::Result<()> {
    let cache = IntegralCache::in_memory(CacheConfig::default(), ZetaEngine::default())?;
    let ladder = Ladder::new(&cache, LadderConfig::default())?;
    let t = 1e4;

    for k in [1, 2] {
        let cfg = OrthoConfig {
            k,
            ..OrthoConfig::default()
        };
        let g = gram_matrix(&ladder, t, &cfg)?;
        println!(
            "k = {k}: interval [{:.6}, {:.6}], max |G - l I| = {:.3e} (tolerance {:.3e})",
            g.interval.0,
            g.interval.1,
            g.max_deviation(),
            g.tolerance()
        );
        for row in &g.values {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.8}")).collect();
            println!("   {}", cells.join(" "));
        }
        let (a, b) = g.interval;
        let (ua, _) = iterate_forward(&ladder, a, k)?;
        let (ub, _) = iterate_forward(&ladder, b, k)?;
        println!("   endpoints map to [{ua:.9}, {ub:.9}]\n");
    }
    Ok(())
}
