//! Hardy's Z(t) on the critical line: both evaluation paths, and the zeros
//! below t = 100 counted by sign changes.

use zeta_ladder::ZetaEngine;

fn main() -> zeta_ladder::Result<()> {
    let engine = ZetaEngine::default();

    println!(
        "{:>10} {:>14} {:>20} {:>20} {:>10}",
        "t", "theta", "Z fast", "Z oracle", "|diff|"
    );
    for t in [50.0, 100.0, 1_000.0, 10_000.0, 100_000.0] {
        let fast = engine.z_fast(t)?;
        let oracle = engine.z_oracle(t);
        println!(
            "{t:>10} {:>14.6} {fast:>20.12} {oracle:>20.12} {:>10.2e}",
            engine.theta(t)?,
            (fast - oracle).abs()
        );
    }

    // Z is real with simple zeros at the ordinates of nontrivial zeros.
    let step = 0.01;
    let mut zeros = Vec::new();
    let mut prev = engine.z(step);
    for i in 2..=10_000 {
        let t = i as f64 * step;
        let z = engine.z(t);
        if z.signum() != prev.signum() {
            zeros.push(t - step / 2.0);
        }
        prev = z;
    }
    println!("\n{} zeros in (0, 100]; first few:", zeros.len());
    for t in zeros.iter().take(5) {
        println!("  {t:.2}");
    }

    let s = engine.sample(1e6);
    println!("\nat t = 1e6: Z = {:.9}, |zeta|^2 = {:.9}", s.z, s.zeta_sq);
    Ok(())
}
