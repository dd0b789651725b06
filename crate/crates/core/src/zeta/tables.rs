//! Lookup tables for `ln n` and `n^{-1/2}`.

use std::sync::OnceLock;

const TABLE_LEN: usize = 1 << 16;

struct Tables {
    ln: Vec<f64>,
    rsqrt: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let ln = (0..TABLE_LEN)
            .map(|n| {
                if n == 0 {
                    f64::NEG_INFINITY
                } else {
                    (n as f64).ln()
                }
            })
            .collect();
        let rsqrt = (0..TABLE_LEN)
            .map(|n| {
                if n == 0 {
                    f64::INFINITY
                } else {
                    1.0 / (n as f64).sqrt()
                }
            })
            .collect();
        Tables { ln, rsqrt }
    })
}

#[inline]
pub(crate) fn ln_n(n: usize) -> f64 {
    if n < TABLE_LEN {
        tables().ln[n]
    } else {
        (n as f64).ln()
    }
}

#[inline]
pub(crate) fn rsqrt_n(n: usize) -> f64 {
    if n < TABLE_LEN {
        tables().rsqrt[n]
    } else {
        1.0 / (n as f64).sqrt()
    }
}

/// Borrow both tables for `1..=n` when `n` fits, for the hot Riemann–Siegel loop.
#[inline]
pub(crate) fn slices(n: usize) -> Option<(&'static [f64], &'static [f64])> {
    if n < TABLE_LEN {
        let t = tables();
        Some((&t.ln[1..=n], &t.rsqrt[1..=n]))
    } else {
        None
    }
}
