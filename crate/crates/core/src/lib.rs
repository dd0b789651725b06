//! Jacob's ladders on the critical line.
//!
//! The ladder `φ₁` is defined by the almost-exact second-moment equation
//!
//! ```text
//! ∫₀ᵀ |ζ(1/2 + it)|² dt = φ₁(T) ln φ₁(T) + (c − ln 2π) φ₁(T) + c₀,
//! ```
//!
//! and its reverse iterates `φ₁(T⃗ᵏ) = T⃗ᵏ⁻¹` generate chains of segments
//! `[T⃗ʳ, (T+H)⃗ʳ]`. This crate computes those chains at desk scale and checks
//! the laws governing their lengths.
//!
//! Layers, bottom-up:
//!
//! * [`zeta`]: `ϑ(t)`, Hardy's `Z(t)` and `|ζ(1/2+it)|²`.
//! * [`integral`]: the Hardy–Littlewood integral `F(T)` with an on-disk checkpoint cache.
//! * [`ladder`]: `φ₁`, its derivative, and reverse iteration.
//! * [`segments`]: chains of reversely iterated segments and their metrics.
//! * [`laws`]: executable checks producing [`laws::LawReport`]s.
//! * [`ortho`]: weighted orthogonality of transplanted sine systems.
//! * [`cli`]: the `zl` command-line surface.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constants;
mod error;
pub mod integral;
pub mod ladder;
pub mod laws;
pub mod ortho;
pub mod quadrature;
pub mod segments;
pub mod zeta;

pub use error::{Error, Result};
pub use integral::{CacheConfig, ErrorTermSample, IntegralCache};
pub use ladder::{Ladder, LadderConfig, LadderPoint};
pub use laws::{LawReport, Verdict};
pub use ortho::OrthoConfig;
pub use segments::{ChainMetrics, SegmentChain};
pub use zeta::{CriticalLineSample, EngineConfig, ZetaEngine};
