//! The `zl` command line.
//!
//! Results go to stdout and are a pure function of the arguments and the
//! cache file; timings and warnings go to stderr.
//!
//! Exit codes: 0 success or `pass`, 1 `fail`, 2 usage or precondition error
//! (including a cache fingerprint mismatch), 3 I/O error or unreadable cache,
//! 4 `inconclusive`.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::integral::{CacheConfig, IntegralCache};
use crate::ladder::{Ladder, LadderConfig};
use crate::laws::{self, LawReport, Verdict, COROLLARY2_A_DEFAULT};
use crate::ortho::{gram_matrix, OrthoConfig};
use crate::segments::{fmt17, SegmentChain};
use crate::zeta::{EngineConfig, ZetaEngine};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, env = "ZL_CACHE_PATH", default_value = "zl.cache")]
    pub cache_path: PathBuf,
    #[arg(long, global = true, default_value_t = 1e4)]
    pub t: f64,
    #[arg(long, global = true, default_value_t = 10.0)]
    pub h: f64,
    #[arg(long, global = true, default_value_t = 2)]
    pub k: usize,
    #[arg(long, global = true, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, global = true, default_value_t = 0.5)]
    pub delta: f64,
    #[arg(long, global = true, default_value_t = laws::D_DEFAULT)]
    pub d_const: f64,
    #[arg(long, global = true, default_value_t = 0.0)]
    pub c0: f64,
    #[arg(long, global = true, default_value_t = 1000.0)]
    pub t_min: f64,
    #[arg(long, global = true, env = "ZL_PANEL_WIDTH", default_value_t = 0.25)]
    pub panel_width: f64,
    #[arg(long, global = true, env = "ZL_GL_ORDER", default_value_t = 8)]
    pub gl_order: usize,
    #[arg(long, global = true, default_value_t = 30.0)]
    pub crossover: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(
    name = "zl",
    version,
    about = "Jacob's ladders and reversely iterated segments"
)]
pub struct Cli {
    #[command(flatten)]
    pub cfg: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Manage the integral cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// φ₁(T), φ₁′(T), ω(T) and the reverse step at --t.
    Ladder,
    /// The chain of reversely iterated segments for --t, --h, --k.
    Chain,
    /// Run one law check.
    Law(LawArgs),
    /// Weighted Gram matrix of the transplanted sine system.
    Ortho {
        #[arg(long, default_value_t = std::f64::consts::PI)]
        l: f64,
        #[arg(long = "nmax", default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 64)]
        quad_points: usize,
    },
    /// The error term R(T) against T^(1/4) and T^(1/3).
    Rterm {
        #[arg(long, value_delimiter = ',', required = true)]
        t_list: Vec<f64>,
    },
    /// Compare the fast Z(t) against the oracle at seeded random heights.
    EngineCheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 50.0)]
        from: f64,
        #[arg(long, default_value_t = 1e4)]
        to: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Extend the cache to cover [0, --to].
    Extend {
        #[arg(long)]
        to: f64,
    },
    /// Print the cache header and range.
    Info,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum LawId {
    Theorem1,
    Corollary1,
    Corollary2,
    LowerBound,
    RhBound,
    BoundComparison,
}

#[derive(Debug, Args)]
pub struct LawArgs {
    #[arg(value_enum)]
    pub id: LawId,
    /// Depth n of the theorem1 hypothesis.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub tol: f64,
    /// A(T) of corollary1.
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
    /// B(T) of corollary2.
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    /// Drop threshold A of corollary2.
    #[arg(long, default_value_t = COROLLARY2_A_DEFAULT)]
    pub a_drop: f64,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    #[arg(long, default_value_t = 3)]
    pub k0: usize,
    #[arg(long, default_value_t = 0.1)]
    pub delta_slack: f64,
    /// Heights for bound_comparison.
    #[arg(long, value_delimiter = ',', default_values_t = [1e4, 1e5, 1e6])]
    pub t_list: Vec<f64>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Corrupt { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let started = Instant::now();
    let code = match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    };
    let _ = writeln!(err, "elapsed {:.3}s", started.elapsed().as_secs_f64());
    code
}

fn open_cache(cfg: &RunConfig) -> crate::Result<IntegralCache> {
    let engine = ZetaEngine::new(EngineConfig {
        crossover: cfg.crossover,
        ..EngineConfig::default()
    })?;
    let cache_cfg = CacheConfig {
        panel_width: cfg.panel_width,
        quad_order: cfg.gl_order,
        ..CacheConfig::default()
    };
    IntegralCache::open(&cfg.cache_path, cache_cfg, engine)
}

fn ladder_config(cfg: &RunConfig) -> LadderConfig {
    LadderConfig {
        c0: cfg.c0,
        t_min: cfg.t_min,
        ..LadderConfig::default()
    }
}

fn emit_report(report: &LawReport, format: Format, out: &mut dyn Write) -> crate::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write!(out, "{}", report.to_csv())?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let cfg = &cli.cfg;
    if let Command::EngineCheck { samples, from, to } = cli.command {
        return engine_check(cfg, samples, from, to, out);
    }
    if let Command::Law(args) = &cli.command {
        if args.id == LawId::BoundComparison {
            let report =
                laws::bound_comparison_report(&args.t_list, cfg.delta, args.k0, cfg.d_const)?;
            emit_report(&report, cfg.format, out)?;
            return Ok(verdict_code(report.verdict));
        }
    }

    let cache = open_cache(cfg)?;
    if let Command::Cache { action } = &cli.command {
        match action {
            CacheAction::Extend { to } => {
                let t0 = Instant::now();
                let added = cache.extend_to(*to)?;
                writeln!(
                    out,
                    "checkpoints {} added {} cached_max {}",
                    cache.checkpoints().len(),
                    added,
                    fmt17(cache.cached_max())
                )?;
                writeln!(err, "extend took {:.3}s", t0.elapsed().as_secs_f64())?;
            }
            CacheAction::Info => {
                writeln!(out, "{}", cache.header())?;
                writeln!(
                    out,
                    "checkpoints {} cached_max {}",
                    cache.checkpoints().len(),
                    fmt17(cache.cached_max())
                )?;
            }
        }
        return Ok(EXIT_OK);
    }

    let ladder = Ladder::new(&cache, ladder_config(cfg))?;
    match &cli.command {
        Command::Ladder => {
            let p = ladder.phi1(cfg.t)?;
            let up = ladder.reverse_step(cfg.t)?;
            match cfg.format {
                Format::Csv => {
                    writeln!(out, "t,phi1,phi1_prime,omega,reverse_step")?;
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        fmt17(p.t),
                        fmt17(p.phi1),
                        fmt17(p.phi1_prime),
                        fmt17(p.omega),
                        fmt17(up)
                    )?;
                }
                Format::Json => {
                    let mut v = serde_json::to_value(p).expect("ladder points serialize");
                    v["reverse_step"] = up.into();
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&v).expect("json value")
                    )?;
                }
            }
        }
        Command::Chain => {
            let chain = SegmentChain::build(&ladder, cfg.t, cfg.h, cfg.k)?;
            for w in &chain.warnings {
                writeln!(err, "warning: {w}")?;
            }
            match cfg.format {
                Format::Csv => write!(out, "{}", chain.to_csv())?,
                Format::Json => {
                    let v = serde_json::json!({ "chain": chain, "metrics": chain.metrics() });
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&v).expect("json value")
                    )?;
                }
            }
        }
        Command::Law(args) => {
            let report = match args.id {
                LawId::Theorem1 => {
                    laws::theorem1_check(&ladder, cfg.t, cfg.h, args.n, cfg.eps, args.tol)?
                }
                LawId::Corollary1 => {
                    laws::corollary1_check(&ladder, cfg.t, cfg.eps, args.a, args.k_max)?
                }
                LawId::Corollary2 => laws::corollary2_check(
                    &ladder,
                    cfg.t,
                    cfg.eps,
                    args.b,
                    args.k_max,
                    args.tol,
                    args.a_drop,
                )?,
                LawId::LowerBound => laws::lower_bound_check(&ladder, cfg.t, cfg.h, args.k0)?,
                LawId::RhBound => laws::rh_bound_check(
                    &ladder,
                    cfg.t,
                    cfg.delta,
                    args.k0,
                    cfg.d_const,
                    args.delta_slack,
                )?,
                LawId::BoundComparison => unreachable!("handled without a cache"),
            };
            emit_report(&report, cfg.format, out)?;
            return Ok(verdict_code(report.verdict));
        }
        Command::Ortho {
            l,
            n_max,
            quad_points,
        } => {
            let ocfg = OrthoConfig {
                l: *l,
                n_max: *n_max,
                k: cfg.k,
                quad_points: *quad_points,
            };
            let g = gram_matrix(&ladder, cfg.t, &ocfg)?;
            match cfg.format {
                Format::Csv => write!(out, "{}", g.to_csv())?,
                Format::Json => {
                    let v = serde_json::json!({
                        "gram": g,
                        "tolerance": g.tolerance(),
                        "max_deviation": g.max_deviation(),
                    });
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&v).expect("json value")
                    )?;
                }
            }
            if g.max_deviation() > g.tolerance() {
                return Ok(EXIT_FAIL);
            }
        }
        Command::Rterm { t_list } => {
            let max = t_list.iter().cloned().fold(0.0, f64::max);
            cache.ensure(max)?;
            let rows = t_list
                .iter()
                .map(|&t| cache.r_term(t))
                .collect::<crate::Result<Vec<_>>>()?;
            match cfg.format {
                Format::Csv => {
                    writeln!(out, "t,r,r_quarter_ratio,r_third_ratio")?;
                    for s in rows {
                        writeln!(
                            out,
                            "{},{},{},{}",
                            fmt17(s.t),
                            fmt17(s.r),
                            fmt17(s.r_quarter_ratio),
                            fmt17(s.r_third_ratio)
                        )?;
                    }
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("json value")
                )?,
            }
        }
        Command::Cache { .. } | Command::EngineCheck { .. } => unreachable!(),
    }
    Ok(EXIT_OK)
}

fn engine_check(
    cfg: &RunConfig,
    samples: usize,
    from: f64,
    to: f64,
    out: &mut dyn Write,
) -> crate::Result<i32> {
    let engine = ZetaEngine::new(EngineConfig {
        crossover: cfg.crossover,
        ..EngineConfig::default()
    })?;
    if !(from >= cfg.crossover && to > from) {
        return Err(crate::error::domain(
            "from",
            from,
            format!("crossover = {} <= from < to = {to}", cfg.crossover),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    writeln!(out, "t,z_fast,z_oracle,normalized_error")?;
    for _ in 0..samples {
        let t = rng.gen_range(from..to);
        let fast = engine.z_fast(t)?;
        let oracle = engine.z_oracle(t);
        let e = (fast - oracle).abs() / (1e-6 + 1e-7 * oracle.abs());
        worst = worst.max(e);
        writeln!(
            out,
            "{},{},{},{}",
            fmt17(t),
            fmt17(fast),
            fmt17(oracle),
            fmt17(e)
        )?;
    }
    Ok(if worst <= 1.0 { EXIT_OK } else { EXIT_FAIL })
}
