//! parex: scenario runner for the space-time averaging toolkit.
//!
//! Subcommands: `constants` (weight constants and profiles), `operators`
//! (evaluate an operator to a grid dump), `verify` (the full invariant
//! suite), `extrapolate` (bound-transfer experiments), `characterize`
//! (commutator-vs-oscillation experiments), `bench` (engine timings).
//! Exit code 0 means every asserted check passed; 1 means some check failed;
//! 2 means the configuration was rejected.

mod config;
mod emit;
mod grid_io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use parex_core::checks::{self, VerifyParams};
use parex_core::experiments::{
    characterization_experiment, transfer_experiment, CharKind, CharScenario, TransferMode,
};
use parex_core::lattice::{Boundary, GridFunction, GridSpec};
use parex_core::operators::{
    commutator_bracket, fractional_integral, fractional_maximal, integral_commutator,
    maximal_commutator, restricted_maximal, BracketMethod, Direction, Engine, FracIntegralOp,
    FractionalOrder, IntegralParams, MaximalParams,
};
use parex_core::recipes::{make_function, make_weight};
use parex_core::weights::{a1_constant, ainfty_profile, one_weight_constant, ExponentPair};
use parex_core::Report;

use config::{OperatorChoice, ScenarioConfig};
use emit::{print_report_lines, EmitFormat, Emitter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Fast,
    Naive,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strong,
    Weak,
    VectorValued,
    AInfinity,
    AtInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Maximal,
    Integral,
    MaximalCommutator,
    IntegralCommutator,
    Bracket,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    IntegralBracket,
    CampanatoFractional,
    MaximalBracket,
    EvenOrderMaximal,
}

#[derive(Parser)]
#[command(
    name = "parex",
    about = "desk-scale toolkit for one-sided space-time averaging operators",
    version
)]
struct Cli {
    /// Scenario config; the bundled 16×16 default when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed override for every randomized component.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for reports and dumps (default: the config's
    /// `out_dir`, else ./parex-out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Engine for operator evaluation (defaults to the config's choice).
    #[arg(long, global = true, value_enum)]
    engine: Option<EngineArg>,
    /// Worker threads for independent scenario pieces (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Report formats to write.
    #[arg(long, global = true, value_enum, default_value_t = EmitFormat::Both)]
    format: EmitFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weight-class constants, profiles and both single-exponent forms.
    Constants,
    /// Evaluate the configured operator on the configured functions and dump
    /// the grids.
    Operators {
        /// Operator override (forward direction, order k from the config);
        /// defaults to the config's operator block.
        #[arg(long, value_enum)]
        op: Option<OpArg>,
        /// Also write raw little-endian f64 dumps next to the CSVs.
        #[arg(long)]
        binary: bool,
    },
    /// Run the full invariant suite.
    Verify,
    /// Bound-transfer experiment.
    Extrapolate {
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Commutator-vs-oscillation experiment.
    Characterize {
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Engine timing table (the speedup target is recorded, not asserted).
    Bench,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("thread pool")?;
    }
    let (cfg, raw) = ScenarioConfig::load(cli.config.as_deref())?;
    let out_dir: PathBuf = cli
        .out
        .clone()
        .or_else(|| cfg.out_dir.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("parex-out"));
    let seed = cli.seed.unwrap_or(cfg.seed);
    let engine_arg = cli.engine.unwrap_or(match cfg.engine {
        Engine::Fast => EngineArg::Fast,
        Engine::Naive => EngineArg::Naive,
    });
    let engine = match engine_arg {
        EngineArg::Fast | EngineArg::Both => Engine::Fast,
        EngineArg::Naive => Engine::Naive,
    };
    let emitter = Emitter {
        out_dir: out_dir.clone(),
        format: cli.format,
    };

    let reports = match &cli.cmd {
        Cmd::Constants => constants_cmd(&cfg, seed)?,
        Cmd::Operators { op, binary } => {
            let mut cfg_ops = cfg.clone();
            if let Some(op) = op {
                let k = cfg.characterize.values().next().map_or(1, |b| b.k);
                cfg_ops.operator = match op {
                    OpArg::Maximal => OperatorChoice::FractionalMaximal {
                        direction: Direction::Forward,
                    },
                    OpArg::Integral => OperatorChoice::FractionalIntegral {
                        direction: Direction::Forward,
                    },
                    OpArg::MaximalCommutator => OperatorChoice::MaximalCommutator {
                        direction: Direction::Forward,
                        k,
                    },
                    OpArg::IntegralCommutator => OperatorChoice::IntegralCommutator {
                        direction: Direction::Forward,
                        k,
                    },
                    OpArg::Bracket => OperatorChoice::BracketIntegral { k },
                };
            }
            operators_cmd(
                &cfg_ops,
                seed,
                engine,
                engine_arg == EngineArg::Both,
                *binary,
                &out_dir,
            )?
        }
        Cmd::Verify => verify_cmd(&cfg, seed, engine)?,
        Cmd::Extrapolate { mode } => extrapolate_cmd(&cfg, seed, *mode)?,
        Cmd::Characterize { kind } => characterize_cmd(&cfg, seed, *kind)?,
        Cmd::Bench => bench_cmd(&cfg, seed)?,
    };

    print_report_lines(&reports);
    let stem = match &cli.cmd {
        Cmd::Constants => "constants",
        Cmd::Operators { .. } => "operators",
        Cmd::Verify => "verify",
        Cmd::Extrapolate { .. } => "extrapolate",
        Cmd::Characterize { .. } => "characterize",
        Cmd::Bench => "bench",
    };
    let written = emitter.emit(stem, &reports, &raw, seed)?;
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(reports.iter().all(|r| r.all_pass()))
}

fn constants_cmd(cfg: &ScenarioConfig, seed: u64) -> anyhow::Result<Vec<Report>> {
    let spec = cfg.spec()?;
    let gamma = cfg.gamma()?;
    let mut rep = Report::new("constants", seed, format!("{}x{}", spec.ex(), spec.et()));
    if let Some((lo, hi)) = parex_core::weights::half_width_range(&spec, gamma) {
        rep.note(format!("rectangle half-widths used: {lo}..{hi}"));
    } else {
        rep.note("no admissible rectangle half-width on this grid".to_string());
    }
    for nw in &cfg.weights {
        let w = make_weight(spec, &nw.recipe).map_err(|e| anyhow!("weight {}: {e}", nw.name))?;
        for &(r, q) in &cfg.exponent_pairs {
            let pair = ExponentPair::finite(r, q)?;
            for dir in [Direction::Forward, Direction::Backward] {
                let v = one_weight_constant(&w, &pair, gamma, dir)?;
                rep.record(
                    format!("constant[{}/({r},{q})/{dir:?}]", nw.name),
                    &format!("{}-{r}-{q}", nw.name),
                    v,
                    0.0,
                );
            }
        }
        let profile = ainfty_profile(
            &w,
            gamma,
            Direction::Forward,
            &cfg.extrapolate.a_infty_profile,
        )?;
        for (q, v) in profile {
            rep.record(format!("profile[{}/q={q}]", nw.name), &nw.name, v, q);
        }
        let forms = a1_constant(&w, gamma, Direction::Forward)?;
        rep.record(
            format!("a1-forms[{}]", nw.name),
            &nw.name,
            forms.maximal,
            forms.rectangle,
        );
    }
    Ok(vec![rep])
}

fn build_grid_op_dump(
    cfg: &ScenarioConfig,
    spec: GridSpec,
    engine: Engine,
    f: &GridFunction,
) -> anyhow::Result<(String, GridFunction)> {
    let gamma = cfg.gamma()?;
    let alpha = cfg.alpha()?;
    let b = make_function(spec, &cfg.symbol)?;
    Ok(match &cfg.operator {
        OperatorChoice::FractionalMaximal { direction } => {
            let params = MaximalParams {
                gamma,
                alpha: FractionalOrder::new(alpha)?,
                dir: *direction,
                engine,
            };
            (
                "fractional-maximal".into(),
                fractional_maximal(f, &params)?.grid,
            )
        }
        OperatorChoice::RestrictedMaximal {
            direction,
            center_x,
            center_t,
            half_width,
        } => {
            let r0 = parex_core::ParabolicRectangle::new(
                parex_core::Cell::new1(*center_x, *center_t),
                *half_width,
            )?;
            (
                "restricted-maximal".into(),
                restricted_maximal(f, gamma, *direction, &r0, engine)?.grid,
            )
        }
        OperatorChoice::FractionalIntegral { direction } => {
            let params = IntegralParams::new(gamma, alpha, *direction)?;
            (
                "fractional-integral".into(),
                fractional_integral(f, &params)?,
            )
        }
        OperatorChoice::MaximalCommutator { direction, k } => {
            let params = MaximalParams {
                gamma,
                alpha: FractionalOrder::new(alpha)?,
                dir: *direction,
                engine,
            };
            (
                "maximal-commutator".into(),
                maximal_commutator(f, &b, &params, *k)?.grid,
            )
        }
        OperatorChoice::IntegralCommutator { direction, k } => {
            let params = IntegralParams::new(gamma, alpha, *direction)?;
            (
                "integral-commutator".into(),
                integral_commutator(f, &b, &params, *k)?,
            )
        }
        OperatorChoice::BracketIntegral { k } => {
            let t_op = FracIntegralOp {
                params: IntegralParams::new(gamma, alpha, Direction::Forward)?,
            };
            (
                "bracket-integral".into(),
                commutator_bracket(&t_op, &b, f, *k, BracketMethod::Kernel)?,
            )
        }
    })
}

fn operators_cmd(
    cfg: &ScenarioConfig,
    seed: u64,
    engine: Engine,
    both_engines: bool,
    binary: bool,
    out_dir: &PathBuf,
) -> anyhow::Result<Vec<Report>> {
    let spec = cfg.spec()?;
    std::fs::create_dir_all(out_dir)?;
    let mut rep = Report::new("operators", seed, format!("{}x{}", spec.ex(), spec.et()));
    let engines: Vec<(Engine, &str)> = if both_engines {
        vec![(Engine::Fast, "fast"), (Engine::Naive, "naive")]
    } else {
        vec![(
            engine,
            if engine == Engine::Fast {
                "fast"
            } else {
                "naive"
            },
        )]
    };
    for nf in &cfg.functions {
        let f = make_function(spec, &nf.recipe)?;
        for (eng, tag) in &engines {
            let (op_name, out) = build_grid_op_dump(cfg, spec, *eng, &f)?;
            let path = out_dir.join(format!("{}_{}_{}.csv", nf.name, op_name, tag));
            grid_io::write_csv(&path, &out)?;
            if binary {
                grid_io::write_binary(&path.with_extension("f64"), &out)?;
            }
            rep.record(
                format!("dump[{}/{}/{}]", nf.name, op_name, tag),
                &nf.name,
                out.max_abs(),
                f.max_abs(),
            );
            println!("wrote {}", path.display());
        }
    }
    Ok(vec![rep])
}

fn verify_cmd(cfg: &ScenarioConfig, seed: u64, engine: Engine) -> anyhow::Result<Vec<Report>> {
    let spec = cfg.spec()?;
    let vp = VerifyParams {
        seed,
        n: spec.n,
        p: spec.p,
        extent_space: spec.extent_space,
        extent_time: spec.extent_time,
        gamma: cfg.gamma()?,
        alpha: cfg.alpha()?,
        engine,
        budget: cfg.probe_budget,
    };
    // Areas are independent; run them in parallel, merge in registry order.
    use rayon::prelude::*;
    let areas = checks::registered_checks();
    let mut reports: Vec<Report> = areas
        .par_iter()
        .map(|(_, f)| f(&vp))
        .collect::<parex_core::error::Result<Vec<_>>>()
        .map_err(|e| anyhow!("verify: {e}"))?;
    reports
        .push(checks::run_verify_experiments(&vp).map_err(|e| anyhow!("verify experiments: {e}"))?);
    Ok(reports)
}

fn extrapolate_cmd(cfg: &ScenarioConfig, seed: u64, mode: ModeArg) -> anyhow::Result<Vec<Report>> {
    let mode_core = match mode {
        ModeArg::Strong => TransferMode::Strong,
        ModeArg::Weak => TransferMode::Weak,
        ModeArg::VectorValued => TransferMode::VectorValued,
        ModeArg::AInfinity => TransferMode::AInfinity,
        ModeArg::AtInfinity => TransferMode::AtInfinity,
    };
    let mut sc = cfg.transfer_scenario("config", seed)?;
    if mode_core == TransferMode::AtInfinity {
        sc.targets = cfg.extrapolate.at_infinity_targets.clone();
    }
    let rep = transfer_experiment(mode_core, &sc).map_err(|e| anyhow!("extrapolate: {e}"))?;
    Ok(vec![rep])
}

fn characterize_cmd(cfg: &ScenarioConfig, seed: u64, kind: KindArg) -> anyhow::Result<Vec<Report>> {
    let kind_core = match kind {
        KindArg::IntegralBracket => CharKind::IntegralBracket,
        KindArg::CampanatoFractional => CharKind::CampanatoFractional,
        KindArg::MaximalBracket => CharKind::MaximalBracket,
        KindArg::EvenOrderMaximal => CharKind::EvenOrderMaximal,
    };
    let label = parex_core::experiments::char_kind_label(kind_core);
    let ch = cfg
        .characterize
        .get(label)
        .ok_or_else(|| anyhow!("config has no characterize block for kind `{label}`"))?;
    let sc = CharScenario {
        name: "config".into(),
        n: cfg.grid.n,
        p: cfg.grid.p,
        boundary: cfg.grid.boundary,
        sizes: ch.sizes.clone(),
        gamma: cfg.gamma()?,
        alpha: ch
            .alpha
            .parse()
            .map_err(|_| anyhow!("characterize.alpha"))?,
        beta: ch.beta.parse().map_err(|_| anyhow!("characterize.beta"))?,
        k: ch.k,
        pair: ch.pair,
        b0: ch.b0.clone(),
        lambdas: ch.lambdas.clone(),
        budget: parex_core::probe::ProbeBudget {
            seed,
            ..cfg.probe_budget
        },
        seed,
    };
    let rep =
        characterization_experiment(kind_core, &sc).map_err(|e| anyhow!("characterize: {e}"))?;
    Ok(vec![rep])
}

fn bench_cmd(cfg: &ScenarioConfig, seed: u64) -> anyhow::Result<Vec<Report>> {
    let gamma = cfg.gamma()?;
    let alpha = cfg.alpha()?;
    // Two spatial axes square the cell count; keep the naive reference
    // tractable there.
    let sizes: [(usize, usize); 2] = if cfg.grid.n == 1 {
        [(64, 64), (64, 256)]
    } else {
        [(16, 16), (16, 24)]
    };
    let grid_label = format!(
        "{}x{},{}x{}",
        sizes[0].0, sizes[0].1, sizes[1].0, sizes[1].1
    );
    let mut rep = Report::new("bench", seed, grid_label);
    println!(
        "{:<12} {:>6} {:>12} {:>12} {:>9}",
        "grid", "m_max", "naive_ms", "fast_ms", "speedup"
    );
    for (es, et) in sizes {
        let spec = GridSpec::new(cfg.grid.n, cfg.grid.p, es, et, Boundary::Periodic)?;
        let f = make_function(
            spec,
            &parex_core::recipes::FunctionRecipe::UniformNoise {
                seed,
                lo: 0.0,
                hi: 1.0,
            },
        )?;
        let m_max = parex_core::geometry::admissible_half_widths(&spec, gamma)
            .last()
            .copied()
            .unwrap_or(0);
        let time_engine = |engine: Engine| -> anyhow::Result<(f64, GridFunction)> {
            let params = MaximalParams {
                gamma,
                alpha: FractionalOrder::new(alpha)?,
                dir: Direction::Forward,
                engine,
            };
            let mut best = f64::INFINITY;
            let mut out = fractional_maximal(&f, &params)?;
            for _ in 0..2 {
                let t0 = Instant::now();
                out = fractional_maximal(&f, &params)?;
                best = best.min(t0.elapsed().as_secs_f64() * 1e3);
            }
            Ok((best, out.grid))
        };
        let (naive_ms, naive_out) = time_engine(Engine::Naive)?;
        let (fast_ms, fast_out) = time_engine(Engine::Fast)?;
        let speedup = naive_ms / fast_ms;
        println!(
            "{:<12} {:>6} {:>12.3} {:>12.3} {:>8.1}x",
            format!("{es}x{et}"),
            m_max,
            naive_ms,
            fast_ms,
            speedup
        );
        let mut worst = 0.0_f64;
        for i in 0..spec.cell_count() {
            worst = worst.max((fast_out.value_flat(i) - naive_out.value_flat(i)).abs());
        }
        let scale = fast_out.max_abs().max(1.0);
        rep.push(
            format!("engines-agree[{es}x{et}]"),
            &format!("{es}x{et}"),
            worst / scale,
            0.0,
            1e-12,
            worst <= 1e-12 * scale,
        );
        rep.record(
            format!("speedup[{es}x{et}]"),
            &format!("{es}x{et}"),
            speedup,
            10.0,
        );
    }
    rep.note("speedup target 10x is recorded, not asserted".to_string());
    Ok(vec![rep])
}
