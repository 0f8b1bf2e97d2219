mod io;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use ramsey_forge::aux_graph::{construct_auxiliary, AuxParams, CheckMode};
use ramsey_forge::bounds::{
    appendix_eval, blowup_link_bound, e_recursion_beta, e_recursion_trend, f3_small, link_vs_link_bound,
    lower_bound_l31, Status,
};
use ramsey_forge::census::{
    census_vs_bound, check_hom_product_formula, check_product_formula_e3, family_membership, triangle_free_colorings,
    FamilyParams,
};
use ramsey_forge::game::{
    l62_caps, play_game, ramsey_upper_eval, reduce_on_host, AllBlue, AllRed, Builder, BuilderFactory, GameLimits,
    L62Builder, MinimaxPainter, Objective, Painter, RandomPainter,
};
use ramsey_forge::gamma::{
    build_gamma, estimate_fu_probability, find_tripartite_hole, random_coloring, verify_link_free, HoleMode,
    HoleOutcome,
};
use ramsey_forge::pipeline::{pipeline_theorem14, PaletteSource, PipelineConfig};
use ramsey_forge::SearchLimits;
use serde::Serialize;
use serde_json::json;

use crate::io::{read_graph, read_json, read_three_graph, CliError, CliResult};
use crate::report::{emit, Format, Outcome, RunReport, Verification};

/// Construction and verification lab for 3-uniform hypergraph Ramsey problems.
#[derive(Debug, Parser)]
#[command(name = "ramsey-forge", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "RAMSEY_FORGE_SEED")]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json", alias = "report")]
    format: Format,
    /// Vertex limit for the exact independence and hole searches.
    #[arg(long, global = true)]
    limit_exact: Option<usize>,
    /// Number of independent trials.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true)]
    parallel: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an auxiliary graph with its certificate.
    Auxgraph {
        #[arg(long, default_value_t = 3)]
        g: usize,
        #[arg(long)]
        m: usize,
        /// Independence target (default from g and m).
        #[arg(long)]
        t: Option<usize>,
        /// Edge probability (default from g and m).
        #[arg(long)]
        p: Option<f64>,
    },
    /// Random pair colourings and their adjacent-triangle 3-graphs.
    #[command(subcommand)]
    Gamma(GammaCommand),
    /// Exact census of triangle-free tripartite colourings.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        palette: PathBuf,
        /// Odd girth parameter of the low-entropy families.
        #[arg(long, default_value_t = 3)]
        g: usize,
        #[arg(long, default_value_t = 1e-4)]
        c: f64,
        /// Check product formulas and family membership when at most this many colourings exist.
        #[arg(long, default_value_t = 100_000)]
        max_members: usize,
    },
    /// The vertex online Ramsey game.
    #[command(subcommand)]
    Game(GameCommand),
    /// Closed-form bounds and small exact values.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Palette, colouring, link check and hole search over many trials.
    Pipeline {
        /// Base configuration; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Palette graph; the auxiliary construction when absent.
        #[arg(long)]
        palette: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GammaCommand {
    /// Colour the pairs of N vertices and build the 3-graph.
    Build {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        palette: PathBuf,
    },
    /// Check that no link contains the forbidden graph.
    Verify {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        forbidden: PathBuf,
    },
    /// Search the complement for a complete tripartite 3-graph.
    Hole {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
    },
    /// Monte Carlo estimate of the dense-hole probability against its bound.
    Fu {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Heuristic,
    Auto,
}

#[derive(Debug, Subcommand)]
enum GameCommand {
    /// Play the U/W Builder against a Painter.
    Play {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "random")]
        painter: PainterKind,
        /// Quantity the minimax Painter maximises.
        #[arg(long, value_enum, default_value = "vertices")]
        objective: ObjectiveKind,
    },
    /// Lift a game win to a link or hole in a host 3-graph.
    Reduce {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        /// Painter threshold as a fraction.
        #[arg(long, default_value = "1/3")]
        alpha: Ratio<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PainterKind {
    AllRed,
    AllBlue,
    Random,
    Minimax,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectiveKind {
    Vertices,
    RedEdges,
    Edges,
}

#[derive(Debug, Subcommand)]
enum BoundsCommand {
    /// Evaluate a named bound.
    Eval {
        #[arg(long, value_enum)]
        name: BoundName,
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Blow-up order, or the host order for `lower`.
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Smallest independence number among small 3-graphs avoiding dense s-sets.
    F3 {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundName {
    Appendix,
    Upper,
    Link,
    BlowupLink,
    Lower,
    EBeta,
}

struct Ctx {
    seed: u64,
    limits: SearchLimits,
    trials: Option<usize>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn auxgraph(ctx: &Ctx, g: usize, m: usize, t: Option<usize>, p: Option<f64>) -> CliResult<Outcome> {
    let mut params = AuxParams::new(g, m, ctx.seed)?;
    params.t = t.unwrap_or(params.t);
    params.p = p.unwrap_or(params.p);
    let (graph, cert) = construct_auxiliary(&params, &ctx.limits)?;
    let exhaustive = [cert.properties.property2_mode, cert.properties.property3_mode]
        .iter()
        .all(|m| !matches!(m, CheckMode::Sampled { .. }));
    // Properties 2 and 3 are asymptotic and reported only.
    let certified = cert.girth_ok && cert.properties.property1_ok;
    let verification = if exhaustive {
        Verification::Exhaustive
    } else {
        Verification::Sampled
    };
    Ok(Outcome::new(
        json!({"params": params, "graph": graph, "certificate": cert}),
        verification,
        certified,
    ))
}

fn gamma(ctx: &Ctx, cmd: &GammaCommand) -> CliResult<Outcome> {
    match cmd {
        GammaCommand::Build { big_n, palette } => {
            let palette = read_graph(palette)?;
            let chi = random_coloring(*big_n, &palette, ctx.seed)?;
            let gamma = build_gamma(&chi);
            Ok(Outcome::new(
                json!({"palette": palette, "coloring": chi.table(), "gamma": gamma}),
                Verification::Exhaustive,
                true,
            ))
        }
        GammaCommand::Verify { gamma, forbidden } => {
            let (gamma, forbidden) = (read_three_graph(gamma)?, read_graph(forbidden)?);
            let check = verify_link_free(&gamma, &forbidden, &ctx.limits)?;
            let ok = check.link_free;
            Ok(Outcome::new(check, Verification::Exhaustive, ok))
        }
        GammaCommand::Hole { gamma, n, mode } => {
            let gamma = read_three_graph(gamma)?;
            let mode = match mode {
                Mode::Exhaustive => HoleMode::Exhaustive,
                Mode::Heuristic => HoleMode::Heuristic,
                Mode::Auto => HoleMode::Auto,
            };
            let outcome = find_tripartite_hole(&gamma, *n, mode, ctx.seed, &ctx.limits)?;
            let verification = match outcome {
                HoleOutcome::NotDecided { .. } => Verification::Sampled,
                _ => Verification::Exhaustive,
            };
            Ok(Outcome::new(outcome, verification, true))
        }
        GammaCommand::Fu { m, n, p } => {
            let est = estimate_fu_probability(*m, *p, *n, ctx.trials.unwrap_or(10_000), ctx.seed)?;
            let ok = est.holds;
            Ok(Outcome::new(est, Verification::Sampled, ok))
        }
    }
}

#[derive(Serialize)]
struct MemberSummary {
    checked: usize,
    product_e3_failures: usize,
    product_e1_failures: usize,
    f1: usize,
    f2: usize,
    f3: usize,
}

fn census(ctx: &Ctx, n: usize, palette: &Path, g: usize, c: f64, max_members: usize) -> CliResult<Outcome> {
    let palette = read_graph(palette)?;
    let params = FamilyParams {
        c,
        ..FamilyParams::new(g)
    };
    let report = census_vs_bound(n, &palette, &params, &ctx.limits)?;
    let members = if report.count <= max_members.into() {
        let all = triangle_free_colorings(n, &palette, &ctx.limits)?;
        let mut s = MemberSummary {
            checked: all.len(),
            product_e3_failures: 0,
            product_e1_failures: 0,
            f1: 0,
            f2: 0,
            f3: 0,
        };
        for chi in &all {
            s.product_e3_failures += usize::from(!check_product_formula_e3(chi, &ctx.limits)?.holds);
            s.product_e1_failures += usize::from(!check_hom_product_formula(chi, &ctx.limits)?.holds);
            let mem = family_membership(chi, &params, &ctx.limits)?;
            s.f1 += usize::from(mem.f1);
            s.f2 += usize::from(mem.f2);
            s.f3 += usize::from(mem.f3);
        }
        Some(s)
    } else {
        None
    };
    let ok = members
        .as_ref()
        .is_none_or(|s| s.product_e3_failures == 0 && s.product_e1_failures == 0);
    Ok(Outcome::new(
        json!({"census": report, "members": members}),
        Verification::Exhaustive,
        ok,
    ))
}

fn game(ctx: &Ctx, cmd: &GameCommand) -> CliResult<Outcome> {
    match cmd {
        GameCommand::Play {
            s,
            n,
            painter,
            objective,
        } => {
            let (s, n) = (*s, *n);
            if s < 3 || n < 3 {
                return Err(usage("the game needs s >= 3 and n >= 3"));
            }
            let mut painter: Box<dyn Painter> = match painter {
                PainterKind::AllRed => Box::new(AllRed),
                PainterKind::AllBlue => Box::new(AllBlue),
                PainterKind::Random => Box::new(RandomPainter::new(ctx.seed)),
                PainterKind::Minimax => {
                    if s > 4 || n > 4 {
                        return Err(usage("the minimax painter is limited to s, n <= 4"));
                    }
                    let factory: BuilderFactory = Arc::new(|| Box::new(L62Builder::new()) as Box<dyn Builder>);
                    let objective = match objective {
                        ObjectiveKind::Vertices => Objective::Vertices,
                        ObjectiveKind::RedEdges => Objective::RedEdges,
                        ObjectiveKind::Edges => Objective::Edges,
                    };
                    Box::new(MinimaxPainter::new(factory, objective))
                }
            };
            let outcome = play_game(&mut L62Builder::new(), painter.as_mut(), s, n, &GameLimits::default())?;
            let caps = l62_caps(s, n);
            let within = outcome.resources.within(&caps);
            let certified = outcome.certify(s, n);
            let row = json!({"kind": outcome.kind, "resources": outcome.resources, "caps": caps});
            Ok(Outcome::new(
                json!({"outcome": outcome, "caps": caps, "within_caps": within, "witness_certified": certified}),
                Verification::Exhaustive,
                within && certified,
            )
            .with_rows([row]))
        }
        GameCommand::Reduce { host, s, n, alpha } => {
            let host = read_three_graph(host)?;
            let r = reduce_on_host(&host, *s, *n, *alpha)?;
            let certified = r.witness.certify(&host, *s, *n);
            let row = json!({"required": r.required.to_string(), "steps": r.steps.len(), "witness": r.witness});
            Ok(Outcome::new(
                json!({"reduction": r, "witness_certified": certified}),
                Verification::Exhaustive,
                certified,
            )
            .with_rows([row]))
        }
    }
}

fn bounds(ctx: &Ctx, cmd: &BoundsCommand) -> CliResult<Outcome> {
    match cmd {
        BoundsCommand::Eval {
            name,
            s,
            n,
            m,
            p,
            delta,
        } => {
            let (s, n) = (*s, *n);
            match name {
                BoundName::Appendix => {
                    let r = appendix_eval(s, n)?;
                    let ok = r.conditions.iter().all(|c| c.status != Status::Fail);
                    let rows: Vec<_> = r.inputs.iter().chain(&r.quantities).cloned().collect();
                    Ok(Outcome::new(r, Verification::Formula, ok).with_rows(rows))
                }
                BoundName::Upper => {
                    let r = ramsey_upper_eval(s, n)?;
                    let ok = r.holds;
                    Ok(Outcome::new(r, Verification::Formula, ok))
                }
                BoundName::Link => Ok(Outcome::new(
                    json!({"s": s, "n": n, "value": link_vs_link_bound(s, n).to_string()}),
                    Verification::Formula,
                    true,
                )),
                BoundName::BlowupLink => {
                    let m = m.ok_or_else(|| usage("blowup-link needs --m"))?;
                    if m < 1.0 || m.fract() != 0.0 {
                        return Err(usage("--m must be a positive integer"));
                    }
                    let v = blowup_link_bound(s, n, m as u64);
                    Ok(Outcome::new(
                        json!({"s": s, "n": n, "m": m as u64, "value": v}),
                        Verification::Formula,
                        true,
                    ))
                }
                BoundName::Lower => {
                    let m = m.ok_or_else(|| usage("lower needs --m"))?;
                    let p = p.ok_or_else(|| usage("lower needs --p"))?;
                    let r = lower_bound_l31(m, p, n, delta.unwrap_or(1.0 / 27.0))?;
                    Ok(Outcome::new(r, Verification::Formula, true))
                }
                BoundName::EBeta => {
                    let b = e_recursion_beta();
                    let trend = e_recursion_trend(&[10, 100, 1000, 10_000]);
                    let ok = b.six_beta > 0.464 && b.six_beta < 0.465;
                    let trend: Vec<_> = trend.iter().map(|(s, r)| json!({"s": s, "ratio": r})).collect();
                    Ok(Outcome::new(json!({"beta": b, "trend": trend}), Verification::Formula, ok).with_rows(trend))
                }
            }
        }
        BoundsCommand::F3 { big_n, s, t } => {
            let r = f3_small(*big_n, *s, *t, &ctx.limits)?;
            Ok(Outcome::new(r, Verification::Exhaustive, true))
        }
    }
}

fn pipeline(
    ctx: &Ctx,
    config: Option<&Path>,
    overrides: (Option<usize>, Option<usize>, Option<usize>, Option<usize>),
    palette: Option<&Path>,
    seed_given: bool,
) -> CliResult<Outcome> {
    let mut cfg = match config {
        Some(p) => read_json::<PipelineConfig>(p)?,
        None => PipelineConfig {
            g: 3,
            m: 10,
            big_n: 12,
            n: 2,
            trials: 10,
            seed: 0,
            palette: PaletteSource::Auxiliary,
        },
    };
    let (g, m, big_n, n) = overrides;
    cfg.g = g.unwrap_or(cfg.g);
    cfg.m = m.unwrap_or(cfg.m);
    cfg.big_n = big_n.unwrap_or(cfg.big_n);
    cfg.n = n.unwrap_or(cfg.n);
    cfg.trials = ctx.trials.unwrap_or(cfg.trials);
    if seed_given || config.is_none() {
        cfg.seed = ctx.seed;
    }
    if let Some(p) = palette {
        cfg.palette = PaletteSource::Given { graph: read_graph(p)? };
    }
    let seed = cfg.seed;
    let r = pipeline_theorem14(&cfg, &ctx.limits)?;
    let ok = r.all_links_free();
    let verification = if r
        .trials
        .iter()
        .any(|t| matches!(t.hole, HoleOutcome::NotDecided { .. }))
    {
        Verification::Sampled
    } else {
        Verification::Exhaustive
    };
    let rows: Vec<_> = r
        .trials
        .iter()
        .map(|t| {
            json!({
                "trial": t.trial,
                "trial_seed": t.seed,
                "triples": t.triples,
                "link_free": t.link_free,
                "hole": match &t.hole {
                    HoleOutcome::Found { .. } => "found",
                    HoleOutcome::Absent => "absent",
                    HoleOutcome::NotDecided { .. } => "not_decided",
                },
                "trial_certified": t.certified,
            })
        })
        .collect();
    let mut outcome = Outcome::new(r, verification, ok).with_rows(rows);
    outcome.seed = Some(seed);
    Ok(outcome)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Auxgraph { .. } => "auxgraph",
        Command::Gamma(GammaCommand::Build { .. }) => "gamma build",
        Command::Gamma(GammaCommand::Verify { .. }) => "gamma verify",
        Command::Gamma(GammaCommand::Hole { .. }) => "gamma hole",
        Command::Gamma(GammaCommand::Fu { .. }) => "gamma fu",
        Command::Census { .. } => "census",
        Command::Game(GameCommand::Play { .. }) => "game play",
        Command::Game(GameCommand::Reduce { .. }) => "game reduce",
        Command::Bounds(BoundsCommand::Eval { .. }) => "bounds eval",
        Command::Bounds(BoundsCommand::F3 { .. }) => "bounds f3",
        Command::Pipeline { .. } => "pipeline",
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let gl = &cli.global;
    if let Some(threads) = gl.parallel {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| usage(format!("--parallel: {e}")))?;
    }
    let mut limits = SearchLimits::default();
    if let Some(l) = gl.limit_exact {
        limits.exact_vertices = l;
    }
    let ctx = Ctx {
        seed: gl.seed.unwrap_or(0),
        limits,
        trials: gl.trials,
    };
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Auxgraph { g, m, t, p } => auxgraph(&ctx, *g, *m, *t, *p)?,
        Command::Gamma(c) => gamma(&ctx, c)?,
        Command::Census {
            n,
            palette,
            g,
            c,
            max_members,
        } => census(&ctx, *n, palette, *g, *c, *max_members)?,
        Command::Game(c) => game(&ctx, c)?,
        Command::Bounds(c) => bounds(&ctx, c)?,
        Command::Pipeline {
            config,
            g,
            m,
            big_n,
            n,
            palette,
        } => pipeline(
            &ctx,
            config.as_deref(),
            (*g, *m, *big_n, *n),
            palette.as_deref(),
            gl.seed.is_some(),
        )?,
    };
    let report = RunReport {
        command: command_name(&cli.command),
        seed: outcome.seed.unwrap_or(ctx.seed),
        limits: ctx.limits,
        verification: outcome.verification,
        certified: outcome.certified,
        elapsed_ms: start.elapsed().as_millis(),
        result: &outcome.result,
    };
    emit(&report, &outcome.rows, gl.format, gl.out.as_deref())?;
    if outcome.certified {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "{}: a checked property failed",
            report.command
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
