//! Command-line front end for the `webca` library.

pub mod render;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use webca::additive::{evolve, AdditiveRule};
use webca::census::{self, CensusOptions};
use webca::config::{BinaryConfig, TernaryConfig};
use webca::error::{Error, Result};
use webca::percolation::{self as perc, Direction, PathType};
use webca::replication::{self as rep, Signature, DEFAULT_ETHER_CAP};
use webca::webca::{builtin_rule, derive_two_level_ebd, evolve_web, solidify_2d, BuiltinRule, Rule2d, WebRule};

use render::RenderSpec;

#[derive(Parser, Debug)]
#[command(name = "webca", version, about = "Additive and web cellular automata, percolation paths and replication certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Evolve an additive (1or3, xor) or web rule from a seed.
    Simulate(Simulate),
    /// Cells reachable by paths of one type in the 1 Or 3 diagram of a seed.
    Paths(Paths),
    /// Z-path in the 1 Or 3 diagram of a seed.
    Zpath(Zpath),
    /// The χ-path of Xor from 1s at {-1, 0}, with its exit times.
    Chipath(Chipath),
    /// Level-2^m link of a binary seed.
    Link(LinkCmd),
    /// Whether a link blocks paths of a type to the given depth.
    Blocker(BlockerCmd),
    /// Ether produced from a periodic row, or described by a signature.
    Ether(EtherCmd),
    /// Replication certificate for a binary seed.
    Certify(Certify),
    /// Finite-horizon check of a replicator against an ether.
    Verify(Verify),
    /// Exhaustive link census over the Φ-image.
    Census(CensusCmd),
    /// Monte Carlo estimators.
    Mc(McCmd),
    /// Derive the two-level EBD of a 2D rule and diff it against the built-in web rule.
    Ebd2(Ebd2),
    /// Solidification in the plane.
    Solidify2d(Solidify2d),
}

#[derive(Args, Debug)]
pub struct RenderOpts {
    /// Write a binary PPM image here.
    #[arg(long)]
    pub render: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub cell_px: usize,
}

#[derive(Args, Debug)]
pub struct Simulate {
    #[arg(long)]
    pub rule: String,
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub steps: usize,
    /// Leftmost cell of the printed window (defaults to cover the light cone).
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<i64>,
    #[arg(long)]
    pub width: Option<usize>,
    #[command(flatten)]
    pub render: RenderOpts,
}

#[derive(Args, Debug)]
pub struct Paths {
    #[arg(long)]
    pub path_type: PathType,
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub steps: usize,
    /// Sources as `x:t` pairs separated by commas; default every cell of row 0 in the window.
    #[arg(long, allow_hyphen_values = true)]
    pub sources: Option<String>,
    #[command(flatten)]
    pub render: RenderOpts,
}

#[derive(Args, Debug)]
pub struct Zpath {
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub x: i64,
    #[arg(long, default_value_t = 0)]
    pub t: usize,
    #[arg(long, default_value = "right")]
    pub dir: String,
}

#[derive(Args, Debug)]
pub struct Chipath {
    #[arg(long)]
    pub steps: u64,
    /// Also report exit times e_k for k up to this value.
    #[arg(long, default_value_t = 10)]
    pub k_max: u32,
}

#[derive(Args, Debug)]
pub struct LinkCmd {
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub l: Option<i64>,
}

#[derive(Args, Debug)]
pub struct BlockerCmd {
    #[arg(long)]
    pub link: String,
    #[arg(long)]
    pub path: PathType,
    #[arg(long)]
    pub depth: usize,
}

#[derive(Args, Debug)]
pub struct EtherCmd {
    #[arg(long)]
    pub rule: String,
    /// Periodic ternary row, e.g. `(00022222)*` or a link `101000`.
    #[arg(long, conflicts_with = "signature")]
    pub config: Option<String>,
    #[arg(long)]
    pub signature: Option<String>,
    #[arg(long, default_value_t = DEFAULT_ETHER_CAP)]
    pub cap: usize,
}

#[derive(Args, Debug)]
pub struct Certify {
    #[arg(long)]
    pub rule: String,
    /// Binary seed (`0x…` hex reads cell 0 as the top bit of the first digit).
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long, default_value_t = 8)]
    pub mmax: u32,
}

#[derive(Args, Debug)]
pub struct Verify {
    #[arg(long)]
    pub rule: String,
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub horizon: usize,
    /// Thickness; with `--signature` skips certification.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub signature: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub mmax: u32,
}

#[derive(Args, Debug)]
pub struct CensusCmd {
    #[arg(long)]
    pub rule: String,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub path: PathType,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// CSV table of ethers and bounds.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Full census result as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Report an ether and its reflection separately.
    #[arg(long)]
    pub split_reflections: bool,
    #[arg(long, default_value_t = census::CENSUS_ETHER_CAP)]
    pub ether_cap: usize,
}

#[derive(Args, Debug)]
pub struct McCmd {
    #[command(subcommand)]
    pub which: McWhich,
}

#[derive(Subcommand, Debug)]
pub enum McWhich {
    /// Probability that a path joins row 0 to (0, t).
    Crossing {
        #[arg(long)]
        path: PathType,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        rng_seed: u64,
    },
    /// Survival of empty paths from the origin to depth t.
    Survival {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        rng_seed: u64,
        /// Condition on a 0 at the origin.
        #[arg(long)]
        origin_zero: bool,
    },
    /// Speed of the rightmost Z-path.
    Drift {
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        rng_seed: u64,
    },
    /// Certificates for uniformly random seeds on [0, L].
    Seeds {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        rng_seed: u64,
        #[arg(long, default_value_t = 8)]
        mmax: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Args, Debug)]
pub struct Ebd2 {
    #[arg(long)]
    pub rule: Rule2d,
}

#[derive(Args, Debug)]
pub struct Solidify2d {
    #[arg(long)]
    pub rule: Rule2d,
    /// Occupied sites as `x,y` pairs separated by `;`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub seed: String,
    #[arg(long)]
    pub steps: u32,
    #[command(flatten)]
    pub render: RenderOpts,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Precondition(_) | Error::UnknownRule(_) | Error::InvalidRule { .. } => 2,
        Error::Unresolved(_) | Error::MemoryCap { .. } => 3,
        Error::Checkpoint(_) | Error::Io(_) => 4,
    }
}

pub fn error_json(kind: &str, message: &str) -> String {
    json!({"error": {"kind": kind, "message": message}}).to_string()
}

/// Parses `argv`, runs the command and writes to the given sinks; returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", error_json("usage", &e.to_string()));
            return 2;
        }
    };
    match dispatch(cli.cmd) {
        Ok(text) => match writeln!(out, "{text}") {
            Ok(()) => 0,
            Err(_) => 4,
        },
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string()));
            exit_code(&e)
        }
    }
}


fn pretty<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("outputs serialize")
}

fn web_rule(name: &str) -> Result<WebRule> {
    builtin_rule(name)
}

/// Binary seed: the usual grammar, or `0x` hex with cell 0 the top bit of the first digit.
pub fn parse_seed(s: &str) -> Result<BinaryConfig> {
    match s.strip_prefix("0x") {
        Some(hex) => {
            let mut bits = Vec::with_capacity(hex.len() * 4);
            for c in hex.chars() {
                let d = c.to_digit(16).ok_or_else(|| Error::Parse(format!("bad hex digit `{c}`")))?;
                bits.extend((0..4).rev().map(|k| d >> k & 1 == 1));
            }
            Ok(BinaryConfig::finite(0, webca::BitRow::from_bools(bits)))
        }
        None => BinaryConfig::parse(s),
    }
}

/// Window end implied by a hex seed: `[0, 4·digits − 1]`.
fn hex_window(s: &str) -> Option<i64> {
    s.strip_prefix("0x").map(|h| 4 * h.len() as i64 - 1)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(Error::Io)
}

/// Default window: the seed's support widened by the light cone.
fn window(support: Option<(i64, i64)>, periodic_len: Option<usize>, reach: i64) -> (i64, usize) {
    match (periodic_len, support) {
        (Some(n), _) => (0, n),
        (None, Some((a, b))) => (a - reach, (b - a + 2 * reach + 1) as usize),
        (None, None) => (-reach, (2 * reach + 1) as usize),
    }
}

fn dispatch(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Simulate(a) => simulate(a),
        Cmd::Paths(a) => paths(a),
        Cmd::Zpath(a) => {
            let seed = parse_seed(&a.seed)?;
            let dir = match a.dir.as_str() {
                "right" => Direction::Right,
                "left" => Direction::Left,
                d => return Err(Error::Parse(format!("direction must be left or right, got `{d}`"))),
            };
            let d = evolve(&seed, AdditiveRule::OneOr3, a.steps)?;
            Ok(pretty(&perc::z_path(&d, (a.x, a.t), dir)))
        }
        Cmd::Chipath(a) => {
            let tr = perc::chi_path_xor(a.steps);
            Ok(pretty(&json!({
                "trajectory": tr,
                "exit_times": perc::chi_exit_times(a.k_max),
            })))
        }
        Cmd::Link(a) => {
            let seed = parse_seed(&a.seed)?;
            let l = match a.l.or_else(|| hex_window(&a.seed)) {
                Some(l) => l,
                None => rep::link::seed_window(&seed)?,
            };
            let (link, t) = rep::compute_link_with(&seed, l, a.m)?;
            Ok(pretty(&json!({
                "m": a.m,
                "L": l,
                "link": link,
                "hex": link.hex(),
                "read_time": t,
                "zero": link.is_zero(),
            })))
        }
        Cmd::Blocker(a) => {
            let link = rep::LinkString::parse(&a.link)?;
            Ok(rep::is_blocker(&link, a.path, a.depth).to_string())
        }
        Cmd::Ether(a) => {
            let rule = web_rule(&a.rule)?;
            let e = match (&a.config, &a.signature) {
                (Some(c), _) => {
                    let c = if c.contains('(') { c.clone() } else { format!("({c})*") };
                    rep::produce_ether(&rule, &TernaryConfig::parse(&c)?, a.cap)?
                }
                (None, Some(s)) => rep::ether_from_signature(&rule, &Signature::parse(s)?, a.cap)?,
                (None, None) => return Err(Error::Precondition("give --config or --signature".into())),
            };
            let refl = rep::reflection_class(&e, &rule, a.cap)?;
            Ok(pretty(&json!({"ether": e, "reflection": refl})))
        }
        Cmd::Certify(a) => {
            let rule = web_rule(&a.rule)?;
            let seed = parse_seed(&a.seed)?;
            let l = a.l.or_else(|| hex_window(&a.seed));
            Ok(pretty(&rep::replication_certificate(&rule, &seed, l, a.mmax)?))
        }
        Cmd::Verify(a) => verify(a),
        Cmd::Census(a) => census_cmd(a),
        Cmd::Mc(a) => mc(a.which),
        Cmd::Ebd2(a) => {
            let derived = derive_two_level_ebd(a.rule)?;
            let builtin = match a.rule {
                Rule2d::Box13 => BuiltinRule::Extended1Or3,
                Rule2d::PiggybackBox => BuiltinRule::Piggyback,
            };
            let reference = WebRule::builtin(builtin);
            let diffs: Vec<Value> = (0..243)
                .filter(|&i| derived.table()[i] != reference.table()[i])
                .map(|i| json!({"tuple": webca::webca::rules::tuple(i), "derived": derived.table()[i], "builtin": reference.table()[i]}))
                .collect();
            Ok(pretty(&json!({
                "rule2d": a.rule.name(),
                "builtin": builtin.name(),
                "identical": diffs.is_empty(),
                "differences": diffs,
                "compliance": derived.compliance().strongest(),
            })))
        }
        Cmd::Solidify2d(a) => {
            let mut seed = Vec::new();
            for p in a.seed.split(';').filter(|p| !p.is_empty()) {
                let (x, y) = p.split_once(',').ok_or_else(|| Error::Parse(format!("bad site `{p}`")))?;
                let num = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate `{s}`")));
                seed.push((num(x)?, num(y)?));
            }
            let g = solidify_2d(a.rule, &seed, a.steps);
            if let Some(p) = &a.render.render {
                write_file(p, &render::render_grid(&g, &RenderSpec::new(a.render.cell_px, [128, 128, 128]))?)?;
            }
            let mut per_time = vec![0u64; a.steps as usize + 1];
            for &t in g.occupied_at.values() {
                per_time[t as usize] += 1;
            }
            Ok(pretty(&json!({
                "rule": a.rule.name(),
                "steps": a.steps,
                "occupied": g.occupied_at.len(),
                "occupied_per_time": per_time,
            })))
        }
    }
}

fn simulate(a: Simulate) -> Result<String> {
    let reach = 2 * a.steps as i64;
    let (rows, lo, width, palette2, rule_id) = match a.rule.parse::<AdditiveRule>() {
        Ok(rule) => {
            let seed = parse_seed(&a.seed)?;
            let (lo, width) = window(seed.support(), seed.is_periodic().then(|| seed.bits().len()), a.steps as i64);
            let (lo, width) = (a.lo.unwrap_or(lo), a.width.unwrap_or(width));
            let d = evolve(&seed, rule, a.steps)?;
            if let Some(p) = &a.render.render {
                write_file(p, &render::render_additive(&d, lo, width, &RenderSpec::new(a.render.cell_px, render::BLACK), None)?)?;
            }
            let rows: Vec<String> = d.rows.iter().map(|r| r.window(lo, width).iter().map(|b| if b { '1' } else { '0' }).collect()).collect();
            (rows, lo, width, None, rule.name().to_string())
        }
        Err(_) => {
            let rule = web_rule(&a.rule)?;
            let seed = TernaryConfig::parse(&a.seed)?;
            let (lo, width) = window(seed.support(), seed.periodic.then_some(seed.states.len()), reach);
            let (lo, width) = (a.lo.unwrap_or(lo), a.width.unwrap_or(width));
            let d = evolve_web(&rule, &seed, a.steps)?;
            if let Some(p) = &a.render.render {
                write_file(p, &render::render_web(&d, lo, width, &RenderSpec::new(a.render.cell_px, rule.palette_rgb))?)?;
            }
            let rows: Vec<String> = d
                .rows
                .iter()
                .map(|r| (0..width).map(|x| char::from(b'0' + r.get(lo + x as i64))).collect())
                .collect();
            (rows, lo, width, Some(rule.palette_rgb), rule.id.clone())
        }
    };
    Ok(pretty(&json!({
        "rule": rule_id,
        "steps": a.steps,
        "x0": lo,
        "width": width,
        "rows": rows,
        "palette_2": palette2,
    })))
}

fn paths(a: Paths) -> Result<String> {
    let seed = parse_seed(&a.seed)?;
    let d = evolve(&seed, AdditiveRule::OneOr3, a.steps)?;
    let (lo, width) = window(seed.support(), seed.is_periodic().then(|| seed.bits().len()), a.steps as i64);
    let sources: Vec<(i64, usize)> = match &a.sources {
        Some(s) => s
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                let (x, t) = p.split_once(':').ok_or_else(|| Error::Parse(format!("bad source `{p}`, want x:t")))?;
                Ok((
                    x.trim().parse().map_err(|_| Error::Parse(format!("bad x `{x}`")))?,
                    t.trim().parse().map_err(|_| Error::Parse(format!("bad t `{t}`")))?,
                ))
            })
            .collect::<Result<_>>()?,
        None => (lo..lo + width as i64).map(|x| (x, 0)).collect(),
    };
    let r = perc::reachable_set(&d, &sources, a.path_type);
    if let Some(p) = &a.render.render {
        write_file(p, &render::render_additive(&d, lo, width, &RenderSpec::new(a.render.cell_px, render::BLACK), Some(&r))?)?;
    }
    let rows: Vec<Vec<i64>> = (0..r.rows.len()).map(|t| r.row_points(t)).collect();
    Ok(pretty(&json!({
        "path_type": a.path_type,
        "steps": a.steps,
        "reaches_bottom": !rows.last().is_none_or(|r| r.is_empty()),
        "reachable": rows,
    })))
}

fn verify(a: Verify) -> Result<String> {
    let rule = web_rule(&a.rule)?;
    let (seed, r, ether) = match (a.r, &a.signature) {
        (Some(r), Some(sig)) => {
            let seed = TernaryConfig::parse(&a.seed)?;
            (seed, r, rep::ether_from_signature(&rule, &Signature::parse(sig)?, DEFAULT_ETHER_CAP)?)
        }
        (None, None) => {
            let seed = parse_seed(&a.seed)?;
            let c = rep::replication_certificate(&rule, &seed, hex_window(&a.seed), a.mmax)?;
            let ether = c.ether.ok_or_else(|| Error::Unresolved("seed is not certified; pass --r and --signature".into()))?;
            (seed.to_ternary(), c.r.unwrap_or(0) + c.l.max(0) as usize, ether)
        }
        _ => return Err(Error::Precondition("--r and --signature go together".into())),
    };
    let report = rep::verify_replicator(&rule, &seed, r, &ether, a.horizon)?;
    Ok(pretty(&json!({
        "rule": rule.id,
        "seed": seed.to_string(),
        "r": r,
        "ether": ether.signature,
        "horizon": a.horizon,
        "report": report,
    })))
}

fn census_cmd(a: CensusCmd) -> Result<String> {
    let rule = web_rule(&a.rule)?;
    let opts = CensusOptions {
        workers: a.workers,
        checkpoint: a.checkpoint,
        stop_after: None,
        combine_reflections: !a.split_reflections,
        ether_cap: a.ether_cap,
    };
    let result = census::run_census(&rule, a.m, a.path, &opts)?;
    let bounds = census::lower_bounds(&result)?;
    if let Some(p) = &a.out {
        write_file(p, census::bounds_csv(&bounds)?.as_bytes())?;
    }
    if let Some(p) = &a.json {
        write_file(p, pretty(&result).as_bytes())?;
    }
    Ok(pretty(&json!({
        "rule": result.rule_id,
        "m": result.m,
        "path_type": result.path_type,
        "total_image": result.total_image,
        "N_n": result.n_n,
        "N_b": result.n_b,
        "ethers": result.per_ether.len(),
        "unresolved": result.unresolved,
        "overall_bound": {
            "num": bounds.overall.numer(),
            "den": bounds.overall.denom(),
            "decimal": rep::ratio_json::decimal(&bounds.overall),
            "truncated": census::bounds::format_1e4(bounds.overall_truncated_1e4),
        },
        "rows": bounds.rows.iter().map(|r| json!({
            "signature": r.signature,
            "N_b": r.n_b,
            "lower_bound": r.lower_bound(),
        })).collect::<Vec<_>>(),
    })))
}

fn mc(which: McWhich) -> Result<String> {
    match which {
        McWhich::Crossing { path, t, trials, rng_seed } => Ok(pretty(&perc::mc_crossing(path, t, trials, rng_seed))),
        McWhich::Survival { t, trials, rng_seed, origin_zero } => {
            Ok(pretty(&perc::mc_empty_survival(t, trials, rng_seed, origin_zero)))
        }
        McWhich::Drift { horizon, trials, rng_seed } => Ok(pretty(&perc::mc_drift(horizon, trials, rng_seed)?)),
        McWhich::Seeds { rule, l, trials, rng_seed, mmax, workers } => {
            let rule = web_rule(&rule)?;
            Ok(pretty(&census::mc_random_seed_experiment(&rule, l, trials, rng_seed, mmax, workers)?))
        }
    }
}
