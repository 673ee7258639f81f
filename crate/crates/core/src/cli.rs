//! Command-line front end. [`run`] takes the argument vector and returns
//! the exit code with everything that would be printed, so the binary is a
//! thin wrapper and tests can drive it directly.
//!
//! Exit codes: 0 on success, 1 when a requested finding is absent (an
//! undominated action for `dominate`, an uncovered polytope for `subcover`,
//! a failed check for `verify`), 2 on input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dominance;
use crate::error::{Error, Result};
use crate::game::{parse_game, serialize_game, Game, Player};
use crate::geometry::{minimal_subcover, union_covers, Coverage, Inequality, OpenHalfSpace, Polytope};
use crate::instances;
use crate::point::Point;
use crate::rational::{self, Rational};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "stratdom", version, about = "Exact strict dominance and rationalizability for two-player games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: dominated actions, certificates, elimination traces, equivalence check
    Analyze { game: PathBuf },
    /// Iterated elimination of strictly dominated strategies
    Iesds { game: PathBuf },
    /// Best-response witnesses and never-best-response certificates
    Rationalize { game: PathBuf },
    /// Decide whether one action is strictly dominated
    Dominate {
        game: PathBuf,
        #[arg(long)]
        player: u8,
        #[arg(long)]
        action: String,
    },
    /// Minimal subcover of a half-space covering instance
    Subcover { cover: PathBuf },
    /// Emit a game in JSON format
    Generate(GenerateArgs),
    /// Re-verify every certificate embedded in a report
    Verify { report: PathBuf, game: PathBuf },
    /// Slope and intercept of each expected-payoff line (two opponent actions)
    PlotData {
        game: PathBuf,
        #[arg(long, default_value_t = 1)]
        player: u8,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(clap::ArgGroup::new("kind").required(true).multiple(false)))]
struct GenerateArgs {
    #[arg(long, num_args = 2, value_names = ["N", "M"], group = "kind")]
    tight: Option<Vec<usize>>,
    #[arg(long, num_args = 2, value_names = ["N", "M"], group = "kind")]
    random: Option<Vec<usize>>,
    #[arg(long, group = "kind")]
    fixture: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    range: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Success {
    stdout: String,
    /// Set when the command ran but the requested finding is absent.
    finding_absent: bool,
}

fn ok(stdout: String) -> std::result::Result<Success, Failure> {
    Ok(Success { stdout, finding_absent: false })
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Success { stdout, finding_absent }) => CliOutput { code: i32::from(finding_absent), stdout, stderr: String::new() },
        Err(Failure(msg)) => CliOutput { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn read(path: &Path) -> std::result::Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> std::result::Result<(Vec<u8>, Game), Failure> {
    let bytes = read(path)?;
    let g = parse_game(&bytes)?;
    Ok((bytes, g))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn player_arg(n: u8) -> std::result::Result<Player, Failure> {
    Player::from_number(n).map_err(Failure::from)
}

fn dispatch(cmd: Command) -> std::result::Result<Success, Failure> {
    match cmd {
        Command::Analyze { game } => {
            let (bytes, g) = load_game(&game)?;
            ok(pretty(&report::envelope("analyze", &bytes, "ok", report::analyze(&g)?)))
        }
        Command::Iesds { game } => {
            let (bytes, g) = load_game(&game)?;
            let trace = dominance::iesds(&g)?;
            ok(pretty(&report::envelope("iesds", &bytes, "ok", report::elimination_trace(&g, &trace))))
        }
        Command::Rationalize { game } => {
            let (bytes, g) = load_game(&game)?;
            ok(pretty(&report::envelope("rationalize", &bytes, "ok", report::rationalize(&g)?)))
        }
        Command::Dominate { game, player, action } => {
            let (bytes, g) = load_game(&game)?;
            let player = player_arg(player)?;
            let i = g
                .action_index(player, &action)
                .ok_or_else(|| Failure(format!("player {} has no action {action:?}", player.number())))?;
            let (status, results) = report::dominate(&g, player, i)?;
            let dominated = status == "dominated";
            Ok(Success {
                stdout: pretty(&report::envelope("dominate", &bytes, status, results)),
                finding_absent: !dominated,
            })
        }
        Command::Subcover { cover } => {
            let bytes = read(&cover)?;
            let (status, results) = subcover(&bytes)?;
            Ok(Success {
                stdout: pretty(&report::envelope("subcover", &bytes, status, results)),
                finding_absent: status != "covered",
            })
        }
        Command::Generate(args) => ok(serialize_game(&generate(args)?)),
        Command::Verify { report: path, game } => {
            let text = read(&path)?;
            let report_value: Value =
                serde_json::from_slice(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            let (bytes, g) = load_game(&game)?;
            verify(&report_value, &bytes, &g)
        }
        Command::PlotData { game, player } => {
            let (_, g) = load_game(&game)?;
            ok(plot_data(&g, player_arg(player)?)?)
        }
    }
}

fn parse_rows(v: &Value, dim: usize, what: &str) -> Result<Vec<(Point, Rational)>> {
    let rows = v.as_array().ok_or_else(|| Error::Json(format!("{what} must be an array")))?;
    rows.iter()
        .map(|row| {
            let items = row.as_array().ok_or_else(|| Error::Json(format!("{what} rows must be arrays")))?;
            if items.len() != dim + 1 {
                return Err(Error::DimensionMismatch { expected: dim + 1, found: items.len() });
            }
            let mut coords = items.iter().map(rational::from_json).collect::<Result<Vec<_>>>()?;
            let offset = coords.pop().expect("dim + 1 entries");
            Ok((Point::new(coords), offset))
        })
        .collect()
}

/// Cover instance: `{"dim": d, "polytope": [[normal.., offset]..], "halfspaces": [[normal.., offset]..]}`.
fn subcover(bytes: &[u8]) -> Result<(&'static str, Value)> {
    let v: Value = serde_json::from_slice(bytes)?;
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::Json("\"dim\" must be a positive integer".into()))?
        as usize;
    let polytope = parse_rows(v.get("polytope").unwrap_or(&Value::Null), dim, "polytope")?;
    let polytope = Polytope::new(dim, polytope.into_iter().map(|(n, b)| Inequality::new(n, b)).collect())?;
    let halfspaces = parse_rows(v.get("halfspaces").unwrap_or(&Value::Null), dim, "halfspaces")?
        .into_iter()
        .map(|(n, b)| OpenHalfSpace::new(n, b))
        .collect::<Result<Vec<_>>>()?;
    let intrinsic = polytope.intrinsic_dim();
    match union_covers(&halfspaces, &polytope)? {
        Coverage::Uncovered(x) => {
            let coords: Vec<Value> = x.iter().map(|c| Value::String(rational::to_string(c))).collect();
            Ok(("not_covered", json!({ "intrinsic_dim": intrinsic, "uncovered_point": coords })))
        }
        Coverage::Covered => {
            let keep = minimal_subcover(&halfspaces, &polytope)?;
            Ok((
                "covered",
                json!({ "intrinsic_dim": intrinsic, "bound": intrinsic + 1, "size": keep.len(), "subcover": keep }),
            ))
        }
    }
}

fn generate(args: GenerateArgs) -> Result<Game> {
    if args.random.is_none() && (args.seed.is_some() || args.range.is_some()) {
        return Err(Error::Generator("--seed and --range only apply to --random".into()));
    }
    if let Some(nm) = args.tight {
        return instances::tight_instance(nm[0], nm[1]).map(|(g, _)| g);
    }
    if let Some(nm) = args.random {
        let (lo, hi) = args.range.map_or((-9, 9), |r| (r[0], r[1]));
        return instances::random_game(nm[0], nm[1], args.seed.unwrap_or(0), lo, hi);
    }
    let name = args.fixture.expect("clap enforces one generator");
    instances::fixture(&name)
}

fn verify(report_value: &Value, bytes: &[u8], g: &Game) -> std::result::Result<Success, Failure> {
    let mut out = String::new();
    let mut failed = 0;
    let expected = report::digest(bytes);
    match report_value.get("input_digest").and_then(Value::as_str) {
        Some(d) if d == expected => {}
        Some(d) => {
            failed += 1;
            let _ = writeln!(out, "FAIL $.input_digest: report was made from {d}, game is {expected}");
        }
        None => {
            let _ = writeln!(out, "note: report has no input digest");
        }
    }
    let checks = report::verify_report(report_value, g);
    for c in &checks {
        match &c.result {
            Ok(()) => {
                let _ = writeln!(out, "ok   {} ({})", c.path, c.kind);
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(out, "FAIL {} ({}): {e}", c.path, c.kind);
            }
        }
    }
    let _ = writeln!(out, "{} certificates checked, {failed} failures", checks.len());
    Ok(Success { stdout: out, finding_absent: failed > 0 })
}

/// One CSV line per action: `name,slope,intercept` of `E(q) = slope·q + intercept`
/// where `q` is the probability of the opponent's first action.
fn plot_data(g: &Game, player: Player) -> Result<String> {
    let m = g.num_actions(player.other());
    if m != 2 {
        return Err(Error::Game(format!("plot data needs exactly 2 opponent actions, found {m}")));
    }
    let mut out = String::new();
    for (name, v) in g.actions(player).iter().zip(g.payoff_vectors(player)) {
        let slope = &v[0] - &v[1];
        let _ = writeln!(out, "{name},{},{}", rational::to_string(&slope), rational::to_string(&v[1]));
    }
    Ok(out)
}
