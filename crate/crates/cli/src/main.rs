use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use avoid_core::constructions::{catalog, Construction};
use avoid_core::game::{orbit, validate_generators, Game, GameJson, Player, Position, Winner};
use avoid_core::pairset::suites::{self, Lemma};
use avoid_core::solver::{
    best_move, earliest_forced_loss_with, solve_plus, solve_with, verify_strategy, Goal, Mode, SolveOptions,
    SolveReport, DEFAULT_PLUS_CAP, DEFAULT_SOLVE_CAP,
};
use avoid_core::strategies::{strategy_for, Strategy};

/// Exit status for a refuted claim.
const REFUTED: u8 = 1;
/// Exit status for usage errors and refusals.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "avoid", version, about = "Workbench for transitive avoidance games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GameArgs {
    /// Construction expression, e.g. `pairs(3)` or `copies(pairs(3),3)`.
    #[arg(long)]
    game: Option<String>,
    /// Game JSON as written by `gen`.
    #[arg(long, conflicts_with = "game")]
    game_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GoalArg {
    Win,
    Neverlose,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Pi,
    Pii,
}

#[derive(Subcommand)]
enum Command {
    /// Write a game as JSON.
    Gen {
        /// Construction name from `catalog`; omit when using --game.
        name: Option<String>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        source: GameArgs,
    },
    /// Check that the generators preserve the lines and act transitively.
    CheckTransitive {
        #[command(flatten)]
        source: GameArgs,
    },
    /// Solve the game exactly.
    Solve {
        #[command(flatten)]
        source: GameArgs,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
        /// Also report the earliest forced loss of a first-player win.
        #[arg(long)]
        earliest: bool,
    },
    /// Solve the variant where a move claims any nonempty set of points.
    SolvePlus {
        #[command(flatten)]
        source: GameArgs,
        #[arg(long, default_value_t = DEFAULT_PLUS_CAP)]
        cap: usize,
    },
    /// Check a scripted strategy against all or sampled opponents.
    VerifyStrategy {
        #[command(flatten)]
        source: GameArgs,
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Defaults to never-lose for pairing strategies, win otherwise.
        #[arg(long, value_enum)]
        goal: Option<GoalArg>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        playouts: u64,
    },
    /// Run the pair-set lemma suites.
    VerifyLemma {
        /// Suite name or `all`.
        #[arg(default_value = "all")]
        lemma: String,
        #[arg(long, default_value_t = 8)]
        m: usize,
    },
    /// Play against a strategy or the solver on standard input.
    Play {
        #[command(flatten)]
        source: GameArgs,
        /// A strategy name, or `solver`.
        #[arg(long, default_value = "solver")]
        strategy: String,
        /// The human's side when playing the solver.
        #[arg(long, value_enum, default_value = "pi")]
        human: Side,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
    },
    /// List the constructions and their parameter ranges.
    Catalog,
}

fn refuse(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into())
}

fn load_game(source: &GameArgs) -> Result<Game> {
    match (&source.game, &source.game_file) {
        (Some(expr), _) => {
            let c: Construction = expr.parse().map_err(|e| refuse(format!("{e}")))?;
            c.build().map_err(|e| refuse(format!("{expr}: {e}")))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let json: GameJson = serde_json::from_str(&text).map_err(|e| refuse(format!("{}: {e}", path.display())))?;
            Game::from_json(&json).map_err(|e| refuse(format!("{}: {e}", path.display())))
        }
        (None, None) => Err(refuse("pass --game <expr> or --game-file <path>")),
    }
}

fn print(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn gen_expr(
    name: &str,
    a: Option<usize>,
    b: Option<usize>,
    p: Option<usize>,
    q: Option<usize>,
    d: Option<usize>,
    n: Option<usize>,
) -> Result<String> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| refuse(format!("{name} needs --{flag}")));
    Ok(match name {
        "odd-composite" => format!("odd-composite({},{})", need(p, "p")?, need(q, "q")?),
        "pairs" | "pairs-implicit" => format!("{name}({})", need(b, "b")?),
        "even-general" => format!("even-general({},{})", need(a, "a")?, need(b, "b")?),
        "torus" => format!("torus({},{})", need(q, "q")?, need(d, "d")?),
        "product-torus" => format!("product-torus({})", need(d, "d")?),
        "affine" | "cycle" | "complete" => format!("{name}({})", need(n, "n")?),
        _ => return Err(refuse(format!("use --game for {name:?} (see `catalog`)"))),
    })
}

fn solve_json(r: &SolveReport, plus: bool) -> Value {
    let pv: Value = if plus {
        json!(r.principal_variation)
    } else {
        json!(r.moves().unwrap_or_default())
    };
    json!({
        "outcome": r.outcome.winner,
        "loss_time": r.outcome.loss_time,
        "pv": pv,
        "states": r.states_visited,
        "table_size": r.table_size,
    })
}

fn default_goal(strategy: &dyn Strategy) -> Goal {
    match strategy.name() {
        "torus-pairing" | "involution-pairing" => Goal::NeverLose,
        _ => Goal::Win,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen {
            name,
            a,
            b,
            p,
            q,
            d,
            n,
            source,
        } => {
            let game = match name {
                Some(name) => {
                    let expr = gen_expr(&name, a, b, p, q, d, n)?;
                    load_game(&GameArgs {
                        game: Some(expr),
                        game_file: None,
                    })?
                }
                None => load_game(&source)?,
            };
            print(&serde_json::to_value(game.to_json())?)?;
        }
        Command::CheckTransitive { source } => {
            let game = load_game(&source)?;
            let preserved = validate_generators(&game);
            let orb = orbit(&game.generators, 0);
            let transitive = preserved.is_ok() && orb == game.board();
            print(&json!({
                "game": game.name,
                "n": game.n,
                "generators": game.generators.len(),
                "preserve_lines": preserved.is_ok(),
                "violation": preserved.err().map(|e| e.to_string()),
                "orbit_of_0": orb.len(),
                "transitive": transitive,
            }))?;
            return Ok(if transitive { 0 } else { REFUTED });
        }
        Command::Solve { source, cap, earliest } => {
            let game = load_game(&source)?;
            let opts = SolveOptions {
                cap,
                ..Default::default()
            };
            let r = solve_with(&game, opts).map_err(|e| refuse(e.to_string()))?;
            let mut v = solve_json(&r, false);
            if earliest && r.outcome.winner == Winner::PIWin {
                v["earliest_forced_loss"] = json!(earliest_forced_loss_with(&game, opts)?);
            }
            print(&v)?;
        }
        Command::SolvePlus { source, cap } => {
            let game = load_game(&source)?;
            let r = solve_plus(&game, cap).map_err(|e| refuse(e.to_string()))?;
            print(&solve_json(&r, true))?;
        }
        Command::VerifyStrategy {
            source,
            strategy,
            goal,
            mode,
            seed,
            playouts,
        } => {
            let game = load_game(&source)?;
            let s = strategy_for(&strategy, &game).map_err(|e| refuse(e.to_string()))?;
            let goal = match goal {
                Some(GoalArg::Win) => Goal::Win,
                Some(GoalArg::Neverlose) => Goal::NeverLose,
                None => default_goal(s.as_ref()),
            };
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Sampled => Mode::Sampled { playouts, seed },
            };
            let r = verify_strategy(&game, s.as_ref(), s.owner(), goal, mode)?;
            let mut v = serde_json::to_value(&r)?;
            v["game"] = json!(game.name);
            v["strategy"] = json!(s.name());
            v["owner"] = json!(s.owner());
            v["goal"] = json!(goal);
            if let Mode::Sampled { seed, .. } = mode {
                v["seed"] = json!(seed);
            }
            print(&v)?;
            return Ok(if r.passed() { 0 } else { REFUTED });
        }
        Command::VerifyLemma { lemma, m } => {
            let lemmas = if lemma == "all" {
                Lemma::ALL.to_vec()
            } else {
                vec![lemma.parse::<Lemma>().map_err(|e| refuse(e))?]
            };
            let mut reports = Vec::new();
            for l in lemmas {
                reports.push(suites::run(l, m).map_err(|e| refuse(e.to_string()))?);
            }
            let ok = reports.iter().all(|r| r.passed());
            print(&json!(reports))?;
            return Ok(if ok { 0 } else { REFUTED });
        }
        Command::Play {
            source,
            strategy,
            human,
            cap,
        } => {
            let game = load_game(&source)?;
            let stdin = io::stdin();
            return play(&game, &strategy, human, cap, &mut stdin.lock(), &mut io::stdout());
        }
        Command::Catalog => print(&json!(catalog()))?,
    }
    Ok(0)
}

enum Opponent {
    Solver(usize),
    Scripted(Box<dyn Strategy>),
}

fn play(
    game: &Game,
    strategy: &str,
    human: Side,
    cap: usize,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<u8> {
    let (mut opp, machine) = if strategy == "solver" {
        if game.n > cap {
            return Err(refuse(format!(
                "board of {} points exceeds the solver cap of {cap}",
                game.n
            )));
        }
        let me = match human {
            Side::Pi => Player::Second,
            Side::Pii => Player::First,
        };
        (Opponent::Solver(cap), me)
    } else {
        let s = strategy_for(strategy, game).map_err(|e| refuse(e.to_string()))?;
        let owner = s.owner();
        (Opponent::Scripted(s), owner)
    };
    writeln!(out, "{}: {} points; you are {}", game.name, game.n, machine.other())?;
    let mut pos = Position::empty();
    let mut last = None;
    let mut line = String::new();
    loop {
        writeln!(out, "PI: {}  PII: {}  free: {}", pos.a, pos.b, pos.free(game.n))?;
        if pos.moves_played() == game.n {
            writeln!(out, "board full: draw")?;
            return Ok(0);
        }
        let x = if pos.to_move == machine {
            let x = match &mut opp {
                Opponent::Solver(cap) => best_move(game, &pos, *cap)?.ok_or_else(|| anyhow!("no move"))?,
                Opponent::Scripted(s) => s.next_move(&pos, last).map_err(|e| anyhow!("strategy failed: {e}"))?,
            };
            writeln!(out, "{machine} plays {x}")?;
            x
        } else {
            write!(out, "{} move> ", machine.other())?;
            out.flush()?;
            line.clear();
            if input.read_line(&mut line)? == 0 {
                writeln!(out)?;
                return Ok(0);
            }
            let text = line.trim();
            if text == "quit" || text == "q" {
                return Ok(0);
            }
            match text.parse::<usize>() {
                Ok(x) if x < game.n && !pos.claimed().contains(x) => x,
                _ => {
                    writeln!(out, "illegal move {text:?}: enter a free point index")?;
                    continue;
                }
            }
        };
        let mover = pos.to_move;
        let (next, lost) = game.apply_move(&pos, x)?;
        if lost {
            writeln!(
                out,
                "{mover} completed a line at move {} and loses",
                next.moves_played()
            )?;
            return Ok(0);
        }
        pos = next;
        last = Some(x);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use avoid_core::constructions::pairs_game;

    #[test]
    fn repl_rejects_illegal_moves() {
        let g = pairs_game(3).unwrap();
        let mut input = io::Cursor::new("9\nx\n0\n");
        let mut out = Vec::new();
        let code = play(&g, "solver", Side::Pii, 16, &mut input, &mut out).unwrap();
        assert_eq!(code, 0);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("illegal move \"9\""));
        assert!(text.contains("illegal move \"x\""));
        assert!(text.contains("PI plays"));
    }
}
