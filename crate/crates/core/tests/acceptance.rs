//! Acceptance run: one PASS/FAIL line per criterion. Criteria run on
//! separate threads; the process exits nonzero if any fails.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use avoid_core::constructions::{
    affine_default_bases, affine_game, affine_winning_family, circulant, complete_graph, cycle_graph, disjoint_copies,
    even_general, odd_composite, pairs_game, pairs_game_implicit, product_torus, torus, OddCompositeLines,
};
use avoid_core::game::{is_transitive, k_subsets, Game, LineOracle, Player, PointSet, Winner};
use avoid_core::pairset::suites::{run, Lemma};
use avoid_core::solver::{
    earliest_forced_loss, solve, solve_plus, solve_with, verify_strategy, Goal, Mode, SolveOptions, VerifyReport,
    DEFAULT_PLUS_CAP,
};
use avoid_core::strategies::strategy_for;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verify(game: &Game, strategy: &str, owner: Player, goal: Goal, mode: Mode) -> Result<VerifyReport, String> {
    let s = strategy_for(strategy, game).map_err(|e| e.to_string())?;
    let r = verify_strategy(game, s.as_ref(), owner, goal, mode).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{} / {strategy}: {:?}", game.name, r.verdict))?;
    Ok(r)
}

fn winner(game: &Game) -> Result<Winner, String> {
    solve(game).map(|r| r.outcome.winner).map_err(|e| e.to_string())
}

fn lemma_suites() -> Check {
    let lemmas = [
        Lemma::UniqueMax,
        Lemma::NotMin,
        Lemma::NotTop,
        Lemma::LeastMax,
        Lemma::EarliestLatest,
        Lemma::KeyLemma,
    ];
    let mut cases = 0;
    let mut notes = Vec::new();
    for m in [4, 8, 16] {
        for l in lemmas {
            let r = run(l, m).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{l} at m={m}: {:?}", r.first_failure))?;
            cases += r.cases;
            if let Some(n) = r.note {
                notes.push(format!("{l}/{m}: {n}"));
            }
        }
    }
    let mut msg = format!("6 suites at m=4,8,16, {cases} cases, 0 failures");
    if !notes.is_empty() {
        msg += &format!(" ({})", notes.join("; "));
    }
    Ok(msg)
}

fn pairs() -> Check {
    let g3 = pairs_game(3).map_err(|e| e.to_string())?;
    verify(&g3, "pairs", Player::First, Goal::Win, Mode::Exhaustive)?;
    let w = winner(&g3)?;
    ensure(w == Winner::PIWin, || format!("solve(pairs 3) = {w:?}"))?;
    let t = earliest_forced_loss(&g3).map_err(|e| e.to_string())?;
    ensure(t == 6, || format!("earliest forced loss {t}, expected 6"))?;
    let g5 = pairs_game(5).map_err(|e| e.to_string())?;
    let r = verify(&g5, "pairs", Player::First, Goal::Win, Mode::Exhaustive)?;
    Ok(format!(
        "b=3 PIWin, loss at move 6; b=5 strategy exhaustive ({} leaves)",
        r.leaves_explored
    ))
}

fn odd() -> Check {
    let g = odd_composite(3, 3).map_err(|e| e.to_string())?;
    let r = verify(&g, "odd-bucket", Player::First, Goal::Win, Mode::Exhaustive)?;
    let w = winner(&g)?;
    ensure(w == Winner::PIWin, || format!("solve = {w:?}"))?;
    Ok(format!(
        "(3,3) bucket strategy exhaustive ({} leaves), solver PIWin",
        r.leaves_explored
    ))
}

fn even() -> Check {
    let g = even_general(2, 3).map_err(|e| e.to_string())?;
    let r = verify(&g, "even-general", Player::First, Goal::Win, Mode::Exhaustive)?;
    let g5 = even_general(2, 5).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r5 = verify(&g5, "even-general", Player::First, Goal::Win, Mode::Exhaustive)?;
    Ok(format!(
        "(2,3) exhaustive ({} leaves); (2,5) exhaustive memoized ({} states, {:.1}s)",
        r.leaves_explored,
        r5.states,
        start.elapsed().as_secs_f64()
    ))
}

fn size_two() -> Check {
    let mut games = Vec::new();
    for n in 3..=8 {
        games.push(cycle_graph(n).map_err(|e| e.to_string())?);
    }
    for n in [3, 4] {
        games.push(complete_graph(n).map_err(|e| e.to_string())?);
    }
    let mut seen = Vec::new();
    for g in &games {
        let w = winner(g)?;
        ensure(w != Winner::PIWin, || format!("{} is a PI win", g.name))?;
        seen.push(format!("{}={w:?}", g.name));
    }
    Ok(seen.join(" "))
}

fn power_of_two() -> Check {
    let games = [
        torus(2, 2),
        cycle_graph(4),
        torus(2, 3),
        cycle_graph(8),
        circulant(8, &[[0, 1, 3].into_iter().collect()]),
    ];
    let mut seen = Vec::new();
    for g in games {
        let g = g.map_err(|e| e.to_string())?;
        ensure(matches!(is_transitive(&g), Ok(true)), || {
            format!("{} is not transitive", g.name)
        })?;
        let w = winner(&g)?;
        ensure(w != Winner::PIWin, || format!("{} is a PI win", g.name))?;
        verify(
            &g,
            "involution-pairing",
            Player::Second,
            Goal::NeverLose,
            Mode::Exhaustive,
        )?;
        seen.push(format!("{}={w:?}", g.name));
    }
    Ok(format!("{}; involution pairing never loses on each", seen.join(" ")))
}

fn plus() -> Check {
    let mut games = vec![pairs_game(3), torus(3, 1), torus(2, 2)];
    games.extend((3..=6).map(cycle_graph));
    games.extend((2..=6).map(complete_graph));
    let mut seen = Vec::new();
    for g in games {
        let g = g.map_err(|e| e.to_string())?;
        ensure(matches!(is_transitive(&g), Ok(true)), || {
            format!("{} is not transitive", g.name)
        })?;
        let w = solve_plus(&g, DEFAULT_PLUS_CAP)
            .map_err(|e| e.to_string())?
            .outcome
            .winner;
        ensure(w != Winner::PIWin, || format!("plus {} is a PI win", g.name))?;
        seen.push(format!("{}={w:?}", g.name));
    }
    Ok(seen.join(" "))
}

fn torus_games() -> Check {
    for d in [1, 2] {
        let g = torus(3, d).map_err(|e| e.to_string())?;
        verify(&g, "torus-pairing", Player::First, Goal::NeverLose, Mode::Exhaustive)?;
    }
    let g3 = torus(3, 3).map_err(|e| e.to_string())?;
    let seed = 0x7031_5eed;
    let mode = Mode::Sampled {
        playouts: 100_000,
        seed,
    };
    verify(&g3, "torus-pairing", Player::First, Goal::NeverLose, mode)?;
    let w = winner(&torus(3, 2).map_err(|e| e.to_string())?)?;
    ensure(w != Winner::PIIWin, || "torus(3,2) is a PII win".into())?;
    Ok(format!(
        "pairing never loses: d=1,2 exhaustive, d=3 on 10^5 play-outs (seed {seed}); torus(3,2)={w:?}"
    ))
}

fn products() -> Check {
    let base = pairs_game(3).map_err(|e| e.to_string())?;
    let copies = disjoint_copies(&base, 3).map_err(|e| e.to_string())?;
    let a = verify(&copies, "copy-mirror", Player::First, Goal::Win, Mode::Exhaustive)?;
    let prod = product_torus(1).map_err(|e| e.to_string())?;
    let b = verify(&prod, "product", Player::First, Goal::Win, Mode::Exhaustive)?;
    Ok(format!(
        "copies(pairs(3),3) exhaustive ({} states); product_torus(1) exhaustive ({} states)",
        a.states, b.states
    ))
}

fn primes() -> Check {
    let mut seen = Vec::new();
    for n in [11, 13] {
        let bases: Vec<PointSet> = affine_default_bases(n)
            .ok_or(format!("no default bases for {n}"))?
            .into_iter()
            .map(|b| b.into_iter().collect())
            .collect();
        let w = affine_winning_family(n, &bases);
        for (i, x) in w.iter().enumerate() {
            for y in &w[i..] {
                ensure(!x.is_disjoint(*y), || format!("{x} and {y} are disjoint"))?;
            }
        }
        let g = affine_game(n, &bases).map_err(|e| e.to_string())?;
        ensure(matches!(is_transitive(&g), Ok(true)), || {
            format!("{} is not transitive", g.name)
        })?;
        let start = Instant::now();
        let r = solve_with(
            &g,
            SolveOptions {
                cap: 13,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(r.outcome.winner == Winner::PIWin, || {
            format!("{} = {:?}", g.name, r.outcome)
        })?;
        seen.push(format!(
            "n={n}: |W|={}, PIWin in {:.1}s",
            w.len(),
            start.elapsed().as_secs_f64()
        ));
    }
    Ok(seen.join("; "))
}

fn brute(o: &OddCompositeLines, s: PointSet) -> bool {
    k_subsets(s, o.line_size()).any(|t| o.is_line(t))
}

fn cross_oracle() -> Check {
    let o = OddCompositeLines::new(3, 3);
    for bits in 0u64..1 << 9 {
        let s = PointSet::from_bits(bits);
        ensure(o.contains_line(s) == brute(&o, s), || format!("(3,3) disagrees on {s}"))?;
    }
    let o = OddCompositeLines::new(3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let s = PointSet::from_bits(rng.gen::<u64>() & ((1 << 15) - 1));
        ensure(o.contains_line(s) == brute(&o, s), || format!("(3,5) disagrees on {s}"))?;
    }
    let e = pairs_game(3).map_err(|e| e.to_string())?;
    let i = pairs_game_implicit(3).map_err(|e| e.to_string())?;
    for bits in 0u64..1 << 6 {
        let s = PointSet::from_bits(bits);
        ensure(e.contains_line(s) == i.contains_line(s), || {
            format!("pairs stores disagree on {s}")
        })?;
    }
    Ok("odd (3,3) all 512 sets, (3,5) 10^4 random sets, pairs(3) stores agree on all 64 sets".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("lemma suites", lemma_suites),
        ("pairs game", pairs),
        ("odd composite", odd),
        ("general even", even),
        ("size-2 lines", size_two),
        ("power of two", power_of_two),
        ("plus variant", plus),
        ("torus", torus_games),
        ("products", products),
        ("primes 11 and 13", primes),
        ("cross-oracle", cross_oracle),
    ];
    let results: Vec<(Check, f64)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    (f(), start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0)))
            .collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (res, secs))) in criteria.iter().zip(results).enumerate() {
        match res {
            Ok(msg) => println!("PASS {:>2} {name} [{secs:.1}s]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
