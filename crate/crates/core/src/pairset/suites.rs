//! Exhaustive checks of the rotation lemmas over every pair set of Z_m.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{
    all_full_pair_sets, all_partial_pair_sets, key_params, verify_key_params, CyclicSet, PairSet, PairSetError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    UniqueMax,
    OppositeFlip,
    Composition,
    NotMin,
    NotTop,
    LeastMax,
    EarliestLatest,
    KeyLemma,
}

impl Lemma {
    pub const ALL: [Lemma; 8] = [
        Lemma::UniqueMax,
        Lemma::OppositeFlip,
        Lemma::Composition,
        Lemma::NotMin,
        Lemma::NotTop,
        Lemma::LeastMax,
        Lemma::EarliestLatest,
        Lemma::KeyLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::UniqueMax => "unique-max",
            Lemma::OppositeFlip => "opposite-flip",
            Lemma::Composition => "composition",
            Lemma::NotMin => "not-min",
            Lemma::NotTop => "not-top",
            Lemma::LeastMax => "least-max",
            Lemma::EarliestLatest => "earliest-latest",
            Lemma::KeyLemma => "key-lemma",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = if s == "least-max-point" { "least-max" } else { s };
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown lemma {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub lemma: Lemma,
    pub m: usize,
    /// Instances checked.
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SuiteReport {
    fn new(lemma: Lemma, m: usize) -> Self {
        SuiteReport {
            lemma,
            m,
            cases: 0,
            failures: 0,
            first_failure: None,
            note: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

/// Runs one lemma suite over all relevant sets of Z_m.
pub fn run(lemma: Lemma, m: usize) -> Result<SuiteReport, PairSetError> {
    let mut rep = SuiteReport::new(lemma, m);
    match lemma {
        Lemma::UniqueMax => unique_max(&mut rep)?,
        Lemma::OppositeFlip => opposite_flip(&mut rep)?,
        Lemma::Composition => composition(&mut rep)?,
        Lemma::NotMin => not_min(&mut rep)?,
        Lemma::NotTop => not_top(&mut rep)?,
        Lemma::LeastMax => least_max(&mut rep)?,
        Lemma::EarliestLatest => earliest_latest(&mut rep)?,
        Lemma::KeyLemma => key_lemma(&mut rep)?,
    }
    Ok(rep)
}

fn unique_max(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    for a in all_partial_pair_sets(rep.m)? {
        let own = a.as_set().r_maximal_points(rep.m)?;
        rep.check(own.len() == 1, || format!("{:?} peaks at {own:?}", a.as_set().points()));
        let amax = a.a_max().r_maximal_points(rep.m)?;
        rep.check(amax.len() == 1, || {
            format!("a_max of {:?} peaks at {amax:?}", a.as_set().points())
        });
    }
    Ok(())
}

fn opposite_flip(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    let m = rep.m;
    for a in all_full_pair_sets(m)? {
        for r in 1..=m {
            let maxs = a.as_set().r_maximal_points(r)?;
            let mins = a.as_set().r_minimal_points(r)?;
            for x in 0..m {
                let flipped = mins.contains(&((x + m / 2) % m));
                rep.check(maxs.contains(&x) == flipped, || {
                    format!("{:?} x={x} r={r}", a.as_set().points())
                });
            }
        }
    }
    Ok(())
}

fn composition(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    let m = rep.m;
    let sets: Vec<CyclicSet> = if m <= 8 {
        (0u64..1 << m)
            .map(|bits| CyclicSet::from_bits(m, bits))
            .collect::<Result<_, _>>()?
    } else {
        rep.note = Some(format!("all partial pair sets (all subsets only for m <= 8)"));
        all_partial_pair_sets(m)?.into_iter().map(PairSet::as_set).collect()
    };
    for a in sets {
        let maximal: Vec<Vec<usize>> = (1..=m).map(|r| a.r_maximal_points(r)).collect::<Result<_, _>>()?;
        for r in 1..=m {
            for &x in &maximal[r - 1] {
                for r2 in 1..=m {
                    if maximal[r2 - 1].contains(&((x + r) % m)) {
                        let ok = a.is_r_maximal(x, r + r2)?;
                        rep.check(ok, || format!("{:?} x={x} r={r} r'={r2}", a.points()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn not_min(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    let m = rep.m;
    for a in all_full_pair_sets(m)? {
        if a.maximal_point()? != 0 {
            continue;
        }
        for r in 1..m / 2 {
            let mins = a.as_set().r_minimal_points(r)?;
            let bad = mins.iter().find(|&&x| x <= r).copied();
            rep.check(bad.is_none(), || {
                format!("{:?} r={r}: {bad:?} is r-minimal", a.as_set().points())
            });
        }
    }
    Ok(())
}

fn not_top(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    let m = rep.m;
    let q = m / 4;
    for a in all_full_pair_sets(m)? {
        let top = a.maximal_point()?;
        for x in a.as_set().r_maximal_points(q)? {
            rep.check((x + m - top) % m < 2 * q, || {
                format!("{:?} q-maximal {x}, peak {top}", a.as_set().points())
            });
        }
    }
    Ok(())
}

fn least_max(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    let m = rep.m;
    let q = m / 4;
    for a in all_full_pair_sets(m)? {
        let qmax = a.as_set().r_maximal_points(q)?;
        if !qmax.contains(&0) {
            continue;
        }
        let first = (2 * q + 1..=4 * q).map(|x| x % m).find(|x| qmax.contains(x));
        let top = a.maximal_point()?;
        rep.check(first == Some(top), || {
            format!("{:?} first={first:?} peak={top}", a.as_set().points())
        });
    }
    Ok(())
}

fn earliest_latest(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    let m = rep.m;
    let q = m / 4;
    let (mi, qi) = (m as i64, q as i64);
    let md = |v: i64| v.rem_euclid(mi) as usize;
    for a in all_partial_pair_sets(m)? {
        let amax = a.a_max();
        let free = a.free_points();
        for x in amax.r_maximal_points(q)? {
            let xi = x as i64;
            for d in 0..m {
                if d > 0 && free.contains((x + d - 1) % m) {
                    break;
                }
                let yi = xi + d as i64;
                let a1 = a.fill_interval(md(yi), q).fill_interval(md(yi - qi), q);
                let peak = a1.maximal_point()?;
                let lifted = xi - (xi - peak as i64).rem_euclid(mi);
                let label = || format!("{:?} x={x} y={}", a.as_set().points(), md(yi));
                // (a)
                let in_window = lifted > xi - 2 * qi;
                rep.check(in_window, || format!("(a) {} peak {peak}", label()));
                if !in_window {
                    continue;
                }
                // (b)
                rep.check(amax.is_r_maximal(peak, q)?, || format!("(b) {}", label()));
                // (c)
                if lifted <= yi - qi {
                    let clear = (lifted..yi - qi).all(|p| !free.contains(md(p)));
                    rep.check(clear, || format!("(c) {} peak {peak}", label()));
                }
                // (d)
                let span = (xi - lifted) as usize;
                for b in a.fill_interval(md(yi), q).completions() {
                    let u = b.maximal_point()?;
                    rep.check((u + m - peak) % m <= span, || {
                        format!("(d) {} completion {:?} peaks at {u}", label(), b.as_set().points())
                    });
                }
            }
        }
    }
    Ok(())
}

fn key_lemma(rep: &mut SuiteReport) -> Result<(), PairSetError> {
    let mut max_s = 0;
    for a in all_partial_pair_sets(rep.m)? {
        match key_params(a) {
            Ok(p) => {
                max_s = max_s.max(p.s);
                let check = verify_key_params(a, p);
                rep.check(check.holds(), || {
                    format!("{:?} -> {p:?}: {check:?}", a.as_set().points())
                });
            }
            Err(e) => rep.check(false, || format!("{:?}: {e}", a.as_set().points())),
        }
    }
    rep.note = Some(format!("largest s observed: {max_s}"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_m8() {
        for lemma in Lemma::ALL {
            let rep = run(lemma, 8).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn names_parse() {
        for lemma in Lemma::ALL {
            assert_eq!(lemma.name().parse::<Lemma>().unwrap(), lemma);
        }
        assert_eq!("least-max-point".parse::<Lemma>().unwrap(), Lemma::LeastMax);
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn key_lemma_counts_every_partial_set() {
        let rep = run(Lemma::KeyLemma, 8).unwrap();
        assert_eq!(rep.cases, 80);
    }
}
