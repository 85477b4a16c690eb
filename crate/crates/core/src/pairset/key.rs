use serde::{Deserialize, Serialize};

use super::{PairSet, PairSetError};

/// Window parameters for steering the maximal point of a partial pair set.
///
/// With `q = m/4`: claiming every free point of `[z1, z1 + q)` forces the
/// maximal point of any completion into `[t - s, t]`; claiming every free
/// point of `[z2, z2 + q)` forces it into `[t, t + 2q - s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KeyParams {
    pub s: usize,
    pub t: usize,
    pub z1: usize,
    pub z2: usize,
}

/// Outcome of the brute-force check of both windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyCheck {
    pub first: bool,
    pub second: bool,
}

impl KeyCheck {
    pub fn holds(self) -> bool {
        self.first && self.second
    }
}

/// Lifts `v` (mod m) to the unique integer in `(hi - 2q, hi]`.
fn lift(v: usize, hi: i64, q: i64, m: i64) -> Option<i64> {
    let lo = hi - 2 * q;
    let cand = hi - (hi - v as i64).rem_euclid(m);
    (cand > lo).then_some(cand)
}

/// Computes the window parameters by the constructive case analysis.
///
/// Works in a frame rotated so that 0 is the maximal point of `a_max`. With
/// `A^{k,k+1}` the set filled on `[kq, (k+2)q)` and `x_k` its maximal point
/// (lifted so that `x_4 = 4q`, and each `x_k` into `(x_{k+1} - 2q, x_{k+1}]`):
///
/// * `x_3 = x_4`: every completion of `A^0` peaks at 0;
/// * `x_2 > 2q`: `t = x_3`, `s = x_3 - x_2`, `z1 = 3q`, `z2 = 0`;
/// * `x_3 - x_1 < 2q`: `t = x_2`, `s = x_2 - x_1`, `z1 = 2q`, `z2 = 3q`;
/// * `x_2 - x_0 < 2q`: `t = x_1`, `s = x_1 - x_0`, `z1 = q`, `z2 = 2q`;
/// * otherwise the periodic case, where again `A^0` pins the peak at 0.
pub fn key_params(a: PairSet) -> Result<KeyParams, PairSetError> {
    let m = a.m();
    let q = a.quarter();
    let (mi, qi) = (m as i64, q as i64);
    let c = a.a_max().unique_maximal_point()?;
    let rot = a.rotate(m - c);

    let peak = |k: usize| -> Result<usize, PairSetError> {
        rot.fill_interval(k * q, q)
            .fill_interval((k + 1) * q, q)
            .maximal_point()
    };
    let lifted = |k: usize, hi: i64| -> Result<i64, PairSetError> {
        let v = peak(k)?;
        lift(v, hi, qi, mi).ok_or_else(|| {
            PairSetError::Contradiction(format!(
                "peak {v} of A^{{{k},{}}} outside ({}, {hi}] for {a:?}",
                k + 1,
                hi - 2 * qi
            ))
        })
    };

    let pinned = KeyParams {
        s: 0,
        t: 0,
        z1: 0,
        z2: 0,
    };
    let x4 = mi;
    let x3 = lifted(3, x4)?;
    let local = if x3 == x4 {
        pinned
    } else {
        let x2 = lifted(2, x3)?;
        if x2 > 2 * qi {
            window(x3, x3 - x2, 3 * q, 0)
        } else {
            let x1 = lifted(1, x2)?;
            if x3 - x1 < 2 * qi {
                window(x2, x2 - x1, 2 * q, 3 * q)
            } else {
                let x0 = lifted(0, x1)?;
                if x2 - x0 < 2 * qi {
                    window(x1, x1 - x0, q, 2 * q)
                } else {
                    pinned
                }
            }
        }
    };
    Ok(KeyParams {
        s: local.s,
        t: (local.t + c) % m,
        z1: (local.z1 + c) % m,
        z2: (local.z2 + c) % m,
    })
}

fn window(t: i64, s: i64, z1: usize, z2: usize) -> KeyParams {
    KeyParams {
        s: s as usize,
        t: t as usize,
        z1,
        z2,
    }
}

/// Enumerates every completion of both fills and checks the windows.
pub fn verify_key_params(a: PairSet, p: KeyParams) -> KeyCheck {
    let m = a.m();
    let q = a.quarter();
    let in_first = |u: usize| p.s + 1 >= m || (u + m + p.s - p.t % m) % m <= p.s;
    let in_second = |u: usize| {
        let width = (2 * q) as i64 - p.s as i64;
        width > 0 && ((u + m - p.t % m) % m) < width as usize
    };
    let all = |z: usize, ok: &dyn Fn(usize) -> bool| {
        a.fill_interval(z, q)
            .completions()
            .into_iter()
            .all(|b| b.maximal_point().is_ok_and(ok))
    };
    KeyCheck {
        first: all(p.z1, &in_first),
        second: all(p.z2, &in_second),
    }
}
