use super::fill::DirectFill;
use super::{Strategy, StrategyError};
use crate::game::{Player, Point, PointSet, Position};
use crate::pairset::{key_params, KeyParams, PairSet};

/// Window choice for a bin filled during the endgame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Window {
    /// Bins before the final empty bin: lowest free point.
    Free,
    /// The final empty bin: the peak lands in `[u - q, u]`.
    Last { u: usize },
    /// Later bins: peak in `[t - s, t]`.
    Low { z: usize },
    /// Later bins: peak in `[t, t + 2q - s)`.
    High { z: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Endgame {
    /// The last bin that was empty when the endgame started.
    r: usize,
    /// Key parameters of the bins after `r`, taken when bin `r` is opened.
    keys: Vec<Option<KeyParams>>,
    /// `sum u_i (i < r) + sum t_i (i > r)`, known once bin `r` is opened.
    base_sum: Option<usize>,
    /// Current guess `G(j)`, known once bin `r` is full.
    guess: Option<usize>,
    /// Lowest bin (from `r`) whose completion has not been accounted for.
    pending: usize,
    /// Bin currently being filled and how.
    bin: Option<(usize, Window)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Phase {
    Building {
        extra: Option<Point>,
        endgame: Option<Endgame>,
    },
    Direct(DirectFill),
}

/// First-player strategy for the general even game on `Z_b x Z_m`.
///
/// Same skeleton as the pairs strategy with an extra point `(x, y)`, plus
/// type-2 direct wins (`z = x` and `w - y` in `(0, q)` or `(2q, 3q)`, with
/// `q = m/4`). Once bins `[0, b')` are full the remaining bins are filled in
/// order; from the last empty bin `r` on, each bin claims a length-`q`
/// interval chosen so that the running guess at the sum of maximal points
/// stays in `[0, 2q)`.
#[derive(Clone, Debug)]
pub struct EvenGeneralStrategy {
    b: usize,
    m: usize,
    phase: Phase,
}

impl EvenGeneralStrategy {
    pub fn new(a: usize, b: usize) -> Self {
        EvenGeneralStrategy {
            b,
            m: 1 << a,
            phase: Phase::Building {
                extra: None,
                endgame: None,
            },
        }
    }

    fn q(&self) -> usize {
        self.m / 4
    }

    fn n(&self) -> usize {
        self.b * self.m
    }

    fn opposite(&self, p: Point) -> Point {
        let (x, y) = (p / self.m, p % self.m);
        x * self.m + (y + self.m / 2) % self.m
    }

    fn bin_mask(&self, x: usize) -> PointSet {
        PointSet::from_bits(((1u64 << self.m) - 1) << (x * self.m))
    }

    fn local(&self, s: PointSet, x: usize) -> u64 {
        s.intersection(self.bin_mask(x)).bits() >> (x * self.m)
    }

    fn peak(&self, pos: &Position, x: usize) -> Result<usize, StrategyError> {
        PairSet::from_bits(self.m, self.local(pos.a, x))
            .and_then(PairSet::maximal_point)
            .map_err(|e| StrategyError::Contradiction(format!("bin {x}: {e}")))
    }

    fn key(&self, pos: &Position, x: usize) -> Result<KeyParams, StrategyError> {
        PairSet::from_bits(self.m, self.local(pos.a, x))
            .and_then(key_params)
            .map_err(|e| StrategyError::Contradiction(format!("bin {x}: {e}")))
    }

    /// Direct-win test for the opponent's reply `l` to the extra point `e`.
    fn is_direct(&self, e: Point, l: Point) -> bool {
        let (m, q) = (self.m, self.q());
        let (x, y, z, w) = (e / m, e % m, l / m, l % m);
        let d = (z + self.b - x) % self.b;
        if (1..=(self.b - 1) / 2).contains(&d) {
            return true;
        }
        let dw = (w + m - y) % m;
        z == x && ((0 < dw && dw < q) || (2 * q < dw && dw < 3 * q))
    }

    fn check_balanced(&self, pos: &Position) -> Result<(), StrategyError> {
        let free = pos.free(self.n());
        if free.iter().all(|p| free.contains(self.opposite(p))) {
            Ok(())
        } else {
            Err(StrategyError::Contradiction(format!(
                "expected a balanced position, got {} / {}",
                pos.a, pos.b
            )))
        }
    }

    /// Accounts for bins `[eg.pending, upto)`, all full by now.
    fn close_bins(&self, pos: &Position, eg: &mut Endgame, upto: usize) -> Result<(), StrategyError> {
        let (m, q) = (self.m, self.q());
        while eg.pending < upto {
            let j = eg.pending;
            let u = self.peak(pos, j)?;
            let next = if j == eg.r {
                let Some((_, Window::Last { u: target })) = eg.bin.filter(|(x, _)| *x == j) else {
                    return Err(StrategyError::Contradiction(format!(
                        "bin {j} closed before it was opened"
                    )));
                };
                if (target + m - u) % m > q {
                    return Err(StrategyError::Contradiction(format!(
                        "peak {u} of bin {j} outside [{target} - {q}, {target}]"
                    )));
                }
                let base = eg.base_sum.expect("set when bin r opens");
                (base + u) % m
            } else {
                let k = eg.keys[j].expect("key parameters of a later bin");
                let g = eg.guess.expect("guess is set once bin r is full");
                let window = eg.bin.filter(|(x, _)| *x == j).map(|(_, w)| w);
                let ok = match window {
                    Some(Window::Low { .. }) => (k.t + m - u) % m <= k.s,
                    Some(Window::High { .. }) => (u + m - k.t) % m < 2 * q - k.s,
                    // a bin that was already full when the endgame began
                    _ => u == k.t,
                };
                if !ok {
                    return Err(StrategyError::Contradiction(format!(
                        "peak {u} of bin {j} escapes its window {window:?} for {k:?}"
                    )));
                }
                (g + u + m - k.t) % m
            };
            if next >= 2 * q {
                return Err(StrategyError::Contradiction(format!(
                    "guess after bin {j} is {next}, outside [0, {})",
                    2 * q
                )));
            }
            eg.guess = Some(next);
            eg.pending += 1;
        }
        Ok(())
    }

    /// Chooses how to fill bin `x`, the lowest bin with a free point.
    fn open_bin(&self, pos: &Position, eg: &mut Endgame, x: usize) -> Result<Window, StrategyError> {
        let (m, q) = (self.m, self.q());
        if x < eg.r {
            return Ok(Window::Free);
        }
        if x == eg.r {
            let mut sum = 0;
            for i in 0..eg.r {
                sum += self.peak(pos, i)?;
            }
            for i in eg.r + 1..self.b {
                let k = self.key(pos, i)?;
                eg.keys[i] = Some(k);
                sum += k.t;
            }
            let sum = sum % m;
            eg.base_sum = Some(sum);
            let u = (0..m)
                .find(|&u| (sum + u + m - q) % m < q)
                .expect("some rotation lands in the window");
            return Ok(Window::Last { u });
        }
        let k = eg.keys[x].ok_or_else(|| StrategyError::Contradiction(format!("no key parameters for bin {x}")))?;
        let g = eg
            .guess
            .ok_or_else(|| StrategyError::Contradiction(format!("bin {x} opened before bin {} closed", eg.r)))?;
        Ok(if g >= k.s {
            Window::Low { z: k.z1 }
        } else {
            Window::High { z: k.z2 }
        })
    }

    /// Next point in bin `x`: the first free point of the window interval,
    /// else the lowest free point of the bin.
    fn pick(&self, pos: &Position, x: usize, w: Window) -> Option<Point> {
        let free = pos.free(self.n()).intersection(self.bin_mask(x));
        let start = match w {
            Window::Free => None,
            Window::Last { u } => Some(u),
            Window::Low { z } | Window::High { z } => Some(z),
        };
        start
            .and_then(|z| {
                (0..self.q())
                    .map(|i| x * self.m + (z + i) % self.m)
                    .find(|&p| free.contains(p))
            })
            .or_else(|| free.first())
    }
}

impl Strategy for EvenGeneralStrategy {
    fn name(&self) -> &str {
        "even-general"
    }

    fn owner(&self) -> Player {
        Player::First
    }

    fn next_move(&mut self, pos: &Position, last: Option<Point>) -> Result<Point, StrategyError> {
        let n = self.n();
        let (extra, endgame) = match &self.phase {
            Phase::Direct(fill) => {
                let fill = *fill;
                return fill.reply(pos, last, n, |p| self.opposite(p));
            }
            Phase::Building { extra, endgame } => (*extra, endgame.clone()),
        };
        if let (Some(e), Some(l)) = (extra, last) {
            if self.is_direct(e, l) {
                self.phase = Phase::Direct(DirectFill { forbidden: l });
                return Ok(self.opposite(e));
            }
            if l != self.opposite(e) {
                let o = self.opposite(l);
                if pos.claimed().contains(o) {
                    return Err(StrategyError::Contradiction(format!("mirror point {o} is taken")));
                }
                return Ok(o);
            }
        }
        self.check_balanced(pos)?;
        let first = pos
            .free(n)
            .first()
            .ok_or_else(|| StrategyError::NoMove("board is full".into()))?;
        let x = first / self.m;
        let half = (self.b - 1) / 2;
        let mut eg = match endgame {
            None if x < half => {
                self.phase = Phase::Building {
                    extra: Some(first),
                    endgame: None,
                };
                return Ok(first);
            }
            None => {
                let r = (half..self.b)
                    .rev()
                    .find(|&i| pos.claimed().is_disjoint(self.bin_mask(i)))
                    .ok_or_else(|| StrategyError::Contradiction("no empty bin at the endgame".into()))?;
                Endgame {
                    r,
                    keys: vec![None; self.b],
                    base_sum: None,
                    guess: None,
                    pending: r,
                    bin: None,
                }
            }
            Some(eg) => eg,
        };
        self.close_bins(pos, &mut eg, x)?;
        let window = match eg.bin {
            Some((bx, w)) if bx == x => w,
            _ => {
                let w = self.open_bin(pos, &mut eg, x)?;
                eg.bin = Some((x, w));
                w
            }
        };
        let p = self
            .pick(pos, x, window)
            .ok_or_else(|| StrategyError::Contradiction(format!("bin {x} has no free point")))?;
        self.phase = Phase::Building {
            extra: Some(p),
            endgame: Some(eg),
        };
        Ok(p)
    }

    fn state_key(&self, out: &mut Vec<u32>) {
        let opt = |v: Option<usize>| v.map_or(u32::MAX, |v| v as u32);
        match &self.phase {
            Phase::Direct(f) => {
                out.push(1);
                f.key(out);
            }
            Phase::Building { extra, endgame } => {
                out.push(0);
                out.push(opt(*extra));
                if let Some(eg) = endgame {
                    out.extend([eg.r as u32, opt(eg.base_sum), opt(eg.guess), eg.pending as u32]);
                    for k in &eg.keys {
                        match k {
                            Some(k) => out.extend([k.s, k.t, k.z1, k.z2].map(|v| v as u32)),
                            None => out.push(u32::MAX),
                        }
                    }
                    match eg.bin {
                        None => out.push(u32::MAX),
                        Some((x, w)) => {
                            let (tag, v) = match w {
                                Window::Free => (0, 0),
                                Window::Last { u } => (1, u),
                                Window::Low { z } => (2, z),
                                Window::High { z } => (3, z),
                            };
                            out.extend([x as u32, tag, v as u32]);
                        }
                    }
                }
            }
        }
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opens_at_origin() {
        let mut s = EvenGeneralStrategy::new(2, 3);
        assert_eq!(s.next_move(&Position::empty(), None).unwrap(), 0);
    }

    #[test]
    fn type_two_windows() {
        let s = EvenGeneralStrategy::new(3, 3);
        // m = 8, q = 2: displacement 1 and 5 are direct wins, 2, 3 and 6 are not
        assert!(s.is_direct(0, 1));
        assert!(s.is_direct(0, 5));
        assert!(!s.is_direct(0, 2));
        assert!(!s.is_direct(0, 3));
        assert!(!s.is_direct(0, 6));
        // bin 1 is one bin later: type 1
        assert!(s.is_direct(0, 8));
        assert!(!s.is_direct(0, 16));
    }
}
