use serde::{Deserialize, Serialize};

use super::{Game, GameError, LineStore, Permutation, PointSet};
use crate::constructions::Construction;

/// On-disk game format. Implicit stores are written as the construction
/// that produced them and rebuilt on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameJson {
    pub n: usize,
    pub name: String,
    pub lines: LinesJson,
    pub generators: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinesJson {
    Explicit(Vec<PointSet>),
    Implicit(Construction),
}

impl GameJson {
    pub fn from_game(game: &Game) -> Self {
        let lines = match (&game.lines, &game.origin) {
            (LineStore::Explicit(e), _) => LinesJson::Explicit(e.lines().to_vec()),
            (LineStore::Implicit(_), Some(origin)) => LinesJson::Implicit(origin.clone()),
            (LineStore::Implicit(_), None) => {
                unreachable!("implicit line stores are only produced by constructions")
            }
        };
        GameJson {
            n: game.n,
            name: game.name.clone(),
            lines,
            generators: game.generators.clone(),
        }
    }

    pub fn to_game(&self) -> Result<Game, GameError> {
        match &self.lines {
            LinesJson::Explicit(lines) => {
                let store = LineStore::explicit(self.n, lines.clone())?;
                let mut game = Game::new(self.n, self.name.clone(), store, self.generators.clone())?;
                // Recover layout and origin when the name is a construction
                // expression producing exactly these lines.
                if let Ok(c) = self.name.parse::<Construction>() {
                    if let Ok(rebuilt) = c.build() {
                        let same = rebuilt.n == self.n
                            && rebuilt.lines.as_explicit().is_some_and(|r| {
                                let mut a = r.lines().to_vec();
                                let mut b = lines.clone();
                                a.sort_unstable();
                                b.sort_unstable();
                                a == b
                            });
                        if same {
                            game.layout = rebuilt.layout;
                            game.origin = Some(c);
                        }
                    }
                }
                Ok(game)
            }
            LinesJson::Implicit(c) => {
                let rebuilt = c.build().map_err(|e| GameError::Rebuild(e.to_string()))?;
                if rebuilt.n != self.n {
                    return Err(GameError::Rebuild(format!(
                        "{c} has {} points, file says {}",
                        rebuilt.n, self.n
                    )));
                }
                let mut game = Game::new(self.n, self.name.clone(), rebuilt.lines, self.generators.clone())?;
                game.layout = rebuilt.layout;
                game.origin = Some(c.clone());
                Ok(game)
            }
        }
    }
}
