//! Transitive avoidance games: boards and line stores, the game families,
//! scripted first- and second-player strategies, exact solvers and the
//! cyclic pair-set machinery behind the general even construction.

pub mod constructions;
pub mod game;
pub mod pairset;
pub mod solver;
pub mod strategies;
