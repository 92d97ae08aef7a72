//! First-order sentences on random ordered graphs and random binary
//! functions, compiled to bounded-depth circuits over subset membership
//! inputs, with the experiments that compare sizes `n` and `n + 1`.

pub mod circuit;
pub mod harness;
pub mod logic;
pub mod models;
pub mod rng;
pub mod semantics;
pub mod switching;
