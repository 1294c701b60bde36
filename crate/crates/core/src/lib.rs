//! Recreational mathematics engine.
//!
//! Each module is a self-contained family of classroom algorithms:
//!
//! * [`games`]: perfect play for Nim and single-pile subtraction games.
//! * [`graphs`]: multigraphs with loops, walk counting, Euler trails.
//! * [`puzzles`]: exact counters and solvers with small search spaces.
//! * [`turtle`]: a turtle virtual machine producing [`Drawing`]s, and SVG output.
//! * [`lsystem`]: L-system parsing, rewriting and compilation to turtle programs.
//! * [`curves`]: chord diagrams, skip counting, curve stitching, rolling curves, Mandelbrot.
//! * [`figures`]: named figure recipes and their SVG or point-list output.
//! * [`numerics`]: rotation, disk masks, the resistor matrix, Buffon's needle, integer identities.

pub mod curves;
pub mod error;
pub mod figures;
pub mod games;
pub mod graphs;
pub mod lsystem;
pub mod numerics;
pub mod puzzles;
pub mod turtle;

pub use error::{Error, Result};
pub use turtle::{Drawing, Point};
