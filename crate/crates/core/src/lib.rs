//! Simulation and exhaustive verification of seven oblivious robots
//! gathering on the infinite triangular grid under a fully synchronous
//! scheduler.

pub mod config;
pub mod engine;
pub mod error;
pub mod gather2;
pub mod grid;
pub mod range1;
pub mod render;
pub mod trace;
pub mod verify;

pub use config::{enumerate_connected, CanonicalConfiguration, Configuration};
pub use engine::{Action, Decide, Outcome, Trace, View, VisibilityRange};
pub use error::Error;
pub use grid::{Direction, Label, TriCoord};
