//! Periodic symbols and the moment systems behind them.

mod moments;
mod periodic;
mod trig;

pub use moments::{solve_moment_half, solve_moment_system, MomentEquation, MomentSystem, SolvePolicy};
pub use periodic::*;
pub use trig::{TrigPolynomial, TrigPolynomialRecord};
