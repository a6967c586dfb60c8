pub mod analysis;
pub mod cli;
pub mod error;
pub mod exact;
pub mod jet;
pub mod kernels;
pub mod quadrature;
pub mod quasilagrange;
pub mod schemes;
pub mod specfun;
pub mod symbols;

pub use error::{Error, Result};
