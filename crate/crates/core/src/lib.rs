//! Multiply densely divisible integers and the analytic functions that
//! govern their distribution: the generalized Dickman function `ρ_a`, the
//! entire function `g_a(s)` with its right-most zero `−λ_a`, and the
//! constants `C_a`.

pub mod error;
pub mod exact;
pub mod families;
pub mod gzero;
pub mod integers;
pub mod reference;
pub mod rho;
pub mod specfun;

pub use error::{Error, Result};
