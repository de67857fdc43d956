//! Scalar special functions.

pub mod airy;
pub mod buchstab;
pub mod expint;
pub mod gamma;
pub mod quad;
pub mod series;

pub use airy::{airy_ai, k_airy, k_quadrature, k_zeros};
pub use buchstab::{buchstab_omega, omega_table, OmegaTable};
pub use expint::{exp_integral_j, i_series};
pub use gamma::{gamma_complex, lower_regularized, rgamma, upper_incomplete_gamma};
pub use series::{b_coefficients, RationalSeries};

/// Euler's constant `γ`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// `e^{−γ}`.
pub const EXP_NEG_GAMMA: f64 = 0.561_459_483_566_885_169_824_143_214_791;

/// Lagrange basis on the nodes `0, 1, …, 5`, evaluated at `t`.
pub(crate) fn lagrange6(t: f64) -> [f64; 6] {
    let mut w = [0.0; 6];
    for (m, wm) in w.iter_mut().enumerate() {
        let mut v = 1.0;
        for k in 0..6 {
            if k != m {
                v *= (t - k as f64) / (m as f64 - k as f64);
            }
        }
        *wm = v;
    }
    w
}
