//! Buchstab's function `ω(u)`, defined by `ω(u) = 1/u` on `[1, 2]` and
//! `(uω(u))' = ω(u − 1)` for `u > 2`.
//!
//! The table stores `δ(u) = ω(u) − e^{−γ}`, which satisfies the same delay
//! equation and decays like `1/Γ(u+1)`, so its relative accuracy survives far
//! into the tail. Each unit interval is filled from the previous one by
//! integrating `(uδ)' = δ(u − 1)` with six-point interpolatory cell weights
//! that never straddle an integer, where `ω` has derivative jumps.

use std::sync::OnceLock;

use super::quad::GaussLegendre;
use super::{lagrange6, EXP_NEG_GAMMA};
use crate::error::{Error, Result};

/// Above this `u`, [`buchstab_omega`] returns `e^{−γ}`.
pub const U_SWITCH: f64 = 12.0;

/// Grid points per unit of the shared table.
pub const DEFAULT_INV_STEP: usize = 1024;

/// Right end of the shared table. Beyond it `δ` is below the rounding noise
/// accumulated by the integration and is returned as zero.
pub const DEFAULT_U_MAX: usize = 22;

/// Tabulated `δ(u) = ω(u) − e^{−γ}` on `[1, u_max]`.
#[derive(Debug, Clone)]
pub struct OmegaTable {
    inv_step: usize,
    u_max: usize,
    delta: Vec<f64>,
}

impl OmegaTable {
    /// Builds the table with `inv_step ≥ 8` points per unit up to the integer
    /// `u_max ≥ 3`.
    pub fn new(inv_step: usize, u_max: usize) -> Self {
        assert!(inv_step >= 8 && u_max >= 3);
        let n = inv_step;
        let h = 1.0 / n as f64;
        let mut delta = vec![0.0; (u_max - 1) * n + 1];
        for (j, d) in delta.iter_mut().enumerate().take(2 * n + 1) {
            let u = 1.0 + j as f64 * h;
            *d = omega_closed(u) - EXP_NEG_GAMMA;
        }
        let weights = cell_weights();
        // piece [k, k+1] occupies indices (k-1)n ..= kn
        for k in 3..u_max {
            let base = (k - 2) * n;
            let g0 = k as f64 * delta[(k - 1) * n];
            let mut cum = 0.0;
            for m in 1..=n {
                let c = m - 1;
                let s = c.saturating_sub(2).min(n - 5);
                let w = &weights[c - s];
                let cell: f64 = (0..6).map(|t| w[t] * delta[base + s + t]).sum();
                cum += cell * h;
                delta[(k - 1) * n + m] = (g0 + cum) / (k as f64 + m as f64 * h);
            }
        }
        Self { inv_step, u_max, delta }
    }

    pub fn step(&self) -> f64 {
        1.0 / self.inv_step as f64
    }

    pub fn u_max(&self) -> f64 {
        self.u_max as f64
    }

    /// `δ(u) = ω(u) − e^{−γ}` for `u ≥ 1`; zero past the table.
    pub fn delta(&self, u: f64) -> f64 {
        debug_assert!(u >= 1.0);
        if u <= 3.0 {
            return omega_closed(u) - EXP_NEG_GAMMA;
        }
        if u >= self.u_max as f64 {
            return 0.0;
        }
        let n = self.inv_step;
        let k = u.floor() as usize;
        let tau = (u - k as f64) * n as f64;
        let c = (tau.floor() as usize).min(n - 1);
        let s = c.saturating_sub(2).min(n - 5);
        let base = (k - 1) * n + s;
        let w = lagrange6(tau - s as f64);
        (0..6).map(|t| w[t] * self.delta[base + t]).sum()
    }

    pub fn omega(&self, u: f64) -> f64 {
        EXP_NEG_GAMMA + self.delta(u)
    }

    /// `ω'(u)`: `−1/u²` on `[1, 2)` and `(ω(u−1) − ω(u))/u` from 2 on.
    pub fn omega_prime(&self, u: f64) -> f64 {
        if u < 2.0 {
            -1.0 / (u * u)
        } else {
            (self.delta(u - 1.0) - self.delta(u)) / u
        }
    }

    /// `(u_j, ω(u_j))` at every grid point.
    pub fn grid(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = self.step();
        self.delta.iter().enumerate().map(move |(j, d)| (1.0 + j as f64 * h, EXP_NEG_GAMMA + d))
    }

    /// Estimated absolute error of the tabulated values.
    pub fn accuracy(&self) -> f64 {
        2e-16
    }
}

/// `ω` on `[1, 3]`.
fn omega_closed(u: f64) -> f64 {
    if u <= 2.0 {
        1.0 / u
    } else {
        (1.0 + (u - 1.0).ln()) / u
    }
}

/// `∫_o^{o+1} L_t(τ) dτ` for the Lagrange basis on nodes `0..6`.
fn cell_weights() -> [[f64; 6]; 5] {
    let gl = GaussLegendre::new(3);
    let mut w = [[0.0; 6]; 5];
    for (o, row) in w.iter_mut().enumerate() {
        for (x, wt) in gl.mapped(o as f64, o as f64 + 1.0) {
            let l = lagrange6(x);
            for t in 0..6 {
                row[t] += wt * l[t];
            }
        }
    }
    w
}

/// The shared table (step 1/1024).
pub fn omega_table() -> &'static OmegaTable {
    static TABLE: OnceLock<OmegaTable> = OnceLock::new();
    TABLE.get_or_init(|| OmegaTable::new(DEFAULT_INV_STEP, DEFAULT_U_MAX))
}

/// Buchstab's function. Past [`U_SWITCH`] the constant `e^{−γ}` is returned,
/// which is within `1/Γ(u+1)` of the true value.
pub fn buchstab_omega(u: f64) -> Result<f64> {
    if u.is_nan() || u < 1.0 {
        return Err(Error::Domain(format!("ω(u) needs u ≥ 1, got {u}")));
    }
    if u > U_SWITCH {
        return Ok(EXP_NEG_GAMMA);
    }
    Ok(omega_table().omega(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::ln_gamma_real;
    use crate::specfun::quad::integrate_adaptive;

    #[test]
    fn closed_forms() {
        assert!((buchstab_omega(1.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let w = buchstab_omega(2.5).unwrap();
        assert!((w - (1.0 + 1.5f64.ln()) / 2.5).abs() < 1e-15);
        assert!((w - 0.5621860432).abs() < 1e-9);
        assert!(buchstab_omega(0.5).is_err());
        assert_eq!(buchstab_omega(13.0).unwrap(), EXP_NEG_GAMMA);
    }

    #[test]
    fn third_piece_matches_quadrature_oracle() {
        // uω(u) = 1 + log(u−1) + ∫_2^{u−1} log(t−1)/t dt on [3, 4]
        let t = omega_table();
        for j in 0..=20 {
            let u = 3.0 + j as f64 / 20.0;
            let (i, _) = integrate_adaptive(|x| (x - 1.0).ln() / x, 2.0, u - 1.0, 1e-16);
            let want = (1.0 + (u - 1.0).ln() + i) / u;
            assert!((t.omega(u) - want).abs() < 2e-15, "u={u}");
        }
    }

    #[test]
    fn lemma_bound_at_every_grid_point() {
        let t = omega_table();
        for (u, w) in t.grid() {
            let bound = (-ln_gamma_real(u + 1.0)).exp();
            assert!((w - EXP_NEG_GAMMA).abs() <= bound, "u={u}");
        }
        assert!((buchstab_omega(10.0).unwrap() - EXP_NEG_GAMMA).abs() <= 1.0 / 3_628_800.0);
    }

    #[test]
    fn refinement_changes_nothing_visible() {
        let coarse = OmegaTable::new(256, 14);
        let fine = omega_table();
        for j in 0..=400 {
            let u = 1.0 + j as f64 * 0.0325;
            assert!((coarse.omega(u) - fine.omega(u)).abs() < 1e-13, "u={u}");
        }
    }

    #[test]
    fn delay_equation_residual() {
        let t = omega_table();
        for j in 0..200 {
            let u = 2.05 + j as f64 * 0.07;
            let h = 1e-4;
            let lhs = ((u + h) * t.omega(u + h) - (u - h) * t.omega(u - h)) / (2.0 * h);
            assert!((lhs - t.omega(u - 1.0)).abs() < 1e-8, "u={u}");
            let d = (t.omega(u + h) - t.omega(u - h)) / (2.0 * h);
            if (u - u.round()).abs() > 2.0 * h {
                assert!((d - t.omega_prime(u)).abs() < 1e-8);
            }
        }
    }
}
