//! The generalized Dickman function
//!
//! `ρ_a(u) = 1 − ∫_0^{(u−1)/(1+a)} ρ_a(v) ω((u−v)/(1+av)) dv/(1+av)`,
//!
//! with `ρ_a = 1` on `[0, 1]`, tabulated on a uniform grid. Each new value
//! only needs `ρ_a` on `[0, u − 1]`, so the table fills left to right.

use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gzero::ZeroCertificate;
use crate::specfun::lagrange6;
use crate::specfun::omega_table;
use crate::specfun::quad::GaussLegendre;

/// Largest step accepted by [`RhoTable::build`].
pub const MAX_STEP: f64 = 1.0 / 128.0;

/// Default right end of a table.
pub const DEFAULT_U_MAX: f64 = 60.0;

/// Longest quadrature panel inside the recurrence integral.
const PANEL: f64 = 0.25;

/// `ρ_a` on the grid `u_j = j h`, `0 ≤ u_j ≤ u_max`.
#[derive(Debug, Clone)]
pub struct RhoTable {
    a: f64,
    inv_step: usize,
    values: Vec<f64>,
    kinks: Vec<f64>,
}

/// Highest derivative order whose jumps are tracked.
const KINK_ORDER: u32 = 5;

/// Points `u` where some derivative of order `≤ KINK_ORDER` of `ρ_a` jumps.
///
/// `ρ_a'` jumps at 1. The arguments of `ω` reach an integer `m` (where
/// `ω^{(m−1)}` jumps) at `v = (u − m)/(1 + am)`, so a jump of order `k` at
/// `c` reappears with order `k + m` at `u = m + c(1 + am)`; the endpoint
/// `v = 0` gives order `m` at `u = m`.
fn singular_points(a: f64, u_max: f64) -> Vec<f64> {
    let mut pts: Vec<(f64, u32)> = vec![(1.0, 1)];
    for m in 2..=KINK_ORDER {
        pts.push((m as f64, m));
    }
    let mut frontier = pts.clone();
    while let Some((c, k)) = frontier.pop() {
        for m in 1..=(KINK_ORDER - k.min(KINK_ORDER)) {
            let u = m as f64 + c * (1.0 + a * m as f64);
            if u <= u_max + 1.0 && !pts.iter().any(|&(p, q)| (p - u).abs() < 1e-12 && q <= k + m) {
                pts.push((u, k + m));
                frontier.push((u, k + m));
            }
        }
    }
    let mut out: Vec<f64> = pts.into_iter().map(|(u, _)| u).collect();
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    out
}

/// Degree-5 interpolation in a table with `n` points per unit. The stencil
/// stays between consecutive points of `kinks` whenever that stretch holds
/// six nodes.
fn interp(values: &[f64], n: usize, kinks: &[f64], v: f64) -> f64 {
    if v <= 1.0 {
        return if v < 0.0 { 0.0 } else { 1.0 };
    }
    let nf = n as f64;
    let last = values.len() - 1;
    let i = kinks.partition_point(|&k| k <= v);
    let lo_idx = (kinks[i - 1] * nf - 1e-9).ceil() as usize;
    let hi_idx = kinks.get(i).map_or(last, |&k| ((k * nf + 1e-9).floor() as usize).min(last));
    let c = (v * nf).floor() as usize;
    let s = if hi_idx >= lo_idx + 5 {
        c.saturating_sub(2).max(lo_idx).min(hi_idx - 5)
    } else {
        c.saturating_sub(2).max(n).min(last - 5)
    };
    let w = lagrange6(v * nf - s as f64);
    (0..6).map(|t| w[t] * values[s + t]).sum()
}

impl RhoTable {
    /// Fills the table for `a ≥ 0` (`a = 0` gives Dickman's `ρ`), with step
    /// `h = 1/n` for an integer `n ≥ 128`.
    pub fn build(a: f64, u_max: f64, h: f64) -> Result<Self> {
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::Domain(format!("a must be ≥ 0, got {a}")));
        }
        if !(u_max > 0.0) || u_max > 500.0 {
            return Err(Error::Resource(format!("u_max must lie in (0, 500], got {u_max}")));
        }
        let n = (1.0 / h).round();
        if !(h > 0.0) || h > MAX_STEP * (1.0 + 1e-12) || ((1.0 / h) - n).abs() > 1e-9 {
            return Err(Error::Domain(format!("step must be 1/n with n ≥ 128, got {h}")));
        }
        let n = n as usize;
        let total = (u_max * n as f64).ceil() as usize;
        let total = total.max(n + 6);
        let omega = omega_table();
        let gl = GaussLegendre::new(10);
        let mut values = vec![1.0; n + 1];
        values.reserve(total - n);
        let kinks = singular_points(a, total as f64 / n as f64);
        let mut cuts = Vec::new();
        for j in (n + 1)..=total {
            let u = j as f64 / n as f64;
            let upper = (u - 1.0) / (1.0 + a);
            cuts.clear();
            cuts.push(0.0);
            cuts.extend(kinks.iter().copied().filter(|&k| k < upper));
            // ω has derivative jumps where its argument is an integer
            let mut m = 2.0;
            while m < u {
                let v = (u - m) / (1.0 + m * a);
                if v > 0.0 && v < upper {
                    cuts.push(v);
                }
                m += 1.0;
            }
            cuts.push(upper);
            cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let mut integral = 0.0;
            for seg in cuts.windows(2) {
                let (lo, hi) = (seg[0], seg[1]);
                if hi <= lo {
                    continue;
                }
                let pieces = ((hi - lo) / PANEL).ceil() as usize;
                let width = (hi - lo) / pieces as f64;
                for p in 0..pieces {
                    let pa = lo + p as f64 * width;
                    integral += gl.integrate(pa, pa + width, |v| {
                        let d = 1.0 + a * v;
                        let arg = ((u - v) / d).max(1.0);
                        interp(&values, n, &kinks, v) * omega.omega(arg) / d
                    });
                }
            }
            values.push(1.0 - integral);
        }
        Ok(Self { a, inv_step: n, values, kinks })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn step(&self) -> f64 {
        1.0 / self.inv_step as f64
    }

    pub fn u_max(&self) -> f64 {
        (self.values.len() - 1) as f64 / self.inv_step as f64
    }

    /// Estimated absolute error per tabulated value.
    pub fn accuracy_budget(&self) -> f64 {
        1e-8
    }

    /// `ρ_a(u)`, interpolated; `0` for `u < 0`.
    pub fn value(&self, u: f64) -> Result<f64> {
        if u > self.u_max() + 1e-12 {
            return Err(Error::Domain(format!("u = {u} beyond table end {}", self.u_max())));
        }
        Ok(interp(&self.values, self.inv_step, &self.kinks, u.min(self.u_max())))
    }

    /// `F_a(z) = ρ_a((e^z − 1)/a)`.
    pub fn f_view(&self, z: f64) -> Result<f64> {
        if self.a == 0.0 {
            return Err(Error::Domain("F_a needs a > 0".into()));
        }
        self.value(z.exp_m1() / self.a)
    }

    /// `(u_j, ρ_a(u_j))` at every grid point.
    pub fn grid(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.inv_step as f64;
        self.values.iter().enumerate().map(move |(j, &v)| (j as f64 / n, v))
    }

    /// CSV with header `u,rho,model,ratio`; the model columns are empty
    /// without a certificate. Every `stride`-th grid point is written.
    pub fn to_csv(&self, cert: Option<&ZeroCertificate>, stride: usize) -> Result<String> {
        let mut out = String::from("u,rho,model,ratio\n");
        for (u, r) in self.grid().step_by(stride.max(1)) {
            match cert {
                Some(c) => {
                    let m = rho_asymptotic(self.a, u, c)?;
                    writeln!(out, "{u},{r:.12e},{m:.12e},{:.12e}", r / m).unwrap();
                }
                None => writeln!(out, "{u},{r:.12e},,").unwrap(),
            }
        }
        Ok(out)
    }
}

/// `ρ_a(u)` from a freshly built table reaching `u`.
pub fn rho(a: f64, u: f64) -> Result<f64> {
    if u <= 1.0 {
        return Ok(if u < 0.0 { 0.0 } else { 1.0 });
    }
    RhoTable::build(a, u.max(1.1), MAX_STEP)?.value(u)
}

/// `C_a / (1 + a u)^{λ_a}`.
pub fn rho_asymptotic(a: f64, u: f64, cert: &ZeroCertificate) -> Result<f64> {
    if (cert.a - a).abs() > 1e-12 * a.max(1.0) {
        return Err(Error::Domain(format!("certificate is for a = {}, not {a}", cert.a)));
    }
    Ok(cert.c / (1.0 + a * u).powf(cert.lambda))
}

/// Dickman's `ρ(u)`, from `uρ'(u) = −ρ(u − 1)` on a fine grid.
pub fn dickman(u: f64) -> f64 {
    dickman_table().value(u)
}

struct DickmanTable {
    n: usize,
    values: Vec<f64>,
}

impl DickmanTable {
    fn new(n: usize, u_max: usize) -> Self {
        let mut values = vec![0.0; u_max * n + 1];
        for (j, v) in values.iter_mut().enumerate().take(2 * n + 1) {
            let u = j as f64 / n as f64;
            *v = if u <= 1.0 { 1.0 } else { 1.0 - u.ln() };
        }
        let gl = GaussLegendre::new(3);
        let mut weights = [[0.0; 6]; 5];
        for (o, row) in weights.iter_mut().enumerate() {
            for (x, wt) in gl.mapped(o as f64, o as f64 + 1.0) {
                let l = lagrange6(x);
                for t in 0..6 {
                    row[t] += wt * l[t];
                }
            }
        }
        let h = 1.0 / n as f64;
        // piece [k, k+1] from ρ(u) = ρ(k) − ∫_k^u ρ(t−1)/t dt
        for k in 2..u_max {
            let base = (k - 1) * n;
            let start = values[k * n];
            let mut cum = 0.0;
            for m in 1..=n {
                let c = m - 1;
                let s = c.saturating_sub(2).min(n - 5);
                let w = &weights[c - s];
                let cell: f64 = (0..6)
                    .map(|t| {
                        let idx = s + t;
                        w[t] * values[base + idx] / (k as f64 + idx as f64 * h)
                    })
                    .sum();
                cum += cell * h;
                values[k * n + m] = start - cum;
            }
        }
        Self { n, values }
    }

    fn value(&self, u: f64) -> f64 {
        if u <= 1.0 {
            return if u < 0.0 { 0.0 } else { 1.0 };
        }
        let n = self.n;
        let last = self.values.len() - 1;
        if u * n as f64 >= last as f64 {
            return 0.0;
        }
        let k = u.floor() as usize;
        let tau = (u - k as f64) * n as f64;
        let c = (tau.floor() as usize).min(n - 1);
        let s = c.saturating_sub(2).min(n - 5);
        let w = lagrange6(tau - s as f64);
        (0..6).map(|t| w[t] * self.values[k * n + s + t]).sum()
    }
}

fn dickman_table() -> &'static DickmanTable {
    static TABLE: OnceLock<DickmanTable> = OnceLock::new();
    TABLE.get_or_init(|| DickmanTable::new(1024, 80))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quad::integrate_adaptive;

    fn closed_form(a: f64, u: f64) -> f64 {
        1.0 + ((1.0 + a * u) / (u * (1.0 + a))).ln()
    }

    #[test]
    fn flat_then_closed_form() {
        for a in [0.0, 0.5, 1.0, 0.25] {
            let t = RhoTable::build(a, 4.0, MAX_STEP).unwrap();
            assert_eq!(t.value(0.5).unwrap(), 1.0);
            for j in 0..=64 {
                let u = 1.0 + j as f64 / 64.0;
                assert!((t.value(u).unwrap() - closed_form(a, u)).abs() < 1e-10, "a={a} u={u}");
            }
        }
        assert!((rho(1.0, 2.0).unwrap() - (1.0 - (4.0f64 / 3.0).ln())).abs() < 1e-10);
        assert!((rho(0.0, 2.0).unwrap() - (1.0 - 2f64.ln())).abs() < 1e-10);
    }

    #[test]
    fn dickman_matches_quadrature_oracle() {
        // ρ(u) = ρ(2) − ∫_2^u (1 − log(t−1))/t dt on [2, 3]
        for j in 0..=10 {
            let u = 2.0 + j as f64 / 10.0;
            let (i, _) = integrate_adaptive(|t| (1.0 - (t - 1.0).ln()) / t, 2.0, u, 1e-16);
            let want = 1.0 - 2f64.ln() - i;
            assert!((dickman(u) - want).abs() < 1e-14, "u={u}");
        }
    }

    #[test]
    fn zero_parameter_reduces_to_dickman() {
        let t = RhoTable::build(0.0, 8.0, MAX_STEP).unwrap();
        for (u, r) in t.grid().step_by(37) {
            assert!((r - dickman(u)).abs() < 1e-10, "u={u}");
        }
    }

    #[test]
    fn table_invariants() {
        for a in [1.0, 0.5, 1.0 / 3.0, 0.25] {
            let t = RhoTable::build(a, 30.0, MAX_STEP).unwrap();
            let mut prev = f64::INFINITY;
            for (u, r) in t.grid() {
                assert!(r <= prev, "a={a} u={u}");
                assert!(r <= 1.0 && r >= dickman(u), "a={a} u={u}");
                if u <= 1.0 {
                    assert_eq!(r, 1.0);
                }
                prev = r;
            }
        }
    }

    #[test]
    fn refinement_is_within_budget() {
        let coarse = RhoTable::build(0.5, 20.0, 1.0 / 128.0).unwrap();
        let fine = RhoTable::build(0.5, 20.0, 1.0 / 256.0).unwrap();
        for (u, r) in coarse.grid() {
            assert!((r - fine.value(u).unwrap()).abs() < 10.0 * coarse.accuracy_budget(), "u={u}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(RhoTable::build(-1.0, 5.0, MAX_STEP).is_err());
        assert!(RhoTable::build(1.0, 600.0, MAX_STEP).is_err());
        assert!(RhoTable::build(1.0, 5.0, 0.01).is_err());
        assert!(RhoTable::build(1.0, 5.0, MAX_STEP).unwrap().value(6.0).is_err());
    }
}
