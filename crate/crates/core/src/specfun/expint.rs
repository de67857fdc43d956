//! The exponential integral `J(u) = ∫_u^∞ e^{−t}/t dt` and the entire
//! series `I(s) = ∫_0^s (e^t − 1)/t dt = Σ_{k≥1} s^k/(k·k!)`.

use super::quad::integrate_adaptive;
use crate::error::{Error, Result};

/// `J(u)` for `u > 0`.
///
/// For `u ≥ 1` the classical continued fraction is used; below 1 the
/// integral is rewritten as `∫_{log u}^∞ exp(−e^w) dw`, whose integrand is
/// smooth and bounded, and integrated adaptively.
pub fn exp_integral_j(u: f64) -> Result<f64> {
    if u.is_nan() || u <= 0.0 {
        return Err(Error::Domain(format!("J(u) needs u > 0, got {u}")));
    }
    if u >= 1.0 {
        Ok(j_continued_fraction(u))
    } else {
        let f = |w: f64| (-w.exp()).exp();
        let lo = u.ln();
        let (a, _) = integrate_adaptive(f, lo, 0.0, 1e-16);
        let (b, _) = integrate_adaptive(f, 0.0, 4.0, 1e-17);
        Ok(a + b)
    }
}

fn j_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-x).exp()
}

/// `I(s) = Σ_{k≥1} s^k/(k·k!)` for real `s`.
pub fn i_series(s: f64) -> f64 {
    let mut term = 1.0; // s^k / k!
    let mut sum = 0.0;
    for k in 1..1000 {
        term *= s / k as f64;
        let t = term / k as f64;
        sum += t;
        if t.abs() < 1e-18 * sum.abs().max(1e-300) && k as f64 > s.abs() {
            break;
        }
    }
    sum
}
