//! Complex gamma, its entire reciprocal, and the incomplete gamma functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `sin(πz)`, with the real part reduced first so that zeros near integers
/// keep full relative precision.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let w = Complex64::new(z.re - n, z.im);
    let s = (w * PI).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// A logarithm of `Γ(z)` for `Re z ≥ 1/2` (the branch is irrelevant once
/// exponentiated). Callers should prefer [`gamma_complex`] or [`rgamma`].
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        ln_gamma_right(z)
    } else {
        Complex64::new(PI.ln(), 0.0) - sin_pi(z).ln() - ln_gamma_right(1.0 - z)
    }
}

/// `log Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    assert!(x > 0.0);
    ln_gamma(Complex64::new(x, 0.0)).re
}

fn near_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// `Γ(s)`; errors at the poles `s = 0, −1, −2, …`.
pub fn gamma_complex(s: Complex64) -> Result<Complex64> {
    if near_pole(s) {
        return Err(Error::Domain(format!("Γ has a pole at {s}")));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s).exp())
    } else {
        Ok(PI / (sin_pi(s) * ln_gamma_right(1.0 - s).exp()))
    }
}

/// `1/Γ(s)`, entire.
pub fn rgamma(s: Complex64) -> Complex64 {
    if s.re >= 0.5 {
        (-ln_gamma_right(s)).exp()
    } else {
        sin_pi(s) * ln_gamma_right(1.0 - s).exp() / PI
    }
}

/// `Σ_{n≥0} z^n / ((m+1)(m+2)⋯(m+n))`, so that
/// `γ(m, z) = z^m e^{−z} / m · kummer_sum(m, z)`. Needs `Re m > −1` away
/// from the negative integers; converges fastest for `Re m ≥ z`.
pub fn kummer_sum(m: Complex64, z: f64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 1..10_000 {
        term *= z / (m + n as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && (n as f64) > z - m.re {
            break;
        }
    }
    sum
}

/// The regularized lower incomplete gamma `P(m, z) = γ(m, z)/Γ(m)`, entire
/// in `m`, for real `z > 0`.
pub fn lower_regularized(m: Complex64, z: f64) -> Complex64 {
    assert!(z > 0.0);
    let zm = (m * z.ln() - z).exp();
    if m.re >= 1.0 {
        return zm * rgamma(m + 1.0) * kummer_sum(m, z);
    }
    // z^m e^{-z} Σ z^n / Γ(m+n+1), with 1/Γ(m+n+1) filled in downward
    // from a point where it is small and well conditioned
    let top = ((-m.re).max(0.0).ceil() + (2.0 * z).ceil() + 60.0) as usize;
    let mut r = rgamma(m + (top + 1) as f64);
    let mut s = r;
    for n in (0..top).rev() {
        r *= m + (n + 1) as f64;
        s = r + s * z;
    }
    zm * s
}

/// `Γ(s, z) = ∫_z^∞ t^{s−1} e^{−t} dt` for real `z > 0`, any complex `s`.
pub fn upper_incomplete_gamma(s: Complex64, z: f64) -> Result<Complex64> {
    if z.is_nan() || z <= 0.0 {
        return Err(Error::Domain(format!("Γ(s, z) needs z > 0, got {z}")));
    }
    if z > s.re - 1.0 {
        upper_gamma_cf(s, z)
    } else {
        Ok(gamma_complex(s)? * (Complex64::new(1.0, 0.0) - lower_regularized(s, z)))
    }
}

/// Legendre continued fraction, evaluated by the modified Lentz method.
fn upper_gamma_cf(s: Complex64, z: f64) -> Result<Complex64> {
    // complex division squares moduli, so stay well inside the f64 range
    let tiny = Complex64::new(1e-150, 0.0);
    let mut b = Complex64::new(z + 1.0, 0.0) - s;
    let mut c = Complex64::new(1e150, 0.0);
    let mut d = if b.norm() < 1e-150 { Complex64::new(1e150, 0.0) } else { 1.0 / b };
    let mut h = d;
    for i in 1..200_000 {
        let an = -(i as f64) * (Complex64::new(i as f64, 0.0) - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < 1e-150 {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < 1e-150 {
            c = tiny;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-15 {
            return Ok((s * z.ln() - z).exp() * h);
        }
    }
    Err(Error::NumericalConsistency(format!("Γ({s}, {z}) continued fraction did not converge")))
}
