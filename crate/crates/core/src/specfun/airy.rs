//! The Airy function `Ai` and the oscillatory integral
//! `K(ν) = ∫_{−∞}^{∞} cos(−3νu/2 + νu³/2) du = 2π (2/(3ν))^{1/3} Ai(−(3ν/2)^{2/3})`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::{integrate_adaptive, GaussLegendre};
use crate::error::{Error, Result};

const AI0: f64 = 0.355_028_053_887_817_239_260;
const AIP0: f64 = -0.258_819_403_792_806_798_405;

/// Advances `(y, y')` of `y'' = x y` from `x0` to `x0 + d` by Taylor series.
fn taylor_step(x0: f64, y: f64, yp: f64, d: f64) -> (f64, f64) {
    // (n+2)(n+1) c_{n+2} = x0 c_n + c_{n-1}
    let mut c = vec![y, yp, 0.5 * x0 * y];
    let mut n = 1;
    loop {
        let next = (x0 * c[n] + c[n - 1]) / (((n + 2) * (n + 1)) as f64);
        c.push(next);
        n += 1;
        let tail = (c[n].abs() + c[n + 1].abs() * d.abs()) * d.abs().powi(n as i32);
        if (n > 8 && tail < 1e-19) || n > 200 {
            break;
        }
    }
    let (mut val, mut der) = (0.0, 0.0);
    for (k, ck) in c.iter().enumerate().rev() {
        val = val * d + ck;
        if k > 0 {
            der = der * d + k as f64 * ck;
        }
    }
    (val, der)
}

/// `(Ai(x), Ai'(x))` for `x ≤ 0`, stepping the Airy equation from 0.
pub fn airy_ai_neg(x: f64) -> (f64, f64) {
    assert!(x <= 0.0);
    let steps = ((-x) / 0.5).ceil().max(1.0) as usize;
    let d = x / steps as f64;
    let (mut y, mut yp) = (AI0, AIP0);
    for k in 0..steps {
        let (a, b) = taylor_step(k as f64 * d, y, yp, d);
        y = a;
        yp = b;
    }
    (y, yp)
}

/// `Ai(x)` for real `x`.
pub fn airy_ai(x: f64) -> f64 {
    if x <= 0.0 {
        airy_ai_neg(x).0
    } else if x <= 2.0 {
        // Maclaurin: Ai = c1 f − c2 g
        let (mut f, mut g) = (1.0, x);
        let (mut tf, mut tg) = (1.0, x);
        let x3 = x * x * x;
        for k in 1..200 {
            let k3 = 3 * k;
            tf *= x3 / (((k3 - 1) * k3) as f64);
            tg *= x3 / ((k3 * (k3 + 1)) as f64);
            f += tf;
            g += tg;
            if tf.abs() < 1e-18 && tg.abs() < 1e-18 {
                break;
            }
        }
        AI0 * f + AIP0 * g
    } else {
        // Ai(x) = e^{−ζ}/π ∫_0^∞ exp(−√x t²) cos(t³/3) dt, ζ = (2/3) x^{3/2}
        let sx = x.sqrt();
        let zeta = 2.0 / 3.0 * x * sx;
        let upper = (40.0 / sx).sqrt() + 1.0;
        let (v, _) = integrate_adaptive(|t| (-sx * t * t).exp() * (t * t * t / 3.0).cos(), 0.0, upper, 1e-16);
        (-zeta).exp() / PI * v
    }
}

/// `K(ν)` through the Airy function.
pub fn k_airy(nu: f64) -> Result<f64> {
    if nu.is_nan() || nu <= 0.0 {
        return Err(Error::Domain(format!("K(ν) needs ν > 0, got {nu}")));
    }
    let scale = (2.0 / (3.0 * nu)).cbrt();
    let x = (1.5 * nu).powf(2.0 / 3.0);
    Ok(2.0 * PI * scale * airy_ai(-x))
}

/// `K(ν)` by direct quadrature of `2 Re ∫_0^∞ e^{iφ(u)} du` with
/// `φ(u) = (ν/2)(u³ − 3u)`: the real segment `[0, 2]`, then the ray
/// `u = 2 + r e^{iπ/6}` along which the integrand decays like `e^{−νr³/2}`.
pub fn k_quadrature(nu: f64) -> Result<f64> {
    if nu.is_nan() || nu <= 0.0 {
        return Err(Error::Domain(format!("K(ν) needs ν > 0, got {nu}")));
    }
    let gl = GaussLegendre::new(24);
    let phase = |u: Complex64| Complex64::i() * (nu / 2.0) * (u * u * u - 3.0 * u);
    let panels = 8 + (2.0 * nu).ceil() as usize;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let a = 2.0 * p as f64 / panels as f64;
        let b = 2.0 * (p + 1) as f64 / panels as f64;
        total += gl.integrate(a, b, |u| phase(Complex64::new(u, 0.0)).exp());
    }
    let w = Complex64::from_polar(1.0, PI / 6.0);
    let r_end = (90.0 / nu).cbrt() + 0.5;
    let ray_panels = 8 + (4.0 * nu).ceil() as usize;
    for p in 0..ray_panels {
        let a = r_end * p as f64 / ray_panels as f64;
        let b = r_end * (p + 1) as f64 / ray_panels as f64;
        total += gl.integrate(a, b, |r| phase(2.0 + r * w).exp() * w);
    }
    Ok(2.0 * total.re)
}

/// The first `count` zeros of `Ai` (all negative), by Newton iteration from
/// the standard asymptotic guesses.
pub fn airy_ai_zeros(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| {
            let t = 3.0 * PI / 8.0 * (4 * k - 1) as f64;
            let mut x = -t.powf(2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
            for _ in 0..50 {
                let (y, yp) = airy_ai_neg(x);
                let dx = y / yp;
                x -= dx;
                if dx.abs() < 1e-15 * x.abs() {
                    break;
                }
            }
            x
        })
        .collect()
}

/// The first `count` positive zeros `ν_k = (2/3)|a_{k+1}|^{3/2}` of `K`.
pub fn k_zeros(count: usize) -> Vec<f64> {
    airy_ai_zeros(count).into_iter().map(|a| 2.0 / 3.0 * (-a).powf(1.5)).collect()
}

/// A zero of [`k_quadrature`] in `[lo, hi]`, by bisection.
pub fn k_zero_quadrature(mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = k_quadrature(lo)?;
    let fhi = k_quadrature(hi)?;
    if flo.signum() == fhi.signum() {
        return Err(Error::SearchFailure(format!("no sign change of K on [{lo}, {hi}]")));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let fm = k_quadrature(mid)?;
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn airy_reference_zeros() {
        let z = airy_ai_zeros(4);
        let known = [-2.33810741045977, -4.08794944413097, -5.52055982809555, -6.78670809007176];
        for (a, b) in z.iter().zip(known) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn positive_branches_are_continuous() {
        let eps = 1e-9;
        assert!((airy_ai(-eps) - airy_ai(eps)).abs() < 1e-8);
        assert!((airy_ai(2.0) - airy_ai(2.0 + 1e-12)).abs() < 1e-10);
        // Maclaurin and the damped integral overlap on (0, 2]
        for x in [0.5f64, 1.0, 1.5, 2.0] {
            let sx: f64 = x.sqrt();
            let (v, _) = integrate_adaptive(
                |t| (-sx * t * t).exp() * (t * t * t / 3.0).cos(),
                0.0,
                (40.0 / sx).sqrt() + 1.0,
                1e-16,
            );
            let alt = (-(2.0 / 3.0) * x * sx).exp() / PI * v;
            assert!((airy_ai(x) - alt).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn satisfies_airy_equation() {
        for x in [-0.3, -1.7, -4.2, -8.0] {
            let h = 1e-3;
            let (y0, _) = airy_ai_neg(x);
            let (yp, _) = airy_ai_neg(x + h);
            let (ym, _) = airy_ai_neg(x - h);
            let ypp = (yp - 2.0 * y0 + ym) / (h * h);
            assert!((ypp - x * y0).abs() < 1e-6);
        }
    }

    #[test]
    fn two_paths_agree() {
        for j in 0..=58 {
            let nu = 0.5 + j as f64 * 0.25;
            let a = k_airy(nu).unwrap();
            let q = k_quadrature(nu).unwrap();
            assert!((a - q).abs() < 1e-6, "ν={nu}: {a} vs {q}");
        }
    }

    #[test]
    fn zeros_of_k() {
        let z = k_zeros(4);
        let listed = [2.383446, 5.510195, 8.647357, 11.786842];
        for (a, b) in z.iter().zip(listed) {
            assert!((a - b).abs() < 1e-6);
            assert!(k_airy(*a).unwrap().abs() < 1e-12);
        }
        assert!((z[3] - PI * 3.75).abs() < 0.01);
        let q = k_zero_quadrature(2.2, 2.6).unwrap();
        assert!((q - z[0]).abs() < 1e-8);
    }
}
