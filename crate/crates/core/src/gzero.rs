//! The entire function `g_a(s)`, whose right-most real zero `−λ_a` and the
//! residue there govern the decay of `ρ_a`.
//!
//! Two independent evaluations are provided:
//!
//! * the series form `g_a(s) = (h_{1,a,K}(s) + h_{2,a}(s)) / (a^{s+1} Γ(s))`
//!   with the explicit truncation bound `4e^{−γ}/(2^K a^{Re s} |Γ(s)|)`;
//! * the integral form `g_a(s) = s + e^{−γ}/(a(1+a)^s) + s ∫_1^∞ (ω(u) − e^{−γ}) (1+au)^{−s−1} du`.
//!
//! At the non-positive integers `g_a(−n)·a·e^γ` is a polynomial in `a` with
//! rational coefficients and is evaluated exactly.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{to_big, to_f64, Rational};
use crate::specfun::expint::exp_integral_j;
use crate::specfun::gamma::{kummer_sum, ln_gamma_real, lower_regularized, rgamma};
use crate::specfun::quad::GaussLegendre;
use crate::specfun::series::{b_coefficients, b_exact, b_f64, ratio_to_f64, B_CACHE};
use crate::specfun::{omega_table, EULER_GAMMA, EXP_NEG_GAMMA};

/// Largest truncation index the series form will use.
pub const MAX_K: usize = 200;

/// Target of the default truncation rule.
pub const SERIES_TARGET: f64 = 1e-12;

/// The series form integrates `h_2` far enough for `Re s` up to this value.
pub const SERIES_RE_MAX: f64 = 60.0;

/// Bisection stops once the bracket is this narrow.
pub const LAMBDA_TOL: f64 = 1e-11;

/// Required relative agreement of the two residue estimates.
pub const RESIDUE_AGREEMENT: f64 = 1e-6;

/// A value of `g_a` with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GValue {
    pub value: Complex64,
    pub error: f64,
}

/// Right end of the integral-form nodes; `ω − e^{−γ}` is treated as zero
/// past it and the neglected part is bounded by `1/Γ(u+1)`.
const INTEGRAL_U_MAX: usize = 22;

struct IntegralNode {
    u: f64,
    w: f64,
    wd: f64,
}

/// Gauss nodes on `[1, 22]`, eight panels per unit, with `δ = ω − e^{−γ}`
/// folded into the weights.
fn integral_nodes() -> &'static [IntegralNode] {
    static NODES: OnceLock<Vec<IntegralNode>> = OnceLock::new();
    NODES.get_or_init(|| {
        let gl = GaussLegendre::new(16);
        let table = omega_table();
        let mut out = Vec::new();
        for k in 1..INTEGRAL_U_MAX {
            for p in 0..8 {
                let lo = k as f64 + p as f64 / 8.0;
                for (u, w) in gl.mapped(lo, lo + 0.125) {
                    out.push(IntegralNode { u, w, wd: w * table.delta(u) });
                }
            }
        }
        out
    })
}

/// `∫_U^∞ (1+au)^{−σ−1}/Γ(u+1) du`, bounding the part of the integral form
/// beyond the table.
fn integral_tail(a: f64, sigma: f64) -> f64 {
    let gl = GaussLegendre::new(8);
    let mut total = 0.0;
    let mut u = INTEGRAL_U_MAX as f64;
    loop {
        let piece: f64 =
            gl.integrate(u, u + 1.0, |t| (-(sigma + 1.0) * (a * t).ln_1p() - ln_gamma_real(t + 1.0)).exp());
        total += piece;
        u += 1.0;
        if piece <= 1e-20 * total || u > 2000.0 {
            return total;
        }
    }
}

/// `g_a` for one fixed `a > 0`, with the quadrature nodes of both forms
/// prepared once.
#[derive(Debug, Clone)]
pub struct GFunction {
    a: f64,
    /// `(t, weight)` for `h_2(s) = Σ weight·e^{s t}`, `u = e^t`.
    h2_nodes: Vec<(f64, f64)>,
    /// `ln(1 + a u)` at the integral-form nodes.
    log1p_au: Vec<f64>,
}

impl GFunction {
    pub fn new(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("g_a needs a > 0, got {a}")));
        }
        // h_2 = ∫_0^T e^{(s+1)t − e^t/a + J(e^t)} dt, with T past the point
        // where the integrand is below e^{−42} for every Re s ≤ SERIES_RE_MAX
        let mut t_end = (1.0 + 41.45 * a).ln();
        while (SERIES_RE_MAX + 1.0) * t_end - t_end.exp() / a > -42.0 {
            t_end += 0.05;
        }
        let panels = (t_end / 0.05).ceil() as usize;
        let width = t_end / panels as f64;
        let gl = GaussLegendre::new(16);
        let mut h2_nodes = Vec::with_capacity(panels * 16);
        for p in 0..panels {
            let lo = p as f64 * width;
            for (t, w) in gl.mapped(lo, lo + width) {
                let u = t.exp();
                let j = exp_integral_j(u)?;
                h2_nodes.push((t, w * (t - u / a + j).exp()));
            }
        }
        let log1p_au = integral_nodes().iter().map(|n| (a * n.u).ln_1p()).collect();
        Ok(Self { a, h2_nodes, log1p_au })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// The truncation bound `4e^{−γ}/(2^K a^{Re s} |Γ(s)|)` without the `2^{−K}`.
    fn truncation_scale(&self, s: Complex64) -> f64 {
        4.0 * EXP_NEG_GAMMA * rgamma(s).norm() * (-s.re * self.a.ln()).exp()
    }

    /// Smallest `K ≥ 1 − Re s` whose truncation bound is below
    /// [`SERIES_TARGET`], capped at [`MAX_K`].
    pub fn default_k(&self, s: Complex64) -> Result<usize> {
        let k_min = (1.0 - s.re).ceil().max(0.0) as usize;
        if k_min > MAX_K {
            return Err(Error::Domain(format!("series form needs K ≥ {k_min} > {MAX_K} at s = {s}")));
        }
        let scale = self.truncation_scale(s);
        let k = if scale > 0.0 { (scale / SERIES_TARGET).log2().ceil().max(0.0) as usize } else { 0 };
        Ok(k.max(k_min).min(MAX_K))
    }

    fn h2(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(t, w) in &self.h2_nodes {
            let m = w * (s.re * t).exp();
            let (sin, cos) = (s.im * t).sin_cos();
            acc += Complex64::new(m * cos, m * sin);
        }
        acc
    }

    /// The series form with truncation index `k` (default rule when `None`).
    pub fn series(&self, s: Complex64, k: Option<usize>) -> Result<GValue> {
        if !(s.re <= SERIES_RE_MAX) || !s.im.is_finite() {
            return Err(Error::Domain(format!("series form needs Re s ≤ {SERIES_RE_MAX}, got {s}")));
        }
        let k_min = (1.0 - s.re).ceil().max(0.0) as usize;
        let k = match k {
            Some(k) if k < k_min => {
                return Err(Error::Domain(format!("K = {k} is below 1 − Re s at s = {s}")));
            }
            Some(k) if k >= B_CACHE => {
                return Err(Error::Domain(format!("K = {k} exceeds the coefficient cache")));
            }
            Some(k) => k,
            None => self.default_k(s)?,
        };
        let a = self.a;
        let z = 1.0 / a;
        let b = b_f64();
        let rg = rgamma(s);
        let pre = EXP_NEG_GAMMA / a;
        // for Re(s+j) ≥ 1: a^j (s)_j P(s+j, 1/a) = rgamma(s) a^{−s} e^{−1/a} S_j/(s+j)
        let kummer_pre = rg * (-s * a.ln() - z).exp();
        let mut poch = Complex64::new(1.0, 0.0); // a^j (s)_j
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (j, &bj) in b.iter().enumerate().take(k + 1) {
            let m = s + j as f64;
            let term = if m.re >= 1.0 {
                kummer_pre * kummer_sum(m, z) / m * bj
            } else {
                poch * lower_regularized(m, z) * bj
            };
            sum += term;
            mag += term.norm();
            poch *= m * a;
        }
        let h1 = sum * pre;
        let h2 = rg * (-(s + 1.0) * a.ln()).exp() * self.h2(s);
        let value = h1 + h2;
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Domain(format!("series form overflows at s = {s}")));
        }
        let truncation = self.truncation_scale(s) / 2f64.powi(k as i32);
        let rounding = 2e-13 * (mag * pre + h2.norm());
        Ok(GValue { value, error: truncation + rounding })
    }

    /// The integral form through the tabulated Buchstab function.
    pub fn integral(&self, s: Complex64) -> GValue {
        let a = self.a;
        let mid = EXP_NEG_GAMMA / a * (-s * a.ln_1p()).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut weight = 0.0;
        for (node, &l) in integral_nodes().iter().zip(&self.log1p_au) {
            let f = (-(s + 1.0) * l).exp();
            acc += f * node.wd;
            weight += node.w * f.norm();
        }
        let value = s + mid + s * acc;
        let noise = s.norm() * 2.0 * omega_table().accuracy() * weight;
        let tail = s.norm() * integral_tail(a, s.re);
        let rounding = 1e-15 * (s.norm() + mid.norm() + (s * acc).norm());
        GValue { value, error: noise + tail + rounding }
    }

    /// Whichever form carries the smaller error bound.
    pub fn eval(&self, s: Complex64) -> Result<GValue> {
        let int = self.integral(s);
        if int.error <= 1e-13 * int.value.norm().max(1.0) {
            return Ok(int);
        }
        match self.series(s, None) {
            Ok(ser) if ser.error < int.error => Ok(ser),
            _ => Ok(int),
        }
    }
}

/// `g_a(s)` by the series form with truncation `k` (default rule when `None`).
pub fn g_eval_series(a: f64, s: Complex64, k: Option<usize>) -> Result<GValue> {
    GFunction::new(a)?.series(s, k)
}

/// `g_a(s)` by the integral form.
pub fn g_eval_integral(a: f64, s: Complex64) -> Result<GValue> {
    Ok(GFunction::new(a)?.integral(s))
}

/// `g_a(s)` by the better of the two forms.
pub fn g_eval(a: f64, s: Complex64) -> Result<GValue> {
    GFunction::new(a)?.eval(s)
}

/// `g_a(−n)·a·e^γ = Σ_{k=0}^n (−a)^k b_k n!/(n−k)!`, exactly.
pub fn g_eval_neg_int(a: &Rational, n: u64) -> BigRational {
    let n = n as usize;
    let owned;
    let b = if n < B_CACHE {
        b_exact().coeffs()
    } else {
        owned = b_coefficients(n);
        owned.coeffs()
    };
    let neg_a = -to_big(a);
    let mut factor = BigRational::one();
    let mut sum = BigRational::zero();
    for (k, bk) in b.iter().enumerate().take(n + 1) {
        sum += &factor * bk;
        factor = factor * &neg_a * BigInt::from(n - k);
    }
    sum
}

/// `H_a(σ) = 1/(a(1+a)^σ) + (1/a) ∫_1^∞ |ω'(t)| (1+at)^{−σ} dt`; every zero
/// `s = σ + iτ` of `g_a` has `|s| ≤ H_a(σ)`.
///
/// `|ω'|` is taken from the table on `[1, 5]` and bounded by `1/Γ(t+1)` after.
pub fn h_bound(a: f64, sigma: f64) -> f64 {
    let gl = GaussLegendre::new(16);
    let table = omega_table();
    let weight = |t: f64| (-sigma * (a * t).ln_1p()).exp();
    let mut total = 0.0;
    for k in 1..5 {
        for p in 0..4 {
            let lo = k as f64 + p as f64 / 4.0;
            total += gl.integrate(lo, lo + 0.25, |t| table.omega_prime(t).abs() * weight(t));
        }
    }
    let mut t = 5.0;
    loop {
        let piece: f64 = gl.integrate(t, t + 1.0, |t| (-ln_gamma_real(t + 1.0)).exp() * weight(t));
        total += piece;
        t += 1.0;
        if piece <= 1e-18 * total || t > 5000.0 {
            break;
        }
    }
    (1.0 / (a * (1.0 + a).powf(sigma))) + total / a
}

/// An axis-parallel rectangle in the `s`-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl Rect {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Result<Self> {
        if !(re_lo < re_hi && im_lo < im_hi) || ![re_lo, re_hi, im_lo, im_hi].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!("empty rectangle [{re_lo}, {re_hi}]×[{im_lo}, {im_hi}]")));
        }
        Ok(Self { re_lo, re_hi, im_lo, im_hi })
    }

    pub fn contains(&self, s: Complex64) -> bool {
        (self.re_lo..=self.re_hi).contains(&s.re) && (self.im_lo..=self.im_hi).contains(&s.im)
    }
}

/// A rectangle together with the number of zeros of `g_a` inside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectEvidence {
    pub rect: Rect,
    pub zeros: u32,
}

fn checked_eval(g: &GFunction, s: Complex64) -> Result<Complex64> {
    let v = g.eval(s)?;
    if v.value.norm() <= 4.0 * v.error || v.value.norm() < 1e-300 {
        return Err(Error::BoundaryZero(format!(
            "|g| = {:.3e} within its error {:.3e} at {s}; perturb the rectangle",
            v.value.norm(),
            v.error
        )));
    }
    Ok(v.value)
}

/// Change of `arg g` along the segment `p → q`, refined until consecutive
/// samples differ by at most `π/4`.
fn arg_change(g: &GFunction, p: Complex64, gp: Complex64, q: Complex64, gq: Complex64, depth: u32) -> Result<f64> {
    let d = (gq / gp).arg();
    if d.abs() <= PI / 4.0 {
        return Ok(d);
    }
    if depth > 40 {
        return Err(Error::NumericalConsistency(format!("argument tracking failed near {p}")));
    }
    let m = 0.5 * (p + q);
    let gm = checked_eval(g, m)?;
    Ok(arg_change(g, p, gp, m, gm, depth + 1)? + arg_change(g, m, gm, q, gq, depth + 1)?)
}

/// Number of zeros of `g_a` inside `rect`, by the argument principle.
///
/// Fails with [`Error::BoundaryZero`] when `|g|` drops to its error bound on
/// the boundary, in which case the rectangle should be moved slightly.
pub fn count_zeros_rect(g: &GFunction, rect: &Rect) -> Result<u32> {
    let corners = [
        Complex64::new(rect.re_lo, rect.im_lo),
        Complex64::new(rect.re_hi, rect.im_lo),
        Complex64::new(rect.re_hi, rect.im_hi),
        Complex64::new(rect.re_lo, rect.im_hi),
    ];
    let mut total = 0.0;
    for e in 0..4 {
        let (p, q) = (corners[e], corners[(e + 1) % 4]);
        let pieces = (((q - p).norm() / 0.125).ceil() as usize).max(4);
        let mut prev = p;
        let mut gprev = checked_eval(g, p)?;
        for j in 1..=pieces {
            let next = p + (q - p) * (j as f64 / pieces as f64);
            let gnext = checked_eval(g, next)?;
            total += arg_change(g, prev, gprev, next, gnext, 0)?;
            prev = next;
            gprev = gnext;
        }
    }
    let winding = total / (2.0 * PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 1e-6 || rounded < 0.0 {
        return Err(Error::NumericalConsistency(format!("winding number {winding} is not a non-negative integer")));
    }
    Ok(rounded as u32)
}

/// A zero of `g_a` near `seed`, by Newton iteration with a difference
/// quotient for `g'`.
pub fn locate_complex_zero(g: &GFunction, seed: Complex64) -> Result<Complex64> {
    let mut s = seed;
    let h = 1e-6;
    for _ in 0..60 {
        let v = g.eval(s)?.value;
        let d = (g.eval(s + h)?.value - g.eval(s - h)?.value) / (2.0 * h);
        let step = v / d;
        s -= step;
        if !(s.re.is_finite() && s.im.is_finite()) || (s - seed).norm() > 5.0 {
            break;
        }
        if step.norm() < 1e-12 * s.norm().max(1.0) {
            return Ok(s);
        }
    }
    Err(Error::SearchFailure(format!("Newton iteration from {seed} did not converge")))
}

/// The two residue estimates `C_a = 1/g_a'(−λ_a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueEstimate {
    /// From a Richardson-extrapolated central difference.
    pub derivative: f64,
    /// Step of the central difference.
    pub step: f64,
    /// From the trapezoidal rule for `(1/2πi)∮ ds/g` on a small circle.
    pub contour: f64,
}

impl ResidueEstimate {
    pub fn relative_gap(&self) -> f64 {
        (self.derivative - self.contour).abs() / self.contour.abs()
    }
}

/// Steps tried for the difference quotient. The first is preferred; the
/// larger ones take over where rounding in `g` swamps the smallest.
const RESIDUE_STEPS: [f64; 3] = [1e-5, 1e-4, 1e-3];

/// Residue of `1/g_a` at `s = −λ`; fails unless both estimates agree to
/// [`RESIDUE_AGREEMENT`].
pub fn residue_c(g: &GFunction, lambda: f64) -> Result<ResidueEstimate> {
    let s0 = Complex64::new(-lambda, 0.0);
    let r = 0.25;
    let n = 64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let e = Complex64::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / n as f64);
        acc += e / g.eval(s0 + e)?.value;
    }
    let contour = acc.re / n as f64;

    let diff = |h: f64| -> Result<f64> { Ok((g.eval(s0 + h)?.value.re - g.eval(s0 - h)?.value.re) / (2.0 * h)) };
    let mut best: Option<ResidueEstimate> = None;
    for h in RESIDUE_STEPS {
        let d = (4.0 * diff(h / 2.0)? - diff(h)?) / 3.0;
        let est = ResidueEstimate { derivative: 1.0 / d, step: h, contour };
        if est.relative_gap() < RESIDUE_AGREEMENT {
            return Ok(est);
        }
        if best.map_or(true, |b| est.relative_gap() < b.relative_gap()) {
            best = Some(est);
        }
    }
    let b = best.unwrap();
    Err(Error::NumericalConsistency(format!(
        "residue estimates disagree: {} vs {}",
        b.derivative, b.contour
    )))
}

/// Evidence that `−λ_a` is the right-most real zero of `g_a`, with the
/// residue `C_a` there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub a: f64,
    /// `a` as an exact fraction when it was given as one.
    pub a_exact: Option<String>,
    pub lambda: f64,
    #[serde(rename = "C")]
    pub c: f64,
    /// The residue estimate from the contour integral.
    pub c_contour: f64,
    /// `λ_a ∈ [n, n+1]`.
    pub bracket: (u64, u64),
    /// Signs of `g_a(−n)` and `g_a(−n−1)`.
    pub signs: (i8, i8),
    /// Whether the signs come from exact rational arithmetic.
    pub exact_signs: bool,
    /// `|a e^γ g_a(−λ_a)|`.
    pub residual: f64,
    #[serde(rename = "zero_free_rects")]
    pub zero_free: Vec<RectEvidence>,
}

impl ZeroCertificate {
    /// Adds the zero counts of `rects`.
    pub fn with_rects(mut self, g: &GFunction, rects: &[Rect]) -> Result<Self> {
        for rect in rects {
            let zeros = count_zeros_rect(g, rect)?;
            self.zero_free.push(RectEvidence { rect: *rect, zeros });
        }
        Ok(self)
    }

    /// The rectangle `[−λ_a − ε, 0] × [−H, H]` with `H = H_a(−λ_a − ε)`,
    /// which must contain exactly the one zero `−λ_a`.
    pub fn rightmost_rect(&self, eps: f64) -> Result<Rect> {
        let sigma = -self.lambda - eps;
        let h = h_bound(self.a, sigma) + 0.5;
        Rect::new(sigma, 0.0, -h, h)
    }
}

fn sign_of(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn search_limit(a: f64) -> u64 {
    ((2.0 / a) * ((1.0 / a).ln() + 2.0)).max(0.0).ceil() as u64 + 10
}

/// Bisection on the real axis for the zero of `g(−x)` in `[lo, hi]`.
fn bisect(g: &GFunction, mut lo: f64, mut hi: f64, sign_lo: f64) -> Result<f64> {
    while hi - lo > LAMBDA_TOL {
        let mid = 0.5 * (lo + hi);
        let v = g.eval(Complex64::new(-mid, 0.0))?;
        if v.value.re.abs() <= v.error {
            return Ok(mid);
        }
        if v.value.re.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn finish(g: &GFunction, a_exact: Option<String>, lambda: f64, bracket: (u64, u64), signs: (i8, i8), exact: bool) -> Result<ZeroCertificate> {
    let a = g.a();
    let v = g.eval(Complex64::new(-lambda, 0.0))?;
    let residual = a * EULER_GAMMA.exp() * v.value.norm();
    let est = residue_c(g, lambda)?;
    if !(est.derivative > 0.0) {
        return Err(Error::NumericalConsistency(format!("residue {} is not positive", est.derivative)));
    }
    Ok(ZeroCertificate {
        a,
        a_exact,
        lambda,
        c: est.derivative,
        c_contour: est.contour,
        bracket,
        signs,
        exact_signs: exact,
        residual,
        zero_free: Vec::new(),
    })
}

/// `λ_a` for rational `a`, bracketed by exact signs of `g_a` at consecutive
/// non-positive integers and refined by bisection.
pub fn find_lambda(a: &Rational) -> Result<ZeroCertificate> {
    if a.numer() == &0 {
        return Err(Error::Domain("a must be positive".into()));
    }
    let af = to_f64(a);
    let g = GFunction::new(af)?;
    let label = Some(a.to_string());
    let limit = search_limit(af);
    let mut prev = g_eval_neg_int(a, 0);
    for n in 0..=limit {
        let next = g_eval_neg_int(a, n + 1);
        let (s0, s1) = (sign_of(&prev), sign_of(&next));
        if s1 == 0 {
            return finish(&g, label, (n + 1) as f64, (n, n + 1), (s0, s1), true);
        }
        if s0 != s1 {
            let lambda = bisect(&g, n as f64, (n + 1) as f64, s0 as f64)?;
            return finish(&g, label, lambda, (n, n + 1), (s0, s1), true);
        }
        prev = next;
    }
    Err(Error::SearchFailure(format!("no sign change of g_a at −n for n ≤ {}", limit + 1)))
}

/// `λ_a` for real `a`, bracketed by the signs of the series form at the
/// non-positive integers (where it reduces to a finite sum).
pub fn find_lambda_real(a: f64) -> Result<ZeroCertificate> {
    let g = GFunction::new(a)?;
    let limit = search_limit(a);
    let at = |n: u64| -> Result<GValue> { g.series(Complex64::new(-(n as f64), 0.0), None) };
    let sign = |v: &GValue| -> i8 {
        if v.value.re.abs() <= v.error {
            0
        } else if v.value.re > 0.0 {
            1
        } else {
            -1
        }
    };
    let mut prev = at(0)?;
    for n in 0..=limit {
        let next = at(n + 1)?;
        let (s0, s1) = (sign(&prev), sign(&next));
        if s1 == 0 {
            return finish(&g, None, (n + 1) as f64, (n, n + 1), (s0, s1), false);
        }
        if s0 != s1 {
            let lambda = bisect(&g, n as f64, (n + 1) as f64, s0 as f64)?;
            return finish(&g, None, lambda, (n, n + 1), (s0, s1), false);
        }
        prev = next;
    }
    Err(Error::SearchFailure(format!("no sign change of g_a at −n for n ≤ {}", limit + 1)))
}

/// `∂_a g_a(s) − [(s/a) g_a(s+1) − ((s+1)/a) g_a(s)]`, with the derivative
/// taken by a central difference of step `da` (default `10⁻⁵ a`).
pub fn dgda_identity_check(a: f64, s: Complex64, da: Option<f64>) -> Result<Complex64> {
    let da = da.unwrap_or(1e-5 * a);
    if !(da > 0.0 && da < a) {
        return Err(Error::Domain(format!("step {da} must lie in (0, a)")));
    }
    let g = GFunction::new(a)?;
    let plus = GFunction::new(a + da)?.eval(s)?.value;
    let minus = GFunction::new(a - da)?.eval(s)?.value;
    let lhs = (plus - minus) / (2.0 * da);
    let rhs = s / a * g.eval(s + 1.0)?.value - (s + 1.0) / a * g.eval(s)?.value;
    Ok(lhs - rhs)
}

/// One row of [`lambda_asymptote_report`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteRow {
    pub a: String,
    pub lambda: f64,
    /// `r_a = a(a e^γ λ_a − 1) − e^{−γ} log(a+1)` for `a ≥ 1`, else
    /// `a λ_a − (log(1/a) − 1)`.
    pub value: f64,
    /// `|r_a| ≤ 2/3` when `a ≥ 1`; no claim for smaller `a`.
    pub within_bound: Option<bool>,
}

/// Compares `λ_a` with its large-`a` expansion and its small-`a` limit.
pub fn lambda_asymptote_report(a_list: &[Rational]) -> Result<Vec<AsymptoteRow>> {
    if a_list.is_empty() {
        return Err(Error::Domain("empty list of a".into()));
    }
    a_list
        .iter()
        .map(|q| {
            let cert = find_lambda(q)?;
            let a = cert.a;
            let (value, within_bound) = if a >= 1.0 {
                let r = a * (a * EULER_GAMMA.exp() * cert.lambda - 1.0) - EXP_NEG_GAMMA * a.ln_1p();
                (r, Some(r.abs() <= 2.0 / 3.0))
            } else {
                (a * cert.lambda - ((1.0 / a).ln() - 1.0), None)
            };
            Ok(AsymptoteRow { a: q.to_string(), lambda: cert.lambda, value, within_bound })
        })
        .collect()
}

/// `g_a(−n)` as a float from the exact value.
pub fn g_neg_int_f64(a: &Rational, n: u64) -> f64 {
    ratio_to_f64(&g_eval_neg_int(a, n)) * EXP_NEG_GAMMA / to_f64(a)
}
