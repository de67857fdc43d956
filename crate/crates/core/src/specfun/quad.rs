//! Gauss–Legendre rules and an adaptive Gauss–Kronrod integrator.

use std::collections::BinaryHeap;
use std::ops::{Add, Mul};

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n`, started from the Chebyshev-like
    /// guesses `cos(π(k − 1/4)/(n + 1/2))`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for k in 0..(n + 1) / 2 {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = -x;
            nodes[n - 1 - k] = x;
            weights[k] = w;
            weights[n - 1 - k] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f`.
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> T
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
        F: FnMut(f64) -> T,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(x, w)| (mid + half * x, w * half))
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Most subintervals [`integrate_adaptive`] will create.
const MAX_INTERVALS: usize = 4000;

#[derive(PartialEq)]
struct Piece {
    err: f64,
    lo: f64,
    hi: f64,
    val: f64,
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive 15-point Gauss–Kronrod quadrature of a smooth real
/// integrand on a finite interval: the piece with the largest error estimate
/// is split until the total estimate drops below `tol` (or below rounding
/// level relative to the value). Returns the value and the error estimate.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let mut heap = BinaryHeap::new();
    let (val, err) = gk15(&mut f, a, b);
    heap.push(Piece { err, lo: a, hi: b, val });
    let (mut total, mut total_err) = (val, err);
    while total_err > tol.max(4.0 * f64::EPSILON * total.abs()) && heap.len() < MAX_INTERVALS {
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&mut f, worst.lo, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.hi);
        total += v1 + v2 - worst.val;
        total_err += e1 + e2 - worst.err;
        heap.push(Piece { err: e1, lo: worst.lo, hi: mid, val: v1 });
        heap.push(Piece { err: e2, lo: mid, hi: worst.hi, val: v2 });
    }
    // re-add from the pieces to shed the drift of the running updates
    let (v, e) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.val, e + p.err));
    (v, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        for n in [1, 2, 5, 8, 16, 33] {
            let gl = GaussLegendre::new(n);
            let wsum: f64 = gl.weights.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-14);
            let deg = 2 * n - 1;
            let exact = if deg % 2 == 0 { 2.0 / (deg + 1) as f64 } else { 0.0 };
            let v: f64 = gl.integrate(-1.0, 1.0, |x| x.powi(deg as i32));
            assert!((v - exact).abs() < 1e-13, "n={n}");
            let v: f64 = gl.integrate(0.0, 1.0, |x| x.powi(deg as i32 - 1));
            assert!((v - 1.0 / deg as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn adaptive_handles_peaks() {
        let (v, _) = integrate_adaptive(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-13);
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() / exact < 1e-12);
        let (v, _) = integrate_adaptive(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-14);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
