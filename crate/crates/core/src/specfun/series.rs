//! Exact coefficients `b_k` of `e^{−I(−u)} = Σ b_k u^k`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `b_0, …, b_K` as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn get(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }
}

/// `b_0, …, b_K`.
///
/// With `C(u) = −I(−u) = Σ_{k≥1} (−1)^{k+1} u^k/(k·k!)`, differentiating
/// `E = e^C` gives `E' = C'E`, i.e. `n b_n = Σ_{k=1}^n (−1)^{k+1}/k! · b_{n−k}`.
pub fn b_coefficients(k_max: usize) -> RationalSeries {
    let mut inv_fact = Vec::with_capacity(k_max + 1);
    let mut f = BigInt::one();
    inv_fact.push(BigRational::one());
    for k in 1..=k_max {
        f *= BigInt::from(k);
        inv_fact.push(BigRational::new(BigInt::one(), f.clone()));
    }
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for n in 1..=k_max {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            let t = &inv_fact[k] * &b[n - k];
            if k % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        b.push(acc / BigRational::from_integer(BigInt::from(n)));
    }
    RationalSeries { coeffs: b }
}

/// Number of coefficients kept in the shared floating-point cache.
pub const B_CACHE: usize = 240;

/// `b_k` as `f64` for `k < B_CACHE`, converted from the exact values.
pub fn b_f64() -> &'static [f64] {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| b_exact().coeffs.iter().map(ratio_to_f64).collect())
}

/// Shared exact coefficients (the same `b_0..b_{B_CACHE−1}`).
pub fn b_exact() -> &'static RationalSeries {
    static CACHE: OnceLock<RationalSeries> = OnceLock::new();
    CACHE.get_or_init(|| b_coefficients(B_CACHE - 1))
}

/// Correctly scaled conversion that survives numerators and denominators
/// far beyond the `f64` range.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let n = q.numer().abs();
    let d = q.denom().abs();
    let shift = n.bits() as i64 - d.bits() as i64;
    // scale so the quotient has ~64 significant bits
    let (num, den) = if shift > 64 {
        (n, d << (shift - 64) as usize)
    } else {
        (n << (64 - shift) as usize, d)
    };
    let qi = (num / den).to_f64().unwrap();
    let v = qi * 2f64.powi((shift - 64) as i32);
    if q.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// `exp(C)` as `Σ_m C^m/m!` with truncated series products.
    fn exp_oracle(k_max: usize) -> Vec<BigRational> {
        let mut c = vec![BigRational::zero(); k_max + 1];
        let mut fact = BigInt::one();
        for k in 1..=k_max {
            fact *= BigInt::from(k);
            let v = BigRational::new(BigInt::one(), fact.clone() * BigInt::from(k));
            c[k] = if k % 2 == 1 { v } else { -v };
        }
        let mut out = vec![BigRational::zero(); k_max + 1];
        out[0] = BigRational::one();
        let mut power = out.clone(); // C^0
        let mut mfact = BigInt::one();
        for m in 1..=k_max {
            let mut next = vec![BigRational::zero(); k_max + 1];
            for i in 0..=k_max {
                if power[i].is_zero() {
                    continue;
                }
                for j in 1..=k_max - i {
                    next[i + j] += &power[i] * &c[j];
                }
            }
            power = next;
            mfact *= BigInt::from(m);
            let inv = BigRational::new(BigInt::one(), mfact.clone());
            for i in 0..=k_max {
                out[i] += &power[i] * &inv;
            }
        }
        out
    }

    #[test]
    fn first_coefficients() {
        let b = b_coefficients(3);
        assert_eq!(b.get(0), &r(1, 1));
        assert_eq!(b.get(1), &r(1, 1));
        assert_eq!(b.get(2), &r(1, 4));
        assert_eq!(b.get(3), &r(-1, 36));
    }

    #[test]
    fn matches_exponential_oracle() {
        assert_eq!(b_coefficients(18).coeffs(), &exp_oracle(18)[..]);
    }

    #[test]
    fn cauchy_bound() {
        for (k, &b) in b_f64().iter().enumerate() {
            assert!(b.abs() < 4.0 / 2f64.powi(k as i32), "k={k}");
        }
        assert_eq!(b_f64()[2], 0.25);
    }

    #[test]
    fn conversion_handles_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let q = BigRational::new(BigInt::from(3) * &big, BigInt::from(7) * &big);
        assert!((ratio_to_f64(&q) - 3.0 / 7.0).abs() < 1e-16);
        assert_eq!(ratio_to_f64(&r(-1, 36)), -1.0 / 36.0);
    }
}
