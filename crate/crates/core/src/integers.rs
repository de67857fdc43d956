//! Integer infrastructure: smallest-prime-factor sieve, factorization and
//! divisor generation.

use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`SpfSieve::new`] (4 bytes per entry).
pub const DEFAULT_SIEVE_BUDGET: u64 = 400_000_000;

/// Largest number of divisors [`FactoredInteger::divisors`] will generate.
pub const DEFAULT_DIVISOR_CAP: usize = 1 << 20;

/// Table of smallest prime factors for `2..=limit`.
///
/// Immutable after construction, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    /// Builds the table with the default memory budget.
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_SIEVE_BUDGET)
    }

    /// Builds the table, refusing limits above `budget`.
    pub fn with_budget(limit: u64, budget: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!("sieve limit must be at least 2, got {limit}")));
        }
        if limit > budget || limit > u32::MAX as u64 {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds budget {}",
                budget.min(u32::MAX as u64)
            )));
        }
        let limit = limit as usize;
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        // linear sieve: every composite is struck exactly once by its spf
        for n in 2..=limit {
            if spf[n] == 0 {
                spf[n] = n as u32;
                primes.push(n as u32);
            }
            let sn = spf[n];
            for &p in &primes {
                let m = p as usize * n;
                if p > sn || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(Self { spf, primes })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// `P⁻(n)` for `2 ≤ n ≤ limit`, `None` otherwise.
    pub fn spf(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit() {
            None
        } else {
            Some(self.spf[n as usize] as u64)
        }
    }

    /// All primes up to the limit, increasing.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.spf(n) == Some(n)
    }
}

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// Assembles a factorization from `(prime, exponent)` pairs.
    ///
    /// The pairs must have strictly increasing primes and positive
    /// exponents; primality itself is the caller's responsibility.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Domain("primes must be strictly increasing".into()));
            }
        }
        for &(p, e) in &factors {
            if p < 2 || e == 0 {
                return Err(Error::Domain(format!("invalid factor {p}^{e}")));
            }
            let pe = p
                .checked_pow(e)
                .ok_or_else(|| Error::Domain("factorization overflows u64".into()))?;
            n = n
                .checked_mul(pe)
                .ok_or_else(|| Error::Domain("factorization overflows u64".into()))?;
        }
        Ok(Self { n, factors })
    }

    pub fn one() -> Self {
        Self { n: 1, factors: Vec::new() }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `P⁻(n)`; `None` stands for `+∞` when `n = 1`.
    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|f| f.0)
    }

    /// `P⁺(n)`, with `P⁺(1) = 1`.
    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |f| f.0)
    }

    /// `Ω(n)`, the number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// `μ²(n) = 1`.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.1 == 1)
    }

    /// The prime factors `p₁ ≤ p₂ ≤ … ≤ p_k` with multiplicity.
    pub fn primes_nondecreasing(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat(p).take(e as usize))
            .collect()
    }

    /// `τ(n) = ∏ (e_i + 1)`, saturating.
    pub fn divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, f| acc.saturating_mul(f.1 as u64 + 1))
    }

    /// All divisors in increasing order, with the default cap.
    pub fn divisors(&self) -> Result<Vec<u64>> {
        self.divisors_capped(DEFAULT_DIVISOR_CAP)
    }

    /// All divisors in increasing order; errors if there are more than `cap`.
    pub fn divisors_capped(&self, cap: usize) -> Result<Vec<u64>> {
        let count = self.divisor_count();
        if count > cap as u64 {
            return Err(Error::Resource(format!(
                "{} has {count} divisors, cap is {cap}",
                self.n
            )));
        }
        let mut divs = Vec::with_capacity(count as usize);
        divs.push(1u64);
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        Ok(divs)
    }

    /// The factorization of `n·p` for a prime `p ≥ P⁺(n)`.
    pub(crate) fn times_prime(&self, p: u64) -> Self {
        let mut factors = self.factors.clone();
        match factors.last_mut() {
            Some(last) if last.0 == p => last.1 += 1,
            _ => {
                debug_assert!(factors.last().map_or(true, |l| l.0 < p));
                factors.push((p, 1));
            }
        }
        Self { n: self.n * p, factors }
    }
}

/// All primes `≤ limit`, increasing.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for n in 2..=limit {
        if !composite[n] {
            primes.push(n as u64);
            let mut m = n * n;
            while m <= limit {
                composite[m] = true;
                m += n;
            }
        }
    }
    primes
}

/// Factorizes `n ≥ 1`, using `spf` when it covers `n` and trial division
/// otherwise.
pub fn factorize(n: u64, spf: Option<&SpfSieve>) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    let mut factors = Vec::new();
    let mut m = n;
    if let Some(sieve) = spf.filter(|s| s.limit() >= n) {
        while m > 1 {
            let p = sieve.spf[m as usize] as u64;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        return Ok(FactoredInteger { n, factors });
    }
    let push = |m: &mut u64, p: u64, factors: &mut Vec<(u64, u32)>| {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut m, 2, &mut factors);
    push(&mut m, 3, &mut factors);
    // 6k ± 1 wheel
    let mut p = 5u64;
    while p.saturating_mul(p) <= m {
        push(&mut m, p, &mut factors);
        push(&mut m, p + 2, &mut factors);
        p += 6;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(FactoredInteger { n, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_spf(n: u64) -> u64 {
        (2..=n).find(|d| n % d == 0).unwrap()
    }

    #[test]
    fn sieve_examples() {
        let s = SpfSieve::new(10_000).unwrap();
        assert_eq!(s.spf(2), Some(2));
        assert_eq!(s.spf(15), Some(3));
        assert_eq!(s.spf(8424), Some(2));
        assert_eq!(s.spf(1), None);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = SpfSieve::new(100_000).unwrap();
        for n in 2..=100_000u64 {
            assert_eq!(s.spf(n), Some(trial_division_spf(n)), "n = {n}");
        }
    }

    #[test]
    fn sieve_budget_is_enforced() {
        assert!(matches!(SpfSieve::with_budget(1000, 999), Err(Error::Resource(_))));
        assert!(matches!(SpfSieve::new(1), Err(Error::Domain(_))));
    }

    #[test]
    fn factorization_examples() {
        assert!(factorize(1, None).unwrap().factors().is_empty());
        assert_eq!(factorize(8424, None).unwrap().factors(), &[(2, 3), (3, 4), (13, 1)]);
        assert_eq!(
            factorize(65520, None).unwrap().factors(),
            &[(2, 4), (3, 2), (5, 1), (7, 1), (13, 1)]
        );
        let big = factorize(999_999_999_989, None).unwrap();
        assert_eq!(big.factors(), &[(999_999_999_989, 1)]);
        assert!(factorize(0, None).is_err());
    }

    #[test]
    fn prime_list_matches_sieve() {
        let s = SpfSieve::new(5000).unwrap();
        let from_sieve: Vec<u64> = s.primes().iter().map(|&p| p as u64).collect();
        assert_eq!(primes_up_to(5000), from_sieve);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn conventions_for_one() {
        let one = FactoredInteger::one();
        assert_eq!(one.largest_prime(), 1);
        assert_eq!(one.smallest_prime(), None);
        assert_eq!(one.big_omega(), 0);
        assert_eq!(one.divisors().unwrap(), vec![1]);
    }

    #[test]
    fn divisor_examples() {
        let d = |n| factorize(n, None).unwrap().divisors().unwrap();
        assert_eq!(d(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(d(32), vec![1, 2, 4, 8, 16, 32]);
        let f = factorize(65520, None).unwrap();
        assert!(matches!(f.divisors_capped(100), Err(Error::Resource(_))));
    }

    #[test]
    fn reconstruction_and_divisor_count_up_to_a_million() {
        let s = SpfSieve::new(1_000_000).unwrap();
        for n in 1..=1_000_000u64 {
            let f = factorize(n, Some(&s)).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            if n % 997 == 0 {
                assert_eq!(f.divisors().unwrap().len() as u64, f.divisor_count());
                assert_eq!(f, factorize(n, None).unwrap());
            }
        }
    }

    #[test]
    fn divisors_are_complete_and_sorted() {
        for n in 1..=2000u64 {
            let f = factorize(n, None).unwrap();
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(f.divisors().unwrap(), brute);
        }
    }
}
