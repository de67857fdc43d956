//! Integer families: smooth numbers, (strongly) multiply densely divisible
//! numbers and the sets `B_θ` cut out by a growth condition on the prime
//! factors. Membership is decided exactly; enumeration and counting are
//! exact; the identity checkers below serve as independent oracles.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{cmp_products, le_products, small_exp, to_f64, Rational};
use crate::integers::{factorize, primes_up_to, FactoredInteger, SpfSieve, DEFAULT_DIVISOR_CAP};

/// Largest `x` accepted by enumeration and counting scans.
pub const MAX_SCAN: u64 = 400_000_000;

/// Which family a [`FamilySpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `y`-smooth numbers.
    Smooth,
    /// `D_{i,y}`.
    Dense(u32),
    /// `D*_{i,y}`.
    StrongDense(u32),
    /// `B_θ` with `θ(n) = max(y, (yn)^{1/i})`.
    ThetaLower(u32),
    /// `B_θ` with `θ(n) = y n^{1/i}`.
    ThetaUpper(u32),
    /// `B_θ` with `θ(n) = y n^a`.
    BPower(Rational),
    /// `B_θ` with `θ(n) = max(y, (yn)^a)`.
    BStar(Rational),
}

/// One integer family with its parameter `y` and an optional squarefree
/// restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub y: Rational,
    pub squarefree_only: bool,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, y: Rational) -> Result<Self> {
        if y <= Rational::from_integer(1) {
            return Err(Error::Domain(format!("y must exceed 1, got {y}")));
        }
        match kind {
            FamilyKind::ThetaLower(0) | FamilyKind::ThetaUpper(0) => {
                return Err(Error::Domain("θ-bound families need i ≥ 1".into()))
            }
            FamilyKind::BPower(a) | FamilyKind::BStar(a) if *a.numer() == 0 => {
                return Err(Error::Domain("a must be positive".into()))
            }
            _ => {}
        }
        Ok(Self { kind, y, squarefree_only: false })
    }

    pub fn smooth(y: Rational) -> Result<Self> {
        Self::new(FamilyKind::Smooth, y)
    }

    pub fn dense(i: u32, y: Rational) -> Result<Self> {
        Self::new(FamilyKind::Dense(i), y)
    }

    pub fn strong_dense(i: u32, y: Rational) -> Result<Self> {
        Self::new(FamilyKind::StrongDense(i), y)
    }

    pub fn theta_lower(i: u32, y: Rational) -> Result<Self> {
        Self::new(FamilyKind::ThetaLower(i), y)
    }

    pub fn theta_upper(i: u32, y: Rational) -> Result<Self> {
        Self::new(FamilyKind::ThetaUpper(i), y)
    }

    pub fn b_power(a: Rational, y: Rational) -> Result<Self> {
        Self::new(FamilyKind::BPower(a), y)
    }

    pub fn b_star(a: Rational, y: Rational) -> Result<Self> {
        Self::new(FamilyKind::BStar(a), y)
    }

    /// The same family restricted to squarefree integers.
    pub fn squarefree(mut self) -> Self {
        self.squarefree_only = true;
        self
    }

    /// The growth rule when the family is a `B_θ` set.
    pub fn theta_rule(&self) -> Option<ThetaRule> {
        let y = self.y;
        match self.kind {
            FamilyKind::Smooth => Some(ThetaRule::Smooth { y }),
            FamilyKind::ThetaLower(i) => Some(ThetaRule::Star { y, a: Rational::new(1, i as u64) }),
            FamilyKind::ThetaUpper(i) => Some(ThetaRule::Power { y, a: Rational::new(1, i as u64) }),
            FamilyKind::BPower(a) => Some(ThetaRule::Power { y, a }),
            FamilyKind::BStar(a) => Some(ThetaRule::Star { y, a }),
            FamilyKind::Dense(_) | FamilyKind::StrongDense(_) => None,
        }
    }

    /// The `a` for which `x ρ_a(u)` models the counting function
    /// (`0` for smooth numbers, `1/i` for the `i`-indexed families).
    pub fn rho_parameter(&self) -> Option<f64> {
        match self.kind {
            FamilyKind::Smooth => Some(0.0),
            FamilyKind::Dense(0) | FamilyKind::StrongDense(0) => None,
            FamilyKind::Dense(i)
            | FamilyKind::StrongDense(i)
            | FamilyKind::ThetaLower(i)
            | FamilyKind::ThetaUpper(i) => Some(1.0 / i as f64),
            FamilyKind::BPower(a) | FamilyKind::BStar(a) => Some(to_f64(&a)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Smooth => write!(f, "smooth(y={})", self.y)?,
            FamilyKind::Dense(i) => write!(f, "dense(i={i},y={})", self.y)?,
            FamilyKind::StrongDense(i) => write!(f, "strongdense(i={i},y={})", self.y)?,
            FamilyKind::ThetaLower(i) => write!(f, "thetalower(i={i},y={})", self.y)?,
            FamilyKind::ThetaUpper(i) => write!(f, "thetaupper(i={i},y={})", self.y)?,
            FamilyKind::BPower(a) => write!(f, "bpower(a={a},y={})", self.y)?,
            FamilyKind::BStar(a) => write!(f, "bstar(a={a},y={})", self.y)?,
        }
        if self.squarefree_only {
            write!(f, "+squarefree")?;
        }
        Ok(())
    }
}

/// A growth bound `θ` for `B_θ`, compared exactly against primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaRule {
    /// `θ(m) = y`.
    Smooth { y: Rational },
    /// `θ(m) = y m^a`.
    Power { y: Rational, a: Rational },
    /// `θ(m) = max(y, (ym)^a)`.
    Star { y: Rational, a: Rational },
}

impl ThetaRule {
    /// `p ≤ θ(m)`, decided in exact integer arithmetic.
    pub fn admits(&self, p: u64, m: u64) -> bool {
        match *self {
            ThetaRule::Smooth { y } => le_y(p, y),
            ThetaRule::Power { y, a } => {
                let (yn, yd) = (*y.numer(), *y.denom());
                let (an, ad) = (small_exp(*a.numer()), small_exp(*a.denom()));
                // p^ad yd^ad ≤ yn^ad m^an
                le_products(&[(p, ad), (yd, ad)], &[(yn, ad), (m, an)])
            }
            ThetaRule::Star { y, a } => {
                if le_y(p, y) {
                    return true;
                }
                let (yn, yd) = (*y.numer(), *y.denom());
                let (an, ad) = (small_exp(*a.numer()), small_exp(*a.denom()));
                // p^ad yd^an ≤ (yn m)^an
                le_products(&[(p, ad), (yd, an)], &[(yn, an), (m, an)])
            }
        }
    }

    /// `θ(m)` in floating point, for reporting and table sizing.
    pub fn value(&self, m: u64) -> f64 {
        let m = m as f64;
        match *self {
            ThetaRule::Smooth { y } => to_f64(&y),
            ThetaRule::Power { y, a } => to_f64(&y) * m.powf(to_f64(&a)),
            ThetaRule::Star { y, a } => {
                let y = to_f64(&y);
                y.max((y * m).powf(to_f64(&a)))
            }
        }
    }

    /// Whether `n` satisfies `p_{j+1} ≤ θ(p_1⋯p_j)` for its nondecreasing
    /// prime factors.
    pub fn contains(&self, n: &FactoredInteger) -> bool {
        let mut m = 1u64;
        for &(p, e) in n.factors() {
            for _ in 0..e {
                if !self.admits(p, m) {
                    return false;
                }
                m *= p;
            }
        }
        true
    }
}

fn le_y(p: u64, y: Rational) -> bool {
    (p as u128) * (*y.denom() as u128) <= *y.numer() as u128
}

/// `hi ≤ y·lo`, exactly.
fn within_ratio(lo: u64, hi: u64, y: Rational) -> bool {
    (hi as u128) * (*y.denom() as u128) <= (lo as u128) * (*y.numer() as u128)
}

/// Divisor lattice of one integer: sorted divisors, and for every divisor
/// the ranks of its own divisors together with the ranks of the
/// complementary quotients.
struct Lattice {
    divs: Vec<u64>,
    sub: Vec<Vec<(u32, u32)>>,
}

impl Lattice {
    fn new(n: &FactoredInteger) -> Result<Self> {
        let t = n.divisor_count();
        if t > DEFAULT_DIVISOR_CAP as u64 {
            return Err(Error::Resource(format!("{} has {t} divisors", n.n())));
        }
        let t = t as usize;
        let factors = n.factors();
        let radix: Vec<usize> = factors.iter().map(|f| f.1 as usize + 1).collect();

        // divisors in mixed-radix order of their exponent vectors
        let mut vals = vec![1u64; t];
        let mut stride = 1usize;
        for (j, &(p, _)) in factors.iter().enumerate() {
            let block = stride * radix[j];
            for idx in 0..t {
                let digit = (idx % block) / stride;
                vals[idx] *= p.pow(digit as u32);
            }
            stride = block;
        }
        let mut order: Vec<usize> = (0..t).collect();
        order.sort_unstable_by_key(|&i| vals[i]);
        let mut rank = vec![0u32; t];
        for (r, &idx) in order.iter().enumerate() {
            rank[idx] = r as u32;
        }

        let mut sub = vec![Vec::new(); t];
        let mut digits = vec![0usize; radix.len()];
        let mut gdig = vec![0usize; radix.len()];
        for idx in 0..t {
            let mut rem = idx;
            for (j, d) in digits.iter_mut().enumerate() {
                *d = rem % radix[j];
                rem /= radix[j];
            }
            // odometer over exponent vectors g ≤ digits
            let mut list = Vec::with_capacity(digits.iter().map(|d| d + 1).product());
            gdig.iter_mut().for_each(|g| *g = 0);
            loop {
                let mut gidx = 0usize;
                let mut s = 1usize;
                for j in 0..radix.len() {
                    gidx += gdig[j] * s;
                    s *= radix[j];
                }
                list.push((rank[gidx], rank[idx - gidx]));
                let mut j = 0;
                while j < radix.len() {
                    if gdig[j] < digits[j] {
                        gdig[j] += 1;
                        break;
                    }
                    gdig[j] = 0;
                    j += 1;
                }
                if j == radix.len() {
                    break;
                }
            }
            list.sort_unstable();
            sub[rank[idx] as usize] = list;
        }
        let mut divs = vals;
        divs.sort_unstable();
        Ok(Self { divs, sub })
    }

    fn top(&self) -> usize {
        self.divs.len() - 1
    }

    /// Whether the selected divisors of the divisor with rank `k` form a
    /// `y`-dense chain starting at 1 and ending at that divisor.
    fn chain_ok(&self, k: usize, y: Rational, mut keep: impl FnMut(u32, u32) -> bool) -> bool {
        let mut prev: Option<u64> = None;
        let mut last_rank = None;
        for &(e, q) in &self.sub[k] {
            if !keep(e, q) {
                continue;
            }
            let v = self.divs[e as usize];
            match prev {
                None if e != 0 => return false,
                Some(lo) if !within_ratio(lo, v, y) => return false,
                _ => {}
            }
            prev = Some(v);
            last_rank = Some(e as usize);
        }
        last_rank == Some(k)
    }

    /// `D_{l,y}` flags of every divisor for `l = 0..=imax`, stopping early
    /// once the top divisor drops out.
    fn dense_levels(&self, y: Rational, imax: u32) -> Vec<Vec<bool>> {
        let t = self.divs.len();
        let mut levels = vec![vec![true; t]];
        for _ in 1..=imax {
            let prev = levels.last().unwrap();
            if !prev[self.top()] {
                break;
            }
            let next: Vec<bool> = (0..t)
                .map(|k| prev[k] && self.chain_ok(k, y, |e, _| prev[e as usize]))
                .collect();
            levels.push(next);
        }
        levels
    }

    /// `D*_{l,y}` flags of every divisor for `l = 0..=imax`, stopping early
    /// once the top divisor drops out.
    fn strong_levels(&self, y: Rational, imax: u32) -> Vec<Vec<bool>> {
        let t = self.divs.len();
        let mut levels: Vec<Vec<bool>> = vec![vec![true; t]];
        for l in 1..=imax as usize {
            if !levels[l - 1][self.top()] {
                break;
            }
            let next: Vec<bool> = (0..t)
                .map(|k| {
                    (0..l).all(|j| {
                        let (sj, sc) = (&levels[j], &levels[l - 1 - j]);
                        self.chain_ok(k, y, |e, q| sj[e as usize] && sc[q as usize])
                    })
                })
                .collect();
            levels.push(next);
        }
        levels
    }
}

fn top_profile(levels: &[Vec<bool>], imax: u32) -> Vec<bool> {
    (0..=imax as usize)
        .map(|l| levels.get(l).map_or(false, |v| *v.last().unwrap()))
        .collect()
}

/// Membership of one integer in `D_{i,y}` and `D*_{i,y}` for every
/// `i = 0..=imax`, from a single divisor lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipProfile {
    pub dense: Vec<bool>,
    pub strong: Vec<bool>,
}

pub fn membership_profile(n: &FactoredInteger, y: Rational, imax: u32) -> Result<MembershipProfile> {
    let lat = Lattice::new(n)?;
    Ok(MembershipProfile {
        dense: top_profile(&lat.dense_levels(y, imax), imax),
        strong: top_profile(&lat.strong_levels(y, imax), imax),
    })
}

/// Exact membership test.
pub fn is_member(n: &FactoredInteger, spec: &FamilySpec) -> Result<bool> {
    if spec.squarefree_only && !n.is_squarefree() {
        return Ok(false);
    }
    match spec.kind {
        FamilyKind::Dense(0) | FamilyKind::StrongDense(0) => Ok(true),
        FamilyKind::Dense(i) => {
            let lat = Lattice::new(n)?;
            Ok(top_profile(&lat.dense_levels(spec.y, i), i)[i as usize])
        }
        FamilyKind::StrongDense(i) => {
            let lat = Lattice::new(n)?;
            Ok(top_profile(&lat.strong_levels(spec.y, i), i)[i as usize])
        }
        _ => Ok(spec.theta_rule().expect("θ family").contains(n)),
    }
}

fn check_scan(x: u64) -> Result<()> {
    if x > MAX_SCAN {
        return Err(Error::Resource(format!("x = {x} exceeds scan limit {MAX_SCAN}")));
    }
    Ok(())
}

/// Walks the tree of `B_θ` members `≤ x`, each node extending its parent by
/// one prime `≥ P⁺(parent)`.
fn theta_walk(
    rule: &ThetaRule,
    x: u64,
    squarefree: bool,
    visit: &mut dyn FnMut(u64, &[(u64, u32)]) -> Result<()>,
) -> Result<()> {
    check_scan(x)?;
    let primes = primes_up_to(x);
    let mut factors = Vec::new();
    walk(rule, x, squarefree, &primes, 1, 0, &mut factors, visit)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    rule: &ThetaRule,
    x: u64,
    squarefree: bool,
    primes: &[u64],
    m: u64,
    start: usize,
    factors: &mut Vec<(u64, u32)>,
    visit: &mut dyn FnMut(u64, &[(u64, u32)]) -> Result<()>,
) -> Result<()> {
    visit(m, factors)?;
    for (off, &p) in primes[start..].iter().enumerate() {
        if p > x / m || !rule.admits(p, m) {
            break;
        }
        let idx = start + off;
        match factors.last_mut() {
            Some(last) if last.0 == p => last.1 += 1,
            _ => factors.push((p, 1)),
        }
        let next = if squarefree { idx + 1 } else { idx };
        walk(rule, x, squarefree, primes, m * p, next, factors, visit)?;
        let last = factors.last_mut().unwrap();
        if last.1 > 1 {
            last.1 -= 1;
        } else {
            factors.pop();
        }
    }
    Ok(())
}

/// Calls `visit` on every member `≤ x` (in no particular order).
fn for_each_member(
    spec: &FamilySpec,
    x: u64,
    visit: &mut dyn FnMut(u64, &[(u64, u32)]) -> Result<()>,
) -> Result<()> {
    match spec.kind {
        FamilyKind::Dense(0) | FamilyKind::StrongDense(0) => {
            check_scan(x)?;
            let sieve = SpfSieve::new(x.max(2))?;
            for n in 1..=x {
                let f = factorize(n, Some(&sieve))?;
                if !spec.squarefree_only || f.is_squarefree() {
                    visit(n, f.factors())?;
                }
            }
            Ok(())
        }
        FamilyKind::Dense(i) | FamilyKind::StrongDense(i) => {
            // every member lies in B_θ with θ(n) = y n^{1/i}
            let rule = ThetaRule::Power { y: spec.y, a: Rational::new(1, i as u64) };
            theta_walk(&rule, x, spec.squarefree_only, &mut |n, factors| {
                let f = FactoredInteger::from_factors(factors.to_vec())?;
                if is_member(&f, spec)? {
                    visit(n, factors)?;
                }
                Ok(())
            })
        }
        _ => {
            let rule = spec.theta_rule().expect("θ family");
            theta_walk(&rule, x, spec.squarefree_only, visit)
        }
    }
}

/// All members `≤ x`, increasing.
pub fn enumerate(spec: &FamilySpec, x: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for_each_member(spec, x, &mut |n, _| {
        out.push(n);
        Ok(())
    })?;
    out.sort_unstable();
    Ok(out)
}

/// Number of members `≤ x`.
pub fn count_members(spec: &FamilySpec, x: u64) -> Result<u64> {
    let mut c = 0u64;
    for_each_member(spec, x, &mut |_, _| {
        c += 1;
        Ok(())
    })?;
    Ok(c)
}

/// A count together with its model `x ρ_a(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub spec: FamilySpec,
    pub x: u64,
    pub count: u64,
    /// `log x / log y`.
    pub u: f64,
    /// `x ρ_a(u)`, divided by `ζ(2)` for squarefree families.
    pub model: Option<f64>,
}

impl CountReport {
    pub fn ratio(&self) -> Option<f64> {
        self.model.map(|m| self.count as f64 / m)
    }
}

/// Largest `u` for which [`count`] fills in the model.
pub const MODEL_U_MAX: f64 = 60.0;

pub fn count(spec: &FamilySpec, x: u64) -> Result<CountReport> {
    let c = count_members(spec, x)?;
    let u = (x as f64).ln() / to_f64(&spec.y).ln();
    let model = match spec.rho_parameter() {
        Some(a) if u <= MODEL_U_MAX => {
            let mut m = x as f64 * crate::rho::rho(a, u)?;
            if spec.squarefree_only {
                m /= std::f64::consts::PI.powi(2) / 6.0;
            }
            Some(m)
        }
        _ => None,
    };
    Ok(CountReport { spec: *spec, x, count: c, u, model })
}

/// A value `d·p^β` of the Schinzel–Szekeres function, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SsValue {
    /// The maximizing divisor (1 for `n = 1`).
    pub d: u64,
    /// `P⁻(d)` (1 for `n = 1`).
    pub p: u64,
    pub beta: Rational,
}

impl SsValue {
    pub fn to_f64(&self) -> f64 {
        self.d as f64 * (self.p as f64).powf(to_f64(&self.beta))
    }

    fn powered(&self) -> [(u64, u32); 2] {
        let (u, v) = (small_exp(*self.beta.numer()), small_exp(*self.beta.denom()));
        [(self.d, v), (self.p, u)]
    }

    /// Exact comparison of two values with the same `β`.
    pub fn cmp_value(&self, other: &SsValue) -> Ordering {
        debug_assert_eq!(self.beta, other.beta);
        cmp_products(&self.powered(), &other.powered())
    }

    /// `d p^β ≤ bound`, exactly.
    pub fn le(&self, bound: Rational) -> bool {
        let v = small_exp(*self.beta.denom());
        let lhs = self.powered();
        le_products(
            &[lhs[0], lhs[1], (*bound.denom(), v)],
            &[(*bound.numer(), v)],
        )
    }
}

/// `F_β(n) = max_{d|n, d>1} d P⁻(d)^β` with `F_β(1) = 1`.
///
/// For a fixed smallest prime `q`, the largest admissible `d` is the product
/// of all prime powers of `n` with prime `≥ q`, so only one candidate per
/// prime factor needs comparing.
pub fn schinzel_szekeres(n: &FactoredInteger, beta: Rational) -> SsValue {
    let factors = n.factors();
    let mut best = SsValue { d: 1, p: 1, beta };
    let mut suffix = 1u64;
    for &(q, e) in factors.iter().rev() {
        suffix *= q.pow(e);
        let cand = SsValue { d: suffix, p: q, beta };
        if best.d == 1 || cand.cmp_value(&best) == Ordering::Greater {
            best = cand;
        }
    }
    best
}

/// `|{n ≤ x : F_β(n) ≤ xy}|`, by direct scan.
pub fn count_a_beta(x: u64, y: Rational, beta: Rational, squarefree: bool) -> Result<u64> {
    check_scan(x)?;
    if y < Rational::from_integer(1) || *beta.numer() == 0 {
        return Err(Error::Domain("need y ≥ 1 and β > 0".into()));
    }
    let sieve = SpfSieve::new(x.max(2))?;
    let bound_n = (x as u128) * (*y.numer() as u128);
    let v = small_exp(*beta.denom());
    let mut c = 0;
    for n in 1..=x {
        let f = factorize(n, Some(&sieve))?;
        if squarefree && !f.is_squarefree() {
            continue;
        }
        let s = schinzel_szekeres(&f, beta).powered();
        let ok = if let Ok(b) = u64::try_from(bound_n) {
            le_products(&[s[0], s[1], (*y.denom(), v)], &[(b, v)])
        } else {
            le_products(&[s[0], s[1], (*y.denom(), v)], &[(x, v), (*y.numer(), v)])
        };
        if ok {
            c += 1;
        }
    }
    Ok(c)
}

/// `Φ(x,y) = |{1 ≤ n ≤ x : P⁻(n) > y}|`, or `Φ₀` when `squarefree`.
pub fn phi_count(x: f64, y: f64, squarefree: bool) -> Result<u64> {
    if x.is_nan() || y.is_nan() || x < 0.0 {
        return Err(Error::Domain("need x ≥ 0".into()));
    }
    if x < 1.0 {
        return Ok(0);
    }
    let n_max = x.floor() as u64;
    check_scan(n_max)?;
    let sieve = SpfSieve::new(n_max.max(2))?;
    let mut c = 1; // n = 1
    for n in 2..=n_max {
        if (sieve.spf(n).unwrap() as f64) > y && (!squarefree || is_squarefree_sieved(n, &sieve)) {
            c += 1;
        }
    }
    Ok(c)
}

fn is_squarefree_sieved(mut n: u64, sieve: &SpfSieve) -> bool {
    while n > 1 {
        let p = sieve.spf(n).unwrap();
        n /= p;
        if n % p == 0 {
            return false;
        }
    }
    true
}

fn b_theta_rule(spec: &FamilySpec) -> Result<ThetaRule> {
    spec.theta_rule()
        .ok_or_else(|| Error::Domain(format!("{spec} is not a B_θ family")))
}

/// `[x] = Σ_{n∈B_θ} Φ(x/n, θ(n))`, or for squarefree specs
/// `Φ₀(x,1) = Σ_{n∈B̃_θ} Φ₀(x/n, θ(n))`, evaluated exactly at one `x`.
pub fn check_phi_identity(x: u64, spec: &FamilySpec) -> Result<bool> {
    let rule = b_theta_rule(spec)?;
    let sf = spec.squarefree_only;
    let sieve = SpfSieve::new(x.max(2))?;
    let lhs = if sf { (1..=x).filter(|&n| is_squarefree_sieved(n, &sieve)).count() as u64 } else { x };
    let mut rhs = 0u64;
    theta_walk(&rule, x, sf, &mut |n, _| {
        for k in 1..=x / n {
            if rough_after(k, n, &rule, sf, &sieve) {
                rhs += 1;
            }
        }
        Ok(())
    })?;
    Ok(lhs == rhs)
}

/// `k = 1` or `P⁻(k) > θ(n)`, and `k` squarefree if requested.
fn rough_after(k: u64, n: u64, rule: &ThetaRule, sf: bool, sieve: &SpfSieve) -> bool {
    if k == 1 {
        return true;
    }
    !rule.admits(sieve.spf(k).unwrap(), n) && (!sf || is_squarefree_sieved(k, sieve))
}

/// The identity of [`check_phi_identity`] for every `x ≤ x_max` at once.
///
/// Each term on the right counts pairs `(n, k)` with `nk ≤ x`; bucketing
/// them by the product and comparing prefix sums covers all `x` together.
pub fn check_phi_identity_upto(x_max: u64, spec: &FamilySpec) -> Result<bool> {
    let rule = b_theta_rule(spec)?;
    let sf = spec.squarefree_only;
    let sieve = SpfSieve::new(x_max.max(2))?;
    let mut hits = vec![0u32; x_max as usize + 1];
    theta_walk(&rule, x_max, sf, &mut |n, _| {
        for k in 1..=x_max / n {
            if rough_after(k, n, &rule, sf, &sieve) {
                hits[(n * k) as usize] += 1;
            }
        }
        Ok(())
    })?;
    let (mut lhs, mut rhs) = (0u64, 0u64);
    for m in 1..=x_max {
        if !sf || is_squarefree_sieved(m, &sieve) {
            lhs += 1;
        }
        rhs += hits[m as usize] as u64;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_{n∈B_θ, n≤N} (1/n) Π_{p≤θ(n)} (1 − 1/p)`, or with factors
/// `(1 + 1/p)^{-1}` over squarefree `n` for squarefree specs.
pub fn check_partial_density_sum(spec: &FamilySpec, n_max: u64) -> Result<f64> {
    let rule = b_theta_rule(spec)?;
    let sf = spec.squarefree_only;
    let theta_max = rule.value(n_max).ceil() as u64 + 1;
    check_scan(2 * theta_max)?;
    // Bertrand: some prime in (θ, 2θ] ends the table above every θ(n)
    let primes = primes_up_to(2 * theta_max + 2);
    let mut euler = Vec::with_capacity(primes.len() + 1);
    euler.push(1.0f64);
    for &p in &primes {
        let f = if sf { 1.0 / (1.0 + 1.0 / p as f64) } else { 1.0 - 1.0 / p as f64 };
        euler.push(euler.last().unwrap() * f);
    }
    let mut members = Vec::new();
    theta_walk(&rule, n_max, sf, &mut |n, _| {
        members.push(n);
        Ok(())
    })?;
    members.sort_unstable();
    let mut sum = 0.0;
    for n in members {
        let k = primes.partition_point(|&p| rule.admits(p, n));
        if k == primes.len() {
            return Err(Error::Resource("prime table too short for θ(n)".into()));
        }
        sum += euler[k] / n as f64;
    }
    Ok(sum)
}

/// `F_β(n)/n ≤ y^β`, exactly.
fn ssf_ratio_ok(f: &FactoredInteger, y: Rational, beta: Rational) -> bool {
    let s = schinzel_szekeres(f, beta).powered();
    let (u, v) = (small_exp(*beta.numer()), small_exp(*beta.denom()));
    // d^v p^u yd^u ≤ n^v yn^u
    le_products(&[s[0], s[1], (*y.denom(), u)], &[(f.n(), v), (*y.numer(), u)])
}

/// `|{n ≤ x : F_β(n)/n ≤ y^β}| = B_{1/β}(x, y)` at one `x`.
pub fn check_ssf_identity(x: u64, y: Rational, beta: Rational) -> Result<bool> {
    check_scan(x)?;
    let sieve = SpfSieve::new(x.max(2))?;
    let mut lhs = 0u64;
    for n in 1..=x {
        if ssf_ratio_ok(&factorize(n, Some(&sieve))?, y, beta) {
            lhs += 1;
        }
    }
    let a = Rational::new(*beta.denom(), *beta.numer());
    Ok(lhs == count_members(&FamilySpec::b_power(a, y)?, x)?)
}

/// The identity of [`check_ssf_identity`] for every `x ≤ x_max`; the two
/// sets are compared integer by integer, which covers every prefix.
pub fn check_ssf_identity_upto(x_max: u64, y: Rational, beta: Rational) -> Result<bool> {
    check_scan(x_max)?;
    let sieve = SpfSieve::new(x_max.max(2))?;
    let a = Rational::new(*beta.denom(), *beta.numer());
    let spec = FamilySpec::b_power(a, y)?;
    let mut in_b = vec![false; x_max as usize + 1];
    for n in enumerate(&spec, x_max)? {
        in_b[n as usize] = true;
    }
    for n in 1..=x_max {
        if ssf_ratio_ok(&factorize(n, Some(&sieve))?, y, beta) != in_b[n as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares `D_{2,y}` membership from the divisor definition with the
/// `B_θ` description using `θ(m) = y max_{d∈D_{1,y}, d|m} min(m/d, d)`.
pub fn check_theta2(n: &FactoredInteger, y: Rational) -> Result<bool> {
    let by_definition = is_member(n, &FamilySpec::dense(2, y)?)?;
    let mut by_theta = true;
    let mut m = FactoredInteger::one();
    'outer: for &(p, e) in n.factors() {
        for _ in 0..e {
            let lat = Lattice::new(&m)?;
            let d1 = &lat.dense_levels(y, 1)[1];
            let t = lat
                .divs
                .iter()
                .zip(d1)
                .filter(|(_, &ok)| ok)
                .map(|(&d, _)| d.min(m.n() / d))
                .max()
                .unwrap_or(1);
            // p ≤ y t
            if (p as u128) * (*y.denom() as u128) > (t as u128) * (*y.numer() as u128) {
                by_theta = false;
                break 'outer;
            }
            m = m.times_prime(p);
        }
    }
    Ok(by_definition == by_theta)
}

/// Searches for a factorization `n = d_v d_w` with `R/y ≤ d_w ≤ R`,
/// `d_w ∈ L_{w,y}` and `d_v ∈ L_{v,y}`, where `L_{j,y}` is `B_θ` with
/// `θ(m) = max(y, (ym)^{1/j})` and `L_{0,y}` is every positive integer.
pub fn check_factorization_lemma(
    n: &FactoredInteger,
    i: u32,
    y: Rational,
    r: Rational,
    v: u32,
    w: u32,
) -> Result<bool> {
    if i == 0 || v + w + 1 != i {
        return Err(Error::Domain("need i ≥ 1 and v + w = i − 1".into()));
    }
    if !is_member(n, &FamilySpec::theta_lower(i, y)?)? {
        return Err(Error::Domain(format!("{} is not in L_{{{i},{y}}}", n.n())));
    }
    let (rn, rd) = (*r.numer() as u128, *r.denom() as u128);
    let (yn, yd) = (*y.numer() as u128, *y.denom() as u128);
    if rn < rd || rn * yd > yn * rd * n.n() as u128 {
        return Err(Error::Domain("need 1 ≤ R ≤ yn".into()));
    }
    let in_l = |d: u64, j: u32| -> Result<bool> {
        if j == 0 {
            return Ok(true);
        }
        Ok(FamilySpec::theta_lower(j, y)?.theta_rule().unwrap().contains(&factorize(d, None)?))
    };
    for dw in n.divisors()? {
        let d = dw as u128;
        // R/y ≤ d_w ≤ R
        if rn * yd <= yn * d * rd && d * rd <= rn && in_l(dw, w)? && in_l(n.n() / dw, v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Result of probing whether `D*_{i,y} ∩ [1, x]` could be a `B_θ` set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuestionReport {
    pub members: u64,
    /// Members `n` whose prefix `n / P⁺(n)` is not a member.
    pub prefix_violations: Vec<(u64, u64)>,
    /// `(m, q, p)` with `mp` a member, `P⁺(m) ≤ q < p` prime, `mq` not.
    pub gap_violations: Vec<(u64, u64, u64)>,
}

impl QuestionReport {
    pub fn consistent(&self) -> bool {
        self.prefix_violations.is_empty() && self.gap_violations.is_empty()
    }
}

/// A set equals some `B_θ` exactly when it contains 1, is closed under
/// removing the largest prime factor, and for each member `m` the primes
/// `p ≥ P⁺(m)` with `mp` inside form an initial run. This scans for
/// violations of either condition among `D*_{i,y}` up to `x`.
pub fn question_search(i: u32, y: Rational, x: u64, max_reports: usize) -> Result<QuestionReport> {
    let spec = FamilySpec::strong_dense(i, y)?;
    let members = enumerate(&spec, x)?;
    let mut is_in = vec![false; x as usize + 1];
    for &n in &members {
        is_in[n as usize] = true;
    }
    let primes = primes_up_to(x);
    let sieve = SpfSieve::new(x.max(2))?;
    let mut rep = QuestionReport { members: members.len() as u64, ..Default::default() };
    for &n in &members {
        if n == 1 {
            continue;
        }
        let f = factorize(n, Some(&sieve))?;
        let p = f.largest_prime();
        let m = n / p;
        if !is_in[m as usize] && rep.prefix_violations.len() < max_reports {
            rep.prefix_violations.push((n, m));
        }
        let lo = factorize(m, Some(&sieve))?.largest_prime();
        let start = primes.partition_point(|&q| q < lo);
        for &q in primes[start..].iter().take_while(|&&q| q < p) {
            if !is_in[(m * q) as usize] && rep.gap_violations.len() < max_reports {
                rep.gap_violations.push((m, q, p));
            }
        }
    }
    Ok(rep)
}

/// Violations of `S_y ⊆ L ⊆ D* ⊆ D ⊆ U` found by [`check_sandwich`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SandwichReport {
    pub checked: u64,
    /// `(n, i, link)` where `link` indexes the failing inclusion (0..4).
    pub violations: Vec<(u64, u32, u8)>,
}

/// Checks the five-set inclusion chain for all `n ≤ n_max`, `1 ≤ i ≤ i_max`.
pub fn check_sandwich(n_max: u64, i_max: u32, y: Rational) -> Result<SandwichReport> {
    check_scan(n_max)?;
    let sieve = SpfSieve::new(n_max.max(2))?;
    let smooth = ThetaRule::Smooth { y };
    let lower: Vec<ThetaRule> =
        (1..=i_max).map(|i| ThetaRule::Star { y, a: Rational::new(1, i as u64) }).collect();
    let upper: Vec<ThetaRule> =
        (1..=i_max).map(|i| ThetaRule::Power { y, a: Rational::new(1, i as u64) }).collect();
    let mut rep = SandwichReport::default();
    for n in 1..=n_max {
        let f = factorize(n, Some(&sieve))?;
        let prof = membership_profile(&f, y, i_max)?;
        let s = smooth.contains(&f);
        for i in 1..=i_max {
            let k = (i - 1) as usize;
            let chain = [s, lower[k].contains(&f), prof.strong[i as usize], prof.dense[i as usize], upper[k].contains(&f)];
            for link in 0..4 {
                if chain[link] && !chain[link + 1] {
                    rep.violations.push((n, i, link as u8));
                }
            }
        }
        rep.checked += 1;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn f(n: u64) -> FactoredInteger {
        factorize(n, None).unwrap()
    }

    fn member(n: u64, spec: FamilySpec) -> bool {
        is_member(&f(n), &spec).unwrap()
    }

    /// Divisor-definition oracle written directly from sorted divisor lists,
    /// recursing on the value.
    fn dense_oracle(n: u64, i: u32, y: Rational) -> bool {
        if i == 0 {
            return true;
        }
        let chain: Vec<u64> = (1..=n).filter(|d| n % d == 0 && dense_oracle(*d, i - 1, y)).collect();
        oracle_chain_ok(&chain, n, y)
    }

    fn strong_oracle(n: u64, i: u32, y: Rational) -> bool {
        if i == 0 {
            return true;
        }
        (0..i).all(|j| {
            let chain: Vec<u64> = (1..=n)
                .filter(|d| n % d == 0 && strong_oracle(*d, j, y) && strong_oracle(n / d, i - 1 - j, y))
                .collect();
            oracle_chain_ok(&chain, n, y)
        })
    }

    fn oracle_chain_ok(chain: &[u64], n: u64, y: Rational) -> bool {
        let yf = |d: u64| Rational::from_integer(d) * y;
        chain.first() == Some(&1)
            && chain.last() == Some(&n)
            && chain.windows(2).all(|w| Rational::from_integer(w[1]) <= yf(w[0]))
    }

    #[test]
    fn listed_members_up_to_32() {
        let y = q("2");
        let d1 = vec![1, 2, 4, 6, 8, 12, 16, 18, 20, 24, 28, 30, 32];
        let d2 = vec![1, 2, 4, 8, 12, 16, 24, 32];
        let d3 = vec![1, 2, 4, 8, 16, 24, 32];
        let d4 = vec![1, 2, 4, 8, 16, 32];
        assert_eq!(enumerate(&FamilySpec::dense(1, y).unwrap(), 32).unwrap(), d1);
        assert_eq!(enumerate(&FamilySpec::dense(2, y).unwrap(), 32).unwrap(), d2);
        assert_eq!(enumerate(&FamilySpec::dense(3, y).unwrap(), 32).unwrap(), d3);
        for i in 4..8 {
            assert_eq!(enumerate(&FamilySpec::dense(i, y).unwrap(), 32).unwrap(), d4);
            assert_eq!(enumerate(&FamilySpec::strong_dense(i, y).unwrap(), 32).unwrap(), d4);
        }
        assert_eq!(enumerate(&FamilySpec::strong_dense(3, y).unwrap(), 32).unwrap(), d3);
        assert_eq!(enumerate(&FamilySpec::smooth(y).unwrap(), 10).unwrap(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn membership_examples() {
        let y = q("2");
        assert!(member(6, FamilySpec::dense(1, y).unwrap()));
        assert!(!member(10, FamilySpec::dense(1, y).unwrap()));
        for spec in [
            FamilySpec::dense(3, y).unwrap(),
            FamilySpec::strong_dense(5, y).unwrap(),
            FamilySpec::b_star(q("1/3"), y).unwrap(),
            FamilySpec::smooth(q("3/2")).unwrap(),
        ] {
            assert!(member(1, spec));
        }
    }

    #[test]
    fn counterexamples_separate_weak_and_strong() {
        let y = q("2");
        assert!(member(8424, FamilySpec::dense(3, y).unwrap()));
        assert!(!member(8424, FamilySpec::strong_dense(3, y).unwrap()));
        assert!(member(65520, FamilySpec::dense(4, y).unwrap()));
        assert!(!member(65520, FamilySpec::strong_dense(4, y).unwrap()));
    }

    #[test]
    fn lattice_matches_value_recursion_oracle() {
        for y in [q("2"), q("5/2"), q("3")] {
            for n in 1..=600u64 {
                let p = membership_profile(&f(n), y, 4).unwrap();
                for i in 0..=4 {
                    assert_eq!(p.dense[i as usize], dense_oracle(n, i, y), "D n={n} i={i} y={y}");
                    assert_eq!(p.strong[i as usize], strong_oracle(n, i, y), "D* n={n} i={i} y={y}");
                }
            }
        }
    }

    #[test]
    fn counts_of_listed_members() {
        let y = q("2");
        assert_eq!(count_members(&FamilySpec::dense(1, y).unwrap(), 32).unwrap(), 13);
        assert_eq!(count_members(&FamilySpec::dense(2, y).unwrap(), 32).unwrap(), 8);
        assert_eq!(count_members(&FamilySpec::smooth(y).unwrap(), 1).unwrap(), 1);
    }

    #[test]
    fn enumeration_agrees_with_membership_scan() {
        let specs = [
            FamilySpec::dense(2, q("2")).unwrap(),
            FamilySpec::strong_dense(3, q("3")).unwrap(),
            FamilySpec::theta_lower(2, q("5/2")).unwrap(),
            FamilySpec::theta_upper(3, q("2")).unwrap(),
            FamilySpec::b_power(q("2/3"), q("3")).unwrap(),
            FamilySpec::b_star(q("3/2"), q("2")).unwrap(),
            FamilySpec::dense(1, q("2")).unwrap().squarefree(),
            FamilySpec::b_power(q("1"), q("2")).unwrap().squarefree(),
            FamilySpec::smooth(q("7")).unwrap(),
        ];
        for spec in specs {
            let scan: Vec<u64> = (1..=3000).filter(|&n| member(n, spec)).collect();
            assert_eq!(enumerate(&spec, 3000).unwrap(), scan, "{spec}");
        }
    }

    #[test]
    fn theta_rules_are_exact_at_boundaries() {
        // θ(4) = 2·4^{1/2} = 4 exactly
        let upper = ThetaRule::Power { y: q("2"), a: q("1/2") };
        assert!(upper.admits(4, 4));
        assert!(!upper.admits(5, 4));
        // θ(16) = max(2, 32^{1/5}) = 2
        let lower = ThetaRule::Star { y: q("2"), a: q("1/5") };
        assert!(lower.admits(2, 16));
        assert!(!lower.admits(3, 16));
        // θ(m) = y
        assert!(ThetaRule::Smooth { y: q("5/2") }.admits(2, 99));
        assert!(!ThetaRule::Smooth { y: q("5/2") }.admits(3, 1));
    }

    #[test]
    fn schinzel_szekeres_examples() {
        let one = q("1");
        assert_eq!(schinzel_szekeres(&f(1), one).to_f64(), 1.0);
        let v = schinzel_szekeres(&f(2), one);
        assert_eq!((v.d, v.to_f64()), (2, 4.0));
        let v = schinzel_szekeres(&f(12), one);
        assert_eq!((v.d, v.to_f64()), (12, 24.0));
    }

    fn ss_brute(n: u64, beta: Rational) -> SsValue {
        let mut best = SsValue { d: 1, p: 1, beta };
        for d in 2..=n {
            if n % d == 0 {
                let c = SsValue { d, p: f(d).smallest_prime().unwrap(), beta };
                if best.d == 1 || c.cmp_value(&best) == Ordering::Greater {
                    best = c;
                }
            }
        }
        best
    }

    #[test]
    fn schinzel_szekeres_matches_brute_force() {
        for beta in [q("1"), q("2"), q("1/2"), q("5/3")] {
            for n in 1..=3000 {
                let fast = schinzel_szekeres(&f(n), beta);
                let slow = ss_brute(n, beta);
                assert_eq!(fast.cmp_value(&slow), Ordering::Equal, "n={n} β={beta}");
            }
        }
    }

    #[test]
    fn a_beta_counts() {
        assert_eq!(count_a_beta(1, q("1"), q("1"), false).unwrap(), 1);
        let brute = (1..=10u64).filter(|&n| ss_brute(n, q("1")).to_f64() <= 10.0).count() as u64;
        assert_eq!(count_a_beta(10, q("1"), q("1"), false).unwrap(), brute);
        for (x, y, b) in [(500, "3/2", "1"), (800, "2", "1/2"), (300, "1", "2")] {
            let plain = count_a_beta(x, q(y), q(b), false).unwrap();
            let sf = count_a_beta(x, q(y), q(b), true).unwrap();
            assert!(sf <= plain);
            let bound = x as f64 * to_f64(&q(y));
            let brute = (1..=x).filter(|&n| ss_brute(n, q(b)).to_f64() <= bound * (1.0 + 1e-12)).count();
            assert_eq!(plain as usize, brute);
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_count(10.0, 2.0, false).unwrap(), 5);
        assert_eq!(phi_count(0.5, 2.0, false).unwrap(), 0);
        assert_eq!(phi_count(10.0, 2.0, true).unwrap(), 4);
        let brute = (1..=1000u64)
            .filter(|&n| f(n).smallest_prime().map_or(true, |p| p as f64 > 7.5))
            .count() as u64;
        assert_eq!(phi_count(1000.9, 7.5, false).unwrap(), brute);
    }

    #[test]
    fn phi_identity_single_and_sweep() {
        assert!(check_phi_identity(100, &FamilySpec::b_power(q("1"), q("2")).unwrap()).unwrap());
        assert!(check_phi_identity(1, &FamilySpec::b_star(q("1/3"), q("2")).unwrap()).unwrap());
        let sf = FamilySpec::b_power(q("1/2"), q("3")).unwrap().squarefree();
        assert!(check_phi_identity(10_000, &sf).unwrap());
        assert!(check_phi_identity_upto(3000, &FamilySpec::b_power(q("1"), q("3")).unwrap()).unwrap());
        assert!(check_phi_identity_upto(3000, &sf).unwrap());
        assert!(check_phi_identity(50, &FamilySpec::dense(2, q("2")).unwrap()).is_err());
    }

    #[test]
    fn phi_identity_sweep_matches_single_x() {
        let spec = FamilySpec::b_star(q("1/2"), q("2")).unwrap();
        let sweep = check_phi_identity_upto(400, &spec).unwrap();
        let singles = (1..=400).all(|x| check_phi_identity(x, &spec).unwrap());
        assert!(sweep && singles);
    }

    #[test]
    fn partial_density_sum_examples() {
        let spec = FamilySpec::b_power(q("1"), q("2")).unwrap();
        assert!((check_partial_density_sum(&spec, 1).unwrap() - 0.5).abs() < 1e-15);
        let mut prev = 0.0;
        for n in [1, 10, 100, 1000, 10_000] {
            let s = check_partial_density_sum(&spec, n).unwrap();
            assert!(s >= prev && s < 1.0);
            prev = s;
        }
    }

    #[test]
    fn ssf_identity() {
        assert!(check_ssf_identity(1000, q("2"), q("1")).unwrap());
        assert!(check_ssf_identity(1, q("2"), q("1")).unwrap());
        assert!(check_ssf_identity(1000, q("3"), q("2")).unwrap());
        assert!(check_ssf_identity_upto(2000, q("5/2"), q("3/2")).unwrap());
    }

    #[test]
    fn theta2_characterization() {
        for n in 1..=32 {
            assert!(check_theta2(&f(n), q("2")).unwrap(), "n={n}");
        }
        for n in 1..=2000 {
            assert!(check_theta2(&f(n), q("3")).unwrap(), "n={n}");
        }
    }

    #[test]
    fn factorization_lemma() {
        let y = q("2");
        assert!(check_factorization_lemma(&f(1), 2, y, q("1"), 1, 0).unwrap());
        assert!(check_factorization_lemma(&f(2), 1, y, q("3"), 0, 0).unwrap());
        assert!(check_factorization_lemma(&f(12), 3, y, q("30"), 0, 1).is_err());
        assert!(check_factorization_lemma(&f(3), 1, y, q("1"), 0, 0).is_err());
        let lset = FamilySpec::theta_lower(3, y).unwrap();
        for n in enumerate(&lset, 500).unwrap() {
            for k in 2..=(4 * n) {
                let r = Rational::new(k, 2);
                if r > Rational::from_integer(2 * n) {
                    break;
                }
                for v in 0..3 {
                    assert!(check_factorization_lemma(&f(n), 3, y, r, v, 2 - v).unwrap());
                }
            }
        }
    }

    #[test]
    fn question_search_runs() {
        let rep = question_search(2, q("2"), 2000, 10).unwrap();
        assert!(rep.members > 0);
        // D*_{2,y} = D_{2,y} is a B_θ set
        assert!(rep.consistent());
    }

    #[test]
    fn count_report_fields() {
        let r = count(&FamilySpec::smooth(q("2")).unwrap(), 1).unwrap();
        assert_eq!((r.count, r.u), (1, 0.0));
        let r = count(&FamilySpec::b_power(q("1"), q("10")).unwrap(), 10).unwrap();
        assert_eq!(r.count, 10);
        assert!((r.u - 1.0).abs() < 1e-12);
        assert!((r.ratio().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(FamilySpec::dense(1, q("1")).is_err());
        assert!(FamilySpec::theta_upper(0, q("2")).is_err());
        assert!(FamilySpec::b_power(q("0"), q("2")).is_err());
    }
}
