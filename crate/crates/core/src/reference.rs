//! Printed digits of the tabulated constants, kept as strings so that
//! comparisons are made digit by digit.

/// Truncated digits of `λ_{1/i}` for `i = 1..=20`.
pub const LAMBDA_DIGITS: [&str; 20] = [
    "1", "2.46206", "4.20605", "6.15900", "8.27925", "10.5395", "12.9203", "15.4074", "17.9892",
    "20.6568", "23.4026", "26.2206", "29.1054", "32.0524", "35.0578", "38.1180", "41.2300",
    "44.3909", "47.5985", "50.8504",
];

/// Printed digits of `C_{1/i}` for `i = 2..=10`; `C_1 = 1/(1 − e^{−γ})`.
pub const C_DIGITS: [&str; 9] =
    ["3.7815", "5.7645", "8.3827", "11.812", "16.265", "22.000", "29.333", "38.648", "50.410"];

/// Printed digits of the first four positive zeros of `K(ν)`.
pub const NU_DIGITS: [&str; 4] = ["2.383446", "5.510195", "8.647357", "11.786842"];

/// The complex zero of `g_1` nearest the real axis in the upper half plane.
pub const G1_COMPLEX_ZERO: (f64, f64) = (-3.03, 11.36);

/// Sample points `(a, Re s, Im s)` on which the series and integral forms of
/// `g_a` are compared.
pub const CROSS_CHECK_POINTS: [(f64, f64, f64); 12] = [
    (1.0, 1.0, 0.0),
    (1.0, -1.0, 2.0),
    (1.0, -5.0, 0.0),
    (1.0, 0.5, -3.0),
    (1.0, -2.0, 3.0),
    (0.5, 0.0, 1.0),
    (0.5, -2.46, 0.0),
    (0.5, -3.0, 4.0),
    (1.0 / 3.0, -1.0, 2.0),
    (1.0 / 3.0, -4.2, 0.0),
    (0.2, 2.0, -1.0),
    (0.2, -8.0, 0.5),
];

/// Sample points `(a, Re s, Im s)` for the identity
/// `∂_a g_a(s) = (s/a) g_a(s+1) − ((s+1)/a) g_a(s)`.
pub const IDENTITY_POINTS: [(f64, f64, f64); 6] =
    [(1.0, 1.0, 0.0), (0.5, -2.0, 3.0), (0.7, 0.0, 0.0), (0.25, -1.5, 1.0), (2.0, -0.5, -2.0), (1.0, -3.0, 1.0)];

/// `C_1 = 1/(1 − e^{−γ})`.
pub fn c_one() -> f64 {
    1.0 / (1.0 - crate::specfun::EXP_NEG_GAMMA)
}

fn decimals(printed: &str) -> usize {
    printed.split_once('.').map_or(0, |(_, f)| f.len())
}

/// `value` truncated to as many decimals as `printed` has.
pub fn truncate_to(value: f64, printed: &str) -> String {
    let d = decimals(printed);
    let scale = 10f64.powi(d as i32);
    format!("{:.*}", d, (value * scale + 1e-9).floor() / scale)
}

/// `value` rounded to as many decimals as `printed` has.
pub fn round_to(value: f64, printed: &str) -> String {
    format!("{:.*}", decimals(printed), value)
}

/// Whether `value` truncates to `printed`.
pub fn truncates_to(value: f64, printed: &str) -> bool {
    truncate_to(value, printed) == printed
}

/// Whether `value` truncates or rounds to `printed`.
pub fn matches_digits(value: f64, printed: &str) -> bool {
    truncates_to(value, printed) || round_to(value, printed) == printed
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_matching() {
        assert!(truncates_to(2.4620667, "2.46206"));
        assert!(!truncates_to(2.4620599, "2.46206"));
        assert!(truncates_to(1.0, "1"));
        assert!(truncates_to(1.0 - 1e-13, "1"));
        assert!(matches_digits(11.811990, "11.812"));
        assert!(matches_digits(29.333945, "29.333"));
        assert!(!matches_digits(29.3345, "29.333"));
        assert_eq!(truncate_to(6.1590028, "6.15900"), "6.15900");
    }
}
