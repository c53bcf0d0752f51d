//! Thin wrappers around libm so the whole crate uses one deterministic set of
//! transcendental implementations (std and libm may differ at ulp level).

#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

/// x^k by repeated multiplication. Scaling x by a power of two scales the
/// result exactly, which the homogeneity checks rely on.
#[inline]
pub fn powi(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Whether a positive f64 is an exact power of two (zero mantissa bits).
#[inline]
pub fn is_pow2(x: f64) -> bool {
    x > 0.0 && x.is_finite() && x.to_bits() & ((1u64 << 52) - 1) == 0
}

/// Binomial coefficient as f64 (small k only).
pub fn binomial(k: u32, j: u32) -> f64 {
    let mut num = 1.0;
    let mut den = 1.0;
    for i in 0..j.min(k - j) {
        num *= (k - i) as f64;
        den *= (i + 1) as f64;
    }
    num / den
}

/// Relative closeness with a caller-supplied scale floor:
/// |a−b| ≤ tol·max(|a|, |b|, floor).
#[inline]
pub fn rel_close(a: f64, b: f64, tol: f64, floor: f64) -> bool {
    abs(a - b) <= tol * abs(a).max(abs(b)).max(floor)
}

/// One-sided version: a ≤ b up to the same scaled slack.
#[inline]
pub fn le_close(a: f64, b: f64, tol: f64, floor: f64) -> bool {
    a <= b + tol * abs(a).max(abs(b)).max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(4, 1), 4.0);
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(5, 3), 10.0);
    }

    #[test]
    fn powi_matches_pow() {
        assert_eq!(powi(2.0, 10), 1024.0);
        assert!(rel_close(powi(1.3, 5), pow(1.3, 5.0), 1e-14, 1.0));
    }
}
