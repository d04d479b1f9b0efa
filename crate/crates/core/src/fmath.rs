//! Float helpers that work without `std`.
//!
//! The handful of float operations the models need (`sqrt`, integer powers,
//! `abs`) are implemented here directly so the crate has a single code path
//! under both `std` and `no_std` builds.

/// `x^n` by binary exponentiation.
pub fn powi(x: f64, n: i32) -> f64 {
    if n < 0 {
        return 1.0 / powi(x, -n);
    }
    let mut base = x;
    let mut exp = n as u32;
    let mut acc = 1.0;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// Square root via Newton iteration from a bit-level seed.
pub fn sqrt(x: f64) -> f64 {
    if x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    // Exponent-halving seed, then Newton converges quadratically.
    let mut r = f64::from_bits((x.to_bits() >> 1) + 0x1ff8_0000_0000_0000);
    for _ in 0..5 {
        r = 0.5 * (r + x / r);
    }
    // One round through the reciprocal form to settle the last bit.
    let r = 0.5 * (r + x / r);
    // Snap to the exact root when x is a perfect square of a representable
    // integer; callers compare against integer-derived quantities.
    let rounded = round(r);
    if rounded * rounded == x {
        rounded
    } else {
        r
    }
}

/// Round-half-away-from-zero, matching `f64::round`.
pub fn round(x: f64) -> f64 {
    let t = trunc(x);
    let frac = x - t;
    if frac >= 0.5 {
        t + 1.0
    } else if frac <= -0.5 {
        t - 1.0
    } else {
        t
    }
}

pub fn trunc(x: f64) -> f64 {
    let i = x as i64; // saturating, fine for the magnitudes used here
    i as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_std() {
        for &x in &[0.5, 1.0, 1.5, 3.1e-3, 7.5e-5, 12.0] {
            for n in 0..12 {
                let got = powi(x, n);
                let want = x.powi(n);
                assert!(
                    (got - want).abs() <= want.abs() * 1e-14,
                    "{x}^{n}: {got} vs {want}"
                );
            }
        }
        assert_eq!(powi(2.0, -3), 0.125);
    }

    #[test]
    fn sqrt_matches_std() {
        for &x in &[0.0, 1.0, 2.0, 36.0, 144.0, 6.55e-7, 1e12, 0.3] {
            let got = sqrt(x);
            let want = x.sqrt();
            assert!(
                (got - want).abs() <= want * 1e-15,
                "sqrt({x}): {got} vs {want}"
            );
        }
        // Perfect squares come back exact.
        for i in 0..200u32 {
            let sq = (i * i) as f64;
            assert_eq!(sqrt(sq), i as f64);
        }
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(round(2.5), 3.0);
        assert_eq!(round(2.4), 2.0);
        assert_eq!(round(-2.5), -3.0);
        assert_eq!(trunc(-2.7), -2.0);
    }
}
