//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! All matrix and state arithmetic in this crate happens over the field of
//! Gaussian rationals (complex numbers whose real and imaginary parts are
//! rational). `num` keeps rationals in lowest terms with a positive
//! denominator, so equality is plain structural equality and every result is
//! exact — no rounding, ever.

use num::complex::Complex;
use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms, denominator > 0.
pub type Rational = BigRational;

/// Complex number with rational real and imaginary parts.
pub type GaussianRational = Complex<Rational>;

/// Builds `num/den` exactly. Panics on a zero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rational denominator must be nonzero");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A real integer as a Gaussian rational.
pub fn int(n: i64) -> GaussianRational {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

/// A real fraction `num/den` as a Gaussian rational.
pub fn ratio(num: i64, den: i64) -> GaussianRational {
    Complex::new(rational(num, den), BigRational::zero())
}

/// A purely imaginary integer multiple of `i`.
pub fn imag(n: i64) -> GaussianRational {
    Complex::new(BigRational::zero(), BigRational::from_integer(BigInt::from(n)))
}

/// `re_num/re_den + (im_num/im_den) i`.
pub fn complex(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
    Complex::new(rational(re_num, re_den), rational(im_num, im_den))
}

pub fn zero() -> GaussianRational {
    GaussianRational::zero()
}

pub fn one() -> GaussianRational {
    int(1)
}

/// Error produced when a `num/den` string cannot be read back.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal: {0}")]
    BadInteger(String),
    #[error("rational denominator is zero")]
    ZeroDenominator,
}

/// Canonical `num/den` form, denominator always written out (e.g. `-3/2`, `0/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` (or a bare integer) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let parse = |t: &str| {
        t.trim().parse::<BigInt>().map_err(|_| ParseRationalError::BadInteger(t.trim().to_string()))
    };
    let num = parse(num)?;
    let den = parse(den)?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

/// The four integer components `[re_num, re_den, im_num, im_den]` as decimal
/// strings — the lossless interchange form for states.
pub fn gaussian_decimal_parts(z: &GaussianRational) -> [String; 4] {
    [
        z.re.numer().to_string(),
        z.re.denom().to_string(),
        z.im.numer().to_string(),
        z.im.denom().to_string(),
    ]
}

/// The four integer components as `i64`s, when they fit.
pub fn gaussian_i64_parts(z: &GaussianRational) -> Option<[i64; 4]> {
    use num::ToPrimitive;
    Some([
        z.re.numer().to_i64()?,
        z.re.denom().to_i64()?,
        z.im.numer().to_i64()?,
        z.im.denom().to_i64()?,
    ])
}

/// Human-readable form of a Gaussian rational, e.g. `1/2-3/4i`; pure reals
/// drop the imaginary part.
pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im_abs = format_rational(&z.im.clone().abs());
    let sign = if z.im < BigRational::zero() { '-' } else { '+' };
    format!("{}{}{}i", format_rational(&z.re), sign, im_abs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals_reduce_to_lowest_terms() {
        assert_eq!(rational(2, 4), rational(1, 2));
        assert_eq!(rational(1, -2), rational(-1, 2));
        assert_eq!(rational(-3, -6), rational(1, 2));
        assert!(rational(1, -2).denom() > &BigInt::from(0));
    }

    #[test]
    fn field_ops_are_exact() {
        // (1/3 + 1/6) * 2 = 1, with no representation drift.
        let sum = (ratio(1, 3) + ratio(1, 6)) * int(2);
        assert_eq!(sum, one());
        // i * i = -1.
        assert_eq!(imag(1) * imag(1), int(-1));
        // Conjugation is an involution and fixes reals.
        let z = complex(3, 4, -5, 7);
        assert_eq!(z.conj().conj(), z);
        assert_eq!(int(9).conj(), int(9));
    }

    #[test]
    fn formatting_is_canonical() {
        assert_eq!(format_rational(&rational(2, 4)), "1/2");
        assert_eq!(format_rational(&rational(0, 5)), "0/1");
        assert_eq!(format_rational(&rational(3, -2)), "-3/2");
        assert_eq!(format_gaussian(&int(2)), "2/1");
        assert_eq!(format_gaussian(&complex(1, 2, -3, 4)), "1/2-3/4i");
        assert_eq!(format_gaussian(&imag(1)), "0/1+1/1i");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator));
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert!(matches!(parse_rational("x/2"), Err(ParseRationalError::BadInteger(_))));
        assert!(matches!(parse_rational("1.5"), Err(ParseRationalError::BadInteger(_))));
    }

    proptest! {
        // Round-tripping through the string form reproduces the value bit-for-bit.
        #[test]
        fn rational_string_round_trip(n in -1000i64..1000, d in 1i64..100) {
            let r = rational(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }

        // Arithmetic results round-trip too: serialize after computing.
        #[test]
        fn computed_values_round_trip(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let x = rational(a, b) * rational(c, d) + rational(a, d);
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }

        #[test]
        fn conjugation_distributes_over_products(
            a in -20i64..20, b in 1i64..10, c in -20i64..20, d in 1i64..10,
        ) {
            let z = complex(a, b, c, d);
            let w = complex(c, d, a, b);
            prop_assert_eq!((z.clone() * w.clone()).conj(), z.conj() * w.conj());
        }
    }
}
