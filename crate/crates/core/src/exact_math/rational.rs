use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction.
///
/// `BigRational` keeps the denominator positive and the fraction reduced
/// after every operation, and its `Display`/`FromStr` use the `num/den`
/// form (`"26/35"`, or `"k"` when the denominator is one).
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Parses `"num/den"` or `"k"`. A zero denominator is an error.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Splits a positive rational into `(mantissa, exponent)` with
/// `value ≈ mantissa · 2^exponent` and `mantissa` in `[2^63, 2^65)`.
/// The truncation error is below 2⁻⁶², independent of the operand sizes.
fn scaled_parts(value: &Rational) -> (f64, i64) {
    let num = value.numer().abs();
    let den = value.denom().clone();
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if shift >= 0 {
        num / (den << shift as u64)
    } else {
        (num << (-shift) as u64) / den
    };
    let mantissa = q.to_f64().expect("mantissa below 2^66");
    (mantissa, shift)
}

/// Nearest double, with relative error below 10⁻¹² even when the numerator
/// and denominator are thousands of bits long.
pub fn to_f64(value: &Rational) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let (mantissa, mut exp) = scaled_parts(value);
    let mut out = mantissa;
    // powi saturates outside roughly ±1000, so apply the scale in chunks.
    while exp != 0 {
        let step = exp.clamp(-1000, 1000);
        out *= 2f64.powi(step as i32);
        exp -= step;
    }
    if value.is_negative() {
        -out
    } else {
        out
    }
}

/// Natural logarithm of a positive rational, without passing through an
/// `f64` that could underflow.
pub fn ln_rational(value: &Rational) -> Option<f64> {
    if !value.is_positive() {
        return None;
    }
    let (mantissa, exp) = scaled_parts(value);
    Some(mantissa.ln() + exp as f64 * std::f64::consts::LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalized_on_construction() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rat(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(rat(26, 35).to_string(), "26/35");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(rat(-1, 3).to_string(), "-1/3");
        assert_eq!(parse_rational("26/35").unwrap(), rat(26, 35));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let b = rat(-3, 2);
        let mut acc = Rational::one();
        for e in 0..20 {
            assert_eq!(rational_pow(&b, e), acc);
            acc *= &b;
        }
    }

    #[test]
    fn float_conversion_of_huge_operands() {
        // (2^3000 + 1) / (3 * 2^3000) is 1/3 to far better than double precision.
        let big = BigInt::one() << 3000u32;
        let r = Rational::new(&big + 1, big * 3);
        assert!((to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 1200u32);
        let ln = ln_rational(&tiny).unwrap();
        assert!((ln + 1200.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(to_f64(&rat(-5, 4)), -1.25);
        assert_eq!(to_f64(&Rational::zero()), 0.0);
        assert!(ln_rational(&Rational::zero()).is_none());
    }

    proptest! {
        #[test]
        fn add_then_subtract_round_trips(
            an in -1000i64..1000, ad in 1i64..1000,
            bn in -1000i64..1000, bd in 1i64..1000,
        ) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let back = (&a + &b) - &b;
            prop_assert_eq!(&back, &a);
            prop_assert!(back.denom().is_positive());
        }

        #[test]
        fn float_relative_error(n in 1i64..i64::MAX, d in 1i64..i64::MAX) {
            let r = rat(n, d);
            let exact = n as f64 / d as f64;
            prop_assert!(((to_f64(&r) - exact) / exact).abs() < 1e-12);
        }

        #[test]
        fn display_round_trips(n in any::<i64>(), d in 1i64..i64::MAX) {
            let r = rat(n, d);
            prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
        }
    }
}
