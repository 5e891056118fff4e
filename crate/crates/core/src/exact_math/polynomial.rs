use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::rational::{int, parse_rational, Rational};
use crate::error::Error;

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree. The last stored coefficient is never zero; the zero polynomial
/// has no coefficients and degree −1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · x^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// `a + b·x`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut sq = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// `self(inner(x))`, by Horner's scheme over polynomials.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(i as u64 + 1));
        }
        Self::from_coeffs(coeffs)
    }

    /// `∫_lo^hi self(t) dt`, exact. `lo > hi` flips the sign.
    pub fn definite_integral(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (acc, c) in coeffs.iter_mut().zip(&short.coeffs) {
            *acc += c;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

/// JSON array of rational strings, ascending degree: `["1","0","-1/2"]`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&serde_json::to_string(&strs).map_err(|_| fmt::Error)?)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let strs: Vec<String> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial {s:?}: {e}")))?;
        let coeffs = strs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::rat;
    use proptest::prelude::*;

    fn kernel() -> Polynomial {
        Polynomial::from_ints(&[0, 0, 3, -2])
    }

    #[test]
    fn normalization() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(Polynomial::from_ints(&[0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), -1);
        let x = Polynomial::x();
        assert!((&x - &x).coeffs().is_empty());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(kernel().pow(0), Polynomial::from_ints(&[1]));
        assert_eq!(kernel().pow(2), Polynomial::from_ints(&[0, 0, 0, 0, 9, -12, 4]));
        assert_eq!(
            &Polynomial::from_ints(&[1, 1]) * &Polynomial::from_ints(&[1, -1]),
            Polynomial::from_ints(&[1, 0, -1])
        );
        assert_eq!(kernel().scale(&Rational::zero()), Polynomial::zero());
        assert_eq!(Polynomial::from_ints(&[1, 1]).shift_up(2), Polynomial::from_ints(&[0, 0, 1, 1]));
    }

    #[test]
    fn compose_examples() {
        let shift = Polynomial::from_ints(&[1, 1]);
        assert_eq!(Polynomial::from_ints(&[3, 1]).compose(&shift), Polynomial::from_ints(&[4, 1]));
        assert_eq!(Polynomial::from_ints(&[3, 2, 1]).compose(&shift), Polynomial::from_ints(&[6, 4, 1]));
        assert_eq!(Polynomial::from_ints(&[5]).compose(&kernel()), Polynomial::from_ints(&[5]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Polynomial::from_ints(&[3, 1]).eval(&rat(3, 1)), rat(6, 1));
        assert_eq!(Polynomial::from_ints(&[6, 4, 1]).eval(&rat(-4, 1)), rat(6, 1));
        assert_eq!(Polynomial::zero().eval(&rat(7, 1)), Rational::zero());
    }

    #[test]
    fn integral_examples() {
        let zero = Rational::zero();
        let one = Rational::one();
        assert_eq!(Polynomial::from_ints(&[0, 0, 1]).definite_integral(&zero, &one), rat(1, 3));
        assert_eq!(kernel().definite_integral(&rat(-1, 2), &rat(3, 2)), rat(1, 1));
        assert_eq!(Polynomial::from_ints(&[1]).definite_integral(&rat(1, 1), &rat(3, 1)), rat(2, 1));
        assert_eq!(Polynomial::from_ints(&[1]).definite_integral(&rat(3, 1), &rat(1, 1)), rat(-2, 1));
    }

    #[test]
    fn serialization() {
        let p = Polynomial::from_coeffs(vec![rat(1, 2), rat(0, 1), rat(-3, 1)]);
        assert_eq!(p.to_string(), r#"["1/2","0","-3"]"#);
        assert_eq!(p.to_string().parse::<Polynomial>().unwrap(), p);
        assert_eq!(Polynomial::zero().to_string(), "[]");
        assert_eq!(r#"["1","0"]"#.parse::<Polynomial>().unwrap(), Polynomial::one());
        assert!("[1,2]".parse::<Polynomial>().is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(small_rational(), 0..7).prop_map(Polynomial::from_coeffs)
    }

    proptest! {
        #[test]
        fn integral_is_additive_over_intervals(
            p in small_poly(), a in small_rational(), b in small_rational(), c in small_rational()
        ) {
            let whole = p.definite_integral(&a, &c);
            let split = p.definite_integral(&a, &b) + p.definite_integral(&b, &c);
            prop_assert_eq!(whole, split);
        }

        #[test]
        fn compose_commutes_with_eval(p in small_poly(), q in small_poly(), x in small_rational()) {
            prop_assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
        }

        #[test]
        fn results_stay_normalized(p in small_poly(), q in small_poly(), e in 0u32..4) {
            for r in [&p + &q, &p - &q, &p * &q, p.pow(e), p.compose(&q)] {
                prop_assert!(r.coeffs().last().is_none_or(|c| !c.is_zero()));
            }
        }

        #[test]
        fn text_round_trip(p in small_poly()) {
            prop_assert_eq!(p.to_string().parse::<Polynomial>().unwrap(), p);
        }
    }
}
