//! Beta, incomplete beta and regularized beta at positive integer
//! parameters, as exact rationals, and the binomial / negative binomial
//! distribution identities they satisfy.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, factorial, int, rational_pow, Polynomial, Rational};
use crate::identities::SidePair;

/// Arguments of `B_p(x, y)` and `I_p(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaParams {
    p: Rational,
    x: u64,
    y: u64,
}

impl BetaParams {
    pub fn new(p: Rational, x: u64, y: u64) -> Result<Self> {
        check_shape(x, y)?;
        check_unit(&p)?;
        Ok(BetaParams { p, x, y })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }
}

fn check_shape(x: u64, y: u64) -> Result<()> {
    if x < 1 || y < 1 {
        return Err(Error::invalid(format!("beta parameters must be ≥ 1, got ({x}, {y})")));
    }
    Ok(())
}

fn check_unit(p: &Rational) -> Result<()> {
    if p < &Rational::zero() || p > &Rational::one() {
        return Err(Error::invalid(format!("p = {p} is outside [0, 1]")));
    }
    Ok(())
}

fn exp(v: u64) -> u32 {
    u32::try_from(v).expect("exponent fits in u32")
}

/// `t^{x−1} (1−t)^{y−1}`
fn beta_integrand(x: u64, y: u64) -> Polynomial {
    Polynomial::from_ints(&[1, -1]).pow(exp(y - 1)).shift_up((x - 1) as usize)
}

/// `B(x,y) = (x−1)!(y−1)!/(x+y−1)!`.
pub fn beta_exact(x: u64, y: u64) -> Result<Rational> {
    check_shape(x, y)?;
    Ok(Rational::new(factorial(x - 1) * factorial(y - 1), factorial(x + y - 1)))
}

/// `∫_0^1 t^{x−1}(1−t)^{y−1} dt` by exact polynomial integration; the
/// cross-check route for [`beta_exact`].
pub fn beta_by_integration(x: u64, y: u64) -> Result<Rational> {
    check_shape(x, y)?;
    Ok(beta_integrand(x, y).definite_integral(&Rational::zero(), &Rational::one()))
}

/// `B_p(x,y) = ∫_0^p t^{x−1}(1−t)^{y−1} dt`.
pub fn incomplete_beta(p: &Rational, x: u64, y: u64) -> Result<Rational> {
    let params = BetaParams::new(p.clone(), x, y)?;
    Ok(beta_integrand(params.x, params.y).definite_integral(&Rational::zero(), &params.p))
}

/// `I_p(x,y) = B_p(x,y) / B(x,y)`.
pub fn regularized_beta(p: &Rational, x: u64, y: u64) -> Result<Rational> {
    Ok(incomplete_beta(p, x, y)? / beta_exact(x, y)?)
}

/// `Σ_{s=a}^{n} C(n,s) pˢ (1−p)^{n−s}` against `I_p(a, n−a+1)`.
pub fn binom_tail_sides(n: u64, a: u64, p: &Rational) -> Result<SidePair<Rational>> {
    if a < 1 || a > n {
        return Err(Error::invalid(format!("binomial tail needs 1 ≤ a ≤ n, got a={a} n={n}")));
    }
    check_unit(p)?;
    let q = Rational::one() - p;
    let lhs = (a..=n).fold(Rational::zero(), |acc, s| {
        acc + int(binomial(n, s as i64)) * rational_pow(p, exp(s)) * rational_pow(&q, exp(n - s))
    });
    Ok(SidePair::new(lhs, regularized_beta(p, a, n - a + 1)?))
}

/// One negative binomial mass `C(r+s−1, s) pʳ (1−p)ˢ`: probability of `s`
/// failures before the `r`-th success.
fn negbinom_mass(r: u64, s: u64, p: &Rational, q: &Rational) -> Rational {
    int(binomial(r + s - 1, s as i64)) * rational_pow(p, exp(r)) * rational_pow(q, exp(s))
}

fn check_open_left(p: &Rational) -> Result<()> {
    if p <= &Rational::zero() || p > &Rational::one() {
        return Err(Error::invalid(format!("p = {p} is outside (0, 1]")));
    }
    Ok(())
}

/// `Σ_{s=0}^{k} C(r+s−1,s) pʳ (1−p)ˢ` against `I_p(r, k+1)`.
pub fn negbinom_cdf_sides(r: u64, k: u64, p: &Rational) -> Result<SidePair<Rational>> {
    if r < 1 {
        return Err(Error::invalid("negative binomial needs r ≥ 1"));
    }
    check_open_left(p)?;
    let q = Rational::one() - p;
    let lhs = (0..=k).fold(Rational::zero(), |acc, s| acc + negbinom_mass(r, s, p, &q));
    Ok(SidePair::new(lhs, regularized_beta(p, r, k + 1)?))
}

/// Partial tail `Σ_{s=a}^{M} C(r+s−1,s) pʳ (1−p)ˢ`.
pub fn negbinom_tail_partial(r: u64, a: u64, p: &Rational, upto: u64) -> Result<Rational> {
    if r < 1 || a < 1 {
        return Err(Error::invalid("negative binomial tail needs r ≥ 1 and a ≥ 1"));
    }
    if upto < a {
        return Err(Error::invalid(format!("upper limit {upto} below a = {a}")));
    }
    check_open_left(p)?;
    let q = Rational::one() - p;
    Ok((a..=upto).fold(Rational::zero(), |acc, s| acc + negbinom_mass(r, s, p, &q)))
}

/// Limit of [`negbinom_tail_partial`] as the upper limit grows:
/// `I_{1−p}(a, r) = 1 − I_p(r, a)`.
pub fn negbinom_tail_limit(r: u64, a: u64, p: &Rational) -> Result<Rational> {
    check_open_left(p)?;
    Ok(Rational::one() - regularized_beta(p, r, a)?)
}
