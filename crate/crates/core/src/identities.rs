//! Binomial-sum / integral identities, each side built along its own route.
//!
//! Sums are accumulated by direct summation in ascending index order;
//! the other side goes through [`Polynomial`] construction, evaluation or
//! exact integration. The two routes share only [`binomial`] and the
//! rational primitives.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, int, rat, rational_pow, Polynomial, Rational};

/// Both sides of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidePair<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq> SidePair<T> {
    pub fn new(lhs: T, rhs: T) -> Self {
        SidePair { lhs, rhs }
    }

    /// Exact comparison; both sides are always kept normalized.
    pub fn is_equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumFamily {
    /// `Σ_{j≤n} C(3n−j, 2n) xʲ`
    A,
    /// `Σ_{j≤n} C(3n+1, n−j) xʲ`
    B,
    /// `Σ_{j≤2n} C(3n−j, n) xʲ`
    C,
    /// `Σ_{j≤2n} C(3n+1, n+1+j) xʲ`
    D,
}

impl SumFamily {
    pub const ALL: [SumFamily; 4] = [SumFamily::A, SumFamily::B, SumFamily::C, SumFamily::D];
}

impl fmt::Display for SumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            SumFamily::A => "A",
            SumFamily::B => "B",
            SumFamily::C => "C",
            SumFamily::D => "D",
        };
        f.write_str(tag)
    }
}

fn to_u32(n: u64) -> u32 {
    u32::try_from(n).expect("exponent fits in u32")
}

/// `1 − x`
fn one_minus_x() -> Polynomial {
    Polynomial::from_ints(&[1, -1])
}

/// `[base⁰, base¹, …, base^max]`
fn powers(base: &Polynomial, max: u64) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(Polynomial::one());
    for i in 1..=max as usize {
        let next = &out[i - 1] * base;
        out.push(next);
    }
    out
}

fn big(v: u64) -> i64 {
    i64::try_from(v).expect("index fits in i64")
}

pub fn family_polynomial(fam: SumFamily, n: u64) -> Polynomial {
    let n3 = 3 * n;
    let coeffs = match fam {
        SumFamily::A => (0..=n).map(|j| binomial(n3 - j, big(2 * n))).collect::<Vec<_>>(),
        SumFamily::B => (0..=n).map(|j| binomial(n3 + 1, big(n) - big(j))).collect(),
        SumFamily::C => (0..=2 * n).map(|j| binomial(n3 - j, big(n))).collect(),
        SumFamily::D => (0..=2 * n).map(|j| binomial(n3 + 1, big(n + 1 + j))).collect(),
    };
    Polynomial::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
}

/// The four equal quantities `Aₙ(3), Bₙ(2), Dₙ(−4), Cₙ(−3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuehrChain {
    pub n: u64,
    pub values: [BigInt; 4],
}

impl RuehrChain {
    pub fn all_equal(&self) -> bool {
        self.values.iter().all(|v| v == &self.values[0])
    }
}

fn weighted_sum(terms: impl Iterator<Item = (u64, BigInt)>, base: i64) -> BigInt {
    let base = BigInt::from(base);
    let mut weight = BigInt::one();
    let mut acc = BigInt::zero();
    for (expected, (j, c)) in terms.enumerate() {
        debug_assert_eq!(j, expected as u64);
        acc += &weight * c;
        weight *= &base;
    }
    acc
}

/// The four chain sums evaluated term by term in big integers.
pub fn ruehr_direct_sums(n: u64) -> [BigInt; 4] {
    let (ni, n3) = (big(n), 3 * n);
    [
        weighted_sum((0..=n).map(|j| (j, binomial(n3 - j, 2 * ni))), 3),
        weighted_sum((0..=n).map(|j| (j, binomial(n3 + 1, ni - big(j)))), 2),
        weighted_sum((0..=2 * n).map(|j| (j, binomial(n3 + 1, ni + 1 + big(j)))), -4),
        weighted_sum((0..=2 * n).map(|j| (j, binomial(n3 - j, ni))), -3),
    ]
}

/// Evaluates the chain through the family polynomials and through direct
/// summation. Disagreement between those two routes for any component is
/// an [`Error::Inconsistency`]; disagreement between components is reported
/// through [`RuehrChain::all_equal`].
pub fn ruehr_chain(n: u64) -> Result<RuehrChain> {
    let direct = ruehr_direct_sums(n);
    let points = [
        (SumFamily::A, 3),
        (SumFamily::B, 2),
        (SumFamily::D, -4),
        (SumFamily::C, -3),
    ];
    for ((fam, x), d) in points.iter().zip(&direct) {
        let value = family_polynomial(*fam, n).eval(&int(*x));
        if !value.is_integer() || value.numer() != d {
            return Err(Error::Inconsistency(format!(
                "{fam}_{n}({x}): polynomial route gives {value}, summation gives {d}"
            )));
        }
    }
    Ok(RuehrChain { n, values: direct })
}

/// `Σ_{i≤k} C(n,i) a^{n−i} bⁱ` against
/// `(n−k) C(n,k) ∫_b^{a+b} tᵏ (a+b−t)^{n−k−1} dt`.
pub fn comtet1_sides(n: u64, k: u64, a: &Rational, b: &Rational) -> Result<SidePair<Rational>> {
    if k >= n {
        return Err(Error::invalid(format!("comtet1 needs k < n, got n={n} k={k}")));
    }
    let lhs = (0..=k).fold(Rational::zero(), |acc, i| {
        acc + int(binomial(n, big(i))) * rational_pow(a, to_u32(n - i)) * rational_pow(b, to_u32(i))
    });
    let top = a + b;
    let integrand = Polynomial::linear(top.clone(), -Rational::one())
        .pow(to_u32(n - k - 1))
        .shift_up(k as usize);
    let factor = int(BigInt::from(n - k) * binomial(n, big(k)));
    let rhs = factor * integrand.definite_integral(b, &top);
    Ok(SidePair::new(lhs, rhs))
}

/// `Σ_{m≤k≤n} C(k−1,m−1) x^m (1−x)^{k−m}` against `Σ_{m≤k≤n} C(n,k) xᵏ (1−x)^{n−k}`.
pub fn comtet2_sides(m: u64, n: u64) -> Result<SidePair<Polynomial>> {
    if m < 1 || m > n {
        return Err(Error::invalid(format!("comtet2 needs 1 ≤ m ≤ n, got m={m} n={n}")));
    }
    let y = powers(&one_minus_x(), n - m);
    let xm = Polynomial::monomial(Rational::one(), m as usize);
    let lhs: Polynomial = (m..=n)
        .map(|k| (&xm * &y[(k - m) as usize]).scale(&int(binomial(k - 1, big(m - 1)))))
        .sum();
    let y = powers(&one_minus_x(), n - m);
    let rhs: Polynomial = (m..=n)
        .map(|k| y[(n - k) as usize].shift_up(k as usize).scale(&int(binomial(n, big(k)))))
        .sum();
    Ok(SidePair::new(lhs, rhs))
}

/// The two auxiliary sums of the reindexed second identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofHelper {
    /// `f(m,N) = Σ_{j≤N} C(m−1+j, m−1) (1−x)ʲ`
    F,
    /// `g(m,N) = Σ_{j≤N} C(N+m, j) x^{N−j} (1−x)ʲ`
    G,
}

pub fn proof_helper(kind: ProofHelper, m: u64, big_n: u64) -> Result<Polynomial> {
    if m < 1 {
        return Err(Error::invalid("proof helpers need m ≥ 1"));
    }
    let y = powers(&one_minus_x(), big_n);
    let out = match kind {
        ProofHelper::F => (0..=big_n)
            .map(|j| y[j as usize].scale(&int(binomial(m - 1 + j, big(m - 1)))))
            .sum(),
        ProofHelper::G => (0..=big_n)
            .map(|j| {
                y[j as usize]
                    .shift_up((big_n - j) as usize)
                    .scale(&int(binomial(big_n + m, big(j))))
            })
            .sum(),
    };
    Ok(out)
}

/// `f(m,N)` against `g(m,N)`.
pub fn comtet3_sides(m: u64, big_n: u64) -> Result<SidePair<Polynomial>> {
    Ok(SidePair::new(
        proof_helper(ProofHelper::F, m, big_n)?,
        proof_helper(ProofHelper::G, m, big_n)?,
    ))
}

fn need_positive_n(big_n: u64) -> Result<()> {
    if big_n == 0 {
        return Err(Error::invalid("recurrence needs N ≥ 1"));
    }
    Ok(())
}

/// `f(j+1,N)` against `(1−x) f(j+1,N−1) + f(j,N)`.
pub fn f_recurrence_sides(j: u64, big_n: u64) -> Result<SidePair<Polynomial>> {
    need_positive_n(big_n)?;
    use ProofHelper::F;
    let lhs = proof_helper(F, j + 1, big_n)?;
    let rhs = &one_minus_x() * &proof_helper(F, j + 1, big_n - 1)? + proof_helper(F, j, big_n)?;
    Ok(SidePair::new(lhs, rhs))
}

/// `g(j+1,N)` against `g(j,N) + (1−x) g(j+1,N−1)`.
pub fn g_recurrence_sides(j: u64, big_n: u64) -> Result<SidePair<Polynomial>> {
    need_positive_n(big_n)?;
    use ProofHelper::G;
    let lhs = proof_helper(G, j + 1, big_n)?;
    let rhs = proof_helper(G, j, big_n)? + &one_minus_x() * &proof_helper(G, j + 1, big_n - 1)?;
    Ok(SidePair::new(lhs, rhs))
}

/// `x · f(1,N)` against `1 − (1−x)^{N+1}`: the geometric closed form that
/// makes `f(1,N) = g(1,N)` the base case.
pub fn geometric_base_sides(big_n: u64) -> Result<SidePair<Polynomial>> {
    let lhs = proof_helper(ProofHelper::F, 1, big_n)?.shift_up(1);
    let rhs = &Polynomial::one() - &one_minus_x().pow(to_u32(big_n + 1));
    Ok(SidePair::new(lhs, rhs))
}

/// Difference of the telescoped `f` and `g` sums against `(1−x)` times the
/// same difference one level down in `N`.
pub fn telescoping_sides(m: u64, big_n: u64) -> Result<SidePair<Polynomial>> {
    need_positive_n(big_n)?;
    if m < 1 {
        return Err(Error::invalid("telescoping needs m ≥ 1"));
    }
    use ProofHelper::{F, G};
    let mut lhs = Polynomial::zero();
    let mut inner = Polynomial::zero();
    for j in 1..=m {
        lhs = lhs + (proof_helper(F, j + 1, big_n)? - proof_helper(F, j, big_n)?);
        lhs = lhs - (proof_helper(G, j + 1, big_n)? - proof_helper(G, j, big_n)?);
        inner = inner + (proof_helper(F, j + 1, big_n - 1)? - proof_helper(G, j + 1, big_n - 1)?);
    }
    Ok(SidePair::new(lhs, &one_minus_x() * &inner))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corollary1Variant {
    /// `a = 2, b = 1`, integral over `[0, 1]`.
    Pos,
    /// `a = 4, b = −1`, integral over `[−1/2, 3/2]`.
    Neg,
}

pub fn corollary1_sides(n: u64, variant: Corollary1Variant) -> SidePair<Rational> {
    let ni = big(n);
    let integrand = Polynomial::from_ints(&[3, -2]).pow(to_u32(n)).shift_up(2 * n as usize);
    let factor = int(BigInt::from(n + 1) * binomial(3 * n + 1, 2 * ni));
    match variant {
        Corollary1Variant::Pos => {
            let lhs = weighted_sum((0..=n).map(|j| (j, binomial(3 * n + 1, ni - big(j)))), 2);
            let rhs = factor * integrand.definite_integral(&Rational::zero(), &Rational::one());
            SidePair::new(int(lhs), rhs)
        }
        Corollary1Variant::Neg => {
            let lhs =
                weighted_sum((0..=2 * n).map(|j| (j, binomial(3 * n + 1, ni + 1 + big(j)))), -4);
            let rhs = factor * rat(1, 2) * integrand.definite_integral(&rat(-1, 2), &rat(3, 2));
            SidePair::new(int(lhs), rhs)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corollary2Variant {
    /// `Σ C(3n−j,2n)(1−x)^{n−j}` against `Σ C(3n+1,n−j) xʲ (1−x)^{n−j}`.
    First,
    /// `Σ C(3n−j,n)(1−x)^{2n−j}` against `Σ C(3n+1,n+1+k) xᵏ (1−x)^{2n−k}`.
    Second,
}

pub fn corollary2_sides(n: u64, variant: Corollary2Variant) -> SidePair<Polynomial> {
    let ni = big(n);
    let top = match variant {
        Corollary2Variant::First => n,
        Corollary2Variant::Second => 2 * n,
    };
    let y = powers(&one_minus_x(), top);
    let (lhs, rhs) = match variant {
        Corollary2Variant::First => (
            (0..=n)
                .map(|j| y[(n - j) as usize].scale(&int(binomial(3 * n - j, 2 * ni))))
                .sum(),
            (0..=n)
                .map(|j| {
                    y[(n - j) as usize]
                        .shift_up(j as usize)
                        .scale(&int(binomial(3 * n + 1, ni - big(j))))
                })
                .sum(),
        ),
        Corollary2Variant::Second => (
            (0..=2 * n)
                .map(|j| y[(2 * n - j) as usize].scale(&int(binomial(3 * n - j, ni))))
                .sum(),
            (0..=2 * n)
                .map(|k| {
                    y[(2 * n - k) as usize]
                        .shift_up(k as usize)
                        .scale(&int(binomial(3 * n + 1, ni + 1 + big(k))))
                })
                .sum(),
        ),
    };
    SidePair::new(lhs, rhs)
}

/// Specializes a second-corollary identity to the point that produces a
/// chain value: `x = 2/3` scaled by `3ⁿ` for the first variant (giving
/// `Aₙ(3)`), `x = 4/3` scaled by `3²ⁿ` for the second (giving `Cₙ(−3)`).
/// The rhs is the direct chain sum.
pub fn corollary2_specialization(n: u64, variant: Corollary2Variant) -> SidePair<Rational> {
    let pair = corollary2_sides(n, variant);
    let direct = ruehr_direct_sums(n);
    let (x, scale, target) = match variant {
        Corollary2Variant::First => (rat(2, 3), rational_pow(&int(3), to_u32(n)), &direct[0]),
        Corollary2Variant::Second => (rat(4, 3), rational_pow(&int(3), to_u32(2 * n)), &direct[3]),
    };
    SidePair::new(pair.lhs.eval(&x) * scale, int(target.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyShift {
    /// `Aₙ(x+1) = Bₙ(x)`
    AToB,
    /// `Cₙ(x+1) = Dₙ(x)`
    CToD,
}

pub fn family_shift_sides(shift: FamilyShift, n: u64) -> SidePair<Polynomial> {
    let (from, to) = match shift {
        FamilyShift::AToB => (SumFamily::A, SumFamily::B),
        FamilyShift::CToD => (SumFamily::C, SumFamily::D),
    };
    let x_plus_one = Polynomial::from_ints(&[1, 1]);
    SidePair::new(family_polynomial(from, n).compose(&x_plus_one), family_polynomial(to, n))
}

/// `3x² − 2x³`
pub fn kimura_ruehr_kernel() -> Polynomial {
    Polynomial::from_ints(&[0, 0, 3, -2])
}

/// `∫_{−1/2}^{3/2} (3x²−2x³)ⁿ dx` against `2 ∫_0^1 (3x²−2x³)ⁿ dx`.
pub fn kimura_ruehr_moments(n: u64) -> SidePair<Rational> {
    let p = kimura_ruehr_kernel().pow(to_u32(n));
    let lhs = p.definite_integral(&rat(-1, 2), &rat(3, 2));
    let rhs = int(2) * p.definite_integral(&Rational::zero(), &Rational::one());
    SidePair::new(lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Polynomial {
        Polynomial::from_ints(v)
    }

    fn bigs(v: [i64; 4]) -> [BigInt; 4] {
        v.map(BigInt::from)
    }

    #[test]
    fn family_examples() {
        assert_eq!(family_polynomial(SumFamily::A, 1), ints(&[3, 1]));
        assert_eq!(family_polynomial(SumFamily::B, 1), ints(&[4, 1]));
        assert_eq!(family_polynomial(SumFamily::C, 1), ints(&[3, 2, 1]));
        assert_eq!(family_polynomial(SumFamily::D, 1), ints(&[6, 4, 1]));
        for fam in SumFamily::ALL {
            assert_eq!(family_polynomial(fam, 0), ints(&[1]), "{fam}");
        }
        assert_eq!(family_polynomial(SumFamily::A, 7).degree(), 7);
        assert_eq!(family_polynomial(SumFamily::D, 7).degree(), 14);
    }

    #[test]
    fn chain_examples() {
        assert_eq!(ruehr_chain(0).unwrap().values, bigs([1, 1, 1, 1]));
        assert_eq!(ruehr_chain(1).unwrap().values, bigs([6, 6, 6, 6]));
        assert_eq!(ruehr_chain(2).unwrap().values, bigs([39, 39, 39, 39]));
        assert!(ruehr_chain(30).unwrap().all_equal());
    }

    #[test]
    fn comtet1_examples() {
        let p = comtet1_sides(2, 1, &rat(2, 1), &rat(1, 1)).unwrap();
        assert_eq!((p.lhs, p.rhs), (rat(8, 1), rat(8, 1)));
        let p = comtet1_sides(2, 1, &rat(1, 1), &rat(1, 1)).unwrap();
        assert_eq!((p.lhs, p.rhs), (rat(3, 1), rat(3, 1)));
        for n in 1..8u64 {
            let a = rat(-5, 3);
            let p = comtet1_sides(n, 0, &a, &rat(7, 2)).unwrap();
            assert_eq!(p.lhs, rational_pow(&a, n as u32));
            assert!(p.is_equal());
        }
        assert!(matches!(comtet1_sides(3, 3, &rat(1, 1), &rat(1, 1)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn comtet2_examples() {
        let p = comtet2_sides(1, 2).unwrap();
        assert_eq!(p.lhs, ints(&[0, 2, -1]));
        assert_eq!(p.rhs, ints(&[0, 2, -1]));
        let p = comtet2_sides(1, 1).unwrap();
        assert_eq!((p.lhs, p.rhs), (ints(&[0, 1]), ints(&[0, 1])));
        for m in 1..6 {
            let p = comtet2_sides(m, m).unwrap();
            let xm = Polynomial::monomial(Rational::one(), m as usize);
            assert_eq!((p.lhs, p.rhs), (xm.clone(), xm));
        }
        assert!(comtet2_sides(0, 3).is_err());
        assert!(comtet2_sides(4, 3).is_err());
    }

    #[test]
    fn comtet3_examples() {
        let p = comtet3_sides(1, 1).unwrap();
        assert_eq!((p.lhs, p.rhs), (ints(&[2, -1]), ints(&[2, -1])));
        for m in 1..6 {
            let p = comtet3_sides(m, 0).unwrap();
            assert_eq!((p.lhs, p.rhs), (ints(&[1]), ints(&[1])));
        }
        let p = comtet3_sides(2, 1).unwrap();
        assert!(p.is_equal());
        assert_eq!(p.lhs.eval(&Rational::one()), Rational::one());
    }

    #[test]
    fn helper_examples() {
        assert_eq!(proof_helper(ProofHelper::F, 1, 1).unwrap(), ints(&[2, -1]));
        assert_eq!(proof_helper(ProofHelper::F, 1, 0).unwrap(), ints(&[1]));
        for n in 0..25 {
            assert_eq!(
                proof_helper(ProofHelper::F, 1, n).unwrap(),
                proof_helper(ProofHelper::G, 1, n).unwrap()
            );
            assert!(geometric_base_sides(n).unwrap().is_equal());
        }
        assert!(proof_helper(ProofHelper::G, 0, 3).is_err());
        assert!(f_recurrence_sides(1, 0).is_err());
        assert!(telescoping_sides(0, 2).is_err());
    }

    #[test]
    fn recurrences_and_telescoping() {
        for j in 1..=8 {
            for n in 1..=8 {
                assert!(f_recurrence_sides(j, n).unwrap().is_equal(), "f j={j} N={n}");
                assert!(g_recurrence_sides(j, n).unwrap().is_equal(), "g j={j} N={n}");
            }
        }
        for m in 1..=5 {
            for n in 1..=5 {
                assert!(telescoping_sides(m, n).unwrap().is_equal(), "m={m} N={n}");
            }
        }
    }

    #[test]
    fn corollary1_examples() {
        let p = corollary1_sides(1, Corollary1Variant::Pos);
        assert_eq!((p.lhs, p.rhs), (rat(6, 1), rat(6, 1)));
        let p = corollary1_sides(1, Corollary1Variant::Neg);
        assert_eq!((p.lhs, p.rhs), (rat(6, 1), rat(6, 1)));
        let p = corollary1_sides(0, Corollary1Variant::Pos);
        assert_eq!((p.lhs, p.rhs), (rat(1, 1), rat(1, 1)));
        // (3x²−2x³) integrates to 1/2 on [0,1] and to 1 on [−1/2, 3/2].
        assert_eq!(
            ints(&[3, -2]).shift_up(2).definite_integral(&Rational::zero(), &Rational::one()),
            rat(1, 2)
        );
    }

    #[test]
    fn corollary2_examples() {
        let p = corollary2_sides(1, Corollary2Variant::First);
        assert_eq!((p.lhs, p.rhs), (ints(&[4, -3]), ints(&[4, -3])));
        let p = corollary2_sides(0, Corollary2Variant::First);
        assert_eq!((p.lhs, p.rhs), (ints(&[1]), ints(&[1])));
        let p = corollary2_sides(1, Corollary2Variant::Second);
        assert!(p.is_equal());
        // Unscaled value at 4/3 is 2/3; times 3² it is C₁(−3) = 6.
        assert_eq!(p.lhs.eval(&rat(4, 3)), rat(2, 3));
        let s = corollary2_specialization(1, Corollary2Variant::Second);
        assert_eq!((s.lhs, s.rhs), (rat(6, 1), rat(6, 1)));
        let s = corollary2_specialization(2, Corollary2Variant::First);
        assert_eq!((s.lhs, s.rhs), (rat(39, 1), rat(39, 1)));
    }

    #[test]
    fn shifts() {
        for n in 0..10 {
            assert!(family_shift_sides(FamilyShift::AToB, n).is_equal());
            assert!(family_shift_sides(FamilyShift::CToD, n).is_equal());
        }
    }

    #[test]
    fn moment_examples() {
        let p = kimura_ruehr_moments(0);
        assert_eq!((p.lhs, p.rhs), (rat(2, 1), rat(2, 1)));
        let p = kimura_ruehr_moments(1);
        assert_eq!((p.lhs, p.rhs), (rat(1, 1), rat(1, 1)));
        let p = kimura_ruehr_moments(2);
        assert_eq!((p.lhs, p.rhs), (rat(26, 35), rat(26, 35)));
    }
}
