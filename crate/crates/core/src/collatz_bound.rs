//! The generalized `3x+1` map and the large-deviation tail sum that bounds
//! how often its orbits can fail to descend.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_math::{binomial, int, ln_rational, rational_pow, Rational};
use crate::identities::{comtet1_sides, SidePair};

/// `ℓ ↦ ℓ/d` when `d | ℓ`, else `ℓ ↦ (nℓ − φ(nℓ))/d`, where `φ` picks the
/// representative of `nℓ` in a fixed complete residue system modulo `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenCollatzConfig {
    mult: u64,
    div: u64,
    residues: Vec<i64>,
}

impl GenCollatzConfig {
    pub fn new(mult: u64, div: u64, residues: Vec<i64>) -> Result<Self> {
        if mult < 1 {
            return Err(Error::invalid("multiplier must be ≥ 1"));
        }
        if div < 2 {
            return Err(Error::invalid("divisor must be ≥ 2"));
        }
        if mult.gcd(&div) != 1 {
            return Err(Error::invalid(format!("gcd({div}, {mult}) ≠ 1")));
        }
        if residues.len() as u64 != div {
            return Err(Error::invalid(format!(
                "need {div} residues, got {}",
                residues.len()
            )));
        }
        let mut seen = vec![false; div as usize];
        for &r in &residues {
            let class = r.rem_euclid(div as i64) as usize;
            if std::mem::replace(&mut seen[class], true) {
                return Err(Error::invalid(format!("residue {r} repeats a class modulo {div}")));
            }
        }
        Ok(GenCollatzConfig { mult, div, residues })
    }

    /// `(3, 2, {0, −1})`: odd `ℓ` maps to `(3ℓ+1)/2`.
    pub fn classical() -> Self {
        GenCollatzConfig { mult: 3, div: 2, residues: vec![0, -1] }
    }

    pub fn mult(&self) -> u64 {
        self.mult
    }

    pub fn div(&self) -> u64 {
        self.div
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    /// The residue congruent to `value`.
    pub fn phi(&self, value: &BigInt) -> i64 {
        let d = BigInt::from(self.div);
        let class = value.mod_floor(&d);
        *self
            .residues
            .iter()
            .find(|&&r| BigInt::from(r).mod_floor(&d) == class)
            .expect("residues cover every class")
    }
}

/// One application of the map. Defined on all integers; orbits are only
/// started from positive values.
pub fn g_step(ell: &BigInt, cfg: &GenCollatzConfig) -> Result<BigInt> {
    let d = BigInt::from(cfg.div);
    if ell.is_multiple_of(&d) {
        return Ok(ell / &d);
    }
    let image = ell * cfg.mult;
    let numer = &image - cfg.phi(&image);
    let (q, r) = numer.div_rem(&d);
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!(
            "{numer} not divisible by {d} for ℓ = {ell}"
        )));
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    CycleFound,
    MaxStepsReached,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    /// The start value followed by each image, including the first repeat
    /// when a cycle closes.
    pub steps: Vec<BigInt>,
    pub terminated: Termination,
    /// The cycle in visiting order, starting at its first occurrence.
    pub cycle: Option<Vec<BigInt>>,
}

pub fn orbit(ell: &BigInt, cfg: &GenCollatzConfig, max_steps: u64) -> Result<OrbitResult> {
    if !ell.is_positive() {
        return Err(Error::invalid(format!("orbit start {ell} must be positive")));
    }
    if max_steps < 1 {
        return Err(Error::invalid("max_steps must be ≥ 1"));
    }
    let mut steps = vec![ell.clone()];
    let mut first_seen = HashMap::from([(ell.clone(), 0usize)]);
    for _ in 0..max_steps {
        let next = g_step(steps.last().expect("non-empty"), cfg)?;
        if let Some(&start) = first_seen.get(&next) {
            let cycle = steps[start..].to_vec();
            steps.push(next);
            return Ok(OrbitResult { steps, terminated: Termination::CycleFound, cycle: Some(cycle) });
        }
        first_seen.insert(next.clone(), steps.len());
        steps.push(next);
    }
    Ok(OrbitResult { steps, terminated: Termination::MaxStepsReached, cycle: None })
}

/// Parameters of `d^{−k} Σ_{|i − (d−1)k/d| > εk} C(k,i) (d−1)ⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSumQuery {
    k: u64,
    d: u64,
    eps: Rational,
}

impl TailSumQuery {
    pub fn new(k: u64, d: u64, eps: Rational) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("k must be ≥ 1"));
        }
        if d < 2 {
            return Err(Error::invalid("d must be ≥ 2"));
        }
        if eps <= Rational::zero() || eps >= Rational::one() {
            return Err(Error::invalid(format!("eps = {eps} is outside (0, 1)")));
        }
        Ok(TailSumQuery { k, d, eps })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }
}

/// Exact tail mass of `Binomial(k, (d−1)/d)` more than `εk` away from its
/// mean. The membership test is a strict exact-rational comparison.
pub fn tail_sum(q: &TailSumQuery) -> Rational {
    let k = int(q.k);
    let center = int(q.d - 1) * &k / int(q.d);
    let radius = &q.eps * &k;
    let weight = BigInt::from(q.d - 1);
    let mut power = BigInt::one();
    let mut acc = BigInt::zero();
    for i in 0..=q.k {
        if (int(i) - &center).abs() > radius {
            acc += binomial(q.k, i as i64) * &power;
        }
        power *= &weight;
    }
    Rational::new(acc, BigInt::from(q.d).pow(u32::try_from(q.k).expect("k fits in u32")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EtaEntry {
    pub k: u64,
    pub tail: Rational,
    /// `tail^{1/k}`; zero when the tail is empty.
    pub root: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EtaProfile {
    pub entries: Vec<EtaEntry>,
}

impl EtaProfile {
    pub fn max_root(&self) -> f64 {
        self.entries.iter().map(|e| e.root).fold(0.0, f64::max)
    }
}

/// `k`-th roots of the exact tail sums; an empirical witness for `η`.
pub fn eta_profile(d: u64, eps: &Rational, k_values: &[u64]) -> Result<EtaProfile> {
    let entries = k_values
        .iter()
        .map(|&k| {
            let tail = tail_sum(&TailSumQuery::new(k, d, eps.clone())?);
            let root = ln_rational(&tail).map_or(0.0, |ln| (ln / k as f64).exp());
            Ok(EtaEntry { k, tail, root })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EtaProfile { entries })
}

/// `Σ_{i≤m} C(k,i)(d−1)ⁱ` against `(k−m) C(k,m) ∫_{d−1}^{d} t^m (d−t)^{k−m−1} dt`.
pub fn partial_sum_sides(k: u64, m: u64, d: u64) -> Result<SidePair<Rational>> {
    if m >= k {
        return Err(Error::invalid(format!("partial sum needs m < k, got k={k} m={m}")));
    }
    if d < 2 {
        return Err(Error::invalid("d must be ≥ 2"));
    }
    let base = int(d - 1);
    let lhs = (0..=m).fold(Rational::zero(), |acc, i| {
        acc + int(binomial(k, i as i64)) * rational_pow(&base, i as u32)
    });
    let integrand = crate::exact_math::Polynomial::linear(int(d), -Rational::one())
        .pow((k - m - 1) as u32)
        .shift_up(m as usize);
    let rhs = int(BigInt::from(k - m) * binomial(k, m as i64))
        * integrand.definite_integral(&base, &int(d));
    Ok(SidePair::new(lhs, rhs))
}

/// [`partial_sum_sides`] must coincide with the first Comtet identity at
/// `a = 1, b = d − 1`; returns `(partial_sum, comtet1)` sides for comparison.
pub fn partial_sum_vs_comtet1(
    k: u64,
    m: u64,
    d: u64,
) -> Result<(SidePair<Rational>, SidePair<Rational>)> {
    let ours = partial_sum_sides(k, m, d)?;
    let comtet = comtet1_sides(k, m, &Rational::one(), &int(d - 1))?;
    Ok((ours, comtet))
}
