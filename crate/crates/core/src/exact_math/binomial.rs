use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)`, with the convention that it is zero for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    // acc = C(n - k + i, i) after step i; each division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Signed entry point for [`binomial`]; a negative upper index is rejected.
pub fn checked_binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::invalid(format!("binomial upper index {n} is negative")));
    }
    Ok(binomial(n as u64, k))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}
