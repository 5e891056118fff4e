use num_bigint::BigInt;

use crate::exact_math::Rational;

const LCG_MUL: u64 = 6364136223846793005;
const LCG_INC: u64 = 1442695040888963407;

/// 64-bit LCG, `state ← 6364136223846793005·state + 1442695040888963407 mod 2⁶⁴`.
///
/// Every draw consumes exactly one step and uses the high 32 bits of the new
/// state, mapped onto `[0, bound)` by `(hi · bound) >> 32`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzSource {
    state: u64,
}

impl FuzzSource {
    pub fn new(seed: u64) -> Self {
        FuzzSource { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_INC);
        self.state
    }

    /// A value in `[0, bound)`; `bound` must be in `1..=2³²`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!((1..=1 << 32).contains(&bound), "bound {bound} out of range");
        ((self.next_u64() >> 32) * bound) >> 32
    }

    /// A value in `[lo, hi]`.
    pub fn in_range(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }

    /// Numerator from `[−num_bound, num_bound] \ {0}`, denominator from
    /// `[1, den_bound]`, reduced. Two generator steps.
    pub fn fuzz_rational(&mut self, num_bound: u64, den_bound: u64) -> Rational {
        assert!(num_bound >= 1 && den_bound >= 1);
        let idx = self.below(2 * num_bound) as i64;
        let nb = num_bound as i64;
        let num = if idx < nb { idx - nb } else { idx - nb + 1 };
        let den = 1 + self.below(den_bound);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A rational `num/den` in `[0, 1]` with `den ∈ [1, den_bound]`.
    pub fn fuzz_unit_rational(&mut self, den_bound: u64) -> Rational {
        let den = self.in_range(1, den_bound);
        let num = self.in_range(0, den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}
