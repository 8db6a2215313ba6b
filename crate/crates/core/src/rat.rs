//! Arbitrary-precision rational helpers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used everywhere an identity must vanish exactly.
pub type Rat = BigRational;

/// `n/d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rat`].
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n!` as a [`BigInt`].
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Rising factorial `a (a+1) ... (a+k-1)`, with the empty product equal to 1.
pub fn rising(a: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rat::one();
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a [`BigInt`]; 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `base^exp` for rationals with signed integer exponent.
pub fn pow(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num::pow::pow(base.clone(), exp as usize)
    } else {
        num::pow::pow(base.clone(), (-exp) as usize).recip()
    }
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// `r` as `u32` when it is a small nonnegative integer.
pub fn to_u32(r: &Rat) -> Option<u32> {
    if !is_integer(r) || r.is_negative() {
        return None;
    }
    r.numer().to_u32()
}

/// Nearest `f64` to an exact rational; accurate enough for reporting and for
/// seeding floating-point comparisons.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of leading digits for huge operands.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn rising_matches_factorial() {
        // (1)_k = k!
        for k in 0..8u64 {
            assert_eq!(rising(&rint(1), k), Rat::from_integer(factorial(k)));
        }
    }

    #[test]
    fn binomial_row() {
        let row: Vec<_> = (0..=4).map(|k| binomial(4, k)).collect();
        let want: Vec<_> = [1, 4, 6, 4, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(row, want);
    }

    #[test]
    fn pow_negative_exponent() {
        assert_eq!(pow(&rat(2, 3), -2), rat(9, 4));
    }
}
