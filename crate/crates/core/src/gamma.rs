//! Exact products of Gamma values at rational arguments.
//!
//! Every normalization constant in the integral formulas is a finite product
//! `prod Gamma(a_i)^{e_i}` with rational `a_i > 0`. Within a class of
//! arguments sharing a fractional part, `Gamma(x+1) = x Gamma(x)` reduces the
//! product to a rational times a power of the class representative. Integer
//! classes reduce fully; the fractional part 1/2 leaves `Gamma(1/2)^k =
//! pi^{k/2}`. Anything else is reported instead of approximated.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{pow, rint, to_f64, Rat};

/// A formal product of Gamma values, `prod Gamma(arg)^power`.
#[derive(Clone, Debug, Default)]
pub struct GammaProduct {
    factors: Vec<(Rat, i64)>,
    rational: Option<Rat>,
}

impl GammaProduct {
    pub fn new() -> Self {
        GammaProduct { factors: Vec::new(), rational: Some(Rat::one()) }
    }

    /// Multiplies by `Gamma(arg)^power`. Arguments must be positive.
    pub fn mul_gamma(&mut self, arg: Rat, power: i64) {
        assert!(arg.is_positive(), "Gamma argument must be positive, got {arg}");
        self.factors.push((arg, power));
    }

    /// Multiplies by a plain rational factor.
    pub fn mul_rational(&mut self, r: Rat) {
        let cur = self.rational.take().unwrap_or_else(Rat::one);
        self.rational = Some(cur * r);
    }

    /// Product of two Gamma products.
    pub fn mul(&self, other: &GammaProduct) -> GammaProduct {
        let mut out = self.clone();
        for (a, p) in &other.factors {
            out.factors.push((a.clone(), *p));
        }
        if let Some(r) = &other.rational {
            out.mul_rational(r.clone());
        }
        out
    }

    /// Quotient `self / other`.
    pub fn div(&self, other: &GammaProduct) -> GammaProduct {
        let mut out = self.clone();
        for (a, p) in &other.factors {
            out.factors.push((a.clone(), -p));
        }
        if let Some(r) = &other.rational {
            out.mul_rational(r.recip());
        }
        out
    }

    /// Reduces the product to `rational * pi^(sqrt_pi_power / 2)`.
    pub fn reduce(&self) -> Result<SelbergConstant> {
        let mut rational = self.rational.clone().unwrap_or_else(Rat::one);
        // Group arguments by fractional part.
        let mut classes: BTreeMap<Rat, Vec<(Rat, i64)>> = BTreeMap::new();
        for (arg, power) in &self.factors {
            if *power == 0 {
                continue;
            }
            let frac = arg - arg.floor();
            classes.entry(frac).or_default().push((arg.clone(), *power));
        }
        let mut sqrt_pi_power: i64 = 0;
        for (frac, members) in classes {
            // Reduce every member to Gamma(base) with base = frac (or 1 for
            // integer arguments) via Gamma(x+1) = x Gamma(x).
            let base = if frac.is_zero() { Rat::one() } else { frac.clone() };
            let mut base_power: i64 = 0;
            for (arg, power) in members {
                let steps = (&arg - &base).to_integer();
                debug_assert!(steps >= BigInt::zero());
                let mut x = base.clone();
                let mut acc = Rat::one();
                let mut left = steps;
                while left > BigInt::zero() {
                    acc *= &x;
                    x += Rat::one();
                    left -= BigInt::one();
                }
                rational *= pow(&acc, power);
                base_power += power;
            }
            if base_power == 0 || base.is_one() {
                continue;
            }
            if base == crate::rat::rat(1, 2) {
                sqrt_pi_power += base_power;
            } else {
                return Err(Error::NonRationalGamma(format!(
                    "unreduced Gamma({base})^{base_power}"
                )));
            }
        }
        Ok(SelbergConstant { rational, sqrt_pi_power })
    }

    /// Reduces and requires a plain rational value.
    pub fn reduce_rational(&self) -> Result<Rat> {
        let c = self.reduce()?;
        if c.sqrt_pi_power != 0 {
            return Err(Error::NonRationalGamma(format!(
                "residual pi^({}/2) in constant",
                c.sqrt_pi_power
            )));
        }
        Ok(c.rational)
    }
}

/// An exact constant of the form `rational * pi^(k/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SelbergConstant {
    pub rational: Rat,
    pub sqrt_pi_power: i64,
}

impl SelbergConstant {
    pub fn one() -> Self {
        SelbergConstant { rational: Rat::one(), sqrt_pi_power: 0 }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        (self.sqrt_pi_power == 0).then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational) * std::f64::consts::PI.powf(self.sqrt_pi_power as f64 / 2.0)
    }
}

impl fmt::Display for SelbergConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_pi_power == 0 {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} * pi^({}/2)", self.rational, self.sqrt_pi_power)
        }
    }
}

/// The Grassmannian normalization
/// `c_{n,q,p}^(beta) = prod_{i=1}^p Gamma(i b + 1) Gamma(b(n-q-i+1)) Gamma(b(q-i+1))
///                    / (Gamma(b+1) Gamma(b(n-i+1)))`.
pub fn grassmannian_constant(beta: &Rat, n: &Rat, q: &Rat, p: u32) -> GammaProduct {
    let mut g = GammaProduct::new();
    for i in 1..=p as i64 {
        g.mul_gamma(rint(i) * beta + Rat::one(), 1);
        g.mul_gamma(beta * (n - q - rint(i) + Rat::one()), 1);
        g.mul_gamma(beta * (q - rint(i) + Rat::one()), 1);
        g.mul_gamma(beta + Rat::one(), -1);
        g.mul_gamma(beta * (n - rint(i) + Rat::one()), -1);
    }
    g
}

/// The Selberg value of `int_{[0,1]^p} |Delta|^{2 beta}
/// prod (1-x)^(a - beta(p-1) - 1) x^(b - beta(p-1) - 1) dx` (Kaneko at the
/// empty partition):
/// `prod_{i=1}^p Gamma(i b + 1) Gamma(a + b(1-i)) Gamma(b_ + b(1-i))
///  / (Gamma(b+1) Gamma(a + b_ + b(1-i)))`.
pub fn kaneko_empty_constant(beta: &Rat, a: &Rat, b: &Rat, p: u32) -> GammaProduct {
    let mut g = GammaProduct::new();
    for i in 1..=p as i64 {
        let shift = beta * rint(1 - i);
        g.mul_gamma(rint(i) * beta + Rat::one(), 1);
        g.mul_gamma(a + &shift, 1);
        g.mul_gamma(b + &shift, 1);
        g.mul_gamma(beta + Rat::one(), -1);
        g.mul_gamma(a + b + &shift, -1);
    }
    g
}

/// The unit-scale Laguerre normalization
/// `int_{[0,inf)^p} |Delta|^{2 beta} prod e^{-y} y^alpha dy
///  = prod_{j=0}^{p-1} Gamma(1 + beta(j+1)) Gamma(alpha + 1 + beta j) / Gamma(1 + beta)`.
/// A scale `e^{-b y}` contributes `b^{-p(alpha+1) - beta p(p-1)}`, which the
/// caller tracks separately (the exponent need not be an integer).
pub fn laguerre_full_constant(beta: &Rat, alpha: &Rat, p: u32) -> GammaProduct {
    let mut g = GammaProduct::new();
    for j in 0..p as i64 {
        g.mul_gamma(Rat::one() + beta * rint(j + 1), 1);
        g.mul_gamma(alpha + Rat::one() + beta * rint(j), 1);
        g.mul_gamma(Rat::one() + beta, -1);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn integer_gammas_reduce_to_factorials() {
        let mut g = GammaProduct::new();
        g.mul_gamma(rint(5), 1); // 4! = 24
        g.mul_gamma(rint(3), -1); // / 2! = 2
        let c = g.reduce().unwrap();
        assert_eq!(c.rational, rint(12));
        assert_eq!(c.sqrt_pi_power, 0);
    }

    #[test]
    fn half_integer_gammas_leave_sqrt_pi() {
        // Gamma(5/2) = (3/2)(1/2) sqrt(pi) = 3/4 sqrt(pi)
        let mut g = GammaProduct::new();
        g.mul_gamma(rat(5, 2), 1);
        let c = g.reduce().unwrap();
        assert_eq!(c.rational, rat(3, 4));
        assert_eq!(c.sqrt_pi_power, 1);
        let approx = c.to_f64();
        assert!((approx - 1.329_340_388_179_137).abs() < 1e-12);
    }

    #[test]
    fn sqrt_pi_cancels_in_ratios() {
        // Gamma(7/2) / Gamma(3/2) = (5/2)(3/2) = 15/4, rational.
        let mut num = GammaProduct::new();
        num.mul_gamma(rat(7, 2), 1);
        let mut den = GammaProduct::new();
        den.mul_gamma(rat(3, 2), 1);
        assert_eq!(num.div(&den).reduce_rational().unwrap(), rat(15, 4));
    }

    #[test]
    fn grassmannian_constant_beta_one_is_multinomial_form() {
        // c^(1)_{n,q,p} = prod_1^p i! (q-i)! (n-q-i)! / (n-i)!
        use crate::rat::factorial;
        for &(n, q, p) in &[(4u32, 2u32, 1u32), (6, 3, 2), (7, 3, 3)] {
            let g = grassmannian_constant(&Rat::one(), &rint(n as i64), &rint(q as i64), p);
            let mut want = Rat::one();
            for i in 1..=p {
                want *= Rat::from_integer(factorial(i as u64))
                    * Rat::from_integer(factorial((q - i) as u64))
                    * Rat::from_integer(factorial((n - q - i) as u64))
                    / Rat::from_integer(factorial((n - i) as u64));
            }
            assert_eq!(g.reduce_rational().unwrap(), want);
        }
    }

    #[test]
    fn beta_half_constant_has_pi_factor() {
        let g = grassmannian_constant(&rat(1, 2), &rint(6), &rint(2), 1);
        let c = g.reduce().unwrap();
        // One-dimensional Beta(1/2(q-p+1)... ) check via f64.
        // p=1: Gamma(3/2) Gamma(2) Gamma(1) / (Gamma(3/2) Gamma(3)) = 1/2.
        assert_eq!(c.sqrt_pi_power, 0);
        assert_eq!(c.rational, rat(1, 2));
    }
}
