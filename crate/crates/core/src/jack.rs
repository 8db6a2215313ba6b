//! Jack polynomial specializations at `1^n` and norms via product formulas,
//! the generalized-beta partition probabilities, and the Jack-ratio
//! expectation series.
//!
//! Only the product-formula locus is implemented; Jack polynomials at general
//! points never appear in the exact layer.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rat::{factorial, pow, rint, to_u32, Rat};
use crate::series::RationalSeries;

/// One Grassmannian / Laguerre / Jacobi ensemble instance.
/// `alpha = 1/beta` throughout.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub beta: Rat,
    pub n: Rat,
    pub p: Rat,
    pub q: Rat,
}

impl EnsembleSpec {
    pub fn new(beta: Rat, n: Rat, p: Rat, q: Rat) -> Self {
        assert!(beta.is_positive(), "beta must be positive");
        EnsembleSpec { beta, n, p, q }
    }

    /// Integer-parameter convenience constructor.
    pub fn with_ints(beta: Rat, n: i64, p: i64, q: i64) -> Self {
        Self::new(beta, rint(n), rint(p), rint(q))
    }

    pub fn alpha(&self) -> Rat {
        self.beta.recip()
    }

    /// `p` as a small integer when it is one.
    pub fn integer_p(&self) -> Option<u32> {
        to_u32(&self.p)
    }

    /// Checks `p <= q <= n/2` with integer `p`, as required by every
    /// Grassmannian integral.
    pub fn validate_grassmannian(&self) -> Result<()> {
        let two_q = rint(2) * &self.q;
        if self.integer_p().is_none() || self.p > self.q || two_q > self.n {
            return Err(Error::Parameter(format!(
                "need integer p <= q <= n/2, got p={} q={} n={}",
                self.p, self.q, self.n
            )));
        }
        Ok(())
    }
}

/// `J_lambda^(alpha)(1^n) = prod_{(i,j)} (n - (i-1) + alpha (j-1))`.
/// Vanishes for integer `n < lambda_1^T`.
pub fn jack_at_ones(lambda: &Partition, alpha: &Rat, n: &Rat) -> Rat {
    assert!(alpha.is_positive());
    let mut acc = Rat::one();
    for (i, j) in lambda.cells() {
        acc *= n - rint(i as i64 - 1) + rint(j as i64 - 1) * alpha;
    }
    acc
}

/// Jack norm `j_lambda^(alpha)`; equals `(h^lambda)^2` at `alpha = 1`.
pub fn jack_norm(lambda: &Partition, alpha: &Rat) -> Rat {
    assert!(alpha.is_positive());
    let dual = lambda.dual();
    let mut acc = Rat::one();
    for (i, j) in lambda.cells() {
        let arm = rint(lambda.part(i) as i64 - j as i64);
        let leg = rint(dual.part(j) as i64 - i as i64);
        acc *= (&leg + (&arm + Rat::one()) * alpha) * (leg + Rat::one() + arm * alpha);
    }
    acc
}

/// `P^{l,p}(lambda) = J_lambda^(alpha)(1^p) l! / (j_lambda^(alpha) (p/alpha)^l)`.
/// Requires `|lambda| == l`; zero exactly when `lambda_1^T > p` (integer `p`).
pub fn partition_prob(lambda: &Partition, spec: &EnsembleSpec, ell: u64) -> Rat {
    assert_eq!(lambda.weight(), ell, "partition weight must equal l");
    let alpha = spec.alpha();
    let numer = jack_at_ones(lambda, &alpha, &spec.p) * Rat::from_integer(factorial(ell));
    let denom = jack_norm(lambda, &alpha) * pow(&(&spec.p / &alpha), ell as i64);
    numer / denom
}

/// Series in `x` of `e^{beta p x} E_{x,p}[ beta^{-|lambda|}
/// J_lambda^(alpha)(1^q) / J_lambda^(alpha)(1^n) ]`, truncated at `order`.
/// Coefficient of `x^l` is the sum over `|lambda| = l`, `lambda_1^T <= p` of
/// `J(1^p) J(1^q) / (beta^l j_lambda J(1^n))`.
pub fn jack_ratio_expectation_series(spec: &EnsembleSpec, order: usize) -> Result<RationalSeries> {
    let p_int = spec.integer_p().ok_or_else(|| {
        Error::Parameter(format!("jack ratio expectation needs integer p >= 1, got {}", spec.p))
    })?;
    if p_int < 1 {
        return Err(Error::Parameter("p must be >= 1".into()));
    }
    let alpha = spec.alpha();
    let mut coeffs = Vec::with_capacity(order + 1);
    for ell in 0..=order as u64 {
        let mut sum = Rat::zero();
        for lam in Partition::enumerate(ell, Some(p_int)) {
            let denom_jack = jack_at_ones(&lam, &alpha, &spec.n);
            if denom_jack.is_zero() {
                return Err(Error::VanishingDenominator {
                    kappa: lam.to_string(),
                    context: format!("J_lambda(1^n) with n = {}", spec.n),
                });
            }
            let numer = jack_at_ones(&lam, &alpha, &spec.p) * jack_at_ones(&lam, &alpha, &spec.q);
            sum += numer / (jack_norm(&lam, &alpha) * &denom_jack);
        }
        sum *= pow(&spec.beta, -(ell as i64));
        coeffs.push(sum);
    }
    Ok(RationalSeries::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{hook_product, schur_at_ones};
    use crate::rat::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn jack_ones_values() {
        let alpha = rat(2, 1);
        assert_eq!(jack_at_ones(&p(&[1]), &alpha, &rint(7)), rint(7));
        assert_eq!(jack_at_ones(&p(&[2]), &rat(2, 1), &rint(1)), rint(3));
        assert_eq!(jack_at_ones(&p(&[1, 1, 1]), &alpha, &rint(2)), Rat::zero());
    }

    #[test]
    fn jack_norm_values() {
        let alpha = rat(5, 3);
        assert_eq!(jack_norm(&p(&[1]), &alpha), alpha.clone());
        assert_eq!(jack_norm(&p(&[2, 1]), &Rat::one()), rint(9));
        // j_{(2)} = 2 alpha^2 (1 + alpha)
        assert_eq!(
            jack_norm(&p(&[2]), &alpha),
            rint(2) * &alpha * &alpha * (Rat::one() + &alpha)
        );
    }

    #[test]
    fn alpha_one_reduces_to_schur() {
        // J^(1)(1^n) = h^lambda s_lambda(1^n) and j^(1) = (h^lambda)^2.
        for w in 0..=8u64 {
            for lam in Partition::enumerate(w, None) {
                let h = Rat::from_integer(hook_product(&lam));
                for n in 1..=4i64 {
                    assert_eq!(
                        jack_at_ones(&lam, &Rat::one(), &rint(n)),
                        &h * Rat::from_integer(schur_at_ones(&lam, n as u32))
                    );
                }
                assert_eq!(jack_norm(&lam, &Rat::one()), &h * &h);
            }
        }
    }

    #[test]
    fn jack_norm_duality_beta_half_two() {
        // j^(2)_lambda = h^{2 lambda} and j^(1/2)_lambda = h^{2 lambda^T} / 2^{2|lambda|}
        // are equivalent to j^(alpha)(lambda) at alpha=2 equaling 2^{|lambda|} j^(1/2)(lambda^T) ... ;
        // checked here via the explicit double products on small shapes.
        for w in 0..=6u64 {
            for lam in Partition::enumerate(w, None) {
                let two = rat(2, 1);
                let half = rat(1, 2);
                let lhs = jack_norm(&lam, &two);
                let rhs = jack_norm(&lam.dual(), &half) * pow(&two, 2 * w as i64);
                assert_eq!(lhs, rhs, "lambda = {lam}");
            }
        }
    }

    #[test]
    fn partition_prob_examples() {
        let spec = EnsembleSpec::with_ints(Rat::one(), 4, 2, 2);
        assert_eq!(partition_prob(&p(&[1]), &spec, 1), Rat::one());
        assert_eq!(partition_prob(&p(&[1, 1]), &spec, 2), rat(1, 4));
        assert_eq!(partition_prob(&p(&[1, 1, 1]), &spec, 3), Rat::zero());
    }

    #[test]
    fn partition_prob_matches_word_measure() {
        // alpha = 1: P^{l,p}(lambda) = f^lambda s_lambda(1^p)/p^l.
        let spec = EnsembleSpec::with_ints(Rat::one(), 6, 2, 2);
        for ell in 0..=5u32 {
            let m = crate::words::word_shape_measure(ell, 2).unwrap();
            for (lam, mass) in m {
                assert_eq!(partition_prob(&lam, &spec, ell as u64), mass);
            }
        }
    }

    #[test]
    fn partition_prob_normalizes() {
        for beta in [rat(1, 2), rat(1, 1), rat(2, 1)] {
            for p_int in 1..=3i64 {
                let spec = EnsembleSpec::with_ints(beta.clone(), 8, p_int, p_int);
                for ell in 0..=8u64 {
                    let mut total = Rat::zero();
                    for lam in Partition::enumerate(ell, Some(p_int as u32)) {
                        let mass = partition_prob(&lam, &spec, ell);
                        assert!(!mass.is_negative(), "negative mass at {lam}");
                        total += mass;
                    }
                    assert_eq!(total, Rat::one(), "beta={beta} p={p_int} l={ell}");
                }
            }
        }
    }

    #[test]
    fn power_sum_expansion_identity() {
        // sum_{|lambda|=l} alpha^l J(1^p)/j == p^l / l!   (expansion of (x1+x2+...)^l)
        for alpha in [rat(1, 2), rat(1, 1), rat(2, 1)] {
            for pp in 1..=3i64 {
                for ell in 0..=8u64 {
                    let mut total = Rat::zero();
                    for lam in Partition::enumerate(ell, None) {
                        total += jack_at_ones(&lam, &alpha, &rint(pp)) / jack_norm(&lam, &alpha);
                    }
                    total *= pow(&alpha, ell as i64);
                    let want = pow(&rint(pp), ell as i64) / Rat::from_integer(factorial(ell));
                    assert_eq!(total, want, "alpha={alpha} p={pp} l={ell}");
                }
            }
        }
    }

    #[test]
    fn ratio_series_single_row_case() {
        // beta = 1, p = q = 1, n = 2: coefficients 1/(k+1)!.
        let spec = EnsembleSpec::with_ints(Rat::one(), 2, 1, 1);
        let s = jack_ratio_expectation_series(&spec, 8).unwrap();
        for k in 0..=8u64 {
            assert_eq!(s.coeff(k as usize), &Rat::from_integer(factorial(k + 1)).recip());
        }
    }

    #[test]
    fn ratio_series_first_coefficient() {
        // Coefficient of x^1 is pq/n for every beta.
        for beta in [rat(1, 2), rat(1, 1), rat(2, 1)] {
            let spec = EnsembleSpec::with_ints(beta, 7, 2, 3);
            let s = jack_ratio_expectation_series(&spec, 2).unwrap();
            assert_eq!(s.coeff(0), &Rat::one());
            assert_eq!(s.coeff(1), &rat(6, 7));
        }
    }
}
