//! The restricted hypergeometric series, Grassmannian / Laguerre / Jacobi
//! integral series, and the hook-expectation generating function.
//!
//! All series here are exact: partition sums with generalized Pochhammer
//! symbols, Jack specializations at `1^p`, and Kaneko's Gamma-product
//! evaluation of the termwise integrals. Each integral series is returned
//! normalized to constant term 1, with its Selberg constant kept separately.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gamma::{grassmannian_constant, kaneko_empty_constant, GammaProduct, SelbergConstant};
use crate::jack::{jack_at_ones, jack_norm, EnsembleSpec};
use crate::partition::{gen_pochhammer, hook_product, schur_at_ones, strip_hook_product, Partition};
use crate::rat::{factorial, pow, rint, rising, to_u32, Rat};
use crate::series::RationalSeries;

/// Restriction of `2F1^(1/beta)(beta p, beta q; beta n; y)` to the locus
/// where only the first power sum survives, as a series in `x`:
/// coefficient of `x^r` is
/// `sum_{|kappa|=r} (bp)_k (bq)_k / (bn)_k * alpha^{2r} / j_kappa^(alpha)`.
///
/// For integer `p` the sum is pruned to `kappa_1^T <= p` (the numerator
/// vanishes there); otherwise every partition of `r` contributes and a
/// vanishing `(beta n)_kappa` with nonzero numerator rejects the parameters,
/// reporting the offending `kappa`.
pub fn hyper2f1_restricted(spec: &EnsembleSpec, order: usize) -> Result<RationalSeries> {
    let alpha = spec.alpha();
    let bp = &spec.beta * &spec.p;
    let bq = &spec.beta * &spec.q;
    let bn = &spec.beta * &spec.n;
    let column_bound = spec.integer_p();
    let mut coeffs = Vec::with_capacity(order + 1);
    for r in 0..=order as u64 {
        let mut sum = Rat::zero();
        for kappa in Partition::enumerate(r, column_bound) {
            let numer = gen_pochhammer(&bp, &kappa, &alpha) * gen_pochhammer(&bq, &kappa, &alpha);
            if numer.is_zero() {
                continue;
            }
            let denom = gen_pochhammer(&bn, &kappa, &alpha);
            if denom.is_zero() {
                return Err(Error::VanishingDenominator {
                    kappa: kappa.to_string(),
                    context: format!("(beta n)_kappa with beta n = {bn}"),
                });
            }
            sum += numer * pow(&alpha, 2 * r as i64) / (denom * jack_norm(&kappa, &alpha));
        }
        coeffs.push(sum);
    }
    Ok(RationalSeries::new(coeffs))
}

/// The Grassmannian integral
/// `I_p(x) = int_{[0,1]^p} e^{x sum z} |Delta|^{2b} prod z^{b(q-p+1)-1} (1-z)^{b(n-q-p+1)-1} dz`
/// as `(constant, normalized series)`; the constant is the Selberg value
/// `c_{n,q,p}^(beta)` and the series has constant term 1.
pub fn grassmannian_integral_series(
    spec: &EnsembleSpec,
    order: usize,
) -> Result<(SelbergConstant, RationalSeries)> {
    spec.validate_grassmannian()?;
    let p = spec.integer_p().expect("validated");
    let constant = grassmannian_constant(&spec.beta, &spec.n, &spec.q, p).reduce()?;
    let series = hyper2f1_restricted(spec, order)?;
    Ok((constant, series))
}

/// Generating function of the strip hook expectation (beta = 1):
/// `prod_1^p (n-i)!/(q-i)! x^{-p(n-p)} sum_{l >= p(n-p)} (px)^l / l! E^{l,p}[...]`,
/// assembled from the direct partition-measure expectation. Equals the
/// restricted hypergeometric series coefficientwise.
pub fn generating_function_hook_expectation(
    spec: &EnsembleSpec,
    order: usize,
) -> Result<RationalSeries> {
    if !spec.beta.is_one() {
        return Err(Error::Parameter("hook-expectation generating function needs beta = 1".into()));
    }
    // The word-side identity only needs integer p <= q < n; q <= n/2 is a
    // constraint of the integral representation, not of the partition sums.
    let p = spec.integer_p().ok_or_else(|| Error::Parameter("integer p required".into()))?;
    let n = to_u32(&spec.n).ok_or_else(|| Error::Parameter("integer n required".into()))?;
    let q = to_u32(&spec.q).ok_or_else(|| Error::Parameter("integer q required".into()))?;
    if !(p >= 1 && p <= q && q < n) {
        return Err(Error::Parameter(format!(
            "need 1 <= p <= q < n, got p={p} q={q} n={n}"
        )));
    }
    let mut prefactor = Rat::one();
    for i in 1..=p {
        prefactor *= Rat::from_integer(factorial((n - i) as u64))
            / Rat::from_integer(factorial((q - i) as u64));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for r in 0..=order as u64 {
        // Coefficient of x^r: prefactor * sum over kappa of
        // s_lambda(1^p) strip(lambda) / h^lambda with lambda = kappa + (n-p)^p.
        let mut sum = Rat::zero();
        for kappa in Partition::enumerate(r, Some(p)) {
            let lam = kappa.pad_rectangle(n - p, p as usize);
            let strip = Rat::from_integer(strip_hook_product(&lam, n, p, q)?);
            let s = Rat::from_integer(schur_at_ones(&lam, p));
            let h = Rat::from_integer(hook_product(&lam));
            sum += s * strip / h;
        }
        coeffs.push(&prefactor * sum);
    }
    Ok(RationalSeries::new(coeffs))
}

/// A rescaled incomplete ensemble integral `int_{[0,t]^p} = t^gamma * S(t)`:
/// `gamma` is the scaling exponent, `constant` the Selberg value `S(0)` of
/// the unnormalized series, and `series` is `S(t)/S(0)` (constant term 1).
#[derive(Clone, Debug)]
pub struct ScaledIntegralSeries {
    pub gamma_exponent: Rat,
    pub constant: GammaProduct,
    pub series: RationalSeries,
}

/// Laguerre probability numerator
/// `int_{[0,x]^p} |Delta|^{2 beta} prod e^{-b y} y^{alpha_L} dy`
/// with `alpha_L = a + beta(n-2p) + beta - 1`, rescaled to `x^gamma S(x)`,
/// `gamma = p(alpha_L + 1) + beta p (p-1)`. The expansion inserts
/// `e^{-b x sum z}` through the Jack basis and integrates termwise by Kaneko
/// against the flat `(1-z)^0` weight.
pub fn laguerre_prob_series(
    n: u32,
    p: u32,
    beta: &Rat,
    a: &Rat,
    b: &Rat,
    order: usize,
) -> Result<ScaledIntegralSeries> {
    if p == 0 || n < p {
        return Err(Error::Parameter(format!("need n >= p >= 1, got n={n} p={p}")));
    }
    let alpha_l = a + beta * rint(n as i64 - 2 * p as i64) + beta - Rat::one();
    if alpha_l <= rint(-1) {
        return Err(Error::Parameter(format!(
            "Laguerre exponent alpha_L = {alpha_l} must exceed -1"
        )));
    }
    // Kaneko parameters for the weight (1-z)^0 z^{alpha_L}.
    let a_k = beta * rint(p as i64 - 1) + Rat::one();
    let b_k = &alpha_l + beta * rint(p as i64 - 1) + Rat::one();
    let gamma_exponent =
        rint(p as i64) * (&alpha_l + Rat::one()) + beta * rint(p as i64 * (p as i64 - 1));
    let constant = kaneko_empty_constant(beta, &a_k, &b_k, p);
    let alpha = beta.recip();
    let mut coeffs = Vec::with_capacity(order + 1);
    for ell in 0..=order as u64 {
        let mut sum = Rat::zero();
        for lam in Partition::enumerate(ell, Some(p)) {
            let jack1p = jack_at_ones(&lam, &alpha, &rint(p as i64));
            if jack1p.is_zero() {
                continue;
            }
            sum += jack1p * kaneko_moment_ratio(&lam, beta, &a_k, &b_k) / jack_norm(&lam, &alpha);
        }
        sum *= pow(&(-b * &alpha), ell as i64);
        coeffs.push(sum);
    }
    Ok(ScaledIntegralSeries { gamma_exponent, constant, series: RationalSeries::new(coeffs) })
}

/// Jacobi probability numerator
/// `int_{[0,t]^p} |Delta|^{2 beta} prod (1-y)^a y^{alpha_J} dy`
/// with `alpha_J = b + beta(n-2p+1) - 1`, rescaled to `t^gamma S(t)`.
/// The factor `prod_i (1-t z_i)^a` expands through the Jack binomial series
/// `1F0(-a; t z)`, then Kaneko integrates termwise.
pub fn jacobi_prob_series(
    n: u32,
    p: u32,
    beta: &Rat,
    a: &Rat,
    b: &Rat,
    order: usize,
) -> Result<ScaledIntegralSeries> {
    if p == 0 {
        return Err(Error::Parameter("need p >= 1".into()));
    }
    if a.is_negative() {
        return Err(Error::Parameter(format!("need a >= 0, got a = {a}")));
    }
    let alpha_j = b + beta * rint(n as i64 - 2 * p as i64 + 1) - Rat::one();
    if alpha_j <= rint(-1) {
        return Err(Error::Parameter(format!(
            "Jacobi exponent alpha_J = {alpha_j} must exceed -1"
        )));
    }
    let a_k = beta * rint(p as i64 - 1) + Rat::one();
    let b_k = &alpha_j + beta * rint(p as i64 - 1) + Rat::one();
    let gamma_exponent =
        rint(p as i64) * (&alpha_j + Rat::one()) + beta * rint(p as i64 * (p as i64 - 1));
    let constant = kaneko_empty_constant(beta, &a_k, &b_k, p);
    let alpha = beta.recip();
    let minus_a = -a;
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order as u64 {
        let mut sum = Rat::zero();
        for kappa in Partition::enumerate(k, Some(p)) {
            let jack1p = jack_at_ones(&kappa, &alpha, &rint(p as i64));
            if jack1p.is_zero() {
                continue;
            }
            let binom = gen_pochhammer(&minus_a, &kappa, &alpha);
            if binom.is_zero() {
                continue;
            }
            sum += binom * jack1p * kaneko_moment_ratio(&kappa, beta, &a_k, &b_k)
                / jack_norm(&kappa, &alpha);
        }
        sum *= pow(&alpha, k as i64);
        coeffs.push(sum);
    }
    Ok(ScaledIntegralSeries { gamma_exponent, constant, series: RationalSeries::new(coeffs) })
}

/// Kaneko moment normalized by the empty-partition Selberg value:
/// `prod_i (b_k + beta(1-i))_{lambda_i} / (a_k + b_k + beta(1-i))_{lambda_i}`.
pub(crate) fn kaneko_moment_ratio(lambda: &Partition, beta: &Rat, a_k: &Rat, b_k: &Rat) -> Rat {
    let mut acc = Rat::one();
    for (i0, &part) in lambda.parts().iter().enumerate() {
        let shift = beta * rint(-(i0 as i64));
        acc *= rising(&(b_k + &shift), part as u64) / rising(&(a_k + b_k + &shift), part as u64);
    }
    acc
}
