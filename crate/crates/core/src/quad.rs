//! Floating-point quadrature of the reduced beta-ensemble integrals and the
//! Kaneko/Selberg cross-checks.
//!
//! Weight singularities at the endpoints are absorbed into Gauss-Jacobi
//! nodes. For beta = 1 and beta = 2 the Vandermonde factor is a polynomial
//! and a plain tensor rule converges spectrally. For beta = 1/2 the integrand
//! `|Delta|` has kinks on the diagonals, so the integral is taken over the
//! ordered simplex `z_1 >= ... >= z_p` (times `p!`) with the iterated
//! substitution `z_k = v_1 v_2 ... v_k`, which turns `Delta` into a smooth
//! factor and moves the `z`-powers into per-axis Jacobi weights.

use crate::error::{Error, Result};
use crate::jack::EnsembleSpec;
use crate::linalg::{jacobi_eigen, Mat};
use crate::partition::Partition;
use crate::rat::{rat, to_f64, Rat};

/// Tensor-quadrature parameters.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub p: usize,
    pub nodes_per_axis: usize,
    /// Exponents `(a_exp, b_exp)` of `(1-z)^a_exp z^b_exp`; both must exceed -1.
    pub jacobi_exponents: (f64, f64),
}

impl QuadratureSpec {
    pub fn new(p: usize, nodes_per_axis: usize, a_exp: f64, b_exp: f64) -> Self {
        QuadratureSpec { p, nodes_per_axis, jacobi_exponents: (a_exp, b_exp) }
    }
}

/// Gauss-Jacobi rule on `[0,1]` for the weight `u^b (1-u)^a`, by
/// Golub-Welsch on the symmetric tridiagonal recurrence matrix.
pub fn gauss_jacobi_01(n: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Parameter(format!(
            "Gauss-Jacobi exponents must exceed -1, got a={a} b={b}"
        )));
    }
    assert!(n >= 1);
    // Recurrence for the weight (1-x)^a (1+x)^b on [-1,1].
    let ab = a + b;
    let mut t = Mat::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        t[(k, k)] = diag;
        if k >= 1 {
            let off_sq = if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab)
                    / ((2.0 * kf + ab) * (2.0 * kf + ab) * (2.0 * kf + ab + 1.0)
                        * (2.0 * kf + ab - 1.0))
            };
            let off = off_sq.sqrt();
            t[(k, k - 1)] = off;
            t[(k - 1, k)] = off;
        }
    }
    let (nodes_sym, vectors) = jacobi_eigen(&t);
    // Total mass on [0,1]: Beta(b+1, a+1).
    let mu0 = (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0)).exp();
    let nodes: Vec<f64> = nodes_sym.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let weights: Vec<f64> = (0..n)
        .map(|k| {
            let v0 = vectors[(0, k)];
            mu0 * v0 * v0
        })
        .collect();
    Ok((nodes, weights))
}

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `Gamma(x)` for positive `x`.
pub fn gamma_fn(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Tensor quadrature of
/// `int_{[0,1]^p} f(z) e^{x sum z} |Delta(z)|^{2 beta} prod (1-z_i)^a z_i^b dz`
/// for `2 beta` in {1, 2, 4}.
pub fn beta_ensemble_integral(
    two_beta: u32,
    x: f64,
    quad: &QuadratureSpec,
    f: &dyn Fn(&[f64]) -> f64,
) -> Result<f64> {
    let (a, b) = quad.jacobi_exponents;
    let p = quad.p;
    if p == 0 || p > 4 {
        return Err(Error::Parameter(format!("quadrature supports 1 <= p <= 4, got {p}")));
    }
    match two_beta {
        2 | 4 => tensor_integral(two_beta, x, quad, f),
        1 => ordered_integral_beta_half(x, quad, f),
        _ => Err(Error::Parameter(format!("2 beta must be 1, 2 or 4, got {two_beta}"))),
    }?
    .pipe_checked(a, b)
}

trait PipeChecked {
    fn pipe_checked(self, a: f64, b: f64) -> Result<f64>;
}

impl PipeChecked for f64 {
    fn pipe_checked(self, a: f64, b: f64) -> Result<f64> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::Parameter(format!(
                "quadrature diverged (exponents a={a}, b={b})"
            )))
        }
    }
}

fn tensor_integral(
    two_beta: u32,
    x: f64,
    quad: &QuadratureSpec,
    f: &dyn Fn(&[f64]) -> f64,
) -> Result<f64> {
    let (a, b) = quad.jacobi_exponents;
    let p = quad.p;
    let (nodes, weights) = gauss_jacobi_01(quad.nodes_per_axis, a, b)?;
    let m = nodes.len();
    let mut idx = vec![0usize; p];
    let mut z = vec![0.0f64; p];
    let mut total = 0.0;
    loop {
        let mut w = 1.0;
        for (k, &i) in idx.iter().enumerate() {
            z[k] = nodes[i];
            w *= weights[i];
        }
        let mut delta = 1.0;
        for i in 0..p {
            for j in i + 1..p {
                delta *= z[i] - z[j];
            }
        }
        let vandermonde = match two_beta {
            2 => delta * delta,
            4 => {
                let d2 = delta * delta;
                d2 * d2
            }
            _ => unreachable!(),
        };
        let zsum: f64 = z.iter().sum();
        total += w * vandermonde * (x * zsum).exp() * f(&z);
        // Advance the multi-index.
        let mut k = 0;
        while k < p {
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == p {
            break;
        }
    }
    Ok(total)
}

/// Ordered-region rule for `2 beta = 1`; exact in the polynomial degrees of
/// `Delta` and, for integer `a`, free of corner singularities.
fn ordered_integral_beta_half(
    x: f64,
    quad: &QuadratureSpec,
    f: &dyn Fn(&[f64]) -> f64,
) -> Result<f64> {
    let (a, b) = quad.jacobi_exponents;
    let p = quad.p;
    let m = quad.nodes_per_axis;
    // Axis k (1-based): weight v^{e_k} (1 - v)^{a_k} with
    //   e_k = (p-k+1) b + (p-k) + (p-k)(p-k+1)/2,
    //   a_1 = a, a_k = 0 for k >= 2.
    let mut rules = Vec::with_capacity(p);
    for k in 1..=p {
        let pk = (p - k) as f64;
        let e = (pk + 1.0) * b + pk + pk * (pk + 1.0) / 2.0;
        let a_axis = if k == 1 { a } else { 0.0 };
        rules.push(gauss_jacobi_01(m, a_axis, e)?);
    }
    let mut idx = vec![0usize; p];
    let mut v = vec![0.0f64; p];
    let mut z = vec![0.0f64; p];
    let mut total = 0.0;
    loop {
        let mut w = 1.0;
        for (k, &i) in idx.iter().enumerate() {
            v[k] = rules[k].0[i];
            w *= rules[k].1[i];
        }
        // z_k = v_1 ... v_k, decreasing.
        let mut acc = 1.0;
        for k in 0..p {
            acc *= v[k];
            z[k] = acc;
        }
        // Smooth leftovers: (1 - z_i)^a for i >= 2, and the Vandermonde
        // factors (1 - v_{i+1} ... v_j).
        let mut smooth = 1.0;
        for item in z.iter().skip(1) {
            smooth *= (1.0 - item).powf(a);
        }
        for i in 0..p {
            for j in i + 1..p {
                let mut prod = 1.0;
                for item in v.iter().take(j + 1).skip(i + 1) {
                    prod *= item;
                }
                smooth *= 1.0 - prod;
            }
        }
        let zsum: f64 = z.iter().sum();
        total += w * smooth * (x * zsum).exp() * f(&z);
        let mut k = 0;
        while k < p {
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == p {
            break;
        }
    }
    // p! orderings.
    let mut fact = 1.0;
    for k in 2..=p {
        fact *= k as f64;
    }
    Ok(total * fact)
}

/// Quadrature of the reduced Grassmannian integral
/// `int_{[0,1]^p} e^{x sum z} |Delta|^{2 beta} prod z^{beta(q-p+1)-1} (1-z)^{beta(n-q-p+1)-1} dz`.
pub fn reduced_integral_quadrature(spec: &EnsembleSpec, x: f64, nodes: usize) -> Result<f64> {
    let p = spec
        .integer_p()
        .ok_or_else(|| Error::Parameter("quadrature needs integer p".into()))? as usize;
    let beta = to_f64(&spec.beta);
    let q = to_f64(&spec.q);
    let n = to_f64(&spec.n);
    let pf = p as f64;
    let b_exp = beta * (q - pf + 1.0) - 1.0;
    let a_exp = beta * (n - q - pf + 1.0) - 1.0;
    if a_exp <= -1.0 || b_exp <= -1.0 {
        return Err(Error::Parameter(format!(
            "integrand exponents must exceed -1, got (1-z)^{a_exp} z^{b_exp}"
        )));
    }
    let two_beta = (2.0 * beta).round() as u32;
    let quad = QuadratureSpec::new(p, nodes, a_exp, b_exp);
    beta_ensemble_integral(two_beta, x, &quad, &|_| 1.0)
}

/// Monomial expansion of the Jack polynomial `J_kappa^(alpha)` for
/// `|kappa| <= 3` (in the `J` normalization, integer-coefficient at the
/// square-free monomial). The expansions are pinned by exact orthogonality
/// tests against the power-sum inner product.
pub fn jack_monomial_expansion(kappa: &Partition, alpha: &Rat) -> Vec<(Partition, Rat)> {
    use num::One;
    let one = Rat::one();
    let a = alpha.clone();
    let m = |parts: &[u32]| Partition::new(parts.to_vec());
    match kappa.parts() {
        [] => vec![(Partition::empty(), one)],
        [1] => vec![(m(&[1]), one)],
        [2] => vec![(m(&[2]), &one + &a), (m(&[1, 1]), rat(2, 1))],
        [1, 1] => vec![(m(&[1, 1]), rat(2, 1))],
        [3] => vec![
            (m(&[3]), (&one + &a) * (&one + rat(2, 1) * &a)),
            (m(&[2, 1]), rat(3, 1) * (&one + &a)),
            (m(&[1, 1, 1]), rat(6, 1)),
        ],
        [2, 1] => vec![(m(&[2, 1]), rat(2, 1) + &a), (m(&[1, 1, 1]), rat(6, 1))],
        [1, 1, 1] => vec![(m(&[1, 1, 1]), rat(6, 1))],
        _ => panic!("jack_monomial_expansion only covers |kappa| <= 3, got {kappa}"),
    }
}

/// Evaluates the monomial symmetric function `m_mu` at a point with at most
/// three coordinates.
fn monomial_eval(mu: &Partition, z: &[f64]) -> f64 {
    let p = z.len();
    match mu.parts() {
        [] => 1.0,
        [k] => z.iter().map(|&t| t.powi(*k as i32)).sum(),
        [k, l] if k == l => {
            let mut s = 0.0;
            for i in 0..p {
                for j in i + 1..p {
                    s += z[i].powi(*k as i32) * z[j].powi(*k as i32);
                }
            }
            s
        }
        [k, l] => {
            let mut s = 0.0;
            for i in 0..p {
                for j in 0..p {
                    if i != j {
                        s += z[i].powi(*k as i32) * z[j].powi(*l as i32);
                    }
                }
            }
            s
        }
        [k, l, r] if k == l && l == r => {
            let mut s = 0.0;
            for i in 0..p {
                for j in i + 1..p {
                    for t in j + 1..p {
                        s += z[i].powi(*k as i32) * z[j].powi(*k as i32) * z[t].powi(*k as i32);
                    }
                }
            }
            s
        }
        _ => panic!("monomial_eval limited to |mu| <= 3 shapes, got {mu}"),
    }
}

/// Evaluates `J_kappa^(alpha)` at a point via the monomial table.
pub fn jack_eval(kappa: &Partition, alpha: &Rat, z: &[f64]) -> f64 {
    jack_monomial_expansion(kappa, alpha)
        .iter()
        .map(|(mu, c)| to_f64(c) * monomial_eval(mu, z))
        .sum()
}

/// Result of one Kaneko comparison: the quadrature value, the Gamma-product
/// value, and their relative difference.
#[derive(Clone, Copy, Debug)]
pub struct KanekoCheck {
    pub numeric: f64,
    pub exact: f64,
    pub rel_err: f64,
}

/// Compares the quadrature of
/// `int_{[0,1]^p} J_lambda^(1/beta)(z) |Delta|^{2 beta}
///  prod (1-z)^{a - beta(p-1) - 1} z^{b - beta(p-1) - 1} dz`
/// against the Kaneko Gamma product
/// `J_lambda(1^p) prod_i Gamma(i beta + 1) Gamma(a + beta(1-i))
///  Gamma(lambda_i + b + beta(1-i)) / (Gamma(beta+1) Gamma(lambda_i + a + b + beta(1-i)))`.
pub fn kaneko_check(
    p: u32,
    beta: &Rat,
    a: f64,
    b: f64,
    lambda: &Partition,
    nodes: usize,
) -> Result<KanekoCheck> {
    let betaf = to_f64(beta);
    if !(a > betaf * (p as f64 - 1.0) && b > betaf * (p as f64 - 1.0)) {
        return Err(Error::Parameter(format!(
            "Kaneko needs a, b > beta(p-1), got a={a} b={b} beta={betaf} p={p}"
        )));
    }
    if lambda.weight() > 3 || p > 3 {
        return Err(Error::Parameter("kaneko_check limited to |lambda| <= 3, p <= 3".into()));
    }
    let alpha = beta.recip();
    let a_exp = a - betaf * (p as f64 - 1.0) - 1.0;
    let b_exp = b - betaf * (p as f64 - 1.0) - 1.0;
    let two_beta = (2.0 * betaf).round() as u32;
    let quad = QuadratureSpec::new(p as usize, nodes, a_exp, b_exp);
    let lam = lambda.clone();
    let alpha_c = alpha.clone();
    let numeric = beta_ensemble_integral(two_beta, 0.0, &quad, &move |z| {
        jack_eval(&lam, &alpha_c, z)
    })?;
    // Gamma-product side.
    let jack_ones = to_f64(&crate::jack::jack_at_ones(lambda, &alpha, &crate::rat::rint(p as i64)));
    let mut logs = 0.0;
    for i in 1..=p as i64 {
        let shift = betaf * (1.0 - i as f64);
        let li = lambda.part(i as usize) as f64;
        logs += ln_gamma(i as f64 * betaf + 1.0) + ln_gamma(a + shift) + ln_gamma(li + b + shift)
            - ln_gamma(betaf + 1.0)
            - ln_gamma(li + a + b + shift);
    }
    let exact = jack_ones * logs.exp();
    let rel_err = ((numeric - exact) / exact).abs();
    Ok(KanekoCheck { numeric, exact, rel_err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::{jack_norm, EnsembleSpec};
    use crate::rat::{rint, Rat};
    use num::{One, Zero};

    #[test]
    fn gauss_jacobi_integrates_monomials() {
        // int_0^1 u^k u^{-1/2} du = 1/(k + 1/2).
        let (nodes, weights) = gauss_jacobi_01(24, 0.0, -0.5).unwrap();
        for k in 0..6 {
            let got: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(&u, &w)| w * u.powi(k))
                .sum();
            let want = 1.0 / (k as f64 + 0.5);
            assert!((got - want).abs() < 1e-13, "k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn one_dimensional_beta_value() {
        // x = 0, p = 1: the integral is Beta(b(q-p+1), b(n-q-p+1)).
        let spec = EnsembleSpec::with_ints(Rat::one(), 5, 1, 2);
        let got = reduced_integral_quadrature(&spec, 0.0, 64).unwrap();
        // exponents: z^{q-p} (1-z)^{n-q-p} = z^1 (1-z)^2: Beta(2,3) = 1/12.
        assert!((got - 1.0 / 12.0).abs() < 1e-13, "{got}");
    }

    #[test]
    fn closed_form_exponential_case() {
        // beta=1, p=q=1, n=2: int_0^1 e^{xz} dz = (e^x - 1)/x.
        let spec = EnsembleSpec::with_ints(Rat::one(), 2, 1, 1);
        let got = reduced_integral_quadrature(&spec, 1.0, 48).unwrap();
        let want = std::f64::consts::E - 1.0;
        assert!((got - want).abs() < 1e-13, "{got}");
    }

    #[test]
    fn selberg_values_all_betas() {
        // x = 0 equals the exact Gamma-product constant.
        for (beta, n, p, q) in [
            (rat(1, 2), 6i64, 2i64, 3i64),
            (rat(1, 2), 8, 3, 4),
            (rat(1, 1), 6, 2, 3),
            (rat(2, 1), 7, 2, 3),
        ] {
            let spec = EnsembleSpec::with_ints(beta.clone(), n, p, q);
            let got = reduced_integral_quadrature(&spec, 0.0, 48).unwrap();
            let want = crate::gamma::grassmannian_constant(
                &beta,
                &rint(n),
                &rint(q),
                p as u32,
            )
            .reduce()
            .unwrap()
            .to_f64();
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-12, "beta={beta} (n,p,q)=({n},{p},{q}): rel {rel:e}");
        }
    }

    #[test]
    fn doubling_nodes_converges() {
        for (beta, n, p, q, x) in [
            (rat(1, 1), 6i64, 2i64, 3i64, 0.7),
            (rat(1, 2), 8, 2, 3, 0.5),
            (rat(2, 1), 7, 2, 3, 0.3),
        ] {
            let spec = EnsembleSpec::with_ints(beta, n, p, q);
            let v64 = reduced_integral_quadrature(&spec, x, 64).unwrap();
            let v128 = reduced_integral_quadrature(&spec, x, 128).unwrap();
            assert!(
                ((v64 - v128) / v128).abs() < 1e-10,
                "(n,p,q)=({n},{p},{q}): {v64} vs {v128}"
            );
        }
    }

    #[test]
    fn quadrature_matches_exact_series() {
        // Independent cross-check: the quadrature ratio I(x)/I(0) must match
        // the exact hypergeometric series at small x.
        for (beta, n, p, q) in [(rat(1, 1), 6i64, 2i64, 3i64), (rat(1, 2), 8, 2, 3)] {
            let spec = EnsembleSpec::with_ints(beta, n, p, q);
            let series = crate::hyper::hyper2f1_restricted(&spec, 30).unwrap();
            for x in [0.1, 0.5, 1.0] {
                let ratio = reduced_integral_quadrature(&spec, x, 64).unwrap()
                    / reduced_integral_quadrature(&spec, 0.0, 64).unwrap();
                let want = series.eval_f64(x);
                assert!(
                    ((ratio - want) / want).abs() < 1e-11,
                    "x={x}: {ratio} vs {want}"
                );
            }
        }
    }

    #[test]
    fn jack_tables_are_orthogonal() {
        // <J_lambda, J_mu> = delta j_lambda under <p_lambda, p_mu> =
        // delta z_lambda alpha^{len}, verified exactly at several alpha.
        use std::collections::BTreeMap;
        // Power-sum expansion of m_mu for |mu| <= 3.
        fn m_to_p(mu: &Partition) -> Vec<(Vec<u32>, Rat)> {
            match mu.parts() {
                [] => vec![(vec![], rint(1))],
                [1] => vec![(vec![1], rint(1))],
                [2] => vec![(vec![2], rint(1))],
                [1, 1] => vec![(vec![1, 1], rat(1, 2)), (vec![2], rat(-1, 2))],
                [3] => vec![(vec![3], rint(1))],
                [2, 1] => vec![(vec![1, 2], rint(1)), (vec![3], rint(-1))],
                [1, 1, 1] => vec![
                    (vec![1, 1, 1], rat(1, 6)),
                    (vec![1, 2], rat(-1, 2)),
                    (vec![3], rat(1, 3)),
                ],
                _ => unreachable!(),
            }
        }
        fn z_factor(mono: &[u32]) -> Rat {
            // prod i^{m_i} m_i!
            let mut counts = BTreeMap::new();
            for &i in mono {
                *counts.entry(i).or_insert(0u64) += 1;
            }
            let mut acc = Rat::one();
            for (i, m) in counts {
                acc *= crate::rat::pow(&rint(i as i64), m as i64)
                    * Rat::from_integer(crate::rat::factorial(m));
            }
            acc
        }
        for alpha in [rat(1, 2), rat(1, 1), rat(2, 1), rat(7, 2)] {
            for w in 0..=3u64 {
                let shapes = Partition::enumerate(w, None);
                for la in &shapes {
                    for mu in &shapes {
                        // Expand both Jacks into power sums.
                        let expand = |kappa: &Partition| {
                            let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
                            for (m, c) in jack_monomial_expansion(kappa, &alpha) {
                                for (mono, pc) in m_to_p(&m) {
                                    *acc.entry(mono).or_insert_with(Rat::zero) += &c * pc;
                                }
                            }
                            acc
                        };
                        let ea = expand(la);
                        let eb = expand(mu);
                        let mut inner = Rat::zero();
                        for (mono, ca) in &ea {
                            if let Some(cb) = eb.get(mono) {
                                inner += ca
                                    * cb
                                    * z_factor(mono)
                                    * crate::rat::pow(&alpha, mono.len() as i64);
                            }
                        }
                        let want = if la == mu {
                            jack_norm(la, &alpha)
                        } else {
                            Rat::zero()
                        };
                        assert_eq!(inner, want, "alpha={alpha} la={la} mu={mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn jack_table_matches_ones_specialization() {
        for alpha in [rat(1, 2), rat(1, 1), rat(5, 2)] {
            for w in 0..=3u64 {
                for kappa in Partition::enumerate(w, None) {
                    for p in 1..=3usize {
                        let z = vec![1.0; p];
                        let got = jack_eval(&kappa, &alpha, &z);
                        let want = to_f64(&crate::jack::jack_at_ones(
                            &kappa,
                            &alpha,
                            &rint(p as i64),
                        ));
                        assert!(
                            (got - want).abs() < 1e-9 * want.abs().max(1.0),
                            "alpha={alpha} kappa={kappa} p={p}: {got} vs {want}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kaneko_small_cases() {
        // lambda = empty reduces to the Selberg value; lambda = (2) at beta=1
        // inserts h s_(2).
        for (p, beta) in [(1u32, rat(1, 1)), (2, rat(1, 1)), (2, rat(1, 2)), (2, rat(2, 1))] {
            let bf = to_f64(&beta);
            let a = 3.0 + bf * (p as f64 - 1.0);
            let b = 2.0 + bf * (p as f64 - 1.0);
            let out = kaneko_check(p, &beta, a, b, &Partition::empty(), 48).unwrap();
            assert!(out.rel_err < 1e-12, "p={p} beta={beta}: {out:?}");
            let out = kaneko_check(p, &beta, a, b, &Partition::new(vec![2]), 48).unwrap();
            assert!(out.rel_err < 1e-11, "p={p} beta={beta}: {out:?}");
        }
    }
}
