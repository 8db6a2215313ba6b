//! Exact `t_k`-derivatives of the beta = 1 Jacobi-weight matrix integral
//! along the locus `L = {t_1 = x, t_k = 0 for k >= 2}`, and the residuals of
//! the first two Virasoro constraints and the KP equation.
//!
//! The integral is
//! `I_p(t) = int_{[-1,1]^p} |Delta|^2 prod_k e^{sum_i t_i y_k^i} (1-y_k)^a (1+y_k)^b dy_k`.
//! A derivative in `t_k` inserts the power sum `p_k(y)`. After `y = 2z - 1`
//! the insertions become polynomials in the `p_j(z)`, products of power sums
//! expand into the Schur basis by Murnaghan-Nakayama, and each Schur moment
//! against the `[0,1]` weight evaluates by the Kaneko formula. Everything
//! stays rational; series are normalized by the `x = 0` Selberg value.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::hyper::kaneko_moment_ratio;
use crate::partition::{schur_at_ones, Partition};
use crate::rat::{binomial, factorial, pow, rint, Rat};
use crate::schur::SchurExpansion;
use crate::series::RationalSeries;

/// A polynomial in the power sums `p_j(z)`, stored as a map from the sorted
/// multiset of indices to its coefficient. `p_0(z) = p` is folded into the
/// coefficients as it arises.
type PowerSumPoly = BTreeMap<Vec<u32>, Rat>;

fn poly_insert(poly: &mut PowerSumPoly, mono: Vec<u32>, coeff: Rat) {
    if coeff.is_zero() {
        return;
    }
    let entry = poly.entry(mono).or_insert_with(Rat::zero);
    *entry += coeff;
}

/// `p_k(y)` with `y = 2z - 1`:
/// `sum_{j=0}^{k} C(k,j) 2^j (-1)^{k-j} p_j(z)`, `p_0(z) = p`.
fn power_sum_shifted(k: u32, p: u32) -> PowerSumPoly {
    let mut poly = PowerSumPoly::new();
    for j in 0..=k {
        let mut c = Rat::from_integer(binomial(k as u64, j as u64)) * pow(&rint(2), j as i64);
        if (k - j) % 2 == 1 {
            c = -c;
        }
        if j == 0 {
            poly_insert(&mut poly, Vec::new(), c * rint(p as i64));
        } else {
            poly_insert(&mut poly, vec![j], c);
        }
    }
    poly
}

fn poly_mul(a: &PowerSumPoly, b: &PowerSumPoly) -> PowerSumPoly {
    let mut out = PowerSumPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut mono = ma.clone();
            mono.extend_from_slice(mb);
            mono.sort_unstable();
            poly_insert(&mut out, mono, ca * cb);
        }
    }
    out
}

/// Normalized Schur moments of the `[0,1]` Jacobi weight `(1-z)^a z^b`:
/// `m(kappa) = <s_kappa> / <1> = s_kappa(1^p) prod_i (b+p+1-i)_{kappa_i} / (a+b+2p+1-i)_{kappa_i}`.
struct SchurMoments {
    p: u32,
    a_k: Rat,
    b_k: Rat,
    cache: BTreeMap<Partition, Rat>,
}

impl SchurMoments {
    fn new(p: u32, a: &Rat, b: &Rat) -> Self {
        SchurMoments {
            p,
            a_k: a + rint(p as i64),
            b_k: b + rint(p as i64),
            cache: BTreeMap::new(),
        }
    }

    fn moment(&mut self, kappa: &Partition) -> Rat {
        if let Some(v) = self.cache.get(kappa) {
            return v.clone();
        }
        let v = Rat::from_integer(schur_at_ones(kappa, self.p))
            * kaneko_moment_ratio(kappa, &Rat::one(), &self.a_k, &self.b_k);
        self.cache.insert(kappa.clone(), v.clone());
        v
    }
}

/// Series in `x` of `prod_{k in deriv} (d/dt_k) I_p(t)` restricted to the
/// locus, normalized by the `x = 0` value of `I_p` itself. The weight must
/// have `a, b > -1`; at most four derivatives are supported.
pub fn tau_locus_derivative(
    p: u32,
    a: &Rat,
    b: &Rat,
    deriv: &[u32],
    order: usize,
) -> Result<RationalSeries> {
    if p == 0 {
        return Err(Error::Parameter("p must be >= 1".into()));
    }
    if a <= &rint(-1) || b <= &rint(-1) {
        return Err(Error::Parameter(format!(
            "moment integrals need a, b > -1, got a={a} b={b}"
        )));
    }
    if deriv.len() > 4 || deriv.iter().any(|&k| !(1..=3).contains(&k)) {
        return Err(Error::Parameter("derivative multiset limited to {1,2,3}^<=4".into()));
    }
    let mut insertion = PowerSumPoly::new();
    insertion.insert(Vec::new(), Rat::one());
    for &k in deriv {
        insertion = poly_mul(&insertion, &power_sum_shifted(k, p));
    }
    let mut moments = SchurMoments::new(p, a, b);
    // The e^{-px} prefactor from e^{x y} = e^{-px} e^{2x sum z} costs extra
    // reliable orders in the final product, so compute longer internally.
    let internal = order + deriv.iter().map(|&k| k as usize).sum::<usize>() + 1;
    let mut coeffs = vec![Rat::zero(); internal + 1];
    for (mono, coeff) in &insertion {
        // Schur expansion of prod p_j(z) applied to s_empty, then repeatedly
        // multiplied by p_1(z) for each power of x.
        let mut expansion = SchurExpansion::single(Partition::empty());
        for &j in mono {
            expansion = expansion.mul_power_sum(j).prune_rows(p as usize);
        }
        for ell in 0..=internal {
            if !expansion.is_empty() {
                let mut sum = Rat::zero();
                for (kappa, c) in expansion.terms() {
                    sum += c * moments.moment(kappa);
                }
                // (2x)^l / l! from expanding e^{2 x p_1(z)}.
                let scale = pow(&rint(2), ell as i64) / Rat::from_integer(factorial(ell as u64));
                coeffs[ell] += coeff * sum * scale;
            }
            if ell < internal {
                expansion = expansion.mul_power_sum(1).prune_rows(p as usize);
            }
        }
    }
    let raw = RationalSeries::new(coeffs);
    // Restore the e^{-px} prefactor.
    let exp_minus_px = RationalSeries::new(
        (0..=internal)
            .map(|k| pow(&rint(-(p as i64)), k as i64) / Rat::from_integer(factorial(k as u64)))
            .collect(),
    );
    Ok(raw.mul(&exp_minus_px).truncate(order))
}

/// All locus data needed by the Virasoro and KP residuals: ratios
/// `D_d / D_{}`, i.e. t-derivatives of `log I_p` and its convexity terms.
struct LocusData {
    f1: RationalSeries,
    f2: RationalSeries,
    f3: RationalSeries,
    f11: RationalSeries,
    f1111: RationalSeries,
    f22: RationalSeries,
    f13: RationalSeries,
}

fn locus_data(p: u32, a: &Rat, b: &Rat, order: usize) -> Result<LocusData> {
    let base = tau_locus_derivative(p, a, b, &[], order)?;
    let ratio = |deriv: &[u32]| -> Result<RationalSeries> {
        tau_locus_derivative(p, a, b, deriv, order)?.div(&base)
    };
    // Raw integral ratios G_d / G.
    let g1 = ratio(&[1])?;
    let g2 = ratio(&[2])?;
    let g3 = ratio(&[3])?;
    let g11 = ratio(&[1, 1])?;
    let g111 = ratio(&[1, 1, 1])?;
    let g1111 = ratio(&[1, 1, 1, 1])?;
    let g22 = ratio(&[2, 2])?;
    let g13 = ratio(&[1, 3])?;
    // Log-derivative combinations.
    let f1 = g1.clone();
    let f2 = g2.clone();
    let f3 = g3.clone();
    let f11 = g11.sub(&g1.mul(&g1));
    let f1111 = {
        let a1 = g1111.clone();
        let a2 = g111.mul(&g1).scale(&rint(-4));
        let a3 = g11.mul(&g11).scale(&rint(-3));
        let a4 = g11.mul(&g1).mul(&g1).scale(&rint(12));
        let a5 = g1.mul(&g1).mul(&g1).mul(&g1).scale(&rint(-6));
        a1.add(&a2).add(&a3).add(&a4).add(&a5)
    };
    let f22 = g22.sub(&g2.mul(&g2));
    let f13 = g13.sub(&g1.mul(&g3));
    Ok(LocusData { f1, f2, f3, f11, f1111, f22, f13 })
}

/// Residual series of the Virasoro constraint `J^(2)_k I_p / I_p` along the
/// locus, `k` in {-1, 0}, for the weight `(1-y)^a (1+y)^b` at beta = 1:
///
/// `k = -1:  x dF/dt2 + sigma_1 dF/dt1 + p (b0 - x)`
/// `k =  0:  x (dF/dt3 - dF/dt1) + b0 dF/dt1 + d2F/dt1^2 + sigma_2 dF/dt2
///           + (dF/dt1)^2 - p(sigma_1 - b1)/2`
///
/// with `b0 = a - b`, `b1 = a + b`, `sigma_i = (2p - i - 1) + i + 1 + b1`.
pub fn virasoro_residual(k: i32, p: u32, a: &Rat, b: &Rat, order: usize) -> Result<RationalSeries> {
    if k != -1 && k != 0 {
        return Err(Error::Parameter(format!("only k = -1 and k = 0 are defined, got {k}")));
    }
    let data = locus_data(p, a, b, order + 1)?;
    let b0 = a - b;
    let b1 = a + b;
    let sigma = |i: i64| rint(2 * p as i64 - i - 1) + rint(i + 1) + &b1;
    let x = RationalSeries::poly(vec![Rat::zero(), Rat::one()]);
    let res = if k == -1 {
        let linear = RationalSeries::poly(vec![rint(p as i64) * &b0, rint(-(p as i64))]);
        x.mul(&data.f2).add(&data.f1.scale(&sigma(1))).add(&linear)
    } else {
        let convexity = data.f11.add(&data.f1.mul(&data.f1)); // G11 / G
        let constant = RationalSeries::poly(vec![rint(-(p as i64)) * (sigma(1) - &b1) / rint(2)]);
        x.mul(&data.f3.sub(&data.f1))
            .add(&data.f1.scale(&b0))
            .add(&convexity)
            .add(&data.f2.scale(&sigma(2)))
            .add(&constant)
    };
    Ok(res.truncate(order.min(res.order())))
}

/// Residual series of the first KP equation for `F = log I_p` along the
/// locus (beta = 1, right side zero):
/// `(d1^4 + 3 d2^2 - 4 d1 d3) F + 6 (d1^2 F)^2`.
pub fn kp_residual(p: u32, a: &Rat, b: &Rat, order: usize) -> Result<RationalSeries> {
    if p % 2 != 0 || p == 0 {
        return Err(Error::Parameter(format!("KP residual needs even p >= 2, got {p}")));
    }
    let data = locus_data(p, a, b, order + 4)?;
    let res = data
        .f1111
        .add(&data.f22.scale(&rint(3)))
        .add(&data.f13.scale(&rint(-4)))
        .add(&data.f11.mul(&data.f11).scale(&rint(6)));
    Ok(res.truncate(order.min(res.order())))
}
