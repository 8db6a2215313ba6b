//! Exact series residuals for the differential equations: the Painleve V
//! equation and its first integral for the hook-expectation generating
//! function, the beta-dependent inductive equations for the Grassmannian
//! integral, the non-integer-parameter Painleve V for the restricted
//! hypergeometric function, and the Laguerre/Jacobi inductive ODEs.
//!
//! Ratio right-hand sides (`I_{p-2} I_{p+2} / I_p^2` and friends) are handled
//! by clearing denominators, so a check is always a single series that must
//! vanish identically through its effective order.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gamma::{kaneko_empty_constant, laguerre_full_constant};
use crate::hyper::{
    grassmannian_integral_series, hyper2f1_restricted, jacobi_prob_series, laguerre_prob_series,
    ScaledIntegralSeries,
};
use crate::jack::EnsembleSpec;
use crate::rat::{pow, rat, rint, Rat};
use crate::series::RationalSeries;

/// Outcome of one residual check. `pass` holds exactly when every
/// coefficient of `residual` through `effective_order` is zero.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub check_name: String,
    pub params: String,
    pub order: usize,
    pub effective_order: usize,
    pub residual: RationalSeries,
    pub pass: bool,
    pub first_nonzero: Option<(usize, Rat)>,
    pub note: Option<String>,
}

impl ResidualReport {
    fn from_series(
        check_name: &str,
        params: String,
        order: usize,
        effective_order: usize,
        residual: &RationalSeries,
    ) -> Self {
        let truncated = residual.truncate(effective_order.min(residual.order()));
        let first_nonzero = truncated.first_nonzero().map(|(k, v)| (k, v.clone()));
        ResidualReport {
            check_name: check_name.to_string(),
            params,
            order,
            effective_order,
            pass: first_nonzero.is_none(),
            residual: truncated,
            first_nonzero,
            note: None,
        }
    }

    /// Largest absolute residual coefficient, for reporting.
    pub fn worst_residual(&self) -> Rat {
        self.residual
            .coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

/// Painleve V coefficient polynomials for the hook-expectation form:
/// `4Q = -x^2 + 2(n + 2(p-q)) x - (n-2p)^2`, `2R = p(p-q)(x + n - 2p)`.
fn painleve_qr(p: &Rat, q: &Rat, n: &Rat) -> (RationalSeries, RationalSeries) {
    let quarter = rat(1, 4);
    let qq = RationalSeries::poly(vec![
        -pow(&(n - rint(2) * p), 2) * &quarter,
        (n + rint(2) * (p - q)) * rat(1, 2),
        -quarter.clone(),
    ]);
    let half = rat(1, 2);
    let rr = RationalSeries::poly(vec![
        p * (p - q) * (n - rint(2) * p) * &half,
        p * (p - q) * &half,
    ]);
    (qq, rr)
}

/// Residual of `x^2 u''' + x u'' + 6 x u'^2 - 4 u u' + 4 Q u' - 2 Q' u + 2R`
/// for a series `u` known to order `N`; effective order `N - 3`.
pub fn painleve_v_residual(u: &RationalSeries, p: &Rat, q: &Rat, n: &Rat) -> ResidualReport {
    let order = u.order();
    let (qq, rr) = painleve_qr(p, q, n);
    let u1 = u.derivative();
    let u2 = u1.derivative();
    let u3 = u2.derivative();
    let res = u3
        .shift(2)
        .add(&u2.shift(1))
        .add(&u1.mul(&u1).shift(1).scale(&rint(6)))
        .add(&u.mul(&u1).scale(&rint(-4)))
        .add(&qq.mul(&u1).scale(&rint(4)))
        .add(&qq.derivative().mul(u).scale(&rint(-2)))
        .add(&rr.scale(&rint(2)));
    ResidualReport::from_series(
        "painleve-v",
        format!("p={p} q={q} n={n} N={order}"),
        order,
        order.saturating_sub(3),
        &res,
    )
}

/// Residual of the first integral, cleared by `x^2`:
/// `x^2 u''^2 + 4[(x u'^2 + Q u' + R) u' - (u'^2 + Q' u' + R') u + Q'' u^2 / 2
///  - p^2 (q-p)^2 / 4]`; effective order `N - 2`.
pub fn first_integral_residual(u: &RationalSeries, p: &Rat, q: &Rat, n: &Rat) -> ResidualReport {
    let order = u.order();
    let (qq, rr) = painleve_qr(p, q, n);
    let u1 = u.derivative();
    let u2 = u1.derivative();
    let u1sq = u1.mul(&u1);
    let bracket = u1sq
        .shift(1)
        .add(&qq.mul(&u1))
        .add(&rr)
        .mul(&u1)
        .add(
            &u1sq
                .add(&qq.derivative().mul(&u1))
                .add(&rr.derivative())
                .mul(u)
                .neg(),
        )
        .add(&qq.derivative().derivative().mul(&u.mul(u)).scale(&rat(1, 2)))
        .add(&RationalSeries::poly(vec![-(p * p * (q - p) * (q - p)) * rat(1, 4)]));
    let res = u2.mul(&u2).shift(2).add(&bracket.scale(&rint(4)));
    ResidualReport::from_series(
        "first-integral",
        format!("p={p} q={q} n={n} N={order}"),
        order,
        order.saturating_sub(2),
        &res,
    )
}

/// Table of `P0, P1, P2` for the inductive H-equation, by beta.
/// `r = pq`, `s = n - 2p - 2q`.
fn inductive_polys(spec: &EnsembleSpec) -> Result<(RationalSeries, RationalSeries, RationalSeries, bool)> {
    let r = &spec.p * &spec.q;
    let s = &spec.n - rint(2) * &spec.p - rint(2) * &spec.q;
    let n = &spec.n;
    let (p0, p1, p2, delta1) = if spec.beta.is_one() {
        (
            vec![rint(4) * n * n - rint(8), rint(-8) * &s, rint(4)],
            vec![rint(-4) * n * n, rint(4) * &s],
            vec![rint(4) * &r * n, rint(4) * &r],
            true,
        )
    } else if spec.beta == rat(1, 2) {
        (
            vec![pow(&(n + rint(2)), 2) - rint(8), rint(-4) * &s, rint(4)],
            vec![-n * (n - rint(2)), rint(2) * &s],
            vec![&r * (n - rint(2)), rint(2) * &r],
            false,
        )
    } else if spec.beta == rint(2) {
        (
            vec![rint(4) * (pow(&(n - rint(1)), 2) - rint(2)), rint(-4) * &s, rint(1)],
            vec![rint(-4) * n * (n + rint(1)), rint(2) * &s],
            vec![rint(4) * &r * (n + rint(1)), rint(2) * &r],
            false,
        )
    } else {
        return Err(Error::Parameter(format!(
            "inductive equation defined for beta in {{1/2, 1, 2}}, got {}",
            spec.beta
        )));
    };
    Ok((
        RationalSeries::poly(p0),
        RationalSeries::poly(p1),
        RationalSeries::poly(p2),
        delta1,
    ))
}

/// Left side `4(y^3 H''' + 6 y^3 H'^2 + (1+d)(2 y^2 H'' + 4 y^2 H H' + y H^2))
/// - y P0 H' + P1 H + P2` of the inductive equation.
fn inductive_lhs(
    h: &RationalSeries,
    p0: &RationalSeries,
    p1: &RationalSeries,
    p2: &RationalSeries,
    delta1: bool,
) -> RationalSeries {
    let h1 = h.derivative();
    let h2 = h1.derivative();
    let h3 = h2.derivative();
    let one_plus_delta = if delta1 { rint(2) } else { rint(1) };
    let cubic = h3.shift(3).add(&h1.mul(&h1).shift(3).scale(&rint(6)));
    let quadratic = h2
        .shift(2)
        .scale(&rint(2))
        .add(&h.mul(&h1).shift(2).scale(&rint(4)))
        .add(&h.mul(h).shift(1));
    cubic
        .add(&quadratic.scale(&one_plus_delta))
        .scale(&rint(4))
        .add(&p0.mul(&h1).shift(1).neg())
        .add(&p1.mul(h))
        .add(p2)
}

/// Residual of the Theorem 6.1 inductive equation for the Grassmannian
/// integral at `spec`, denominators cleared by `I_p^2`. For beta = 1 the
/// right side is zero; for beta = 1/2 and 2 it is the printed prefactor
/// times `y^3 I_{p-2} I_{p+2} / I_p^2` (resp. `I_{p-1} I_{p+1}`), with every
/// normalization constant reduced exactly. A failing residual is
/// re-diagnosed against a fitted scalar prefactor, recorded in `note`.
pub fn theorem61_residual(spec: &EnsembleSpec, order: usize) -> Result<ResidualReport> {
    spec.validate_grassmannian()?;
    let p = spec.integer_p().expect("validated");
    let internal = order + 4;
    let (p0, p1, p2, delta1) = inductive_polys(spec)?;
    let (constant, series) = grassmannian_integral_series(spec, internal)?;
    let h = series.log_normalized()?.derivative();
    let lhs = inductive_lhs(&h, &p0, &p1, &p2, delta1);
    let params = format!(
        "beta={} p={} q={} n={} N={order}",
        spec.beta, spec.p, spec.q, spec.n
    );
    if spec.beta.is_one() {
        let mut report = ResidualReport::from_series(
            "inductive-h",
            params,
            order,
            order.saturating_sub(3),
            &lhs,
        );
        report.note = Some("beta=1: right side zero (Painleve V)".into());
        return Ok(report);
    }

    // Shifted integrals with the same scalar weight.
    let (dn, dq, dp, prefactor) = if spec.beta == rat(1, 2) {
        if p % 2 != 0 || p < 2 {
            return Err(Error::Parameter(format!(
                "beta = 1/2 inductive equation needs even p >= 2, got p = {p}"
            )));
        }
        let pr = &spec.p;
        (
            4i64,
            2i64,
            2i64,
            rat(3, 16) * pr * (pr - rint(1)) / ((pr + rint(1)) * (pr + rint(2))),
        )
    } else {
        let pr = &spec.p;
        (2, 1, 1, rat(3, 256) * pr / (pr + rint(1)))
    };
    let shifted = |sign: i64| -> Result<(crate::gamma::SelbergConstant, RationalSeries)> {
        let p_new = spec.p.clone() + rint(sign * dp);
        if p_new.is_zero() {
            return Ok((crate::gamma::SelbergConstant::one(), RationalSeries::one(internal)));
        }
        let shifted_spec = EnsembleSpec::new(
            spec.beta.clone(),
            spec.n.clone() + rint(sign * dn),
            p_new,
            spec.q.clone() + rint(sign * dq),
        );
        grassmannian_integral_series(&shifted_spec, internal)
    };
    let (c_minus, s_minus) = shifted(-1)?;
    let (c_plus, s_plus) = shifted(1)?;
    // Constant ratio c_- c_+ / c^2 is rational: the sqrt(pi) powers cancel.
    let c_ratio = {
        let num = &c_minus.rational * &c_plus.rational;
        let den = &constant.rational * &constant.rational;
        if c_minus.sqrt_pi_power + c_plus.sqrt_pi_power != 2 * constant.sqrt_pi_power {
            return Err(Error::NonRationalGamma(
                "constant ratio in inductive right side is not rational".into(),
            ));
        }
        num / den
    };
    let structural = s_minus.mul(&s_plus).shift(3);
    let rhs = structural.scale(&(prefactor.clone() * &c_ratio));
    let residual = lhs.mul(&series.mul(&series)).sub(&rhs);
    let mut report = ResidualReport::from_series(
        "inductive-h",
        params,
        order,
        order.saturating_sub(3),
        &residual,
    );
    if !report.pass {
        // Diagnose: does some other scalar prefactor close the identity?
        let cleared = lhs.mul(&series.mul(&series));
        if let Some(fit) = fit_scalar(&cleared, &structural, report.effective_order) {
            let working = &fit / &c_ratio;
            let ratio_to_printed = &working / &prefactor;
            report.note = Some(format!(
                "printed prefactor {prefactor} fails; residual vanishes with prefactor \
                 {working} ({ratio_to_printed} times the printed one)"
            ));
        }
    }
    Ok(report)
}

/// Finds `c` with `lhs == c * rhs` through `order`, if one exists.
fn fit_scalar(lhs: &RationalSeries, rhs: &RationalSeries, order: usize) -> Option<Rat> {
    let order = order.min(lhs.order()).min(rhs.order());
    let k = (0..=order).find(|&k| !rhs.coeff(k).is_zero())?;
    let c = lhs.coeff(k) / rhs.coeff(k);
    let diff = lhs.sub(&rhs.scale(&c)).truncate(order);
    diff.is_zero_through_order().then_some(c)
}

/// Residual of the Painleve V equation for
/// `H = d/dx log 2F1^(1)(p,q;n;.)` restricted, valid for non-integer
/// parameters (all-partition summation).
pub fn hypergeom_painleve_residual(p: &Rat, q: &Rat, n: &Rat, order: usize) -> Result<ResidualReport> {
    let spec = EnsembleSpec::new(Rat::one(), n.clone(), p.clone(), q.clone());
    let internal = order + 4;
    let series = hyper2f1_restricted(&spec, internal)?;
    let h = series.log_normalized()?.derivative();
    let (p0, p1, p2, _) = inductive_polys(&spec)?;
    let res = inductive_lhs(&h, &p0, &p1, &p2, true);
    Ok(ResidualReport::from_series(
        "hypergeom-painleve",
        format!("p={p} q={q} n={n} N={order}"),
        order,
        order.saturating_sub(3),
        &res,
    ))
}

fn laguerre_f_series(out: &ScaledIntegralSeries) -> Result<RationalSeries> {
    // f = x d/dx log(x^gamma S(x)) = gamma + x S'/S.
    let ratio = out.series.derivative().div(&out.series)?;
    Ok(RationalSeries::poly(vec![out.gamma_exponent.clone()]).add(&ratio.shift(1)))
}

/// Residual of the Corollary-7.2 inductive equation for the Wishart
/// largest-eigenvalue law (`a = p/2`, `beta = 1/2`):
///
/// `3/4 p(p-1)n(n-1) (P_{n+2,p+2} P_{n-2,p-2} / P_{n,p}^2 - 1)
///  - (3f + b^2 x^2 - b x Q0 - 3 Q1) f
///  = x^3 f''' - x^2 f'' + 6 x^2 f'^2 - x (8f + (bx - Q0)^2 - 4 Q1) f'`
///
/// with `Q0 = (n+p-1)/2`, `4 Q1 = (n-1)(4p+1) - p` and `P_{2,0} := 1`.
pub fn wishart_inductive_residual(n: u32, p: u32, b: &Rat, order: usize) -> Result<ResidualReport> {
    if p < 2 || n < p {
        return Err(Error::Parameter(format!("need n >= p >= 2, got n={n} p={p}")));
    }
    if b.is_zero() {
        return Err(Error::Parameter(
            "the inductive Wishart equation needs b != 0 (the ratio constant scales by b^4)".into(),
        ));
    }
    let beta = rat(1, 2);
    let internal = order + 4;
    let alpha_l = rat(n as i64 - p as i64 - 1, 2);
    let wishart = |nn: u32, pp: u32| -> Result<(ScaledIntegralSeries, crate::gamma::GammaProduct)> {
        if pp == 0 {
            return Ok((
                ScaledIntegralSeries {
                    gamma_exponent: Rat::zero(),
                    constant: crate::gamma::GammaProduct::new(),
                    series: RationalSeries::one(internal),
                },
                crate::gamma::GammaProduct::new(),
            ));
        }
        let a = rat(pp as i64, 2);
        let out = laguerre_prob_series(nn, pp, &beta, &a, b, internal)?;
        let full = laguerre_full_constant(&beta, &alpha_l, pp);
        Ok((out, full))
    };
    let (base, k_base) = wishart(n, p)?;
    let (plus, k_plus) = wishart(n + 2, p + 2)?;
    let (minus, k_minus) = wishart(n - 2, p - 2)?;
    let f = laguerre_f_series(&base)?;
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();

    let q0 = rat(n as i64 + p as i64 - 1, 2);
    let q1 = (rint(n as i64 - 1) * rint(4 * p as i64 + 1) - rint(p as i64)) / rint(4);
    let qw = rat(3, 4) * rint(p as i64) * rint(p as i64 - 1) * rint(n as i64) * rint(n as i64 - 1);

    // P_+ P_- / P^2 = (b x)^4 * C-ratio * S_+ S_- / S^2; the pi powers of the
    // half-integer Gammas cancel only in the combined ratio.
    let c_ratio = plus
        .constant
        .mul(&minus.constant)
        .div(&base.constant.mul(&base.constant))
        .mul(&k_base.mul(&k_base).div(&k_plus.mul(&k_minus)))
        .reduce_rational()?;
    let ratio = plus
        .series
        .mul(&minus.series)
        .div(&base.series.mul(&base.series))?
        .shift(4)
        .scale(&(c_ratio * pow(b, 4)));
    let ratio_term = ratio.sub(&RationalSeries::one(internal)).scale(&qw);

    let bx2 = RationalSeries::poly(vec![Rat::zero(), Rat::zero(), b * b]);
    let bxq0 = RationalSeries::poly(vec![Rat::zero(), b * &q0]);
    let lhs = ratio_term.sub(
        &f.scale(&rint(3))
            .add(&bx2)
            .sub(&bxq0)
            .add(&RationalSeries::poly(vec![rint(-3) * &q1]))
            .mul(&f),
    );
    let bx_minus_q0 = RationalSeries::poly(vec![-q0.clone(), b.clone()]);
    let rhs = f3
        .shift(3)
        .sub(&f2.shift(2))
        .add(&f1.mul(&f1).shift(2).scale(&rint(6)))
        .sub(
            &f.scale(&rint(8))
                .add(&bx_minus_q0.mul(&bx_minus_q0))
                .add(&RationalSeries::poly(vec![rint(-4) * &q1]))
                .mul(&f1)
                .shift(1),
        );
    let residual = lhs.sub(&rhs);
    Ok(ResidualReport::from_series(
        "wishart-inductive",
        format!("n={n} p={p} b={b} N={order}"),
        order,
        order.saturating_sub(3),
        &residual,
    ))
}

/// Residual of the Theorem-7.1 beta = 1 Painleve form for the Laguerre
/// ensemble, `f = x d/dx log P`, weight `e^{-by} y^{a + n - 2p}`:
/// `x^2 f''' + x f'' + 6 x f'^2 - 4 f f' - (2 h f' - h' f)` with
/// `2h = (a + n - 2p - b x)^2 - 4 n b x`. A failing residual is re-diagnosed
/// by solving for the quadratic `h` that closes the identity.
pub fn wishart_painleve_residual(
    n: u32,
    p: u32,
    a: &Rat,
    b: &Rat,
    order: usize,
) -> Result<ResidualReport> {
    if p == 0 || n < p {
        return Err(Error::Parameter(format!("need n >= p >= 1, got n={n} p={p}")));
    }
    let internal = order + 4;
    let out = laguerre_prob_series(n, p, &Rat::one(), a, b, internal)?;
    let f = laguerre_f_series(&out)?;
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    let alpha1 = a + rint(n as i64 - 2 * p as i64);
    // 2h = (alpha1 - b x)^2 - 4 n b x.
    let lin = RationalSeries::poly(vec![alpha1.clone(), -b.clone()]);
    let two_h = lin.mul(&lin).add(&RationalSeries::poly(vec![
        Rat::zero(),
        rint(-4 * n as i64) * b,
    ]));
    let h = two_h.scale(&rat(1, 2));
    let base = f3
        .shift(2)
        .add(&f2.shift(1))
        .add(&f1.mul(&f1).shift(1).scale(&rint(6)))
        .add(&f.mul(&f1).scale(&rint(-4)));
    let residual = base.sub(&h.mul(&f1).scale(&rint(2)).sub(&h.derivative().mul(&f)));
    let mut report = ResidualReport::from_series(
        "wishart-painleve-beta1",
        format!("n={n} p={p} a={a} b={b} N={order}"),
        order,
        order.saturating_sub(3),
        &residual,
    );
    if !report.pass {
        if let Some(hfit) = fit_quadratic_h(&base, &f, &f1, report.effective_order) {
            report.note = Some(format!(
                "printed 2h = (a+n-2p-bx)^2 - 4nbx fails; residual vanishes with 2h = {:?}",
                hfit.scale(&rint(2))
            ));
        }
    }
    Ok(report)
}

/// Solves `base == 2 h f' - h' f` for a quadratic polynomial
/// `h = h0 + h1 x + h2 x^2`, if possible.
fn fit_quadratic_h(
    base: &RationalSeries,
    f: &RationalSeries,
    f1: &RationalSeries,
    order: usize,
) -> Option<RationalSeries> {
    // 2 h f' - h' f is linear in (h0, h1, h2); match coefficients of x^0..x^2
    // and verify the rest.
    let col = |h: &RationalSeries| h.mul(&f1.scale(&rint(2))).sub(&h.derivative().mul(f));
    let cols = [
        col(&RationalSeries::poly(vec![Rat::one()])),
        col(&RationalSeries::poly(vec![Rat::zero(), Rat::one()])),
        col(&RationalSeries::poly(vec![Rat::zero(), Rat::zero(), Rat::one()])),
    ];
    // Solve the 3x3 linear system from the first three coefficients.
    let mut m = [[Rat::zero(), Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero(), Rat::zero()]];
    let mut rhs = [Rat::zero(), Rat::zero(), Rat::zero()];
    for r in 0..3 {
        for (c, colv) in cols.iter().enumerate() {
            m[r][c] = colv.coeff(r).clone();
        }
        rhs[r] = base.coeff(r).clone();
    }
    let sol = solve3(&mut m, &mut rhs)?;
    let h = RationalSeries::poly(sol.to_vec());
    let diff = base.sub(&col(&h)).truncate(order.min(base.order()));
    diff.is_zero_through_order().then_some(h)
}

fn solve3(m: &mut [[Rat; 3]; 3], rhs: &mut [Rat; 3]) -> Option<[Rat; 3]> {
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for r in 0..3 {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in 0..3 {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some([
        &rhs[0] / &m[0][0],
        &rhs[1] / &m[1][1],
        &rhs[2] / &m[2][2],
    ])
}

/// Which Jacobi-ensemble equation to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiVariant {
    /// The beta = 1 third-order equation (7.2.2-style).
    Beta1,
    /// The beta = 1/2 inductive equation linking `P_{n+-4, p+-2, q+-2}`.
    BetaHalfInductive,
}

/// Scalars of the Jacobi-ensemble equations:
/// `b0 = a - b - beta(n-2p+1) + 1`, `b1 = a + b + beta(n-2p+1) - 1`,
/// `r = (2/beta)(b0^2 + (b1+2-2beta)^2)`, `s = (2/beta) b0 (b1+2-2beta)`,
/// `u = (2/beta)(2 beta p + b1 + 2 - 2 beta)(2 beta p + b1)`.
struct JacobiScalars {
    r: Rat,
    s: Rat,
    u: Rat,
}

fn jacobi_scalars(beta: &Rat, n: u32, p: u32, a: &Rat, b: &Rat) -> JacobiScalars {
    let b0 = a - b - beta * rint(n as i64 - 2 * p as i64 + 1) + Rat::one();
    let b1 = a + b + beta * rint(n as i64 - 2 * p as i64 + 1) - Rat::one();
    let two_over_beta = rint(2) / beta;
    let shifted = &b1 + rint(2) - rint(2) * beta;
    let r = &two_over_beta * (&b0 * &b0 + &shifted * &shifted);
    let s = &two_over_beta * &b0 * &shifted;
    let u = &two_over_beta * (rint(2) * beta * rint(p as i64) + &shifted)
        * (rint(2) * beta * rint(p as i64) + &b1);
    JacobiScalars { r, s, u }
}

/// Residual of the canonical-correlation (Jacobi ensemble) ODEs for the
/// density exponents `z^{(q-p-1)/2} (1-z)^{(n-q-p-1)/2}` at beta = 1/2 (and
/// their beta = 1 analogue `z^{q-p} (1-z)^{n-q-p}`). Series run in
/// `t = (x+1)/2`; `f = (1 - x^2) d/dx log P`.
pub fn jacobi_corr_residual(
    n: u32,
    p: u32,
    q: u32,
    order: usize,
    variant: JacobiVariant,
) -> Result<ResidualReport> {
    if n < p + q || p > q || p == 0 {
        return Err(Error::Parameter(format!(
            "need 1 <= p <= q and n >= p + q, got n={n} p={p} q={q}"
        )));
    }
    let internal = order + 4;
    match variant {
        JacobiVariant::Beta1 => {
            let beta = Rat::one();
            let a_w = rint(n as i64 - q as i64 - p as i64);
            let b_w = rint(p as i64 + q as i64 - n as i64);
            let out = jacobi_prob_series(n, p, &beta, &a_w, &b_w, internal)?;
            let f = jacobi_f_series(&out)?;
            let sc = jacobi_scalars(&beta, n, p, &a_w, &b_w);
            let res = jacobi_beta1_equation(&f, &sc);
            Ok(ResidualReport::from_series(
                "jacobi-corr-beta1",
                format!("n={n} p={p} q={q} N={order}"),
                order,
                order.saturating_sub(3),
                &res,
            ))
        }
        JacobiVariant::BetaHalfInductive => {
            if p < 2 {
                return Err(Error::Parameter(format!(
                    "inductive variant needs p >= 2 (P_{{n-4,p-2,q-2}} appears), got p = {p}"
                )));
            }
            let beta = rat(1, 2);
            let a_w = rat(n as i64 - q as i64 - p as i64 - 1, 2);
            let b_w = rat(p as i64 + q as i64 - n as i64, 2);
            let series_at = |nn: u32, pp: u32| -> Result<(ScaledIntegralSeries, crate::gamma::GammaProduct)> {
                if pp == 0 {
                    return Ok((
                        ScaledIntegralSeries {
                            gamma_exponent: Rat::zero(),
                            constant: crate::gamma::GammaProduct::new(),
                            series: RationalSeries::one(internal),
                        },
                        crate::gamma::GammaProduct::new(),
                    ));
                }
                let out = jacobi_prob_series(nn, pp, &beta, &a_w, &b_w, internal)?;
                let alpha_j = &b_w + &beta * rint(nn as i64 - 2 * pp as i64 + 1) - Rat::one();
                let a_full = &a_w + &beta * rint(pp as i64 - 1) + Rat::one();
                let b_full = &alpha_j + &beta * rint(pp as i64 - 1) + Rat::one();
                let full = kaneko_empty_constant(&beta, &a_full, &b_full, pp);
                Ok((out, full))
            };
            let (base, w_base) = series_at(n, p)?;
            let (plus, w_plus) = series_at(n + 4, p + 2)?;
            let (minus, w_minus) = series_at(n - 4, p - 2)?;
            let f = jacobi_f_series(&base)?;
            let sc = jacobi_scalars(&beta, n, p, &a_w, &b_w);
            let c_ratio = plus
                .constant
                .mul(&minus.constant)
                .div(&base.constant.mul(&base.constant))
                .mul(&w_base.mul(&w_base).div(&w_plus.mul(&w_minus)))
                .reduce_rational()?;
            let ratio = plus
                .series
                .mul(&minus.series)
                .div(&base.series.mul(&base.series))?
                .shift(4)
                .scale(&c_ratio);
            let res = jacobi_inductive_equation(&f, &sc, &ratio, internal);
            let mut report = ResidualReport::from_series(
                "jacobi-corr-inductive",
                format!("n={n} p={p} q={q} N={order}"),
                order,
                order.saturating_sub(3),
                &res,
            );
            if report.pass {
                report.note = Some(format!(
                    "uses P_{{{},{},{}}} and P_{{{},{},{}}}",
                    n + 4,
                    p + 2,
                    q + 2,
                    n - 4,
                    p - 2,
                    q.saturating_sub(2)
                ));
            }
            Ok(report)
        }
    }
}

fn jacobi_f_series(out: &ScaledIntegralSeries) -> Result<RationalSeries> {
    // f = (1-x^2) d/dx log(t^gamma S(t)) with x = 2t - 1:
    // f = 2 (1-t) (gamma + t S'/S).
    let ratio = out.series.derivative().div(&out.series)?;
    let inner = RationalSeries::poly(vec![out.gamma_exponent.clone()]).add(&ratio.shift(1));
    let two_one_minus_t = RationalSeries::poly(vec![rint(2), rint(-2)]);
    Ok(two_one_minus_t.mul(&inner))
}

/// `x` and `x^2 - 1` as polynomials in `t` (`x = 2t - 1`).
fn x_polys() -> (RationalSeries, RationalSeries) {
    let x = RationalSeries::poly(vec![rint(-1), rint(2)]);
    let x2m1 = RationalSeries::poly(vec![Rat::zero(), rint(-4), rint(4)]);
    (x, x2m1)
}

/// `2(x^2-1)^2 f''' + 4(x^2-1)(x f'' - 3 f'^2)
///  + (16 x f - u(x^2-1) - 2 s x - r) f' - f (4 f - u x - s)`,
/// with d/dx = (1/2) d/dt.
fn jacobi_beta1_equation(f: &RationalSeries, sc: &JacobiScalars) -> RationalSeries {
    let (x, x2m1) = x_polys();
    let half = rat(1, 2);
    let f1 = f.derivative().scale(&half);
    let f2 = f1.derivative().scale(&half);
    let f3 = f2.derivative().scale(&half);
    let term1 = x2m1.mul(&x2m1).mul(&f3).scale(&rint(2));
    let term2 = x2m1
        .mul(&x.mul(&f2).sub(&f1.mul(&f1).scale(&rint(3))))
        .scale(&rint(4));
    let coeff = f
        .scale(&rint(16))
        .mul(&x)
        .sub(&x2m1.scale(&sc.u))
        .sub(&x.scale(&(rint(2) * &sc.s)))
        .sub(&RationalSeries::poly(vec![sc.r.clone()]));
    let term3 = coeff.mul(&f1);
    let term4 = f
        .mul(
            &f.scale(&rint(4))
                .sub(&x.scale(&sc.u))
                .sub(&RationalSeries::poly(vec![sc.s.clone()])),
        )
        .neg();
    term1.add(&term2).add(&term3).add(&term4)
}

/// The beta = 1/2 inductive equation, brought to one side:
/// `Q (ratio - 1) - RHS(f)` with the right side of (the inductive display)
/// expanded verbatim; `ratio` is the cleared `P_+ P_- / P^2` series in `t`.
fn jacobi_inductive_equation(
    f: &RationalSeries,
    sc: &JacobiScalars,
    ratio: &RationalSeries,
    internal: usize,
) -> RationalSeries {
    let (x, x2m1) = x_polys();
    let half = rat(1, 2);
    let f1 = f.derivative().scale(&half);
    let f2 = f1.derivative().scale(&half);
    let f3 = f2.derivative().scale(&half);
    let (u, s, r) = (&sc.u, &sc.s, &sc.r);
    let q_big = rat(3, 16)
        * (pow(&(s * s - u * r + u * u), 2)
            - rint(4) * (r * s * s - rint(4) * u * s * s - rint(4) * s * s + u * u * r));
    let q1 = rint(3) * s * s - rint(3) * u * r - rint(6) * r + rint(2) * u * u + rint(23) * u
        + rint(24);
    let q2 = rint(3) * u * s * s + rint(9) * s * s - rint(4) * u * u * r + rint(2) * u * r
        + rint(4) * u * u * u
        + rint(10) * u * u;
    let q3 =
        rint(3) * u * s * s + rint(6) * s * s - rint(3) * u * u * r + u * u * u + rint(4) * u * u;
    let q4 = rint(9) * s * s - rint(3) * u * r - rint(6) * r + u * u + rint(22) * u + rint(24);

    // 4(u+1)(x^2-1)^2 ( -u(x^2-1) f''' + (12 f - u x - 3 s) f'' + 6 u (u-1) f'^2 )
    let block1 = {
        let inner = x2m1
            .mul(&f3)
            .scale(&-u.clone())
            .add(
                &f.scale(&rint(12))
                    .sub(&x.scale(u))
                    .sub(&RationalSeries::poly(vec![rint(3) * s]))
                    .mul(&f2),
            )
            .add(&f1.mul(&f1).scale(&(rint(6) * u * (u - rint(1)))));
        x2m1.mul(&x2m1)
            .mul(&inner)
            .scale(&(rint(4) * (u + rint(1))))
    };
    // -(x^2-1) f' ( 24 f (u+3)(2f - s) + 8 f u (5u - 1) x - u(u+1)(u x^2 + 2 s x + 8) + Q2 )
    let block2 = {
        let inner = f
            .mul(&f.scale(&rint(2)).sub(&RationalSeries::poly(vec![s.clone()])))
            .scale(&(rint(24) * (u + rint(3))))
            .add(&f.mul(&x).scale(&(rint(8) * u * (rint(5) * u - rint(1)))))
            .sub(
                &x.mul(&x)
                    .scale(u)
                    .add(&x.scale(&(rint(2) * s)))
                    .add(&RationalSeries::poly(vec![rint(8)]))
                    .scale(&(u * (u + rint(1)))),
            )
            .add(&RationalSeries::poly(vec![q2]));
        x2m1.mul(&f1).mul(&inner).neg()
    };
    // + f ( 48 f^3 + 48 f^2 (u x + 2x - s) + 2 f (8u^2 x^2 + 2u x^2 - 12 u s x - 24 s x + Q4)
    //       - u(u+1) x (3u x^2 + s x - 2u x - 3u) + Q3 x - Q1 s )
    let block3 = {
        let fsq = f.mul(f);
        let t1 = fsq.mul(f).scale(&rint(48));
        let t2 = fsq
            .mul(&x.scale(&(u + rint(2))).sub(&RationalSeries::poly(vec![s.clone()])))
            .scale(&rint(48));
        let t3 = f
            .mul(
                &x.mul(&x)
                    .scale(&(rint(8) * u * u + rint(2) * u))
                    .sub(&x.scale(&(rint(12) * u * s + rint(24) * s)))
                    .add(&RationalSeries::poly(vec![q4])),
            )
            .scale(&rint(2));
        let t4 = x
            .mul(
                &x.mul(&x)
                    .scale(&(rint(3) * u))
                    .add(&x.scale(&(s - rint(2) * u)))
                    .sub(&RationalSeries::poly(vec![rint(3) * u])),
            )
            .scale(&(u * (u + rint(1))))
            .neg();
        let t5 = x.scale(&q3);
        let t6 = RationalSeries::poly(vec![-(&q1 * s)]);
        f.mul(&t1.add(&t2).add(&t3).add(&t4).add(&t5).add(&t6))
    };
    let rhs = block1.add(&block2).add(&block3);
    let lhs = ratio.sub(&RationalSeries::one(internal)).scale(&q_big);
    lhs.sub(&rhs)
}
