//! Truncated power series with arbitrary-precision rational coefficients.
//!
//! A series knows the highest index through which its coefficients are
//! reliable (`order`). Exact polynomials (ODE coefficient polynomials and the
//! like) carry `exact = true`, meaning every coefficient beyond the stored
//! ones is genuinely zero; products against them lose no order.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{rint, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Rat>,
    exact: bool,
}

impl RationalSeries {
    /// Series with the given coefficients `c_0 .. c_N`, reliable through `N`.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        RationalSeries { coeffs, exact: false }
    }

    /// An exact polynomial: all omitted coefficients are zero.
    pub fn poly(coeffs: Vec<Rat>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![Rat::zero()] } else { coeffs };
        RationalSeries { coeffs, exact: true }
    }

    pub fn zero(order: usize) -> Self {
        RationalSeries::new(vec![Rat::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// The polynomial `c x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        RationalSeries::poly(coeffs)
    }

    /// Highest reliable coefficient index.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Coefficient of `x^k`. For inexact series, `k` must not exceed the
    /// reliable order; for exact polynomials higher coefficients are zero.
    pub fn coeff(&self, k: usize) -> &Rat {
        if k < self.coeffs.len() {
            &self.coeffs[k]
        } else {
            assert!(self.exact, "coefficient {k} beyond reliable order {}", self.order());
            static_zero()
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Smallest index with a nonzero coefficient; `order + 1` if all stored
    /// coefficients vanish.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero_through_order(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// First `(index, coefficient)` with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c))
    }

    /// Restricts to reliable order `n` (a no-op when already shorter, unless
    /// exact, in which case zeros are materialized).
    pub fn truncate(&self, n: usize) -> RationalSeries {
        let mut coeffs: Vec<Rat> = self.coeffs.iter().take(n + 1).cloned().collect();
        if self.exact {
            while coeffs.len() < n + 1 {
                coeffs.push(Rat::zero());
            }
        }
        RationalSeries { coeffs, exact: self.exact && self.coeffs.len() <= n + 1 }
    }

    fn order_or_inf(&self) -> usize {
        if self.exact {
            usize::MAX
        } else {
            self.order()
        }
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalSeries) -> RationalSeries {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &RationalSeries, f: impl Fn(&Rat, &Rat) -> Rat) -> RationalSeries {
        let order = self.order_or_inf().min(other.order_or_inf());
        let exact = self.exact && other.exact;
        let len = if order == usize::MAX {
            self.coeffs.len().max(other.coeffs.len())
        } else {
            order + 1
        };
        let coeffs = (0..len).map(|k| f(self.coeff_or_zero(k), other.coeff_or_zero(k))).collect();
        RationalSeries { coeffs, exact }
    }

    fn coeff_or_zero(&self, k: usize) -> &Rat {
        if k < self.coeffs.len() {
            &self.coeffs[k]
        } else {
            static_zero()
        }
    }

    pub fn neg(&self) -> RationalSeries {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            exact: self.exact,
        }
    }

    pub fn scale(&self, c: &Rat) -> RationalSeries {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            exact: self.exact,
        }
    }

    /// Product, truncated to the honestly-known order:
    /// `min(order_f + val_g, order_g + val_f)` (exact polynomials do not
    /// limit the order).
    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        let of = self.order_or_inf();
        let og = other.order_or_inf();
        let order = if self.exact && other.exact {
            self.order() + other.order()
        } else {
            let a = of.saturating_add(other.valuation());
            let b = og.saturating_add(self.valuation());
            a.min(b)
        };
        let len = order.saturating_add(1).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        RationalSeries { coeffs, exact: self.exact && other.exact }
    }

    /// Termwise derivative; loses one order of reliability.
    pub fn derivative(&self) -> RationalSeries {
        if self.coeffs.len() == 1 {
            return RationalSeries { coeffs: vec![Rat::zero()], exact: self.exact };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rint(k as i64))
            .collect();
        RationalSeries { coeffs, exact: self.exact }
    }

    /// Termwise antiderivative with constant term 0; gains one order.
    pub fn integrate(&self) -> RationalSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rint(k as i64 + 1));
        }
        RationalSeries { coeffs, exact: false }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> RationalSeries {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RationalSeries { coeffs, exact: self.exact }
    }

    /// Division; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &RationalSeries) -> Result<RationalSeries> {
        if other.coeffs[0].is_zero() {
            return Err(Error::Series("division by series with zero constant term".into()));
        }
        let order = self.order_or_inf().min(other.order_or_inf());
        let order = if order == usize::MAX {
            // Two exact polynomials: keep enough terms to be useful downstream.
            self.order().max(other.order()) + 16
        } else {
            order
        };
        let inv0 = other.coeffs[0].recip();
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeff_or_zero(k).clone();
            for j in 0..k {
                let g = other.coeff_or_zero(k - j);
                if !g.is_zero() {
                    acc -= &coeffs[j] * g;
                }
            }
            coeffs.push(acc * &inv0);
        }
        Ok(RationalSeries { coeffs, exact: false })
    }

    /// `log(f/f_0)` for `f` with nonzero constant term (log-derivative gauge:
    /// the constant is normalized away). Preserves the reliable order.
    pub fn log_normalized(&self) -> Result<RationalSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Series("log of series with zero constant term".into()));
        }
        // (log f)' = f'/f, integrated termwise.
        let ratio = self.derivative().div(self)?;
        Ok(ratio.integrate().truncate(self.order()))
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<RationalSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("exp needs zero constant term".into()));
        }
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = Rat::one();
        for k in 1..=order {
            let mut acc = Rat::zero();
            for j in 1..=k {
                let fj = self.coeff_or_zero(j);
                if !fj.is_zero() {
                    acc += rint(j as i64) * fj * &coeffs[k - j];
                }
            }
            coeffs[k] = acc / rint(k as i64);
        }
        Ok(RationalSeries { coeffs, exact: false })
    }

    /// Exact evaluation at a rational point (uses all stored coefficients).
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::rat::to_f64(c);
        }
        acc
    }
}

fn static_zero() -> &'static Rat {
    use std::sync::OnceLock;
    static ZERO: OnceLock<Rat> = OnceLock::new();
    ZERO.get_or_init(Rat::zero)
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]{}", if self.exact { " (exact)" } else { "" })
    }
}

/// An integral series together with its log-derivative data:
/// `h = (log I)'` and `u = p(n-p) - p x + x h(x)`.
#[derive(Clone, Debug)]
pub struct SeriesBundle {
    pub integral: RationalSeries,
    pub log_integral: RationalSeries,
    pub h: RationalSeries,
    pub u: RationalSeries,
}

/// Builds the log-derivative bundle from an integral series with nonzero
/// constant term. `u(0) = p(n-p)` always holds by construction.
pub fn build_bundle(series: &RationalSeries, p: &Rat, n: &Rat) -> Result<SeriesBundle> {
    if series.coeff(0).is_zero() {
        return Err(Error::Series("bundle needs nonzero constant term".into()));
    }
    let log_integral = series.log_normalized()?;
    let h = log_integral.derivative();
    let pn = p * (n - p);
    let linear = RationalSeries::poly(vec![pn, -p.clone()]);
    let u = linear.add(&h.shift(1));
    Ok(SeriesBundle {
        integral: series.clone(),
        log_integral,
        h,
        u,
    })
}
