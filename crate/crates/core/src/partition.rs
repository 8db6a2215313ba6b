//! Partitions (Young diagrams): enumeration, hook lengths, tableau counts,
//! Schur specializations at `1^k`, generalized Pochhammer symbols and the
//! hook-quotient formulas for partitions containing a rectangle.
//!
//! Cells are addressed 1-based as `(i, j)` = (row, column). The hook length
//! of the cell is `h_{ij} = lambda_i + lambda^T_j - i - j + 1`.

use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{factorial, rint, rising, Rat};

/// An integer partition: strictly positive, non-increasing parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Panics if the parts
    /// increase or contain an interior zero.
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "partition parts must be positive and non-increasing: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of (positive) parts, i.e. the first column length.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// `lambda_i` with 1-based `i`; 0 beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// `|lambda|`, the sum of the parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Dual (conjugate) partition, computed by column counting.
    pub fn dual(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut dual = Vec::with_capacity(cols);
        for j in 1..=cols {
            dual.push(self.parts.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Partition { parts: dual }
    }

    /// True when the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.rows()).all(|i| self.part(i) >= other.part(i))
    }

    /// Cells of the diagram as 1-based `(row, column)` pairs.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// Hook length of cell `(i, j)`; the cell must lie in the diagram.
    pub fn hook_len(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i >= 1 && j >= 1 && self.part(i) as usize >= j);
        let col_len = self.parts.iter().filter(|&&p| p as usize >= j).count() as u32;
        self.part(i) + col_len - i as u32 - j as u32 + 1
    }

    /// `lambda + (c)^p`: pads the first `p` rows by `c` columns. Requires
    /// `lambda` to have at most `p` rows.
    pub fn pad_rectangle(&self, c: u32, p: usize) -> Partition {
        assert!(self.rows() <= p, "padding needs lambda_1^T <= p");
        let parts = (1..=p).map(|i| self.part(i) + c).collect();
        Partition::new(parts)
    }

    /// The rectangle `(w)^h`.
    pub fn rectangle(w: u32, h: usize) -> Partition {
        if w == 0 || h == 0 {
            Partition::empty()
        } else {
            Partition {
                parts: vec![w; h],
            }
        }
    }

    /// All partitions of `weight`, optionally restricted to first-column
    /// length `<= max_column`, in reverse-lexicographic order. The order is
    /// deterministic: `(n)` first, `(1^n)` last.
    pub fn enumerate(weight: u64, max_column: Option<u32>) -> Vec<Partition> {
        let max_rows = max_column.map(|c| c as u64).unwrap_or(weight.max(1));
        let mut out = Vec::new();
        let mut stack = Vec::new();
        descend(weight, weight, max_rows, &mut stack, &mut out);
        out
    }
}

fn descend(rest: u64, max_part: u64, rows_left: u64, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    if rows_left == 0 {
        return;
    }
    // Largest feasible next part first gives reverse-lexicographic order.
    let hi = rest.min(max_part);
    // The remaining weight must fit in the remaining rows.
    let lo = rest.div_ceil(rows_left);
    if lo > hi {
        return;
    }
    for part in (lo..=hi).rev() {
        stack.push(part as u32);
        descend(rest - part, part, rows_left - 1, stack, out);
        stack.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Product of all hook lengths of `lambda`; 1 for the empty partition.
pub fn hook_product(lambda: &Partition) -> BigInt {
    let dual = lambda.dual();
    let mut acc = BigInt::one();
    for (i, j) in lambda.cells() {
        let h = lambda.part(i) + dual.part(j) - i as u32 - j as u32 + 1;
        acc *= BigInt::from(h);
    }
    acc
}

/// `f^lambda = |lambda|! / h^lambda`, the number of standard Young tableaux.
pub fn standard_tableau_count(lambda: &Partition) -> BigInt {
    let num = factorial(lambda.weight());
    let den = hook_product(lambda);
    let (q, r) = num::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero());
    q
}

/// `s_lambda(1^k)`, the number of semi-standard tableaux with entries `<= k`,
/// via the hook-content formula. Returns 0 when `k < lambda_1^T`.
pub fn schur_at_ones(lambda: &Partition, k: u32) -> BigInt {
    if (lambda.rows() as u32) > k {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for (i, j) in lambda.cells() {
        num *= BigInt::from(j as i64 - i as i64 + k as i64);
    }
    let den = hook_product(lambda);
    let (q, r) = num::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero(), "hook-content product not divisible");
    q
}

/// Generalized Pochhammer symbol with parameter `alpha`:
/// `(a)_lambda^(alpha) = prod_i (a + (1-i)/alpha)_{lambda_i}`,
/// the per-row shift being `1/alpha = beta`. Empty partition gives 1.
pub fn gen_pochhammer(a: &Rat, lambda: &Partition, alpha: &Rat) -> Rat {
    assert!(alpha.is_positive(), "alpha must be positive");
    let beta = alpha.recip();
    let mut acc = Rat::one();
    for (i0, &part) in lambda.parts().iter().enumerate() {
        let shift = rint(-(i0 as i64)) * &beta;
        acc *= rising(&(a + shift), part as u64);
    }
    acc
}

/// `(a)_lambda = (a)_lambda^(1)`, the alpha = 1 specialization.
pub fn poch1(a: &Rat, lambda: &Partition) -> Rat {
    gen_pochhammer(a, lambda, &Rat::one())
}

/// Product of the hooks of `lambda` over the vertical strip
/// `n - q < j <= n - p` (all rows). Requires `lambda` to contain the
/// rectangle `(n-p)^p` and `p <= q < n`; the strip is empty when `q == p`.
pub fn strip_hook_product(lambda: &Partition, n: u32, p: u32, q: u32) -> Result<BigInt> {
    if !(p <= q && q < n) {
        return Err(Error::Parameter(format!(
            "strip hooks need p <= q < n, got p={p} q={q} n={n}"
        )));
    }
    let mu = Partition::rectangle(n - p, p as usize);
    if !lambda.contains(&mu) {
        return Err(Error::Parameter(format!(
            "lambda = {lambda} does not contain mu = {mu}"
        )));
    }
    let dual = lambda.dual();
    let mut acc = BigInt::one();
    for (i, j) in lambda.cells() {
        let j32 = j as u32;
        if n - q < j32 && j32 <= n - p {
            let h = lambda.part(i) + dual.part(j) - i as u32 - j as u32 + 1;
            acc *= BigInt::from(h);
        }
    }
    Ok(acc)
}
