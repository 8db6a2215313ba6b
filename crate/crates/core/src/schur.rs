//! Schur-basis expansions and Murnaghan-Nakayama multiplication by power
//! sums, used to take exact `t_k`-derivatives of the matrix-integral tau
//! function along the one-parameter locus.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::partition::Partition;
use crate::rat::Rat;

/// A finite linear combination of Schur functions with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SchurExpansion {
    terms: BTreeMap<Partition, Rat>,
}

impl SchurExpansion {
    pub fn new() -> Self {
        SchurExpansion { terms: BTreeMap::new() }
    }

    /// The expansion `1 * s_lambda`.
    pub fn single(lambda: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, Rat::one());
        SchurExpansion { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rat {
        self.terms.get(lambda).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    /// Multiplies the whole expansion by `p_k` via Murnaghan-Nakayama.
    pub fn mul_power_sum(&self, k: u32) -> SchurExpansion {
        let mut out = SchurExpansion::new();
        for (lam, coeff) in &self.terms {
            for (mu, sign) in murnaghan_nakayama(k, lam).terms {
                out.add_term(mu, coeff * sign);
            }
        }
        out
    }

    /// Drops terms with more than `rows` rows (they vanish in `rows`
    /// variables).
    pub fn prune_rows(&self, rows: usize) -> SchurExpansion {
        SchurExpansion {
            terms: self
                .terms
                .iter()
                .filter(|(lam, _)| lam.rows() <= rows)
                .map(|(lam, c)| (lam.clone(), c.clone()))
                .collect(),
        }
    }
}

/// `p_k * s_lambda` expanded over border-strip additions:
/// `sum_mu (-1)^{ht(mu/lambda)} s_mu` over all `mu` obtained from `lambda`
/// by adding a connected ribbon of `k` cells with no 2x2 square.
///
/// Implemented on beta-numbers: with `B = { lambda_i + m - i }`, adding a
/// k-ribbon replaces some `b in B` by `b + k` not in `B`; the height is the
/// number of elements of `B` strictly between `b` and `b + k`.
pub fn murnaghan_nakayama(k: u32, lambda: &Partition) -> SchurExpansion {
    assert!(k >= 1);
    let m = lambda.rows() + k as usize;
    let betas: Vec<u64> =
        (1..=m).map(|i| lambda.part(i) as u64 + (m - i) as u64).collect();
    let mut out = SchurExpansion::new();
    for (idx, &b) in betas.iter().enumerate() {
        let target = b + k as u64;
        if betas.contains(&target) {
            continue;
        }
        let height = betas.iter().filter(|&&x| b < x && x < target).count();
        let mut new_betas = betas.clone();
        new_betas[idx] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &nb)| (nb - (m - 1 - i) as u64) as u32)
            .collect();
        let sign = if height % 2 == 0 { Rat::one() } else { -Rat::one() };
        out.add_term(Partition::new(parts), sign);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::standard_tableau_count;
    use crate::rat::rint;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn small_expansions() {
        let e = murnaghan_nakayama(1, &Partition::empty());
        assert_eq!(e.coefficient(&p(&[1])), Rat::one());
        assert_eq!(e.len(), 1);

        // p_2 = s_(2) - s_(1,1)
        let e = murnaghan_nakayama(2, &Partition::empty());
        assert_eq!(e.coefficient(&p(&[2])), Rat::one());
        assert_eq!(e.coefficient(&p(&[1, 1])), -Rat::one());
        assert_eq!(e.len(), 2);

        // p_1 s_(1) = s_(2) + s_(1,1)  (Pieri)
        let e = murnaghan_nakayama(1, &p(&[1]));
        assert_eq!(e.coefficient(&p(&[2])), Rat::one());
        assert_eq!(e.coefficient(&p(&[1, 1])), Rat::one());

        // p_3 = s_(3) - s_(2,1) + s_(1,1,1)
        let e = murnaghan_nakayama(3, &Partition::empty());
        assert_eq!(e.coefficient(&p(&[3])), Rat::one());
        assert_eq!(e.coefficient(&p(&[2, 1])), -Rat::one());
        assert_eq!(e.coefficient(&p(&[1, 1, 1])), Rat::one());
    }

    #[test]
    fn degree_is_conserved() {
        for w in 0..=5u64 {
            for lam in Partition::enumerate(w, None) {
                for k in 1..=4u32 {
                    for (mu, _) in murnaghan_nakayama(k, &lam).terms() {
                        assert_eq!(mu.weight(), w + k as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn iterated_p1_gives_tableau_counts() {
        // p_1^n = sum_lambda f^lambda s_lambda.
        for n in 0..=6u64 {
            let mut e = SchurExpansion::single(Partition::empty());
            for _ in 0..n {
                e = e.mul_power_sum(1);
            }
            for lam in Partition::enumerate(n, None) {
                assert_eq!(
                    e.coefficient(&lam),
                    Rat::from_integer(standard_tableau_count(&lam)),
                    "lambda = {lam}"
                );
            }
        }
    }

    #[test]
    fn power_sum_products_commute() {
        // p_2 p_3 s_lambda = p_3 p_2 s_lambda.
        for w in 0..=4u64 {
            for lam in Partition::enumerate(w, None) {
                let a = SchurExpansion::single(lam.clone()).mul_power_sum(2).mul_power_sum(3);
                let b = SchurExpansion::single(lam).mul_power_sum(3).mul_power_sum(2);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn newton_identity_weight_two() {
        // p_1^2 = p_2 + 2 e_2 translates to s_(2) + s_(1,1) coefficients (1,1)
        // vs p_2 = (1,-1): p_1^2 - p_2 = 2 s_(1,1) ... quick concrete check.
        let sq = SchurExpansion::single(Partition::empty()).mul_power_sum(1).mul_power_sum(1);
        let two = murnaghan_nakayama(2, &Partition::empty());
        assert_eq!(sq.coefficient(&p(&[1, 1])) - two.coefficient(&p(&[1, 1])), rint(2));
        assert_eq!(sq.coefficient(&p(&[2])) - two.coefficient(&p(&[2])), Rat::zero());
    }
}
