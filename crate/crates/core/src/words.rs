//! Words over the alphabet `{1..p}`, RSK row insertion, Greene statistics,
//! and the brute-force side of the hook-strip expectation identity.
//!
//! The enumeration of all `p^l` words is the oracle against which every
//! closed-form partition sum is checked, so it stays deliberately dumb: an
//! odometer over `{1..p}^l`, chunked across workers, with exact rational
//! accumulation.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{hook_product, poch1, standard_tableau_count, strip_hook_product};
use crate::partition::{schur_at_ones, Partition};
use crate::rat::{factorial, rint, Rat};

/// Hard bound on `p^l` for brute-force enumeration.
const ENUMERATION_BOUND: u128 = 100_000_000;

/// A finite word over `{1..p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: u8,
}

impl Word {
    /// Panics if a letter is outside `1..=alphabet`.
    pub fn new(letters: Vec<u8>, alphabet: u8) -> Self {
        assert!(alphabet >= 1);
        assert!(letters.iter().all(|&c| (1..=alphabet).contains(&c)));
        Word { letters, alphabet }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Greene statistics of a word: `d1 = lambda_1^T` and `i_k = lambda_1 + ... + lambda_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreeneStats {
    pub d1: usize,
    pub i: Vec<u64>,
}

/// Shape of the RSK tableau pair under row insertion (weakly increasing rows,
/// strictly increasing columns in the semi-standard tableau).
pub fn rsk_shape(word: &Word) -> Partition {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for &letter in &word.letters {
        let mut bumped = letter;
        let mut placed = false;
        for row in rows.iter_mut() {
            // Leftmost entry strictly greater than the inserted letter.
            let pos = row.partition_point(|&e| e <= bumped);
            if pos == row.len() {
                row.push(bumped);
                placed = true;
                break;
            }
            std::mem::swap(&mut row[pos], &mut bumped);
        }
        if !placed {
            rows.push(vec![bumped]);
        }
    }
    Partition::new(rows.iter().map(|r| r.len() as u32).collect())
}

/// Greene statistics, read off the RSK shape. `i` has one entry per letter of
/// the alphabet.
pub fn greene_stats(word: &Word) -> GreeneStats {
    let shape = rsk_shape(word);
    let d1 = shape.rows();
    let mut i = Vec::with_capacity(word.alphabet as usize);
    let mut acc = 0u64;
    for k in 1..=word.alphabet as usize {
        acc += shape.part(k) as u64;
        i.push(acc);
    }
    GreeneStats { d1, i }
}

fn checked_word_count(ell: u32, p: u8) -> Result<u64> {
    let mut total: u128 = 1;
    for _ in 0..ell {
        total *= p as u128;
        if total > ENUMERATION_BOUND {
            return Err(Error::EnumerationBound(format!(
                "p^l = {p}^{ell} exceeds {ENUMERATION_BOUND}"
            )));
        }
    }
    Ok(total as u64)
}

fn decode_word(mut index: u64, ell: u32, p: u8) -> Vec<u8> {
    let mut letters = vec![1u8; ell as usize];
    for slot in letters.iter_mut().rev() {
        *slot = (index % p as u64) as u8 + 1;
        index /= p as u64;
    }
    letters
}

fn advance(letters: &mut [u8], p: u8) {
    for slot in letters.iter_mut().rev() {
        if *slot < p {
            *slot += 1;
            return;
        }
        *slot = 1;
    }
}

/// Folds `f` over every word of `{1..p}^l` in chunks processed in parallel;
/// chunk results are merged with `merge` (which must be associative).
fn fold_words<T, F, M>(ell: u32, p: u8, make: impl Fn() -> T + Sync, f: F, merge: M) -> Result<T>
where
    T: Send,
    F: Fn(&mut T, &[u8]) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let total = checked_word_count(ell, p)?;
    let chunk: u64 = 1 << 16;
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let result = starts
        .into_par_iter()
        .map(|start| {
            let stop = (start + chunk).min(total);
            let mut letters = decode_word(start, ell, p);
            let mut acc = make();
            for i in start..stop {
                f(&mut acc, &letters);
                if i + 1 < stop {
                    advance(&mut letters, p);
                }
            }
            acc
        })
        .reduce(&make, merge);
    Ok(result)
}

/// Exact distribution of the RSK shape over all `p^l` uniform words.
/// Each mass equals `f^lambda s_lambda(1^p) / p^l`.
pub fn word_shape_measure(ell: u32, p: u8) -> Result<BTreeMap<Partition, Rat>> {
    let total = checked_word_count(ell, p)?;
    let counts = fold_words(
        ell,
        p,
        BTreeMap::<Partition, u64>::new,
        |acc, letters| {
            let shape = rsk_shape(&Word {
                letters: letters.to_vec(),
                alphabet: p,
            });
            *acc.entry(shape).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )?;
    let denom = Rat::from_integer(BigInt::from(total));
    Ok(counts
        .into_iter()
        .map(|(shape, c)| (shape, rint(c as i64) / &denom))
        .collect())
}

fn validate_theorem01(ell: u32, p: u32, n: u32, q: u32) -> Result<()> {
    if !(p <= q && q < n) {
        return Err(Error::Parameter(format!(
            "need p <= q < n, got p={p} q={q} n={n}"
        )));
    }
    if (ell as u64) < (p as u64) * ((n - p) as u64) {
        return Err(Error::Parameter(format!(
            "need l >= p(n-p), got l={ell} < {}",
            p * (n - p)
        )));
    }
    Ok(())
}

/// Brute-force expectation `E^{l,p}[ 1_{lambda >= mu} * strip hook product ]`
/// over all `p^l` words, `mu = (n-p)^p`. For `q == p` the strip is empty and
/// the value is the probability of the event, counted through the Greene
/// statistics characterization `d1 = p` and `i_{p-1} <= l - n + p`.
pub fn theorem01_lhs(ell: u32, p: u32, n: u32, q: u32) -> Result<Rat> {
    validate_theorem01(ell, p, n, q)?;
    let total = checked_word_count(ell, p as u8)?;
    let mu = Partition::rectangle(n - p, p as usize);
    let sum = if q == p {
        // Event form: count words with d1 = p and i_{p-1} <= l - n + p.
        let bound = ell as u64 + p as u64 - n as u64;
        let hits = fold_words(
            ell,
            p as u8,
            || 0u64,
            |acc, letters| {
                let stats = greene_stats(&Word {
                    letters: letters.to_vec(),
                    alphabet: p as u8,
                });
                let i_prev = if p >= 2 { stats.i[p as usize - 2] } else { 0 };
                if stats.d1 == p as usize && i_prev <= bound {
                    *acc += 1;
                }
            },
            |a, b| a + b,
        )?;
        Rat::from_integer(BigInt::from(hits))
    } else {
        let weighted = fold_words(
            ell,
            p as u8,
            BigInt::zero,
            |acc, letters| {
                let shape = rsk_shape(&Word {
                    letters: letters.to_vec(),
                    alphabet: p as u8,
                });
                if shape.contains(&mu) {
                    *acc += strip_hook_product(&shape, n, p, q).expect("containment checked");
                }
            },
            |a, b| a + b,
        )?;
        Rat::from_integer(weighted)
    };
    Ok(sum / Rat::from_integer(BigInt::from(total)))
}

/// Closed-form side of the same expectation:
/// `l!/p^l prod_1^p (q-i)!/(n-i)! sum_{kappa} (p)_k (q)_k / ((h^k)^2 (n)_k)`
/// with `kappa` running over partitions of `l - p(n-p)` with at most `p` rows.
pub fn theorem01_rhs(ell: u32, p: u32, n: u32, q: u32) -> Result<Rat> {
    validate_theorem01(ell, p, n, q)?;
    let rest = ell as u64 - (p as u64) * ((n - p) as u64);
    let mut prefactor = Rat::from_integer(factorial(ell as u64));
    for _ in 0..ell {
        prefactor /= rint(p as i64);
    }
    for i in 1..=p {
        prefactor *= Rat::from_integer(factorial((q - i) as u64))
            / Rat::from_integer(factorial((n - i) as u64));
    }
    let mut sum = Rat::zero();
    for kappa in Partition::enumerate(rest, Some(p)) {
        let h = Rat::from_integer(hook_product(&kappa));
        let term = poch1(&rint(p as i64), &kappa) * poch1(&rint(q as i64), &kappa)
            / (&h * &h * poch1(&rint(n as i64), &kappa));
        sum += term;
    }
    Ok(prefactor * sum)
}

/// Direct expectation over partitions (no word enumeration):
/// `E^{l,p}[1_{lambda >= mu} * strip] = sum_{lambda >= mu} f^l s_l(1^p)/p^l * strip(lambda)`.
/// Used as the partition-sum route of the generating function.
pub fn hook_expectation_by_measure(ell: u32, p: u32, n: u32, q: u32) -> Result<Rat> {
    validate_theorem01(ell, p, n, q)?;
    let rest = ell as u64 - (p as u64) * ((n - p) as u64);
    let mut sum = Rat::zero();
    for kappa in Partition::enumerate(rest, Some(p)) {
        let lam = kappa.pad_rectangle(n - p, p as usize);
        let mass = Rat::from_integer(standard_tableau_count(&lam))
            * Rat::from_integer(schur_at_ones(&lam, p));
        sum += mass * Rat::from_integer(strip_hook_product(&lam, n, p, q)?);
    }
    for _ in 0..ell {
        sum /= rint(p as i64);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use num::One;

    fn word(letters: &[u8], p: u8) -> Word {
        Word::new(letters.to_vec(), p)
    }

    #[test]
    fn rsk_small_words() {
        assert_eq!(rsk_shape(&word(&[], 2)), Partition::empty());
        // Hand insertion: final first row (1,1,2).
        assert_eq!(rsk_shape(&word(&[2, 1, 1, 2], 2)), Partition::new(vec![3, 1]));
        assert_eq!(rsk_shape(&word(&[3, 2, 1], 3)), Partition::new(vec![1, 1, 1]));
    }

    #[test]
    fn greene_small_words() {
        let g = greene_stats(&word(&[1, 1, 1], 1));
        assert_eq!((g.d1, g.i.clone()), (1, vec![3]));
        let g = greene_stats(&word(&[2, 1, 1, 2], 2));
        assert_eq!((g.d1, g.i.clone()), (2, vec![3, 4]));
        let g = greene_stats(&word(&[3, 2, 1], 3));
        assert_eq!((g.d1, g.i.clone()), (3, vec![1, 2, 3]));
    }

    #[test]
    fn shape_measure_small() {
        let m = word_shape_measure(2, 2).unwrap();
        assert_eq!(m[&Partition::new(vec![2])], rat(3, 4));
        assert_eq!(m[&Partition::new(vec![1, 1])], rat(1, 4));

        let m = word_shape_measure(1, 3).unwrap();
        assert_eq!(m[&Partition::new(vec![1])], rat(1, 1));

        let m = word_shape_measure(4, 2).unwrap();
        assert_eq!(m[&Partition::new(vec![2, 2])], rat(2, 16));
    }

    #[test]
    fn shape_measure_matches_formula() {
        // Mass of lambda equals f^lambda s_lambda(1^p) / p^l, and sums to 1.
        for p in 1..=3u8 {
            for ell in 0..=6u32 {
                let m = word_shape_measure(ell, p).unwrap();
                let mut total = Rat::zero();
                for (lam, mass) in &m {
                    let expect = Rat::from_integer(standard_tableau_count(lam))
                        * Rat::from_integer(schur_at_ones(lam, p as u32))
                        / crate::rat::pow(&rint(p as i64), ell as i64);
                    assert_eq!(mass, &expect, "lambda = {lam}");
                    total += mass;
                }
                assert_eq!(total, Rat::one());
            }
        }
    }

    #[test]
    fn theorem01_anchors() {
        assert_eq!(theorem01_lhs(2, 2, 3, 2).unwrap(), rat(1, 4));
        assert_eq!(theorem01_rhs(2, 2, 3, 2).unwrap(), rat(1, 4));
        assert_eq!(theorem01_lhs(4, 2, 4, 3).unwrap(), rat(1, 4));
        assert_eq!(theorem01_rhs(4, 2, 4, 3).unwrap(), rat(1, 4));
        // Every 1-letter word over {1} has shape (1) containing (1).
        assert_eq!(theorem01_lhs(1, 1, 2, 1).unwrap(), rat(1, 1));
        assert!(theorem01_lhs(1, 2, 3, 2).is_err());
    }

    #[test]
    fn theorem01_kappa_empty_closed_form() {
        // l = p(n-p), q = p: RHS collapses to l!/p^l prod (p-i)!/(n-i)!.
        for &(p, n) in &[(2u32, 3u32), (2, 4), (3, 4)] {
            let ell = p * (n - p);
            let mut want = Rat::from_integer(factorial(ell as u64));
            for _ in 0..ell {
                want /= rint(p as i64);
            }
            for i in 1..=p {
                want *= Rat::from_integer(factorial((p - i) as u64))
                    / Rat::from_integer(factorial((n - i) as u64));
            }
            assert_eq!(theorem01_rhs(ell, p, n, p).unwrap(), want);
        }
    }

    #[test]
    fn containment_equals_greene_event() {
        // {lambda >= mu} == {d1 = p and i_{p-1} <= l - n + p} on every word.
        for &(p, n, ell) in &[(2u32, 3u32, 4u32), (2, 4, 6), (3, 4, 5)] {
            let mu = Partition::rectangle(n - p, p as usize);
            let total = checked_word_count(ell, p as u8).unwrap();
            let mut letters = decode_word(0, ell, p as u8);
            for i in 0..total {
                let w = Word::new(letters.clone(), p as u8);
                let shape = rsk_shape(&w);
                let stats = greene_stats(&w);
                let i_prev = if p >= 2 { stats.i[p as usize - 2] } else { 0 };
                let event =
                    stats.d1 == p as usize && i_prev as i64 <= ell as i64 - n as i64 + p as i64;
                assert_eq!(shape.contains(&mu), event, "word {:?}", w.letters());
                if i + 1 < total {
                    advance(&mut letters, p as u8);
                }
            }
        }
    }

    #[test]
    fn rsk_shape_weight_is_word_length() {
        for p in 1..=3u8 {
            for ell in 0..=5u32 {
                let total = checked_word_count(ell, p).unwrap();
                let mut letters = decode_word(0, ell, p);
                for i in 0..total {
                    let shape = rsk_shape(&Word::new(letters.clone(), p));
                    assert_eq!(shape.weight(), ell as u64);
                    assert!(shape.rows() <= p as usize);
                    if i + 1 < total {
                        advance(&mut letters, p);
                    }
                }
            }
        }
    }

    /// Independent Greene oracles by dynamic programming / exhaustive search.
    mod oracle {
        /// Longest weakly increasing subsequence, O(n^2) DP.
        pub fn longest_weakly_increasing(w: &[u8]) -> usize {
            let n = w.len();
            let mut best = vec![1usize; n];
            let mut out = 0;
            for i in 0..n {
                for j in 0..i {
                    if w[j] <= w[i] {
                        best[i] = best[i].max(best[j] + 1);
                    }
                }
                out = out.max(best[i]);
            }
            out
        }

        /// Longest strictly decreasing subsequence, O(n^2) DP.
        pub fn longest_strictly_decreasing(w: &[u8]) -> usize {
            let n = w.len();
            let mut best = vec![1usize; n];
            let mut out = 0;
            for i in 0..n {
                for j in 0..i {
                    if w[j] > w[i] {
                        best[i] = best[i].max(best[j] + 1);
                    }
                }
                out = out.max(best[i]);
            }
            out.min(n)
        }

        /// Maximum total length of two disjoint weakly increasing
        /// subsequences, by exhaustive assignment of positions.
        pub fn best_two_disjoint_increasing(w: &[u8]) -> usize {
            let n = w.len();
            let mut best = 0usize;
            // Each position goes to subsequence 0, 1, or is unused (2).
            let mut assign = vec![0u8; n];
            loop {
                let mut ok = true;
                let mut used = 0usize;
                for s in 0..2u8 {
                    let mut last: Option<u8> = None;
                    for i in 0..n {
                        if assign[i] == s {
                            if let Some(prev) = last {
                                if w[i] < prev {
                                    ok = false;
                                    break;
                                }
                            }
                            last = Some(w[i]);
                            used += 1;
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    best = best.max(used);
                }
                // Odometer over assignments.
                let mut i = 0;
                while i < n {
                    if assign[i] < 2 {
                        assign[i] += 1;
                        break;
                    }
                    assign[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                if n == 0 {
                    break;
                }
            }
            best
        }
    }

    #[test]
    fn greene_matches_dp_oracles() {
        for p in 1..=3u8 {
            for ell in 0..=8u32 {
                let total = match checked_word_count(ell, p) {
                    Ok(t) => t,
                    Err(_) => continue,
                };
                let mut letters = decode_word(0, ell, p);
                for i in 0..total {
                    let w = Word::new(letters.clone(), p);
                    let stats = greene_stats(&w);
                    assert_eq!(
                        stats.i[0] as usize,
                        oracle::longest_weakly_increasing(w.letters()),
                        "word {:?}",
                        w.letters()
                    );
                    assert_eq!(
                        stats.d1,
                        oracle::longest_strictly_decreasing(w.letters()),
                        "word {:?}",
                        w.letters()
                    );
                    if i + 1 < total {
                        advance(&mut letters, p);
                    }
                }
            }
        }
    }

    #[test]
    fn greene_i2_matches_exhaustive_pairs() {
        // i_2 from the RSK shape equals the best pair of disjoint weakly
        // increasing subsequences. Length capped at 6 to keep the 3^l * 3^l
        // exhaustive check quick.
        for p in 2..=3u8 {
            for ell in 0..=6u32 {
                let total = checked_word_count(ell, p).unwrap();
                let mut letters = decode_word(0, ell, p);
                for i in 0..total {
                    let w = Word::new(letters.clone(), p);
                    let stats = greene_stats(&w);
                    assert_eq!(
                        stats.i[1] as usize,
                        oracle::best_two_disjoint_increasing(w.letters()),
                        "word {:?}",
                        w.letters()
                    );
                    if i + 1 < total {
                        advance(&mut letters, p);
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_square_sums() {
        // sum (f^lambda)^2 = n! (n <= 9) and sum f^lambda s_lambda(1^k) = k^n
        // (n <= 8, k <= 4).
        for n in 0..=9u64 {
            let mut total = BigInt::zero();
            for lam in Partition::enumerate(n, None) {
                let f = standard_tableau_count(&lam);
                total += &f * &f;
            }
            assert_eq!(total, factorial(n));
        }
        for n in 0..=8u64 {
            for k in 1..=4u32 {
                let mut total = BigInt::zero();
                for lam in Partition::enumerate(n, None) {
                    total += standard_tableau_count(&lam) * schur_at_ones(&lam, k);
                }
                assert_eq!(total, num::pow::pow(BigInt::from(k), n as usize));
            }
        }
    }
}
