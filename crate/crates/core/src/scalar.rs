//! Integer scalars for exact counting.
//!
//! Every closed-form count in this crate is a product of binomials followed
//! by an exact division. [`Count`] captures what that needs, so the same code
//! runs on `u64`/`u128` for quick checks and on [`crate::BigCount`] when the
//! values outgrow a machine word.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{One, Zero};

pub trait Count: Clone + Debug + Display + Integer + Zero + One + From<u64> {}

impl<T> Count for T where T: Clone + Debug + Display + Integer + Zero + One + From<u64> {}

/// `numerator / denominator`, panicking if the division leaves a remainder.
///
/// The closed forms divide exactly; a remainder means a transcription bug.
pub fn exact_div<T: Count>(numerator: T, denominator: T) -> T {
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "inexact division {numerator} / {denominator} in closed-form count"
    );
    q
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial<T: Count>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 1..=k {
        // acc = C(n - k + i - 1, i - 1) here, so the division is exact.
        acc = exact_div(acc * T::from(n - k + i), T::from(i));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigCount;

    fn pascal(n: usize) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![1u64]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1u64; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let rows = pascal(40);
        for (n, row) in rows.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial::<u64>(n as u64, k as u64), v, "C({n},{k})");
            }
            assert_eq!(binomial::<u64>(n as u64, n as u64 + 1), 0);
        }
    }

    #[test]
    fn big_and_word_agree() {
        for n in 0..60u64 {
            for k in 0..=n {
                assert_eq!(
                    binomial::<BigCount>(n, k),
                    BigCount::from(binomial::<u128>(n, k))
                );
            }
        }
    }

    #[test]
    #[should_panic(expected = "inexact division")]
    fn exact_div_rejects_remainder() {
        exact_div(7u64, 2u64);
    }
}
