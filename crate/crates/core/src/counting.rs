//! Exact closed-form counts: generalized Catalan numbers, `|M(n, k, p)|` and
//! the class counts of the named polynomial spectra.

use crate::scalar::{binomial, exact_div, Count};

/// `|M(n, k, p)| = k / ((p-1) n + k) * C(p n + k - 1, n)`.
pub fn count_m<T: Count>(n: u64, k: u64, p: u64) -> T {
    assert!(k >= 1 && p >= 2, "count_m needs k >= 1 and p >= 2");
    let numerator = T::from(k) * binomial::<T>(p * n + k - 1, n);
    exact_div(numerator, T::from((p - 1) * n + k))
}

/// Number of p-ary bracketings with `n` operation symbols,
/// `1 / ((p-1) n + 1) * C(p n, n)`.
pub fn catalan<T: Count>(n: u64, p: u64) -> T {
    count_m(n, 1, p)
}

/// `C(0), …, C(n)` from the defining recursion: `C(m)` sums the products
/// `C(i_1) ⋯ C(i_p)` over all compositions `i_1 + … + i_p = m - 1`.
pub fn catalan_by_recursion<T: Count>(n: usize, p: usize) -> Vec<T> {
    assert!(p >= 2);
    let mut cat: Vec<T> = vec![T::one()];
    for m in 1..=n {
        // power[s] = sum over compositions of s into j parts of the product.
        let mut power: Vec<T> = cat.clone();
        for _ in 1..p {
            let mut next = vec![T::zero(); m];
            for (s, slot) in next.iter_mut().enumerate() {
                for a in 0..=s {
                    *slot = slot.clone() + power[a].clone() * cat[s - a].clone();
                }
            }
            power = next;
        }
        cat.push(power[m - 1].clone());
    }
    cat
}

/// Classes of the left-factor spectrum: `sum_{i=0}^{k} C(n-1, i)` for `n >= 1`.
pub fn left_factor_class_count<T: Count>(n: u64, k: u64) -> T {
    if n == 0 {
        return T::one();
    }
    (0..=k).fold(T::zero(), |acc, i| acc + binomial::<T>(n - 1, i))
}

/// Classes of the spectrum that compares the last `k` insertion-tuple entries.
pub fn tail_tuple_class_count<T: Count>(n: u64, k: u64, p: u64) -> T {
    if n < k {
        return catalan(n, p);
    }
    let numerator = T::from((p - 1) * (n - k) + 1) * binomial::<T>((p - 1) * n + k, k);
    exact_div(numerator, T::from((p - 1) * n + 1))
}

/// Classes of the depth-pair spectrum: `(n^2 + n - 2) / 2` for `n >= 2`, and 1 below.
pub fn depth_pair_class_count<T: Count>(n: u64) -> T {
    if n < 2 {
        return T::one();
    }
    exact_div(T::from(n * n + n - 2), T::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigCount;

    #[test]
    fn count_m_examples() {
        assert_eq!(count_m::<u64>(2, 2, 2), 5);
        for k in 1..6 {
            for p in 2..5 {
                assert_eq!(count_m::<u64>(0, k, p), 1);
            }
        }
        assert_eq!(count_m::<u64>(3, 1, 2), 5);
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan::<u64>(3, 2), 5);
        assert_eq!(catalan::<u64>(0, 5), 1);
        assert_eq!(catalan::<u64>(3, 3), 12);
        assert_eq!(catalan::<BigCount>(3, 3), BigCount::from(12u32));
    }

    #[test]
    fn recursion_matches_closed_form() {
        for p in 2..=4usize {
            let rec = catalan_by_recursion::<BigCount>(10, p);
            for (n, v) in rec.iter().enumerate() {
                assert_eq!(*v, catalan::<BigCount>(n as u64, p as u64), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn big_values_stay_exact() {
        // C(60, 2) exceeds u32 but fits u64; the BigUint path must agree.
        let big: BigCount = catalan(60, 2);
        assert_eq!(big, BigCount::from(catalan::<u128>(60, 2)));
        let huge: BigCount = catalan(200, 3);
        assert!(huge.bits() > 128);
    }

    #[test]
    fn named_spectrum_counts() {
        assert_eq!(left_factor_class_count::<u64>(3, 1), 3);
        assert_eq!(left_factor_class_count::<u64>(1, 2), 1);
        assert_eq!(left_factor_class_count::<u64>(4, 2), 7);
        assert_eq!(tail_tuple_class_count::<u64>(4, 1, 2), 4);
        assert_eq!(tail_tuple_class_count::<u64>(2, 5, 2), 2);
        assert_eq!(tail_tuple_class_count::<u64>(3, 2, 2), 5);
        assert_eq!(depth_pair_class_count::<u64>(3), 5);
        assert_eq!(depth_pair_class_count::<u64>(2), 2);
        assert_eq!(depth_pair_class_count::<u64>(0), 1);
    }
}
