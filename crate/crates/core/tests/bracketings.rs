use assoc_spectra::counting::{catalan, count_m};
use assoc_spectra::tuple::entry_bound;
use assoc_spectra::{
    enumerate_bracketings, BigCount, Bracketing, InsertionTuple, Limits, TextFormat,
};
use proptest::prelude::*;

/// A valid insertion tuple of arity `p`, built from free choices clamped into
/// the admissible window at each position.
fn tuple_strategy(
    arities: std::ops::RangeInclusive<usize>,
    max_n: usize,
) -> impl Strategy<Value = InsertionTuple> {
    (arities, prop::collection::vec(any::<u32>(), 0..=max_n)).prop_map(|(p, picks)| {
        let mut entries: Vec<usize> = Vec::with_capacity(picks.len());
        for (i, pick) in picks.into_iter().enumerate() {
            let low = entries.last().copied().unwrap_or(1);
            let high = entry_bound(i + 1, 1, p);
            entries.push(low + pick as usize % (high - low + 1));
        }
        InsertionTuple::new(p, entries).unwrap()
    })
}

fn composition_sum(n: usize, p: usize, cat: &[u128]) -> u128 {
    // Sum over (i_1, …, i_p) with i_1 + … + i_p = n of the product of cat[i_l].
    fn go(parts: usize, remaining: usize, cat: &[u128]) -> u128 {
        if parts == 0 {
            return u128::from(remaining == 0);
        }
        (0..=remaining)
            .map(|i| cat[i] * go(parts - 1, remaining - i, cat))
            .sum()
    }
    go(p, n, cat)
}

#[test]
fn catalan_satisfies_composition_recursion() {
    for p in 2..=4usize {
        let mut cat = vec![1u128];
        for n in 1..=10 {
            cat.push(composition_sum(n - 1, p, &cat));
            let closed: BigCount = catalan(n as u64, p as u64);
            assert_eq!(closed, BigCount::from(cat[n]), "n={n}, p={p}");
        }
    }
}

#[test]
fn lengths_and_leaf_labels() {
    for p in 2..=3 {
        for n in 0..=5 {
            for t in enumerate_bracketings(n, p, &Limits::default()).unwrap() {
                assert_eq!(t.len(), (p - 1) * t.occ() + 1);
                let labels = t.enumerate_leaves(4).labels();
                assert_eq!(labels, (4..4 + t.len()).collect::<Vec<_>>());
            }
        }
    }
}

proptest! {
    #[test]
    fn tuple_round_trip(u in tuple_strategy(2..=4, 12)) {
        let t = u.to_bracketing().unwrap();
        prop_assert_eq!(t.occ(), u.len());
        prop_assert_eq!(InsertionTuple::of(&t), u);
    }

    #[test]
    fn text_round_trip(u in tuple_strategy(2..=4, 8)) {
        let t = u.to_bracketing().unwrap();
        let prefix = t.render(TextFormat::Prefix).unwrap();
        prop_assert_eq!(&Bracketing::parse(&prefix, t.arity(), TextFormat::Prefix).unwrap(), &t);
        if t.arity() == 2 {
            let infix = t.render(TextFormat::Infix).unwrap();
            prop_assert_eq!(&Bracketing::parse(&infix, 2, TextFormat::Infix).unwrap(), &t);
        }
    }

    #[test]
    fn tuple_operators_match_tree_operators(u in tuple_strategy(2..=4, 8), pick in any::<usize>()) {
        let t = u.to_bracketing().unwrap();
        let leaf = 1 + pick % t.len();
        prop_assert_eq!(t.expand_leaf(leaf).unwrap().insertion_tuple(), u.expand_leaf(leaf).unwrap());
        let slot = 1 + pick % t.arity();
        prop_assert_eq!(t.wrap_at(slot).unwrap().insertion_tuple(), u.wrap_at(slot).unwrap());
    }

    #[test]
    fn depths_from_tuple(u in tuple_strategy(2..=2, 12)) {
        let t = u.to_bracketing().unwrap();
        let e = u.entries();
        let dl = e.iter().filter(|&&x| x == 1).count();
        let dr = e.iter().enumerate().filter(|&(q, &x)| x == q + 1).count();
        prop_assert_eq!(t.left_right_depth().unwrap(), (dl, dr));
    }

    #[test]
    fn left_lengths_shrink(u in tuple_strategy(2..=2, 12), k in 1usize..6) {
        let t = u.to_bracketing().unwrap();
        let l = t.left_lengths(k).unwrap();
        prop_assert_eq!(l.len(), k);
        prop_assert!(l[0] <= t.len());
        for w in l.windows(2) {
            prop_assert!(w[1] < w[0] || (w[0] == 1 && w[1] == 1), "{:?}", l);
        }
        prop_assert!(l[k - 1] >= 1);
    }

    #[test]
    fn mirror_is_an_involution(u in tuple_strategy(2..=4, 10)) {
        let t = u.to_bracketing().unwrap();
        prop_assert_eq!(t.mirror().mirror(), t.clone());
        prop_assert_eq!(t.mirror().occ(), t.occ());
    }

    #[test]
    fn m_count_recursion(n in 0u64..12, k in 1u64..6, p in 2u64..5) {
        let lhs: BigCount = count_m(n + 1, k, p);
        let rhs: BigCount = (0..k).map(|l| count_m::<BigCount>(n, p + l, p)).sum();
        prop_assert_eq!(lhs, rhs);
    }
}
