use assoc_spectra::eval::{is_associative, Evaluator};
use assoc_spectra::gallery::{gallery_spec, CATALOG};
use assoc_spectra::spectrum::three_egg_partition;
use assoc_spectra::{
    assoc_spectrum, delta, direct_product, fine_level, fine_spectrum, Element, Groupoid, Level,
    Limits, Partition,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn limits() -> Limits {
    Limits::default()
}

fn table(spec: &str) -> Groupoid {
    gallery_spec(spec).and_then(|s| s.table()).unwrap()
}

fn groupoid_strategy(max_size: usize) -> impl Strategy<Value = Groupoid> {
    (1..=max_size).prop_flat_map(|size| {
        prop::collection::vec(0..size as Element, size * size)
            .prop_map(move |t| Groupoid::new(2, size, t, None).unwrap())
    })
}

fn opposite(g: &Groupoid) -> Groupoid {
    Groupoid::from_fn(2, g.size(), None, |a| g.apply(&[a[1], a[0]])).unwrap()
}

#[test]
fn sheffer_separates_everything() {
    let g = table("sheffer");
    assert_eq!(fine_level(&g, 3, &limits()).unwrap().class_count(), 5);
    for n in 0..=6 {
        assert!(fine_level(&g, n, &limits()).unwrap().is_equality(), "n={n}");
    }
}

#[test]
fn documented_spectrum_values() {
    assert_eq!(
        assoc_spectrum(&table("polyk:3"), 4, &limits()).unwrap()[4],
        8
    );
    assert_eq!(assoc_spectrum(&table("egg7"), 5, &limits()).unwrap()[5], 41);
    assert_eq!(
        assoc_spectrum(&table("polyk:1"), 4, &limits()).unwrap(),
        vec![1, 1, 2, 3, 4]
    );
    assert_eq!(
        assoc_spectrum(&table("egg4"), 3, &limits()).unwrap(),
        vec![1, 1, 2, 4]
    );
}

#[test]
fn egg4_merges_equal_egg_positions_at_level_three() {
    let level = Level::new(3, 2, &limits()).unwrap();
    let fine = fine_level(&table("egg4"), 3, &limits()).unwrap();
    let merged: Vec<String> = fine
        .classes()
        .into_iter()
        .find(|c| c.len() > 1)
        .unwrap()
        .into_iter()
        .map(|r| level.bracketing(r).to_string())
        .collect();
    assert_eq!(merged, ["((x(xx))x)", "(x((xx)x))"]);
}

#[test]
fn polyk_absorbs_right_products() {
    for k in 0..=5 {
        let g = table(&format!("polyk:{k}"));
        let n = g.size() as Element;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let yz = g.apply(&[y, z]);
                    assert_eq!(g.apply(&[x, yz]), g.apply(&[x, y]), "k={k} ({x},{y},{z})");
                }
            }
        }
    }
}

#[test]
fn egg4_is_coarser_than_tau() {
    let g = table("egg4");
    assert!(!is_associative(&g));
    assert_eq!(g.apply(&[g.apply(&[3, 3]), 1]), 0);
    assert_eq!(g.apply(&[3, g.apply(&[3, 1])]), 1);
    let mut eval = Evaluator::new(&g, limits());
    for n in 0..=6 {
        let tau = three_egg_partition(n, &limits()).unwrap();
        assert!(tau.refines(&eval.fine_level(n).unwrap()).unwrap(), "n={n}");
    }
}

#[test]
fn rejection_sampled_associative_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut found = 0;
    while found < 12 {
        let t: Vec<Element> = (0..9).map(|_| rng.gen_range(0..3)).collect();
        let g = Groupoid::new(2, 3, t, None).unwrap();
        if is_associative(&g) {
            assert_eq!(
                assoc_spectrum(&g, 6, &limits()).unwrap(),
                vec![1; 7],
                "{g:?}"
            );
            found += 1;
        }
    }
}

#[test]
fn product_with_trivial_groupoid() {
    let one = Groupoid::new(2, 1, vec![0], None).unwrap();
    assert!(is_associative(&one));
    for spec in ["egg4", "polyk:2", "sheffer"] {
        let g = table(spec);
        let prod = direct_product(&one, &g).unwrap();
        assert_eq!(prod.table(), g.table());
        assert_eq!(
            fine_spectrum(&prod, 4, &limits()).unwrap(),
            fine_spectrum(&g, 4, &limits()).unwrap()
        );
    }
    let ternary = Groupoid::new(3, 1, vec![0], None).unwrap();
    assert!(direct_product(&one, &ternary).is_err());
}

#[test]
fn gallery_documents_round_trip() {
    for entry in CATALOG.iter().filter(|e| e.name != "truncated_ring") {
        let spec = match entry.param {
            Some(_) => format!("{}:3", entry.name),
            None => entry.name.to_string(),
        };
        let g = table(&spec);
        assert_eq!(Groupoid::from_json(&g.to_json()).unwrap(), g, "{spec}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_groupoid_spectra_are_closed(g in groupoid_strategy(3)) {
        let sigma = fine_spectrum(&g, 5, &limits()).unwrap();
        let counts = sigma.class_counts();
        prop_assert_eq!(&counts[..2], &[1, 1]);
        for n in 0..5 {
            let image = delta(&sigma.levels()[n], &limits()).unwrap();
            prop_assert!(image.refines(&sigma.levels()[n + 1]).unwrap());
        }
        if let Some(first) = (2..counts.len()).find(|&n| counts[n] == 1) {
            prop_assert!(counts[first..].iter().all(|&c| c == 1), "{:?}", counts);
        }
    }

    #[test]
    fn opposite_groupoid_mirrors_the_spectrum(g in groupoid_strategy(3), n in 0usize..=5) {
        let level = Level::new(n, 2, &limits()).unwrap();
        let fine = fine_level(&g, n, &limits()).unwrap();
        let mirrored = Partition::from_labels(
            n,
            2,
            level.bracketings().map(|t| fine.class_of(level.rank_of(&t.mirror()).unwrap())),
        );
        prop_assert_eq!(fine_level(&opposite(&g), n, &limits()).unwrap(), mirrored);
    }

    #[test]
    fn subgroupoids_identify_more(g in groupoid_strategy(3), mask in 1u8..8, n in 0usize..=5) {
        let subset: Vec<Element> = (0..g.size() as Element).filter(|&e| mask & (1 << e) != 0).collect();
        prop_assume!(!subset.is_empty());
        if let Ok(sub) = g.subgroupoid(&subset) {
            let whole = fine_level(&g, n, &limits()).unwrap();
            prop_assert!(whole.refines(&fine_level(&sub, n, &limits()).unwrap()).unwrap());
        }
    }

    #[test]
    fn product_spectrum_is_the_meet(g in groupoid_strategy(3), h in groupoid_strategy(3), n in 0usize..=4) {
        let gh = direct_product(&g, &h).unwrap();
        let meet = fine_level(&g, n, &limits()).unwrap().meet(&fine_level(&h, n, &limits()).unwrap()).unwrap();
        prop_assert_eq!(fine_level(&gh, n, &limits()).unwrap(), meet);
    }
}

#[test]
fn polyk_two_spectrum() {
    let g = assoc_spectra::gallery("polyk", Some(2)).unwrap().table().unwrap();
    assert_eq!(assoc_spectrum(&g, 6, &limits()).unwrap(), vec![1, 1, 2, 4, 7, 11, 16]);
}
