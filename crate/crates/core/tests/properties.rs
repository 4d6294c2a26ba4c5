//! Property tests over seeded random shapes and fillings.

use moonfill::bijections;
use moonfill::encoding;
use moonfill::filling::{collect_fillings, ColSubset, RowSubset};
use moonfill::poly;
use moonfill::verify::{random_filling, random_moon, random_sum_vectors};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn column_order_is_strict_and_total(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_moon(&mut rng, 8, 8);
        let m = shape.m();
        for i in 1..=m {
            for j in 1..=m {
                if i == j {
                    prop_assert!(shape.column_precedes(i, j).is_err());
                    continue;
                }
                let ij = shape.column_precedes(i, j).unwrap();
                let ji = shape.column_precedes(j, i).unwrap();
                prop_assert!(ij ^ ji);
                for k in 1..=m {
                    if k != i && k != j && ij && shape.column_precedes(j, k).unwrap() {
                        prop_assert!(shape.column_precedes(i, k).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn rearrangements_align_and_preserve_lengths(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_moon(&mut rng, 7, 7);
        let (left, ltrace) = shape.rearrange_left_aligned();
        prop_assert!(left.is_left_aligned());
        prop_assert_eq!(shape.permute_columns(&ltrace.permutation).unwrap(), left.clone());
        let mut a = shape.col_lengths();
        let mut b = left.col_lengths();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);

        let (top, ttrace) = shape.rearrange_top_aligned();
        prop_assert!(top.is_top_aligned());
        prop_assert_eq!(shape.permute_rows(&ttrace.permutation).unwrap(), top.clone());
        for j in 1..=shape.m() {
            prop_assert_eq!(top.col_span(j), (1, shape.col_len(j)));
        }
    }

    #[test]
    fn encoding_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Arc::new(random_moon(&mut rng, 6, 6));
        let f = random_filling(&mut rng, &shape, 0.6);
        let e = f.row_sums();
        let s = f.col_sums();
        let scheme = encoding::ColumnScheme::standard(&shape);
        let cs = encoding::psi(&f);
        prop_assert!(cs.validate(&shape, &e, &s, &scheme).is_ok());
        prop_assert_eq!(encoding::psi_inv(&shape, &e, &s, &cs).unwrap(), f.clone());
        let (ne, se) = f.ne_se();
        prop_assert_eq!(
            encoding::ne_se_from_compositions(&shape, &e, &s, &cs).unwrap(),
            (ne, se)
        );
    }

    #[test]
    fn enumeration_agrees_with_closed_form(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Arc::new(random_moon(&mut rng, 4, 4));
        let (e, s) = random_sum_vectors(&mut rng, &shape, 0.6);
        let fillings = collect_fillings(&shape, &e, &s).unwrap();
        match poly::product_formula(&shape, &e, &s) {
            Ok(formula) => {
                prop_assert_eq!(formula.eval_at_one(), fillings.len().into());
            }
            Err(_) => prop_assert!(fillings.is_empty()),
        }
        let mut seen = BTreeSet::new();
        for f in &fillings {
            prop_assert_eq!(&f.row_sums(), &e);
            prop_assert_eq!(&f.col_sums(), &s);
            prop_assert!(seen.insert(f.cells()));
        }
        // Emission order is lexicographic in the per-row column choices.
        let choices: Vec<Vec<usize>> =
            fillings.iter().map(|f| f.cells().iter().map(|&(_, c)| c).collect()).collect();
        prop_assert!(choices.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn chain_partition_is_constant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Arc::new(random_moon(&mut rng, 6, 6));
        let f = random_filling(&mut rng, &shape, 0.6);
        let (ne, se) = f.ne_se();
        let rows: Vec<usize> = (1..=shape.n()).filter(|_| rng.random_bool(0.5)).collect();
        let cols: Vec<usize> = (1..=shape.m()).filter(|_| rng.random_bool(0.5)).collect();
        let s_set = RowSubset::new(shape.n(), &rows).unwrap();
        let t_set = ColSubset::new(shape.m(), &cols).unwrap();
        prop_assert_eq!(f.top_mixed(&s_set) + f.top_mixed(&s_set.complement()), ne + se);
        prop_assert_eq!(f.bottom_mixed(&s_set) + f.bottom_mixed(&s_set.complement()), ne + se);
        prop_assert_eq!(f.left_mixed(&t_set) + f.left_mixed(&t_set.complement()), ne + se);
        prop_assert_eq!(f.right_mixed(&t_set) + f.right_mixed(&t_set.complement()), ne + se);
    }

    #[test]
    fn first_row_map_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Arc::new(random_moon(&mut rng, 5, 5));
        let f = random_filling(&mut rng, &shape, 0.7);
        let one = RowSubset::new(shape.n(), &[1]).unwrap();
        let image = bijections::phi_alpha(&f);
        let (ne, se) = image.ne_se();
        prop_assert_eq!((f.top_mixed(&one), f.top_mixed(&one.complement())), (se, ne));
        prop_assert_eq!(bijections::phi_alpha_inv(&image).unwrap(), f);
    }

    #[test]
    fn row_transport_preserves_chains(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Arc::new(random_moon(&mut rng, 6, 6));
        let f = random_filling(&mut rng, &shape, 0.6);
        let image = bijections::h_transport(&f);
        prop_assert!(image.shape().is_top_aligned());
        prop_assert_eq!(image.ne_se(), f.ne_se());
        prop_assert_eq!(image.col_sums(), f.col_sums());
        prop_assert_eq!(bijections::h_transport_inv(&image, &shape).unwrap(), f);
    }
}
