//! Sampled law checks on larger universes.

use morphlog_core::morphology::{close, open};
use morphlog_core::{StructuringElement, WorldSet};
use proptest::prelude::*;

fn world_set(n: usize) -> impl Strategy<Value = WorldSet> {
    proptest::collection::vec(any::<bool>(), 1 << n).prop_map(move |bits| {
        WorldSet::from_worlds(n, (0..bits.len() as u32).filter(|&w| bits[w as usize]))
    })
}

fn pair() -> impl Strategy<Value = (WorldSet, WorldSet, StructuringElement)> {
    (4usize..=7, 0usize..4).prop_flat_map(|(n, k)| {
        let se = match k {
            0 => StructuringElement::hamming(n, 1),
            1 => StructuringElement::hamming(n, 2),
            2 => StructuringElement::restricted(n, 0b0111, 1),
            _ => StructuringElement::restricted_exact2(n, 0b1011),
        };
        (world_set(n), world_set(n), Just(se))
    })
}

proptest! {
    #[test]
    fn adjunction((a, b, se) in pair()) {
        prop_assert_eq!(se.dilate(&a).is_subset(&b), a.is_subset(&se.erode(&b)));
    }

    #[test]
    fn duality_and_commutation((a, b, se) in pair()) {
        prop_assert_eq!(se.erode(&a), se.dilate(&a.complement()).complement());
        prop_assert_eq!(se.dilate(&a.union(&b)), se.dilate(&a).union(&se.dilate(&b)));
        prop_assert_eq!(se.erode(&a.intersection(&b)), se.erode(&a).intersection(&se.erode(&b)));
    }

    #[test]
    fn filters((a, _b, se) in pair()) {
        let o = open(&a, &se);
        let c = close(&a, &se);
        prop_assert!(o.is_subset(&a) && a.is_subset(&c));
        prop_assert_eq!(open(&o, &se), o);
        prop_assert_eq!(close(&c, &se), c);
    }
}
