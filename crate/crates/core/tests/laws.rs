//! Algebraic laws, checked over every model set for up to three atoms and
//! every shipped structuring element.

use morphlog_core::morphology::{
    boundaries, close, connected_components, iterate, last_erosion, open, skeleton, stratify,
    ultimate_erosion, ultimate_erosion_recursive, Mode,
};
use morphlog_core::worlds::{hamming, Distance};
use morphlog_core::{StructuringElement, WorldSet};

fn elements(n: usize) -> Vec<StructuringElement> {
    let ab = if n >= 2 { 0b11 } else { 0b1 };
    let mut v = vec![
        StructuringElement::hamming(n, 1),
        StructuringElement::hamming(n, 2),
        StructuringElement::restricted(n, ab, 1),
    ];
    if n >= 2 {
        v.push(StructuringElement::restricted_exact2(n, ab));
    }
    v
}

fn sets(n: usize) -> Vec<WorldSet> {
    WorldSet::all_sets(n).collect()
}

#[test]
fn adjunction_duality_commutation() {
    for n in 1..=3 {
        let all = sets(n);
        for se in elements(n) {
            let dil: Vec<WorldSet> = all.iter().map(|s| se.dilate(s)).collect();
            let ero: Vec<WorldSet> = all.iter().map(|s| se.erode(s)).collect();
            for (i, a) in all.iter().enumerate() {
                assert_eq!(ero[i], se.dilate(&a.complement()).complement());
                for (j, b) in all.iter().enumerate() {
                    assert_eq!(
                        dil[i].is_subset(b),
                        a.is_subset(&ero[j]),
                        "{se:?} {a:?} {b:?}"
                    );
                    let u = a.union(b).to_u64() as usize;
                    let x = a.intersection(b).to_u64() as usize;
                    assert_eq!(dil[u], dil[i].union(&dil[j]));
                    assert_eq!(ero[x], ero[i].intersection(&ero[j]));
                    if a.is_subset(b) {
                        assert!(dil[i].is_subset(&dil[j]));
                        assert!(ero[i].is_subset(&ero[j]));
                    }
                }
            }
        }
    }
}

#[test]
fn monotone_in_structuring_element() {
    for n in 1..=3 {
        let h1 = StructuringElement::hamming(n, 1);
        let h2 = StructuringElement::hamming(n, 2);
        let r = StructuringElement::restricted(n, 0b11 & ((1 << n) - 1), 1);
        for s in sets(n) {
            for (small, big) in [(&r, &h1), (&h1, &h2)] {
                assert!(small.dilate(&s).is_subset(&big.dilate(&s)));
                assert!(big.erode(&s).is_subset(&small.erode(&s)));
            }
        }
    }
}

#[test]
fn extensivity_and_filters() {
    for n in 1..=3 {
        let all = sets(n);
        for se in elements(n) {
            for a in &all {
                assert!(a.is_subset(&se.dilate(a)));
                assert!(se.erode(a).is_subset(a));
                let o = open(a, &se);
                let c = close(a, &se);
                assert!(o.is_subset(a) && a.is_subset(&c));
                assert_eq!(open(&o, &se), o);
                assert_eq!(close(&c, &se), c);
                let (ext, int) = boundaries(a, &se);
                assert_eq!(ext, se.dilate(a).difference(a));
                assert_eq!(int, a.difference(&se.erode(a)));
            }
            for a in &all {
                for b in &all {
                    if a.is_subset(b) {
                        assert!(open(a, &se).is_subset(&open(b, &se)));
                        assert!(close(a, &se).is_subset(&close(b, &se)));
                    }
                }
            }
        }
    }
}

#[test]
fn hamming_iteration_law() {
    for n in 1..=3 {
        let h = StructuringElement::hamming(n, 1);
        for a in sets(n) {
            for p in 0..=n {
                for q in 0..=n {
                    for mode in [Mode::Dilate, Mode::Erode] {
                        let once = iterate(&a, &h, p + q, mode);
                        assert_eq!(once, iterate(&iterate(&a, &h, p, mode), &h, q, mode));
                    }
                }
                let big = StructuringElement::hamming(n, p as u32);
                assert_eq!(iterate(&a, &h, p, Mode::Dilate), big.dilate(&a));
                assert_eq!(iterate(&a, &h, p, Mode::Erode), big.erode(&a));
            }
        }
    }
}

#[test]
fn hamming_is_a_metric_with_betweenness() {
    for n in 1..=3u32 {
        let worlds = 0..1u32 << n;
        for x in worlds.clone() {
            for y in worlds.clone() {
                let d = hamming(x, y);
                assert_eq!(d == 0, x == y);
                assert_eq!(d, hamming(y, x));
                for z in worlds.clone() {
                    assert!(d <= hamming(x, z) + hamming(z, y));
                }
                for k in 0..=d {
                    assert!(worlds
                        .clone()
                        .any(|z| hamming(x, z) == k && hamming(z, y) == d - k));
                }
            }
        }
    }
}

#[test]
fn stratification_levels_are_nested() {
    for n in 1..=3 {
        for se in elements(n) {
            for s in sets(n).into_iter().filter(|s| !s.is_empty()) {
                let st = stratify(&s, &se).unwrap();
                let top = (st.m() + st.n()) as u32;
                for k in 0..top {
                    assert!(st.level(k).is_subset(&st.level(k + 1)));
                }
                assert_eq!(st.level(st.m() as u32), s);
                for w in 0..1u32 << n {
                    let inside = st.level(top).contains(w);
                    assert_eq!(inside, st.rank(w) != Distance::Infinite);
                }
            }
        }
    }
}

#[test]
fn ultimate_erosion_routes_agree_and_distribute() {
    for n in 1..=4 {
        let h = StructuringElement::hamming(n, 1);
        for s in WorldSet::all_sets(n) {
            let ue = ultimate_erosion(&s, &h);
            assert_eq!(ue, ultimate_erosion_recursive(&s, &h), "{s:?}");
            let comps = connected_components(&s, &h);
            let join = |f: &dyn Fn(&WorldSet) -> WorldSet| {
                comps
                    .iter()
                    .fold(WorldSet::empty(n), |acc, c| acc.union(&f(c)))
            };
            assert_eq!(ue, join(&|c| ultimate_erosion(c, &h)));
            assert_eq!(open(&s, &h), join(&|c| open(c, &h)));
            assert_eq!(skeleton(&s, &h), join(&|c| skeleton(c, &h)));
        }
    }
    for se in elements(3) {
        for s in sets(3) {
            assert_eq!(
                ultimate_erosion(&s, &se),
                ultimate_erosion_recursive(&s, &se)
            );
        }
    }
}

/// Centers of maximal Hamming balls inside `s`: `ω` with some radius `r`
/// such that `B(ω, r) ⊆ s` and no ball of larger radius inside `s` contains
/// it. Balls are (center, radius) pairs, so `Ω` has no maximal ball.
fn maximal_ball_centers(s: &WorldSet) -> WorldSet {
    let n = s.n();
    let ball =
        |c: u32, r: u32| WorldSet::from_worlds(n, (0..1u32 << n).filter(|&x| hamming(x, c) <= r));
    let inside: Vec<(u32, u32, WorldSet)> = (0..1u32 << n)
        .flat_map(|c| (0..=n as u32).map(move |r| (c, r)))
        .map(|(c, r)| (c, r, ball(c, r)))
        .filter(|(_, _, b)| b.is_subset(s))
        .collect();
    let maximal = inside.iter().filter(|(_, r, b)| {
        // a ball equal to Ω is contained in every larger radius around any center
        !b.is_full() && !inside.iter().any(|(_, r2, b2)| r2 > r && b.is_subset(b2))
    });
    WorldSet::from_worlds(n, maximal.map(|(c, _, _)| *c))
}

#[test]
fn skeleton_is_set_of_maximal_ball_centers() {
    for n in 1..=4 {
        let h = StructuringElement::hamming(n, 1);
        for s in WorldSet::all_sets(n) {
            assert_eq!(skeleton(&s, &h), maximal_ball_centers(&s), "{s:?}");
        }
    }
}

#[test]
fn last_erosion_depth_bound() {
    for n in 1..=4 {
        let h = StructuringElement::hamming(n, 1);
        for s in WorldSet::all_sets(n).filter(|s| !s.is_empty() && !s.is_full()) {
            let (_, depth) = last_erosion(&s, &h).unwrap();
            assert!(depth < n, "{s:?}");
        }
    }
}
