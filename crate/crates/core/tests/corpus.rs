//! Invariant sweeps over exhaustively enumerated small-order corpora and
//! over the constructions the crate ships.

mod common;

use std::collections::BTreeSet;

use bsemi_core::completion::{abelianization, group_completion};
use bsemi_core::constructions::{
    cyclic_group, moore_semigroup, rectangular_band, suspension_monoid, trivial_monoid,
    wedge_monoid,
};
use bsemi_core::homology::{bar_complex, homology_profile, HomologyGroup, DEFAULT_COLUMN_CAP};
use bsemi_core::semigroup::FiniteSemigroup;
use bsemi_core::theorems::{all_pass, build_resolution, check_suspension_shift, homology_from_resolution};

fn corpus_up_to_3() -> Vec<FiniteSemigroup> {
    (1..=3).flat_map(common::semigroups_of_order).collect()
}

/// Small zoo of the constructions used throughout, capped by order.
fn construction_zoo(max_order: usize) -> Vec<FiniteSemigroup> {
    let semilattice = FiniteSemigroup::from_table(&[vec![0, 0], vec![0, 1]]).unwrap();
    let null2 = FiniteSemigroup::from_table(&[vec![0, 0], vec![0, 0]]).unwrap();
    let mut zoo = vec![
        trivial_monoid(),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(6),
        rectangular_band(2, 2),
        rectangular_band(3, 2),
        rectangular_band(2, 2).adjoin_identity(),
        rectangular_band(2, 2).adjoin_zero(),
        semilattice.clone(),
        semilattice.adjoin_identity(),
        null2,
        suspension_monoid(&trivial_monoid()).unwrap(),
        suspension_monoid(&cyclic_group(2)).unwrap(),
        moore_semigroup(2).0,
        moore_semigroup(2).1,
    ];
    zoo.retain(|s| s.order() <= max_order);
    zoo
}

#[test]
fn regularity_matches_idempotent_generated_principal_ideals() {
    for s in corpus_up_to_3() {
        let idempotents: Vec<usize> = s.idempotents();
        let by_ideals = (0..s.order()).all(|x| {
            let p = s.principal_ideal(x);
            idempotents.iter().any(|&e| s.principal_ideal(e) == p)
        });
        assert_eq!(s.is_regular(), by_ideals, "table {:?}", s.table());
    }
}

#[test]
fn aperiodicity_routes_agree_on_the_corpus() {
    for s in corpus_up_to_3() {
        assert_eq!(
            s.is_aperiodic(),
            s.is_aperiodic_by_power_stabilization(),
            "table {:?}",
            s.table()
        );
    }
}

#[test]
fn minimal_ideal_is_contained_in_every_ideal() {
    let mut subjects = corpus_up_to_3();
    subjects.extend(construction_zoo(8));
    for s in subjects {
        let min: BTreeSet<usize> = s.minimal_ideal().elements.into_iter().collect();
        for ideal in common::all_ideals_brute_force(&s) {
            let ideal: BTreeSet<usize> = ideal.into_iter().collect();
            assert!(
                min.is_subset(&ideal),
                "minimal ideal escapes an ideal of {:?}",
                s.table()
            );
        }
    }
}

#[test]
fn rees_quotient_by_minimal_ideal_has_zero_on_the_corpus() {
    for s in corpus_up_to_3() {
        let q = s.rees_quotient(&s.minimal_ideal()).unwrap();
        assert!(q.zero().is_some(), "table {:?}", s.table());
    }
}

#[test]
fn principal_series_is_certified_and_descends_to_the_minimal_ideal() {
    let mut subjects = corpus_up_to_3();
    subjects.extend(construction_zoo(13));
    for s in subjects {
        let series = s.principal_series();
        assert!(series.certified);
        assert_eq!(
            series.ideals.last().unwrap().elements,
            s.minimal_ideal().elements
        );
        assert_eq!(series.ideals[0].elements.len(), s.order());
        for ideal in &series.ideals {
            assert!(s.is_ideal(&ideal.elements));
        }
        for w in series.ideals.windows(2) {
            let prev: BTreeSet<usize> = w[0].elements.iter().copied().collect();
            let next: BTreeSet<usize> = w[1].elements.iter().copied().collect();
            assert!(next.is_subset(&prev) && next.len() < prev.len());
        }
    }
}

#[test]
fn normalized_and_unnormalized_agree_in_low_degrees() {
    for order in 1..=4 {
        for m in common::monoids_of_order(order) {
            let normalized = bar_complex(&m, 3, true, DEFAULT_COLUMN_CAP).unwrap();
            let fat = bar_complex(&m, 3, false, DEFAULT_COLUMN_CAP).unwrap();
            for q in 0..=2 {
                assert_eq!(
                    normalized.homology(q).unwrap(),
                    fat.homology(q).unwrap(),
                    "degree {q} of {:?}",
                    m.table()
                );
            }
        }
    }
}

#[test]
fn semigroup_delta_set_matches_the_adjoined_monoid() {
    // The classifying space of S and of S with an identity adjoined agree,
    // so the unnormalized complex of S must give the homology of the
    // normalized complex of S^1.
    for s in corpus_up_to_3() {
        let fat = bar_complex(&s, 3, false, DEFAULT_COLUMN_CAP).unwrap();
        let normalized = bar_complex(&s.adjoin_identity(), 3, true, DEFAULT_COLUMN_CAP).unwrap();
        for q in 0..=2 {
            assert_eq!(
                fat.homology(q).unwrap(),
                normalized.homology(q).unwrap(),
                "degree {q} of {:?}",
                s.table()
            );
        }
    }
}

#[test]
fn maximal_subgroups_are_groups_at_every_idempotent() {
    for s in corpus_up_to_3() {
        for e in s.idempotents() {
            let g = s.maximal_subgroup(e).unwrap();
            let t = &g.table;
            let identity = t.identity().expect("unit group has an identity");
            assert_eq!(g.elements[identity], e);
            for x in 0..t.order() {
                assert!((0..t.order())
                    .any(|y| t.mul(x, y) == identity && t.mul(y, x) == identity));
            }
        }
    }
}

#[test]
fn h0_is_z_for_every_monoid() {
    for order in 1..=4 {
        for m in common::monoids_of_order(order) {
            let h0 = bar_complex(&m, 1, true, DEFAULT_COLUMN_CAP)
                .unwrap()
                .homology(0)
                .unwrap();
            assert_eq!(h0, HomologyGroup::free(1));
        }
    }
}

#[test]
fn suspension_shift_holds_for_all_monoids_up_to_order_4() {
    for order in 1..=4 {
        for m in common::monoids_of_order(order) {
            let reports = check_suspension_shift(&m, 4, DEFAULT_COLUMN_CAP).unwrap();
            assert!(
                all_pass(&reports),
                "suspension shift fails for {:?}",
                m.table()
            );
        }
    }
}

#[test]
fn suspension_minimal_ideal_is_the_double_band() {
    for order in 1..=3 {
        for m in common::monoids_of_order(order) {
            let j = suspension_monoid(&m).unwrap();
            let min = j.minimal_ideal();
            assert_eq!(min.elements.len(), 2 * m.order());
            assert_eq!(min.elements, (m.order()..3 * m.order()).collect::<Vec<_>>());
            assert!(j.is_rectangular_band_on(&min.elements));
        }
    }
}

#[test]
fn resolution_route_matches_bar_route() {
    let r2 = build_resolution(2);
    let from_resolution = homology_from_resolution(&r2);
    let (_, m2, _) = moore_semigroup(2);
    let from_bar = homology_profile(&m2, 4, true, DEFAULT_COLUMN_CAP).unwrap();
    assert_eq!(from_resolution, from_bar);

    for n in [3usize, 4] {
        let r = build_resolution(n);
        let from_resolution = homology_from_resolution(&r);
        let m = moore_semigroup(n).1;
        let from_bar = homology_profile(&m, 3, true, DEFAULT_COLUMN_CAP).unwrap();
        assert_eq!(&from_resolution[..3], &from_bar[..], "modulus {n}");
    }
}

#[test]
fn h1_matches_abelianized_completion_for_constructions() {
    for s in construction_zoo(13) {
        let monoid = if s.is_monoid() { s.clone() } else { s.adjoin_identity() };
        let h1 = bar_complex(&monoid, 2, true, DEFAULT_COLUMN_CAP)
            .unwrap()
            .homology(1)
            .unwrap();
        // G(S) and G(S^1) coincide; check through the semigroup itself.
        let g = group_completion(&s).unwrap();
        let ab = abelianization(&g);
        assert_eq!(h1, ab, "construction of order {}", s.order());
        let g1 = group_completion(&monoid).unwrap();
        assert_eq!(g.order, g1.order);
    }
}

#[test]
fn iterated_wedge_adds_three_reduced_homologies() {
    let a = rectangular_band(2, 2).adjoin_identity(); // sphere, H_2 = Z
    let b = suspension_monoid(&trivial_monoid()).unwrap(); // contractible
    let w2 = wedge_monoid(&a, &b).unwrap();
    assert_eq!(w2.semigroup.order(), 5 + 4 * 2);
    let min = w2.semigroup.minimal_ideal();
    assert!(w2.semigroup.is_rectangular_band_on(&min.elements));
    let w3 = wedge_monoid(&w2.semigroup, &b).unwrap();
    assert_eq!(w3.semigroup.order(), 13 + 8 * 2);
    let h = homology_profile(&w3.semigroup, 3, true, DEFAULT_COLUMN_CAP).unwrap();
    let ha = homology_profile(&a, 3, true, DEFAULT_COLUMN_CAP).unwrap();
    let hb = homology_profile(&b, 3, true, DEFAULT_COLUMN_CAP).unwrap();
    for q in 1..=2 {
        assert_eq!(h[q], ha[q].direct_sum(&hb[q]).direct_sum(&hb[q]));
    }
    assert_eq!(h[2], HomologyGroup::free(1));
}

#[test]
fn idempotents_with_equal_principal_ideals_have_equal_subgroup_orders() {
    // Full isomorphism testing is out of scope; orders are compared.
    let mut subjects = corpus_up_to_3();
    subjects.extend(construction_zoo(13));
    for s in subjects {
        let idempotents = s.idempotents();
        for (i, &e) in idempotents.iter().enumerate() {
            for &f in &idempotents[i + 1..] {
                if s.principal_ideal(e) == s.principal_ideal(f) {
                    let ge = s.maximal_subgroup(e).unwrap().elements.len();
                    let gf = s.maximal_subgroup(f).unwrap().elements.len();
                    assert_eq!(ge, gf, "subgroup orders differ at {e}, {f}");
                }
            }
        }
    }
}

#[test]
fn rational_betti_of_m3_vanishes_in_degree_two() {
    let (_, m3, _) = moore_semigroup(3);
    let c = bar_complex(&m3, 3, true, DEFAULT_COLUMN_CAP).unwrap();
    assert_eq!(c.rational_betti(2).unwrap(), 0);
    assert_eq!(c.rational_betti(0).unwrap(), 1);
}

#[test]
fn homology_is_invariant_under_relabeling_for_j_c2() {
    let j = suspension_monoid(&cyclic_group(2)).unwrap();
    let base = homology_profile(&j, 4, true, DEFAULT_COLUMN_CAP).unwrap();
    let perm: Vec<usize> = vec![3, 0, 5, 1, 4, 2];
    let relabeled = j.relabel(&perm);
    let h = homology_profile(&relabeled, 4, true, DEFAULT_COLUMN_CAP).unwrap();
    assert_eq!(base, h);
    assert_eq!(
        group_completion(&j).unwrap().order,
        group_completion(&relabeled).unwrap().order
    );
}
