//! Randomized invariants over braid closures and annulus diagrams.

mod common;

use khoworks::analysis::{predict_torsion, thickness, thickness_bound};
use khoworks::annulus::{
    expand_in_core_powers, AnnulusDiagram, incidence_audit, kbsm_coefficients, plus_state_core_count, stratified_euler,
    stratified_euler_homology, stratified_homology, torus_annulus, torus_knot_skein_polynomial,
};
use khoworks::diagram::{hopf_chain, torus2, KauffmanState, Kink, Orientation};
use khoworks::fixtures::{k8_19, l6a2, trefoil};
use khoworks::homology::{coreduced, khovanov, reduced, ChainComplex, HomologyConfig};
use khoworks::polynomial::{homology_euler_characteristic, jones, unnormalized_bracket};
use khoworks::state_graph::{adequacy, build_state_graph};
use khoworks::{parse_pd, LinkDiagram};
use proptest::prelude::*;

use common::{braid, brute_force_bipartite, tensor_with_free};

fn word(strands: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    let g = strands as i32 - 1;
    prop::collection::vec((1..=g, any::<bool>()).prop_map(|(x, s)| if s { x } else { -x }), 1..=max_len)
}

fn braid_word(max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=4).prop_flat_map(move |s| (Just(s), word(s, max_len)))
}

/// Generator g carries sign (−1)^(g+1), which makes the closure alternating.
fn alternating_word(max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=4).prop_flat_map(move |s| {
        let g = s as i32 - 1;
        (Just(s), prop::collection::vec((1..=g).prop_map(|x| if x % 2 == 1 { x } else { -x }), 1..=max_len))
    })
}

fn mirror_key(i: i64, j: i64) -> (i64, i64) {
    (-i, -j)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pd_round_trip((s, w) in braid_word(8)) {
        let d = braid(s, &w);
        prop_assert_eq!(parse_pd(&d.to_pd()).unwrap(), d);
    }

    #[test]
    fn differential_squares_to_zero((s, w) in braid_word(8)) {
        let cx = ChainComplex::new(&braid(s, &w), &HomologyConfig::default()).unwrap();
        for &(i, j) in cx.dimensions().keys() {
            prop_assert!(cx.differential(i - 2, j).mul(&cx.differential(i, j)).is_zero(), "({}, {})", i, j);
        }
    }

    #[test]
    fn euler_characteristic_is_bracket((s, w) in braid_word(8)) {
        let d = braid(s, &w);
        prop_assert_eq!(homology_euler_characteristic(&khovanov(&d).unwrap()), unnormalized_bracket(&d).unwrap());
    }

    #[test]
    fn crossing_order_is_irrelevant((s, w) in braid_word(7), seed in any::<u64>()) {
        let d = braid(s, &w);
        let mut perm: Vec<usize> = (0..d.n_crossings()).collect();
        // deterministic shuffle from the seed
        let mut x = seed | 1;
        for k in (1..perm.len()).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            perm.swap(k, (x % (k as u64 + 1)) as usize);
        }
        prop_assert_eq!(khovanov(&d.permuted(&perm).unwrap()).unwrap(), khovanov(&d).unwrap());
    }

    #[test]
    fn mirror_duality((s, w) in braid_word(8)) {
        let d = braid(s, &w);
        let h = khovanov(&d).unwrap();
        let m = khovanov(&d.mirror()).unwrap();
        for (&[i, j], g) in h.iter() {
            let (a, b) = mirror_key(i, j);
            prop_assert_eq!(m.get(a, b).free_rank, g.free_rank);
            prop_assert_eq!(m.get(-i - 2, -j).torsion_part(), g.torsion_part());
        }
        prop_assert_eq!(m.total_free_rank(), h.total_free_rank());
    }

    #[test]
    fn kunneth_with_hopf_chain((s, w) in braid_word(6), m in 0usize..=1) {
        let d = braid(s, &w);
        let second = if m == 0 { LinkDiagram::unknot() } else { hopf_chain(m).unwrap() };
        let want = tensor_with_free(&khovanov(&d).unwrap(), &khovanov(&second).unwrap());
        prop_assert_eq!(khovanov(&d.disjoint_union(&second)).unwrap(), want);
    }

    #[test]
    fn kinks_shift_gradings((s, w) in braid_word(6), positive in any::<bool>()) {
        let d = braid(s, &w);
        let arc = d.arc_labels().next().unwrap().to_string();
        let (kink, delta) = if positive { (Kink::Positive, [1, 3]) } else { (Kink::Negative, [-1, -3]) };
        prop_assert_eq!(khovanov(&d.with_kink(&arc, kink).unwrap()).unwrap(), khovanov(&d).unwrap().shifted(delta));
    }

    #[test]
    fn reduced_rank_bookkeeping((s, w) in braid_word(7)) {
        let d = braid(s, &w);
        let h = khovanov(&d).unwrap();
        let b = d.arc_labels().next().unwrap().to_string();
        let r = reduced(&d, &b).unwrap();
        let c = coreduced(&d, &b).unwrap();
        for (&[i, j], g) in h.iter() {
            prop_assert!(g.free_rank <= r.free_rank(i, j) + c.free_rank(i, j), "({}, {})", i, j);
        }
    }

    #[test]
    fn extreme_groups_of_adequate_diagrams((s, w) in braid_word(8)) {
        let d = braid(s, &w);
        let h = khovanov(&d).unwrap();
        let a = adequacy(&d);
        let n = d.n_crossings() as i64;
        let (sp, sm) = d.extreme_circle_counts();
        if a.plus {
            prop_assert_eq!(h.get(n, n + 2 * sp as i64), khoworks::homology::AbelianGroup::free(1));
        }
        if a.minus {
            prop_assert_eq!(h.get(-n, -n - 2 * sm as i64), khoworks::homology::AbelianGroup::free(1));
        }
    }

    #[test]
    fn jones_of_mirror_is_inverted((s, w) in braid_word(8)) {
        let d = braid(s, &w);
        let m = d.mirror();
        let v = jones(&d, &Orientation::reference(&d)).unwrap();
        let vm = jones(&m, &Orientation::reference(&m)).unwrap();
        prop_assert_eq!(vm, v.inverted());
    }

    #[test]
    fn bipartite_matches_brute_force((s, w) in braid_word(8), mask in any::<u64>()) {
        let d = braid(s, &w);
        let st = KauffmanState::from_mask(d.n_crossings(), mask);
        let g = build_state_graph(&d, &st);
        let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.u, e.v)).collect();
        prop_assert_eq!(g.is_bipartite(), brute_force_bipartite(g.vertices, &edges));
    }

    #[test]
    fn mirror_swaps_state_graphs((s, w) in braid_word(8), mask in any::<u64>()) {
        let d = braid(s, &w);
        let st = KauffmanState::from_mask(d.n_crossings(), mask);
        let g = build_state_graph(&d, &st);
        let gm = build_state_graph(&d.mirror(), &st.negated());
        let mut deg = g.degrees();
        let mut deg_m = gm.degrees();
        deg.sort_unstable();
        deg_m.sort_unstable();
        prop_assert_eq!(g.vertices, gm.vertices);
        prop_assert_eq!(deg, deg_m);
        prop_assert_eq!(g.is_bipartite(), gm.is_bipartite());
        prop_assert_eq!(g.is_loopless(), gm.is_loopless());
    }

    #[test]
    fn alternating_thickness_within_envelope((s, w) in alternating_word(8)) {
        let d = braid(s, &w);
        prop_assume!(d.is_connected());
        let r = thickness(&khovanov(&d).unwrap(), &d);
        prop_assert!(thickness_bound(&d, 0).admits(&r), "{:?}", r);
    }

    #[test]
    fn almost_alternating_thickness_within_envelope((s, w) in alternating_word(8), flip in any::<prop::sample::Index>()) {
        let mut w = w;
        let k = flip.index(w.len());
        w[k] = -w[k];
        let d = braid(s, &w);
        prop_assume!(d.is_connected());
        let r = thickness(&khovanov(&d).unwrap(), &d);
        prop_assert!(thickness_bound(&d, 1).admits(&r), "{:?}", r);
    }

    #[test]
    fn split_sum_thickness((s, w) in alternating_word(5), (t, v) in alternating_word(5)) {
        let (a, b) = (braid(s, &w), braid(t, &v));
        prop_assume!(a.is_connected() && b.is_connected());
        let u = a.disjoint_union(&b);
        let env = thickness_bound(&a, 0).split_sum(thickness_bound(&b, 0));
        let r = thickness(&khovanov(&u).unwrap(), &u);
        prop_assert!(env.admits(&r), "{:?} against {:?}", r, env);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Predictions are guarantees on adequate diagrams up to ten crossings.
    #[test]
    fn predictions_are_sound((s, w) in braid_word(10)) {
        let d = braid(s, &w);
        let a = adequacy(&d);
        prop_assume!(a.plus || a.minus);
        let h = khovanov(&d).unwrap();
        let p = predict_torsion(&d);
        prop_assert!(p.violations(&h).is_empty(), "{:?}", p.violations(&h));
    }

    #[test]
    fn annulus_invariants(r in -4i64..=4, k in 1i64..=3) {
        prop_assume!(r != 0);
        let ad = torus_annulus(r, k).unwrap();
        let cfg = HomologyConfig::default();
        let n = ad.base.n_crossings();
        for mask in 0..1u64 << n {
            let w = ad.windings(&KauffmanState::from_mask(n, mask));
            prop_assert!(w.iter().all(|x| x.abs() <= 1), "{:?}", w);
        }
        let audit = incidence_audit(&ad, &cfg).unwrap();
        prop_assert!(audit.kappa_preserved && audit.j_preserved, "{:?}", audit);
        let h = stratified_homology(&ad).unwrap();
        let flat = AnnulusDiagram::new(ad.base.clone(), Default::default()).unwrap();
        prop_assert_eq!(stratified_homology(&flat).unwrap().collapse(), khovanov(&ad.base).unwrap());
        let cx = ad.complex(&cfg).unwrap();
        prop_assert_eq!(stratified_euler(&cx), stratified_euler_homology(&h));
        let core = plus_state_core_count(&ad) as i64;
        for (key, _) in h.iter() {
            prop_assert_eq!((key[2] - core).rem_euclid(2), 0);
        }
        prop_assert!(kbsm_coefficients(&ad).is_ok());
    }
}

#[test]
fn torus_knots_match_the_skein_formula() {
    let cfg = HomologyConfig::default();
    for (r, k) in [(1, 2), (-1, 2), (3, 2), (-3, 2), (5, 2), (1, 3), (-1, 3), (2, 3), (-2, 3), (1, 4), (-1, 4)] {
        let ad = torus_annulus(r, k).unwrap();
        let formula = torus_knot_skein_polynomial(r, k).unwrap();
        assert_eq!(stratified_euler(&ad.complex(&cfg).unwrap()), formula, "({r},{k})");
        assert_eq!(kbsm_coefficients(&ad).unwrap(), expand_in_core_powers(&formula).unwrap(), "({r},{k})");
    }
}

#[test]
fn dichotomy_on_fixtures() {
    for d in [trefoil(), torus2(-5).unwrap(), braid(3, &[1, -2, 1, -2]), l6a2()] {
        assert!(!khovanov(&d).unwrap().is_torsion_free(), "{}", d.to_pd());
    }
    for d in [LinkDiagram::unknot(), torus2(-2).unwrap(), hopf_chain(2).unwrap(), hopf_chain(3).unwrap()] {
        assert!(khovanov(&d).unwrap().is_torsion_free(), "{}", d.to_pd());
    }
}

#[test]
fn clasps_force_torsion() {
    // +-adequate diagrams with a negative clasp that is not a Hopf summand
    for d in [torus2(-3).unwrap(), torus2(-4).unwrap(), torus2(-6).unwrap(), l6a2(), braid(3, &[-1, -1, -1, -2, -2])] {
        assert!(adequacy(&d).plus, "{}", d.to_pd());
        let h = khovanov(&d).unwrap();
        assert!(h.iter().any(|(_, g)| g.contains_z2()), "{}", d.to_pd());
    }
}

#[test]
fn duality_on_fixtures() {
    for d in [trefoil(), l6a2(), k8_19()] {
        let h = khovanov(&d).unwrap();
        let m = khovanov(&d.mirror()).unwrap();
        for (&[i, j], g) in h.iter() {
            assert_eq!(m.get(-i, -j).free_rank, g.free_rank);
            assert_eq!(m.get(-i - 2, -j).torsion_part(), g.torsion_part());
        }
    }
}

#[test]
fn core_grading_congruence_is_mod_two() {
    let cfg = HomologyConfig::default();
    for (r, k) in [(1, 2), (-3, 2), (2, 2), (1, 3), (2, 3), (-1, 4)] {
        let ad = torus_annulus(r, k).unwrap();
        let core = plus_state_core_count(&ad) as i64;
        let grades: Vec<i64> = ad.complex(&cfg).unwrap().gradings().into_iter().map(|g| g.2).collect();
        assert!(grades.iter().all(|x| (x - core).rem_euclid(2) == 0), "({r},{k})");
    }
    // the mod 4 strengthening fails already on one crossing: k = 2 and k = 0 both occur
    let ad = torus_annulus(1, 2).unwrap();
    let cx = ad.complex(&cfg).unwrap();
    assert_eq!(plus_state_core_count(&ad), 2);
    assert!(cx.dim3(1, 1, 2) > 0 && cx.dim3(1, 1, 0) > 0);
}
