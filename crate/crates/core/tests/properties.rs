//! Randomized invariants, each checked against an independent computation.

mod common;

use additive_toric::linalg::{hermite_normal_form, nullspace, smith_normal_form, to_rational, Int, IntMatrix, Rat};
use additive_toric::localalg::{catalog, orbit_quadric, ProjectivePoint};
use additive_toric::polytope::LatticePolytope;
use common::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Full-dimensional hulls of a few random points in a small box.
fn polytope(n: usize) -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n + 1..=n + 4)
        .prop_filter_map("degenerate hull", move |pts| LatticePolytope::hull(n, pts.iter().map(|p| ivec(p)).collect()).ok())
}

/// Index of a bundled algebra with an element of its maximal ideal.
fn algebra_and_element() -> impl Strategy<Value = (usize, Vec<Rat>)> {
    (0..catalog().algebras.len()).prop_flat_map(|i| (Just(i), ideal_element(catalog().algebras[i].algebra.dim())))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exp_of_negation_is_the_inverse((i, u) in algebra_and_element()) {
        let a = &catalog().algebras[i].algebra;
        let neg: Vec<Rat> = u.iter().map(|x| -x).collect();
        prop_assert_eq!(a.multiply(&a.exp(&u).unwrap(), &a.exp(&neg).unwrap()), a.unit());
    }

    #[test]
    fn lattice_points_match_a_box_scan(p in polytope(3)) {
        prop_assert_eq!(p.lattice_points(), box_scan(&p));
    }

    #[test]
    fn vertex_and_facet_descriptions_agree(p in polytope(3)) {
        let n = p.dim();
        for v in p.vertices() {
            prop_assert!(p.facets().iter().all(|h| h.contains(v)));
            prop_assert!(p.facets().iter().filter(|h| h.is_tight(v)).count() >= n);
        }
        for h in p.facets() {
            prop_assert!(p.vertices().iter().filter(|v| h.is_tight(v)).count() >= n);
        }
        prop_assert_eq!(&LatticePolytope::new(n, p.vertices().to_vec()).unwrap(), &p);
        prop_assert_eq!(&LatticePolytope::hull(n, p.lattice_points()).unwrap(), &p);
    }

    #[test]
    fn dilations_grow_and_start_at_the_polytope(p in polytope(2)) {
        prop_assert_eq!(p.dilation_points(0), vec![vec![Int::zero(); 2]]);
        prop_assert_eq!(p.dilation_points(1), p.lattice_points());
        let counts: Vec<usize> = (0..=3).map(|k| p.dilation_points(k).len()).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] < w[1]), "{:?}", counts);
    }

    #[test]
    fn unimodular_images_keep_counts(p in polytope(3), g in unimodular(3), shift in prop::collection::vec(-4i64..=4, 3)) {
        prop_assert!(leibniz_det(&g.to_rows()).abs().is_one());
        let q = p.affine_image(&g, &ivec(&shift)).unwrap();
        prop_assert_eq!(q.lattice_point_count(), p.lattice_point_count());
        prop_assert_eq!(q.vertices().len(), p.vertices().len());
        prop_assert_eq!(q.facets().len(), p.facets().len());
        prop_assert_eq!(q.edges().len(), p.edges().len());
        prop_assert_eq!(q.is_inscribed_in_rectangle(), p.is_inscribed_in_rectangle());
    }

    #[test]
    fn projective_points_ignore_scaling(v in prop::collection::vec(small_rat(), 1..6), c in small_rat()) {
        prop_assume!(!c.is_zero() && v.iter().any(|x| !x.is_zero()));
        let scaled: Vec<Rat> = v.iter().map(|x| x * &c).collect();
        let p = ProjectivePoint::new(&v).unwrap();
        prop_assert_eq!(&ProjectivePoint::new(&scaled).unwrap(), &p);
        let first = p.coords().iter().find(|x| !x.is_zero()).unwrap();
        prop_assert!(first.is_positive());
        let g = p.coords().iter().fold(Int::zero(), |g, x| num_integer::Integer::gcd(&g, x));
        prop_assert!(g.is_one());
    }

    #[test]
    fn hermite_form_is_canonical(a in int_matrix(4, 4, 5), g in unimodular(4)) {
        prop_assume!(a.rows() == 4);
        let h = hermite_normal_form(&a);
        prop_assert_eq!(&hermite_normal_form(&h), &h);
        // left multiplication by a unimodular matrix keeps the row lattice
        prop_assert_eq!(&hermite_normal_form(&g.mul(&a)), &h);
        prop_assert_eq!(smith_normal_form(&h).invariant_factors(), smith_normal_form(&a).invariant_factors());
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(a in int_matrix(3, 4, 8)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&s.u.mul(&a).mul(&s.v), &s.d);
        let mut product = Int::one();
        for (k, d) in s.invariant_factors().iter().enumerate() {
            product *= d;
            prop_assert_eq!(&product, &determinantal_divisor(&a, k + 1));
        }
        let r = s.rank();
        if r < a.rows().min(a.cols()) {
            prop_assert!(determinantal_divisor(&a, r + 1).is_zero());
        }
    }
}

/// `x -> c1 x + c2 x^2 + c3 x^3` is an automorphism of `K[x]/(x^4)` for
/// `c1 != 0`; it carries the pair `<x, x^3>` to an equivalent pair, so the
/// orbit quadric keeps its degree and rank.
#[test]
fn reparametrizing_r1_keeps_degree_and_rank() {
    let entry = catalog().algebra("dim4/R1").unwrap();
    let a = &entry.algebra;
    let x = entry.presentation.element("x").unwrap();
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() });
    runner
        .run(&(small_rat(), small_rat(), small_rat()), |(c1, c2, c3)| {
            prop_assume!(!c1.is_zero());
            let x2 = a.multiply(&x, &x);
            let x3 = a.multiply(&x2, &x);
            let phi: Vec<Rat> = (0..4).map(|i| &c1 * &x[i] + &c2 * &x2[i] + &c3 * &x3[i]).collect();
            let phi3 = a.multiply(&a.multiply(&phi, &phi), &phi);
            let w = a.subspace(vec![phi, phi3]).unwrap();
            prop_assert_eq!(a.hypersurface_degree(&w), Ok(2));
            prop_assert_eq!(orbit_quadric(a, &w).unwrap().rank, 3);
            Ok(())
        })
        .unwrap();
}

#[test]
fn nullspace_rank_agrees_with_smith_rank() {
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() });
    runner
        .run(&int_matrix(4, 5, 3), |a: IntMatrix| {
            let kernel = nullspace(&to_rational(&a));
            for k in &kernel {
                prop_assert!(a.mul_vec(k).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(kernel.len() + smith_normal_form(&a).rank(), a.cols());
            Ok(())
        })
        .unwrap();
}
