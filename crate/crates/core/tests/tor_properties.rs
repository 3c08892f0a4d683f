mod common;

use proptest::prelude::*;

use common::{build, build_filtered, choice, fixture_index, fixtures, pick_prime};
use gorinj::gorenstein::residue_hull;
use gorinj::module::has_property_t;
use gorinj::tor::{cosyzygy, injective_hull, tensor, tor};

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn tensor_and_tor_commute(fi in fixture_index(), a in choice(), b in choice(), k in 0u32..4) {
        let f = &fixtures()[fi];
        let (m, n) = (build(f, &a), build(f, &b));
        prop_assert_eq!(tensor(&m, &n).unwrap(), tensor(&n, &m).unwrap());
        prop_assert_eq!(tor(k, &m, &n).unwrap(), tor(k, &n, &m).unwrap());
    }

    #[test]
    fn tor_is_additive(fi in fixture_index(), a in choice(), b in choice(), c in choice(), k in 0u32..4) {
        let f = &fixtures()[fi];
        let (m, n, l) = (build(f, &a), build(f, &b), build(f, &c));
        let lhs = tor(k, &m.direct_sum(&n).unwrap(), &l).unwrap();
        let rhs = tor(k, &m, &l).unwrap().direct_sum(&tor(k, &n, &l).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Modules with property t(P) keep it under Tor against anything.
    #[test]
    fn property_t_propagates_through_tor(fi in fixture_index(), a in choice(), b in choice(), i in 0usize..8, k in 0u32..3) {
        let f = &fixtures()[fi];
        let p = pick_prime(f, i);
        let s = build_filtered(f, &a, |atom| gorinj::module::has_property_t(
            &gorinj::TameModule::atom(&f.ring, atom.clone()).unwrap(), &p).unwrap());
        prop_assert!(has_property_t(&s, &p).unwrap());
        let n = build(f, &b);
        prop_assert!(has_property_t(&tor(k, &s, &n).unwrap(), &p).unwrap());
        prop_assert!(has_property_t(&injective_hull(&s), &p).unwrap());
        prop_assert!(has_property_t(&cosyzygy(&s), &p).unwrap());
    }

    #[test]
    fn tor_vanishes_above_flat_dimension(fi in fixture_index(), a in choice(), i in 0usize..8, extra in 1u32..3) {
        let f = &fixtures()[fi];
        let p = pick_prime(f, i);
        let e = residue_hull(&f.ring, &p).unwrap();
        let m = build(f, &a);
        prop_assert!(tor(p.height() + extra, &e, &m).unwrap().is_zero());
    }

    #[test]
    fn hull_contains_and_cosyzygy_is_injective_over_domains(fi in fixture_index(), a in choice()) {
        let f = &fixtures()[fi];
        let m = build(f, &a);
        let h = injective_hull(&m);
        prop_assert!(gorinj::tor::is_injective(&h));
        if f.ring.is_domain() {
            prop_assert!(gorinj::tor::is_injective(&cosyzygy(&m)));
        }
        prop_assert_eq!(h.rank(), m.rank());
    }
}
