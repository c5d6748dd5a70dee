use proptest::prelude::*;

use gendim_core::Permutation;

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn compose_is_associative(a in arb_perm(8), b in arb_perm(8), c in arb_perm(8)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn inverse_cancels(a in arb_perm(9)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in arb_perm(7), b in arb_perm(7), g in arb_perm(7)) {
        let lhs = a.compose(&b).conjugate_by(&g);
        let rhs = a.conjugate_by(&g).compose(&b.conjugate_by(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_annihilates(a in arb_perm(10)) {
        prop_assert!(a.pow(a.order()).is_identity());
    }

    #[test]
    fn parity_is_multiplicative(a in arb_perm(8), b in arb_perm(8)) {
        prop_assert_eq!(a.compose(&b).is_even(), a.is_even() == b.is_even());
    }
}
