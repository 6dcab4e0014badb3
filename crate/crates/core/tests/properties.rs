use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use abelcs::heisenberg::{finite_normal_form, heis_mul, schrodinger_matrix, HeisElement};
use abelcs::tangle::{
    evaluate, linking_oracle, parse_diagram, random_diagram, reverse_component, trace_strands, RandomParams,
};
use abelcs::theta::{dehn_twist_matrix, SymplecticMatrix};
use abelcs::CycloScalar;

fn level() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 4, 6])
}

// scalars with a common power of N, so that sums are defined
fn scalar(n: u32, half: bool) -> impl Strategy<Value = CycloScalar> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 2 * n as usize).prop_map(move |cs| {
        let coeffs: Vec<BigRational> =
            cs.into_iter().map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect();
        CycloScalar::from_coeffs(n, &coeffs, if half { -1 } else { 0 })
    })
}

fn scalars3() -> impl Strategy<Value = (CycloScalar, CycloScalar, CycloScalar)> {
    (level(), prop::bool::ANY).prop_flat_map(|(n, h)| (scalar(n, h), scalar(n, h), scalar(n, h)))
}

fn heis(g: usize) -> impl Strategy<Value = HeisElement> {
    (prop::collection::vec(-6i64..6, g), prop::collection::vec(-6i64..6, g), -9i64..9)
        .prop_map(|(p, q, k)| HeisElement::new(p, q, k).unwrap())
}

fn twist() -> impl Strategy<Value = SymplecticMatrix> {
    (prop::collection::vec(-2i64..=2, 2), prop::collection::vec(-2i64..=2, 2), prop::bool::ANY)
        .prop_filter_map("primitive curve", |(p, q, s)| dehn_twist_matrix(&p, &q, if s { 1 } else { -1 }).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in scalars3()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.try_inv().unwrap()).is_one());
        }
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn complex_embedding_is_a_homomorphism((a, b, _) in scalars3()) {
        let z = (&a * &b).to_complex();
        let w = a.to_complex() * b.to_complex();
        prop_assert!((z - w).norm() <= 1e-9 * (1.0 + w.norm()));
    }

    #[test]
    fn heisenberg_group_law(x in heis(2), y in heis(2), z in heis(2)) {
        let xy_z = heis_mul(&heis_mul(&x, &y).unwrap(), &z).unwrap();
        let x_yz = heis_mul(&x, &heis_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&xy_z, &x_yz);
        prop_assert_eq!(heis_mul(&x, &x.inverse()).unwrap(), HeisElement::identity(2));
    }

    #[test]
    fn schrodinger_factors_through_normal_form(x in heis(1), y in heis(1), n in level()) {
        let rx = schrodinger_matrix(&x, n).unwrap();
        prop_assert_eq!(&rx, &schrodinger_matrix(&finite_normal_form(&x, n), n).unwrap());
        let lhs = rx.compose(&schrodinger_matrix(&y, n).unwrap());
        prop_assert_eq!(lhs, schrodinger_matrix(&heis_mul(&x, &y).unwrap(), n).unwrap());
    }

    #[test]
    fn symplectic_automorphisms(a in twist(), b in twist(), x in heis(2), y in heis(2)) {
        let h = a.compose(&b);
        prop_assert!(h.compose(&h.inverse()).entries() == SymplecticMatrix::identity(2).entries());
        let lhs = heis_mul(&x, &y).unwrap().transform(&h);
        prop_assert_eq!(lhs, heis_mul(&x.transform(&h), &y.transform(&h)).unwrap());
    }

    #[test]
    fn random_diagrams(seed in any::<u64>(), n in prop::sample::select(vec![2u32, 4])) {
        let d = random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), n, &RandomParams::default());
        let value = evaluate(&d);
        prop_assert_eq!(&value, &linking_oracle(&trace_strands(&d), n));
        prop_assert_eq!(&parse_diagram(&d.to_slc()).unwrap(), &d);
        let comps = trace_strands(&d).components.len();
        let mut all = d.clone();
        for c in 0..comps {
            prop_assert_eq!(evaluate(&reverse_component(&d, c, true)), value.clone());
            all = reverse_component(&all, c, false);
        }
        prop_assert_eq!(evaluate(&all), value);
    }
}
