use proptest::prelude::*;
use wciscope::aut::{make_unipotent_element, PolynomialMap};
use wciscope::poly::Field;
use wciscope::qs::ExplicitWci;
use wciscope::random::{general_member, general_polynomial, rng};
use wciscope::schema::DescriptorFile;
use wciscope::WeightedProjectiveSpace;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn explicit_descriptors_round_trip(
        weights in prop::sample::select(vec![vec![1u64, 1, 1], vec![1, 1, 2], vec![1, 2, 3, 5], vec![1, 1, 1, 1, 2]]),
        d in 2u64..7,
        seed in 0u64..1000,
    ) {
        let f = general_member(&weights, d, &mut rng(seed));
        prop_assume!(!f.is_zero());
        let x = ExplicitWci::new(weights, vec![f]).unwrap();
        let text = DescriptorFile::from_explicit(&x).unwrap().to_json();
        let back = DescriptorFile::from_json(&text).unwrap().parse().unwrap();
        prop_assert_eq!(back.explicit().unwrap(), &x);
        prop_assert_eq!(DescriptorFile::from_explicit(back.explicit().unwrap()).unwrap().to_json(), text);
    }

    #[test]
    fn unipotent_maps_round_trip(seed in 0u64..1000) {
        let p = WeightedProjectiveSpace::new(vec![1, 1, 2, 3]).unwrap();
        let w = p.weights().to_vec();
        let mut r = rng(seed);
        let shifts = [(2usize, general_polynomial(4, &w, &[0, 1], 2, &mut r)), (3, general_polynomial(4, &w, &[0, 1, 2], 3, &mut r))]
            .into_iter()
            .collect();
        let sigma = make_unipotent_element(&p, &shifts, Field::Rationals).unwrap();
        let json = serde_json::to_string(&sigma.to_serialized().unwrap()).unwrap();
        let back = PolynomialMap::from_serialized(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, sigma);
    }
}
