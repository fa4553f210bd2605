use bordcalc_core::conner_floyd::augmentation_from_boundary;
use bordcalc_core::parse::{parse_laurent, parse_manifold, parse_presentation};
use bordcalc_core::verify::random_catalog_expr;
use bordcalc_core::{
    clear_denominators, dictionary, iota, phi, pt_class, BasisShape, CoefElem, Engine, Membership,
    Presentation,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COEFS: [&[u32]; 5] = [&[], &[2], &[4], &[2, 2], &[5]];

fn product() -> impl Strategy<Value = (Vec<(u32, u32)>, usize, u32)> {
    (
        prop::collection::vec((0u32..=2, 2u32..=4), 0..=3),
        0..COEFS.len(),
        0u32..=2,
    )
}

fn build((gens, coef, e): &(Vec<(u32, u32)>, usize, u32)) -> Presentation {
    let mut x = Presentation::e_pow(*e);
    for &(i, n) in gens {
        x = x.mul(&Presentation::g(i, n).unwrap());
    }
    for &d in COEFS[*coef] {
        x = x.mul(&iota(&CoefElem::generator(d)));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_faithful_and_idempotent(p in product()) {
        let en = Engine::default();
        let x = build(&p);
        let nf = en.normal_form(&x).unwrap();
        prop_assert!(nf.is_basis_combination(BasisShape::Relaxed));
        prop_assert_eq!(en.normal_form(&nf).unwrap(), nf.clone());
        prop_assert_eq!(en.localize(&nf).unwrap(), en.localize(&x).unwrap());
    }

    #[test]
    fn alpha_and_localize_are_multiplicative(p in product(), q in product()) {
        let en = Engine::default();
        let (x, y) = (build(&p), build(&q));
        let xy = en.normal_form(&x.mul(&y)).unwrap();
        prop_assert_eq!(en.alpha(&xy).unwrap(), &en.alpha(&x).unwrap() * &en.alpha(&y).unwrap());
        prop_assert_eq!(en.localize(&xy).unwrap(), &en.localize(&x).unwrap() * &en.localize(&y).unwrap());
    }

    #[test]
    fn gamma_contract(p in product()) {
        let en = Engine::default();
        let x = build(&p);
        let g = en.gamma(&x).unwrap();
        let sum = Presentation::e_pow(1).mul(&g).add(&x).add(&iota(&en.alpha(&x).unwrap()));
        prop_assert!(en.normal_form(&sum).unwrap().is_zero());
        let nf = en.normal_form(&x).unwrap();
        prop_assert_eq!(en.divide_e(&Presentation::e_pow(1).mul(&x)).unwrap(), nf);
    }

    #[test]
    fn augmentation_matches_boundary(p in product()) {
        let en = Engine::default();
        let x = build(&p);
        let via_boundary = augmentation_from_boundary(&en.localize(&x).unwrap(), &en.ring).unwrap();
        prop_assert_eq!(en.alpha(&x).unwrap(), via_boundary);
    }

    #[test]
    fn printed_forms_parse_back(p in product()) {
        let en = Engine::default();
        let nf = en.normal_form(&build(&p)).unwrap();
        prop_assert_eq!(parse_presentation(&nf.to_string(), &en).unwrap(), nf.clone());
        let l = en.localize(&nf).unwrap();
        prop_assert_eq!(parse_laurent(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn localizations_are_members(p in product()) {
        let en = Engine::default();
        let x = build(&p);
        prop_assume!(x.homogeneous_degree().unwrap_or(0) <= 8);
        let l = en.localize(&x).unwrap();
        match en.member(&l).unwrap() {
            Membership::Member(y) => prop_assert_eq!(en.localize(&y).unwrap(), l.clone()),
            other => prop_assert!(false, "{:?}", other),
        }
        if !l.is_zero() {
            prop_assert!(en.member_by_division(&l).unwrap().is_some());
            prop_assert_eq!(bordcalc_core::localized::evaluate_cleared(&clear_denominators(&l).unwrap()), l);
        }
    }

    #[test]
    fn catalog_expressions_commute_with_comparison(seed in any::<u64>()) {
        let en = Engine::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_catalog_expr(&en, &mut rng, 7).unwrap();
        prop_assert_eq!(parse_manifold(&m.to_string()).unwrap().to_string(), m.to_string());
        let lhs = dictionary(&phi(&m, &en.ring).unwrap());
        prop_assert_eq!(lhs, en.localize(&pt_class(&m, &en).unwrap()).unwrap());
    }
}
