use hecketrace::drinfeld::make_drinfeld;
use hecketrace::ffield::{build_tower, FieldTower};
use hecketrace::skewpoly::{right_divmod, skew_mul, skew_pow, SkewPoly};
use hecketrace::verify::gen;
use proptest::prelude::*;

fn towers() -> Vec<FieldTower> {
    [(3, 1, 2), (2, 2, 2), (5, 1, 1), (2, 1, 3)].iter().map(|&(p, e, m)| build_tower(p, e, m).unwrap()).collect()
}

#[test]
fn worked_division() {
    let k = build_tower(3, 1, 1).unwrap();
    let tau = SkewPoly::tau(&k);
    let one = SkewPoly::one(&k);
    let f = skew_pow(&tau, 2).add(&one).unwrap();
    let g = tau.add(&one).unwrap();
    let (q, r) = right_divmod(&f, &g).unwrap();
    assert_eq!(skew_mul(&q, &g).unwrap().add(&r).unwrap(), f);
    let (q1, r1) = right_divmod(&f, &one).unwrap();
    assert_eq!((q1, r1.is_zero()), (f, true));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), t in 0usize..4) {
        let k = &towers()[t];
        let mut rng = gen::rng_for(seed, 0);
        let (f, g, h) = (gen::skew(&mut rng, k, 4), gen::skew(&mut rng, k, 4), gen::skew(&mut rng, k, 4));
        let fg = skew_mul(&f, &g).unwrap();
        prop_assert_eq!(skew_mul(&fg, &h).unwrap(), skew_mul(&f, &skew_mul(&g, &h).unwrap()).unwrap());
        prop_assert_eq!(
            skew_mul(&f, &g.add(&h).unwrap()).unwrap(),
            fg.add(&skew_mul(&f, &h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            skew_mul(&g.add(&h).unwrap(), &f).unwrap(),
            skew_mul(&g, &f).unwrap().add(&skew_mul(&h, &f).unwrap()).unwrap()
        );
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(fg.degree(), Some(f.degree().unwrap() + g.degree().unwrap()));
        }
    }

    #[test]
    fn commutation(seed in any::<u64>(), t in 0usize..4, i in 0u64..=8) {
        let k = &towers()[t];
        let c = gen::elem(&mut gen::rng_for(seed, 1), k);
        let lhs = skew_mul(&skew_pow(&SkewPoly::tau(k), i), &SkewPoly::constant(k, c)).unwrap();
        prop_assert_eq!(lhs, SkewPoly::monomial(k, k.frobenius_q_pow(c, i), i as usize));
    }

    #[test]
    fn right_division(seed in any::<u64>(), t in 0usize..4) {
        let k = &towers()[t];
        let mut rng = gen::rng_for(seed, 2);
        let f = gen::skew(&mut rng, k, 7);
        let g = gen::skew(&mut rng, k, 3);
        prop_assume!(!g.is_zero());
        let (q, r) = right_divmod(&f, &g).unwrap();
        prop_assert!(r.degree() < g.degree());
        prop_assert_eq!(skew_mul(&q, &g).unwrap().add(&r).unwrap(), f);
    }

    #[test]
    fn drinfeld_is_a_homomorphism(seed in any::<u64>(), t in 0usize..4) {
        let k = &towers()[t];
        let mut rng = gen::rng_for(seed, 3);
        let phi = make_drinfeld(k, gen::elem(&mut rng, k), gen::elem(&mut rng, k), gen::unit(&mut rng, k)).unwrap();
        let fq = k.base();
        let (a, b) = (gen::poly(&mut rng, &fq, 3), gen::poly(&mut rng, &fq, 3));
        prop_assert_eq!(phi.phi_of(&(&a * &b)), skew_mul(&phi.phi_of(&a), &phi.phi_of(&b)).unwrap());
        prop_assert_eq!(phi.phi_of(&(&a + &b)), phi.phi_of(&a).add(&phi.phi_of(&b)).unwrap());
        prop_assert_eq!(phi.phi_of(&a).coeff(0), a.embed_to(k).eval(phi.theta()));
    }
}

#[test]
fn mismatched_towers_are_rejected() {
    let a = SkewPoly::tau(&build_tower(3, 1, 2).unwrap());
    let b = SkewPoly::tau(&build_tower(3, 1, 1).unwrap());
    assert!(matches!(skew_mul(&a, &b), Err(hecketrace::Error::TowerMismatch)));
}
