use hecketrace::ffield::build_tower;
use hecketrace::funcfield::{infty_size_exponent, series_dlog, CoeffRing, InftyExp, RatFunc, ScalarRing, TruncSeries};
use hecketrace::poly::Poly;
use hecketrace::ring::Ring;
use hecketrace::verify::gen;
use proptest::prelude::*;

fn rf(rng: &mut impl rand::Rng, p: u32) -> RatFunc {
    let fq = build_tower(p, 1, 1).unwrap();
    let num = gen::poly(rng, &fq, 4);
    let mut den = gen::poly(rng, &fq, 3);
    if den.is_zero() {
        den = Poly::one(&fq);
    }
    RatFunc::new(num, den).unwrap()
}

fn add_exp(a: InftyExp, b: InftyExp) -> InftyExp {
    match (a, b) {
        (InftyExp::Finite(x), InftyExp::Finite(y)) => InftyExp::Finite(x + y),
        _ => InftyExp::MinusInfinity,
    }
}

fn series(rng: &mut impl rand::Rng, ring: &ScalarRing, order: usize) -> TruncSeries {
    let mut c: Vec<RatFunc> = (0..order).map(|_| gen::scalar(rng, ring)).collect();
    c[0] = ring.one();
    TruncSeries::new(ring, c, order).unwrap()
}

#[test]
fn dlog_examples() {
    let fq = build_tower(5, 1, 1).unwrap();
    let ring = CoeffRing::prime_field(&fq).over(&fq).unwrap();
    let n = 8;
    let geometric = TruncSeries::new(&ring, vec![ring.one(); n], n).unwrap();
    let d = series_dlog(&geometric).unwrap();
    assert!(d.coeff(0).is_zero());
    assert!((1..n).all(|i| d.coeff(i).is_one()));
    assert!(series_dlog(&TruncSeries::one(&ring, n).unwrap()).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn infty_exponent_is_a_valuation(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let mut rng = gen::rng_for(seed, 0);
        let (x, y) = (rf(&mut rng, p), rf(&mut rng, p));
        let (ex, ey) = (infty_size_exponent(&x), infty_size_exponent(&y));
        prop_assert_eq!(infty_size_exponent(&x.mul(&y)), add_exp(ex, ey));
        let es = infty_size_exponent(&x.add(&y));
        prop_assert!(es <= ex.max(ey));
        if ex != ey {
            prop_assert_eq!(es, ex.max(ey));
        }
    }

    #[test]
    fn field_operations(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let mut rng = gen::rng_for(seed, 1);
        let (x, y) = (rf(&mut rng, p), rf(&mut rng, p));
        prop_assert!(x.den().is_monic());
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x.clone());
            prop_assert_eq!(y.pow(-2).unwrap().mul(&y.pow(2).unwrap()), RatFunc::one(y.field()));
        }
    }

    #[test]
    fn dlog_is_additive(seed in any::<u64>(), which in 0usize..4, m in 1u32..=2) {
        let mut rng = gen::rng_for(seed, 2);
        let fq = build_tower(3, 1, 1).unwrap();
        let ring = gen::coeff_rings(&fq)[which].over(&build_tower(3, 1, m).unwrap()).unwrap();
        let (a, b) = (series(&mut rng, &ring, 10), series(&mut rng, &ring, 10));
        let lhs = series_dlog(&a.mul(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, series_dlog(&a).unwrap().add(&series_dlog(&b).unwrap()).unwrap());
    }

    #[test]
    fn quotient_rings_stay_reduced(seed in any::<u64>(), which in 1usize..4) {
        let mut rng = gen::rng_for(seed, 3);
        let fq = build_tower(5, 1, 1).unwrap();
        let b = &gen::coeff_rings(&fq)[which];
        let ring = b.over(&build_tower(5, 1, 2).unwrap()).unwrap();
        let f = ring.modulus().unwrap().clone();
        let (x, y) = (gen::scalar(&mut rng, &ring), gen::scalar(&mut rng, &ring));
        for z in [ring.add(&x, &y), ring.mul(&x, &y), ring.neg(&x), ring.sigma(&x)] {
            prop_assert!(z.is_poly());
            prop_assert!(z.num().deg_i64() < f.deg_i64());
        }
        if let Some(inv) = ring.inv(&x) {
            prop_assert!(ring.mul(&x, &inv).is_one());
        }
    }
}
