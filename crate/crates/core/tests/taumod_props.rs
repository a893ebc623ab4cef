use hecketrace::ffield::build_tower;
use hecketrace::funcfield::{CoeffRing, RatFunc, TruncSeries};
use hecketrace::ring::{is_zero_matrix, Ring};
use hecketrace::taumod::{l_series_points, TauModule};
use hecketrace::verify::{bg_instance, dlog_instance, gen};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Rank 1 over F_{q^m} with τ = c·σ: det over F_q of (1 − tτ) is 1 − N(c)t^m.
    #[test]
    fn rank_one_determinant_is_a_norm(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5]), m in 1u32..=3) {
        let k = build_tower(p, 1, m).unwrap();
        let fq = k.base();
        let ring = CoeffRing::prime_field(&fq).over(&k).unwrap();
        let c = gen::elem(&mut gen::rng_for(seed, 0), &k);
        let module = TauModule::new(&ring, vec![vec![ring.constant(c)]]).unwrap();
        let n = 3 * m as usize + 1;
        let base = ring.base_ring();
        let mut want = vec![base.zero(); n];
        want[0] = base.one();
        want[m as usize] = base.neg(&base.constant(k.norm_to_base(c)));
        prop_assert_eq!(module.det_char_b(n).unwrap(), TruncSeries::new(&base, want, n).unwrap());
    }

    /// Nilpotence agrees with a brute-force search for a vanishing power.
    #[test]
    fn nilpotence_brute_force(seed in any::<u64>(), which in 0usize..3, rank in 1usize..=3) {
        let mut rng = gen::rng_for(seed, 1);
        let fq = build_tower(2, 1, 1).unwrap();
        let ring = gen::coeff_rings(&fq)[which].over(&build_tower(2, 1, 2).unwrap()).unwrap();
        let module = gen::tau_module(&mut rng, &ring, rank);
        let brute = (1..=40).any(|n| is_zero_matrix(&ring, &module.tau_power_matrix(n)));
        prop_assert_eq!(module.is_nilpotent(), brute);
        let perf = module.perfection().unwrap();
        prop_assert_eq!(perf.rank() == 0, brute);
        prop_assert_eq!(perf.perfection().unwrap().rank(), perf.rank());
    }

    #[test]
    fn dlog_and_additivity(seed in any::<u64>()) {
        let (dlog, additivity) = dlog_instance(seed, 0, 12);
        prop_assert!(dlog.is_ok(), "{:?}", dlog);
        prop_assert!(additivity.is_ok(), "{:?}", additivity);
    }

    #[test]
    fn bg_trace_formula(seed in any::<u64>()) {
        let (check, reduced, label) = bg_instance(seed, 0, 8);
        prop_assume!(reduced);
        prop_assert!(check.is_ok(), "{}: {:?}", label, check);
    }
}

#[test]
fn point_series_examples() {
    let f3 = build_tower(3, 1, 1).unwrap();
    let f9 = build_tower(3, 1, 2).unwrap();
    let b = CoeffRing::prime_field(&f3);
    let r1 = b.over(&f3).unwrap();
    let r2 = b.over(&f9).unwrap();
    let one = TauModule::new(&r1, vec![vec![r1.one()]]).unwrap();
    let s = l_series_points(&[(1, one.clone())], 8).unwrap();
    assert!(s.coeff(0).is_zero() && (1..8).all(|i| s.coeff(i).is_one()));
    let alpha = f9.primitive();
    let two = TauModule::new(&r2, vec![vec![r2.constant(alpha)]]).unwrap();
    let s2 = l_series_points(&[(2, two.clone())], 8).unwrap();
    assert!((1..8).step_by(2).all(|i| s2.coeff(i).is_zero()));
    let both = l_series_points(&[(1, one), (2, two)], 8).unwrap();
    assert_eq!(both, s.add(&s2).unwrap());
    let n = f9.norm_to_base(alpha);
    assert_eq!(s2.coeff(2), &RatFunc::constant(&f3, f3.mul_int(n, 2)));
}
