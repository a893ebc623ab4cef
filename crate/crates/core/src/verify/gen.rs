//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ffield::{FFElem, FieldTower};
use crate::funcfield::{CoeffRing, RatFunc, ScalarRing};
use crate::poly::Poly;
use crate::ring::{identity, mat_add, mat_mul, mat_scale, zeros, Matrix, Ring};
use crate::skewpoly::SkewPoly;
use crate::taumod::{FiniteGroupData, GroupActionModule, TauModule};

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn elem(rng: &mut impl Rng, k: &FieldTower) -> FFElem {
    k.from_code(rng.gen_range(0..k.size())).expect("in range")
}

pub fn unit(rng: &mut impl Rng, k: &FieldTower) -> FFElem {
    k.from_code(rng.gen_range(1..k.size())).expect("in range")
}

pub fn poly(rng: &mut impl Rng, k: &FieldTower, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::from_coeffs(k, (0..=d).map(|_| elem(rng, k)).collect())
}

pub fn skew(rng: &mut impl Rng, k: &FieldTower, max_deg: usize) -> SkewPoly {
    let d = rng.gen_range(0..=max_deg);
    SkewPoly::new(k, (0..=d).map(|_| elem(rng, k)).collect())
}

/// A random element of k ⊗ B for B of finite length.
pub fn scalar(rng: &mut impl Rng, ring: &ScalarRing) -> RatFunc {
    let deg = ring.modulus().and_then(Poly::degree).unwrap_or(3);
    let p = Poly::from_coeffs(ring.field(), (0..deg).map(|_| elem(rng, ring.field())).collect());
    ring.poly(p)
}

pub fn matrix(rng: &mut impl Rng, ring: &ScalarRing, r: usize) -> Matrix<RatFunc> {
    (0..r).map(|_| (0..r).map(|_| scalar(rng, ring)).collect()).collect()
}

/// A random free τ-module; with probability 1/3 a rank-one nilpotent
/// direction is built in.
pub fn tau_module(rng: &mut impl Rng, ring: &ScalarRing, rank: usize) -> TauModule {
    let mut m = matrix(rng, ring, rank);
    if rank > 1 && rng.gen_ratio(1, 3) {
        for row in m.iter_mut() {
            row[0] = ring.zero();
        }
    }
    TauModule::new(ring, m).expect("square")
}

/// Coefficient rings used by the suites: F_q, F_q[T]/(T^2 − 1), F_q[T]/(T^2),
/// and F_q[T]/(f) for the least irreducible quadratic f.
pub fn coeff_rings(fq: &FieldTower) -> Vec<CoeffRing> {
    let quad = crate::funcfield::monic_irreducibles(fq, 2).into_iter().next().expect("exists");
    vec![
        CoeffRing::prime_field(fq),
        CoeffRing::quotient(&Poly::from_ints(fq, &[-1, 0, 1])).expect("nonconstant"),
        CoeffRing::quotient(&Poly::from_ints(fq, &[0, 0, 1])).expect("nonconstant"),
        CoeffRing::quotient(&quad).expect("nonconstant"),
    ]
}

/// Permutation of points for each group element (the defining action).
fn point_action(g: &FiniteGroupData) -> Vec<Vec<usize>> {
    let n = g.order();
    if n == 6 {
        // S_3 elements are the permutations themselves
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        return perms.iter().map(|p| p.to_vec()).collect();
    }
    (0..n).map(|a| (0..n).map(|i| (i + a) % n).collect()).collect()
}

/// One-dimensional characters G → F_q^× available for the small groups.
fn characters(g: &FiniteGroupData, fq: &FieldTower) -> Vec<Vec<FFElem>> {
    let n = g.order();
    let mut out = vec![vec![fq.one(); n]];
    let action = point_action(g);
    let sign = |perm: &[usize]| {
        let inversions = (0..perm.len()).flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        if inversions % 2 == 0 { fq.one() } else { fq.from_int(-1) }
    };
    match n {
        2 | 6 => out.push(action.iter().map(|p| sign(p)).collect()),
        3 => {
            let order = fq.size() as u64 - 1;
            if order.is_multiple_of(3) {
                let zeta = fq.exp(order / 3);
                out.push((0..3).map(|a| fq.pow(zeta, a as u64)).collect());
            }
        }
        _ => {}
    }
    out
}

/// A representation of rank ≤ 3 over F_q (sums of characters and the
/// permutation representation), conjugated by a random invertible matrix.
pub fn representation(rng: &mut impl Rng, g: &FiniteGroupData, fq: &FieldTower) -> Vec<Matrix<FFElem>> {
    let n = g.order();
    let action = point_action(g);
    let deg = action[0].len();
    let chars = characters(g, fq);
    let mut blocks: Vec<Vec<Matrix<FFElem>>> = Vec::new();
    let mut rank = 0;
    if deg <= 3 && rng.gen_bool(0.5) {
        blocks.push(
            action
                .iter()
                .map(|perm| {
                    let mut m = vec![vec![FFElem::ZERO; deg]; deg];
                    for (j, &i) in perm.iter().enumerate() {
                        m[i][j] = fq.one();
                    }
                    m
                })
                .collect(),
        );
        rank += deg;
    }
    let target = rng.gen_range(1..=3usize).max(rank);
    while rank < target {
        let ch = chars.choose(rng).expect("trivial character");
        blocks.push(ch.iter().map(|&c| vec![vec![c]]).collect());
        rank += 1;
    }
    let mut rho: Vec<Matrix<FFElem>> = (0..n).map(|_| vec![vec![FFElem::ZERO; rank]; rank]).collect();
    let mut off = 0;
    for b in &blocks {
        let s = b[0].len();
        for (x, m) in b.iter().enumerate() {
            for i in 0..s {
                for j in 0..s {
                    rho[x][off + i][off + j] = m[i][j];
                }
            }
        }
        off += s;
    }
    // conjugate by a product of random transvections
    let mut c = identity(fq, rank);
    let mut c_inv = identity(fq, rank);
    for _ in 0..2 * rank {
        if rank < 2 {
            break;
        }
        let i = rng.gen_range(0..rank);
        let j = (i + rng.gen_range(1..rank)) % rank;
        let t = elem(rng, fq);
        let mut e = identity(fq, rank);
        e[i][j] = t;
        let mut ei = identity(fq, rank);
        ei[i][j] = fq.neg(t);
        c = mat_mul(fq, &c, &e);
        c_inv = mat_mul(fq, &ei, &c_inv);
    }
    rho.iter().map(|m| mat_mul(fq, &mat_mul(fq, &c, m), &c_inv)).collect()
}

/// A random action of `g` on a free τ-module over `ring`, with τ-matrix
/// (1/|G|)·Σ_x ρ(σ_G x)·X·ρ(x)^{−1} for a random X.
pub fn group_action(rng: &mut impl Rng, g: &FiniteGroupData, ring: &ScalarRing) -> Result<GroupActionModule> {
    let k = ring.field();
    let fq = k.base();
    let rho_fq = representation(rng, g, &fq);
    let rho: Vec<Matrix<RatFunc>> =
        rho_fq.iter().map(|m| m.iter().map(|r| r.iter().map(|&c| ring.constant(k.embed(c))).collect()).collect()).collect();
    let r = rho[0].len();
    let x = matrix(rng, ring, r);
    let mut sum = zeros(ring, r, r);
    for a in 0..g.order() {
        let term = mat_mul(ring, &mat_mul(ring, &rho[g.twist_pow(a, 1)], &x), &rho[g.inv(a)]);
        sum = mat_add(ring, &sum, &term);
    }
    let inv = ring.inv(&ring.from_int(g.order() as i64)).expect("tame");
    let module = TauModule::new(ring, mat_scale(ring, &inv, &sum))?;
    GroupActionModule::new(g.clone(), module, rho)
}

/// Z/2, Z/3, S_3 and the twisted forms of Z/3 (inversion) and S_3
/// (conjugation by a transposition).
pub fn small_groups() -> Vec<(&'static str, FiniteGroupData)> {
    let z3 = FiniteGroupData::cyclic(3).expect("group");
    let s3 = FiniteGroupData::symmetric3();
    // conjugation by the transposition at index 1
    let conj: Vec<usize> = (0..6).map(|x| s3.mul(s3.mul(1, x), s3.inv(1))).collect();
    vec![
        ("Z/2", FiniteGroupData::cyclic(2).expect("group")),
        ("Z/3", z3.clone()),
        ("S3", s3.clone()),
        ("Z/3 twisted", z3.with_twist(vec![0, 2, 1]).expect("automorphism")),
        ("S3 twisted", s3.with_twist(conj).expect("automorphism")),
    ]
}
