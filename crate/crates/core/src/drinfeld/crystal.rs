use crate::error::{Error, Result};
use crate::funcfield::{CoeffRing, RatFunc};
use crate::pid::PolyRing;
use crate::poly::Poly;
use crate::ring::{mat_mul, Matrix, Ring};
use crate::taumod::TauModule;

use super::DrinfeldModule;

/// Sym^n of a 2×2 matrix in the basis e₁^{n−i}e₂^i, i = 0..=n.
pub fn symmetric_power_matrix<R: Ring>(ring: &R, a: &Matrix<R::Elem>, n: usize) -> Matrix<R::Elem> {
    // column i is (a₁₁x + a₂₁y)^{n−i}(a₁₂x + a₂₂y)^i as a vector in powers of y
    let lin_mul = |p: &[R::Elem], c0: &R::Elem, c1: &R::Elem| -> Vec<R::Elem> {
        let mut out = vec![ring.zero(); p.len() + 1];
        for (j, x) in p.iter().enumerate() {
            out[j] = ring.add(&out[j], &ring.mul(x, c0));
            out[j + 1] = ring.add(&out[j + 1], &ring.mul(x, c1));
        }
        out
    };
    let cols: Vec<Vec<R::Elem>> = (0..=n)
        .map(|i| {
            let mut p = vec![ring.one()];
            for _ in 0..n - i {
                p = lin_mul(&p, &a[0][0], &a[1][0]);
            }
            for _ in 0..i {
                p = lin_mul(&p, &a[0][1], &a[1][1]);
            }
            p
        })
        .collect();
    (0..=n).map(|r| (0..=n).map(|c| cols[c][r].clone()).collect()).collect()
}

/// Sym^{k−2}M(φ) ⊗ det^{l−k+1} over k(T): rank k − 1 with τ-matrix
/// Sym^{k−2}(motive)·δ^{l−k+1}, δ = −Δ^{−1}(T − θ).
pub fn fiber_crystal(phi: &DrinfeldModule, weight: u32, l: i64) -> Result<TauModule> {
    if weight < 2 {
        return Err(Error::invalid(format!("weight {weight} < 2")));
    }
    let k = phi.tower();
    let ring = CoeffRing::rational_function_field(k).over(k)?;
    let motive: Matrix<RatFunc> =
        phi.motive_matrix().into_iter().map(|r| r.into_iter().map(RatFunc::from_poly).collect()).collect();
    let delta = crate::ring::det(&ring, &motive);
    let scale = delta.pow(l - weight as i64 + 1)?;
    let sym = symmetric_power_matrix(&ring, &motive, weight as usize - 2);
    let matrix = sym.iter().map(|r| r.iter().map(|x| ring.mul(x, &scale)).collect()).collect();
    TauModule::new(&ring, matrix)
}

/// Tr(τ^m) on the fiber crystal, an element of K.
///
/// Equal to `fiber_crystal(phi, weight, l)?.trace_tau_n(m)`, but the
/// semilinear product runs over k[T]: the twisted product of the Sym part
/// and the twisted product Π σ^i(δ) of the determinant are both polynomial,
/// and the power l − k + 1 is applied once at the end.
pub fn sym_det_trace(phi: &DrinfeldModule, weight: u32, l: i64) -> Result<RatFunc> {
    if weight < 2 {
        return Err(Error::invalid(format!("weight {weight} < 2")));
    }
    let k = phi.tower();
    let m = k.m() as u64;
    let pr = PolyRing(k.clone());
    let motive = phi.motive_matrix();
    let sym = symmetric_power_matrix(&pr, &motive, weight as usize - 2);
    let delta = crate::ring::det(&pr, &motive);
    let twist = |a: &Matrix<Poly>, i: u64| -> Matrix<Poly> { a.iter().map(|r| r.iter().map(|x| x.frobenius_pow(i)).collect()).collect() };
    let mut acc = sym.clone();
    let mut norm = delta.clone();
    for i in 1..m {
        acc = mat_mul(&pr, &acc, &twist(&sym, i));
        norm = &norm * &delta.frobenius_pow(i);
    }
    let not_rational = || Error::theory("Frobenius trace on the fiber crystal is not defined over F_q");
    let tr = crate::ring::trace(&pr, &acc).restrict_to_base().ok_or_else(not_rational)?;
    let norm = norm.restrict_to_base().ok_or_else(not_rational)?;
    Ok(RatFunc::from_poly(tr).mul(&RatFunc::from_poly(norm).pow(l - weight as i64 + 1)?))
}
