//! A = F_q[T], K = F_q(T), the degree valuation at ∞, coefficient rings B
//! and truncated power series over them.

mod ratfunc;
mod scalar;
mod series;

pub use ratfunc::RatFunc;
pub use scalar::{CoeffKind, CoeffRing, ScalarRing};
pub use series::{series_dlog, TruncSeries, DEFAULT_SERIES_ORDER};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// An element of A = F_q[T].
pub type APoly = Poly;

/// An element of K = F_q(T).
pub type KElem = RatFunc;

/// log_q |x|_∞ for x ∈ K, where −∞ stands for x = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InftyExp {
    MinusInfinity,
    Finite(i64),
}

impl InftyExp {
    pub fn finite(self) -> Option<i64> {
        match self {
            InftyExp::MinusInfinity => None,
            InftyExp::Finite(v) => Some(v),
        }
    }
}

impl std::fmt::Display for InftyExp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InftyExp::MinusInfinity => f.write_str("-inf"),
            InftyExp::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// deg(num) − deg(den), i.e. log_q |x|_∞ with deg(∞) = 1.
pub fn infty_size_exponent(x: &KElem) -> InftyExp {
    if x.is_zero() {
        InftyExp::MinusInfinity
    } else {
        InftyExp::Finite(x.num().deg_i64() - x.den().deg_i64())
    }
}

/// Ben-Or test: P of degree n is irreducible iff gcd(P, T^{q^i} − T) = 1
/// for 1 ≤ i ≤ n/2.
pub fn is_irreducible(p: &APoly) -> Result<bool> {
    let n = match p.degree() {
        None | Some(0) => return Err(Error::invalid("irreducibility of a constant")),
        Some(n) => n,
    };
    let field = p.field();
    let t = Poly::x(field);
    let mut tq = t.rem(p);
    for _ in 0..n / 2 {
        tq = tq.pow_mod(field.size() as u128, p);
        if !Poly::gcd(p, &(&tq - &t)).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monic irreducible polynomials of degree `d` over F_q, in canonical order.
pub fn monic_irreducibles(fq: &crate::ffield::FieldTower, d: usize) -> Vec<APoly> {
    let q = fq.size() as u64;
    let total = q.pow(d as u32);
    let elems: Vec<_> = fq.elements().collect();
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut coeffs: Vec<_> = (0..d)
            .map(|_| {
                let c = elems[(rest % q) as usize];
                rest /= q;
                c
            })
            .collect();
        coeffs.push(fq.one());
        let p = Poly::from_coeffs(fq, coeffs);
        if is_irreducible(&p).unwrap_or(false) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.cmp_canonical(b));
    out
}
