use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::FieldTower;
use crate::poly::Poly;
use crate::ring::Ring;

use super::RatFunc;

/// The supported coefficient rings B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    /// B = F_q.
    PrimeFieldFq,
    /// B = F_q[T]/(f) for a monic nonconstant f.
    QuotientRing(Poly),
    /// B = K = F_q(T).
    RationalFunctionField,
}

/// A coefficient ring B over a fixed F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRing {
    fq: FieldTower,
    kind: CoeffKind,
}

impl CoeffRing {
    pub fn prime_field(fq: &FieldTower) -> Self {
        CoeffRing { fq: fq.base(), kind: CoeffKind::PrimeFieldFq }
    }

    /// F_q[T]/(f); `f` is made monic.
    pub fn quotient(f: &Poly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::invalid("quotient by the zero polynomial"));
        }
        if f.is_constant() {
            return Err(Error::invalid("quotient by a unit is the zero ring"));
        }
        if !f.field().is_base() {
            return Err(Error::invalid("quotient modulus must have coefficients in F_q"));
        }
        Ok(CoeffRing { fq: f.field().clone(), kind: CoeffKind::QuotientRing(f.monic()) })
    }

    pub fn rational_function_field(fq: &FieldTower) -> Self {
        CoeffRing { fq: fq.base(), kind: CoeffKind::RationalFunctionField }
    }

    pub fn fq(&self) -> &FieldTower {
        &self.fq
    }

    pub fn kind(&self) -> &CoeffKind {
        &self.kind
    }

    pub fn is_finite_length(&self) -> bool {
        !matches!(self.kind, CoeffKind::RationalFunctionField)
    }

    /// The polynomial f with B = F_q[T]/(f); F_q is treated as F_q[T]/(T).
    pub fn modulus(&self) -> Option<Poly> {
        match &self.kind {
            CoeffKind::PrimeFieldFq => Some(Poly::x(&self.fq)),
            CoeffKind::QuotientRing(f) => Some(f.clone()),
            CoeffKind::RationalFunctionField => None,
        }
    }

    /// Length of B as a module over itself (1 for fields).
    pub fn length(&self) -> usize {
        match &self.kind {
            CoeffKind::QuotientRing(f) => f.degree().unwrap_or(1),
            _ => 1,
        }
    }

    pub fn is_reduced(&self) -> bool {
        match &self.kind {
            CoeffKind::QuotientRing(f) => Poly::gcd(f, &f.derivative()).is_one(),
            _ => true,
        }
    }

    /// B itself as a ring.
    pub fn scalars(&self) -> ScalarRing {
        ScalarRing { field: self.fq.clone(), ring: self.clone(), modulus: self.modulus() }
    }

    /// k ⊗ B for k the top field of `k` (whose base must be this F_q).
    pub fn over(&self, k: &FieldTower) -> Result<ScalarRing> {
        if k.base() != self.fq {
            return Err(Error::TowerMismatch);
        }
        let modulus = self.modulus().map(|f| f.embed_to(k));
        Ok(ScalarRing { field: k.clone(), ring: self.clone(), modulus })
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CoeffKind::PrimeFieldFq => write!(f, "F_{}", self.fq.q()),
            CoeffKind::QuotientRing(m) => write!(f, "F_{}[T]/({m})", self.fq.q()),
            CoeffKind::RationalFunctionField => write!(f, "F_{}(T)", self.fq.q()),
        }
    }
}

/// The ring k ⊗ B with elements stored as [`RatFunc`] over k.
///
/// For finite-length B every element is a polynomial reduced mod f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarRing {
    field: FieldTower,
    ring: CoeffRing,
    modulus: Option<Poly>,
}

impl ScalarRing {
    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn coeff_ring(&self) -> &CoeffRing {
        &self.ring
    }

    /// f embedded in k[T], for finite-length B.
    pub fn modulus(&self) -> Option<&Poly> {
        self.modulus.as_ref()
    }

    pub fn is_finite_length(&self) -> bool {
        self.modulus.is_some()
    }

    /// The ring B (same F_q, trivial k).
    pub fn base_ring(&self) -> ScalarRing {
        self.ring.scalars()
    }

    /// Canonical image of a polynomial over k.
    pub fn poly(&self, p: Poly) -> RatFunc {
        match &self.modulus {
            Some(f) => RatFunc::from_poly(p.rem(f)),
            None => RatFunc::from_poly(p),
        }
    }

    /// Canonical image of a fraction; fails if the denominator is not a unit in B.
    pub fn elem(&self, x: RatFunc) -> Result<RatFunc> {
        match &self.modulus {
            None => Ok(x),
            Some(f) => {
                if x.is_poly() {
                    return Ok(RatFunc::from_poly(x.num().rem(f)));
                }
                let di = x.den().inv_mod(f).ok_or(Error::DivisionByZero)?;
                Ok(RatFunc::from_poly((x.num() * &di).rem(f)))
            }
        }
    }

    /// The image of T.
    pub fn t(&self) -> RatFunc {
        self.poly(Poly::x(&self.field))
    }

    pub fn constant(&self, c: crate::ffield::FFElem) -> RatFunc {
        self.poly(Poly::constant(&self.field, c))
    }

    /// σ ⊗ id: q-Frobenius on the k-coefficients.
    pub fn sigma(&self, x: &RatFunc) -> RatFunc {
        if self.field.m() == 1 {
            return x.clone();
        }
        x.frobenius()
    }

    pub fn sigma_pow(&self, x: &RatFunc, i: u64) -> RatFunc {
        if self.field.m() == 1 || i.is_multiple_of(self.field.m() as u64) {
            return x.clone();
        }
        x.frobenius_pow(i)
    }

    /// Image in B of a σ-invariant element, `None` if not invariant.
    pub fn restrict(&self, x: &RatFunc) -> Option<RatFunc> {
        x.restrict_to_base()
    }

    /// The inclusion B → k ⊗ B.
    pub fn embed(&self, x: &RatFunc) -> RatFunc {
        x.embed_to(&self.field)
    }

    /// Coordinates of x ∈ k ⊗ B over B in the basis 1, ω, …, ω^{m−1}.
    pub fn coords_over_base(&self, x: &RatFunc) -> Vec<RatFunc> {
        let m = self.field.m() as usize;
        let base = self.field.base();
        let split = |p: &Poly| -> Vec<Poly> {
            let mut cols = vec![Vec::with_capacity(p.coeffs().len()); m];
            for &c in p.coeffs() {
                for (a, ca) in self.field.coords_over_base(c).into_iter().enumerate() {
                    cols[a].push(ca);
                }
            }
            cols.into_iter().map(|v| Poly::from_coeffs(&base, v)).collect()
        };
        if x.is_poly() {
            return split(x.num()).into_iter().map(RatFunc::from_poly).collect();
        }
        // x = n/d = n·σ(d)…σ^{m−1}(d) / N(d), with N(d) ∈ F_q[T]
        let mut num = x.num().clone();
        let mut norm = x.den().clone();
        for i in 1..m as u64 {
            let c = x.den().frobenius_pow(i);
            num = &num * &c;
            norm = &norm * &c;
        }
        let norm = RatFunc::from_poly(norm.restrict_to_base().expect("norm lies in F_q[T]"));
        split(&num)
            .into_iter()
            .map(|p| RatFunc::from_poly(p).div(&norm).expect("nonzero norm"))
            .collect()
    }

    /// Inverse of [`ScalarRing::coords_over_base`].
    pub fn from_coords_over_base(&self, coords: &[RatFunc]) -> RatFunc {
        let w = RatFunc::constant(&self.field, self.field.primitive());
        let mut acc = self.zero();
        for c in coords.iter().rev() {
            acc = self.add(&self.mul(&acc, &w), &self.embed(c));
        }
        acc
    }
}

impl Ring for ScalarRing {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero(&self.field)
    }

    fn one(&self) -> RatFunc {
        RatFunc::one(&self.field)
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if self.modulus.is_some() {
            return RatFunc::from_poly(a.num() + b.num());
        }
        a.add(b)
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        match &self.modulus {
            Some(f) => RatFunc::from_poly((a.num() * b.num()).rem(f)),
            None => a.mul(b),
        }
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn from_int(&self, n: i64) -> RatFunc {
        self.poly(Poly::constant(&self.field, self.field.from_int(n)))
    }

    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        match &self.modulus {
            Some(f) => a.num().inv_mod(f).map(RatFunc::from_poly),
            None => a.inv(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;

    #[test]
    fn quotient_arithmetic_stays_reduced() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let b = CoeffRing::quotient(&Poly::from_ints(&f3, &[0, 0, 1])).unwrap();
        let k = build_tower(3, 1, 2).unwrap();
        let r = b.over(&k).unwrap();
        let t = r.t();
        assert!(r.mul(&t, &t).is_zero());
        assert!(r.inv(&t).is_none());
        let u = r.add(&r.one(), &t);
        let ui = r.inv(&u).unwrap();
        assert!(r.mul(&u, &ui).is_one());
        assert!(!b.is_reduced());
        assert!(CoeffRing::quotient(&Poly::from_ints(&f3, &[-1, 0, 1])).unwrap().is_reduced());
    }

    #[test]
    fn prime_field_is_quotient_by_t() {
        let f5 = build_tower(5, 1, 1).unwrap();
        let r = CoeffRing::prime_field(&f5).scalars();
        assert!(r.t().is_zero());
        assert_eq!(r.from_int(7), RatFunc::constant(&f5, f5.from_int(2)));
    }

    #[test]
    fn coordinates_round_trip_over_k() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let k = build_tower(3, 1, 3).unwrap();
        let r = CoeffRing::rational_function_field(&f3).over(&k).unwrap();
        let w = k.primitive();
        let num = Poly::from_coeffs(&k, vec![w, k.one(), k.mul(w, w)]);
        let den = Poly::from_coeffs(&k, vec![k.pow(w, 5), k.one()]);
        let x = RatFunc::new(num, den).unwrap();
        let c = r.coords_over_base(&x);
        assert_eq!(c.len(), 3);
        assert_eq!(r.from_coords_over_base(&c), x);
    }
}
