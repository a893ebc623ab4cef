use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower};
use crate::poly::Poly;

/// A reduced fraction num/den of polynomials in T with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "{:?}/{:?}", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        let field = num.field().clone();
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(&field) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        let l = den.lead().expect("nonzero denominator");
        if l == field.one() {
            RatFunc { num, den }
        } else {
            let li = field.inv(l).expect("nonzero");
            RatFunc { num: num.scale(li), den: den.scale(li) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn zero(field: &FieldTower) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &FieldTower) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &FieldTower, c: FFElem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn field(&self) -> &FieldTower {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return Self::reduced(&self.num + &o.num, self.den.clone());
        }
        Self::reduced(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_poly() && o.is_poly() {
            return Self::from_poly(&self.num * &o.num);
        }
        Self::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn scale(&self, c: FFElem) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduced(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv().ok_or(Error::DivisionByZero)?))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv().ok_or(Error::DivisionByZero)? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// σ: the q-Frobenius on coefficients, fixing T.
    pub fn frobenius(&self) -> RatFunc {
        RatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    pub fn frobenius_pow(&self, i: u64) -> RatFunc {
        RatFunc { num: self.num.frobenius_pow(i), den: self.den.frobenius_pow(i) }
    }

    pub fn embed_to(&self, top: &FieldTower) -> RatFunc {
        RatFunc { num: self.num.embed_to(top), den: self.den.embed_to(top) }
    }

    pub fn restrict_to_base(&self) -> Option<RatFunc> {
        Some(RatFunc { num: self.num.restrict_to_base()?, den: self.den.restrict_to_base()? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;

    #[test]
    fn arithmetic_reduces() {
        let f = build_tower(5, 1, 1).unwrap();
        let t = Poly::x(&f);
        let a = RatFunc::new(&t * &t, t.scale(f.from_int(2))).unwrap();
        assert_eq!(a.num(), &t.scale(f.from_int(3)));
        assert!(a.den().is_one());
        let b = RatFunc::new(Poly::one(&f), t.clone()).unwrap();
        let s = b.add(&b.neg());
        assert!(s.is_zero());
        assert!(s.den().is_one());
        let prod = b.mul(&RatFunc::from_poly(t.clone()));
        assert!(prod.is_one());
        assert_eq!(b.pow(-2).unwrap(), RatFunc::from_poly(&t * &t));
        assert!(RatFunc::new(t.clone(), Poly::zero(&f)).is_err());
    }
}
