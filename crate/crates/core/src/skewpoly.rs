//! The twisted polynomial ring k{τ} with τ·c = c^q·τ.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower};

#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    field: FieldTower,
    coeffs: Vec<FFElem>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly{:?}", self.coeffs)
    }
}

impl Serialize for SkewPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<u32>> = self.coeffs.iter().map(|&c| self.field.coeffs(c)).collect();
        v.serialize(s)
    }
}

impl SkewPoly {
    /// Coefficient of τ^i at index i.
    pub fn new(field: &FieldTower, mut coeffs: Vec<FFElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldTower) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FieldTower) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldTower, c: FFElem) -> Self {
        Self::new(field, vec![c])
    }

    /// c·τ^i
    pub fn monomial(field: &FieldTower, c: FFElem, i: usize) -> Self {
        let mut v = vec![FFElem::ZERO; i + 1];
        v[i] = c;
        Self::new(field, v)
    }

    pub fn tau(field: &FieldTower) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).copied().unwrap_or(FFElem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_field(&self, o: &SkewPoly) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn add(&self, o: &SkewPoly) -> Result<SkewPoly> {
        self.same_field(o)?;
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(Self::new(f, (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect()))
    }

    pub fn neg(&self) -> SkewPoly {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, o: &SkewPoly) -> Result<SkewPoly> {
        self.add(&o.neg())
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, c: FFElem) -> SkewPoly {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }
}

/// f·g with τ^i·c = c^{q^i}·τ^i.
pub fn skew_mul(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
    f.same_field(g)?;
    if f.is_zero() || g.is_zero() {
        return Ok(SkewPoly::zero(&f.field));
    }
    let k = &f.field;
    let mut out = vec![FFElem::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in g.coeffs.iter().enumerate() {
            let t = k.mul(a, k.frobenius_q_pow(b, i as u64));
            out[i + j] = k.add(out[i + j], t);
        }
    }
    Ok(SkewPoly::new(k, out))
}

pub fn skew_pow(f: &SkewPoly, mut n: u64) -> SkewPoly {
    let mut acc = SkewPoly::one(&f.field);
    let mut base = f.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = skew_mul(&acc, &base).expect("same field");
        }
        n >>= 1;
        if n > 0 {
            base = skew_mul(&base, &base).expect("same field");
        }
    }
    acc
}

/// f = quot·g + rem with deg rem < deg g.
pub fn right_divmod(f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
    f.same_field(g)?;
    let b = g.degree().ok_or(Error::DivisionByZero)?;
    let k = &f.field;
    let d = *g.coeffs.last().expect("nonzero");
    let mut rem = f.coeffs.clone();
    let mut quot = vec![FFElem::ZERO; f.coeffs.len().saturating_sub(b)];
    for a in (b..rem.len()).rev() {
        let c = rem[a];
        if c.is_zero() {
            continue;
        }
        // x·τ^{a−b}·g has leading term x·d^{q^{a−b}}·τ^a
        let s = (a - b) as u64;
        let x = k.div(c, k.frobenius_q_pow(d, s)).expect("unit");
        quot[a - b] = x;
        for (j, &gj) in g.coeffs.iter().enumerate() {
            let t = k.mul(x, k.frobenius_q_pow(gj, s));
            rem[a - b + j] = k.sub(rem[a - b + j], t);
        }
    }
    rem.truncate(b);
    Ok((SkewPoly::new(k, quot), SkewPoly::new(k, rem)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;

    #[test]
    fn commutation_rule() {
        let k = build_tower(3, 1, 2).unwrap();
        let t = SkewPoly::tau(&k);
        for c in k.elements() {
            let lhs = skew_mul(&t, &SkewPoly::constant(&k, c)).unwrap();
            assert_eq!(lhs, SkewPoly::monomial(&k, k.pow(c, 3), 1));
        }
        assert_eq!(skew_mul(&t, &t).unwrap(), SkewPoly::monomial(&k, k.one(), 2));
    }

    #[test]
    fn degree_one_product_expansion() {
        let k = build_tower(2, 1, 3).unwrap();
        let (g, d, g2, d2) = (k.exp(1), k.exp(3), k.exp(5), k.exp(2));
        let lhs = skew_mul(&SkewPoly::new(&k, vec![g, d]), &SkewPoly::new(&k, vec![g2, d2])).unwrap();
        let q = 2;
        let expected = SkewPoly::new(
            &k,
            vec![k.mul(g, g2), k.add(k.mul(g, d2), k.mul(d, k.pow(g2, q))), k.mul(d, k.pow(d2, q))],
        );
        assert_eq!(lhs, expected);
    }

    #[test]
    fn powers() {
        let k = build_tower(3, 1, 2).unwrap();
        let t = SkewPoly::tau(&k);
        assert_eq!(skew_pow(&t, 0), SkewPoly::one(&k));
        assert_eq!(skew_pow(&t, 5), SkewPoly::monomial(&k, k.one(), 5));
        let c = k.exp(1);
        let ct = SkewPoly::monomial(&k, c, 1);
        assert_eq!(skew_pow(&ct, 2), SkewPoly::monomial(&k, k.pow(c, 4), 2));
    }

    #[test]
    fn division_examples() {
        let k = build_tower(3, 1, 1).unwrap();
        let t = SkewPoly::tau(&k);
        let t2 = skew_pow(&t, 2);
        let (q, r) = right_divmod(&t2, &t).unwrap();
        assert_eq!((q, r.is_zero()), (t.clone(), true));
        let f = t2.add(&SkewPoly::one(&k)).unwrap();
        let g = t.add(&SkewPoly::one(&k)).unwrap();
        let (q, r) = right_divmod(&f, &g).unwrap();
        assert_eq!(skew_mul(&q, &g).unwrap().add(&r).unwrap(), f);
        assert!(r.degree().unwrap_or(0) < 1);
        let (q, r) = right_divmod(&f, &SkewPoly::one(&k)).unwrap();
        assert_eq!((q, r.is_zero()), (f, true));
        assert!(right_divmod(&t, &SkewPoly::zero(&k)).is_err());
        let other = build_tower(3, 1, 2).unwrap();
        assert_eq!(skew_mul(&t, &SkewPoly::tau(&other)), Err(Error::TowerMismatch));
    }
}
