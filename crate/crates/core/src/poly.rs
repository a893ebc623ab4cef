//! Dense univariate polynomials in T over the top field of a [`FieldTower`].
//!
//! Used both for A = F_q[T] (over a base tower) and for k[T] (over a tower
//! with m > 1).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower};

#[derive(Clone)]
pub struct Poly {
    field: FieldTower,
    coeffs: Vec<FFElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for c in &self.coeffs {
            c.code().hash(state);
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn from_coeffs(field: &FieldTower, mut coeffs: Vec<FFElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldTower) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldTower) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldTower, c: FFElem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The variable T.
    pub fn x(field: &FieldTower) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &FieldTower, c: FFElem, deg: usize) -> Self {
        let mut v = vec![FFElem::ZERO; deg + 1];
        v[deg] = c;
        Self::from_coeffs(field, v)
    }

    /// Polynomial with F_p-integer coefficients, constant term first.
    pub fn from_ints(field: &FieldTower, ints: &[i64]) -> Self {
        Self::from_coeffs(field, ints.iter().map(|&i| field.from_int(i)).collect())
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

    /// Degree with the zero polynomial sent to -1.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(self.field.one())
    }

    pub fn lead(&self) -> Option<FFElem> {
        self.coeffs.last().copied()
    }

    pub fn scale(&self, c: FFElem) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FFElem::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: v }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    pub fn add_poly(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub_poly(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg_poly(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul_poly(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FFElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let li = f.inv(d.coeffs[dd]).expect("leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FFElem::ZERO; r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(r[k + dd], li);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, r)))
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// `self / d` if the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both inputs vanish).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g`, `g` the monic gcd.
    pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let f = a.field.clone();
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(&f), Poly::zero(&f));
        let (mut t0, mut t1) = (Poly::zero(&f), Poly::one(&f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = f.inv(l).unwrap();
                (r0.scale(li), s0.scale(li), t0.scale(li))
            }
        }
    }

    /// Inverse modulo `m`, if `self` is a unit there.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = Poly::xgcd(&self.rem(m), m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: FFElem) -> FFElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FFElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Value at another polynomial, i.e. composition `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.field), |acc, &c| &(&acc * g) + &Poly::constant(&self.field, c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul_int(c, i as i64)).collect(),
        )
    }

    pub fn map_coeffs(&self, g: impl Fn(FFElem) -> FFElem) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// Applies the q-Frobenius to every coefficient (σ on k[T], fixing T).
    pub fn frobenius(&self) -> Poly {
        let f = &self.field;
        self.map_coeffs(|c| f.frobenius_q(c))
    }

    pub fn frobenius_pow(&self, i: u64) -> Poly {
        let f = &self.field;
        self.map_coeffs(|c| f.frobenius_q_pow(c, i))
    }

    /// Transports a polynomial over F_q into the top field of `top`.
    pub fn embed_to(&self, top: &FieldTower) -> Poly {
        debug_assert!(self.field == top.base() || &self.field == top);
        if &self.field == top {
            return self.clone();
        }
        Poly::from_coeffs(top, self.coeffs.iter().map(|&c| top.embed(c)).collect())
    }

    /// Coefficients pulled back to F_q, if they all lie there.
    pub fn restrict_to_base(&self) -> Option<Poly> {
        let top = &self.field;
        let base = top.base();
        let coeffs = self.coeffs.iter().map(|&c| top.restrict(c)).collect::<Option<Vec<_>>>()?;
        Some(Poly::from_coeffs(&base, coeffs))
    }

    /// Canonical order on A: by degree, then coefficients from the top down.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$inner(rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_poly);
forward_binop!(Sub, sub, sub_poly);
forward_binop!(Mul, mul, mul_poly);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_poly()
    }
}
