//! Rank-2 Drinfeld F_q[T]-modules over finite fields.

mod classes;
mod crystal;

pub use classes::{enumerate_classes, enumerate_classes_with, ClassEntry, ClassList, ClassRecord};
pub use crystal::{fiber_crystal, sym_det_trace, symmetric_power_matrix};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{min_poly_over_fq, FFElem, FieldTower};
use crate::poly::Poly;
use crate::ring::{charpoly, Matrix};
use crate::skewpoly::{skew_mul, skew_pow, SkewPoly};

/// φ_T = θ + g·τ + Δ·τ² over k = F_{q^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldModule {
    tower: FieldTower,
    theta: FFElem,
    g: FFElem,
    delta: FFElem,
    characteristic: Poly,
}

/// π² − a·π + b = 0 for π = τ^m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CharPoly {
    #[serde(serialize_with = "ser_poly")]
    pub a: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub b: Poly,
    pub m: u32,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    let f = p.field();
    let v: Vec<Vec<u32>> = p.coeffs().iter().map(|&c| f.coeffs(c)).collect();
    v.serialize(s)
}

pub fn make_drinfeld(tower: &FieldTower, theta: FFElem, g: FFElem, delta: FFElem) -> Result<DrinfeldModule> {
    for x in [theta, g, delta] {
        if !tower.contains(x) {
            return Err(Error::invalid("element outside the field"));
        }
    }
    if delta.is_zero() {
        return Err(Error::invalid("Δ = 0: the module would not have rank 2"));
    }
    let characteristic = min_poly_over_fq(tower, theta);
    let d = characteristic.degree().expect("nonzero");
    if !(tower.m() as usize).is_multiple_of(d) {
        return Err(Error::invalid(format!("characteristic degree {d} does not divide m = {}", tower.m())));
    }
    Ok(DrinfeldModule { tower: tower.clone(), theta, g, delta, characteristic })
}

impl DrinfeldModule {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn theta(&self) -> FFElem {
        self.theta
    }

    pub fn g(&self) -> FFElem {
        self.g
    }

    pub fn delta(&self) -> FFElem {
        self.delta
    }

    /// The characteristic P, the minimal polynomial of θ over F_q.
    pub fn characteristic(&self) -> &Poly {
        &self.characteristic
    }

    pub fn phi_t(&self) -> SkewPoly {
        SkewPoly::new(&self.tower, vec![self.theta, self.g, self.delta])
    }

    /// φ_a for a ∈ F_q[T], by Horner's rule in φ_T.
    pub fn phi_of(&self, a: &Poly) -> SkewPoly {
        let k = &self.tower;
        let phi_t = self.phi_t();
        a.coeffs().iter().rev().fold(SkewPoly::zero(k), |acc, &c| {
            let c = SkewPoly::constant(k, k.embed(c));
            skew_mul(&acc, &phi_t).expect("same field").add(&c).expect("same field")
        })
    }

    /// τ on M(φ) = k{τ} in the basis (1, τ), where T acts through φ_T on the
    /// right, so that τ² = Δ^{−1}(T − θ)·1 − gΔ^{−1}·τ.
    pub fn motive_matrix(&self) -> Matrix<Poly> {
        let k = &self.tower;
        let di = k.inv(self.delta).expect("Δ ≠ 0");
        let t_minus = Poly::from_coeffs(k, vec![k.neg(self.theta), k.one()]);
        vec![
            vec![Poly::zero(k), t_minus.scale(di)],
            vec![Poly::one(k), Poly::constant(k, k.neg(k.mul(self.g, di)))],
        ]
    }

    /// Matrix of π = τ^m on M(φ): M·M^{(σ)}·…·M^{(σ^{m−1})}.
    pub fn frobenius_matrix(&self) -> Matrix<Poly> {
        let ring = crate::pid::PolyRing(self.tower.clone());
        let m = self.motive_matrix();
        let mut acc = crate::ring::identity(&ring, 2);
        for i in 0..self.tower.m() as u64 {
            let mi: Matrix<Poly> = m.iter().map(|r| r.iter().map(|x| x.frobenius_pow(i)).collect()).collect();
            acc = crate::ring::mat_mul(&ring, &acc, &mi);
        }
        acc
    }

    pub fn frobenius_charpoly(&self) -> Result<CharPoly> {
        let ring = crate::pid::PolyRing(self.tower.clone());
        let cp = charpoly(&ring, &self.frobenius_matrix());
        let down = |p: &Poly| p.restrict_to_base().ok_or_else(|| Error::theory("charpoly not defined over F_q[T]"));
        let a = down(&-&cp[1])?;
        let b = down(&cp[2])?;
        let m = self.tower.m();
        if 2 * a.deg_i64() > m as i64 {
            return Err(Error::theory(format!("deg a = {} exceeds m/2", a.deg_i64())));
        }
        let d = self.characteristic.degree().expect("nonzero") as u64;
        let pm = self.characteristic.pow(m as u64 / d);
        let unit = b.exact_div(&pm).filter(|u| u.is_constant() && !u.is_zero());
        if unit.is_none() {
            return Err(Error::theory("b is not a unit times a power of P"));
        }
        Ok(CharPoly { a, b, m })
    }

    /// #{c ∈ k^×: c^{q−1}g = g, c^{q²−1}Δ = Δ}.
    pub fn aut_order(&self) -> u64 {
        let q = self.tower.q() as u64;
        let n = self.tower.size() as u64 - 1;
        if self.g.is_zero() {
            gcd(q * q - 1, n)
        } else {
            gcd(q - 1, n)
        }
    }

    pub fn is_supersingular(&self, cp: &CharPoly) -> bool {
        self.characteristic.divides(&cp.a)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checks π² − φ_a·π + φ_b = 0 in k{τ} with π = τ^m.
pub fn verify_charpoly(phi: &DrinfeldModule, cp: &CharPoly) -> bool {
    let k = phi.tower();
    let pi = skew_pow(&SkewPoly::tau(k), cp.m as u64);
    let lhs = skew_pow(&pi, 2);
    let mid = skew_mul(&phi.phi_of(&cp.a), &pi).expect("same field");
    lhs.sub(&mid).and_then(|x| x.add(&phi.phi_of(&cp.b))).is_ok_and(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{build_tower, roots_in_field};

    #[test]
    fn construction_rules() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let phi = make_drinfeld(&f3, FFElem::ZERO, FFElem::ZERO, f3.one()).unwrap();
        assert_eq!(phi.characteristic(), &Poly::x(&f3));
        assert!(make_drinfeld(&f3, FFElem::ZERO, FFElem::ZERO, FFElem::ZERO).is_err());
        let f9 = build_tower(3, 1, 2).unwrap();
        let r = roots_in_field(&Poly::from_ints(&f3, &[1, 0, 1]), &f9).unwrap();
        let phi = make_drinfeld(&f9, r[0], f9.exp(3), f9.one()).unwrap();
        assert_eq!(phi.characteristic(), &Poly::from_ints(&f3, &[1, 0, 1]));
        let f27 = build_tower(3, 1, 3).unwrap();
        let phi = make_drinfeld(&f27, f27.exp(1), FFElem::ZERO, f27.one()).unwrap();
        assert_eq!(phi.characteristic().degree(), Some(3));
    }

    #[test]
    fn phi_is_characteristic_and_multiplicative() {
        let k = build_tower(3, 1, 2).unwrap();
        let f3 = k.base();
        let phi = make_drinfeld(&k, k.exp(2), k.exp(5), k.exp(1)).unwrap();
        let t = Poly::x(&f3);
        assert_eq!(phi.phi_of(&t), phi.phi_t());
        let c = Poly::from_ints(&f3, &[2]);
        assert_eq!(phi.phi_of(&c), SkewPoly::constant(&k, k.embed(f3.from_int(2))));
        let t2 = phi.phi_of(&(&t * &t));
        assert_eq!(t2, skew_mul(&phi.phi_t(), &phi.phi_t()).unwrap());
        assert_eq!(t2.coeff(0), k.mul(k.exp(2), k.exp(2)));
        assert_eq!(t2.degree(), Some(4));
    }

    #[test]
    fn motive_examples() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let phi = make_drinfeld(&f3, FFElem::ZERO, FFElem::ZERO, f3.one()).unwrap();
        let m = phi.motive_matrix();
        assert_eq!(m, vec![vec![Poly::zero(&f3), Poly::x(&f3)], vec![Poly::one(&f3), Poly::zero(&f3)]]);
        let phi = make_drinfeld(&f3, f3.one(), FFElem::ZERO, f3.one()).unwrap();
        assert_eq!(phi.motive_matrix()[0][1], Poly::from_ints(&f3, &[-1, 1]));
    }

    #[test]
    fn charpoly_examples() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let phi = make_drinfeld(&f3, FFElem::ZERO, FFElem::ZERO, f3.one()).unwrap();
        let cp = phi.frobenius_charpoly().unwrap();
        assert!(cp.a.is_zero());
        assert_eq!(cp.b, Poly::from_ints(&f3, &[0, 2]));
        assert!(verify_charpoly(&phi, &cp));
        let bad = CharPoly { a: &cp.a + &Poly::one(&f3), ..cp.clone() };
        assert!(!verify_charpoly(&phi, &bad));

        let f9 = build_tower(3, 1, 2).unwrap();
        let phi = make_drinfeld(&f9, FFElem::ZERO, FFElem::ZERO, f9.one()).unwrap();
        let cp = phi.frobenius_charpoly().unwrap();
        assert_eq!(cp.a, Poly::from_ints(&f3, &[0, 2]));
        assert_eq!(cp.b, Poly::from_ints(&f3, &[0, 0, 1]));
        assert!(verify_charpoly(&phi, &cp));
    }

    #[test]
    fn automorphisms_match_brute_force() {
        for (p, e, m) in [(3, 1, 1), (3, 1, 2), (2, 2, 2), (3, 1, 3), (5, 1, 2), (2, 1, 4)] {
            let k = build_tower(p, e, m).unwrap();
            let q = k.q() as u64;
            for g in [FFElem::ZERO, k.exp(1), k.one()] {
                for delta in [k.one(), k.exp(2)] {
                    let phi = make_drinfeld(&k, FFElem::ZERO, g, delta).unwrap();
                    let brute = k
                        .units()
                        .filter(|&c| {
                            k.mul(k.pow(c, q - 1), g) == g && k.mul(k.pow(c, q * q - 1), delta) == delta
                        })
                        .count() as u64;
                    assert_eq!(phi.aut_order(), brute);
                    assert_eq!((brute + 1) % p as u64, 0);
                }
            }
        }
    }
}
