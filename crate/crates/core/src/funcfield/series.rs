use crate::error::{Error, Result};
use crate::ring::Ring;

use super::{RatFunc, ScalarRing};

pub const DEFAULT_SERIES_ORDER: usize = 24;

/// A power series in t over a [`ScalarRing`], truncated mod t^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    ring: ScalarRing,
    coeffs: Vec<RatFunc>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to length `order`.
    pub fn new(ring: &ScalarRing, mut coeffs: Vec<RatFunc>, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("series order must be positive"));
        }
        coeffs.truncate(order);
        coeffs.resize(order, ring.zero());
        Ok(TruncSeries { ring: ring.clone(), coeffs })
    }

    pub fn zero(ring: &ScalarRing, order: usize) -> Result<Self> {
        Self::new(ring, Vec::new(), order)
    }

    pub fn one(ring: &ScalarRing, order: usize) -> Result<Self> {
        Self::new(ring, vec![ring.one()], order)
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RatFunc {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    fn check(&self, o: &TruncSeries) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::TowerMismatch);
        }
        if self.order() != o.order() {
            return Err(Error::invalid("series orders differ"));
        }
        Ok(())
    }

    pub fn add(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.check(o)?;
        let r = &self.ring;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| r.add(a, b)).collect();
        Ok(TruncSeries { ring: r.clone(), coeffs })
    }

    pub fn neg(&self) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        TruncSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.check(o)?;
        let r = &self.ring;
        let n = self.order();
        let mut out = vec![r.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Ok(TruncSeries { ring: r.clone(), coeffs: out })
    }

    /// Multiplicative inverse; needs a unit constant term.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let r = &self.ring;
        let c0 = r.inv(&self.coeffs[0]).ok_or(Error::DivisionByZero)?;
        let n = self.order();
        let mut out: Vec<RatFunc> = Vec::with_capacity(n);
        out.push(c0.clone());
        for k in 1..n {
            let mut acc = r.zero();
            for i in 1..=k {
                acc = r.add(&acc, &r.mul(&self.coeffs[i], &out[k - i]));
            }
            out.push(r.neg(&r.mul(&c0, &acc)));
        }
        Ok(TruncSeries { ring: r.clone(), coeffs: out })
    }

    /// t·d/dt, which keeps the order.
    pub fn t_derivative(&self) -> TruncSeries {
        let r = &self.ring;
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| r.mul(&r.from_int(i as i64), c)).collect();
        TruncSeries { ring: r.clone(), coeffs }
    }

    /// f(t) ↦ f(t^k), truncated.
    pub fn substitute_power(&self, k: usize) -> TruncSeries {
        let r = &self.ring;
        let n = self.order();
        let mut out = vec![r.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k < n {
                out[i * k] = c.clone();
            } else {
                break;
            }
        }
        TruncSeries { ring: r.clone(), coeffs: out }
    }
}

/// t·L′/L for a series with constant term 1.
pub fn series_dlog(l: &TruncSeries) -> Result<TruncSeries> {
    if !l.coeffs[0].is_one() {
        return Err(Error::invalid("logarithmic derivative needs constant term 1"));
    }
    l.t_derivative().mul(&l.inverse()?)
}
