use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower};
use crate::par::{self, Exec};
use crate::poly::Poly;

use super::{gcd, make_drinfeld, CharPoly, DrinfeldModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub g: FFElem,
    pub delta: FFElem,
    pub aut: u64,
    pub charpoly: CharPoly,
}

/// Isomorphism classes of rank-2 Drinfeld modules over k with a fixed θ,
/// sorted by their lex-minimal representatives (g, Δ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassList {
    tower: FieldTower,
    theta: FFElem,
    entries: Vec<ClassEntry>,
}

/// One line of the on-disk class cache; field elements are F_p-vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub q: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub theta: Vec<u32>,
    pub g: Vec<u32>,
    pub delta: Vec<u32>,
    pub aut: u64,
    pub a: Vec<Vec<u32>>,
    pub b: Vec<Vec<u32>>,
}

impl ClassList {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn theta(&self) -> FFElem {
        self.theta
    }

    pub fn entries(&self) -> &[ClassEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ 1/#Aut over the classes.
    pub fn mass(&self) -> Ratio<i64> {
        self.entries.iter().map(|e| Ratio::new(1, e.aut as i64)).sum()
    }

    pub fn module(&self, e: &ClassEntry) -> DrinfeldModule {
        make_drinfeld(&self.tower, self.theta, e.g, e.delta).expect("validated on enumeration")
    }

    pub fn to_records(&self) -> Vec<ClassRecord> {
        let k = &self.tower;
        let fq = k.base();
        let poly = |p: &Poly| p.coeffs().iter().map(|&c| fq.coeffs(c)).collect();
        self.entries
            .iter()
            .map(|e| ClassRecord {
                q: k.q(),
                m: k.m(),
                modulus: k.modulus().to_vec(),
                theta: k.coeffs(self.theta),
                g: k.coeffs(e.g),
                delta: k.coeffs(e.delta),
                aut: e.aut,
                a: poly(&e.charpoly.a),
                b: poly(&e.charpoly.b),
            })
            .collect()
    }

    /// Rebuilds a list from cache records for the given tower and θ.
    pub fn from_records(tower: &FieldTower, theta: FFElem, records: &[ClassRecord]) -> Result<Self> {
        let fq = tower.base();
        let theta_v = tower.coeffs(theta);
        let poly = |v: &[Vec<u32>]| -> Result<Poly> {
            Ok(Poly::from_coeffs(&fq, v.iter().map(|c| fq.from_coeffs(c)).collect::<Result<_>>()?))
        };
        let mut entries = Vec::with_capacity(records.len());
        for r in records {
            if r.q != tower.q() || r.m != tower.m() || r.modulus != tower.modulus() || r.theta != theta_v {
                return Err(Error::invalid("cache record belongs to a different field or θ"));
            }
            entries.push(ClassEntry {
                g: tower.from_coeffs(&r.g)?,
                delta: tower.from_coeffs(&r.delta)?,
                aut: r.aut,
                charpoly: CharPoly { a: poly(&r.a)?, b: poly(&r.b)?, m: r.m },
            });
        }
        entries.sort_by_key(|e| (e.g, e.delta));
        let list = ClassList { tower: tower.clone(), theta, entries };
        list.check_mass()?;
        Ok(list)
    }

    fn check_mass(&self) -> Result<()> {
        let qm = (self.tower.size() as i64).into();
        if self.mass() != qm {
            return Err(Error::theory(format!("mass {} differs from q^m = {qm}", self.mass())));
        }
        Ok(())
    }
}

pub fn enumerate_classes(tower: &FieldTower, theta: FFElem) -> Result<ClassList> {
    enumerate_classes_with(tower, theta, Exec::default())
}

/// Orbit representatives of (g, Δ) ∈ k × k^× under
/// c·(g, Δ) = (c^{q−1}g, c^{q²−1}Δ), each with its stabilizer order and
/// Frobenius characteristic polynomial.
pub fn enumerate_classes_with(tower: &FieldTower, theta: FFElem, exec: Exec) -> Result<ClassList> {
    make_drinfeld(tower, theta, FFElem::ZERO, tower.one())?;
    let q = tower.q() as u64;
    let n = tower.size() as u64 - 1;
    let units: Vec<(FFElem, u64)> = tower.units().map(|x| (x, tower.log(x).expect("unit") as u64)).collect();
    // least element in each coset of the subgroup of index h
    let coset_mins = |h: u64| -> Vec<FFElem> {
        let mut mins = vec![None; h as usize];
        for &(x, l) in &units {
            let slot = &mut mins[(l % h) as usize];
            if slot.is_none_or(|y: FFElem| x < y) {
                *slot = Some(x);
            }
        }
        mins.into_iter().map(|x| x.expect("cosets are nonempty")).collect()
    };
    let h1 = gcd(q - 1, n);
    let mut g_reps = vec![(FFElem::ZERO, n, 1u64)];
    g_reps.extend(coset_mins(h1).into_iter().map(|g| (g, h1, n / h1)));
    let mut reps = Vec::new();
    for (g, stab, step) in g_reps {
        // the stabilizer of g moves log Δ by multiples of step·(q²−1)
        let h = gcd(step * (q * q - 1) % n, n);
        let h = if h == 0 { n } else { h };
        let aut = stab / (n / h);
        reps.extend(coset_mins(h).into_iter().map(|d| (g, d, aut)));
    }
    reps.sort_by_key(|&(g, d, _)| (g, d));
    let entries = par::try_map(exec, &reps, |&(g, delta, aut)| -> Result<ClassEntry> {
        let phi = make_drinfeld(tower, theta, g, delta)?;
        let charpoly = phi.frobenius_charpoly()?;
        if (aut + 1) % tower.p() as u64 != 0 {
            return Err(Error::theory(format!("#Aut = {aut} is not −1 mod p")));
        }
        Ok(ClassEntry { g, delta, aut, charpoly })
    })?;
    let list = ClassList { tower: tower.clone(), theta, entries };
    list.check_mass()?;
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::verify_charpoly;
    use crate::ffield::{build_tower, roots_in_field};
    use std::collections::BTreeSet;

    /// Orbits by direct application of every c ∈ k^×.
    fn brute_orbits(k: &FieldTower) -> Vec<((FFElem, FFElem), u64)> {
        let q = k.q() as u64;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in k.elements() {
            for d in k.units() {
                if seen.contains(&(g, d)) {
                    continue;
                }
                let orbit: BTreeSet<_> =
                    k.units().map(|c| (k.mul(k.pow(c, q - 1), g), k.mul(k.pow(c, q * q - 1), d))).collect();
                let stab = (k.size() as u64 - 1) / orbit.len() as u64;
                out.push((*orbit.iter().next().unwrap(), stab));
                seen.extend(orbit);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_orbits() {
        for (p, e, m) in [(3, 1, 1), (3, 1, 2), (2, 2, 1), (2, 2, 2), (5, 1, 1), (2, 1, 3), (3, 1, 3)] {
            let k = build_tower(p, e, m).unwrap();
            let list = enumerate_classes(&k, FFElem::ZERO).unwrap();
            let got: Vec<_> = list.entries().iter().map(|e| ((e.g, e.delta), e.aut)).collect();
            assert_eq!(got, brute_orbits(&k), "q = {}, m = {m}", k.q());
        }
    }

    #[test]
    fn small_examples() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let list = enumerate_classes(&f3, FFElem::ZERO).unwrap();
        assert_eq!(list.len(), 6);
        assert!(list.entries().iter().all(|e| e.aut == 2));
        assert_eq!(list.mass(), Ratio::from(3));

        let f9 = build_tower(3, 1, 2).unwrap();
        let theta = roots_in_field(&Poly::from_ints(&f3, &[1, 0, 1]), &f9).unwrap()[0];
        let list = enumerate_classes(&f9, theta).unwrap();
        assert_eq!(list.mass(), Ratio::from(9));
        for e in list.entries() {
            assert!(verify_charpoly(&list.module(e), &e.charpoly));
        }
        let seq = enumerate_classes_with(&f9, theta, Exec::Sequential).unwrap();
        assert_eq!(seq, list);
    }

    #[test]
    fn records_round_trip() {
        let f4 = build_tower(2, 2, 2).unwrap();
        let theta = f4.q_generator();
        let list = enumerate_classes(&f4, theta).unwrap();
        let back = ClassList::from_records(&f4, theta, &list.to_records()).unwrap();
        assert_eq!(back, list);
        assert!(ClassList::from_records(&f4, f4.one(), &list.to_records()).is_err());
    }
}
