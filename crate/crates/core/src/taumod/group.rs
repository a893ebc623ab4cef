use crate::error::{Error, Result};
use crate::funcfield::{RatFunc, TruncSeries};
use crate::ring::{det, identity, mat_add, mat_mul, mat_scale, trace, Matrix, Ring};

use super::TauModule;

/// A finite group given by its multiplication table, optionally with an
/// automorphism σ_G used for twisted conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupData {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    twist: Option<Vec<usize>>,
}

impl FiniteGroupData {
    pub fn new(table: Vec<Vec<usize>>, twist: Option<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("malformed multiplication table"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::invalid("no identity element"))?;
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::invalid("missing inverse"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invalid("multiplication is not associative"));
                    }
                }
            }
        }
        let g = FiniteGroupData { table, identity, inverse, twist: None };
        match twist {
            Some(t) => g.with_twist(t),
            None => Ok(g),
        }
    }

    pub fn with_twist(mut self, twist: Vec<usize>) -> Result<Self> {
        let n = self.order();
        let mut seen = vec![false; n];
        if twist.len() != n || twist.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::invalid("twist is not a permutation"));
        }
        for a in 0..n {
            for b in 0..n {
                if twist[self.table[a][b]] != self.table[twist[a]][twist[b]] {
                    return Err(Error::invalid("twist is not an automorphism"));
                }
            }
        }
        self.twist = Some(twist);
        Ok(self)
    }

    /// Z/n with element i ↦ i.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), None)
    }

    /// S_3 as permutations of {0, 1, 2} in lexicographic order; index 0 is
    /// the identity, and the product is composition (a·b)(x) = a(b(x)).
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::new(table, None).expect("S_3 is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn twist(&self) -> Option<&[usize]> {
        self.twist.as_deref()
    }

    /// σ_G^j(g).
    pub fn twist_pow(&self, mut g: usize, j: u64) -> usize {
        let Some(t) = &self.twist else { return g };
        let mut period = 1u64;
        let mut x = t[g];
        while x != g {
            x = t[x];
            period += 1;
        }
        for _ in 0..j % period {
            g = t[g];
        }
        g
    }

    /// Representatives of g ∼ x·g·σ_G^j(x)^{−1} with stabilizer sizes.
    pub fn twisted_classes(&self, j: u64) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut orbit = 0;
            for x in 0..n {
                let y = self.mul(self.mul(x, g), self.twist_pow(self.inv(x), j));
                if !seen[y] {
                    seen[y] = true;
                    orbit += 1;
                }
            }
            out.push((g, n / orbit));
        }
        out
    }
}

/// A free τ-module with a G-action ρ satisfying τ∘ρ(x) = ρ(σ_G x)∘τ.
#[derive(Clone, Debug)]
pub struct GroupActionModule {
    group: FiniteGroupData,
    module: TauModule,
    rho: Vec<Matrix<RatFunc>>,
}

impl GroupActionModule {
    pub fn new(group: FiniteGroupData, module: TauModule, rho: Vec<Matrix<RatFunc>>) -> Result<Self> {
        let ring = module.ring().clone();
        let n = group.order();
        let p = ring.field().p() as usize;
        if n.is_multiple_of(p) {
            return Err(Error::invalid(format!("|G| = {n} is divisible by p = {p}")));
        }
        if !module.is_free() {
            return Err(Error::Unsupported("group actions on free modules only".into()));
        }
        let r = module.rank();
        if rho.len() != n || rho.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(Error::invalid("one r×r matrix per group element"));
        }
        let rho: Vec<Matrix<RatFunc>> = rho
            .into_iter()
            .map(|m| m.into_iter().map(|row| row.into_iter().map(|x| ring.elem(x)).collect()).collect())
            .collect::<Result<_>>()?;
        for (g, m) in rho.iter().enumerate() {
            if ring.inv(&det(&ring, m)).is_none() {
                return Err(Error::invalid(format!("ρ({g}) is not invertible")));
            }
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    if rho[group.mul(a, b)] != mat_mul(&ring, &rho[a], &rho[b]) {
                        return Err(Error::invalid("ρ is not a homomorphism"));
                    }
                }
            }
        }
        let mm = module.matrix();
        for (x, m) in rho.iter().enumerate() {
            let twisted: Matrix<RatFunc> = m.iter().map(|row| row.iter().map(|e| ring.sigma(e)).collect()).collect();
            if mat_mul(&ring, mm, &twisted) != mat_mul(&ring, &rho[group.twist_pow(x, 1)], mm) {
                return Err(Error::invalid("the action does not commute with τ"));
            }
        }
        Ok(GroupActionModule { group, module, rho })
    }

    pub fn group(&self) -> &FiniteGroupData {
        &self.group
    }

    pub fn module(&self) -> &TauModule {
        &self.module
    }

    pub fn rho(&self, g: usize) -> &Matrix<RatFunc> {
        &self.rho[g]
    }

    /// The averaging projector (1/|G|)·Σ_g ρ(g).
    pub fn projector(&self) -> Matrix<RatFunc> {
        let ring = self.module.ring();
        let sum = self.rho.iter().skip(1).fold(self.rho[0].clone(), |acc, m| mat_add(ring, &acc, m));
        let inv = ring.inv(&ring.from_int(self.group.order() as i64)).expect("tame");
        mat_scale(ring, &inv, &sum)
    }
}

/// Σ_n Σ_{[g]} Tr(τ^{dn}∘ρ(g))/#Stab(g)·d·t^{dn} for the base point of degree d,
/// with classes taken for the twisted relation at exponent dn.
pub fn bg_l_series(act: &GroupActionModule, order: usize) -> Result<TruncSeries> {
    let module = &act.module;
    let ring = module.ring();
    let base = ring.base_ring();
    let d = module.degree() as usize;
    let mut coeffs = vec![base.zero(); order];
    for j in (d..order).step_by(d) {
        let pj = module.tau_power_matrix(j as u64);
        let mut acc = ring.zero();
        for (g, stab) in act.group.twisted_classes(j as u64) {
            let tr = trace(ring, &mat_mul(ring, &pj, &act.rho[g]));
            let w = ring.inv(&ring.from_int(stab as i64)).expect("tame");
            acc = ring.add(&acc, &ring.mul(&w, &tr));
        }
        let acc = ring.mul(&ring.from_int(d as i64), &acc);
        coeffs[j] = ring.restrict(&acc).ok_or_else(|| Error::theory("class sum is not defined over F_q"))?;
    }
    TruncSeries::new(&base, coeffs, order)
}

/// The τ-module M^G, the image of the averaging projector.
pub fn invariants_module(act: &GroupActionModule) -> Result<TauModule> {
    let module = &act.module;
    let ring = module.ring();
    let proj = act.projector();
    if proj == identity(ring, module.rank()) {
        return Ok(module.clone());
    }
    if !ring.is_finite_length() {
        return Err(Error::Unsupported("invariants over K".into()));
    }
    module.submodule(&proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;
    use crate::funcfield::CoeffRing;
    use crate::taumod::l_series_points;

    #[test]
    fn group_validation() {
        assert!(FiniteGroupData::new(vec![vec![0, 1], vec![1, 1]], None).is_err());
        let s3 = FiniteGroupData::symmetric3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.twisted_classes(1).len(), 3);
        let z3 = FiniteGroupData::cyclic(3).unwrap().with_twist(vec![0, 2, 1]).unwrap();
        // x g x^{-1}... twisted by inversion: g ∼ x g x = g x^2, a single class
        let cls = z3.twisted_classes(1);
        assert_eq!(cls, vec![(0, 1)]);
        assert_eq!(z3.twisted_classes(2).len(), 3);
        assert!(FiniteGroupData::cyclic(3).unwrap().with_twist(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn sign_action_has_no_invariants() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let r = CoeffRing::prime_field(&f3).scalars();
        let m = TauModule::new(&r, vec![vec![r.one()]]).unwrap();
        let g = FiniteGroupData::cyclic(2).unwrap();
        let act = GroupActionModule::new(g, m, vec![vec![vec![r.one()]], vec![vec![r.from_int(-1)]]]).unwrap();
        assert!(bg_l_series(&act, 8).unwrap().is_zero());
        assert_eq!(invariants_module(&act).unwrap().rank(), 0);
    }

    #[test]
    fn swap_action_fixes_a_line() {
        let f5 = build_tower(5, 1, 1).unwrap();
        let r = CoeffRing::prime_field(&f5).scalars();
        let c = |x: i64| r.from_int(x);
        let m = TauModule::new(&r, vec![vec![c(1), c(3)], vec![c(3), c(1)]]).unwrap();
        let rho = vec![vec![vec![c(1), c(0)], vec![c(0), c(1)]], vec![vec![c(0), c(1)], vec![c(1), c(0)]]];
        let act = GroupActionModule::new(FiniteGroupData::cyclic(2).unwrap(), m, rho).unwrap();
        let inv = invariants_module(&act).unwrap();
        assert_eq!(inv.rank(), 1);
        // τ(e1 + e2) = 4(e1 + e2)
        assert_eq!(inv.trace_tau_n(1).unwrap(), c(4));
        let lhs = bg_l_series(&act, 10).unwrap();
        assert_eq!(lhs, l_series_points(&[(1, inv)], 10).unwrap());
    }
}
