//! τ-modules on a point: modules over k ⊗ B with a σ-semilinear operator.
//!
//! A module is presented as ⊕_i (k ⊗ B)/(ann_i) together with a matrix whose
//! columns are the images of the basis vectors: τ(v) = M·σ(v).

mod group;
mod lseries;

pub use group::{bg_l_series, invariants_module, FiniteGroupData, GroupActionModule};
pub use lseries::l_series_points;

use crate::error::{Error, Result};
use crate::funcfield::{RatFunc, ScalarRing, TruncSeries};
use crate::pid::{smith_form, PolyRing, Smith};
use crate::poly::Poly;
use crate::ring::{charpoly, identity, is_zero_matrix, mat_mul, trace, Matrix, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauModule {
    ring: ScalarRing,
    /// Annihilators over k[T]; `None` for a free module.
    ann: Option<Vec<Poly>>,
    matrix: Matrix<RatFunc>,
}

impl TauModule {
    /// A free module of rank `matrix.len()`.
    pub fn new(ring: &ScalarRing, matrix: Matrix<RatFunc>) -> Result<Self> {
        let r = matrix.len();
        if matrix.iter().any(|row| row.len() != r) {
            return Err(Error::invalid("τ-matrix must be square"));
        }
        let matrix = matrix
            .into_iter()
            .map(|row| row.into_iter().map(|x| ring.elem(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(TauModule { ring: ring.clone(), ann: None, matrix })
    }

    /// ⊕_i (k ⊗ B)/(ann_i) with B of finite length; each ann_i must be a
    /// monic divisor of the modulus of B with coefficients in F_q.
    pub fn with_annihilators(ring: &ScalarRing, ann: Vec<Poly>, matrix: Matrix<RatFunc>) -> Result<Self> {
        let f = ring.modulus().ok_or_else(|| Error::Unsupported("annihilators need B of finite length".into()))?;
        if ann.len() != matrix.len() {
            return Err(Error::invalid("one annihilator per generator"));
        }
        let mut ann_k = Vec::with_capacity(ann.len());
        for a in &ann {
            let a = a.embed_to(ring.field()).monic();
            if a.is_zero() || !a.divides(f) || a.restrict_to_base().is_none() {
                return Err(Error::invalid(format!("annihilator {a:?} is not an F_q-divisor of the modulus")));
            }
            ann_k.push(a);
        }
        let free = Self::new(ring, matrix)?;
        let mut matrix = free.matrix;
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = RatFunc::from_poly(x.num().rem(&ann_k[i]));
                if !(x.num() * &ann_k[j]).rem(&ann_k[i]).is_zero() {
                    return Err(Error::invalid("τ-matrix does not respect the annihilators"));
                }
            }
        }
        let ann = if ann_k.iter().all(|a| a == f) { None } else { Some(ann_k) };
        Ok(TauModule { ring: ring.clone(), ann, matrix })
    }

    pub fn zero(ring: &ScalarRing) -> Self {
        TauModule { ring: ring.clone(), ann: None, matrix: Vec::new() }
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.matrix
    }

    /// Degree m of the base point Spec F_{q^m}.
    pub fn degree(&self) -> u32 {
        self.ring.field().m()
    }

    pub fn is_free(&self) -> bool {
        self.ann.is_none()
    }

    /// ann_i for every generator (the modulus of B for free summands).
    pub fn annihilators(&self) -> Option<Vec<Poly>> {
        let f = self.ring.modulus()?;
        Some(self.ann.clone().unwrap_or_else(|| vec![f.clone(); self.rank()]))
    }

    fn reduce_rows(&self, mut m: Matrix<RatFunc>) -> Matrix<RatFunc> {
        if let Some(ann) = &self.ann {
            for (row, a) in m.iter_mut().zip(ann) {
                for x in row.iter_mut() {
                    *x = RatFunc::from_poly(x.num().rem(a));
                }
            }
        }
        m
    }

    fn sigma_matrix(&self, m: &Matrix<RatFunc>, i: u64) -> Matrix<RatFunc> {
        m.iter().map(|row| row.iter().map(|x| self.ring.sigma_pow(x, i)).collect()).collect()
    }

    /// Matrix of τ^n as a σ^n-semilinear map: M·M^{(σ)}·…·M^{(σ^{n−1})}.
    pub fn tau_power_matrix(&self, n: u64) -> Matrix<RatFunc> {
        let r = &self.ring;
        let mut acc = identity(r, self.rank());
        for i in 0..n {
            acc = self.reduce_rows(mat_mul(r, &acc, &self.sigma_matrix(&self.matrix, i)));
        }
        acc
    }

    /// Exponent after which the images of τ^n are stable.
    fn stable_exponent(&self) -> u64 {
        let len = self.ring.coeff_ring().length() as u64;
        (self.rank() as u64 * self.degree() as u64 * len).max(1)
    }

    pub fn is_nilpotent(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        is_zero_matrix(&self.ring, &self.tau_power_matrix(self.stable_exponent()))
    }

    fn poly_ring(&self) -> PolyRing {
        PolyRing(self.ring.field().clone())
    }

    /// Smith data of the k[T]-lattice spanned by `gens` and the relations.
    fn lattice(&self, gens: &Matrix<RatFunc>) -> Smith {
        let pr = self.poly_ring();
        let ann = self.annihilators().expect("finite length");
        let r = self.rank();
        let a: Matrix<Poly> = (0..r)
            .map(|i| {
                let mut row: Vec<Poly> = gens[i].iter().map(|x| x.num().clone()).collect();
                row.extend((0..r).map(|j| if i == j { ann[i].clone() } else { pr.zero() }));
                row
            })
            .collect();
        smith_form(&pr, &a, a.first().map_or(0, Vec::len))
    }

    /// The τ-submodule generated by the columns of `gens`, which must span a
    /// τ-stable submodule.
    fn submodule(&self, gens: &Matrix<RatFunc>) -> Result<TauModule> {
        let pr = self.poly_ring();
        let ann = self.annihilators().expect("finite length");
        let r = self.rank();
        let s1 = self.lattice(gens);
        let s = &s1.diag;
        // coordinates of the relation vectors in the basis H = U^{-1}·diag(s)
        let x: Matrix<Poly> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (&s1.u[i][j] * &ann[j]).exact_div(&s[i]).expect("relations lie in the lattice"))
                    .collect()
            })
            .collect();
        let s2 = smith_form(&pr, &x, r);
        let keep: Vec<usize> = (0..r).filter(|&i| s2.diag[i].degree().unwrap_or(1) > 0).collect();
        if keep.is_empty() {
            return Ok(TauModule::zero(&self.ring));
        }
        // generators G = U^{-1}·diag(s)·U2^{-1}
        let h: Matrix<Poly> = (0..r).map(|i| (0..r).map(|j| &s1.u_inv[i][j] * &s[j]).collect()).collect();
        let g = mat_mul(&pr, &h, &s2.u_inv);
        let coords = |w: &[Poly]| -> Vec<Poly> {
            let uw: Vec<Poly> = (0..r)
                .map(|i| {
                    let acc = (0..r).fold(pr.zero(), |acc, j| &acc + &(&s1.u[i][j] * &w[j]));
                    acc.exact_div(&s[i]).expect("vector lies in the lattice")
                })
                .collect();
            (0..r)
                .map(|i| (0..r).fold(pr.zero(), |acc, j| &acc + &(&s2.u[i][j] * &uw[j])).rem(&s2.diag[i]))
                .collect()
        };
        let mut cols = Vec::with_capacity(keep.len());
        for &c in &keep {
            let gc: Vec<RatFunc> = (0..r).map(|i| RatFunc::from_poly(g[i][c].frobenius())).collect();
            let image: Vec<Poly> = (0..r)
                .map(|i| {
                    let acc = (0..r).fold(self.ring.zero(), |acc, j| {
                        self.ring.add(&acc, &self.ring.mul(&self.matrix[i][j], &gc[j]))
                    });
                    acc.num().clone()
                })
                .collect();
            let co = coords(&image);
            cols.push(keep.iter().map(|&i| RatFunc::from_poly(co[i].clone())).collect::<Vec<_>>());
        }
        let k = keep.len();
        let matrix: Matrix<RatFunc> = (0..k).map(|i| (0..k).map(|j| cols[j][i].clone()).collect()).collect();
        let ann_new: Vec<Poly> = keep
            .iter()
            .map(|&i| s2.diag[i].restrict_to_base().ok_or_else(|| Error::theory("invariant factor not defined over F_q")))
            .collect::<Result<_>>()?;
        TauModule::with_annihilators(&self.ring, ann_new, matrix)
    }

    /// The summand on which τ is bijective.
    pub fn perfection(&self) -> Result<TauModule> {
        if self.rank() == 0 {
            return Ok(self.clone());
        }
        if !self.ring.is_finite_length() {
            let d = crate::ring::det(&self.ring, &self.matrix);
            return if self.ring.is_zero(&d) {
                Err(Error::Unsupported("perfection over K needs an invertible τ".into()))
            } else {
                Ok(self.clone())
            };
        }
        let n0 = self.stable_exponent();
        let p0 = self.tau_power_matrix(n0);
        let p1 = self.reduce_rows(mat_mul(&self.ring, &p0, &self.sigma_matrix(&self.matrix, n0)));
        let size = |s: &Smith| s.diag.iter().fold(Poly::one(self.ring.field()), |acc, d| &acc * d);
        let full = self.annihilators().expect("finite length").iter().fold(Poly::one(self.ring.field()), |a, d| &a * d);
        let l0 = size(&self.lattice(&p0));
        if l0 != size(&self.lattice(&p1)) {
            return Err(Error::theory("image of τ did not stabilise"));
        }
        if l0.is_one() {
            return Ok(self.clone());
        }
        if l0 == full.monic() {
            return Ok(TauModule::zero(&self.ring));
        }
        self.submodule(&p0)
    }

    /// Whether the perfection is locally free over k ⊗ B.
    pub fn is_flat_point(&self) -> Result<bool> {
        let f = self
            .ring
            .modulus()
            .ok_or_else(|| Error::Unsupported("flatness is checked for B of finite length".into()))?
            .clone();
        let perf = self.perfection()?;
        Ok(perf.annihilators().unwrap_or_default().iter().all(|s| {
            let rest = f.exact_div(s).expect("annihilator divides the modulus");
            Poly::gcd(s, &rest).is_one()
        }))
    }

    /// A free model: the matrix of τ on the padded module, which is τ on
    /// the summands ⊕ e_i(k ⊗ B) and zero on the complement.
    fn padded_matrix(&self) -> Result<Matrix<RatFunc>> {
        let Some(ann) = &self.ann else { return Ok(self.matrix.clone()) };
        let f = self.ring.modulus().expect("finite length");
        let mut idem = Vec::with_capacity(ann.len());
        for s in ann {
            let rest = f.exact_div(s).expect("divides");
            let u = rest.inv_mod(s).ok_or_else(|| Error::Unsupported("module is not locally free".into()))?;
            idem.push(self.ring.poly(&u * &rest));
        }
        let r = &self.ring;
        Ok((0..self.rank())
            .map(|i| (0..self.rank()).map(|j| r.mul(&r.mul(&idem[i], &self.matrix[i][j]), &idem[j])).collect())
            .collect())
    }

    fn padded(&self) -> Result<TauModule> {
        Ok(TauModule { ring: self.ring.clone(), ann: None, matrix: self.padded_matrix()? })
    }

    fn perfect_free_model(&self) -> Result<TauModule> {
        self.perfection()?.padded()
    }

    /// Tr(τ^n) on the perfection, as an element of B; needs m | n.
    pub fn trace_tau_n(&self, n: u64) -> Result<RatFunc> {
        if n == 0 || !n.is_multiple_of(self.degree() as u64) {
            return Err(Error::invalid(format!("τ^{n} is not linear over F_{{q^{}}}", self.degree())));
        }
        let model = self.perfect_free_model()?;
        let t = trace(&self.ring, &model.tau_power_matrix(n));
        self.ring.restrict(&t).ok_or_else(|| Error::theory("trace of τ^n is not defined over F_q"))
    }

    /// Tr(τ^n) on the perfection for 0 ≤ n < order, zero where m ∤ n.
    pub fn traces_tau(&self, order: usize) -> Result<Vec<RatFunc>> {
        let model = self.perfect_free_model()?;
        let r = &self.ring;
        let m = self.degree() as u64;
        let mut out = Vec::with_capacity(order);
        let mut acc = identity(r, model.rank());
        for n in 0..order as u64 {
            if n % m == 0 {
                let t = trace(r, &acc);
                out.push(r.restrict(&t).ok_or_else(|| Error::theory("trace of τ^n is not defined over F_q"))?);
            } else {
                out.push(r.base_ring().zero());
            }
            acc = mat_mul(r, &acc, &model.sigma_matrix(&model.matrix, n));
        }
        Ok(out)
    }

    /// det_B(1 − tτ) truncated mod t^order, via restriction of scalars to B;
    /// checked against det_{k⊗B}(1 − t^m τ^m).
    pub fn det_char_b(&self, order: usize) -> Result<TruncSeries> {
        let model = self.perfect_free_model()?;
        let base = self.ring.base_ring();
        let m = self.degree() as usize;
        let r = model.rank();
        let k = self.ring.field();
        let w = k.primitive();
        // column (j, a) is τ(ω^a e_j) = ω^{qa}·M e_j
        let mut big: Matrix<RatFunc> = vec![vec![base.zero(); m * r]; m * r];
        for j in 0..r {
            for a in 0..m {
                let wqa = self.ring.constant(k.pow(w, (k.q() as u64) * a as u64));
                for i in 0..r {
                    let x = self.ring.mul(&wqa, &model.matrix[i][j]);
                    for (b, c) in self.ring.coords_over_base(&x).into_iter().enumerate() {
                        big[i * m + b][j * m + a] = base.elem(c)?;
                    }
                }
            }
        }
        let lhs = TruncSeries::new(&base, charpoly(&base, &big), order)?;
        let linear = charpoly(&self.ring, &model.tau_power_matrix(m as u64))
            .iter()
            .map(|c| self.ring.restrict(c).ok_or_else(|| Error::theory("det(1 − t^m τ^m) not defined over F_q")))
            .collect::<Result<Vec<_>>>()?;
        let rhs = TruncSeries::new(&base, linear, order)?.substitute_power(m);
        if lhs != rhs {
            return Err(Error::theory("restriction-of-scalars determinant mismatch"));
        }
        Ok(lhs)
    }

    /// Block upper triangular module with diagonal blocks `self`, `other`
    /// and off-diagonal block `off` (rows of `self`, columns of `other`).
    pub fn extension(&self, other: &TauModule, off: &Matrix<RatFunc>) -> Result<TauModule> {
        if self.ring != other.ring {
            return Err(Error::TowerMismatch);
        }
        if !self.is_free() || !other.is_free() {
            return Err(Error::Unsupported("extensions of free modules only".into()));
        }
        let (r1, r2) = (self.rank(), other.rank());
        let z = self.ring.zero();
        let mut m = vec![vec![z; r1 + r2]; r1 + r2];
        for i in 0..r1 {
            m[i][..r1].clone_from_slice(&self.matrix[i]);
            m[i][r1..].clone_from_slice(&off[i]);
        }
        for i in 0..r2 {
            m[r1 + i][r1..].clone_from_slice(&other.matrix[i]);
        }
        TauModule::new(&self.ring, m)
    }

    pub fn direct_sum(&self, other: &TauModule) -> Result<TauModule> {
        let off = vec![vec![self.ring.zero(); other.rank()]; self.rank()];
        self.extension(other, &off)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;
    use crate::funcfield::CoeffRing;

    fn consts(r: &ScalarRing, m: &[&[i64]]) -> Matrix<RatFunc> {
        m.iter().map(|row| row.iter().map(|&c| r.from_int(c)).collect()).collect()
    }

    #[test]
    fn power_matrix_examples() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let k = build_tower(3, 1, 2).unwrap();
        let r = CoeffRing::rational_function_field(&f3).over(&k).unwrap();
        let t = r.t();
        let m = TauModule::new(&r, vec![vec![r.zero(), t.clone()], vec![r.one(), r.zero()]]).unwrap();
        assert_eq!(m.tau_power_matrix(0), identity(&r, 2));
        assert_eq!(m.tau_power_matrix(2), vec![vec![t.clone(), r.zero()], vec![r.zero(), t]]);
        // rank 1, τ = c: τ^m = Norm(c)
        let rb = CoeffRing::prime_field(&f3).over(&k).unwrap();
        let c = k.exp(1);
        let one = TauModule::new(&rb, vec![vec![rb.constant(c)]]).unwrap();
        let norm = k.embed(k.norm_to_base(c));
        assert_eq!(one.tau_power_matrix(2), vec![vec![rb.constant(norm)]]);
    }

    #[test]
    fn nilpotence_and_perfection_over_a_field() {
        let f5 = build_tower(5, 1, 1).unwrap();
        let r = CoeffRing::prime_field(&f5).scalars();
        assert!(TauModule::new(&r, consts(&r, &[&[0, 1], &[0, 0]])).unwrap().is_nilpotent());
        assert!(!TauModule::new(&r, consts(&r, &[&[1, 0], &[0, 1]])).unwrap().is_nilpotent());
        let m = TauModule::new(&r, consts(&r, &[&[1, 1], &[0, 0]])).unwrap();
        assert!(!m.is_nilpotent());
        let d = TauModule::new(&r, consts(&r, &[&[1, 0], &[0, 0]])).unwrap();
        let p = d.perfection().unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.matrix(), &consts(&r, &[&[1]]));
        assert_eq!(TauModule::new(&r, consts(&r, &[&[0, 1], &[0, 0]])).unwrap().perfection().unwrap().rank(), 0);
    }

    #[test]
    fn flatness_examples() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let b = CoeffRing::quotient(&Poly::from_ints(&f3, &[0, 0, 1])).unwrap().scalars();
        let t = b.t();
        let m = TauModule::new(&b, vec![vec![t]]).unwrap();
        assert!(m.is_nilpotent());
        assert!(m.is_flat_point().unwrap());
        let x = Poly::x(&f3);
        let n = TauModule::with_annihilators(
            &b,
            vec![&x * &x, x.clone()],
            consts(&b, &[&[1, 0], &[0, 1]]),
        )
        .unwrap();
        assert_eq!(n.perfection().unwrap().rank(), 2);
        assert!(!n.is_flat_point().unwrap());
        let fp = CoeffRing::prime_field(&f3).scalars();
        assert!(TauModule::new(&fp, consts(&fp, &[&[0, 1], &[1, 1]])).unwrap().is_flat_point().unwrap());
    }

    #[test]
    fn traces_and_determinants() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let k = build_tower(3, 1, 2).unwrap();
        let rb = CoeffRing::prime_field(&f3).over(&k).unwrap();
        let a = k.exp(1);
        let m = TauModule::new(&rb, vec![vec![rb.constant(a)]]).unwrap();
        let det = m.det_char_b(6).unwrap();
        let base = rb.base_ring();
        let norm = base.constant(k.norm_to_base(a));
        assert_eq!(det.coeffs()[..3], [base.one(), base.zero(), base.neg(&norm)]);
        assert!(m.trace_tau_n(1).is_err());
        assert_eq!(m.trace_tau_n(2).unwrap(), norm);

        let r1 = CoeffRing::prime_field(&f3).scalars();
        let id = TauModule::new(&r1, consts(&r1, &[&[1]])).unwrap();
        assert_eq!(id.det_char_b(4).unwrap().coeffs()[..2], [r1.one(), r1.from_int(-1)]);
        assert_eq!(id.trace_tau_n(5).unwrap(), r1.one());
        let c = TauModule::new(&r1, consts(&r1, &[&[2]])).unwrap();
        assert_eq!(c.trace_tau_n(3).unwrap(), r1.from_int(8));
        let nil = TauModule::new(&r1, consts(&r1, &[&[0, 1], &[0, 0]])).unwrap();
        assert!(nil.trace_tau_n(4).unwrap().is_zero());
        assert_eq!(nil.det_char_b(5).unwrap(), TruncSeries::one(&r1, 5).unwrap());
    }

    #[test]
    fn locally_free_perfection_over_a_split_ring() {
        // B = F_3[T]/(T^2 − 1) ≅ F_3 × F_3, τ = diag(1, T + 1): the second
        // summand dies over T = −1 and survives over T = 1.
        let f3 = build_tower(3, 1, 1).unwrap();
        let b = CoeffRing::quotient(&Poly::from_ints(&f3, &[-1, 0, 1])).unwrap().scalars();
        let t1 = b.add(&b.t(), &b.one());
        let m = TauModule::new(&b, vec![vec![b.one(), b.zero()], vec![b.zero(), t1.clone()]]).unwrap();
        let p = m.perfection().unwrap();
        assert_eq!(p.rank(), 2);
        assert!(!p.is_free());
        assert!(m.is_flat_point().unwrap());
        // Tr τ^n = 1 + 2^n·e where e is the idempotent for T = 1, e = (T + 1)/2
        let e = b.mul(&b.inv(&b.from_int(2)).unwrap(), &t1);
        for n in 1..5 {
            let expect = b.add(&b.one(), &b.mul(&b.from_int(1 << n), &e));
            assert_eq!(m.trace_tau_n(n).unwrap(), expect);
        }
    }
}
