//! Commutative ring objects and the dense matrix routines built on them.

use std::fmt;

use crate::ffield::{FFElem, FieldTower};

/// A commutative ring acting on its elements (the elements carry no context).
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

impl Ring for FieldTower {
    type Elem = FFElem;

    fn zero(&self) -> FFElem {
        FFElem::ZERO
    }
    fn one(&self) -> FFElem {
        FieldTower::one(self)
    }
    fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FieldTower::add(self, *a, *b)
    }
    fn neg(&self, a: &FFElem) -> FFElem {
        FieldTower::neg(self, *a)
    }
    fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FieldTower::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &FFElem) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> FFElem {
        FieldTower::from_int(self, n)
    }
    fn inv(&self, a: &FFElem) -> Option<FFElem> {
        FieldTower::inv(self, *a)
    }
}

/// Row-major dense matrix: `m[i][j]` is row `i`, column `j`.
pub type Matrix<E> = Vec<Vec<E>>;

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect()
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    vec![vec![ring.zero(); cols]; rows]
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

pub fn mat_add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| ring.add(x, y)).collect())
        .collect()
}

pub fn mat_scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.iter().map(|r| r.iter().map(|x| ring.mul(c, x)).collect()).collect()
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y))))
        .collect()
}

pub fn trace<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    (0..a.len()).fold(ring.zero(), |acc, i| ring.add(&acc, &a[i][i]))
}

pub fn is_zero_matrix<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.iter().all(|r| r.iter().all(|x| ring.is_zero(x)))
}

/// Coefficients of det(x·I − A), leading coefficient first, computed with
/// Berkowitz's division-free algorithm (valid over any commutative ring).
pub fn charpoly<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let n = a.len();
    let mut v = vec![ring.one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R·C, -R·A_r·C, …, -R·A_r^{r-1}·C
        let row: Vec<R::Elem> = a[r][..r].to_vec();
        let mut col: Vec<R::Elem> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(ring.neg(&a[r][r]));
        for _ in 0..r {
            let rc = row.iter().zip(&col).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
            t.push(ring.neg(&rc));
            col = (0..r)
                .map(|i| (0..r).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&a[i][k], &col[k]))))
                .collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = ring.zero();
            for (j, vj) in v.iter().enumerate() {
                if i >= j {
                    acc = ring.add(&acc, &ring.mul(&t[i - j], vj));
                }
            }
            next.push(acc);
        }
        v = next;
    }
    v
}

/// Determinant via the constant term of the characteristic polynomial.
pub fn det<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let cp = charpoly(ring, a);
    let c = cp.last().cloned().unwrap_or_else(|| ring.one());
    if a.len() % 2 == 1 {
        ring.neg(&c)
    } else {
        c
    }
}

/// Coefficients of det(1 − t·A) in increasing powers of t.
pub fn det_one_minus<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    charpoly(ring, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;

    fn brute_det(f: &FieldTower, a: &Matrix<FFElem>) -> FFElem {
        let n = a.len();
        if n == 0 {
            return f.one();
        }
        let mut acc = FFElem::ZERO;
        for j in 0..n {
            let minor: Matrix<FFElem> =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect()).collect();
            let term = f.mul(a[0][j], brute_det(f, &minor));
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        let f = build_tower(7, 1, 1).unwrap();
        let mut seed = 1u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            f.from_int((seed >> 33) as i64)
        };
        for n in 1..5 {
            let a: Matrix<FFElem> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
            assert_eq!(det(&f, &a), brute_det(&f, &a));
            let cp = charpoly(&f, &a);
            assert_eq!(cp.len(), n + 1);
            assert_eq!(cp[1], f.neg(trace(&f, &a)));
        }
    }

    #[test]
    fn two_by_two_charpoly() {
        let f = build_tower(5, 1, 1).unwrap();
        let a = vec![vec![f.from_int(1), f.from_int(2)], vec![f.from_int(3), f.from_int(4)]];
        let cp = charpoly(&f, &a);
        assert_eq!(cp, vec![f.one(), f.from_int(-5), f.from_int(-2)]);
    }
}
