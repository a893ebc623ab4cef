//! Smith normal form over the Euclidean domain k[T].

use crate::ffield::FieldTower;
use crate::poly::Poly;
use crate::ring::{identity, Matrix, Ring};

/// k[T] as a [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing(pub FieldTower);

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero(&self.0)
    }
    fn one(&self) -> Poly {
        Poly::one(&self.0)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(&self.0, self.0.from_int(n))
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        if a.is_constant() && !a.is_zero() {
            Some(Poly::constant(&self.0, self.0.inv(a.coeff(0))?))
        } else {
            None
        }
    }
}

/// `u · a · v = diag(diag)` (padded with zeros), with `u_inv = u^{-1}`.
/// Nonzero diagonal entries are monic and each divides the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<Poly>,
    pub u: Matrix<Poly>,
    pub u_inv: Matrix<Poly>,
    pub v: Matrix<Poly>,
}

struct State<'a> {
    ring: &'a PolyRing,
    a: Matrix<Poly>,
    u: Matrix<Poly>,
    u_inv: Matrix<Poly>,
    v: Matrix<Poly>,
}

impl State<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += c · row_j
    fn add_row(&mut self, i: usize, j: usize, c: &Poly) {
        let r = self.ring;
        for mat in [&mut self.a, &mut self.u] {
            let src = mat[j].clone();
            for (x, s) in mat[i].iter_mut().zip(&src) {
                *x = r.add(x, &r.mul(c, s));
            }
        }
        // u_inv ← u_inv · (I − c e_ij): col_j −= c · col_i
        for row in self.u_inv.iter_mut() {
            let t = r.mul(c, &row[i]);
            row[j] = r.sub(&row[j], &t);
        }
    }

    /// col_i += c · col_j
    fn add_col(&mut self, i: usize, j: usize, c: &Poly) {
        let r = self.ring;
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                let t = r.mul(c, &row[j]);
                row[i] = r.add(&row[i], &t);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: crate::ffield::FFElem) {
        let f = &self.ring.0;
        let ci = f.inv(c).expect("unit");
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = x.scale(c);
        }
        for row in self.u_inv.iter_mut() {
            row[i] = row[i].scale(ci);
        }
    }
}

pub fn smith_form(ring: &PolyRing, a: &Matrix<Poly>, cols: usize) -> Smith {
    let rows = a.len();
    let mut st = State {
        ring,
        a: a.clone(),
        u: identity(ring, rows),
        u_inv: identity(ring, rows),
        v: identity(ring, cols),
    };
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for t in 0..steps {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !st.a[i][j].is_zero())
                .min_by_key(|&(i, j)| st.a[i][j].degree());
            let Some((pi, pj)) = pivot else { break };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if st.a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = st.a[i][t].divrem(&st.a[t][t]).expect("nonzero pivot");
                st.add_row(i, t, &-&q);
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if st.a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = st.a[t][j].divrem(&st.a[t][t]).expect("nonzero pivot");
                st.add_col(j, t, &-&q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !st.a[t][t].divides(&st.a[i][j])));
            match bad {
                Some(i) => {
                    let one = ring.one();
                    st.add_row(t, i, &one);
                }
                None => break,
            }
        }
        let lead = st.a[t][t].lead();
        if let Some(l) = lead {
            st.scale_row(t, ring.0.inv(l).expect("unit"));
        }
        diag.push(st.a[t][t].clone());
    }
    Smith { diag, u: st.u, u_inv: st.u_inv, v: st.v }
}
