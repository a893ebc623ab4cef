//! Finite fields F_p ⊂ F_q = F_{p^e} ⊂ F_{q^m}.
//!
//! The top field is stored flat as F_p[x]/(modulus). An element is a
//! [`FFElem`] code: the integer whose base-p digits are the coefficient
//! vector, constant coefficient most significant. Integer order on codes is
//! therefore the lexicographic order on coefficient vectors (constant term
//! compared first), which is the canonical element order used everywhere.
//!
//! Multiplication, inversion and Frobenius go through discrete log tables;
//! addition uses Zech logarithms. Tables are built once per tower and towers
//! are memoised, so `build_tower` is cheap after the first call.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default cap on the number of elements of a tower's top field.
pub const DEFAULT_FIELD_BUDGET: u64 = 1 << 20;

/// Hard ceiling independent of any configured budget (table sizes are u32).
const HARD_FIELD_CAP: u64 = 1 << 26;

const NONE: u32 = u32::MAX;

/// An element of the top field of some [`FieldTower`].
///
/// Elements do not carry their tower; arithmetic goes through the tower,
/// which acts as the ring object.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FFElem(u32);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct Inner {
    p: u32,
    e: u32,
    m: u32,
    n: u32,
    q: u32,
    size: u32,
    modulus: Vec<u32>,
    // place value of coefficient i inside a code: p^(n-1-i)
    place: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    base: Option<FieldTower>,
    embed: Vec<u32>,
    restrict: Vec<u32>,
    coords: OnceLock<Vec<u32>>,
}

/// Description of F_p ⊂ F_q ⊂ F_{q^m} together with its arithmetic tables.
#[derive(Clone)]
pub struct FieldTower(Arc<Inner>);

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.e == other.0.e
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldTower {}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldTower(p={}, e={}, m={}, modulus={:?})",
            self.0.p, self.0.e, self.0.m, self.0.modulus
        )
    }
}

impl Serialize for FieldTower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldTower", 4)?;
        st.serialize_field("p", &self.0.p)?;
        st.serialize_field("e", &self.0.e)?;
        st.serialize_field("m", &self.0.m)?;
        st.serialize_field("modulus", &self.0.modulus)?;
        st.end()
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds the tower F_p ⊂ F_{p^e} ⊂ F_{p^{em}} under the default budget.
pub fn build_tower(p: u32, e: u32, m: u32) -> Result<FieldTower> {
    build_tower_with_budget(p, e, m, DEFAULT_FIELD_BUDGET)
}

type TowerMemo = HashMap<(u32, u32, u32), FieldTower>;

pub fn build_tower_with_budget(p: u32, e: u32, m: u32, budget: u64) -> Result<FieldTower> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if e == 0 || m == 0 {
        return Err(Error::invalid("extension degrees must be positive"));
    }
    let n = e.checked_mul(m).ok_or_else(|| Error::Budget("degree overflow".into()))?;
    let size = (p as u64)
        .checked_pow(n)
        .filter(|&s| s <= HARD_FIELD_CAP)
        .ok_or_else(|| Error::Budget(format!("{p}^{n} elements exceeds the hard cap")))?;
    if size > budget {
        return Err(Error::Budget(format!("{p}^{n} = {size} elements exceeds budget {budget}")));
    }
    static TOWERS: OnceLock<Mutex<TowerMemo>> = OnceLock::new();
    let memo = TOWERS.get_or_init(Default::default);
    if let Some(t) = memo.lock().unwrap().get(&(p, e, m)) {
        return Ok(t.clone());
    }
    let base = if m > 1 { Some(build_tower_with_budget(p, e, 1, u64::MAX)?) } else { None };
    let tower = construct(p, e, m, base);
    memo.lock().unwrap().entry((p, e, m)).or_insert(tower.clone());
    Ok(tower)
}

fn construct(p: u32, e: u32, m: u32, base: Option<FieldTower>) -> FieldTower {
    let n = e * m;
    let size = p.pow(n);
    let modulus = smallest_irreducible(p, n as usize);
    let place: Vec<u32> = (0..n).map(|i| p.pow(n - 1 - i)).collect();
    let to_code = |v: &[u32]| -> u32 { v.iter().zip(&place).map(|(c, w)| c * w).sum() };
    let to_vec = |c: u32| -> Vec<u32> { place.iter().map(|w| (c / w) % p).collect() };

    let order = size - 1;
    let gen = (1..size)
        .map(to_vec)
        .find(|v| fp_has_order(v, order as u64, &modulus, p))
        .expect("finite field has a primitive element");

    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![NONE; size as usize];
    let mut cur = vec![0u32; n as usize];
    cur[0] = 1;
    for i in 0..order {
        let c = to_code(&cur);
        exp.push(c);
        log[c as usize] = i;
        cur = fp_mulmod(&cur, &gen, &modulus, p);
    }

    let one_vec = {
        let mut v = vec![0u32; n as usize];
        v[0] = 1;
        v
    };
    let zech = (0..order)
        .map(|d| {
            let v = to_vec(exp[d as usize]);
            let s: Vec<u32> = v.iter().zip(&one_vec).map(|(a, b)| (a + b) % p).collect();
            let c = to_code(&s);
            if c == 0 {
                NONE
            } else {
                log[c as usize]
            }
        })
        .collect();

    let mut inner = Inner {
        p,
        e,
        m,
        n,
        q: p.pow(e),
        size,
        modulus,
        place,
        exp,
        log,
        zech,
        base: None,
        embed: Vec::new(),
        restrict: Vec::new(),
        coords: OnceLock::new(),
    };
    match base {
        None => {
            inner.embed = (0..size).collect();
            inner.restrict = (0..size).collect();
        }
        Some(b) => {
            let partial = FieldTower(Arc::new(inner));
            let (embed, restrict) = compute_embedding(&partial, &b);
            let mut inner = Arc::try_unwrap(partial.0).ok().expect("unique during construction");
            inner.embed = embed;
            inner.restrict = restrict;
            inner.base = Some(b);
            return FieldTower(Arc::new(inner));
        }
    }
    FieldTower(Arc::new(inner))
}

/// Embedding of the standalone F_q into the top field: the F_q generator x is
/// sent to the lex-smallest root of F_q's modulus.
fn compute_embedding(top: &FieldTower, base: &FieldTower) -> (Vec<u32>, Vec<u32>) {
    let bm: Vec<FFElem> = base.0.modulus.iter().map(|&c| top.from_int(c as i64)).collect();
    let eta = top
        .elements()
        .find(|&x| {
            let mut acc = FFElem::ZERO;
            for &c in bm.iter().rev() {
                acc = top.add(top.mul(acc, x), c);
            }
            acc.is_zero()
        })
        .expect("F_q embeds in F_{q^m}");
    let mut embed = Vec::with_capacity(base.0.size as usize);
    for b in base.elements() {
        let mut acc = FFElem::ZERO;
        for &c in base.coeffs(b).iter().rev() {
            acc = top.add(top.mul(acc, eta), top.from_int(c as i64));
        }
        embed.push(acc.0);
    }
    let mut restrict = vec![NONE; top.0.size as usize];
    for (b, &t) in embed.iter().enumerate() {
        restrict[t as usize] = b as u32;
    }
    (embed, restrict)
}

impl FieldTower {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// Degree of the top field over F_q.
    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Degree of the top field over F_p.
    pub fn abs_degree(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Number of elements of the top field.
    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Monic modulus over F_p, constant coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The tower F_p ⊂ F_q ⊂ F_q (m = 1) holding the coefficients of A = F_q[T].
    pub fn base(&self) -> FieldTower {
        self.0.base.clone().unwrap_or_else(|| self.clone())
    }

    pub fn is_base(&self) -> bool {
        self.0.base.is_none()
    }

    pub fn zero(&self) -> FFElem {
        FFElem::ZERO
    }

    pub fn one(&self) -> FFElem {
        FFElem(self.0.place[0])
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.0.size).map(FFElem)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FFElem> + '_ {
        (1..self.0.size).map(FFElem)
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive(&self) -> FFElem {
        FFElem(self.0.exp.get(1).copied().unwrap_or(self.0.exp[0]))
    }

    /// Discrete log to the base [`FieldTower::primitive`]; `None` for zero.
    pub fn log(&self, x: FFElem) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.0.log[x.0 as usize])
        }
    }

    /// `primitive()^k`.
    pub fn exp(&self, k: u64) -> FFElem {
        let order = (self.0.size - 1) as u64;
        FFElem(self.0.exp[(k % order) as usize])
    }

    pub fn coeffs(&self, x: FFElem) -> Vec<u32> {
        self.0.place.iter().map(|w| (x.0 / w) % self.0.p).collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FFElem> {
        if coeffs.len() > self.0.n as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::invalid(format!(
                "coefficient vector {coeffs:?} does not describe an element of F_{}^{}",
                self.0.p, self.0.n
            )));
        }
        Ok(FFElem(coeffs.iter().zip(&self.0.place).map(|(c, w)| c * w).sum()))
    }

    /// The element with integer code `code` (see [`FFElem::code`]).
    pub fn from_code(&self, code: u32) -> Option<FFElem> {
        (code < self.0.size).then_some(FFElem(code))
    }

    pub fn contains(&self, x: FFElem) -> bool {
        x.0 < self.0.size
    }

    pub fn from_int(&self, i: i64) -> FFElem {
        let c = i.rem_euclid(self.0.p as i64) as u32;
        FFElem(c * self.0.place[0])
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let order = self.0.size - 1;
        let la = self.0.log[a.0 as usize];
        let lb = self.0.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.0.zech[d as usize];
        if z == NONE {
            return FFElem::ZERO;
        }
        FFElem(self.0.exp[((la as u64 + z as u64) % order as u64) as usize])
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        if a.is_zero() || self.0.p == 2 {
            return a;
        }
        let order = (self.0.size - 1) as u64;
        let la = self.0.log[a.0 as usize] as u64;
        FFElem(self.0.exp[((la + order / 2) % order) as usize])
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.is_zero() || b.is_zero() {
            return FFElem::ZERO;
        }
        let order = (self.0.size - 1) as u64;
        let s = self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64;
        FFElem(self.0.exp[(s % order) as usize])
    }

    pub fn inv(&self, a: FFElem) -> Option<FFElem> {
        if a.is_zero() {
            return None;
        }
        let order = self.0.size - 1;
        let la = self.0.log[a.0 as usize];
        Some(FFElem(self.0.exp[((order - la) % order) as usize]))
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        Ok(self.mul(a, self.inv(b).ok_or(Error::DivisionByZero)?))
    }

    pub fn pow(&self, a: FFElem, k: u64) -> FFElem {
        if k == 0 {
            return self.one();
        }
        if a.is_zero() {
            return FFElem::ZERO;
        }
        let order = (self.0.size - 1) as u128;
        let l = self.0.log[a.0 as usize] as u128;
        FFElem(self.0.exp[((l * (k as u128 % order)) % order) as usize])
    }

    /// Multiplication by the integer `k` (its image in F_p).
    pub fn mul_int(&self, a: FFElem, k: i64) -> FFElem {
        self.mul(a, self.from_int(k))
    }

    /// The q-Frobenius x ↦ x^q.
    pub fn frobenius_q(&self, x: FFElem) -> FFElem {
        self.pow(x, self.0.q as u64)
    }

    /// x ↦ x^{q^i}.
    pub fn frobenius_q_pow(&self, x: FFElem, i: u64) -> FFElem {
        let order = (self.0.size - 1) as u64;
        if x.is_zero() || order == 1 {
            return x;
        }
        self.pow(x, mod_pow(self.0.q as u64, i, order))
    }

    /// Image of an element of the base field F_q.
    pub fn embed(&self, x: FFElem) -> FFElem {
        FFElem(self.0.embed[x.0 as usize])
    }

    /// Inverse of [`FieldTower::embed`]; `None` if `x` is not in F_q.
    pub fn restrict(&self, x: FFElem) -> Option<FFElem> {
        let r = self.0.restrict[x.0 as usize];
        (r != NONE).then_some(FFElem(r))
    }

    pub fn in_base(&self, x: FFElem) -> bool {
        self.0.restrict[x.0 as usize] != NONE
    }

    /// The image of the F_q generator (the class of x in F_q's own model).
    pub fn q_generator(&self) -> FFElem {
        let b = self.base();
        let g = if b.0.n > 1 { FFElem(b.0.place[1]) } else { b.one() };
        self.embed(g)
    }

    /// Norm to F_q, as an element of the base tower.
    pub fn norm_to_base(&self, x: FFElem) -> FFElem {
        let q = self.0.q as u64;
        let e = (q.pow(self.0.m) - 1) / (q - 1);
        self.restrict(self.pow(x, e)).expect("norm lies in F_q")
    }

    /// Coordinates of `x` over F_q in the basis 1, ω, …, ω^{m-1}
    /// (ω = [`FieldTower::primitive`]), as base-tower elements.
    pub fn coords_over_base(&self, x: FFElem) -> Vec<FFElem> {
        let m = self.0.m as usize;
        let table = self.0.coords.get_or_init(|| self.build_coords());
        table[x.0 as usize * m..(x.0 as usize + 1) * m].iter().map(|&c| FFElem(c)).collect()
    }

    /// Inverse of [`FieldTower::coords_over_base`].
    pub fn from_coords_over_base(&self, coords: &[FFElem]) -> FFElem {
        let w = self.primitive();
        coords.iter().rev().fold(FFElem::ZERO, |acc, &c| self.add(self.mul(acc, w), self.embed(c)))
    }

    fn build_coords(&self) -> Vec<u32> {
        let m = self.0.m as usize;
        let q = self.0.q;
        let mut table = vec![0u32; self.0.size as usize * m];
        let w = self.primitive();
        let mut digits = vec![0u32; m];
        for _ in 0..self.0.size {
            let x = digits
                .iter()
                .rev()
                .fold(FFElem::ZERO, |acc, &c| self.add(self.mul(acc, w), self.embed(FFElem(c))));
            table[x.0 as usize * m..(x.0 as usize + 1) * m].copy_from_slice(&digits);
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        table
    }
}

/// Minimal polynomial of `x` over F_q: the product over its Frobenius orbit.
pub fn min_poly_over_fq(tower: &FieldTower, x: FFElem) -> Poly {
    let mut orbit = vec![x];
    loop {
        let next = tower.frobenius_q(*orbit.last().unwrap());
        if next == x {
            break;
        }
        orbit.push(next);
    }
    let mut f = Poly::one(tower);
    for r in orbit {
        f = &f * &Poly::from_coeffs(tower, vec![tower.neg(r), tower.one()]);
    }
    f.restrict_to_base().expect("orbit product is defined over F_q")
}

/// All roots in the top field of a polynomial over F_q, in canonical order.
///
/// Works by gcd with X^{q^m} − X followed by deterministic equal-degree
/// splitting (Rabin's quadratic-character split in odd characteristic, the
/// absolute trace map in characteristic 2).
pub fn roots_in_field(f: &Poly, tower: &FieldTower) -> Result<Vec<FFElem>> {
    if f.is_zero() {
        return Err(Error::invalid("roots of the zero polynomial"));
    }
    if f.field() != &tower.base() && f.field() != tower {
        return Err(Error::TowerMismatch);
    }
    let big = if f.field() == tower { f.clone() } else { f.embed_to(tower) };
    let x = Poly::x(tower);
    let xq = x.pow_mod(tower.size() as u128, &big);
    let split = Poly::gcd(&big, &(&xq - &x));
    let mut roots = Vec::new();
    split_linear(tower, split, &mut roots);
    roots.sort();
    Ok(roots)
}

fn split_linear(tower: &FieldTower, g: Poly, out: &mut Vec<FFElem>) {
    let d = match g.degree() {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == 1 {
        let g = g.monic();
        out.push(tower.neg(g.coeff(0)));
        return;
    }
    let x = Poly::x(tower);
    for c in tower.elements() {
        let probe = if tower.p() == 2 {
            let cx = x.scale(c);
            let mut term = cx.rem(&g);
            let mut acc = term.clone();
            for _ in 1..tower.abs_degree() {
                term = (&term * &term).rem(&g);
                acc = &acc + &term;
            }
            acc
        } else {
            let shifted = &x + &Poly::constant(tower, c);
            let half = (tower.size() as u128 - 1) / 2;
            &shifted.pow_mod(half, &g) - &Poly::one(tower)
        };
        let h = Poly::gcd(&g, &probe);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < d {
            let other = g.exact_div(&h).expect("gcd divides");
            split_linear(tower, h, out);
            split_linear(tower, other, out);
            return;
        }
    }
    unreachable!("a squarefree split polynomial always separates");
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut base = b as u128 % m128;
    let mut acc = 1u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

// --- bootstrap arithmetic on raw F_p coefficient vectors -------------------

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, (p - 2) as u64, p as u64) as u32
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let mut b = b.to_vec();
    fp_trim(&mut b);
    let db = b.len() - 1;
    let li = fp_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = (*r.last().unwrap() as u64 * li as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c as u64 * bi as u64 % p as u64) as u32;
            r[k + i] = (r[k + i] + p - t) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    fp_trim(&mut v);
    v
}

fn fp_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut r = fp_rem(&fp_mul(a, b, p), modulus, p);
    r.resize(n, 0);
    r
}

fn fp_powmod(a: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut acc = vec![0u32; n.max(1)];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &base, modulus, p);
        }
        base = fp_mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn fp_has_order(v: &[u32], order: u64, modulus: &[u32], p: u32) -> bool {
    let is_one = |w: &[u32]| w[0] == 1 && w[1..].iter().all(|&c| c == 0);
    if order == 1 {
        return is_one(v) || modulus.len() == 2;
    }
    if !is_one(&fp_powmod(v, order, modulus, p)) {
        return false;
    }
    prime_factors(order).into_iter().all(|r| !is_one(&fp_powmod(v, order / r, modulus, p)))
}

/// Ben-Or irreducibility test for a monic polynomial over F_p.
fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    let x = vec![0, 1];
    let mut xp = fp_rem(&x, f, p);
    for _ in 0..n / 2 {
        xp = fp_powmod(&xp, p as u64, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if fp_gcd(f, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `n` over F_p,
/// comparing the constant coefficient first.
fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    let total = (p as u64).pow(n as u32);
    for idx in 0..total {
        let mut f = vec![0u32; n + 1];
        let mut rest = idx;
        for i in (0..n).rev() {
            f[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[n] = 1;
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
