//! Traces of Hecke operators T_P^n on cusp forms S_{k,l} as sums over
//! isomorphism classes of rank-2 Drinfeld modules over F_{q^{nd}}.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::drinfeld::{enumerate_classes_with, sym_det_trace, ClassList};
use crate::error::{Error, Result};
use crate::ffield::{build_tower, roots_in_field, FFElem, FieldTower};
use crate::funcfield::{infty_size_exponent, is_irreducible, InftyExp, RatFunc};
use crate::par::{self, Exec};
use crate::poly::Poly;

/// Default cap on q^{nd}, the size of the field the classes live over.
pub const DEFAULT_HECKE_BUDGET: u64 = 729;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeQuery {
    pub p: Poly,
    pub n: u32,
    pub k: u32,
    pub l: i64,
}

impl HeckeQuery {
    pub fn new(p: &Poly, n: u32, k: u32, l: i64) -> Result<Self> {
        if !p.field().is_base() {
            return Err(Error::invalid("P must have coefficients in F_q"));
        }
        if !p.is_monic() || !is_irreducible(p)? {
            return Err(Error::invalid(format!("P = {p:?} is not monic irreducible")));
        }
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if k < 2 {
            return Err(Error::invalid(format!("weight {k} < 2")));
        }
        Ok(HeckeQuery { p: p.clone(), n, k, l })
    }

    pub fn q(&self) -> u32 {
        self.p.field().q()
    }

    pub fn d(&self) -> u32 {
        self.p.degree().expect("nonconstant") as u32
    }

    /// nd, the degree over F_q of the field carrying the classes.
    pub fn field_degree(&self) -> u32 {
        self.n * self.d()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeTraceReport {
    pub query: HeckeQuery,
    pub trace_adelic: RatFunc,
    pub trace_normalized: RatFunc,
    pub exponent_adelic: InftyExp,
    pub exponent_normalized: InftyExp,
    pub bound_adelic: Ratio<i64>,
    pub bound_normalized: Ratio<i64>,
    pub ramanujan_ok: (bool, bool),
    pub class_count: usize,
}

impl HeckeTraceReport {
    pub fn ok(&self) -> bool {
        self.ramanujan_ok.0 && self.ramanujan_ok.1
    }
}

#[derive(Clone, Debug)]
pub struct HeckeOptions {
    pub budget: u64,
    pub cross_check: bool,
    /// Fail with a theory violation when a Ramanujan bound does not hold.
    pub strict: bool,
    pub exec: Exec,
}

impl Default for HeckeOptions {
    fn default() -> Self {
        HeckeOptions { budget: DEFAULT_HECKE_BUDGET, cross_check: false, strict: true, exec: Exec::default() }
    }
}

/// Σ_{i=0}^m π^i π̄^{m−i} via s_j = a·s_{j−1} − b·s_{j−2}.
pub fn symmetric_trace(a: &Poly, b: &Poly, m: u32) -> Poly {
    let mut prev = Poly::one(a.field());
    if m == 0 {
        return prev;
    }
    let mut cur = a.clone();
    for _ in 1..m {
        let next = &(a * &cur) - &(b * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Whether an ∞-exponent is at most half of `doubled_bound`.
pub fn within_bound(exp: InftyExp, doubled_bound: i64) -> bool {
    match exp {
        InftyExp::MinusInfinity => true,
        InftyExp::Finite(e) => 2 * e <= doubled_bound,
    }
}

/// Both Ramanujan bounds: exp_adelic ≤ nd(k/2 + l − k), exp_normalized ≤ ndk/2.
pub fn ramanujan_check(exp_adelic: InftyExp, exp_normalized: InftyExp, nd: u32, k: u32, l: i64) -> (bool, bool) {
    let nd = nd as i64;
    let k = k as i64;
    (within_bound(exp_adelic, nd * (2 * l - k)), within_bound(exp_normalized, nd * k))
}

/// The class data over F_{q^{nd}} for one pair (P, n).
#[derive(Clone, Debug)]
pub struct HeckeContext {
    p: Poly,
    n: u32,
    classes: ClassList,
    /// (a, b, multiplicity mod p) in first-occurrence order.
    groups: Vec<(Poly, Poly, u64)>,
}

/// Lex-smallest root of P in the tower.
pub fn canonical_theta(p: &Poly, tower: &FieldTower) -> Result<FFElem> {
    roots_in_field(p, tower)?
        .first()
        .copied()
        .ok_or_else(|| Error::invalid(format!("{p:?} has no root in F_{}^{}", tower.q(), tower.m())))
}

/// The field F_{q^{nd}} for P of degree d over F_q, within `budget`.
pub fn hecke_tower(p: &Poly, n: u32, budget: u64) -> Result<FieldTower> {
    let fq = p.field();
    let nd = n as u64 * p.degree().unwrap_or(0) as u64;
    let size = (fq.q() as u64).checked_pow(nd as u32).filter(|&s| s <= budget);
    if size.is_none() {
        return Err(Error::Budget(format!("q^(nd) = {}^{nd} exceeds the budget {budget}", fq.q())));
    }
    build_tower(fq.p(), fq.e(), nd as u32)
}

impl HeckeContext {
    /// Enumerates classes for the canonical root of P.
    pub fn new(p: &Poly, n: u32, budget: u64, exec: Exec) -> Result<Self> {
        let tower = hecke_tower(p, n, budget)?;
        let theta = canonical_theta(p, &tower)?;
        Self::with_theta(p, n, theta, budget, exec)
    }

    pub fn with_theta(p: &Poly, n: u32, theta: FFElem, budget: u64, exec: Exec) -> Result<Self> {
        let tower = hecke_tower(p, n, budget)?;
        if !p.embed_to(&tower).eval(theta).is_zero() {
            return Err(Error::invalid("θ is not a root of P"));
        }
        Self::from_classes(p, n, enumerate_classes_with(&tower, theta, exec)?)
    }

    /// Uses a previously computed class list (e.g. from the cache).
    pub fn from_classes(p: &Poly, n: u32, classes: ClassList) -> Result<Self> {
        let tower = classes.tower();
        let d = p.degree().unwrap_or(0) as u32;
        if tower.base() != *p.field() || tower.m() != n * d {
            return Err(Error::invalid("class list lives over the wrong field"));
        }
        if !p.embed_to(tower).eval(classes.theta()).is_zero() {
            return Err(Error::invalid("θ is not a root of P"));
        }
        let pmod = tower.p() as u64;
        let mut index: HashMap<(Poly, Poly), usize> = HashMap::new();
        let mut groups: Vec<(Poly, Poly, u64)> = Vec::new();
        for e in classes.entries() {
            let key = (e.charpoly.a.clone(), e.charpoly.b.clone());
            let i = *index.entry(key).or_insert_with(|| {
                groups.push((e.charpoly.a.clone(), e.charpoly.b.clone(), 0));
                groups.len() - 1
            });
            groups[i].2 = (groups[i].2 + 1) % pmod;
        }
        Ok(HeckeContext { p: p.clone(), n, classes, groups })
    }

    pub fn classes(&self) -> &ClassList {
        &self.classes
    }

    /// Σ_classes symmetric_trace(a, b, k − 2)·b^{l−k+1}, exactly in K.
    pub fn trace_adelic(&self, k: u32, l: i64) -> Result<RatFunc> {
        let fq = self.p.field();
        let e = l - k as i64 + 1;
        let nd = self.classes.tower().m() as u64;
        let d = self.p.degree().expect("nonconstant") as u64;
        let pk = self.p.pow(nd / d);
        let mut num = Poly::zero(fq);
        for (a, b, mult) in &self.groups {
            if *mult == 0 {
                continue;
            }
            let s = symmetric_trace(a, b, k - 2);
            let term = if e >= 0 {
                &s * &b.pow(e as u64)
            } else {
                // b^e = μ^e·P^{(nd/d)e}; the P-power goes to the common denominator
                let mu = b.exact_div(&pk).filter(|u| u.is_constant()).ok_or_else(|| Error::theory("b is not μ·P^{m/d}"))?;
                let mu_e = fq.inv(fq.pow(mu.coeff(0), e.unsigned_abs())).expect("μ ≠ 0");
                s.scale(mu_e)
            };
            num = &num + &term.scale(fq.from_int(*mult as i64));
        }
        let den = if e >= 0 { Poly::one(fq) } else { pk.pow(e.unsigned_abs()) };
        let value = RatFunc::new(num, den)?;
        let dd = value.den().degree().unwrap_or(0) as u64;
        if !dd.is_multiple_of(d) || *value.den() != self.p.pow(dd / d) {
            return Err(Error::theory("denominator of the trace is not a power of P"));
        }
        Ok(value)
    }

    /// The same sum with every class term taken from the fiber crystal.
    pub fn trace_via_crystals(&self, k: u32, l: i64, exec: Exec) -> Result<RatFunc> {
        let fq = self.p.field();
        let terms = par::try_map(exec, self.classes.entries(), |e| sym_det_trace(&self.classes.module(e), k, l))?;
        Ok(terms.iter().fold(RatFunc::zero(fq), |acc, t| acc.add(t)))
    }

    /// Per-class agreement of the recurrence path and the crystal path.
    pub fn cross_check(&self, k: u32, l: i64, exec: Exec) -> Result<()> {
        let e = l - k as i64 + 1;
        par::try_map(exec, self.classes.entries(), |c| -> Result<()> {
            let cp = &c.charpoly;
            let lhs = RatFunc::from_poly(symmetric_trace(&cp.a, &cp.b, k - 2)).mul(&RatFunc::from_poly(cp.b.clone()).pow(e)?);
            let rhs = sym_det_trace(&self.classes.module(c), k, l)?;
            if lhs != rhs {
                return Err(Error::theory(format!("cross-check mismatch at (g, Δ) = ({:?}, {:?})", c.g, c.delta)));
            }
            Ok(())
        })?;
        Ok(())
    }

    /// −Σ_classes Tr(τ^{nd} | fiber)·(1/#Aut), with 1/#Aut taken in K.
    pub fn lefschetz_side(&self, k: u32, l: i64, exec: Exec) -> Result<RatFunc> {
        let fq = self.p.field();
        let terms = par::try_map(exec, self.classes.entries(), |c| -> Result<RatFunc> {
            let w = fq.inv(fq.from_int(c.aut as i64)).ok_or_else(|| Error::theory("#Aut divisible by p"))?;
            Ok(sym_det_trace(&self.classes.module(c), k, l)?.scale(w))
        })?;
        Ok(terms.iter().fold(RatFunc::zero(fq), |acc, t| acc.add(t)).neg())
    }

    pub fn report(&self, k: u32, l: i64, opts: &HeckeOptions) -> Result<HeckeTraceReport> {
        let query = HeckeQuery::new(&self.p, self.n, k, l)?;
        let trace_adelic = self.trace_adelic(k, l)?;
        if opts.cross_check {
            self.cross_check(k, l, opts.exec)?;
        }
        let norm = RatFunc::from_poly(self.p.clone()).pow(self.n as i64 * (k as i64 - l))?;
        let trace_normalized = trace_adelic.mul(&norm);
        let exponent_adelic = infty_size_exponent(&trace_adelic);
        let exponent_normalized = infty_size_exponent(&trace_normalized);
        let nd = query.field_degree();
        let ramanujan_ok = ramanujan_check(exponent_adelic, exponent_normalized, nd, k, l);
        let nd = nd as i64;
        let report = HeckeTraceReport {
            bound_adelic: Ratio::new(nd * (2 * l - k as i64), 2),
            bound_normalized: Ratio::new(nd * k as i64, 2),
            query,
            trace_adelic,
            trace_normalized,
            exponent_adelic,
            exponent_normalized,
            ramanujan_ok,
            class_count: self.classes.len(),
        };
        if opts.strict && !report.ok() {
            return Err(Error::theory(format!("Ramanujan bound violated for {:?}", report.query)));
        }
        Ok(report)
    }
}

pub fn hecke_trace(query: &HeckeQuery) -> Result<HeckeTraceReport> {
    hecke_trace_with(query, &HeckeOptions::default())
}

pub fn hecke_trace_with(query: &HeckeQuery, opts: &HeckeOptions) -> Result<HeckeTraceReport> {
    HeckeContext::new(&query.p, query.n, opts.budget, opts.exec)?.report(query.k, query.l, opts)
}

/// Reports for the Cartesian product of the ranges, in lex order of
/// (P, n, k, l), enumerating classes once per (P, n).
pub fn trace_table(ps: &[Poly], ns: &[u32], ks: &[u32], ls: &[i64], opts: &HeckeOptions) -> Result<Vec<HeckeTraceReport>> {
    trace_table_with(ps, ns, ks, ls, opts, |p, n| HeckeContext::new(p, n, opts.budget, opts.exec))
}

/// As [`trace_table`], with a caller-supplied source of contexts.
pub fn trace_table_with<F>(
    ps: &[Poly],
    ns: &[u32],
    ks: &[u32],
    ls: &[i64],
    opts: &HeckeOptions,
    mut context: F,
) -> Result<Vec<HeckeTraceReport>>
where
    F: FnMut(&Poly, u32) -> Result<HeckeContext>,
{
    let mut ps = ps.to_vec();
    ps.sort_by(|a, b| a.cmp_canonical(b));
    ps.dedup();
    let sorted = |v: &[u32]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (ns, ks) = (sorted(ns), sorted(ks));
    let mut ls = ls.to_vec();
    ls.sort_unstable();
    ls.dedup();
    for p in &ps {
        for &n in &ns {
            HeckeQuery::new(p, n, 2, 0)?;
            hecke_budget_ok(p, n, opts.budget)?;
        }
    }
    let mut out = Vec::new();
    for p in &ps {
        for &n in &ns {
            let ctx = context(p, n)?;
            let pairs: Vec<(u32, i64)> = ks.iter().flat_map(|&k| ls.iter().map(move |&l| (k, l))).collect();
            out.extend(par::try_map(opts.exec, &pairs, |&(k, l)| ctx.report(k, l, opts))?);
        }
    }
    Ok(out)
}

fn hecke_budget_ok(p: &Poly, n: u32, budget: u64) -> Result<()> {
    let nd = n as u64 * p.degree().unwrap_or(0) as u64;
    match (p.field().q() as u64).checked_pow(nd as u32) {
        Some(s) if s <= budget => Ok(()),
        _ => Err(Error::Budget(format!("q^(nd) = {}^{nd} exceeds the budget {budget}", p.field().q()))),
    }
}

impl Serialize for HeckeTraceReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::text::ReportRow::from(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;

    fn t_over(p: u32) -> Poly {
        Poly::x(&build_tower(p, 1, 1).unwrap())
    }

    #[test]
    fn symmetric_trace_matches_expansion() {
        let f = build_tower(5, 1, 1).unwrap();
        let a = Poly::from_ints(&f, &[1, 2]);
        let b = Poly::from_ints(&f, &[3, 0, 1]);
        assert!(symmetric_trace(&a, &b, 0).is_one());
        assert_eq!(symmetric_trace(&a, &b, 1), a);
        assert_eq!(symmetric_trace(&a, &b, 2), &(&a * &a) - &b);
        assert_eq!(symmetric_trace(&a, &b, 3), &a.pow(3) - &(&(&a * &b) * &Poly::from_ints(&f, &[2])));
        let f3 = build_tower(3, 1, 1).unwrap();
        let a = Poly::from_ints(&f3, &[0, 2]);
        let b = Poly::from_ints(&f3, &[0, 0, 1]);
        assert!(symmetric_trace(&a, &b, 2).is_zero());
    }

    #[test]
    fn worked_values_over_f3() {
        let t = t_over(3);
        let one = Poly::one(t.field());
        let r4 = hecke_trace(&HeckeQuery::new(&t, 1, 4, 1).unwrap()).unwrap();
        assert_eq!(r4.trace_adelic, RatFunc::new(one.clone(), t.pow(2)).unwrap());
        assert_eq!(r4.trace_normalized, RatFunc::from_poly(t.clone()));
        assert_eq!(r4.class_count, 6);
        let r5 = hecke_trace(&HeckeQuery::new(&t, 1, 5, 1).unwrap()).unwrap();
        assert!(r5.trace_adelic.is_zero());
        let r6 = hecke_trace(&HeckeQuery::new(&t, 1, 6, 1).unwrap()).unwrap();
        assert_eq!(r6.trace_adelic, RatFunc::new(one, t.pow(4)).unwrap());
        assert_eq!(r6.trace_normalized, RatFunc::from_poly(t));
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_check(InftyExp::Finite(-2), InftyExp::Finite(1), 1, 4, 1), (true, true));
        assert!(within_bound(InftyExp::MinusInfinity, -100));
        assert!(!within_bound(InftyExp::Finite(3), 4));
    }

    #[test]
    fn cross_check_and_lefschetz_side() {
        let t = t_over(3);
        let ctx = HeckeContext::new(&t, 1, DEFAULT_HECKE_BUDGET, Exec::Sequential).unwrap();
        for (k, l) in [(4, 1), (5, 1), (6, 2), (3, -1), (2, 0)] {
            ctx.cross_check(k, l, Exec::Sequential).unwrap();
            let direct = ctx.trace_adelic(k, l).unwrap();
            assert_eq!(ctx.trace_via_crystals(k, l, Exec::Parallel).unwrap(), direct);
            assert_eq!(ctx.lefschetz_side(k, l, Exec::Parallel).unwrap(), direct);
        }
    }

    #[test]
    fn table_is_sorted_and_budgeted() {
        let t = t_over(3);
        let opts = HeckeOptions::default();
        let rows = trace_table(std::slice::from_ref(&t), &[1], &[7, 5], &[1], &opts).unwrap();
        assert_eq!(rows.iter().map(|r| r.query.k).collect::<Vec<_>>(), vec![5, 7]);
        assert!(rows.iter().all(|r| r.trace_adelic.is_zero()));
        let tight = HeckeOptions { budget: 8, ..HeckeOptions::default() };
        assert!(matches!(trace_table(&[t], &[2], &[4], &[1], &tight), Err(Error::Budget(_))));
    }
}
