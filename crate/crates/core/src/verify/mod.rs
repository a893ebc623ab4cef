//! Seeded property suites behind the `verify` command.

pub mod gen;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::drinfeld::{enumerate_classes, make_drinfeld, sym_det_trace, verify_charpoly, ClassList};
use crate::error::{Error, Result};
use crate::ffield::{build_tower, is_prime, roots_in_field, FFElem, FieldTower};
use crate::funcfield::{monic_irreducibles, series_dlog, RatFunc, TruncSeries};
use crate::hecke::{symmetric_trace, trace_table, HeckeOptions, DEFAULT_HECKE_BUDGET};
use crate::par::{self, Exec};
use crate::ring::Ring;
use crate::skewpoly::{right_divmod, skew_mul, skew_pow, SkewPoly};
use crate::taumod::{bg_l_series, invariants_module, l_series_points};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Skew,
    Mass,
    Bg,
    Dlog,
    Ramanujan,
    Twopath,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Skew, Suite::Mass, Suite::Bg, Suite::Dlog, Suite::Ramanujan, Suite::Twopath];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "skew" => Suite::Skew,
            "mass" => Suite::Mass,
            "bg" => Suite::Bg,
            "dlog" => Suite::Dlog,
            "ramanujan" => Suite::Ramanujan,
            "twopath" => Suite::Twopath,
            _ => return Err(Error::invalid(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Skew => "skew",
            Suite::Mass => "mass",
            Suite::Bg => "bg",
            Suite::Dlog => "dlog",
            Suite::Ramanujan => "ramanujan",
            Suite::Twopath => "twopath",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub suite: Suite,
    pub property: String,
    pub cases: usize,
    /// First counterexample in case order.
    pub failure: Option<String>,
    /// Reported but not counted as a failure.
    pub informational: bool,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none() || self.informational
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (&self.failure, self.informational) {
            (None, _) => "PASS",
            (Some(_), true) => "INFO",
            (Some(_), false) => "FAIL",
        };
        write!(f, "{tag} {}::{} ({} cases)", self.suite, self.property, self.cases)?;
        if let Some(msg) = &self.failure {
            write!(f, ": {msg}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub exec: Exec,
    pub hecke_budget: u64,
    /// Series truncation for the BG suite.
    pub bg_order: usize,
    /// Series truncation for the dlog suite.
    pub dlog_order: usize,
    /// Instances per randomized property.
    pub instances: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            exec: Exec::default(),
            hecke_budget: DEFAULT_HECKE_BUDGET,
            bg_order: 12,
            dlog_order: 20,
            instances: 100,
        }
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Vec<Outcome> {
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s, cfg)).collect(),
        Suite::Skew => skew_suite(cfg),
        Suite::Mass => mass_suite(cfg),
        Suite::Bg => bg_suite(cfg),
        Suite::Dlog => dlog_suite(cfg),
        Suite::Ramanujan => ramanujan_suite(cfg),
        Suite::Twopath => twopath_suite(cfg),
    }
}

type Check = std::result::Result<(), String>;

fn outcome(suite: Suite, property: &str, results: Vec<Check>) -> Outcome {
    let cases = results.len();
    let failure = results.into_iter().find_map(|r| r.err());
    Outcome { suite, property: property.to_string(), cases, failure, informational: false }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

fn skew_towers() -> Vec<FieldTower> {
    [(3, 1, 2), (2, 2, 2), (5, 1, 1), (2, 1, 3)].iter().map(|&(p, e, m)| build_tower(p, e, m).expect("small")).collect()
}

fn skew_suite(cfg: &VerifyConfig) -> Vec<Outcome> {
    let towers = skew_towers();
    let samples = 10 * cfg.instances;
    let per_tower = |stream: u64, f: &(dyn Fn(&mut rand_chacha::ChaCha8Rng, &FieldTower) -> Check + Sync)| -> Vec<Check> {
        par::map_range(cfg.exec, towers.len() * samples, |i| {
            let k = &towers[i / samples];
            let mut rng = gen::rng_for(cfg.seed, stream + i as u64);
            f(&mut rng, k)
        })
    };
    let assoc = per_tower(0, &|rng, k| {
        let (f, g, h) = (gen::skew(rng, k, 4), gen::skew(rng, k, 4), gen::skew(rng, k, 4));
        let lhs = skew_mul(&skew_mul(&f, &g).unwrap(), &h).unwrap();
        let rhs = skew_mul(&f, &skew_mul(&g, &h).unwrap()).unwrap();
        let dl = skew_mul(&f, &g.add(&h).unwrap()).unwrap();
        let dr = skew_mul(&f, &g).unwrap().add(&skew_mul(&f, &h).unwrap()).unwrap();
        ensure(lhs == rhs && dl == dr, || format!("f = {f:?}, g = {g:?}, h = {h:?}"))
    });
    let commute = per_tower(1 << 32, &|rng, k| {
        let c = gen::elem(rng, k);
        let i = rng.gen_range(0..=8u64);
        let lhs = skew_mul(&skew_pow(&SkewPoly::tau(k), i), &SkewPoly::constant(k, c)).unwrap();
        let rhs = SkewPoly::monomial(k, k.frobenius_q_pow(c, i), i as usize);
        ensure(lhs == rhs, || format!("c = {c:?}, i = {i}"))
    });
    let division = per_tower(2 << 32, &|rng, k| {
        let f = gen::skew(rng, k, 6);
        let g = gen::skew(rng, k, 3);
        if g.is_zero() {
            return ensure(right_divmod(&f, &g).is_err(), || "division by zero accepted".into());
        }
        let (q, r) = right_divmod(&f, &g).map_err(err_str)?;
        let back = skew_mul(&q, &g).unwrap().add(&r).unwrap();
        ensure(back == f && r.degree() < g.degree(), || format!("f = {f:?}, g = {g:?}"))
    });
    let degree = per_tower(3 << 32, &|rng, k| {
        let (f, g) = (gen::skew(rng, k, 5), gen::skew(rng, k, 5));
        if f.is_zero() || g.is_zero() {
            return Ok(());
        }
        let d = skew_mul(&f, &g).unwrap().degree();
        ensure(d == Some(f.degree().unwrap() + g.degree().unwrap()), || format!("f = {f:?}, g = {g:?}"))
    });
    let phi_hom = per_tower(4 << 32, &|rng, k| {
        let phi = make_drinfeld(k, gen::elem(rng, k), gen::elem(rng, k), gen::unit(rng, k)).map_err(err_str)?;
        let fq = k.base();
        let (a1, a2) = (gen::poly(rng, &fq, 3), gen::poly(rng, &fq, 3));
        let prod = phi.phi_of(&(&a1 * &a2)) == skew_mul(&phi.phi_of(&a1), &phi.phi_of(&a2)).unwrap();
        let sum = phi.phi_of(&(&a1 + &a2)) == phi.phi_of(&a1).add(&phi.phi_of(&a2)).unwrap();
        let constant = phi.phi_of(&a1).coeff(0) == a1.embed_to(k).eval(phi.theta());
        ensure(prod && sum && constant, || format!("{phi:?}, a1 = {a1}, a2 = {a2}"))
    });
    vec![
        outcome(Suite::Skew, "associativity_distributivity", assoc),
        outcome(Suite::Skew, "commutation_rule", commute),
        outcome(Suite::Skew, "right_division", division),
        outcome(Suite::Skew, "degree_additivity", degree),
        outcome(Suite::Skew, "phi_homomorphism_and_characteristic", phi_hom),
    ]
}

/// All (p, e, m) with q^m ≤ `limit`.
pub fn small_fields(limit: u64) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for p in (2..=limit.min(u32::MAX as u64) as u32).filter(|&p| is_prime(p)) {
        for e in 1.. {
            let q = (p as u64).pow(e);
            if q > limit {
                break;
            }
            for m in 1.. {
                if q.pow(m) > limit {
                    break;
                }
                out.push((p, e, m));
            }
        }
    }
    out
}

/// Checks of one enumeration: charpoly identity, Weil degree bound,
/// b = μP^{m/d}, #Aut ≡ −1 mod p; the mass formula is enforced by the
/// enumeration itself.
pub fn check_class_list(list: &ClassList) -> Check {
    let k = list.tower();
    let m = k.m() as i64;
    let p = k.p() as u64;
    for e in list.entries() {
        let phi = list.module(e);
        let cp = &e.charpoly;
        if !verify_charpoly(&phi, cp) {
            return Err(format!("π² − aπ + b ≠ 0 for {phi:?}"));
        }
        if 2 * cp.a.deg_i64() > m {
            return Err(format!("deg a too large for {phi:?}"));
        }
        let d = phi.characteristic().degree().unwrap() as u64;
        let unit = cp.b.exact_div(&phi.characteristic().pow(k.m() as u64 / d));
        if !unit.is_some_and(|u| u.is_constant() && !u.is_zero()) {
            return Err(format!("b is not μP^(m/d) for {phi:?}"));
        }
        if (e.aut + 1) % p != 0 {
            return Err(format!("#Aut = {} for {phi:?}", e.aut));
        }
    }
    if list.mass() != (k.size() as i64).into() {
        return Err(format!("mass {} ≠ q^m", list.mass()));
    }
    Ok(())
}

fn mass_suite(cfg: &VerifyConfig) -> Vec<Outcome> {
    let fields = small_fields(81);
    // θ = 0 and θ = a generator of k (characteristic of degree m)
    let jobs: Vec<(FieldTower, FFElem)> = fields
        .iter()
        .flat_map(|&(p, e, m)| {
            let k = build_tower(p, e, m).expect("small");
            let gen = k.primitive();
            vec![(k.clone(), FFElem::ZERO), (k, gen)]
        })
        .collect();
    let lists = par::map(cfg.exec, &jobs, |(k, theta)| {
        let list = enumerate_classes(k, *theta).map_err(err_str)?;
        check_class_list(&list).map_err(|e| format!("q = {}, m = {}: {e}", k.q(), k.m()))
    });
    // Galois independence: every root of an irreducible quadratic gives the same charpolys
    let quad_fields: Vec<(u32, u32, u32)> = fields.iter().copied().filter(|&(_, _, m)| m == 2).collect();
    let galois = par::map(cfg.exec, &quad_fields, |&(p, e, m)| {
        let k = build_tower(p, e, m).expect("small");
        let fq = k.base();
        let quad = monic_irreducibles(&fq, 2).into_iter().next().expect("exists");
        let roots = roots_in_field(&quad, &k).map_err(err_str)?;
        let multiset = |theta| -> std::result::Result<Vec<_>, String> {
            let mut v: Vec<_> = enumerate_classes(&k, theta)
                .map_err(err_str)?
                .entries()
                .iter()
                .map(|e| (e.charpoly.a.coeffs().to_vec(), e.charpoly.b.coeffs().to_vec()))
                .collect();
            v.sort();
            Ok(v)
        };
        let first = multiset(roots[0])?;
        for &r in &roots[1..] {
            if multiset(r)? != first {
                return Err(format!("q = {}: charpolys depend on the root of {quad}", k.q()));
            }
        }
        Ok(())
    });
    vec![
        outcome(Suite::Mass, "class_invariants_and_mass", lists),
        outcome(Suite::Mass, "galois_independence", galois),
    ]
}

fn series_str(s: &TruncSeries) -> String {
    let c: Vec<String> = s.coeffs().iter().map(|x| x.to_string()).collect();
    format!("[{}]", c.join(", "))
}

/// One BG instance: returns the check and whether B is reduced.
pub fn bg_instance(seed: u64, stream: u64, order: usize) -> (Check, bool, String) {
    let mut rng = gen::rng_for(seed, stream);
    let groups = gen::small_groups();
    let (name, g) = &groups[rng.gen_range(0..groups.len())];
    let ps: &[u32] = match g.order() {
        2 => &[3, 5],
        3 => &[2, 5, 7],
        _ => &[5, 7],
    };
    let p = ps[rng.gen_range(0..ps.len())];
    let e = if p == 2 { 2 } else { rng.gen_range(1..=2u32.min(if p > 5 { 1 } else { 2 })) };
    let m = rng.gen_range(1..=2u32);
    let k = build_tower(p, e, m).expect("small");
    let rings = gen::coeff_rings(&k.base());
    let b = &rings[rng.gen_range(0..3)];
    let label = format!("G = {name}, q = {}, m = {m}, B = {b}", k.q());
    let reduced = b.is_reduced();
    let mut run = || -> Check {
        let ring = b.over(&k).map_err(err_str)?;
        let act = gen::group_action(&mut rng, g, &ring).map_err(err_str)?;
        let lhs = bg_l_series(&act, order).map_err(err_str)?;
        let inv = invariants_module(&act).map_err(err_str)?;
        let rhs = l_series_points(&[(m, inv)], order).map_err(err_str)?;
        ensure(lhs == rhs, || format!("{label}: BG series {} vs invariants {}", series_str(&lhs), series_str(&rhs)))
    };
    (run(), reduced, label)
}

fn bg_suite(cfg: &VerifyConfig) -> Vec<Outcome> {
    let runs = par::map_range(cfg.exec, cfg.instances * 3 / 2, |i| bg_instance(cfg.seed, i as u64, cfg.bg_order));
    let (reduced, other): (Vec<_>, Vec<_>) = runs.into_iter().partition(|r| r.1);
    let mut non_reduced = outcome(Suite::Bg, "non_reduced_B", other.into_iter().map(|r| r.0).collect());
    non_reduced.informational = true;
    vec![outcome(Suite::Bg, "trace_formula_reduced_B", reduced.into_iter().map(|r| r.0).collect()), non_reduced]
}

/// One dlog/additivity instance over a random coefficient ring.
pub fn dlog_instance(seed: u64, stream: u64, order: usize) -> (Check, Check) {
    let mut rng = gen::rng_for(seed, stream);
    let (p, e) = [(2, 1), (3, 1), (5, 1), (2, 2)][rng.gen_range(0..4)];
    let fq = build_tower(p, e, 1).expect("small");
    let rings = gen::coeff_rings(&fq);
    let b = rings[rng.gen_range(0..rings.len())].clone();
    let label = format!("q = {}, B = {b}", fq.q());
    let npoints = rng.gen_range(1..=3);
    let mut points = Vec::new();
    for _ in 0..npoints {
        let d = rng.gen_range(1..=3u32);
        let ring = b.over(&build_tower(p, e, d).expect("small")).expect("same F_q");
        let rank = rng.gen_range(1..=2);
        points.push((d, gen::tau_module(&mut rng, &ring, rank)));
    }
    let dlog = (|| -> Check {
        let l = l_series_points(&points, order).map_err(|e| format!("{label}: {e}"))?;
        let mut euler = TruncSeries::one(&b.scalars(), order).map_err(err_str)?;
        for (_, m) in &points {
            euler = euler.mul(&m.det_char_b(order).map_err(err_str)?).map_err(err_str)?;
        }
        let rhs = series_dlog(&euler.inverse().map_err(err_str)?).map_err(err_str)?;
        ensure(l == rhs, || format!("{label}: l-series differs from dlog"))
    })();
    let additivity = (|| -> Check {
        let d = rng.gen_range(1..=2u32);
        let ring = b.over(&build_tower(p, e, d).expect("small")).expect("same F_q");
        let (r1, r2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let m1 = gen::tau_module(&mut rng, &ring, r1);
        let m2 = gen::tau_module(&mut rng, &ring, r2);
        let off: Vec<Vec<RatFunc>> = (0..m1.rank()).map(|_| (0..m2.rank()).map(|_| gen::scalar(&mut rng, &ring)).collect()).collect();
        let ext = m1.extension(&m2, &off).map_err(err_str)?;
        let l = |m| l_series_points(&[(d, m)], order).map_err(err_str);
        let lhs = l(ext.clone())?;
        let rhs = l(m1.clone())?.add(&l(m2.clone())?).map_err(err_str)?;
        ensure(lhs == rhs, || format!("{label}: l-series not additive"))?;
        let dets = m1.det_char_b(order).and_then(|a| a.mul(&m2.det_char_b(order)?)).map_err(err_str)?;
        ensure(ext.det_char_b(order).map_err(err_str)? == dets, || format!("{label}: L-function not multiplicative"))?;
        // perfection: idempotent, detects nilpotence, and invisible to l-series
        let perf = ext.perfection().map_err(err_str)?;
        let again = perf.perfection().map_err(err_str)?;
        ensure(again.rank() == perf.rank(), || format!("{label}: perfection not idempotent"))?;
        ensure(ext.is_nilpotent() == (perf.rank() == 0), || format!("{label}: nilpotence vs perfection"))?;
        let zero = ring.zero();
        let nil = crate::taumod::TauModule::new(&ring, vec![vec![zero.clone(), ring.one()], vec![zero.clone(), zero]]).map_err(err_str)?;
        let padded = ext.direct_sum(&nil).map_err(err_str)?;
        ensure(l(padded)? == lhs, || format!("{label}: nilpotent summand changed the l-series"))
    })();
    (dlog, additivity)
}

fn dlog_suite(cfg: &VerifyConfig) -> Vec<Outcome> {
    let runs = par::map_range(cfg.exec, cfg.instances, |i| dlog_instance(cfg.seed, i as u64, cfg.dlog_order));
    let (a, b): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    vec![outcome(Suite::Dlog, "dlog_identity", a), outcome(Suite::Dlog, "additivity_and_perfection", b)]
}

/// The vanishing and Ramanujan grid for one q: deg P ≤ 2, n ≤ 2 within
/// the budget, 2 ≤ k ≤ 12, 0 ≤ l ≤ q − 2.
pub fn ramanujan_grid(p: u32, e: u32, budget: u64, exec: Exec) -> Result<(usize, Vec<String>, Vec<String>)> {
    let fq = build_tower(p, e, 1)?;
    let q = fq.q() as i64;
    let opts = HeckeOptions { budget, strict: false, exec, ..HeckeOptions::default() };
    let mut rows = 0;
    let mut vanishing = Vec::new();
    let mut bounds = Vec::new();
    for d in 1..=2 {
        for pp in monic_irreducibles(&fq, d) {
            let ns: Vec<u32> = (1..=2).filter(|&n| (q as u64).pow(n * d as u32) <= budget).collect();
            if ns.is_empty() {
                continue;
            }
            let ks: Vec<u32> = (2..=12).collect();
            let ls: Vec<i64> = (0..=q - 2).collect();
            for r in trace_table(&[pp], &ns, &ks, &ls, &opts)? {
                rows += 1;
                let (k, l) = (r.query.k as i64, r.query.l);
                if (k - 2 * l).rem_euclid(q - 1) != 0 && !r.trace_adelic.is_zero() {
                    vanishing.push(format!("{:?} gives {}", r.query, r.trace_adelic));
                }
                if !r.ok() {
                    bounds.push(format!("{:?} has exponents {} / {}", r.query, r.exponent_adelic, r.exponent_normalized));
                }
            }
        }
    }
    Ok((rows, vanishing, bounds))
}

fn ramanujan_suite(cfg: &VerifyConfig) -> Vec<Outcome> {
    let mut vanish = Vec::new();
    let mut bound = Vec::new();
    for (p, e) in [(3, 1), (2, 2), (5, 1)] {
        match ramanujan_grid(p, e, cfg.hecke_budget, cfg.exec) {
            Ok((rows, v, b)) => {
                vanish.push(v.into_iter().next().map_or(Ok(()), Err));
                bound.push(b.into_iter().next().map_or(Ok(()), Err));
                vanish.extend((1..rows).map(|_| Ok(())));
                bound.extend((1..rows).map(|_| Ok(())));
            }
            Err(err) => {
                vanish.push(Err(err.to_string()));
                bound.push(Err(err.to_string()));
            }
        }
    }
    vec![outcome(Suite::Ramanujan, "vanishing", vanish), outcome(Suite::Ramanujan, "bounds", bound)]
}

/// Towers and θ used for random two-path checks.
fn twopath_lists() -> Vec<ClassList> {
    [(3, 1, 1), (3, 1, 2), (2, 2, 1), (2, 2, 2), (5, 1, 1), (2, 1, 3), (7, 1, 1), (3, 1, 3)]
        .iter()
        .flat_map(|&(p, e, m)| {
            let k = build_tower(p, e, m).expect("small");
            [FFElem::ZERO, k.primitive()].map(|t| enumerate_classes(&k, t).expect("enumeration"))
        })
        .collect()
}

/// One random (class, k, l) comparison of the two trace computations.
pub fn twopath_instance(lists: &[ClassList], seed: u64, stream: u64) -> Check {
    let mut rng = gen::rng_for(seed, stream);
    let list = &lists[rng.gen_range(0..lists.len())];
    let e = &list.entries()[rng.gen_range(0..list.len())];
    let k = rng.gen_range(2..=8u32);
    let l = rng.gen_range(-8..=8i64);
    let cp = &e.charpoly;
    let lhs = RatFunc::from_poly(symmetric_trace(&cp.a, &cp.b, k - 2))
        .mul(&RatFunc::from_poly(cp.b.clone()).pow(l - k as i64 + 1).map_err(err_str)?);
    let rhs = sym_det_trace(&list.module(e), k, l).map_err(err_str)?;
    ensure(lhs == rhs, || format!("{:?}, k = {k}, l = {l}: {lhs} vs {rhs}", list.module(e)))
}

fn twopath_suite(cfg: &VerifyConfig) -> Vec<Outcome> {
    let lists = twopath_lists();
    let runs = par::map_range(cfg.exec, 2 * cfg.instances, |i| twopath_instance(&lists, cfg.seed, i as u64));
    vec![outcome(Suite::Twopath, "recurrence_vs_crystal", runs)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = VerifyConfig { instances: 6, ..VerifyConfig::default() };
        for s in [Suite::Skew, Suite::Bg, Suite::Dlog, Suite::Twopath] {
            for o in run(s, &cfg) {
                assert!(o.passed(), "{o}");
            }
        }
    }
}
