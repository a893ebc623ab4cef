//! Text forms: the polynomial input grammar, rendering, and report rows.
//!
//! Grammar: integers, the variable `T`, `+ - * ^` and parentheses, e.g.
//! `T^2+2*T+1`; integers are read mod p. When q = p^e with e > 1 the symbol
//! `a` denotes the fixed generator of F_q over F_p.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower};
use crate::funcfield::RatFunc;
use crate::hecke::HeckeTraceReport;
use crate::poly::Poly;

pub fn parse_poly(src: &str, fq: &FieldTower) -> Result<Poly> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, fq };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::invalid(format!("unexpected input in {src:?}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    T,
    Gen,
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    v = v.checked_mul(10).and_then(|v| v.checked_add(d as u64)).ok_or_else(|| Error::invalid("integer too large"))?;
                    chars.next();
                }
                out.push(Tok::Int(v));
            }
            'T' | 't' => {
                chars.next();
                out.push(Tok::T);
            }
            'a' => {
                chars.next();
                out.push(Tok::Gen);
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                chars.next();
                out.push(Tok::Op(c));
            }
            _ => return Err(Error::invalid(format!("unexpected character {c:?} in {src:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    fq: &'a FieldTower,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(Error::invalid("exponent must be a nonnegative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let fq = self.fq;
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Poly::constant(fq, fq.from_int((v % fq.p() as u64) as i64)))
            }
            Some(Tok::T) => {
                self.pos += 1;
                Ok(Poly::x(fq))
            }
            Some(Tok::Gen) => {
                self.pos += 1;
                if fq.e() == 1 {
                    return Err(Error::invalid("the symbol a is only defined when q is not prime"));
                }
                Ok(Poly::constant(fq, fq.q_generator()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::invalid("missing closing parenthesis"));
                }
                Ok(inner)
            }
            _ => Err(Error::invalid("expected an integer, T, a or a parenthesised expression")),
        }
    }
}

/// An element of F_q as an integer (prime q) or a polynomial in `a`.
pub fn render_coeff(fq: &FieldTower, c: FFElem) -> String {
    let cs = fq.coeffs(c);
    if fq.e() == 1 {
        return cs[0].to_string();
    }
    // coordinates over F_p in powers of the F_q generator a
    let a = fq.q_generator();
    let mut digits = Vec::new();
    let target = c;
    let p = fq.p();
    let e = fq.e();
    let total = (p as u64).pow(e);
    for idx in 0..total {
        let mut rest = idx;
        let ds: Vec<u32> = (0..e)
            .map(|_| {
                let d = (rest % p as u64) as u32;
                rest /= p as u64;
                d
            })
            .collect();
        let x = ds.iter().rev().fold(FFElem::ZERO, |acc, &d| fq.add(fq.mul(acc, a), fq.from_int(d as i64)));
        if x == target {
            digits = ds;
            break;
        }
    }
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| monomial(&d.to_string(), "a", i as i64))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn monomial(coeff: &str, var: &str, exp: i64) -> String {
    let power = match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    };
    match (coeff, power.is_empty()) {
        (c, true) => c.to_string(),
        ("1", false) => power,
        (c, false) => format!("{c}*{power}"),
    }
}

fn wrap(c: String) -> String {
    if c.contains('+') {
        format!("({c})")
    } else {
        c
    }
}

/// Renders e.g. `2*T^2+1`.
pub fn render_poly(p: &Poly) -> String {
    let fq = p.field();
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| {
            let coeff = render_coeff(fq, c);
            let coeff = if i > 0 { wrap(coeff) } else { coeff };
            monomial(&coeff, "T", i as i64)
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Renders a fraction, using negative powers when the denominator is T^j
/// and the numerator a single term.
pub fn render_ratfunc(x: &RatFunc) -> String {
    if x.is_poly() {
        return render_poly(x.num());
    }
    let den = x.den();
    let num = x.num();
    let den_j = den.degree().unwrap_or(0);
    let num_i = num.degree().unwrap_or(0);
    let den_monomial = den.coeffs()[..den_j].iter().all(|c| c.is_zero());
    let num_monomial = num.coeffs()[..num_i].iter().all(|c| c.is_zero());
    if den_monomial && num_monomial {
        let c = render_coeff(num.field(), num.coeff(num_i));
        return monomial(&wrap(c), "T", num_i as i64 - den_j as i64);
    }
    format!("({})/({})", render_poly(num), render_poly(den))
}

/// One flat output row per report; the field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub q: u32,
    #[serde(rename = "P")]
    pub p: String,
    pub n: u32,
    pub k: u32,
    pub l: i64,
    pub trace_num: String,
    pub trace_den: String,
    pub normalized_num: String,
    pub normalized_den: String,
    pub exp_adelic: String,
    pub bound_adelic: String,
    pub exp_norm: String,
    pub bound_norm: String,
    pub ok: bool,
    pub classes: usize,
}

impl From<&HeckeTraceReport> for ReportRow {
    fn from(r: &HeckeTraceReport) -> Self {
        ReportRow {
            q: r.query.q(),
            p: render_poly(&r.query.p),
            n: r.query.n,
            k: r.query.k,
            l: r.query.l,
            trace_num: render_poly(r.trace_adelic.num()),
            trace_den: render_poly(r.trace_adelic.den()),
            normalized_num: render_poly(r.trace_normalized.num()),
            normalized_den: render_poly(r.trace_normalized.den()),
            exp_adelic: r.exponent_adelic.to_string(),
            bound_adelic: r.bound_adelic.to_string(),
            exp_norm: r.exponent_normalized.to_string(),
            bound_norm: r.bound_normalized.to_string(),
            ok: r.ok(),
            classes: r.class_count,
        }
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_poly(self))
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_ratfunc(self))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let f = self.field();
        let coeffs: Vec<Vec<u32>> = self.coeffs().iter().map(|&c| f.coeffs(c)).collect();
        let mut st = s.serialize_struct("APoly", 1)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("KElem", 2)?;
        st.serialize_field("num", self.num())?;
        st.serialize_field("den", self.den())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_tower;

    #[test]
    fn parse_and_render() {
        let f3 = build_tower(3, 1, 1).unwrap();
        let p = parse_poly("T^2+2*T+1", &f3).unwrap();
        assert_eq!(p, Poly::from_ints(&f3, &[1, 2, 1]));
        assert_eq!(parse_poly("(T+1)^2", &f3).unwrap(), p);
        assert_eq!(parse_poly("-T + 5", &f3).unwrap(), Poly::from_ints(&f3, &[2, 2]));
        assert_eq!(render_poly(&Poly::from_ints(&f3, &[1, 0, 2])), "2*T^2+1");
        assert_eq!(render_poly(&Poly::zero(&f3)), "0");
        assert_eq!(render_poly(&Poly::x(&f3)), "T");
        assert!(parse_poly("T^", &f3).is_err());
        assert!(parse_poly("T+x", &f3).is_err());
        assert!(parse_poly("a", &f3).is_err());
        let inv = RatFunc::new(Poly::one(&f3), Poly::x(&f3).pow(2)).unwrap();
        assert_eq!(render_ratfunc(&inv), "T^-2");
        let other = RatFunc::new(Poly::x(&f3), Poly::from_ints(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(render_ratfunc(&other), "(T)/(T^2+1)");
    }

    #[test]
    fn generator_symbol_over_f4() {
        let f4 = build_tower(2, 2, 1).unwrap();
        let p = parse_poly("T^2+T+a", &f4).unwrap();
        assert_eq!(p.coeff(0), f4.q_generator());
        assert_eq!(render_poly(&p), "T^2+T+a");
        let q = parse_poly("(a+1)*T", &f4).unwrap();
        assert_eq!(render_poly(&q), "(a+1)*T");
        assert_eq!(parse_poly(&render_poly(&q), &f4).unwrap(), q);
    }
}
