use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in one variable. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Multiply by the monomial of degree `k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitute the variable by its `k`-th power.
    pub fn substitute_power(&self, k: i64) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            p.add_term(e * k, c.clone());
        }
        p
    }

    /// Exponents all divisible by `k`, divided by `k`.
    pub fn compress(&self, k: i64) -> Option<Self> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e / k, c.clone())).collect() })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = Self::zero();
        for (e, x) in &self.terms {
            p.add_term(*e, x * c);
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<Self> {
        let (dmax, lead) = divisor.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let dmin = divisor.min_degree()?;
        let floor = match self.min_degree() {
            Some(m) => m - dmin,
            None => return Some(Self::zero()),
        };
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(top) = rem.max_degree() {
            let qexp = top - dmax;
            let (qc, r) = rem.coeff(top).div_rem(&lead);
            if qexp < floor || !r.is_zero() {
                return None;
            }
            let t = LaurentPoly::monomial(qexp, qc);
            rem = &rem - &(&t * divisor);
            q += &t;
        }
        Some(q)
    }

    /// Render with variable `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        self.display_with(var, |e| e.to_string())
    }

    /// As [`display_in`](Self::display_in) with a custom exponent format.
    pub fn display_with(&self, var: &str, exp: impl Fn(i64) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match (*e, exp(*e)) {
                (0, _) => String::new(),
                (_, x) if x == "1" => var.to_string(),
                (_, x) => format!("{var}^{x}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("A"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p += o;
        p
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, o: LaurentPoly) -> LaurentPoly {
        self += &o;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

/// JSON coefficient: a number when it fits in an `i64`, else a decimal string.
pub(crate) fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::String(c.to_string()),
    }
}

pub(crate) fn coeff_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

#[derive(Serialize, Deserialize)]
struct TermsJson {
    terms: Vec<(i64, serde_json::Value)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TermsJson { terms: self.terms.iter().map(|(e, c)| (*e, coeff_to_json(c))).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = TermsJson::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, v) in t.terms {
            let c = coeff_from_json(&v).ok_or_else(|| serde::de::Error::custom("bad coefficient"))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Integer Laurent polynomial in two variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(e1: i64, e2: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e1, e2, coeff.into());
        p
    }

    pub fn add_term(&mut self, e1: i64, e2: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry((e1, e2)).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&(e1, e2));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: i64, e2: i64) -> BigInt {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of `v1^e1` as a polynomial in the second variable.
    pub fn slice_first(&self, e1: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().filter(|((a, _), _)| *a == e1).map(|((_, b), c)| (*b, c.clone())))
    }

    pub fn display_in(&self, v1: &str, v2: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mono = |v: &str, e: i64| match e {
            0 => String::new(),
            1 => v.to_string(),
            e => format!("{v}^{e}"),
        };
        let mut parts = Vec::new();
        for ((e1, e2), c) in self.terms.iter().rev() {
            let m: Vec<String> = [mono(v1, *e1), mono(v2, *e2)].into_iter().filter(|s| !s.is_empty()).collect();
            let m = m.join("*");
            let abs = c.abs();
            let body = if m.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                m
            } else {
                format!("{abs}*{m}")
            };
            parts.push((c.is_negative(), body));
        }
        let mut out = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut p = self.clone();
        for ((a, b), c) in &o.terms {
            p.add_term(*a, *b, c.clone());
        }
        p
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut p = LaurentPoly2::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                p.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        p
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, i64, serde_json::Value)> =
            self.terms.iter().map(|((a, b), c)| (*a, *b, coeff_to_json(c))).collect();
        serde_json::json!({ "terms": terms }).serialize(s)
    }
}
