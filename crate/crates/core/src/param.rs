//! Polynomials in the real parameters `a, b, c, d` with Gaussian-rational
//! coefficients. These are the coefficients of every symbolic operator.

use crate::scalar::{format_gauss, parse_gauss, to_complex64, GaussRational};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    A,
    B,
    C,
    D,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::C, Param::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
            Param::D => "d",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        match name {
            "a" => Some(Param::A),
            "b" => Some(Param::B),
            "c" => Some(Param::C),
            "d" => Some(Param::D),
            _ => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponents `(deg_a, deg_b, deg_c, deg_d)`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ParamExps(pub [u32; 4]);

impl ParamExps {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &ParamExps) -> ParamExps {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x += y;
        }
        ParamExps(e)
    }
}

impl Ord for ParamExps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ParamExps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact parameter values, used by substitution.
pub type ExactParams = BTreeMap<Param, GaussRational>;

/// Numeric parameter values, used by matrix evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NumericParams(pub [Option<Complex64>; 4]);

impl NumericParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, v: f64) -> Self {
        self.0[p.index()] = Some(Complex64::new(v, 0.0));
        self
    }

    pub fn set(&mut self, p: Param, v: Complex64) {
        self.0[p.index()] = Some(v);
    }

    pub fn get(&self, p: Param) -> Option<Complex64> {
        self.0[p.index()]
    }

    pub fn from_exact(values: &ExactParams) -> Self {
        let mut out = Self::default();
        for (p, v) in values {
            out.set(*p, to_complex64(v));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parameter `{0}` has no value")]
pub struct UnboundParam(pub Param);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<ParamExps, GaussRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut p = Self::zero();
        p.add_term(ParamExps::default(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(crate::scalar::real(n, 1))
    }

    pub fn param(p: Param) -> Self {
        let mut e = [0; 4];
        e[p.index()] = 1;
        let mut out = Self::zero();
        out.add_term(ParamExps(e), GaussRational::one());
        out
    }

    pub fn a() -> Self {
        Self::param(Param::A)
    }
    pub fn b() -> Self {
        Self::param(Param::B)
    }
    pub fn c() -> Self {
        Self::param(Param::C)
    }
    pub fn d() -> Self {
        Self::param(Param::D)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ParamExps, GaussRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: ParamExps, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ParamExps, &GaussRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => self
                .terms
                .get(&ParamExps::default())
                .cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, e: &ParamExps) -> GaussRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn params(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|p| self.terms.keys().any(|e| e.0[p.index()] > 0))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(ParamExps::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Complex conjugation of the coefficients; parameters are real.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v.conj())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replaces each parameter by a polynomial; parameters mapped to `None`
    /// are left untouched.
    pub fn compose(&self, map: &[Option<ParamPoly>; 4]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut kept = [0u32; 4];
            let mut factor = Self::constant(c.clone());
            for p in Param::ALL {
                let k = e.0[p.index()];
                match &map[p.index()] {
                    Some(q) if k > 0 => factor = &factor * &q.pow(k),
                    _ => kept[p.index()] = k,
                }
            }
            let mono = Self::from_terms([(ParamExps(kept), GaussRational::one())]);
            out = &out + &(&factor * &mono);
        }
        out
    }

    /// Partial substitution of exact values.
    pub fn substitute(&self, values: &ExactParams) -> Self {
        let mut map: [Option<ParamPoly>; 4] = Default::default();
        for (p, v) in values {
            map[p.index()] = Some(Self::constant(v.clone()));
        }
        self.compose(&map)
    }

    /// Substitution that must eliminate every parameter present.
    pub fn substitute_all(&self, values: &ExactParams) -> Result<GaussRational, UnboundParam> {
        if let Some(p) = self.params().into_iter().find(|p| !values.contains_key(p)) {
            return Err(UnboundParam(p));
        }
        Ok(self
            .substitute(values)
            .as_constant()
            .expect("all parameters bound"))
    }

    pub fn eval(&self, values: &NumericParams) -> Result<Complex64, UnboundParam> {
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = to_complex64(c);
            for p in Param::ALL {
                let k = e.0[p.index()];
                if k > 0 {
                    let v = values.get(p).ok_or(UnboundParam(p))?;
                    term *= v.powu(k);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&ParamExps, &GaussRational)> {
        self.terms.iter().next_back()
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, lc)) => {
                let inv = GaussRational::one() / lc;
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Derivative with respect to a parameter.
    pub fn derivative(&self, p: Param) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.0[p.index()];
            if k > 0 {
                let mut e2 = *e;
                e2.0[p.index()] -= 1;
                out.add_term(e2, c * crate::scalar::real(k as i64, 1));
            }
        }
        out
    }

    /// Human-oriented text: unit coefficients dropped and signs folded into
    /// the separators, `-a + b + c + 2`. Not accepted by `FromStr`.
    pub fn readable(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let negative = c.im.is_zero() && c.re < num_rational::BigRational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let vars: Vec<String> = Param::ALL
                .iter()
                .filter_map(|p| match e.0[p.index()] {
                    0 => None,
                    1 => Some(p.to_string()),
                    k => Some(format!("{p}^{k}")),
                })
                .collect();
            if vars.is_empty() || !mag.is_one() {
                out.push_str(&format_gauss(&mag));
                if !vars.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&vars.join("*"));
        }
        out
    }
}

impl fmt::Display for ParamPoly {
    /// Terms in descending order, joined by ` + `, each with an explicit
    /// coefficient: `-1/2*a*b^2 + i*c + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&format_gauss(c))?;
            for p in Param::ALL {
                match e.0[p.index()] {
                    0 => {}
                    1 => write!(f, "*{}", p)?,
                    k => write!(f, "*{}^{}", p, k)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed parameter polynomial `{0}`")]
pub struct ParamPolyParseError(pub String);

impl std::str::FromStr for ParamPoly {
    type Err = ParamPolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParamPolyParseError(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let mut factors = term.split('*');
            let coeff = parse_gauss(factors.next().ok_or_else(err)?).ok_or_else(err)?;
            let mut e = [0u32; 4];
            for factor in factors {
                let (name, k) = match factor.split_once('^') {
                    Some((n, k)) => (n, k.parse::<u32>().map_err(|_| err())?),
                    None => (factor, 1),
                };
                let p = Param::from_name(name).ok_or_else(err)?;
                e[p.index()] += k;
            }
            out.add_term(ParamExps(e), coeff);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: &'a ParamPoly) -> ParamPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ParamPoly> for &'a ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}
