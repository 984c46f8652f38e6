use super::monomial::{parse_exponents, write_word, Generator, Monomial};
use super::rewrite::Rewriter;
use crate::param::{ExactParams, Param, ParamExps, ParamPoly, UnboundParam};
use crate::scalar::{format_gauss, imag_unit, parse_gauss, GaussRational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact noncommutative polynomial in the six sphere generators, kept in
/// normal form: a sum of [`Monomial`]s with [`ParamPoly`] coefficients.
///
/// Every constructor and operation re-normalizes, so two values are equal
/// as algebra elements (modulo the unit-norm relation) iff they compare
/// equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OperatorExpr {
    terms: BTreeMap<Monomial, ParamPoly>,
}

/// How [`OperatorExpr::coefficient_of`] reads the N-part of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// The stored normal form, where `NZ^2` never appears.
    Normal,
    /// The form with `NX^2 + NY^2` folded back into `1 - NZ^2`
    /// (see [`OperatorExpr::pre_elimination`]).
    PreElimination,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn scalar(c: GaussRational) -> Self {
        Self::constant(ParamPoly::constant(c))
    }

    pub fn param(p: Param) -> Self {
        Self::constant(ParamPoly::param(p))
    }

    pub fn gen(g: Generator) -> Self {
        Self::term(Monomial::generator(g), ParamPoly::one())
    }

    pub fn term(m: Monomial, c: ParamPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    fn add_term(&mut self, m: Monomial, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Normal form of a word of generators, multiplied in the written order.
    pub fn word(w: &[Generator]) -> Self {
        let mut rw = Rewriter::new();
        let mut acc: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        acc.insert(Monomial::ONE, GaussRational::one());
        for g in w {
            let gm = Monomial::generator(*g);
            let mut next: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
            for (m, c) in &acc {
                for (m2, c2) in rw.mul_monomials(m, &gm) {
                    let slot = next.entry(m2).or_insert_with(GaussRational::zero);
                    *slot += c * c2;
                    if slot.is_zero() {
                        next.remove(&m2);
                    }
                }
            }
            acc = next;
        }
        let mut out = Self::zero();
        for (m, c) in acc {
            out.add_term(m, ParamPoly::constant(c));
        }
        out
    }

    /// Normal form of a raw sum `Σ coefficient · word`.
    pub fn normal_form<'a, I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (&'a ParamPoly, &'a [Generator])>,
    {
        raw.into_iter().fold(Self::zero(), |acc, (c, w)| {
            &acc + &Self::word(w).scale(c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn scale_gauss(&self, c: &GaussRational) -> Self {
        self.scale(&ParamPoly::constant(c.clone()))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Hermitian conjugate: each word reversed, each coefficient conjugated,
    /// generators self-adjoint and parameters real.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut w = m.word();
            w.reverse();
            out = &out + &Self::word(&w).scale(&c.conj());
        }
        out
    }

    /// Maximum total N-exponent over the terms.
    pub fn degree_n(&self) -> u32 {
        self.terms.keys().map(Monomial::n_degree).max().unwrap_or(0)
    }

    pub fn params(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|p| self.terms.values().any(|c| c.params().contains(p)))
            .collect()
    }

    /// Substitutes values for every parameter occurring in the expression.
    pub fn substitute_params(&self, values: &ExactParams) -> Result<Self, UnboundParam> {
        if let Some(p) = self.params().into_iter().find(|p| !values.contains_key(p)) {
            return Err(UnboundParam(p));
        }
        Ok(self.substitute_partial(values))
    }

    /// Substitutes the given values and leaves other parameters symbolic.
    pub fn substitute_partial(&self, values: &ExactParams) -> Self {
        self.map_coefficients(|c| c.substitute(values))
    }

    /// Rewrites parameters as polynomials in other parameters.
    pub fn compose_params(&self, map: &[Option<ParamPoly>; 4]) -> Self {
        self.map_coefficients(|c| c.compose(map))
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn coefficient_of(&self, m: &Monomial, convention: Convention) -> ParamPoly {
        match convention {
            Convention::Normal => self.terms.get(m).cloned().unwrap_or_default(),
            Convention::PreElimination => self.pre_elimination().coefficient(&m.exponents()),
        }
    }

    /// Re-expresses `NX^2 + NY^2` as `1 - NZ^2` wherever a pair `u·NX^2`,
    /// `u·NY^2` carries equal coefficients, repeating until no such pair
    /// remains. Mismatched pairs are left alone.
    pub fn pre_elimination(&self) -> PreEliminated {
        let mut terms: BTreeMap<RawExps, ParamPoly> = self
            .terms
            .iter()
            .map(|(m, c)| (RawExps(m.exponents()), c.clone()))
            .collect();
        loop {
            let hit = terms.iter().rev().find_map(|(k, c)| {
                if k.0[0] < 2 {
                    return None;
                }
                let mut partner = k.0;
                partner[0] -= 2;
                partner[1] += 2;
                match terms.get(&RawExps(partner)) {
                    Some(pc) if pc == c => Some((*k, RawExps(partner), c.clone())),
                    _ => None,
                }
            });
            let Some((k, partner, c)) = hit else { break };
            terms.remove(&k);
            terms.remove(&partner);
            let mut base = k.0;
            base[0] -= 2;
            let mut with_z2 = base;
            with_z2[2] += 2;
            for (e, v) in [(base, c.clone()), (with_z2, -&c)] {
                let slot = terms.entry(RawExps(e)).or_default();
                *slot = &*slot + &v;
                if slot.is_zero() {
                    terms.remove(&RawExps(e));
                }
            }
        }
        PreEliminated { terms }
    }

    /// The terms whose monomial is not listed in `keep`.
    pub fn outside_span(&self, keep: &[Monomial]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if !keep.contains(m) {
                out.add_term(*m, c.clone());
            }
        }
        out
    }
}

/// Exponent vector with unrestricted `NZ` power, graded-lex ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RawExps(pub [u32; 6]);

impl Ord for RawExps {
    fn cmp(&self, other: &Self) -> Ordering {
        let d1: u32 = self.0.iter().sum();
        let d2: u32 = other.0.iter().sum();
        d1.cmp(&d2).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for RawExps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RawExps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0)
    }
}

/// An expression written with explicit `NZ^2` factors, as produced by
/// [`OperatorExpr::pre_elimination`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreEliminated {
    terms: BTreeMap<RawExps, ParamPoly>,
}

impl PreEliminated {
    pub fn coefficient(&self, e: &[u32; 6]) -> ParamPoly {
        self.terms.get(&RawExps(*e)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RawExps, &ParamPoly)> {
        self.terms.iter()
    }
}

impl fmt::Display for PreEliminated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(k, c)| (k.0, c)))
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = ([u32; 6], &'a ParamPoly)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        write!(f, "({c}) ")?;
        write_word(f, &e)?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for OperatorExpr {
    /// Canonical text: terms in descending graded-lex order, each written
    /// `(coefficient) WORD`, joined by ` + `; the zero expression is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(m, c)| (m.exponents(), c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprTextError {
    #[error("malformed term `{0}`")]
    Term(String),
    #[error("term `{0}` is not in normal form")]
    NotNormal(String),
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        match bytes[k] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && s[k..].starts_with(" + ") => {
                parts.push(&s[start..k]);
                start = k + 3;
                k += 3;
                continue;
            }
            _ => {}
        }
        k += 1;
    }
    parts.push(&s[start..]);
    parts
}

impl std::str::FromStr for OperatorExpr {
    type Err = ExprTextError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in split_top_level(s) {
            let bad = || ExprTextError::Term(term.to_string());
            let body = term.strip_prefix('(').ok_or_else(bad)?;
            let close = body.rfind(") ").ok_or_else(bad)?;
            let coeff: ParamPoly = body[..close].parse().map_err(|_| bad())?;
            let e = parse_exponents(&body[close + 2..]).ok_or_else(bad)?;
            if e[2] > 1 {
                return Err(ExprTextError::NotNormal(term.to_string()));
            }
            out.add_term(Monomial::from_exponents(e), coeff);
        }
        Ok(out)
    }
}

// Structured (JSON) form: every rational is carried as an exact string.

#[derive(Serialize, Deserialize)]
struct CoeffTermDto {
    exps: [u32; 4],
    value: String,
}

#[derive(Serialize, Deserialize)]
struct ExprTermDto {
    monomial: [u32; 6],
    word: String,
    coefficient: Vec<CoeffTermDto>,
}

#[derive(Serialize, Deserialize)]
struct ExprDto {
    terms: Vec<ExprTermDto>,
}

impl Serialize for ParamPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let dto: Vec<CoeffTermDto> = self
            .terms()
            .map(|(e, c)| CoeffTermDto {
                exps: e.0,
                value: format_gauss(c),
            })
            .collect();
        dto.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dto = Vec::<CoeffTermDto>::deserialize(d)?;
        let mut terms = Vec::with_capacity(dto.len());
        for t in dto {
            let v = parse_gauss(&t.value)
                .ok_or_else(|| serde::de::Error::custom(format!("bad coefficient `{}`", t.value)))?;
            terms.push((ParamExps(t.exps), v));
        }
        Ok(ParamPoly::from_terms(terms))
    }
}

impl Serialize for OperatorExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let dto = ExprDto {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| ExprTermDto {
                    monomial: m.exponents(),
                    word: m.to_string(),
                    coefficient: c
                        .terms()
                        .map(|(e, v)| CoeffTermDto {
                            exps: e.0,
                            value: format_gauss(v),
                        })
                        .collect(),
                })
                .collect(),
        };
        dto.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dto = ExprDto::deserialize(d)?;
        let mut out = OperatorExpr::zero();
        for t in dto.terms {
            if t.monomial[2] > 1 {
                return Err(serde::de::Error::custom("NZ exponent above 1"));
            }
            let mut coeff = ParamPoly::zero();
            for ct in t.coefficient {
                let v = parse_gauss(&ct.value).ok_or_else(|| {
                    serde::de::Error::custom(format!("bad coefficient `{}`", ct.value))
                })?;
                coeff.add_term(ParamExps(ct.exps), v);
            }
            out.add_term(Monomial::from_exponents(t.monomial), coeff);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: &'a OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: &'a OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: &'a OperatorExpr) -> OperatorExpr {
        let mut rw = Rewriter::new();
        let mut out = OperatorExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let coeff = c1 * c2;
                for (m, w) in rw.mul_monomials(m1, m2) {
                    out.add_term(m, coeff.scale(&w));
                }
            }
        }
        out
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        self.map_coefficients(|c| -c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<OperatorExpr> for OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: OperatorExpr) -> OperatorExpr {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a OperatorExpr> for OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: &'a OperatorExpr) -> OperatorExpr {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<OperatorExpr> for &'a OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: OperatorExpr) -> OperatorExpr {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        -&self
    }
}

/// `i` as an operator.
pub fn i_op() -> OperatorExpr {
    OperatorExpr::scalar(imag_unit())
}
