//! Exact rational linear combinations over a free basis.
//!
//! [`LinComb`] is a finite sum of basis elements, [`GradedSeries`] is a
//! functional on the basis truncated at a fixed degree, and [`GradedEndo`]
//! stores a linear map by its image on every basis element up to the
//! truncation degree.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Malformed(format!("not a rational: `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Elements of a graded free basis.
pub trait Basis: Clone + Ord + Hash + fmt::Debug {
    fn degree(&self) -> usize;
}

impl<A: Basis, B: Basis> Basis for (A, B) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }
}

/// Finite linear combination with no explicit zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Basis> {
    terms: BTreeMap<B, Rational>,
}

/// Elements of `H ⊗ H`.
pub type Tensor<B> = LinComb<(B, B)>;

impl<B: Basis> Default for LinComb<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B: Basis> LinComb<B> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: B, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
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

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Basis::degree).max()
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn homogeneous(&self, degree: usize) -> Self {
        self.filter(|b| b.degree() == degree)
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        self.filter(|b| b.degree() <= max_degree)
    }

    pub fn filter(&self, keep: impl Fn(&B) -> bool) -> Self {
        Self {
            terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    /// Linear extension of `f` defined on basis elements.
    pub fn map_linear<C: Basis>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabel basis elements (coefficients of colliding images add up).
    pub fn map_basis<C: Basis>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C> {
        LinComb::from_terms(self.terms.iter().map(|(b, c)| (f(b), c.clone())))
    }

    /// Bilinear extension of `f` defined on pairs of basis elements.
    pub fn bilinear<C: Basis, D: Basis>(
        &self,
        other: &LinComb<C>,
        mut f: impl FnMut(&B, &C) -> LinComb<D>,
    ) -> LinComb<D> {
        let mut out = LinComb::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_scaled(&f(a, b), &(x * y));
            }
        }
        out
    }

    /// `a ⊗ b` as an element of the tensor square.
    pub fn tensor(&self, other: &Self) -> Tensor<B> {
        self.bilinear(other, |a, b| LinComb::basis((a.clone(), b.clone())))
    }
}

impl<B: Basis> LinComb<(B, B)> {
    /// Apply `f ⊗ g` and multiply the two halves with `mul`.
    pub fn contract<C: Basis>(
        &self,
        mut f: impl FnMut(&B) -> LinComb<C>,
        mut g: impl FnMut(&B) -> LinComb<C>,
        mut mul: impl FnMut(&C, &C) -> LinComb<C>,
    ) -> LinComb<C> {
        let mut out = LinComb::zero();
        for ((a, b), c) in &self.terms {
            let fa = f(a);
            if fa.is_zero() {
                continue;
            }
            let gb = g(b);
            out.add_scaled(&fa.bilinear(&gb, &mut mul), c);
        }
        out
    }

    pub fn flip(&self) -> Self {
        self.map_basis(|(a, b)| (b.clone(), a.clone()))
    }
}

impl<B: Basis> FromIterator<(B, Rational)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<B: Basis> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c.clone());
        }
    }
}

impl<B: Basis> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), -c.clone());
        }
    }
}

impl<B: Basis> Add<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Basis> Sub<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Basis> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self += &rhs;
        self
    }
}

impl<B: Basis> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self -= &rhs;
        self
    }
}

impl<B: Basis> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        Self { terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }
}

impl<B: Basis> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        -self.clone()
    }
}

/// Write `c·x` terms as `x + 2 y - 1/2 z`; the empty basis element prints as `1`.
pub(crate) fn write_terms<'a, T: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a T, &'a Rational)>,
    mut text: impl FnMut(&T) -> String,
) -> fmt::Result {
    let mut first = true;
    for (b, c) in terms {
        let negative = c.is_negative();
        let mag = c.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if negative { " - " } else { " + " })?;
        }
        first = false;
        if !mag.is_one() {
            write!(f, "{mag} ")?;
        }
        write!(f, "{}", text(b))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn unit_text(s: String) -> String {
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

impl<B: Basis + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |b| unit_text(b.to_string()))
    }
}

impl<B: Basis + fmt::Display> LinComb<(B, B)> {
    /// Render as `a ⊗ b + 2 c ⊗ d`.
    pub fn tensor_text(&self) -> String {
        struct Wrap<'a, B: Basis>(&'a LinComb<(B, B)>);
        impl<B: Basis + fmt::Display> fmt::Display for Wrap<'_, B> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(f, self.0.terms.iter(), |(a, b)| {
                    format!("{} ⊗ {}", unit_text(a.to_string()), unit_text(b.to_string()))
                })
            }
        }
        Wrap(self).to_string()
    }
}

impl<B: Basis> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |b| format!("{b:?}"))
    }
}

/// A linear functional on the basis, known on every element of degree ≤ `trunc`.
///
/// Reading a coefficient beyond the truncation is an error rather than zero.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries<B: Basis> {
    trunc: usize,
    coeffs: BTreeMap<B, Rational>,
}

impl<B: Basis> GradedSeries<B> {
    pub fn zero(trunc: usize) -> Self {
        Self { trunc, coeffs: BTreeMap::new() }
    }

    /// The convolution unit: `1` on the empty element, zero elsewhere.
    pub fn delta(trunc: usize, unit: B) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs.insert(unit, Rational::one());
        s
    }

    pub fn from_lincomb(trunc: usize, p: &LinComb<B>) -> Result<Self> {
        let mut s = Self::zero(trunc);
        for (b, c) in p.iter() {
            s.set(b.clone(), c.clone())?;
        }
        Ok(s)
    }

    /// Build from `f` evaluated on the given basis elements.
    pub fn from_fn<'a>(
        trunc: usize,
        basis: impl IntoIterator<Item = &'a B>,
        mut f: impl FnMut(&B) -> Rational,
    ) -> Self
    where
        B: 'a,
    {
        let mut s = Self::zero(trunc);
        for b in basis {
            if b.degree() <= trunc {
                let c = f(b);
                if !c.is_zero() {
                    s.coeffs.insert(b.clone(), c);
                }
            }
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn get(&self, b: &B) -> Result<Rational> {
        if b.degree() > self.trunc {
            return Err(Error::DegreeOverflow { degree: b.degree(), trunc: self.trunc });
        }
        Ok(self.coeffs.get(b).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn set(&mut self, b: B, c: Rational) -> Result<()> {
        if b.degree() > self.trunc {
            return Err(Error::DegreeOverflow { degree: b.degree(), trunc: self.trunc });
        }
        if c.is_zero() {
            self.coeffs.remove(&b);
        } else {
            self.coeffs.insert(b, c);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(α, P) = Σ c_b α(b)`.
    pub fn pairing(&self, p: &LinComb<B>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (b, c) in p.iter() {
            acc += c * self.get(b)?;
        }
        Ok(acc)
    }

    /// The restriction `α_k` to degree `k`.
    pub fn homogeneous(&self, k: usize) -> Self {
        Self {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().filter(|(b, _)| b.degree() == k).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    /// Drop everything above `trunc` (only lowers the truncation).
    pub fn truncated(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        Self {
            trunc,
            coeffs: self.coeffs.iter().filter(|(b, _)| b.degree() <= trunc).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        Self { trunc: self.trunc, coeffs: self.coeffs.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    /// Sum; the result carries the smaller of the two truncations.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -Rational::one())
    }

    fn combine(&self, other: &Self, sign: Rational) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut lc: LinComb<B> = self.coeffs.iter().filter(|(b, _)| b.degree() <= trunc).map(|(b, c)| (b.clone(), c.clone())).collect();
        for (b, c) in other.coeffs.iter().filter(|(b, _)| b.degree() <= trunc) {
            lc.add_term(b.clone(), c * &sign);
        }
        Self { trunc, coeffs: lc.terms }
    }

    /// `α ∘ f` for an endomorphism `f`.
    pub fn compose(&self, f: &GradedEndo<B>) -> Result<Self> {
        if f.trunc != self.trunc {
            return Err(Error::TruncationMismatch { left: self.trunc, right: f.trunc });
        }
        let mut out = Self::zero(self.trunc);
        for (b, img) in &f.images {
            let v = self.pairing(img)?;
            if !v.is_zero() {
                out.coeffs.insert(b.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn to_lincomb(&self) -> LinComb<B> {
        self.coeffs.iter().map(|(b, c)| (b.clone(), c.clone())).collect()
    }

    /// `{"trunc": N, "terms": [[text, "p/q"], …]}` in canonical order.
    pub fn to_json(&self) -> Value
    where
        B: fmt::Display,
    {
        let terms: Vec<Value> = self.coeffs.iter().map(|(b, c)| json!([b.to_string(), c.to_string()])).collect();
        json!({ "trunc": self.trunc, "terms": terms })
    }

    pub fn from_json(value: &Value, mut parse: impl FnMut(&str) -> Result<B>) -> Result<Self> {
        let bad = |m: &str| Error::Malformed(format!("series JSON: {m}"));
        let trunc = value.get("trunc").and_then(Value::as_u64).ok_or_else(|| bad("missing `trunc`"))? as usize;
        let terms = value.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms`"))?;
        let mut s = Self::zero(trunc);
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term must be a pair"))?;
            let text = pair[0].as_str().ok_or_else(|| bad("basis element must be a string"))?;
            let coeff = match &pair[1] {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(bad("coefficient must be a string or integer")),
            };
            let b = parse(text)?;
            let prev = s.get(&b)?;
            s.set(b, prev + coeff)?;
        }
        Ok(s)
    }
}

impl<B: Basis + fmt::Display> fmt::Display for GradedSeries<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter(), |b| unit_text(b.to_string()))?;
        write!(f, " + O({})", self.trunc + 1)
    }
}

impl<B: Basis> fmt::Debug for GradedSeries<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter(), |b| format!("{b:?}"))?;
        write!(f, " + O({})", self.trunc + 1)
    }
}

/// A linear map stored by its images on all basis elements of degree ≤ `trunc`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedEndo<B: Basis> {
    trunc: usize,
    images: BTreeMap<B, LinComb<B>>,
}

impl<B: Basis> GradedEndo<B> {
    /// `basis` must list every basis element of degree ≤ `trunc`.
    pub fn from_fn(trunc: usize, basis: impl IntoIterator<Item = B>, mut f: impl FnMut(&B) -> LinComb<B>) -> Self {
        let images = basis
            .into_iter()
            .filter(|b| b.degree() <= trunc)
            .map(|b| {
                let img = f(&b);
                (b, img)
            })
            .collect();
        Self { trunc, images }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn image(&self, b: &B) -> Result<&LinComb<B>> {
        self.images
            .get(b)
            .ok_or(Error::DegreeOverflow { degree: b.degree(), trunc: self.trunc })
    }

    pub fn apply(&self, p: &LinComb<B>) -> Result<LinComb<B>> {
        let mut out = LinComb::zero();
        for (b, c) in p.iter() {
            out.add_scaled(self.image(b)?, c);
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch { left: self.trunc, right: other.trunc });
        }
        let mut images = BTreeMap::new();
        for (b, img) in &other.images {
            images.insert(b.clone(), self.apply(img)?);
        }
        Ok(Self { trunc: self.trunc, images })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &LinComb<B>)> {
        self.images.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { trunc: self.trunc, images: self.images.iter().map(|(b, i)| (b.clone(), i.scale(c))).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch { left: self.trunc, right: other.trunc });
        }
        let images = self
            .images
            .iter()
            .map(|(b, i)| {
                let o = other.images.get(b).cloned().unwrap_or_default();
                (b.clone(), i + &o)
            })
            .collect();
        Ok(Self { trunc: self.trunc, images })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }
}

impl<B: Basis> fmt::Debug for GradedEndo<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, img) in &self.images {
            writeln!(f, "{b:?} ↦ {img:?}")?;
        }
        Ok(())
    }
}

/// `Y: b ↦ |b|·b`.
pub fn grading_operator<B: Basis>(trunc: usize, basis: impl IntoIterator<Item = B>) -> GradedEndo<B> {
    GradedEndo::from_fn(trunc, basis, |b| LinComb::term(b.clone(), int(b.degree() as i64)))
}

/// `Y⁻¹` on positive degrees, zero on degree 0.
pub fn inverse_grading_operator<B: Basis>(trunc: usize, basis: impl IntoIterator<Item = B>) -> GradedEndo<B> {
    GradedEndo::from_fn(trunc, basis, |b| match b.degree() {
        0 => LinComb::zero(),
        d => LinComb::term(b.clone(), rat(1, d as i64)),
    })
}

pub fn identity_endo<B: Basis>(trunc: usize, basis: impl IntoIterator<Item = B>) -> GradedEndo<B> {
    GradedEndo::from_fn(trunc, basis, |b| LinComb::basis(b.clone()))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
