use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Signed, Zero};

use super::{Coeff, SeriesError};

/// A multivariate power series truncated by total degree, with exact rational
/// coefficients.
///
/// Terms are keyed by exponent vectors of length `nvars`; only terms of total
/// degree `<= order` with nonzero coefficient are stored. The `BTreeMap` keeps
/// iteration lexicographic, which makes printing and equality deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl MultiSeries {
    /// The zero series.
    pub fn zero(nvars: usize, order: u32) -> Self {
        Self {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// A constant series.
    pub fn constant(nvars: usize, order: u32, value: Coeff) -> Self {
        let mut s = Self::zero(nvars, order);
        s.insert_term(vec![0; nvars], value);
        s
    }

    /// The constant series 1.
    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, Coeff::one())
    }

    /// The single variable `y_a` (0-based index).
    pub fn variable(nvars: usize, order: u32, a: usize) -> Self {
        assert!(a < nvars, "variable index {a} out of range for {nvars} vars");
        let mut expo = vec![0; nvars];
        expo[a] = 1;
        let mut s = Self::zero(nvars, order);
        s.insert_term(expo, Coeff::one());
        s
    }

    /// A single monomial `value * y^expo`.
    pub fn monomial(nvars: usize, order: u32, expo: Vec<u32>, value: Coeff) -> Self {
        assert_eq!(expo.len(), nvars, "exponent vector length mismatch");
        let mut s = Self::zero(nvars, order);
        s.insert_term(expo, value);
        s
    }

    /// Build a series from `(exponent, coefficient)` pairs; terms beyond the
    /// truncation order are dropped, repeated exponents are summed.
    pub fn from_terms<I>(nvars: usize, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Coeff)>,
    {
        let mut s = Self::zero(nvars, order);
        for (expo, c) in terms {
            assert_eq!(expo.len(), nvars, "exponent vector length mismatch");
            s.add_term(expo, c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no stored term has total degree `<= through`.
    pub fn is_zero_through(&self, through: u32) -> bool {
        self.terms.keys().all(|e| total_degree(e) > through)
    }

    /// Coefficient of `y^expo` (zero when absent).
    pub fn coeff(&self, expo: &[u32]) -> Coeff {
        self.terms.get(expo).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&vec![0; self.nvars])
    }

    /// Iterate stored terms in lexicographic exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Coeff)> {
        self.terms.iter()
    }

    /// Stored terms sorted by total degree, then lexicographically.
    pub fn terms_by_degree(&self) -> Vec<(Vec<u32>, Coeff)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by_key(|(e, _)| (total_degree(e), e.clone()));
        v
    }

    fn insert_term(&mut self, expo: Vec<u32>, value: Coeff) {
        if !value.is_zero() && total_degree(&expo) <= self.order {
            self.terms.insert(expo, value);
        }
    }

    /// Add `value * y^expo` in place, respecting truncation and dropping
    /// cancellations.
    pub fn add_term(&mut self, expo: Vec<u32>, value: Coeff) {
        if value.is_zero() || total_degree(&expo) > self.order {
            return;
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        assert_eq!(self.order, other.order, "truncation order mismatch");
    }

    /// Multiply by a scalar.
    pub fn scalar_mul(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .collect();
        Self {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Multiply by the monomial `c * y^expo`, dropping terms pushed past the
    /// truncation order.
    pub fn mul_monomial(&self, expo: &[u32], c: &Coeff) -> Self {
        assert_eq!(expo.len(), self.nvars, "exponent vector length mismatch");
        let mut out = Self::zero(self.nvars, self.order);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            let shifted: Vec<u32> = e.iter().zip(expo).map(|(a, b)| a + b).collect();
            out.insert_term(shifted, v * c);
        }
        out
    }

    /// Integer power. Negative exponents require a nonzero constant term.
    pub fn pow_int(&self, k: i64) -> Result<Self, SeriesError> {
        if k == 0 {
            return Ok(Self::one(self.nvars, self.order));
        }
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Self::one(self.nvars, self.order);
        let mut sq = base;
        loop {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n == 0 {
                return Ok(acc);
            }
            sq = &sq * &sq;
        }
    }

    /// Reciprocal of a unit series (nonzero constant term), by the geometric
    /// series in `1 - f/f(0)`.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        // u = 1 - f/c0 has zero constant term, so u^k has min degree k.
        let u = &Self::one(self.nvars, self.order) - &self.scalar_mul(&c0.recip());
        let mut out = Self::one(self.nvars, self.order);
        let mut upow = Self::one(self.nvars, self.order);
        for _ in 0..self.order {
            upow = &upow * &u;
            if upow.is_zero() {
                break;
            }
            out = &out + &upow;
        }
        Ok(out.scalar_mul(&c0.recip()))
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let mut out = Self::one(self.nvars, self.order);
        let mut term = Self::one(self.nvars, self.order);
        for k in 1..=self.order as i64 {
            term = (&term * self).scalar_mul(&super::rat(1, k));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let v = self - &Self::one(self.nvars, self.order);
        let mut out = Self::zero(self.nvars, self.order);
        let mut vpow = Self::one(self.nvars, self.order);
        for k in 1..=self.order as i64 {
            vpow = &vpow * &v;
            if vpow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = &out + &vpow.scalar_mul(&super::rat(sign, k));
        }
        Ok(out)
    }

    /// The Euler derivation `y_a d/dy_a`: multiplies each term by its
    /// `a`-exponent.
    pub fn theta(&self, a: usize) -> Self {
        assert!(a < self.nvars, "variable index {a} out of range");
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[a] > 0)
            .map(|(e, v)| (e.clone(), v * BigRational::from_integer(e[a].into())))
            .collect();
        Self {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Compose with `subs`: substitute `subs[a]` for variable `a`. Each
    /// substituted series must have zero constant term so the composition is
    /// well defined on truncations; the result is exact up to the shared
    /// order. The result lives in the variable ring of the `subs`.
    pub fn substitute(&self, subs: &[Self]) -> Result<Self, SeriesError> {
        assert_eq!(subs.len(), self.nvars, "substitution count mismatch");
        let (out_nvars, order) = match subs.first() {
            Some(s) => (s.nvars, s.order),
            None => return Ok(Self::constant(0, self.order, self.constant_term())),
        };
        for s in subs {
            assert_eq!(s.nvars, out_nvars, "nvars mismatch among substitutions");
            assert_eq!(s.order, order, "order mismatch among substitutions");
            if !s.constant_term().is_zero() {
                return Err(SeriesError::SubstitutionConstantTerm);
            }
        }
        // Power tables: pows[a][k] = subs[a]^k, built lazily up to the
        // largest exponent of y_a occurring in self.
        let mut pows: Vec<Vec<Self>> = subs
            .iter()
            .map(|s| vec![Self::one(out_nvars, order), s.clone()])
            .collect();
        let mut out = Self::zero(out_nvars, order);
        for (expo, c) in &self.terms {
            let mut term = Self::constant(out_nvars, order, c.clone());
            for (a, &e) in expo.iter().enumerate() {
                while pows[a].len() <= e as usize {
                    let next = {
                        let last = pows[a].last().unwrap();
                        last * &subs[a]
                    };
                    pows[a].push(next);
                }
                if e > 0 {
                    term = &term * &pows[a][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Solve `q_a = y_a exp(g_a(y))` for `y(q)` as series in `q`, by the
    /// fixed-point iteration `y_a <- q_a exp(-g_a(y))` starting from
    /// `y_a = q_a`. Each pass is exact on one more total degree, so `order`
    /// passes suffice; no convergence tolerance is involved.
    pub fn invert_unit_substitution(g: &[Self]) -> Result<Vec<Self>, SeriesError> {
        let nvars = g.len();
        let (order, gvars) = match g.first() {
            Some(s) => (s.order, s.nvars),
            None => return Ok(Vec::new()),
        };
        assert_eq!(gvars, nvars, "system must be square in its variables");
        for s in g {
            assert_eq!(s.nvars, nvars, "nvars mismatch in system");
            assert_eq!(s.order, order, "order mismatch in system");
            if !s.constant_term().is_zero() {
                return Err(SeriesError::NonzeroConstantTerm);
            }
        }
        let units: Vec<Self> = g
            .iter()
            .map(|s| s.scalar_mul(&super::rat_int(-1)).exp())
            .collect::<Result<_, _>>()?;
        let mut y: Vec<Self> = (0..nvars)
            .map(|a| Self::variable(nvars, order, a))
            .collect();
        for _ in 0..order {
            y = units
                .iter()
                .enumerate()
                .map(|(a, u)| {
                    let composed = u.substitute(&y)?;
                    Ok(composed.mul_monomial(&unit_expo(nvars, a), &Coeff::one()))
                })
                .collect::<Result<_, SeriesError>>()?;
        }
        Ok(y)
    }

    /// Drop the last variable from a series that does not involve it.
    /// Panics if any stored term has a nonzero exponent there.
    pub fn drop_last_var(&self) -> Self {
        assert!(self.nvars > 0);
        let mut out = Self::zero(self.nvars - 1, self.order);
        for (e, c) in &self.terms {
            assert_eq!(
                *e.last().unwrap(),
                0,
                "series involves the variable being dropped"
            );
            out.insert_term(e[..self.nvars - 1].to_vec(), c.clone());
        }
        out
    }
}

fn unit_expo(nvars: usize, a: usize) -> Vec<u32> {
    let mut e = vec![0; nvars];
    e[a] = 1;
    e
}

pub(crate) fn total_degree(expo: &[u32]) -> u32 {
    expo.iter().sum()
}

impl Add for &MultiSeries {
    type Output = MultiSeries;
    fn add(self, rhs: &MultiSeries) -> MultiSeries {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiSeries {
    type Output = MultiSeries;
    fn sub(self, rhs: &MultiSeries) -> MultiSeries {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        self.scalar_mul(&super::rat_int(-1))
    }
}

impl Mul for &MultiSeries {
    type Output = MultiSeries;
    fn mul(self, rhs: &MultiSeries) -> MultiSeries {
        self.assert_compatible(rhs);
        let mut out = MultiSeries::zero(self.nvars, self.order);
        let (short, long) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (ea, ca) in &short.terms {
            let da = total_degree(ea);
            for (eb, cb) in &long.terms {
                if da + total_degree(eb) > self.order {
                    continue;
                }
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(expo, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (expo, c) in self.terms_by_degree() {
            if !first {
                write!(f, " ")?;
            }
            if first || c.is_negative() {
                write!(f, "{c}")?;
            } else {
                write!(f, "+{c}")?;
            }
            first = false;
            for (a, &e) in expo.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*y{}", a + 1)?,
                    _ => write!(f, "*y{}^{}", a + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
