use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::monomial::{weighted_degree, Monomial};
use crate::error::{Error, Result};

/// One serialized term: `[numerator, denominator, e_0, ..., e_N]`.
pub type SerializedTerm = Vec<i64>;

/// Sparse polynomial with exact coefficients.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored. Over `F_p` every coefficient is an integer in `[1, p)`.
/// Arithmetic operators panic when the operands disagree on the variable count
/// or the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize, field: Field) -> Self {
        Polynomial { nvars, field, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, field: Field) -> Self {
        Self::from_int(nvars, field, 1)
    }

    pub fn from_int(nvars: usize, field: Field, c: i64) -> Self {
        let mut p = Self::zero(nvars, field);
        p.accumulate(Monomial::one(nvars), BigRational::from_integer(c.into()));
        p
    }

    /// Constant polynomial; fails over `F_p` when `c`'s denominator vanishes.
    pub fn constant(nvars: usize, field: Field, c: &BigRational) -> Result<Self> {
        Self::from_terms(nvars, field, [(Monomial::one(nvars), c.clone())])
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, field: Field, i: usize) -> Self {
        let mut p = Self::zero(nvars, field);
        p.terms.insert(Monomial::var(nvars, i), BigRational::one());
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, adding
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, field: Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(nvars, field);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, found: m.nvars() });
            }
            let c = field.normalize(&c).ok_or(Error::PrimeDividesDenominator { p: field.characteristic() })?;
            p.accumulate(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Polynomial::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigRational> {
        self.terms.get(m)
    }

    /// True iff `x_i` occurs in some term.
    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[i] > 0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0)
    }

    /// True iff every term has weighted degree `d`. The zero polynomial is
    /// homogeneous of every degree.
    pub fn is_weighted_homogeneous(&self, weights: &[u64], d: u64) -> Result<bool> {
        for m in self.terms.keys() {
            if weighted_degree(m, weights)? != d {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The common weighted degree of all terms, or `None` for the zero
    /// polynomial and for non-homogeneous input.
    pub fn weighted_homogeneous_degree(&self, weights: &[u64]) -> Result<Option<u64>> {
        let mut degree = None;
        for m in self.terms.keys() {
            let d = weighted_degree(m, weights)?;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return Ok(None),
                _ => {}
            }
        }
        Ok(degree)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let c = self.normalize(c.clone());
        let mut out = Self::zero(self.nvars, self.field);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.accumulate(m.clone(), a * &c);
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: i + 1 });
        }
        let mut out = Self::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[i] = e - 1;
            out.accumulate(dm, c * BigRational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Exact value at `point`. The point's entries are read in `field`, which
    /// must be the polynomial's own field.
    pub fn evaluate(&self, point: &[BigRational], field: Field) -> Result<BigRational> {
        if field != self.field {
            return Err(Error::FieldMismatch { expected: self.field.to_string(), found: field.to_string() });
        }
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: point.len() });
        }
        let point: Vec<BigRational> = point
            .iter()
            .map(|x| field.normalize(x).ok_or(Error::PrimeDividesDenominator { p: field.characteristic() }))
            .collect::<Result<_>>()?;
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(self.normalize(total))
    }

    /// Composes with the polynomial map `x_i -> images[i]`. The result lives in
    /// the images' ring, which may have a different number of variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: images.len() });
        }
        let (target_vars, target_field) = match images.first() {
            Some(g) => (g.nvars, g.field),
            None => (0, self.field),
        };
        for g in images {
            if g.field != self.field {
                return Err(Error::FieldMismatch { expected: self.field.to_string(), found: g.field.to_string() });
            }
            if g.nvars != target_vars {
                return Err(Error::LengthMismatch { expected: target_vars, found: g.nvars });
            }
        }
        // powers[i][k] = images[i]^k, filled on demand
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|_| vec![Polynomial::one(target_vars, target_field)]).collect();
        let mut out = Polynomial::zero(target_vars, target_field);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target_vars, target_field, c)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Reduction modulo a prime; fails when `p` divides a denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        let field = Field::prime(p)?;
        if let Field::Prime(q) = self.field {
            if q != p {
                return Err(Error::FieldMismatch { expected: field.to_string(), found: self.field.to_string() });
            }
            return Ok(self.clone());
        }
        Self::from_terms(self.nvars, field, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Embeds into a ring with `extra` additional trailing variables.
    pub fn with_extra_vars(&self, extra: usize) -> Self {
        let nvars = self.nvars + extra;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(nvars, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial { nvars, field: self.field, terms }
    }

    /// Drops trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exponents()[nvars..].iter().any(|&e| e > 0) {
                return Err(Error::InvalidParameter(format!(
                    "polynomial depends on variables beyond index {}",
                    nvars.saturating_sub(1)
                )));
            }
            terms.insert(Monomial::new(m.exponents()[..nvars].to_vec()), c.clone());
        }
        Ok(Polynomial { nvars, field: self.field, terms })
    }

    /// Rewrites using the relation `x_i * x_j = 1`, cancelling the common
    /// power of the two variables in every term. Used to model a formal
    /// parameter and its inverse.
    pub fn cancel_inverse_pair(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let e = m.exponents_mut();
            let common = e[i].min(e[j]);
            e[i] -= common;
            e[j] -= common;
            out.accumulate(m, c.clone());
        }
        out
    }

    /// Splits `f = sum_k c_k * x_i^k` and returns the map `k -> c_k`, where
    /// the `c_k` no longer involve `x_i`.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.exponents()[i];
            let mut rest = m.clone();
            rest.exponents_mut()[i] = 0;
            out.entry(k)
                .or_insert_with(|| Polynomial::zero(self.nvars, self.field))
                .accumulate(rest, c.clone());
        }
        out
    }

    /// Serialized rows ordered by weighted degree, then descending lex.
    pub fn to_serialized(&self, weights: &[u64]) -> Result<Vec<SerializedTerm>> {
        let mut rows = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let deg = weighted_degree(m, weights)?;
            let num = c.numer().to_i64().ok_or(Error::CoefficientOverflow)?;
            let den = c.denom().to_i64().ok_or(Error::CoefficientOverflow)?;
            let mut row = Vec::with_capacity(m.nvars() + 2);
            row.push(num);
            row.push(den);
            row.extend(m.exponents().iter().map(|&e| e as i64));
            rows.push((deg, row));
        }
        // stable: keeps descending lex inside each degree
        rows.sort_by_key(|(deg, _)| *deg);
        Ok(rows.into_iter().map(|(_, r)| r).collect())
    }

    pub fn from_serialized(nvars: usize, field: Field, rows: &[SerializedTerm]) -> Result<Self> {
        let mut terms = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != nvars + 2 {
                return Err(Error::LengthMismatch { expected: nvars + 2, found: row.len() });
            }
            if row[1] == 0 {
                return Err(Error::InvalidParameter("zero denominator in serialized term".into()));
            }
            if row[2..].iter().any(|&e| e < 0 || e > u32::MAX as i64) {
                return Err(Error::InvalidParameter("exponents must be non-negative".into()));
            }
            let c = BigRational::new(row[0].into(), row[1].into());
            let m = Monomial::new(row[2..].iter().map(|&e| e as u32).collect());
            terms.push((m, c));
        }
        Self::from_terms(nvars, field, terms)
    }

    fn normalize(&self, c: BigRational) -> BigRational {
        match self.field {
            Field::Rationals => c,
            Field::Prime(p) => {
                debug_assert!(c.is_integer());
                BigRational::from_integer(c.to_integer().mod_floor(&BigInt::from(p)))
            }
        }
    }

    /// Adds `c * m`; `c` must already be canonical for the field up to
    /// reduction of an integer.
    fn accumulate(&mut self, m: Monomial, c: BigRational) {
        let c = self.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = match self.field {
                    Field::Rationals => o.get() + &c,
                    Field::Prime(p) => {
                        BigRational::from_integer((o.get() + &c).to_integer().mod_floor(&BigInt::from(p)))
                    }
                };
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in rings with different variable counts");
        assert_eq!(self.field, other.field, "polynomials live over different fields");
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let mut out = Polynomial::zero(self.nvars, self.field);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.accumulate(ma.mul(mb), a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
