use num_rational::BigRational;

use super::field::Field;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A polynomial reduced modulo `p` and flattened for fast repeated evaluation
/// at points of `F_p^n`.
#[derive(Clone, Debug)]
pub struct ModPoly {
    p: u64,
    nvars: usize,
    max_exp: Vec<u32>,
    terms: Vec<(u64, Vec<u32>)>,
}

impl ModPoly {
    /// Reduces `f` modulo `p`. Polynomials already over `F_p` are accepted as
    /// is; rational ones must have denominators prime to `p`.
    pub fn new(f: &Polynomial, p: u64) -> Result<Self> {
        let field = Field::prime(p)?;
        match f.field() {
            Field::Rationals => {}
            Field::Prime(q) if q == p => {}
            other => {
                return Err(Error::FieldMismatch { expected: field.to_string(), found: other.to_string() })
            }
        }
        let mut max_exp = vec![0u32; f.nvars()];
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let r = residue(&field, c, p)?;
            if r == 0 {
                continue;
            }
            for (slot, &e) in max_exp.iter_mut().zip(m.exponents()) {
                *slot = (*slot).max(e);
            }
            terms.push((r, m.exponents().to_vec()));
        }
        Ok(ModPoly { p, nvars: f.nvars(), max_exp, terms })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `point`, whose entries must already be reduced mod `p`.
    pub fn eval(&self, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let p = self.p;
        let powers: Vec<Vec<u64>> = point
            .iter()
            .zip(&self.max_exp)
            .map(|(&x, &m)| {
                let mut row = Vec::with_capacity(m as usize + 1);
                let mut acc = 1 % p;
                row.push(acc);
                for _ in 0..m {
                    acc = mul_mod(acc, x, p);
                    row.push(acc);
                }
                row
            })
            .collect();
        let mut total = 0;
        for (c, exps) in &self.terms {
            let mut v = *c;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    v = mul_mod(v, powers[i][e as usize], p);
                    if v == 0 {
                        break;
                    }
                }
            }
            total = add_mod(total, v, p);
        }
        total
    }
}

fn residue(field: &Field, c: &BigRational, p: u64) -> Result<u64> {
    field.residue(c).ok_or(Error::PrimeDividesDenominator { p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(pow_mod(3, 4, 7), 4);
        assert_eq!(mul_mod(inv_mod(3, 7), 3, 7), 1);
        let big = (1u64 << 61) - 1;
        assert_eq!(mul_mod(inv_mod(12345, big), 12345, big), 1);
    }
}
