use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modular::{inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Coefficient field of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    /// `F_p` with `p` prime and `p < 2^61`; elements are stored as canonical
    /// representatives in `[0, p)`.
    Prime(u64),
}

pub(crate) const MAX_PRIME: u64 = 1 << 61;

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Canonical form of `c` in this field, or `None` when `c`'s denominator
    /// is not invertible.
    pub fn normalize(&self, c: &BigRational) -> Option<BigRational> {
        match self {
            Field::Rationals => Some(c.clone()),
            Field::Prime(_) => self.residue(c).map(|r| BigRational::from_integer(BigInt::from(r))),
        }
    }

    /// Residue of `c` modulo `p`. Panics over the rationals.
    pub fn residue(&self, c: &BigRational) -> Option<u64> {
        let Field::Prime(p) = *self else {
            panic!("residue requested over the rationals");
        };
        let pb = BigInt::from(p);
        let num = c.numer().mod_floor(&pb).to_u64().expect("residue fits");
        let den = c.denom().mod_floor(&pb).to_u64().expect("residue fits");
        if den == 0 {
            return None;
        }
        Some(mul_mod(num, inv_mod(den, p), p))
    }

    pub fn is_canonical(&self, c: &BigRational) -> bool {
        match self {
            Field::Rationals => true,
            Field::Prime(p) => c.is_integer() && !c.is_negative() && c.numer() < &BigInt::from(*p),
        }
    }

    /// `c^(-1)` in the field; `None` for zero.
    pub fn inverse(&self, c: &BigRational) -> Option<BigRational> {
        if c.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(c.recip()),
            Field::Prime(p) => {
                let r = self.residue(c)?;
                if r == 0 {
                    return None;
                }
                Some(BigRational::from_integer(BigInt::from(pow_mod(r, p - 2, *p))))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(2_147_483_647));
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert!(Field::prime(2_305_843_009_213_693_951).is_ok());
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn residues() {
        let f = Field::Prime(7);
        assert_eq!(f.residue(&q(-1, 1)), Some(6));
        assert_eq!(f.residue(&q(1, 2)), Some(4));
        assert_eq!(f.residue(&q(1, 7)), None);
        assert_eq!(f.normalize(&q(3, 2)), Some(q(5, 1)));
        assert_eq!(f.inverse(&q(3, 1)), Some(q(5, 1)));
        assert_eq!(Field::Rationals.inverse(&q(-3, 4)), Some(q(-4, 3)));
        assert!(f.is_canonical(&q(6, 1)));
        assert!(!f.is_canonical(&q(7, 1)));
    }
}
