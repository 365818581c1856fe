use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x_0^{e_0} ... x_N^{e_N}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two monomials of the same length.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True iff the monomial only involves variables for which `allowed` holds.
    pub fn supported_in(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == 0 || allowed(i))
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Positive variable weights, stored in non-decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Weights(Vec<u64>);

impl Weights {
    /// Validates positivity and sorts ascending.
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidWeights("at least one weight is required".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        values.sort_unstable();
        Ok(Weights(values))
    }

    /// Like [`Weights::new`] but rejects input that is not already sorted, for
    /// contexts where the order is tied to variable indices.
    pub fn new_sorted(values: Vec<u64>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidWeights(format!(
                "weights {values:?} must be listed in non-decreasing order"
            )));
        }
        Weights::new(values)
    }

    /// `count` copies of weight 1.
    pub fn ones(count: usize) -> Self {
        Weights(vec![1; count.max(1)])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

impl Deref for Weights {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for Weights {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Weights::new(v)
    }
}

impl From<Weights> for Vec<u64> {
    fn from(w: Weights) -> Vec<u64> {
        w.0
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// `sum e_i * a_i`.
pub fn weighted_degree(m: &Monomial, weights: &[u64]) -> Result<u64> {
    if m.nvars() != weights.len() {
        return Err(Error::LengthMismatch { expected: weights.len(), found: m.nvars() });
    }
    Ok(m.exponents().iter().zip(weights).map(|(&e, &a)| e as u64 * a).sum())
}

/// Number of exponent vectors `e >= 0` with `sum e_i * a_i = d`.
///
/// Coin-change style table over the variables. An empty weight list counts only
/// the constant monomial. Counts saturate at `u64::MAX`.
pub fn count_monomials(weights: &[u64], d: u64) -> u64 {
    let d = d as usize;
    let mut table = vec![0u64; d + 1];
    table[0] = 1;
    for &a in weights {
        let a = a as usize;
        if a == 0 || a > d {
            continue;
        }
        for j in a..=d {
            table[j] = table[j].saturating_add(table[j - a]);
        }
    }
    table[d]
}

/// All monomials of weighted degree `d`, in descending lexicographic order of
/// exponent vectors (so `x_0^d` comes first for all-one weights).
pub fn enumerate_monomials(weights: &[u64], d: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; weights.len()];
    fill(weights, 0, d, &mut current, &mut out);
    out
}

fn fill(weights: &[u64], i: usize, remaining: u64, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == weights.len() {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    let a = weights[i];
    let max_e = remaining / a;
    for e in (0..=max_e).rev() {
        current[i] = e as u32;
        fill(weights, i + 1, remaining - e * a, current, out);
    }
    current[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_count(weights: &[u64], d: u64) -> u64 {
        // Nested loops with every exponent bounded by d.
        let n = weights.len();
        let mut count = 0;
        let mut e = vec![0u64; n];
        loop {
            let s: u64 = e.iter().zip(weights).map(|(x, a)| x * a).sum();
            if s == d {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                e[i] += 1;
                if e[i] <= d {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn weighted_degree_examples() {
        let m = Monomial::new(vec![2, 1, 0]);
        assert_eq!(weighted_degree(&m, &[1, 2, 5]).unwrap(), 4);
        assert_eq!(weighted_degree(&Monomial::one(3), &[7, 8, 9]).unwrap(), 0);
        assert_eq!(weighted_degree(&Monomial::new(vec![0, 0, 2]), &[2, 3, 5]).unwrap(), 10);
        assert!(matches!(
            weighted_degree(&m, &[1, 2]),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_monomials(&[1, 1], 2), 3);
        assert_eq!(brute_force_count(&[1, 2, 3], 6), 7);
        assert_eq!(count_monomials(&[1, 2, 3], 6), 7);
        // binom(a + N - 3, N - 2) with N = 4, a = 3
        assert_eq!(count_monomials(&[1, 1, 1], 2), 6);
        assert_eq!(count_monomials(&[], 0), 1);
        assert_eq!(count_monomials(&[], 3), 0);
    }

    #[test]
    fn enumerate_examples() {
        let mons = |w: &[u64], d| -> Vec<Vec<u32>> {
            enumerate_monomials(w, d).into_iter().map(|m| m.0).collect()
        };
        assert_eq!(mons(&[1, 1], 1), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(mons(&[2, 3], 6), vec![vec![3, 0], vec![0, 2]]);
        assert_eq!(mons(&[1, 2], 0), vec![vec![0, 0]]);
        assert!(mons(&[2, 2], 3).is_empty());
    }

    #[test]
    fn weights_are_sorted() {
        assert_eq!(Weights::new(vec![5, 2, 3, 5]).unwrap().as_slice(), &[2, 3, 5, 5]);
        assert!(Weights::new(vec![1, 0]).is_err());
        assert!(Weights::new(vec![]).is_err());
        assert!(Weights::new_sorted(vec![2, 1]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(vec![2, 1, 0]).to_string(), "x0^2*x1");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn count_matches_enumeration_and_brute_force(
                weights in prop::collection::vec(1u64..5, 1..5),
                d in 0u64..12,
            ) {
                let enumerated = enumerate_monomials(&weights, d);
                prop_assert_eq!(count_monomials(&weights, d), enumerated.len() as u64);
                prop_assert_eq!(brute_force_count(&weights, d), enumerated.len() as u64);
                for pair in enumerated.windows(2) {
                    prop_assert!(pair[0] > pair[1]);
                }
                for m in &enumerated {
                    prop_assert_eq!(weighted_degree(m, &weights).unwrap(), d);
                }
            }
        }
    }
}
