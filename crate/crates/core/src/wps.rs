//! Weighted projective spaces `P(a_0, ..., a_N)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{count_monomials, Weights};
use crate::series;

/// A run of equal weights `a^r` in the grouped notation `(a_0^{r_0}, ..., a_M^{r_M})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightGroup {
    pub weight: u64,
    pub multiplicity: usize,
    /// Index of the first variable of the group.
    pub start: usize,
}

impl WeightGroup {
    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.multiplicity
    }
}

/// A coordinate stratum `{x_i = 0 for i not in S}` along which the space has
/// quotient singularities of index `gcd`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SingularStratum {
    pub indices: Vec<usize>,
    pub gcd: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedProjectiveSpace {
    weights: Weights,
    groups: Vec<WeightGroup>,
}

impl WeightedProjectiveSpace {
    /// Accepts weights in any order; they are stored ascending.
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        Ok(Self::from_weights(Weights::new(weights)?))
    }

    pub fn from_weights(weights: Weights) -> Self {
        let mut groups: Vec<WeightGroup> = Vec::new();
        for (i, &a) in weights.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if g.weight == a => g.multiplicity += 1,
                _ => groups.push(WeightGroup { weight: a, multiplicity: 1, start: i }),
            }
        }
        WeightedProjectiveSpace { weights, groups }
    }

    /// Ordinary projective space `P^n`.
    pub fn projective(n: usize) -> Self {
        Self::from_weights(Weights::ones(n + 1))
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn dimension(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn groups(&self) -> &[WeightGroup] {
        &self.groups
    }

    /// Every `N` of the `N + 1` weights are coprime. `P(a)` counts as well
    /// formed only for `a = 1`.
    pub fn is_well_formed(&self) -> bool {
        let w = self.weights.as_slice();
        if w.len() == 1 {
            return w[0] == 1;
        }
        // prefix/suffix gcds give every leave-one-out gcd in linear time
        let n = w.len();
        let mut prefix = vec![0u64; n + 1];
        let mut suffix = vec![0u64; n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i].gcd(&w[i]);
            suffix[n - 1 - i] = suffix[n - i].gcd(&w[n - 1 - i]);
        }
        (0..n).all(|i| prefix[i].gcd(&suffix[i + 1]) == 1)
    }

    pub fn ensure_well_formed(&self) -> Result<()> {
        if self.is_well_formed() {
            Ok(())
        } else {
            Err(Error::NotWellFormed(self.to_string()))
        }
    }

    /// The maximal sets of coordinates whose weights share a common factor,
    /// sorted by index set. Empty iff all weights are 1.
    ///
    /// Every index set with gcd > 1 sits inside `{i : p | a_i}` for a prime
    /// `p` dividing that gcd, so the maximal sets are the maximal members of
    /// that family.
    pub fn singular_strata(&self) -> Result<Vec<SingularStratum>> {
        self.ensure_well_formed()?;
        let candidates: BTreeSet<Vec<usize>> =
            self.prime_divisors().into_iter().map(|p| self.indices_divisible_by(p)).collect();
        let mut strata: Vec<SingularStratum> = candidates
            .iter()
            .filter(|s| !candidates.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
            .map(|s| self.stratum(s.clone()))
            .collect();
        strata.sort();
        Ok(strata)
    }

    /// All coordinate strata that occur as `{i : g | a_i}` for some `g > 1`,
    /// maximal ones first. These are the closures of the loci with a fixed
    /// stabilizer order.
    pub fn saturated_strata(&self) -> Result<Vec<SingularStratum>> {
        let maximal = self.singular_strata()?;
        let mut divisors = BTreeSet::new();
        for &a in self.weights.iter() {
            divisors.extend((2..=a).filter(|g| a % g == 0));
        }
        let mut rest: BTreeSet<Vec<usize>> = divisors.into_iter().map(|g| self.indices_divisible_by(g)).collect();
        for s in &maximal {
            rest.remove(&s.indices);
        }
        let mut out = maximal;
        out.extend(rest.into_iter().map(|s| self.stratum(s)));
        Ok(out)
    }

    /// `l = lcm(a_0, ..., a_N)`; `O(l)` generates the Picard group of a
    /// well-formed space.
    pub fn picard_generator(&self) -> u64 {
        self.weights.iter().fold(1u64, |acc, &a| acc.lcm(&a))
    }

    /// `dim H^0(P, O(m))`, the number of monomials of weighted degree `m`.
    pub fn graded_dim(&self, m: u64) -> u64 {
        count_monomials(&self.weights, m)
    }

    /// Coefficients `0..=up_to` of `1 / prod (1 - t^{a_i})`.
    pub fn hilbert_series(&self, up_to: u64) -> Vec<u64> {
        let denominator = series::product_of_one_minus(&self.weights);
        series::divide(&[1], &denominator, up_to as usize)
            .into_iter()
            .map(|c| u64::try_from(c).expect("monomial counts are non-negative"))
            .collect()
    }

    fn stratum(&self, indices: Vec<usize>) -> SingularStratum {
        let gcd = indices.iter().fold(0u64, |g, &i| g.gcd(&self.weights[i]));
        let dim = indices.len() - 1;
        SingularStratum { indices, gcd, dim }
    }

    fn indices_divisible_by(&self, g: u64) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.weights[i].is_multiple_of(g)).collect()
    }

    fn prime_divisors(&self) -> BTreeSet<u64> {
        let mut primes = BTreeSet::new();
        for &a in self.weights.iter() {
            let mut n = a;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    primes.insert(p);
                    while n % p == 0 {
                        n /= p;
                    }
                }
                p += 1;
            }
            if n > 1 {
                primes.insert(n);
            }
        }
        primes
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|i| big.binary_search(i).is_ok())
}

impl fmt::Display for WeightedProjectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P")?;
        write!(f, "{}", self.weights)
    }
}
