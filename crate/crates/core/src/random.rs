//! Seeded generation of "general" polynomials.
//!
//! A general member of a linear system is realized by giving every monomial of
//! the requested degree a coefficient drawn uniformly from `1..=97`. All
//! randomness comes from ChaCha8 seeded with a `u64`, so results are identical
//! on every platform.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{enumerate_monomials, Field, Monomial, Polynomial};

pub const MAX_COEFFICIENT: i64 = 97;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic seed for the `index`-th item of a stream, independent of
/// the order in which items are produced.
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Weighted-homogeneous polynomial of degree `d` in `nvars` variables whose
/// support is every monomial in the variables listed in `support`, each with a
/// coefficient in `1..=97`.
pub fn general_polynomial(nvars: usize, weights: &[u64], support: &[usize], d: u64, rng: &mut impl Rng) -> Polynomial {
    let sub_weights: Vec<u64> = support.iter().map(|&i| weights[i]).collect();
    let terms = enumerate_monomials(&sub_weights, d).into_iter().map(|m| {
        let mut e = vec![0u32; nvars];
        for (&i, &k) in support.iter().zip(m.exponents()) {
            e[i] = k;
        }
        let c = rng.gen_range(1..=MAX_COEFFICIENT);
        (Monomial::new(e), BigRational::from_integer(c.into()))
    });
    Polynomial::from_terms(nvars, Field::Rationals, terms).expect("rational coefficients are always valid")
}

/// General polynomial of degree `d` in all variables.
pub fn general_member(weights: &[u64], d: u64, rng: &mut impl Rng) -> Polynomial {
    let all: Vec<usize> = (0..weights.len()).collect();
    general_polynomial(weights.len(), weights, &all, d, rng)
}
