//! Automorphisms of a well-formed weighted projective space.
//!
//! `Aut(P)` is the semidirect product of its unipotent radical, whose elements
//! shift each coordinate by a weighted-homogeneous polynomial in coordinates of
//! strictly smaller weight, and the reductive part
//! `(GL_{r_0} x ... x GL_{r_M}) / C*`, where `C*` embeds as
//! `t -> (t^{a_0} Id, ..., t^{a_M} Id)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rank_rational;
use crate::poly::{count_monomials, Field, Polynomial, SerializedTerm, Weights};
use crate::wps::WeightedProjectiveSpace;

/// Dimensions of the pieces of `Aut(P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutStructure {
    pub weights: Vec<u64>,
    /// Multiplicities `r_0, ..., r_M` of the distinct weights.
    pub reductive_factors: Vec<usize>,
    /// For each weight group `i`, the dimension of the space of degree-`a_i`
    /// polynomials in the coordinates of smaller weight.
    pub per_weight_phi_dims: Vec<u64>,
    pub unipotent_dim: u64,
    /// `sum r_i^2 - 1`.
    pub reductive_dim: u64,
    pub total_dim: u64,
}

impl AutStructure {
    pub fn of(space: &WeightedProjectiveSpace) -> Result<Self> {
        if !space.is_well_formed() {
            return Err(Error::AutNotWellFormed(space.to_string()));
        }
        let groups = space.groups();
        let per_weight_phi_dims: Vec<u64> = groups
            .iter()
            .map(|g| count_monomials(&space.weights()[..g.start], g.weight))
            .collect();
        let unipotent_dim = groups.iter().zip(&per_weight_phi_dims).map(|(g, &d)| g.multiplicity as u64 * d).sum();
        let reductive_factors: Vec<usize> = groups.iter().map(|g| g.multiplicity).collect();
        let reductive_dim = reductive_factors.iter().map(|&r| (r * r) as u64).sum::<u64>() - 1;
        Ok(AutStructure {
            weights: space.weights().to_vec(),
            reductive_factors,
            per_weight_phi_dims,
            unipotent_dim,
            reductive_dim,
            total_dim: unipotent_dim + reductive_dim,
        })
    }
}

/// A graded endomorphism of the coordinate ring, given by the image of each
/// coordinate; the image of `x_i` is weighted homogeneous of degree `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialMap {
    weights: Weights,
    images: Vec<Polynomial>,
}

/// JSON form of a [`PolynomialMap`] over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedMap {
    pub weights: Vec<u64>,
    pub images: Vec<Vec<SerializedTerm>>,
}

impl PolynomialMap {
    /// Checks arity, field agreement and the degree of every image.
    pub fn new(weights: Weights, images: Vec<Polynomial>) -> Result<Self> {
        let n = weights.len();
        if images.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: images.len() });
        }
        let field = images[0].field();
        for (i, g) in images.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::LengthMismatch { expected: n, found: g.nvars() });
            }
            if g.field() != field {
                return Err(Error::FieldMismatch { expected: field.to_string(), found: g.field().to_string() });
            }
            if !g.is_weighted_homogeneous(&weights, weights[i])? {
                return Err(Error::EquationDegree {
                    index: i,
                    reason: format!("image of x{i} must be weighted homogeneous of degree {}", weights[i]),
                });
            }
        }
        Ok(PolynomialMap { weights, images })
    }

    pub fn identity(weights: &Weights, field: Field) -> Self {
        let n = weights.len();
        PolynomialMap { weights: weights.clone(), images: (0..n).map(|i| Polynomial::var(n, field, i)).collect() }
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn field(&self) -> Field {
        self.images[0].field()
    }

    /// Pullback `f -> f(images)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.images)
    }

    /// `self ∘ other` as maps of points: the image of `x_i` is
    /// `self.images[i]` evaluated at `other.images`.
    pub fn compose(&self, other: &PolynomialMap) -> Result<PolynomialMap> {
        if self.weights != other.weights {
            return Err(Error::LengthMismatch { expected: self.weights.len(), found: other.weights.len() });
        }
        let images = self.images.iter().map(|g| g.substitute(&other.images)).collect::<Result<Vec<_>>>()?;
        Ok(PolynomialMap { weights: self.weights.clone(), images })
    }

    pub fn is_identity(&self) -> bool {
        *self == PolynomialMap::identity(&self.weights, self.field())
    }

    /// If the map has the unipotent normal form `x_i -> x_i + Φ_i` with every
    /// `Φ_i` in coordinates of strictly smaller weight, returns the nonzero
    /// shifts.
    pub fn unipotent_shifts(&self) -> Option<BTreeMap<usize, Polynomial>> {
        let n = self.weights.len();
        let mut shifts = BTreeMap::new();
        for (i, g) in self.images.iter().enumerate() {
            let phi = g - &Polynomial::var(n, self.field(), i);
            if phi.is_zero() {
                continue;
            }
            if check_shift(&self.weights, i, &phi).is_err() {
                return None;
            }
            shifts.insert(i, phi);
        }
        Some(shifts)
    }

    pub fn to_serialized(&self) -> Result<SerializedMap> {
        Ok(SerializedMap {
            weights: self.weights.to_vec(),
            images: self.images.iter().map(|g| g.to_serialized(&self.weights)).collect::<Result<_>>()?,
        })
    }

    pub fn from_serialized(map: &SerializedMap) -> Result<Self> {
        let weights = Weights::new_sorted(map.weights.clone())?;
        let n = weights.len();
        let images = map
            .images
            .iter()
            .map(|rows| Polynomial::from_serialized(n, Field::Rationals, rows))
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::new(weights, images)
    }
}

fn check_shift(weights: &[u64], coordinate: usize, phi: &Polynomial) -> Result<()> {
    let n = weights.len();
    let invalid = |reason: String| Error::InvalidShift { coordinate, reason };
    if coordinate >= n {
        return Err(invalid(format!("there are only {n} coordinates")));
    }
    if phi.nvars() != n {
        return Err(invalid(format!("shift has {} variables, expected {n}", phi.nvars())));
    }
    let a = weights[coordinate];
    if let Some(j) = (0..n).find(|&j| weights[j] >= a && phi.depends_on(j)) {
        return Err(invalid(format!(
            "shift depends on x{j} of weight {} >= {a}; only smaller weights are allowed",
            weights[j]
        )));
    }
    if !phi.is_weighted_homogeneous(weights, a)? {
        return Err(invalid(format!("shift must be weighted homogeneous of degree {a}")));
    }
    Ok(())
}

/// The element `x_i -> x_i + Φ_i` of the unipotent radical. Coordinates
/// missing from `shifts` are fixed.
pub fn make_unipotent_element(
    space: &WeightedProjectiveSpace,
    shifts: &BTreeMap<usize, Polynomial>,
    field: Field,
) -> Result<PolynomialMap> {
    space.ensure_well_formed()?;
    let weights = space.weights();
    let n = weights.len();
    let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, field, i)).collect();
    for (&i, phi) in shifts {
        check_shift(weights, i, phi)?;
        if phi.field() != field {
            return Err(Error::FieldMismatch { expected: field.to_string(), found: phi.field().to_string() });
        }
        images[i] = &images[i] + phi;
    }
    PolynomialMap::new(weights.clone(), images)
}

/// The `(i, p)`-th coordinate `x_{i,p}` (group `i`, position `p`, both from 0)
/// as a flat variable index.
pub fn coordinate_index(space: &WeightedProjectiveSpace, group: usize, position: usize) -> Option<usize> {
    let g = space.groups().get(group)?;
    (position < g.multiplicity).then_some(g.start + position)
}

/// Inverse of a unipotent element, computed group by group: the image of
/// `x_i` is `x_i - Φ_i` evaluated at the inverse images of the smaller-weight
/// coordinates.
pub fn unipotent_inverse(
    space: &WeightedProjectiveSpace,
    shifts: &BTreeMap<usize, Polynomial>,
    field: Field,
) -> Result<PolynomialMap> {
    // validates the shifts
    make_unipotent_element(space, shifts, field)?;
    let weights = space.weights();
    let n = weights.len();
    let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, field, i)).collect();
    for group in space.groups() {
        // every shift in this group only reads coordinates of earlier groups,
        // whose inverse images are final by now
        let lower = images.clone();
        for i in group.indices() {
            if let Some(phi) = shifts.get(&i) {
                images[i] = &images[i] - &phi.substitute(&lower)?;
            }
        }
    }
    PolynomialMap::new(weights.clone(), images)
}

/// `x_i -> t^{a_i} x_i`; acts trivially on `P`.
pub fn central_torus_element(space: &WeightedProjectiveSpace, t: &BigRational) -> Result<PolynomialMap> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let weights = space.weights();
    let n = weights.len();
    let images = weights
        .iter()
        .enumerate()
        .map(|(i, &a)| Polynomial::var(n, Field::Rationals, i).scale(&num_traits::pow(t.clone(), a as usize)))
        .collect();
    PolynomialMap::new(weights.clone(), images)
}

/// Block-diagonal element of the reductive part: one invertible `r_i x r_i`
/// matrix per weight group, acting on that group's coordinates by
/// `x_{i,p} -> sum_q B[p][q] x_{i,q}`.
pub fn reductive_element(space: &WeightedProjectiveSpace, blocks: &[Vec<Vec<BigRational>>]) -> Result<PolynomialMap> {
    let groups = space.groups();
    if blocks.len() != groups.len() {
        return Err(Error::LengthMismatch { expected: groups.len(), found: blocks.len() });
    }
    let weights = space.weights();
    let n = weights.len();
    let mut images = Vec::with_capacity(n);
    for (g, block) in groups.iter().zip(blocks) {
        let r = g.multiplicity;
        if block.len() != r || block.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidParameter(format!("block for weight {} must be {r}x{r}", g.weight)));
        }
        if rank_rational(block.clone()) != r {
            return Err(Error::InvalidParameter(format!("block for weight {} is singular", g.weight)));
        }
        for row in block {
            let mut image = Polynomial::zero(n, Field::Rationals);
            for (q, c) in row.iter().enumerate() {
                image = &image + &Polynomial::var(n, Field::Rationals, g.start + q).scale(c);
            }
            images.push(image);
        }
    }
    PolynomialMap::new(weights.clone(), images)
}

/// Identity blocks, e.g. as a starting point for [`reductive_element`].
pub fn identity_blocks(space: &WeightedProjectiveSpace) -> Vec<Vec<Vec<BigRational>>> {
    space
        .groups()
        .iter()
        .map(|g| {
            (0..g.multiplicity)
                .map(|p| {
                    (0..g.multiplicity)
                        .map(|q| if p == q { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect()
        })
        .collect()
}
