//! Weighted complete intersections described by weights and multidegree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::count_monomials;
use crate::series;
use crate::wps::{SingularStratum, WeightedProjectiveSpace};

/// `X = {f_1 = ... = f_k = 0}` in `P(a_0, ..., a_N)` with `deg f_j = d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WciDescriptor {
    ambient: WeightedProjectiveSpace,
    degrees: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Fano,
    CalabiYau,
    GeneralType,
}

/// Three-valued answer for statements the available criteria only decide in
/// one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    True,
    Unknown,
}

/// What is known about `Cl(X)` for quasi-smooth well-formed `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassGroupNote {
    /// `dim X >= 3`: `Cl(X) = Z`, generated by `O_X(1)`.
    CyclicByOx1,
    /// `dim X = 2`: torsion free.
    TorsionFree,
}

impl ClassGroupNote {
    pub fn code(&self) -> &'static str {
        match self {
            ClassGroupNote::CyclicByOx1 => "Cl≅Z by O_X(1)",
            ClassGroupNote::TorsionFree => "Cl torsion-free",
        }
    }
}

impl Serialize for ClassGroupNote {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for ClassGroupNote {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "Cl≅Z by O_X(1)" => Ok(ClassGroupNote::CyclicByOx1),
            "Cl torsion-free" => Ok(ClassGroupNote::TorsionFree),
            other => Err(serde::de::Error::custom(format!("unknown class group note {other:?}"))),
        }
    }
}

/// Consequences of the index for a quasi-smooth well-formed member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub dimension: usize,
    pub index: i64,
    pub kind: Kind,
    /// `omega_X = O_X(canonical_sheaf_exponent)`.
    pub canonical_sheaf_exponent: i64,
    pub rationally_connected: bool,
    pub not_uniruled: Flag,
    pub class_group_note: Option<ClassGroupNote>,
    /// Calabi-Yau hypersurface: the stabilizer of `X` in `Aut(P)` has finite
    /// image in `Aut(X)`.
    pub cy_stabilizer_note: bool,
    pub linear_cone: bool,
}

/// Outcome of the expected-dimension test of `codim_X(X ∩ Sing P) >= 2` for a
/// general member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WellFormedness {
    WellFormed,
    Fails { stratum: StratumEstimate },
    Indeterminate { stratum: StratumEstimate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumEstimate {
    pub stratum: SingularStratum,
    /// Equations that do not vanish identically on the stratum.
    pub cutting_equations: usize,
    /// Expected `dim(X ∩ stratum)`, `-1` for empty.
    pub intersection_dim: i64,
    /// `dim X - intersection_dim` when the intersection is nonempty.
    pub codim: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub coefficients: Vec<i64>,
    /// Set for intersections with a linear cone, where the defining
    /// equations of a general member need not form a regular sequence in the
    /// stated degrees.
    pub regular_sequence_caveat: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionRow {
    pub degree: u64,
    pub ambient_dim: u64,
    pub restricted_dim: i64,
    pub kernel_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub rows: Vec<RestrictionRow>,
    pub regular_sequence_caveat: bool,
}

impl WciDescriptor {
    /// Weights in any order; degrees are sorted. Requires `1 <= k <= N`.
    pub fn new(weights: Vec<u64>, degrees: Vec<u64>) -> Result<Self> {
        Self::with_ambient(WeightedProjectiveSpace::new(weights)?, degrees)
    }

    pub fn with_ambient(ambient: WeightedProjectiveSpace, mut degrees: Vec<u64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidDegrees("at least one degree is required".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidDegrees("degrees must be positive".into()));
        }
        if degrees.len() > ambient.dimension() {
            return Err(Error::InvalidDegrees(format!(
                "codimension {} exceeds the ambient dimension {}",
                degrees.len(),
                ambient.dimension()
            )));
        }
        degrees.sort_unstable();
        Ok(WciDescriptor { ambient, degrees })
    }

    pub fn ambient(&self) -> &WeightedProjectiveSpace {
        &self.ambient
    }

    pub fn weights(&self) -> &[u64] {
        self.ambient.weights()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn codimension(&self) -> usize {
        self.degrees.len()
    }

    pub fn dimension(&self) -> usize {
        self.ambient.dimension() - self.degrees.len()
    }

    /// `i_X = sum a_j - sum d_i`.
    pub fn index(&self) -> i64 {
        let a: i64 = self.weights().iter().map(|&a| a as i64).sum();
        let d: i64 = self.degrees.iter().map(|&d| d as i64).sum();
        a - d
    }

    /// Some degree equals some weight.
    pub fn is_linear_cone(&self) -> bool {
        self.degrees.iter().any(|d| self.weights().binary_search(d).is_ok())
    }

    pub fn classify(&self) -> ClassificationReport {
        let index = self.index();
        let kind = match index.signum() {
            1 => Kind::Fano,
            0 => Kind::CalabiYau,
            _ => Kind::GeneralType,
        };
        let divisible_by_all = self.weights().iter().all(|&a| index % a as i64 == 0);
        let not_uniruled = if index == 0 || (index < 0 && divisible_by_all) { Flag::True } else { Flag::Unknown };
        let class_group_note = match self.dimension() {
            d if d >= 3 => Some(ClassGroupNote::CyclicByOx1),
            2 => Some(ClassGroupNote::TorsionFree),
            _ => None,
        };
        ClassificationReport {
            weights: self.weights().to_vec(),
            degrees: self.degrees.clone(),
            dimension: self.dimension(),
            index,
            kind,
            canonical_sheaf_exponent: -index,
            rationally_connected: index > 0,
            not_uniruled,
            class_group_note,
            cy_stabilizer_note: index == 0 && self.codimension() == 1,
            linear_cone: self.is_linear_cone(),
        }
    }

    /// Expected-dimension test for a general member.
    ///
    /// On each coordinate stratum `S` with a nontrivial stabilizer, a general
    /// equation of degree `d_j` restricts to a general element of degree `d_j`
    /// in the variables of `S`; it cuts the stratum iff such monomials exist.
    /// The estimate `dim(X ∩ Π_S) = max(-1, |S| - 1 - c_S)` must leave
    /// codimension at least 2 in `X`. With `strict`, a stratum sitting exactly
    /// at codimension 2 makes the answer indeterminate.
    pub fn generic_wellformedness(&self, strict: bool) -> Result<WellFormedness> {
        let strata = self.ambient.saturated_strata()?;
        let dim_x = self.dimension() as i64;
        let mut boundary = None;
        for stratum in strata {
            let weights: Vec<u64> = stratum.indices.iter().map(|&i| self.weights()[i]).collect();
            let cutting = self.degrees.iter().filter(|&&d| count_monomials(&weights, d) > 0).count();
            let intersection_dim = (stratum.dim as i64 - cutting as i64).max(-1);
            let codim = (intersection_dim >= 0).then(|| dim_x - intersection_dim);
            let estimate = StratumEstimate { stratum, cutting_equations: cutting, intersection_dim, codim };
            match codim {
                Some(c) if c < 2 => return Ok(WellFormedness::Fails { stratum: estimate }),
                Some(2) if strict && boundary.is_none() => boundary = Some(estimate),
                _ => {}
            }
        }
        Ok(match boundary {
            Some(stratum) => WellFormedness::Indeterminate { stratum },
            None => WellFormedness::WellFormed,
        })
    }

    /// Coefficients `0..=up_to` of `prod (1 - t^{d_j}) / prod (1 - t^{a_i})`.
    pub fn hilbert_series(&self, up_to: u64) -> HilbertSeries {
        let numerator = series::product_of_one_minus(&self.degrees);
        let denominator = series::product_of_one_minus(self.weights());
        let coefficients = series::divide(&numerator, &denominator, up_to as usize)
            .into_iter()
            .map(|c| i64::try_from(c).expect("coefficient fits in i64"))
            .collect();
        HilbertSeries { coefficients, regular_sequence_caveat: self.is_linear_cone() }
    }

    /// Per degree: `dim R(P)_m`, `dim R(X)_m` and the kernel of the
    /// (surjective) restriction map between them.
    pub fn restriction_report(&self, up_to: u64) -> RestrictionReport {
        let series = self.hilbert_series(up_to);
        let rows = series
            .coefficients
            .iter()
            .enumerate()
            .map(|(m, &restricted_dim)| {
                let ambient_dim = self.ambient.graded_dim(m as u64);
                RestrictionRow {
                    degree: m as u64,
                    ambient_dim,
                    restricted_dim,
                    kernel_dim: ambient_dim as i64 - restricted_dim,
                }
            })
            .collect();
        RestrictionReport { rows, regular_sequence_caveat: series.regular_sequence_caveat }
    }
}

impl fmt::Display for WciDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_(")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ") ⊂ {}", self.ambient)
    }
}
