//! Bounded enumeration of weighted complete intersection descriptors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::qs::{search_singular_points, ExplicitWci, QsVerdict, SearchOptions};
use crate::random::{derive_seed, general_member, rng};
use crate::wci::{ClassificationReport, WciDescriptor, WellFormedness};
use crate::wps::WeightedProjectiveSpace;

/// Largest number of candidate tuples the enumerator accepts.
pub const MAX_TUPLES: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexFilter {
    Any,
    Positive,
    Zero,
    Negative,
    Exact(i64),
}

impl IndexFilter {
    pub fn accepts(&self, index: i64) -> bool {
        match *self {
            IndexFilter::Any => true,
            IndexFilter::Positive => index > 0,
            IndexFilter::Zero => index == 0,
            IndexFilter::Negative => index < 0,
            IndexFilter::Exact(v) => index == v,
        }
    }
}

impl std::str::FromStr for IndexFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(IndexFilter::Any),
            "pos" | "positive" | ">0" => Ok(IndexFilter::Positive),
            "zero" => Ok(IndexFilter::Zero),
            "neg" | "negative" | "<0" => Ok(IndexFilter::Negative),
            other => other
                .parse()
                .map(IndexFilter::Exact)
                .map_err(|_| Error::InvalidParameter(format!("unknown index filter {other:?}"))),
        }
    }
}

/// Ambient dimensions `min_n..=max_n`, weights `1..=max_weight`, degrees
/// `min_degree..=max_degree`, codimension `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub min_n: usize,
    pub max_n: usize,
    pub max_weight: u64,
    pub min_degree: u64,
    pub max_degree: u64,
    pub codim: usize,
    pub index: IndexFilter,
}

impl SearchBounds {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.min_n == 0 || self.max_n < self.min_n {
            return bad(format!("need 1 <= min_n <= max_n, got {}..={}", self.min_n, self.max_n));
        }
        if self.max_weight == 0 {
            return bad("max_weight must be positive".into());
        }
        if self.min_degree == 0 || self.max_degree < self.min_degree {
            return bad(format!("need 1 <= min_degree <= max_degree, got {}..={}", self.min_degree, self.max_degree));
        }
        if !(1..=2).contains(&self.codim) {
            return bad(format!("codimension must be 1 or 2, got {}", self.codim));
        }
        Ok(())
    }

    /// Number of (weights, degrees) pairs the enumerator visits.
    pub fn tuple_count(&self) -> u128 {
        let degrees = multisets(self.max_degree - self.min_degree + 1, self.codim as u64);
        (self.min_n.max(self.codim)..=self.max_n)
            .map(|n| multisets(self.max_weight, n as u64 + 1).saturating_mul(degrees))
            .fold(0u128, u128::saturating_add)
    }
}

/// Multisets of size `k` from `n` values: `binom(n + k - 1, k)`, saturating.
fn multisets(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = match acc.checked_mul(n as u128 + i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Nondecreasing tuples of length `len` with entries in `lo..=hi`, in
/// lexicographic order.
pub fn sorted_tuples(len: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, lo: u64, hi: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for v in start..=hi {
            cur.push(v);
            rec(len, lo, hi, cur, out);
            cur.pop();
        }
    }
    rec(len, lo, hi, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum QsProbe {
    Verdict(QsVerdict),
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub classification: ClassificationReport,
    pub wellformedness: WellFormedness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qs: Option<QsProbe>,
}

/// Seed of the general member probed for a descriptor; depends only on the
/// descriptor and the base seed.
pub fn member_seed(seed: u64, weights: &[u64], degrees: &[u64]) -> u64 {
    let s = weights.iter().fold(seed, |s, &a| derive_seed(s, 1, a));
    degrees.iter().fold(s, |s, &d| derive_seed(s, 2, d))
}

/// Checks a seeded general member of `d` for singular cone points.
pub fn probe_general_member(d: &WciDescriptor, options: &SearchOptions) -> QsProbe {
    let mut r = rng(member_seed(options.seed, d.weights(), d.degrees()));
    let equations = d.degrees().iter().map(|&deg| general_member(d.weights(), deg, &mut r)).collect();
    match ExplicitWci::new(d.weights().to_vec(), equations) {
        Ok(x) => match search_singular_points(&x, options) {
            Ok(v) => QsProbe::Verdict(v),
            Err(e) => QsProbe::Skipped { reason: e.to_string() },
        },
        Err(e) => QsProbe::Skipped { reason: e.to_string() },
    }
}

/// Descriptors within `bounds` whose ambient space is well formed, which are
/// not linear cones, whose general member is not known to fail
/// well-formedness, and whose index passes the filter. Sorted
/// lexicographically by `(weights, degrees)`.
///
/// With `probe`, each hit carries a verdict for a seeded general member; the
/// probe itself always runs sequentially.
pub fn search(bounds: &SearchBounds, probe: Option<&SearchOptions>, exec: Exec) -> Result<Vec<SearchHit>> {
    bounds.validate()?;
    let count = bounds.tuple_count();
    if count > MAX_TUPLES {
        return Err(Error::TooLarge { size: count, limit: MAX_TUPLES });
    }
    let probe = probe.map(|o| SearchOptions { exec: Exec::Sequential, ..o.clone() });
    let degree_tuples = sorted_tuples(bounds.codim, bounds.min_degree, bounds.max_degree);
    let weight_tuples: Vec<Vec<u64>> = (bounds.min_n.max(bounds.codim)..=bounds.max_n)
        .flat_map(|n| sorted_tuples(n + 1, 1, bounds.max_weight))
        .collect();
    let per_ambient = exec.map(&weight_tuples, |weights| -> Result<Vec<SearchHit>> {
        let space = WeightedProjectiveSpace::new(weights.clone())?;
        if !space.is_well_formed() {
            return Ok(Vec::new());
        }
        let mut hits = Vec::new();
        for degrees in &degree_tuples {
            let d = WciDescriptor::with_ambient(space.clone(), degrees.clone())?;
            if d.is_linear_cone() || !bounds.index.accepts(d.index()) {
                continue;
            }
            let wellformedness = d.generic_wellformedness(false)?;
            if matches!(wellformedness, WellFormedness::Fails { .. }) {
                continue;
            }
            let qs = probe.as_ref().map(|o| probe_general_member(&d, o));
            hits.push(SearchHit { classification: d.classify(), wellformedness, qs });
        }
        Ok(hits)
    });
    let mut hits = Vec::new();
    for h in per_ambient {
        hits.extend(h?);
    }
    hits.sort_by(|a, b| {
        (&a.classification.weights, &a.classification.degrees).cmp(&(&b.classification.weights, &b.classification.degrees))
    });
    Ok(hits)
}
