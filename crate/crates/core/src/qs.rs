//! Finite-field probes of quasi-smoothness.
//!
//! `X` is quasi-smooth iff its affine cone is smooth away from the origin, i.e.
//! the Jacobian of the defining equations has rank `k` at every nonzero cone
//! point. A singular cone point found over `F_p` proves that the reduction mod
//! `p` is not quasi-smooth; finding none is evidence, never a certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{rank_mod, rank_rational};
use crate::poly::{is_prime, mul_mod, pow_mod, Field, ModPoly, Polynomial};
use crate::random::{derive_seed, rng};
use crate::wci::WciDescriptor;

pub const DEFAULT_PRIMES: [u64; 3] = [5, 7, 11];
pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// Largest `p^{N+1}` accepted by [`cone_dimension_probe`].
pub const PROBE_LIMIT: u128 = 100_000_000;

/// A descriptor together with explicit rational defining equations, sorted by
/// degree to match the multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitWci {
    descriptor: WciDescriptor,
    equations: Vec<Polynomial>,
}

impl ExplicitWci {
    /// Equations may come in any order; each must be a nonzero rational
    /// polynomial, weighted homogeneous, and the multiset of their degrees
    /// must equal the multidegree. Variable `i` has weight `weights[i]`, so
    /// the descriptor's weights are taken in the given (sorted) order.
    pub fn new(weights: Vec<u64>, equations: Vec<Polynomial>) -> Result<Self> {
        let sorted = crate::poly::Weights::new_sorted(weights)?;
        let n = sorted.len();
        let mut with_degrees = Vec::with_capacity(equations.len());
        for (j, f) in equations.into_iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::LengthMismatch { expected: n, found: f.nvars() });
            }
            if f.field() != Field::Rationals {
                return Err(Error::FieldMismatch { expected: Field::Rationals.to_string(), found: f.field().to_string() });
            }
            if f.is_zero() {
                return Err(Error::EquationDegree { index: j, reason: "equation is identically zero".into() });
            }
            let d = f.weighted_homogeneous_degree(&sorted)?.ok_or_else(|| Error::EquationDegree {
                index: j,
                reason: "equation is not weighted homogeneous".into(),
            })?;
            with_degrees.push((d, f));
        }
        with_degrees.sort_by_key(|(d, _)| *d);
        let degrees = with_degrees.iter().map(|(d, _)| *d).collect();
        let descriptor = WciDescriptor::new(sorted.into_vec(), degrees)?;
        Ok(ExplicitWci { descriptor, equations: with_degrees.into_iter().map(|(_, f)| f).collect() })
    }

    /// Like [`ExplicitWci::new`], additionally checking the degrees against
    /// a declared multidegree.
    pub fn with_degrees(weights: Vec<u64>, degrees: Vec<u64>, equations: Vec<Polynomial>) -> Result<Self> {
        let x = Self::new(weights, equations)?;
        let mut declared = degrees;
        declared.sort_unstable();
        if declared != x.descriptor.degrees() {
            return Err(Error::EquationDegree {
                index: 0,
                reason: format!(
                    "equation degrees {:?} do not match the multidegree {:?}",
                    x.descriptor.degrees(),
                    declared
                ),
            });
        }
        Ok(x)
    }

    pub fn descriptor(&self) -> &WciDescriptor {
        &self.descriptor
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn nvars(&self) -> usize {
        self.descriptor.weights().len()
    }

    /// Entry `(j, i)` is `∂f_j/∂x_i`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.equations
            .iter()
            .map(|f| (0..self.nvars()).map(|i| f.partial_derivative(i).expect("index in range")).collect())
            .collect()
    }

    /// True iff `point` is a nonzero point of the cone at which the Jacobian
    /// drops rank. Over `F_p` the equations are reduced mod `p` first.
    pub fn is_singular_cone_point(&self, point: &[BigRational], field: Field) -> Result<bool> {
        let n = self.nvars();
        if point.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: point.len() });
        }
        match field {
            Field::Rationals => {
                if point.iter().all(Zero::is_zero) {
                    return Err(Error::ZeroPoint);
                }
                for f in &self.equations {
                    if !f.evaluate(point, field)?.is_zero() {
                        return Ok(false);
                    }
                }
                let rows = self
                    .jacobian()
                    .iter()
                    .map(|row| row.iter().map(|g| g.evaluate(point, field)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(rank_rational(rows) < self.equations.len())
            }
            Field::Prime(p) => {
                let residues = point
                    .iter()
                    .map(|x| field.residue(x).ok_or(Error::PrimeDividesDenominator { p }))
                    .collect::<Result<Vec<u64>>>()?;
                if residues.iter().all(|&r| r == 0) {
                    return Err(Error::ZeroPoint);
                }
                Ok(ReducedSystem::new(self, p)?.is_singular(&residues, false))
            }
        }
    }

    /// Lifts an `F_p` witness to the integer point with the same
    /// representatives in `[0, p)` and tests it over `Q`.
    pub fn confirm_over_rationals(&self, witness: &Witness) -> Result<bool> {
        let point: Vec<BigRational> =
            witness.point.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        self.is_singular_cone_point(&point, Field::Rationals)
    }
}

/// The equations and their Jacobian reduced mod `p`, ready for fast
/// evaluation.
#[derive(Clone, Debug)]
struct ReducedSystem {
    p: u64,
    degrees: Vec<u64>,
    equations: Vec<ModPoly>,
    jacobian: Vec<Vec<ModPoly>>,
}

impl ReducedSystem {
    fn new(x: &ExplicitWci, p: u64) -> Result<Self> {
        let equations = x.equations.iter().map(|f| ModPoly::new(f, p)).collect::<Result<Vec<_>>>()?;
        let jacobian = x
            .jacobian()
            .iter()
            .map(|row| row.iter().map(|g| ModPoly::new(g, p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ReducedSystem { p, degrees: x.descriptor.degrees().to_vec(), equations, jacobian })
    }

    fn on_cone(&self, point: &[u64]) -> bool {
        self.equations.iter().all(|f| f.eval(point) == 0)
    }

    fn jacobian_at(&self, point: &[u64]) -> Vec<Vec<u64>> {
        self.jacobian.iter().map(|row| row.iter().map(|g| g.eval(point)).collect()).collect()
    }

    /// `point` must be nonzero. With `euler_shortcut`, an equation whose
    /// partials all vanish is not evaluated when `p ∤ d_j`, since
    /// `d_j f_j = sum a_i x_i ∂f_j/∂x_i`.
    fn is_singular(&self, point: &[u64], euler_shortcut: bool) -> bool {
        if !euler_shortcut {
            return self.on_cone(point) && rank_mod(self.jacobian_at(point), self.p) < self.equations.len();
        }
        let rows = self.jacobian_at(point);
        for (j, row) in rows.iter().enumerate() {
            let forced_zero = row.iter().all(|&v| v == 0) && !self.degrees[j].is_multiple_of(self.p);
            if !forced_zero && self.equations[j].eval(point) != 0 {
                return false;
            }
        }
        rank_mod(rows, self.p) < self.equations.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<u64>,
    pub prime: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeScan {
    pub prime: u64,
    pub mode: ScanMode,
    /// Nonzero points examined.
    pub points_examined: u64,
    /// Among them, points of the cone (for an exhaustive scan that stops at
    /// a witness, counted up to the witness).
    pub cone_points: u64,
    pub singular_found: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QsStatus {
    SingularConePointFound,
    NoSingularPointFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsVerdict {
    pub status: QsStatus,
    pub witnesses: Vec<Witness>,
    pub scans: Vec<PrimeScan>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub primes: Vec<u64>,
    /// Largest number of points examined per prime; `p^{N+1} <= budget`
    /// selects the exhaustive scan.
    pub budget: u64,
    pub seed: u64,
    pub euler_shortcut: bool,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            primes: DEFAULT_PRIMES.to_vec(),
            budget: DEFAULT_BUDGET,
            seed: 0,
            euler_shortcut: false,
            exec: Exec::default(),
        }
    }
}

fn decode_point(mut index: u64, p: u64, n: usize) -> Vec<u64> {
    let mut point = vec![0; n];
    for slot in point.iter_mut().rev() {
        *slot = index % p;
        index /= p;
    }
    point
}

fn space_size(p: u64, n: usize) -> u128 {
    (p as u128).saturating_pow(n as u32)
}

fn validate_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) || p >= 1 << 61 {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

/// Looks for a nonzero cone point with rank-deficient Jacobian over each prime
/// in turn, stopping at the first witness.
///
/// When `p^{N+1} <= budget` all of `F_p^{N+1} \ {0}` is scanned and the
/// lexicographically smallest singular point is the witness. Otherwise
/// `budget` points are sampled; sample `i` is drawn from its own seed, and
/// when some variable occurs only linearly in a hypersurface equation it is
/// solved for so that every usable sample lies on the cone.
pub fn search_singular_points(x: &ExplicitWci, options: &SearchOptions) -> Result<QsVerdict> {
    if options.budget == 0 {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    let systems = options
        .primes
        .iter()
        .map(|&p| {
            validate_prime(p)?;
            ReducedSystem::new(x, p)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = x.nvars();
    let mut scans = Vec::new();
    for system in &systems {
        let p = system.p;
        let total = space_size(p, n);
        let (scan, witness) = if total <= options.budget as u128 {
            exhaustive_scan(system, n, total as u64, options)
        } else {
            sampled_scan(x, system, n, options)
        };
        scans.push(scan);
        if let Some(point) = witness {
            return Ok(QsVerdict {
                status: QsStatus::SingularConePointFound,
                witnesses: vec![Witness { point, prime: p }],
                scans,
            });
        }
    }
    Ok(QsVerdict { status: QsStatus::NoSingularPointFound, witnesses: Vec::new(), scans })
}

fn exhaustive_scan(system: &ReducedSystem, n: usize, total: u64, options: &SearchOptions) -> (PrimeScan, Option<Vec<u64>>) {
    let p = system.p;
    let found = options.exec.find_first(total - 1, |i| {
        let point = decode_point(i + 1, p, n);
        system.is_singular(&point, options.euler_shortcut).then_some(point)
    });
    let examined = found.as_ref().map_or(total - 1, |(i, _)| i + 1);
    let cone_points = options.exec.count(examined, |i| system.on_cone(&decode_point(i + 1, p, n)));
    let scan = PrimeScan {
        prime: p,
        mode: ScanMode::Exhaustive,
        points_examined: examined,
        cone_points,
        singular_found: found.is_some(),
    };
    (scan, found.map(|(_, point)| point))
}

/// Variable occurring in the single equation only to the first power, with
/// the coefficient split `f = x_j g + h`.
struct LinearSolve {
    var: usize,
    g: ModPoly,
    h: ModPoly,
}

fn linear_solver(x: &ExplicitWci, p: u64) -> Option<LinearSolve> {
    let [f] = x.equations() else { return None };
    let var = (0..x.nvars()).rev().find(|&j| f.degree_in(j) == 1)?;
    let parts = f.coefficients_in(var);
    let zero = Polynomial::zero(x.nvars(), Field::Rationals);
    let g = ModPoly::new(parts.get(&1).unwrap_or(&zero), p).ok()?;
    let h = ModPoly::new(parts.get(&0).unwrap_or(&zero), p).ok()?;
    Some(LinearSolve { var, g, h })
}

fn sampled_scan(x: &ExplicitWci, system: &ReducedSystem, n: usize, options: &SearchOptions) -> (PrimeScan, Option<Vec<u64>>) {
    let p = system.p;
    let solver = linear_solver(x, p);
    let sample = |i: u64| -> Option<Vec<u64>> {
        let mut r = rng(derive_seed(options.seed, p, i));
        let mut point: Vec<u64> = (0..n).map(|_| r.gen_range(0..p)).collect();
        if let Some(s) = &solver {
            point[s.var] = 0;
            let g = s.g.eval(&point);
            if g != 0 {
                let h = s.h.eval(&point);
                point[s.var] = mul_mod((p - h) % p, pow_mod(g, p - 2, p), p);
            }
        }
        point.iter().any(|&v| v != 0).then_some(point)
    };
    let found = options.exec.find_first(options.budget, |i| {
        let point = sample(i)?;
        system.is_singular(&point, options.euler_shortcut).then_some(point)
    });
    let examined = found.as_ref().map_or(options.budget, |(i, _)| i + 1);
    let cone_points = options.exec.count(examined, |i| sample(i).is_some_and(|pt| system.on_cone(&pt)));
    let scan = PrimeScan {
        prime: p,
        mode: ScanMode::Sampled,
        points_examined: examined,
        cone_points,
        singular_found: found.is_some(),
    };
    (scan, found.map(|(_, point)| point))
}

/// Point count of the affine cone over `F_p` and the codimension it suggests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeProbe {
    pub prime: u64,
    /// Zeros of all equations in `F_p^{N+1}`, origin included.
    pub count: u64,
    /// The `c` minimizing `|count - p^{N+1-c}|`, smallest on ties.
    pub estimated_codim: usize,
    pub expected_codim: usize,
    pub matches_expected: bool,
}

pub fn cone_dimension_probe(x: &ExplicitWci, p: u64, exec: Exec) -> Result<ConeProbe> {
    validate_prime(p)?;
    let n = x.nvars();
    let total = space_size(p, n);
    if total > PROBE_LIMIT {
        return Err(Error::TooLarge { size: total, limit: PROBE_LIMIT });
    }
    let system = ReducedSystem::new(x, p)?;
    let count = exec.count(total as u64, |i| system.on_cone(&decode_point(i, p, n)));
    let estimated_codim = (0..=n)
        .min_by_key(|&c| (count as i128 - space_size(p, n - c) as i128).unsigned_abs())
        .expect("nonempty range");
    let expected_codim = x.descriptor.codimension();
    Ok(ConeProbe { prime: p, count, estimated_codim, expected_codim, matches_expected: estimated_codim == expected_codim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::random::general_member;

    const Q: Field = Field::Rationals;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, Q, i)
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn pt(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&a| q(a)).collect()
    }

    /// x0^2 x1 + x2^2 + x3^2 in P(1,2,2,2)
    fn first_example() -> ExplicitWci {
        let f = &(&(&x(4, 0).pow(2) * &x(4, 1)) + &x(4, 2).pow(2)) + &x(4, 3).pow(2);
        ExplicitWci::new(vec![1, 2, 2, 2], vec![f]).unwrap()
    }

    /// x0^3 - x1^2 in P(2,3,5,5)
    fn second_example() -> ExplicitWci {
        let f = &x(4, 0).pow(3) - &x(4, 1).pow(2);
        ExplicitWci::new(vec![2, 3, 5, 5], vec![f]).unwrap()
    }

    fn fermat_quadric(n: usize) -> ExplicitWci {
        let f = (0..n).fold(Polynomial::zero(n, Q), |acc, i| &acc + &x(n, i).pow(2));
        ExplicitWci::new(vec![1; n], vec![f]).unwrap()
    }

    #[test]
    fn construction() {
        assert!(ExplicitWci::new(vec![1, 1, 1], vec![Polynomial::zero(3, Q)]).is_err());
        assert!(ExplicitWci::new(vec![1, 1, 1], vec![&x(3, 0) + &x(3, 1).pow(2)]).is_err());
        assert!(ExplicitWci::new(vec![2, 1, 1], vec![x(3, 0)]).is_err());
        let e = ExplicitWci::new(vec![1, 1, 1], vec![x(3, 0).pow(2), x(3, 0)]).unwrap();
        assert_eq!(e.descriptor().degrees(), &[1, 2]);
        assert_eq!(e.equations()[0], x(3, 0));
        assert!(ExplicitWci::with_degrees(vec![1, 1, 1], vec![3], vec![x(3, 0).pow(2)]).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let j = first_example().jacobian();
        let expected = vec![
            (&x(4, 0) * &x(4, 1)).scale(&q(2)),
            x(4, 0).pow(2),
            x(4, 2).scale(&q(2)),
            x(4, 3).scale(&q(2)),
        ];
        assert_eq!(j, vec![expected]);

        let j = second_example().jacobian();
        assert_eq!(
            j[0],
            vec![x(4, 0).pow(2).scale(&q(3)), x(4, 1).scale(&q(-2)), Polynomial::zero(4, Q), Polynomial::zero(4, Q)]
        );

        let lin = ExplicitWci::new(vec![1, 1, 1], vec![x(3, 0)]).unwrap();
        assert_eq!(lin.jacobian()[0], vec![Polynomial::one(3, Q), Polynomial::zero(3, Q), Polynomial::zero(3, Q)]);
    }

    #[test]
    fn singular_point_examples() {
        assert!(first_example().is_singular_cone_point(&pt(&[0, 1, 0, 0]), Q).unwrap());
        assert!(!first_example().is_singular_cone_point(&pt(&[1, 0, 1, 0]), Q).unwrap());
        assert!(second_example().is_singular_cone_point(&pt(&[0, 0, 1, 0]), Q).unwrap());
        assert!(matches!(first_example().is_singular_cone_point(&pt(&[0, 0, 0, 0]), Q), Err(Error::ZeroPoint)));
        assert!(matches!(
            first_example().is_singular_cone_point(&pt(&[0, 0, 0, 7]), Field::Prime(7)),
            Err(Error::ZeroPoint)
        ));

        // every nonzero cone point of the Fermat quadric over F_7 is smooth
        let fermat = fermat_quadric(4);
        let f7 = Field::Prime(7);
        let mut cone_points = 0;
        for i in 1..7u64.pow(4) {
            let point: Vec<BigRational> = decode_point(i, 7, 4).iter().map(|&v| q(v as i64)).collect();
            let on_cone = fermat.equations()[0].reduce_mod(7).unwrap().evaluate(&point, f7).unwrap().is_zero();
            if on_cone {
                cone_points += 1;
                assert!(!fermat.is_singular_cone_point(&point, f7).unwrap());
            }
        }
        assert!(cone_points > 0);
    }

    #[test]
    fn search_finds_known_witnesses() {
        let opts = SearchOptions { primes: vec![5], ..Default::default() };
        let v = search_singular_points(&first_example(), &opts).unwrap();
        assert_eq!(v.status, QsStatus::SingularConePointFound);
        assert_eq!(v.witnesses, vec![Witness { point: vec![0, 1, 0, 0], prime: 5 }]);
        assert_eq!(v.scans[0].mode, ScanMode::Exhaustive);
        assert!(first_example().confirm_over_rationals(&v.witnesses[0]).unwrap());

        let v = search_singular_points(&second_example(), &opts).unwrap();
        assert_eq!(v.witnesses, vec![Witness { point: vec![0, 0, 0, 1], prime: 5 }]);
        assert!(second_example().confirm_over_rationals(&v.witnesses[0]).unwrap());
    }

    #[test]
    fn search_finds_double_line() {
        // (x0 + x1)^2 + x2^2 is singular along x0 + x1 = x2 = 0
        let f = &(&x(3, 0) + &x(3, 1)).pow(2) + &x(3, 2).pow(2);
        let e = ExplicitWci::new(vec![1, 1, 1], vec![f]).unwrap();
        let v = search_singular_points(&e, &SearchOptions { primes: vec![5], ..Default::default() }).unwrap();
        assert_eq!(v.witnesses, vec![Witness { point: vec![1, 4, 0], prime: 5 }]);
    }

    /// Determinant mod p of the symmetric matrix of a quadratic form.
    fn quadric_is_smooth_mod(f: &Polynomial, p: u64) -> bool {
        let n = f.nvars();
        let half = BigRational::new(1.into(), 2.into());
        let mut m = vec![vec![0u64; n]; n];
        for (mono, c) in f.terms() {
            let e = mono.exponents();
            let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                m[i][i] = Field::Prime(p).residue(c).unwrap();
            } else {
                let v = Field::Prime(p).residue(&(c * &half)).unwrap();
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        rank_mod(m, p) == n
    }

    #[test]
    fn generic_quadrics_over_f5() {
        let mut smooth_seen = 0;
        for seed in 0..20 {
            let f = general_member(&[1, 1, 1, 1], 2, &mut rng(seed));
            let e = ExplicitWci::new(vec![1, 1, 1, 1], vec![f.clone()]).unwrap();
            let v = search_singular_points(&e, &SearchOptions { primes: vec![5], ..Default::default() }).unwrap();
            let smooth = quadric_is_smooth_mod(&f, 5);
            smooth_seen += smooth as u32;
            assert_eq!(v.status == QsStatus::NoSingularPointFound, smooth, "seed {seed}");
            assert_eq!(v.scans[0].points_examined, if smooth { 624 } else { v.scans[0].points_examined });
        }
        assert!(smooth_seen > 0);
    }

    #[test]
    fn errors() {
        let e = first_example();
        let bad = SearchOptions { primes: vec![2], ..Default::default() };
        assert!(matches!(search_singular_points(&e, &bad), Err(Error::InvalidPrime(2))));
        let bad = SearchOptions { primes: vec![9], ..Default::default() };
        assert!(search_singular_points(&e, &bad).is_err());
        let bad = SearchOptions { budget: 0, ..Default::default() };
        assert!(search_singular_points(&e, &bad).is_err());
        let half = Polynomial::from_terms(2, Q, [(Monomial::new(vec![1, 0]), BigRational::new(1.into(), 5.into()))])
            .unwrap();
        let e = ExplicitWci::new(vec![1, 1], vec![&half + &x(2, 1)]).unwrap();
        let opts = SearchOptions { primes: vec![5], ..Default::default() };
        assert!(matches!(search_singular_points(&e, &opts), Err(Error::PrimeDividesDenominator { p: 5 })));
    }

    #[test]
    fn sampling_is_reproducible_and_thread_independent() {
        let e = first_example();
        let base = SearchOptions { primes: vec![101], budget: 5_000, seed: 42, ..Default::default() };
        let seq = search_singular_points(&e, &SearchOptions { exec: Exec::Sequential, ..base.clone() }).unwrap();
        let par = search_singular_points(&e, &SearchOptions { exec: Exec::Threads(4), ..base.clone() }).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.scans[0].mode, ScanMode::Sampled);
        assert_eq!(seq, search_singular_points(&e, &base).unwrap());
        // the singular line x0 = x2 = x3 = 0 is too thin to be sampled, but
        // solving for x1 puts almost every sample on the cone
        assert_eq!(seq.status, QsStatus::NoSingularPointFound);
        assert_eq!(seq.scans[0].points_examined, 5_000);
        assert!(seq.scans[0].cone_points > 4_900);

        // x0^2 x3 is singular along the hyperplane x0 = 0
        let f = &x(4, 0).pow(2) * &x(4, 3);
        let e = ExplicitWci::new(vec![1, 1, 1, 1], vec![f]).unwrap();
        let seq = search_singular_points(&e, &SearchOptions { exec: Exec::Sequential, ..base.clone() }).unwrap();
        assert_eq!(seq, search_singular_points(&e, &base).unwrap());
        assert_eq!(seq.status, QsStatus::SingularConePointFound);
        let w = &seq.witnesses[0];
        assert_eq!(w.point[0], 0);
        assert!(e.is_singular_cone_point(&w.point.iter().map(|&v| q(v as i64)).collect::<Vec<_>>(), Field::Prime(101)).unwrap());
        assert!(e.confirm_over_rationals(w).unwrap());
    }

    #[test]
    fn cone_probe_examples() {
        let quadric = ExplicitWci::new(vec![1, 1, 1, 1], vec![general_member(&[1, 1, 1, 1], 2, &mut rng(3))]).unwrap();
        let probe = cone_dimension_probe(&quadric, 5, Exec::default()).unwrap();
        assert_eq!(probe.estimated_codim, 1);
        assert!(probe.matches_expected);

        let w = [1u64; 5];
        let two = ExplicitWci::new(
            w.to_vec(),
            vec![general_member(&w, 2, &mut rng(1)), general_member(&w, 2, &mut rng(2))],
        )
        .unwrap();
        let probe = cone_dimension_probe(&two, 3, Exec::default()).unwrap();
        assert_eq!(probe.estimated_codim, 2);

        let redundant = ExplicitWci::new(vec![1, 1, 1], vec![x(3, 0), x(3, 0).pow(2)]).unwrap();
        let probe = cone_dimension_probe(&redundant, 5, Exec::Sequential).unwrap();
        assert_eq!(probe.count, 25);
        assert_eq!(probe.estimated_codim, 1);
        assert_eq!(probe.expected_codim, 2);
        assert!(!probe.matches_expected);

        let big = ExplicitWci::new(vec![1; 9], vec![x(9, 0)]).unwrap();
        assert!(matches!(cone_dimension_probe(&big, 11, Exec::default()), Err(Error::TooLarge { .. })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// sum c_i x_i^{m_i} with m_i a_i = d.
        fn diagonal(exponents: &[u32], coeffs: &[i64]) -> (Vec<u64>, Polynomial) {
            let d: u64 = exponents.iter().map(|&m| m as u64).product();
            let weights: Vec<u64> = exponents.iter().map(|&m| d / m as u64).collect();
            let n = exponents.len();
            let f = Polynomial::from_terms(
                n,
                Q,
                exponents.iter().zip(coeffs).enumerate().map(|(i, (&m, &c))| {
                    let mut e = vec![0; n];
                    e[i] = m;
                    (Monomial::new(e), q(c))
                }),
            )
            .unwrap();
            (weights, f)
        }

        proptest! {
            #[test]
            fn diagonal_hypersurfaces_have_no_singular_cone_points(
                exps in prop::collection::vec(1u32..4, 2..5),
                coeffs in prop::collection::vec(1i64..20, 4),
                p in prop::sample::select(vec![3u64, 5, 7]),
            ) {
                let n = exps.len();
                prop_assume!(exps.iter().zip(&coeffs).all(|(&m, &c)| !(m as u64 * c as u64).is_multiple_of(p)));
                let (weights, f) = diagonal(&exps, &coeffs[..n]);
                // order variables by weight
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&i| weights[i]);
                let images: Vec<Polynomial> = {
                    let mut inv = vec![0; n];
                    for (new, &old) in order.iter().enumerate() { inv[old] = new; }
                    (0..n).map(|old| x(n, inv[old])).collect()
                };
                let f = f.substitute(&images).unwrap();
                let sorted: Vec<u64> = order.iter().map(|&i| weights[i]).collect();
                let e = ExplicitWci::new(sorted, vec![f]).unwrap();
                let v = search_singular_points(&e, &SearchOptions { primes: vec![p], ..Default::default() }).unwrap();
                prop_assert_eq!(v.status, QsStatus::NoSingularPointFound);
                prop_assert_eq!(v.scans[0].mode, ScanMode::Exhaustive);
            }

            #[test]
            fn euler_shortcut_gives_identical_verdicts(
                seed in 0u64..200,
                weights in prop::sample::select(vec![vec![1u64, 1, 1], vec![1, 1, 2], vec![1, 1, 1, 1], vec![1, 2, 2, 3]]),
                d in 2u64..6,
                p in prop::sample::select(vec![3u64, 5, 7]),
            ) {
                let mut r = rng(seed);
                let f = general_member(&weights, d, &mut r);
                prop_assume!(!f.is_zero());
                // degenerate on purpose: keep a random subset of terms
                let keep: Vec<_> = f.terms().filter(|_| rand::Rng::gen_bool(&mut r, 0.5)).map(|(m, c)| (m.clone(), c.clone())).collect();
                prop_assume!(!keep.is_empty());
                let f = Polynomial::from_terms(weights.len(), Q, keep).unwrap();
                let e = ExplicitWci::new(weights.clone(), vec![f]).unwrap();
                let plain = SearchOptions { primes: vec![p], ..Default::default() };
                let shortcut = SearchOptions { euler_shortcut: true, ..plain.clone() };
                let a = search_singular_points(&e, &plain).unwrap();
                let b = search_singular_points(&e, &shortcut).unwrap();
                prop_assert_eq!(&a, &b);
                for w in &a.witnesses {
                    prop_assert!(e.confirm_over_rationals(w).is_ok());
                    let point: Vec<BigRational> = w.point.iter().map(|&v| q(v as i64)).collect();
                    prop_assert!(e.is_singular_cone_point(&point, Field::Prime(w.prime)).unwrap());
                }
            }
        }
    }
}
