//! Strong regularity and strong ℓ-walk-regularity of Cayley graphs of
//! plateaued functions.
//!
//! Every certificate is backed by independent checks: closed-form parameters,
//! exact matrix identities on the adjacency matrix, eigenvalue root equations,
//! and walk counts read off `A^ℓ`.
//!
//! Parameter conventions: a strongly regular graph `(v, r, e, d)` has `e`
//! common neighbours for adjacent pairs and `d` for non-adjacent ones. A
//! strongly ℓ-walk-regular graph `(σ, μ, ν)` has `σ` walks of length ℓ between
//! adjacent vertices, `μ` between non-adjacent ones and `ν` from a vertex to
//! itself, equivalently `A^ℓ + (μ − σ)A + (μ − ν)I = μJ`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::boolfun::{mobius_in_place, BooleanFunction};
use crate::cayley::{CayleyError, CayleyGraph, SpectrumCertificate};
use crate::classify::{
    classify_plateaued, graph_eigenvalue_report, predicted_multiplicities, semibent_odd_table, special_weight_value,
    ClassifyError, MultiplicityQuery, PlateauReport, WhtMultiplicities,
};
use crate::config::{AnalysisConfig, ConfigError, MAX_DENSE_LIMIT, MAX_WALK_LENGTH};
use crate::matrix::{ExactMatrix, MatrixEntry, MatrixError};
use crate::transform::{fourier, fourier_relation_holds, parseval_check, walsh_hadamard, TransformError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("graph is not connected")]
    NotConnected,
    #[error("expected exactly three distinct eigenvalues with r simple, got {0:?}")]
    NotThreeEigenvalues(Vec<i64>),
    #[error("parameters are not nonnegative integers: {0}")]
    NonIntegerParameters(String),
    #[error("{identity} fails at ({row}, {col}): {lhs} != {rhs}")]
    IdentityFailure {
        identity: String,
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("invariant violated (implementation bug): {0}")]
    InvariantViolation(String),
    #[error("wt = {0} is the complete-bipartite weight 2^((n+s-2)/2)")]
    SpecialWeight(u64),
    #[error("n + s = {0} is odd")]
    ParityError(u32),
    #[error("2^(n+s-2) - r^2 vanishes")]
    DenominatorZero,
    #[error("closed form and recurrence disagree at t = {t}: {closed} vs {recurrence}")]
    RecurrenceMismatch { t: u32, closed: String, recurrence: String },
    #[error("eigenvalue {eigenvalue} is not a root: residual {residual}")]
    RootFailure { eigenvalue: i64, residual: String },
    #[error("degree equation fails: {lhs} != {rhs}")]
    DegreeEquationFailure { lhs: String, rhs: String },
    #[error("walk length {0} outside 1..={MAX_WALK_LENGTH}")]
    WalkLength(u32),
    #[error("spectral invariant violated: {0}")]
    SpectrumInvariant(String),
}

impl RegularityError {
    /// Errors caused by the input or configuration rather than a failed certificate.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            RegularityError::Cayley(
                CayleyError::LoopedGraph | CayleyError::TooLarge { .. } | CayleyError::TooLargeForDense { .. }
            ) | RegularityError::Config(_)
                | RegularityError::NotConnected
                | RegularityError::PreconditionViolation(_)
                | RegularityError::SpecialWeight(_)
                | RegularityError::ParityError(_)
                | RegularityError::WalkLength(_)
                | RegularityError::NotThreeEigenvalues(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SrgEvidence {
    MatrixIdentity,
    CountingIdentity,
    NeighborCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgCertificate {
    pub v: u64,
    pub r: u64,
    pub e: u64,
    pub d: u64,
    /// `(r, λ1, λ2)` with `λ1 > λ2`.
    pub eigenvalues: (i64, i64, i64),
    pub verified_by: BTreeSet<SrgEvidence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkRegEvidence {
    MatrixIdentity,
    SpectralRoots,
    WalkCountOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkRegParams {
    pub sigma: i128,
    pub mu: i128,
    pub nu: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkRegCertificate {
    pub ell: u32,
    pub sigma: i128,
    pub mu: i128,
    pub nu: i128,
    pub verified_by: BTreeSet<WalkRegEvidence>,
}

impl WalkRegCertificate {
    pub fn params(&self) -> WalkRegParams {
        WalkRegParams {
            sigma: self.sigma,
            mu: self.mu,
            nu: self.nu,
        }
    }
}

fn pow2(exp: i64) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    if exp >= 0 {
        num_traits::pow(two, exp as usize)
    } else {
        num_traits::pow(two, (-exp) as usize).recip()
    }
}

fn to_param(value: &BigRational, what: &str) -> Result<i128, RegularityError> {
    if !value.is_integer() || value.is_negative() {
        return Err(RegularityError::NonIntegerParameters(format!("{what} = {value}")));
    }
    value
        .to_integer()
        .to_i128()
        .ok_or(RegularityError::Matrix(MatrixError::Overflow))
}

fn check_plateau_args(n: u32, s: u32, r: u64) -> Result<(), RegularityError> {
    if s > n {
        return Err(RegularityError::PreconditionViolation(format!(
            "s = {s} exceeds n = {n}"
        )));
    }
    if (n + s) % 2 == 1 {
        return Err(RegularityError::ParityError(n + s));
    }
    if special_weight_value(n, s) == Some(r) {
        return Err(RegularityError::SpecialWeight(r));
    }
    Ok(())
}

/// `μ = 2^{−n} r³ − 2^{s−2} r` as an exact rational.
fn mu_rational(n: u32, s: u32, r: u64) -> BigRational {
    let r = BigRational::from_integer(BigInt::from(r));
    pow2(-(n as i64)) * &r * &r * &r - pow2(s as i64 - 2) * r
}

/// Strongly 3-walk-regular parameters of `G_f` for an s-plateaued `f` of weight `r`:
/// `σ = 2^{−n}r³ + 2^{n+s−2} − 2^{s−2}r`, `μ = ν = 2^{−n}r³ − 2^{s−2}r`.
/// Computed over the rationals and required to be nonnegative integers.
pub fn three_walk_parameters(n: u32, s: u32, r: u64) -> Result<WalkRegParams, RegularityError> {
    check_plateau_args(n, s, r)?;
    let mu = mu_rational(n, s, r);
    let sigma = &mu + pow2(n as i64 + s as i64 - 2);
    Ok(WalkRegParams {
        sigma: to_param(&sigma, "sigma")?,
        mu: to_param(&mu, "mu")?,
        nu: to_param(&mu, "nu")?,
    })
}

/// Parameters for `ℓ = 2t + 1`: `A^{2t+1} = x_t A + y_t J` with
/// `x_t = 2^{(n+s−2)t}` and `y_t = μ (x_1^t − r^{2t}) / (x_1 − r²)`.
/// `y_t` is also produced by `x_{t+1} = x_t x_1`, `y_{t+1} = x_t y_1 + y_t r²`
/// from `x_1 = 2^{n+s−2}`, `y_1 = μ`, and the two must agree.
pub fn odd_walk_parameters(n: u32, s: u32, r: u64, t: u32) -> Result<WalkRegCertificate, RegularityError> {
    if t == 0 {
        return Err(RegularityError::PreconditionViolation("t must be at least 1".into()));
    }
    check_plateau_args(n, s, r)?;
    let mu = mu_rational(n, s, r);
    if !mu.is_integer() {
        return Err(RegularityError::NonIntegerParameters(format!("mu = {mu}")));
    }
    let mu = mu.to_integer();
    let x1 = BigInt::one() << (n + s - 2) as usize;
    let r2 = BigInt::from(r) * BigInt::from(r);
    let denom = &x1 - &r2;
    if denom.is_zero() {
        return Err(RegularityError::DenominatorZero);
    }
    let xt = num_traits::pow(x1.clone(), t as usize);
    let closed = BigRational::new(&mu * (&xt - num_traits::pow(r2.clone(), t as usize)), denom);

    let (mut x, mut y) = (x1.clone(), mu.clone());
    for _ in 1..t {
        let next_y = &x * &mu + &y * &r2;
        x = &x * &x1;
        y = next_y;
    }
    if closed != BigRational::from_integer(y.clone()) || x != xt {
        return Err(RegularityError::RecurrenceMismatch {
            t,
            closed: closed.to_string(),
            recurrence: y.to_string(),
        });
    }
    let yt = to_param(&closed, "mu_l")?;
    let sigma = to_param(&BigRational::from_integer(&y + &x), "sigma_l")?;
    Ok(WalkRegCertificate {
        ell: 2 * t + 1,
        sigma,
        mu: yt,
        nu: yt,
        verified_by: BTreeSet::new(),
    })
}

/// Integer roots `{−√(σ−μ), 0, √(σ−μ)}` of `x³ + (μ − σ)x + (μ − ν)`, available
/// when `μ = ν` and `σ − μ` is a perfect square.
pub fn recover_cubic_roots(params: WalkRegParams) -> Option<[i64; 3]> {
    if params.mu != params.nu || params.sigma < params.mu {
        return None;
    }
    let c = params.sigma - params.mu;
    let root = (c as f64).sqrt().round() as i128;
    let root = (root.saturating_sub(2)..=root + 2).find(|q| *q >= 0 && q * q == c)?;
    let root = i64::try_from(root).ok()?;
    Some([-root, 0, root])
}

fn walk_polynomial(x: &BigInt, ell: u32, params: WalkRegParams) -> BigInt {
    num_traits::pow(x.clone(), ell as usize)
        + BigInt::from(params.mu - params.sigma) * x
        + BigInt::from(params.mu - params.nu)
}

/// Every eigenvalue other than `r` must be a root of `x^ℓ + (μ − σ)x + μ − ν`,
/// and `r^ℓ + (μ − σ)r + μ − ν = μv`.
pub fn spectral_walkreg_check(
    spectrum: &BTreeMap<i64, u64>,
    v: u64,
    r: u64,
    ell: u32,
    params: WalkRegParams,
) -> Result<(), RegularityError> {
    for &lambda in spectrum.keys() {
        if lambda == r as i64 {
            continue;
        }
        let residual = walk_polynomial(&BigInt::from(lambda), ell, params);
        if !residual.is_zero() {
            return Err(RegularityError::RootFailure {
                eigenvalue: lambda,
                residual: residual.to_string(),
            });
        }
    }
    let lhs = walk_polynomial(&BigInt::from(r), ell, params);
    let rhs = BigInt::from(params.mu) * BigInt::from(v);
    if lhs != rhs {
        return Err(RegularityError::DegreeEquationFailure {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(())
}

/// Checks `A^ℓ + (μ − σ)A + (μ − ν)I = μJ` given `A` and `A^ℓ`.
pub fn check_walk_identity<T: MatrixEntry>(
    a: &ExactMatrix<T>,
    a_pow: &ExactMatrix<T>,
    ell: u32,
    params: WalkRegParams,
) -> Result<(), RegularityError> {
    let dim = a.dimension();
    let lin = T::from(params.mu - params.sigma);
    let diag = T::from(params.mu - params.nu);
    let mu = T::from(params.mu);
    let one = T::one();
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = ExactMatrix::combination_entry(&[(&one, a_pow), (&lin, a)], i, j)?;
            if i == j {
                lhs = lhs.checked_add(&diag).ok_or(MatrixError::Overflow)?;
            }
            if lhs != mu {
                return Err(RegularityError::IdentityFailure {
                    identity: format!("A^{ell} + (mu - sigma)A + (mu - nu)I = mu J"),
                    row: i,
                    col: j,
                    lhs: lhs.to_string(),
                    rhs: mu.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Computes `A^ℓ` exactly and checks the strong ℓ-walk-regularity identity.
pub fn verify_strong_walk_regular<T: MatrixEntry>(
    a: &ExactMatrix<T>,
    ell: u32,
    params: WalkRegParams,
) -> Result<(), RegularityError> {
    if ell == 0 {
        return Err(RegularityError::WalkLength(ell));
    }
    let a_pow = a.pow(ell)?;
    check_walk_identity(a, &a_pow, ell, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Adjacent,
    NonAdjacent,
    Identical,
}

/// Walk counts per pair class; a class with no pairs is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkCounts<T> {
    Constant {
        adjacent: Option<T>,
        nonadjacent: Option<T>,
        identical: T,
    },
    NotConstant {
        class: PairClass,
        first: (usize, usize),
        second: (usize, usize),
    },
}

/// Reads `A^ℓ` and checks that the walk count depends only on the pair class.
pub fn brute_force_walk_counts<T: MatrixEntry>(a: &ExactMatrix<T>, ell: u32) -> Result<WalkCounts<T>, RegularityError> {
    if ell == 0 || ell > MAX_WALK_LENGTH {
        return Err(RegularityError::WalkLength(ell));
    }
    let a_pow = a.pow(ell)?;
    Ok(walk_counts_from_power(a, &a_pow))
}

pub fn walk_counts_from_power<T: MatrixEntry>(a: &ExactMatrix<T>, a_pow: &ExactMatrix<T>) -> WalkCounts<T> {
    let dim = a.dimension();
    let mut seen: [Option<(T, (usize, usize))>; 3] = [None, None, None];
    for i in 0..dim {
        for j in 0..dim {
            let class = if i == j {
                PairClass::Identical
            } else if a.get(i, j).is_one() {
                PairClass::Adjacent
            } else {
                PairClass::NonAdjacent
            };
            let slot = &mut seen[class as usize];
            let value = a_pow.get(i, j);
            match slot {
                None => *slot = Some((value.clone(), (i, j))),
                Some((first, at)) if first != value => {
                    return WalkCounts::NotConstant {
                        class,
                        first: *at,
                        second: (i, j),
                    }
                }
                _ => {}
            }
        }
    }
    let [adjacent, nonadjacent, identical] = seen.map(|s| s.map(|(v, _)| v));
    WalkCounts::Constant {
        adjacent,
        nonadjacent,
        identical: identical.unwrap_or_else(T::zero),
    }
}

/// Certifies strong regularity from a three-valued spectrum. `(e, d)` come from
/// `e = r + λ1λ2 + λ1 + λ2`, `d = r + λ1λ2`, then are checked against
/// `A² = (e − d)A + (r − d)I + dJ` (dense graphs only), `r(r − e − 1) = d(v − r − 1)`
/// and direct common-neighbour counts (every pair for n ≤ 4, otherwise every
/// pair `(0, y)`, which covers all pairs up to translation).
pub fn check_strongly_regular(
    g: &CayleyGraph,
    spectrum: &BTreeMap<i64, u64>,
    config: &AnalysisConfig,
) -> Result<SrgCertificate, RegularityError> {
    if !g.is_connected() {
        return Err(RegularityError::NotConnected);
    }
    let r = g.degree() as i64;
    let distinct: Vec<i64> = spectrum.keys().copied().collect();
    if distinct.len() != 3 || spectrum.get(&r) != Some(&1) {
        return Err(RegularityError::NotThreeEigenvalues(distinct));
    }
    let mut others: Vec<i64> = distinct.into_iter().filter(|&x| x != r).collect();
    others.sort_unstable_by(|a, b| b.cmp(a));
    let (l1, l2) = (others[0], others[1]);
    let e = r + l1 * l2 + l1 + l2;
    let d = r + l1 * l2;
    if e < 0 || d < 0 {
        return Err(RegularityError::NonIntegerParameters(format!("e = {e}, d = {d}")));
    }
    let v = g.order() as i64;
    let mut verified_by = BTreeSet::new();

    if r * (r - e - 1) != d * (v - r - 1) {
        return Err(RegularityError::IdentityFailure {
            identity: "r(r - e - 1) = d(v - r - 1)".into(),
            row: 0,
            col: 0,
            lhs: (r * (r - e - 1)).to_string(),
            rhs: (d * (v - r - 1)).to_string(),
        });
    }
    verified_by.insert(SrgEvidence::CountingIdentity);

    if g.n() <= config.dense_limit {
        let a = g.adjacency_matrix(config.dense_limit)?;
        let a2 = a.mul(&a)?;
        let dim = a.dimension();
        for i in 0..dim {
            for j in 0..dim {
                let expected = (e - d) as i128 * a.get(i, j) + if i == j { (r - d) as i128 } else { 0 } + d as i128;
                if *a2.get(i, j) != expected {
                    return Err(RegularityError::IdentityFailure {
                        identity: "A^2 = (e - d)A + (r - d)I + dJ".into(),
                        row: i,
                        col: j,
                        lhs: a2.get(i, j).to_string(),
                        rhs: expected.to_string(),
                    });
                }
            }
        }
        verified_by.insert(SrgEvidence::MatrixIdentity);
    }

    let common = |i: usize, j: usize| {
        g.support()
            .iter()
            .filter(|&&s| g.in_support(i ^ j ^ s as usize))
            .count() as i64
    };
    let pairs: Box<dyn Iterator<Item = (usize, usize)>> = if g.n() <= 4 {
        Box::new((0..g.order()).flat_map(|i| (i + 1..g.order()).map(move |j| (i, j))))
    } else {
        Box::new((1..g.order()).map(|j| (0, j)))
    };
    for (i, j) in pairs {
        let expected = if g.is_adjacent(i, j) { e } else { d };
        let found = common(i, j);
        if found != expected {
            return Err(RegularityError::IdentityFailure {
                identity: "common neighbour count".into(),
                row: i,
                col: j,
                lhs: found.to_string(),
                rhs: expected.to_string(),
            });
        }
    }
    verified_by.insert(SrgEvidence::NeighborCount);

    Ok(SrgCertificate {
        v: v as u64,
        r: r as u64,
        e: e as u64,
        d: d as u64,
        eigenvalues: (r, l1, l2),
        verified_by,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBipartition {
    /// Smallest vertex of the component.
    pub representative: u32,
    pub size: u64,
    /// Size of the colour class containing the representative.
    pub near_side: u64,
    pub far_side: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteVerdict {
    pub connected: bool,
    pub components: Vec<ComponentBipartition>,
    /// The colour class of the component of 0 not containing 0 is exactly `Ω_f`.
    pub support_is_far_side: bool,
    pub srg: Option<SrgCertificate>,
}

/// Largest `n` for which complete-bipartiteness is checked pair by pair.
const PAIRWISE_BIPARTITE_LIMIT: u32 = MAX_DENSE_LIMIT;

/// For plateaued `f` with `wt(f) = 2^((n+s−2)/2)`: every component of `G_f` is
/// complete bipartite, the side away from 0 is `Ω_f`, and a connected graph is
/// strongly regular with `(e, d) = (0, 2^((n+s−2)/2))`.
pub fn check_complete_bipartite(
    g: &CayleyGraph,
    report: &PlateauReport,
    spectrum: &BTreeMap<i64, u64>,
    config: &AnalysisConfig,
) -> Result<BipartiteVerdict, RegularityError> {
    if !report.is_plateaued || !report.special_weight || report.degenerate {
        return Err(RegularityError::PreconditionViolation(
            "requires a non-constant plateaued function of weight 2^((n+s-2)/2)".into(),
        ));
    }
    if report.n != g.n() || report.weight != g.degree() {
        return Err(RegularityError::PreconditionViolation(
            "report does not describe this graph".into(),
        ));
    }
    let s = report.s.expect("plateaued");
    let special = special_weight_value(report.n, s).expect("n + s even");

    let mut components = Vec::new();
    let mut support_is_far_side = false;
    if g.n() <= PAIRWISE_BIPARTITE_LIMIT {
        let mut colour: Vec<Option<bool>> = vec![None; g.order()];
        for start in 0..g.order() {
            if colour[start].is_some() {
                continue;
            }
            let members = two_colour(g, start, &mut colour)?;
            for &x in &members {
                for &y in &members {
                    if g.is_adjacent(x, y) != (colour[x] != colour[y]) {
                        return Err(RegularityError::InvariantViolation(format!(
                            "component of {start} is not complete bipartite at ({x}, {y})"
                        )));
                    }
                }
            }
            let near = members.iter().filter(|&&x| colour[x] == Some(false)).count() as u64;
            if start == 0 {
                let far: Vec<u32> = members
                    .iter()
                    .filter(|&&x| colour[x] == Some(true))
                    .map(|&x| x as u32)
                    .collect();
                let mut far = far;
                far.sort_unstable();
                support_is_far_side = far == g.support();
            }
            components.push(ComponentBipartition {
                representative: start as u32,
                size: members.len() as u64,
                near_side: near,
                far_side: members.len() as u64 - near,
            });
        }
    } else {
        // G_f restricted to the span is complete bipartite iff f restricted to
        // the span is a nonzero linear form; every other component is a translate.
        let h = g.induced_function().expect("non-degenerate");
        let mut coeffs = h.truth_table().to_vec();
        mobius_in_place(&mut coeffs);
        let linear = !coeffs[0] && coeffs.iter().enumerate().all(|(m, &c)| !c || m.count_ones() == 1);
        if !linear {
            return Err(RegularityError::InvariantViolation(
                "restriction of f to the span of its support is not linear".into(),
            ));
        }
        let size = 1u64 << g.span_rank();
        support_is_far_side = true;
        for comp in g.connected_components() {
            components.push(ComponentBipartition {
                representative: comp[0],
                size,
                near_side: size / 2,
                far_side: size / 2,
            });
        }
    }
    if !support_is_far_side {
        return Err(RegularityError::InvariantViolation(
            "the side of the component of 0 away from 0 differs from the support".into(),
        ));
    }

    let connected = g.is_connected();
    // K_{1,1} has no non-adjacent pairs, so `d` is undefined there.
    let srg = if connected && g.order() > 2 {
        let cert = check_strongly_regular(g, spectrum, config)?;
        if (cert.e, cert.d) != (0, special) {
            return Err(RegularityError::InvariantViolation(format!(
                "expected (e, d) = (0, {special}), found ({}, {})",
                cert.e, cert.d
            )));
        }
        Some(cert)
    } else {
        None
    };
    Ok(BipartiteVerdict {
        connected,
        components,
        support_is_far_side,
        srg,
    })
}

/// Breadth-first 2-colouring of the component of `start`; returns its vertices.
fn two_colour(g: &CayleyGraph, start: usize, colour: &mut [Option<bool>]) -> Result<Vec<usize>, RegularityError> {
    let mut members = vec![start];
    let mut queue = VecDeque::from([start]);
    colour[start] = Some(false);
    while let Some(x) = queue.pop_front() {
        let c = colour[x].expect("queued vertices are coloured");
        for y in g.neighbors(x) {
            match colour[y] {
                None => {
                    colour[y] = Some(!c);
                    members.push(y);
                    queue.push_back(y);
                }
                Some(cy) if cy == c => {
                    return Err(RegularityError::InvariantViolation(format!(
                        "odd cycle through edge ({x}, {y})"
                    )));
                }
                _ => {}
            }
        }
    }
    Ok(members)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Witness {
    NonIntegerParameters { detail: String },
    RootFailure { eigenvalue: i64, residual: String },
    DegreeEquationFailure { lhs: String, rhs: String },
}

impl Witness {
    fn from_error(e: RegularityError) -> Option<Witness> {
        match e {
            RegularityError::NonIntegerParameters(detail) => Some(Witness::NonIntegerParameters { detail }),
            RegularityError::RootFailure { eigenvalue, residual } => {
                Some(Witness::RootFailure { eigenvalue, residual })
            }
            RegularityError::DegreeEquationFailure { lhs, rhs } => Some(Witness::DegreeEquationFailure { lhs, rhs }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateType {
    Srg,
    Walkreg,
}

/// Serialized certificate: `{type, params, verified_by, witness}`. Refuted
/// hypotheses carry an empty `verified_by` and a non-null `witness`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    #[serde(rename = "type")]
    pub kind: CertificateType,
    pub params: serde_json::Value,
    pub verified_by: Vec<String>,
    pub witness: Option<Witness>,
}

fn evidence_names<E: Serialize>(set: &BTreeSet<E>) -> Vec<String> {
    set.iter()
        .map(|e| {
            serde_json::to_value(e)
                .expect("enum")
                .as_str()
                .expect("unit variant")
                .to_owned()
        })
        .collect()
}

impl From<&SrgCertificate> for CertificateRecord {
    fn from(c: &SrgCertificate) -> Self {
        CertificateRecord {
            kind: CertificateType::Srg,
            params: json!({
                "v": c.v, "r": c.r, "e": c.e, "d": c.d,
                "eigenvalues": [c.eigenvalues.0, c.eigenvalues.1, c.eigenvalues.2],
            }),
            verified_by: evidence_names(&c.verified_by),
            witness: None,
        }
    }
}

impl From<&WalkRegCertificate> for CertificateRecord {
    fn from(c: &WalkRegCertificate) -> Self {
        CertificateRecord {
            kind: CertificateType::Walkreg,
            params: json!({ "ell": c.ell, "sigma": c.sigma, "mu": c.mu, "nu": c.nu }),
            verified_by: evidence_names(&c.verified_by),
            witness: None,
        }
    }
}

/// One hypothetical plateau level `s` tried against a graph and refuted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseCandidate {
    pub s: u32,
    pub params: Option<WalkRegParams>,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub n: u32,
    pub r: u64,
    pub distinct_eigenvalues: usize,
    /// For four distinct eigenvalues `r > λ2 > λ3 > λ4`: whether `λ2 + λ3 + λ4 = 0`,
    /// i.e. whether the graph is strongly 3-walk-regular at all.
    pub nontrivial_eigenvalue_sum_zero: Option<bool>,
    /// Whether length-3 walk counts are constant on each pair class, read off
    /// `A³`; only computed for dense graphs.
    pub walk_counts_constant: Option<bool>,
    pub refuted: Vec<ConverseCandidate>,
    /// Levels whose parameters do fit. Only possible when the spectrum does not
    /// have exactly four distinct values, which lies outside the characterization.
    pub fits: Vec<ConverseFit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseFit {
    pub s: u32,
    pub params: WalkRegParams,
}

/// Tries every admissible `s` on a connected graph's spectrum: computes the
/// 3-walk parameters the function would have if it were s-plateaued, and
/// requires the spectral check to reject each of them.
pub fn converse_check(spectrum: &BTreeMap<i64, u64>, n: u32, r: u64) -> Result<ConverseReport, RegularityError> {
    let distinct: Vec<i64> = spectrum.keys().rev().copied().collect();
    let nontrivial_eigenvalue_sum_zero =
        (distinct.len() == 4 && distinct[0] == r as i64).then(|| distinct[1..].iter().sum::<i64>() == 0);
    let mut refuted = Vec::new();
    let mut fits = Vec::new();
    for s in (0..=n).filter(|s| (n + s) % 2 == 0) {
        if special_weight_value(n, s) == Some(r) {
            continue;
        }
        let (params, outcome) = match three_walk_parameters(n, s, r) {
            Ok(p) => (Some(p), spectral_walkreg_check(spectrum, 1 << n, r, 3, p)),
            Err(e) => (None, Err(e)),
        };
        match outcome {
            Ok(()) if distinct.len() == 4 => {
                return Err(RegularityError::InvariantViolation(format!(
                    "non-plateaued graph with four eigenvalues satisfies the 3-walk parameters for s = {s}"
                )))
            }
            Ok(()) => fits.push(ConverseFit {
                s,
                params: params.expect("checked parameters"),
            }),
            Err(e) => match Witness::from_error(e.clone()) {
                Some(witness) => refuted.push(ConverseCandidate { s, params, witness }),
                None => return Err(e),
            },
        }
    }
    Ok(ConverseReport {
        n,
        r,
        distinct_eigenvalues: distinct.len(),
        nontrivial_eigenvalue_sum_zero,
        walk_counts_constant: None,
        refuted,
        fits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Constant zero function: empty graph, nothing to certify.
    Degenerate,
    /// Plateaued with `wt = 2^((n+s−2)/2)`: complete bipartite components.
    CompleteBipartite,
    /// Plateaued otherwise: strongly ℓ-walk-regular for every odd ℓ ≥ 3.
    StronglyWalkRegular,
    NotPlateaued,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFacts {
    pub order: u64,
    pub degree: u64,
    pub span_rank: u32,
    pub connected: bool,
    pub components: u64,
}

/// Multiplicity cross-checks performed for plateaued functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityCheck {
    pub tallied: WhtMultiplicities,
    pub predicted: Option<WhtMultiplicities>,
    pub semibent_table: Option<WhtMultiplicities>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Characterization {
    pub n: u32,
    pub truth_table: String,
    pub anf: String,
    pub weight: u64,
    pub degree: u32,
    pub walsh_hadamard: Vec<i64>,
    pub fourier: Vec<i64>,
    pub parseval: bool,
    pub fourier_relation: bool,
    pub plateau: PlateauReport,
    pub multiplicities: Option<MultiplicityCheck>,
    pub graph: GraphFacts,
    pub spectrum: SpectrumCertificate,
    pub verdict: Verdict,
    pub degenerate: bool,
    pub bipartite: Option<BipartiteVerdict>,
    pub certificates: Vec<CertificateRecord>,
    pub converse: Option<ConverseReport>,
    /// Analysis of one component when a non-plateaued function has a disconnected graph.
    pub component: Option<Box<Characterization>>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub srg: Option<SrgCertificate>,
    #[serde(skip)]
    pub walk_regular: Vec<WalkRegCertificate>,
}

/// Runs the whole pipeline on `f`: spectra with always-on Parseval and
/// Fourier/Walsh consistency checks, classification, graph construction and
/// spectral certificate, then the certificate path selected by the classification.
pub fn full_characterization(
    f: &BooleanFunction,
    config: &AnalysisConfig,
) -> Result<Characterization, RegularityError> {
    config.validate()?;
    let n = f.n();
    let wht = walsh_hadamard(f);
    let four = fourier(f);
    if !parseval_check(&wht)? {
        return Err(RegularityError::SpectrumInvariant("Parseval identity fails".into()));
    }
    if !fourier_relation_holds(&wht, &four)? {
        return Err(RegularityError::SpectrumInvariant(
            "W_f(w) = 2^(n-1)delta(w) - W_fhat(w)/2 fails".into(),
        ));
    }
    let plateau = classify_plateaued(&wht)?;
    let g = CayleyGraph::build(f)?;
    let spectrum = g.spectrum(&four, config)?;
    let components = g.connected_components();
    if !g.is_connected() && g.n() <= MAX_DENSE_LIMIT {
        g.verify_translation_isomorphism()?;
    }

    let mut warnings = Vec::new();
    let multiplicities = if plateau.is_plateaued {
        graph_eigenvalue_report(&four, &plateau)?;
        Some(multiplicity_check(&plateau)?)
    } else {
        None
    };

    let mut out = Characterization {
        n,
        truth_table: f.to_bit_string(),
        anf: f.to_anf().to_string(),
        weight: f.weight(),
        degree: f.degree(),
        walsh_hadamard: wht.values.clone(),
        fourier: four.values.clone(),
        parseval: true,
        fourier_relation: true,
        multiplicities,
        graph: GraphFacts {
            order: g.order() as u64,
            degree: g.degree(),
            span_rank: g.span_rank(),
            connected: g.is_connected(),
            components: components.len() as u64,
        },
        spectrum,
        verdict: Verdict::Degenerate,
        degenerate: plateau.degenerate,
        bipartite: None,
        certificates: Vec::new(),
        converse: None,
        component: None,
        warnings: Vec::new(),
        srg: None,
        walk_regular: Vec::new(),
        plateau,
    };
    let eigenvalues = out.spectrum.eigenvalues.clone();

    if out.plateau.degenerate {
        warnings.push("constant function: empty Cayley graph, nothing to certify".to_owned());
    } else if out.plateau.is_plateaued && out.plateau.special_weight {
        if !g.is_connected() {
            warnings.push(format!(
                "Cayley graph has {} components; checked each for complete bipartiteness",
                components.len()
            ));
        }
        let verdict = check_complete_bipartite(&g, &out.plateau, &eigenvalues, config)?;
        if let Some(srg) = &verdict.srg {
            out.certificates.push(srg.into());
            out.srg = Some(srg.clone());
        }
        out.bipartite = Some(verdict);
        out.verdict = Verdict::CompleteBipartite;
    } else if out.plateau.is_plateaued {
        if !g.is_connected() {
            return Err(RegularityError::InvariantViolation(
                "plateaued function outside the complete-bipartite weight has a disconnected graph".into(),
            ));
        }
        let s = out.plateau.s.expect("plateaued");
        let certs = walk_regular_certificates(&g, n, s, &eigenvalues, config)?;
        if eigenvalues.len() == 3 {
            let srg = check_strongly_regular(&g, &eigenvalues, config)?;
            if out.plateau.bent && srg.e != srg.d {
                return Err(RegularityError::InvariantViolation(format!(
                    "bent function with e = {} != d = {}",
                    srg.e, srg.d
                )));
            }
            out.certificates.push((&srg).into());
            out.srg = Some(srg);
        }
        out.certificates.extend(certs.iter().map(CertificateRecord::from));
        out.walk_regular = certs;
        out.verdict = Verdict::StronglyWalkRegular;
    } else {
        if g.is_connected() {
            let mut report = converse_check(&eigenvalues, n, g.degree())?;
            if g.n() <= config.dense_limit {
                let a = g.adjacency_matrix(config.dense_limit)?;
                let constant = matches!(brute_force_walk_counts(&a, 3)?, WalkCounts::Constant { .. });
                if let Some(sum_zero) = report.nontrivial_eigenvalue_sum_zero {
                    if sum_zero != constant {
                        return Err(RegularityError::InvariantViolation(format!(
                            "four eigenvalues: sum of non-principal eigenvalues zero = {sum_zero}, constant 3-walk counts = {constant}"
                        )));
                    }
                }
                report.walk_counts_constant = Some(constant);
            }
            for fit in &report.fits {
                warnings.push(format!(
                    "spectrum has {} distinct values and fits the 3-walk parameters for s = {}",
                    report.distinct_eigenvalues, fit.s
                ));
            }
            if eigenvalues.len() == 3 {
                let srg = check_strongly_regular(&g, &eigenvalues, config)?;
                out.certificates.push((&srg).into());
                out.srg = Some(srg);
            }
            for c in &report.refuted {
                out.certificates.push(CertificateRecord {
                    kind: CertificateType::Walkreg,
                    params: json!({ "ell": 3, "s": c.s, "hypothetical": c.params }),
                    verified_by: Vec::new(),
                    witness: Some(c.witness.clone()),
                });
            }
            out.converse = Some(report);
        } else {
            // Every component is a translate of the component of 0, which is
            // the Cayley graph of f restricted to the span of its support.
            warnings.push(format!(
                "Cayley graph has {} components; each is analysed as the graph of the induced function",
                components.len()
            ));
            let h = g.induced_function().expect("non-empty support");
            out.component = Some(Box::new(full_characterization(&h, config)?));
        }
        out.verdict = Verdict::NotPlateaued;
    }
    out.warnings = warnings;
    Ok(out)
}

fn multiplicity_check(plateau: &PlateauReport) -> Result<MultiplicityCheck, RegularityError> {
    let tallied = plateau.wht_counts().expect("plateaued");
    let query: Option<MultiplicityQuery> = plateau.into();
    let predicted = match predicted_multiplicities(query.expect("plateaued")) {
        Ok(p) => Some(p),
        Err(ClassifyError::SpecialWeight { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = predicted {
        if p != tallied {
            return Err(ClassifyError::MultiplicityMismatch(format!("predicted {p:?}, tallied {tallied:?}")).into());
        }
    }
    let semibent_table = if plateau.semibent && !plateau.f_at_zero {
        semibent_odd_table(plateau.n)
    } else {
        None
    };
    if let Some(t) = semibent_table {
        if t != tallied {
            return Err(ClassifyError::MultiplicityMismatch(format!(
                "semibent table {t:?} differs from tally {tallied:?}"
            ))
            .into());
        }
    }
    Ok(MultiplicityCheck {
        tallied,
        predicted,
        semibent_table,
    })
}

/// Certificates for ℓ = 3, 5, …, `config.ell_max` on a connected graph of a
/// plateaued function outside the complete-bipartite weight.
pub fn walk_regular_certificates(
    g: &CayleyGraph,
    n: u32,
    s: u32,
    spectrum: &BTreeMap<i64, u64>,
    config: &AnalysisConfig,
) -> Result<Vec<WalkRegCertificate>, RegularityError> {
    let r = g.degree();
    let v = g.order() as u64;
    let base = three_walk_parameters(n, s, r)?;
    if base.mu != base.nu {
        return Err(RegularityError::InvariantViolation("mu != nu".into()));
    }
    let distinct: Vec<i64> = spectrum.keys().rev().copied().collect();
    if distinct.len() == 4 && distinct[1..].iter().sum::<i64>() != 0 {
        return Err(RegularityError::InvariantViolation(format!(
            "four eigenvalues {distinct:?} whose non-principal sum is nonzero"
        )));
    }

    let dense = g.n() <= config.dense_limit;
    let a = if dense {
        Some(g.adjacency_matrix(config.dense_limit)?)
    } else {
        None
    };
    let mut power = a.clone();
    let mut current_exp = 1;

    let mut out = Vec::new();
    for t in 1..=(config.ell_max - 1) / 2 {
        let mut cert = odd_walk_parameters(n, s, r, t)?;
        let ell = cert.ell;
        if t == 1 && cert.params() != base {
            return Err(RegularityError::InvariantViolation(format!(
                "t = 1 parameters {:?} differ from the 3-walk parameters {base:?}",
                cert.params()
            )));
        }
        spectral_walkreg_check(spectrum, v, r, ell, cert.params())?;
        cert.verified_by.insert(WalkRegEvidence::SpectralRoots);

        if let (Some(a), Some(p)) = (&a, power.as_mut()) {
            while current_exp < ell {
                *p = a.mul(p)?;
                current_exp += 1;
            }
            check_walk_identity(a, p, ell, cert.params())?;
            cert.verified_by.insert(WalkRegEvidence::MatrixIdentity);
            match walk_counts_from_power(a, p) {
                WalkCounts::Constant {
                    adjacent,
                    nonadjacent,
                    identical,
                } => {
                    let agrees = adjacent.is_none_or(|x| x == cert.sigma)
                        && nonadjacent.is_none_or(|x| x == cert.mu)
                        && identical == cert.nu;
                    if !agrees {
                        return Err(RegularityError::InvariantViolation(format!(
                            "walk counts ({adjacent:?}, {nonadjacent:?}, {identical}) differ from {:?} at l = {ell}",
                            cert.params()
                        )));
                    }
                }
                WalkCounts::NotConstant { class, first, second } => {
                    return Err(RegularityError::InvariantViolation(format!(
                        "{class:?} walk counts of length {ell} differ between {first:?} and {second:?}"
                    )))
                }
            }
            cert.verified_by.insert(WalkRegEvidence::WalkCountOracle);
        }
        out.push(cert);
    }
    Ok(out)
}
