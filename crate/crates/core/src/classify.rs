//! Bent / semibent / s-plateaued classification and eigenvalue multiplicities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::transform::{SpectrumKind, SpectrumVector, TransformError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("wt = {wt} equals 2^((n+s-2)/2): the Fourier spectrum is 3-valued")]
    SpecialWeight { wt: u64 },
    #[error("n + s = {0} is odd")]
    ParityError(u32),
    #[error("s = {s} exceeds n = {n}")]
    SOutOfRange { n: u32, s: u32 },
    #[error("inconsistent multiplicity query: {0}")]
    InconsistentQuery(String),
    #[error("function is not plateaued")]
    NotPlateaued,
    #[error("eigenvalue tally contradicts the multiplicity formulas: {0}")]
    MultiplicityMismatch(String),
}

/// Sign of `W_f̂(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

impl Sign {
    pub fn of(v: i64) -> Sign {
        match v.signum() {
            0 => Sign::Zero,
            1 => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlateauReport {
    pub n: u32,
    pub weight: u64,
    pub f_at_zero: bool,
    pub is_plateaued: bool,
    pub s: Option<u32>,
    pub k: Option<u64>,
    pub bent: bool,
    pub semibent: bool,
    pub balanced: bool,
    pub w0_sign: Sign,
    pub wht_multiplicities: BTreeMap<i64, u64>,
    pub fourier_multiplicities: BTreeMap<i64, u64>,
    /// `wt(f) = 2^((n+s−2)/2)`; only ever set for plateaued functions.
    pub special_weight: bool,
    /// Constant functions (weight 0 or 2ⁿ).
    pub degenerate: bool,
}

/// Counts of the Walsh–Hadamard values `0`, `+k`, `−k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhtMultiplicities {
    pub zero: u64,
    pub plus: u64,
    pub minus: u64,
}

/// `2^((n+s−2)/2)`, the weight singled out by the complete-bipartite case.
pub fn special_weight_value(n: u32, s: u32) -> Option<u64> {
    let e = n + s;
    (e % 2 == 0 && e >= 2).then(|| 1u64 << ((e - 2) / 2))
}

pub fn classify_plateaued(w: &SpectrumVector) -> Result<PlateauReport, ClassifyError> {
    w.expect_kind(SpectrumKind::WalshHadamard)?;
    let n = w.n;
    let size = 1i64 << n;
    let w0 = w.values[0];
    let weight = ((size - w0) / 2) as u64;
    let total: i64 = w.values.iter().sum();
    let f_at_zero = total < 0;

    let mut magnitudes: Vec<u64> = w.values.iter().map(|v| v.unsigned_abs()).filter(|&a| a != 0).collect();
    magnitudes.sort_unstable();
    magnitudes.dedup();

    let mut s = None;
    let mut k = None;
    if let [single] = magnitudes[..] {
        if single.is_power_of_two() {
            let twice = 2 * single.trailing_zeros();
            if twice >= n && twice - n <= n {
                s = Some(twice - n);
                k = Some(single);
            }
        }
    }
    let is_plateaued = s.is_some();
    let special_weight = s
        .and_then(|s| special_weight_value(n, s))
        .is_some_and(|sw| sw == weight);

    let fourier: BTreeMap<i64, u64> = {
        let mut m = BTreeMap::new();
        for (i, &h) in w.values.iter().enumerate() {
            let delta = if i == 0 { size } else { 0 };
            *m.entry((delta - h) / 2).or_insert(0) += 1;
        }
        m
    };

    Ok(PlateauReport {
        n,
        weight,
        f_at_zero,
        is_plateaued,
        s,
        k,
        bent: s == Some(0),
        semibent: matches!((s, n % 2), (Some(1), 1) | (Some(2), 0)),
        balanced: w0 == 0,
        w0_sign: Sign::of(w0),
        wht_multiplicities: w.multiplicities(),
        fourier_multiplicities: fourier,
        special_weight,
        degenerate: weight == 0 || weight == size as u64,
    })
}

impl PlateauReport {
    /// Tallied `(0, +k, −k)` counts; `None` unless plateaued.
    pub fn wht_counts(&self) -> Option<WhtMultiplicities> {
        let k = self.k? as i64;
        let get = |v: i64| self.wht_multiplicities.get(&v).copied().unwrap_or(0);
        Some(WhtMultiplicities {
            zero: get(0),
            plus: get(k),
            minus: get(-k),
        })
    }
}

/// Inputs for [`predicted_multiplicities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityQuery {
    pub n: u32,
    pub s: u32,
    pub balanced: bool,
    pub w0_sign: Sign,
    pub weight: u64,
    pub f_at_zero: bool,
}

impl From<&PlateauReport> for Option<MultiplicityQuery> {
    fn from(r: &PlateauReport) -> Self {
        Some(MultiplicityQuery {
            n: r.n,
            s: r.s?,
            balanced: r.balanced,
            w0_sign: r.w0_sign,
            weight: r.weight,
            f_at_zero: r.f_at_zero,
        })
    }
}

/// Predicted counts of `0`, `+k`, `−k` in the Walsh–Hadamard spectrum.
///
/// `count(+k) + count(−k) = 2^{2n}/k² = 2^{n−s}` comes from Parseval, and
/// `k·(count(+k) − count(−k)) = Σ_w W_f̂(w) = 2ⁿ(−1)^{f(0)}` fixes the split.
pub fn predicted_multiplicities(q: MultiplicityQuery) -> Result<WhtMultiplicities, ClassifyError> {
    let MultiplicityQuery { n, s, weight, .. } = q;
    if s > n {
        return Err(ClassifyError::SOutOfRange { n, s });
    }
    if (n + s) % 2 == 1 {
        return Err(ClassifyError::ParityError(n + s));
    }
    if special_weight_value(n, s) == Some(weight) {
        return Err(ClassifyError::SpecialWeight { wt: weight });
    }
    let size = 1i64 << n;
    let k = 1i64 << ((n + s) / 2);
    let w0 = size - 2 * weight as i64;
    if Sign::of(w0) != q.w0_sign || (w0 == 0) != q.balanced {
        return Err(ClassifyError::InconsistentQuery(format!(
            "weight {weight} gives W(0) = {w0}, sign {:?}, balanced {}",
            q.w0_sign, q.balanced
        )));
    }
    if w0 != 0 && w0.abs() != k {
        return Err(ClassifyError::InconsistentQuery(format!(
            "|W(0)| = {} is neither 0 nor k = {k}",
            w0.abs()
        )));
    }
    let nonzero = 1u64 << (n - s);
    let diff = 1i64 << ((n - s) / 2);
    let diff = if q.f_at_zero { -diff } else { diff };
    let plus = (nonzero as i64 + diff) / 2;
    Ok(WhtMultiplicities {
        zero: (1u64 << n) - nonzero,
        plus: plus as u64,
        minus: nonzero - plus as u64,
    })
}

/// The semibent table for odd `n ≥ 3` and `f(0) = 0`:
/// `0 ↦ 2^{n−1}`, `+2^{(n+1)/2} ↦ 2^{n−2} + 2^{(n−3)/2}`, `−2^{(n+1)/2} ↦ 2^{n−2} − 2^{(n−3)/2}`.
pub fn semibent_odd_table(n: u32) -> Option<WhtMultiplicities> {
    (n >= 3 && n % 2 == 1).then(|| WhtMultiplicities {
        zero: 1 << (n - 1),
        plus: (1 << (n - 2)) + (1 << ((n - 3) / 2)),
        minus: (1 << (n - 2)) - (1 << ((n - 3) / 2)),
    })
}

/// Tallies the Fourier spectrum (the graph eigenvalues) and checks it against
/// the balanced / unbalanced multiplicity cases. Returns the full tally.
pub fn graph_eigenvalue_report(
    fourier: &SpectrumVector,
    report: &PlateauReport,
) -> Result<BTreeMap<i64, u64>, ClassifyError> {
    fourier.expect_kind(SpectrumKind::Fourier)?;
    let k = match (report.is_plateaued, report.k) {
        (true, Some(k)) => k as i64,
        _ => return Err(ClassifyError::NotPlateaued),
    };
    let n = fourier.n;
    let size = 1u64 << n;
    let plus_minus = size * size / (k as u64 * k as u64);
    let half = k / 2;

    let mut zeros = 0u64;
    let mut halves = 0u64;
    for (w, &v) in fourier.values.iter().enumerate().skip(1) {
        if v == 0 {
            zeros += 1;
        } else if v.abs() == half {
            halves += 1;
        } else {
            return Err(ClassifyError::MultiplicityMismatch(format!(
                "W_f({w}) = {v} is not in {{0, ±{half}}}"
            )));
        }
    }
    if fourier.values[0] != report.weight as i64 {
        return Err(ClassifyError::MultiplicityMismatch(format!(
            "W_f(0) = {} differs from wt(f) = {}",
            fourier.values[0], report.weight
        )));
    }
    // The eigenvalue wt(f) sits at w = 0; the remaining positions split by case.
    let (expected_zeros, expected_halves) = if report.balanced {
        (size - plus_minus - 1, plus_minus)
    } else {
        (size - plus_minus, plus_minus - 1)
    };
    if zeros != expected_zeros || halves != expected_halves {
        return Err(ClassifyError::MultiplicityMismatch(format!(
            "found {zeros} zeros and {halves} values ±{half} away from w = 0, expected {expected_zeros} and {expected_halves}"
        )));
    }
    Ok(fourier.multiplicities())
}
