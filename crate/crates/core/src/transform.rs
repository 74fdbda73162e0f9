//! Exact Walsh–Hadamard and Fourier spectra via the in-place butterfly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolfun::BooleanFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("expected a {expected:?} spectrum, got {found:?}")]
    KindMismatch {
        expected: SpectrumKind,
        found: SpectrumKind,
    },
    #[error("spectrum length {0} is not 2^n")]
    BadLength(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    /// `W_f̂(w) = Σ_x (−1)^{f(x) ⊕ w·x}`
    WalshHadamard,
    /// `W_f(w) = Σ_x f(x) (−1)^{w·x}`, the Cayley graph eigenvalues.
    Fourier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumVector {
    pub n: u32,
    pub kind: SpectrumKind,
    pub values: Vec<i64>,
}

/// Unnormalized Walsh–Hadamard butterfly, in place. Applying it twice
/// multiplies the input by its length.
pub fn butterfly(values: &mut [i64]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for i in block..block + half {
                let (a, b) = (values[i], values[i + half]);
                values[i] = a + b;
                values[i + half] = a - b;
            }
        }
        half <<= 1;
    }
}

/// `w·x` over F₂.
#[inline]
pub fn dot(w: usize, x: usize) -> bool {
    (w & x).count_ones() & 1 == 1
}

pub fn walsh_hadamard(f: &BooleanFunction) -> SpectrumVector {
    let mut values: Vec<i64> = f.truth_table().iter().map(|&b| if b { -1 } else { 1 }).collect();
    butterfly(&mut values);
    SpectrumVector {
        n: f.n(),
        kind: SpectrumKind::WalshHadamard,
        values,
    }
}

pub fn fourier(f: &BooleanFunction) -> SpectrumVector {
    let mut values: Vec<i64> = f.truth_table().iter().map(|&b| b as i64).collect();
    butterfly(&mut values);
    SpectrumVector {
        n: f.n(),
        kind: SpectrumKind::Fourier,
        values,
    }
}

/// `Σ_w W_f̂(w)² = 2^{2n}`.
pub fn parseval_check(s: &SpectrumVector) -> Result<bool, TransformError> {
    s.expect_kind(SpectrumKind::WalshHadamard)?;
    let sum: i128 = s.values.iter().map(|&v| (v as i128) * (v as i128)).sum();
    Ok(sum == 1i128 << (2 * s.n))
}

/// Checks `W_f(w) = 2^{n−1} δ(w) − ½ W_f̂(w)` at every `w`.
pub fn fourier_relation_holds(wht: &SpectrumVector, fourier: &SpectrumVector) -> Result<bool, TransformError> {
    wht.expect_kind(SpectrumKind::WalshHadamard)?;
    fourier.expect_kind(SpectrumKind::Fourier)?;
    if wht.values.len() != fourier.values.len() {
        return Ok(false);
    }
    let half = 1i64 << (wht.n - 1);
    Ok(wht.values.iter().zip(&fourier.values).enumerate().all(|(w, (&h, &g))| {
        let delta = if w == 0 { half } else { 0 };
        2 * g == 2 * delta - h
    }))
}

/// Fourier spectrum recovered from the Walsh–Hadamard one through the same relation.
pub fn fourier_from_walsh(wht: &SpectrumVector) -> Result<SpectrumVector, TransformError> {
    wht.expect_kind(SpectrumKind::WalshHadamard)?;
    let half = 1i64 << (wht.n - 1);
    let values = wht
        .values
        .iter()
        .enumerate()
        .map(|(w, &h)| (if w == 0 { 2 * half } else { 0 } - h) / 2)
        .collect();
    Ok(SpectrumVector {
        n: wht.n,
        kind: SpectrumKind::Fourier,
        values,
    })
}

impl SpectrumVector {
    pub fn new(kind: SpectrumKind, values: Vec<i64>) -> Result<Self, TransformError> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(TransformError::BadLength(len));
        }
        Ok(Self {
            n: len.trailing_zeros(),
            kind,
            values,
        })
    }

    pub fn expect_kind(&self, kind: SpectrumKind) -> Result<(), TransformError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(TransformError::KindMismatch {
                expected: kind,
                found: self.kind,
            })
        }
    }

    /// Value → number of positions holding it.
    pub fn multiplicities(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for &v in &self.values {
            *out.entry(v).or_insert(0) += 1;
        }
        out
    }

    /// `w_index,value` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("w_index,value\n");
        for (w, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{w},{v}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }
}
