//! Dense square matrices over exact integers with checked arithmetic.
//!
//! `i128` is the default entry type; every operation is overflow-checked and
//! reports [`MatrixError::Overflow`] instead of wrapping. `BigInt` entries never
//! overflow and can be used when `i128` is too narrow.

use std::fmt::{Debug, Display, Write as _};

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

pub trait MatrixEntry:
    Clone + PartialEq + Debug + Display + Zero + One + CheckedAdd + CheckedSub + CheckedMul + From<i128> + Send + Sync
{
}

impl<T> MatrixEntry for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + From<i128>
        + Send
        + Sync
{
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<T = i128> {
    dim: usize,
    entries: Vec<T>,
}

/// Entries with arbitrary precision.
pub type BigMatrix = ExactMatrix<BigInt>;

impl<T: MatrixEntry> ExactMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = T::one();
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![T::one(); dim * dim],
        }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Result<Vec<T>, MatrixError> {
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .try_fold(T::zero(), |acc, v| acc.checked_add(v).ok_or(MatrixError::Overflow))
            })
            .collect()
    }

    /// Exact product; rows are computed in parallel, zero entries of `self` are skipped.
    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch(self.dim, other.dim));
        }
        let dim = self.dim;
        let rows: Vec<Vec<T>> = (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![T::zero(); dim];
                for (k, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (slot, b) in acc.iter_mut().zip(other.row(k)) {
                        let term = a.checked_mul(b).ok_or(MatrixError::Overflow)?;
                        *slot = slot.checked_add(&term).ok_or(MatrixError::Overflow)?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_, MatrixError>>()?;
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `self^exp` for `exp ≥ 1`, by repeated left multiplication.
    pub fn pow(&self, exp: u32) -> Result<Self, MatrixError> {
        assert!(exp >= 1, "matrix power exponent must be positive");
        let mut out = self.clone();
        for _ in 1..exp {
            out = self.mul(&out)?;
        }
        Ok(out)
    }

    /// `[self, self², …, self^max]`.
    pub fn powers(&self, max: u32) -> Result<Vec<Self>, MatrixError> {
        let mut out = vec![self.clone()];
        for _ in 1..max {
            let next = self.mul(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// Entry `(i, j)` of `Σ cᵢ Mᵢ` for the given scaled terms.
    pub fn combination_entry(terms: &[(&T, &Self)], i: usize, j: usize) -> Result<T, MatrixError> {
        terms.iter().try_fold(T::zero(), |acc, (c, m)| {
            let t = c.checked_mul(m.get(i, j)).ok_or(MatrixError::Overflow)?;
            acc.checked_add(&t).ok_or(MatrixError::Overflow)
        })
    }

    /// Rows of comma-separated entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }
}

impl ExactMatrix<i128> {
    pub fn to_big(&self) -> BigMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }
}
