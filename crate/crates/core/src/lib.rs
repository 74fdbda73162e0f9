//! Exact analysis of Boolean functions and their Cayley graphs.
//!
//! Walsh–Hadamard and Fourier spectra, plateaued classification, Cayley graph
//! spectra, and certificates for strong regularity and strong ℓ-walk-regularity,
//! all in exact integer or rational arithmetic.
//!
//! Index convention: truth-table index `i` encodes `(x1, …, xn)` with `x1` the
//! most significant bit, so `"00010111"` is the majority function on 3 variables.

pub mod boolfun;
pub mod cayley;
pub mod classify;
pub mod config;
pub mod matrix;
pub mod regularity;
pub mod sweep;
pub mod transform;

pub use boolfun::{parse_anf, parse_tt_file, AnfPolynomial, BoolFunError, BooleanFunction, Monomial};
pub use cayley::{CayleyError, CayleyGraph, SpectrumCertificate, VertexLabels};
pub use classify::{classify_plateaued, predicted_multiplicities, PlateauReport, Sign, WhtMultiplicities};
pub use config::AnalysisConfig;
pub use matrix::{BigMatrix, ExactMatrix, MatrixError};
pub use regularity::{
    full_characterization, CertificateRecord, Characterization, RegularityError, SrgCertificate, Verdict,
    WalkRegCertificate, WalkRegParams,
};
pub use sweep::{run_sweep, Generator, SweepMode, SweepReport};
pub use transform::{fourier, walsh_hadamard, SpectrumKind, SpectrumVector};
