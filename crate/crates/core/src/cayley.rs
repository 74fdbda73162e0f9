//! The Cayley graph `G_f` on F₂ⁿ with connection set `Ω_f`.
//!
//! Vertices `i` and `j` are adjacent iff `f(i ⊕ j) = 1`. The graph is stored
//! implicitly through the support; dense matrices are built on request.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolfun::BooleanFunction;
use crate::config::AnalysisConfig;
use crate::matrix::ExactMatrix;
use crate::transform::{dot, SpectrumKind, SpectrumVector};

/// Largest `n` accepted by [`CayleyGraph::export_dot`].
pub const MAX_DOT_VARIABLES: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("f(0) = 1: the Cayley graph would carry a loop at every vertex")]
    LoopedGraph,
    #[error("n = {n} exceeds the dense-matrix limit {limit}")]
    TooLargeForDense { n: u32, limit: u32 },
    #[error("n = {n} exceeds the limit {max} for this export")]
    TooLarge { n: u32, max: u32 },
    #[error("spectrum does not belong to this graph: {0}")]
    MismatchedSpectrum(String),
    #[error("character identity A·χ_w = W_f(w)·χ_w fails at w = {w}, x = {x}")]
    CertificateFailure { w: usize, x: usize },
    #[error("translation by {shift} is not an isomorphism onto its component")]
    TranslationFailure { shift: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    n: u32,
    support: Vec<u32>,
    member: Vec<bool>,
    /// Basis of span(Ω_f) with pairwise distinct leading bits, leading bit descending.
    basis: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexLabels {
    Binary,
    Integer,
}

/// Eigenvalue multiset together with how it was certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumCertificate {
    pub eigenvalues: BTreeMap<i64, u64>,
    pub characters_checked: u64,
    pub exhaustive: bool,
}

#[inline]
fn leading_bit(v: u32) -> u32 {
    31 - v.leading_zeros()
}

impl CayleyGraph {
    pub fn build(f: &BooleanFunction) -> Result<Self, CayleyError> {
        if f.value(0) {
            return Err(CayleyError::LoopedGraph);
        }
        let support = f.support();
        let member = f.truth_table().to_vec();
        let mut basis: Vec<u32> = Vec::new();
        for &s in &support {
            let r = reduce(&basis, s);
            if r != 0 {
                let pos = basis.partition_point(|&b| leading_bit(b) > leading_bit(r));
                basis.insert(pos, r);
            }
        }
        Ok(Self {
            n: f.n(),
            support,
            member,
            basis,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of vertices, `2ⁿ`.
    pub fn order(&self) -> usize {
        1 << self.n
    }

    pub fn degree(&self) -> u64 {
        self.support.len() as u64
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    #[inline]
    pub fn in_support(&self, x: usize) -> bool {
        self.member[x]
    }

    #[inline]
    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.member[i ^ j]
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.support.iter().map(move |&s| x ^ s as usize)
    }

    /// Dimension of the F₂-span of the support.
    pub fn span_rank(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn span_basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn is_connected(&self) -> bool {
        self.span_rank() == self.n
    }

    /// Canonical representative of the coset `x + span(Ω_f)`.
    pub fn coset_representative(&self, x: u32) -> u32 {
        reduce(&self.basis, x)
    }

    /// Components are the cosets of span(Ω_f); each list is ascending and the
    /// components are ordered by smallest vertex, so the first one is the span.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let mut by_rep: BTreeMap<u32, usize> = BTreeMap::new();
        let mut out: Vec<Vec<u32>> = Vec::with_capacity(1 << (self.n - self.span_rank()));
        for x in 0..self.order() as u32 {
            let rep = self.coset_representative(x);
            let idx = *by_rep.entry(rep).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[idx].push(x);
        }
        out
    }

    /// Checks that `x ↦ x ⊕ c` maps the component of 0 bijectively and
    /// adjacency-preservingly onto the component of `c`, for each component.
    pub fn verify_translation_isomorphism(&self) -> Result<(), CayleyError> {
        let components = self.connected_components();
        let base = &components[0];
        for comp in &components[1..] {
            let c = comp[0];
            let mut image: Vec<u32> = base.iter().map(|&x| x ^ c).collect();
            image.sort_unstable();
            if &image != comp {
                return Err(CayleyError::TranslationFailure { shift: c });
            }
            for &x in base {
                for &y in base {
                    let (xs, ys) = ((x ^ c) as usize, (y ^ c) as usize);
                    if self.is_adjacent(x as usize, y as usize) != self.is_adjacent(xs, ys) {
                        return Err(CayleyError::TranslationFailure { shift: c });
                    }
                }
            }
        }
        Ok(())
    }

    /// The function on `F₂^ρ` (ρ = span rank) obtained by restricting `f` to the
    /// span of its support in the coordinates of [`CayleyGraph::span_basis`];
    /// bit `b` of a point selects basis vector `b`. Its Cayley graph is
    /// isomorphic to every component of this one. `None` when the support is empty.
    pub fn induced_function(&self) -> Option<BooleanFunction> {
        let rho = self.span_rank();
        if rho == 0 {
            return None;
        }
        let f = BooleanFunction::from_fn(rho, |y| {
            let x = self
                .basis
                .iter()
                .enumerate()
                .filter(|(b, _)| (y >> b) & 1 == 1)
                .fold(0u32, |acc, (_, &v)| acc ^ v);
            self.member[x as usize]
        })
        .expect("rank is between 1 and n");
        Some(f)
    }

    pub fn adjacency_matrix(&self, dense_limit: u32) -> Result<ExactMatrix, CayleyError> {
        if self.n > dense_limit {
            return Err(CayleyError::TooLargeForDense {
                n: self.n,
                limit: dense_limit,
            });
        }
        Ok(ExactMatrix::from_fn(self.order(), |i, j| self.member[i ^ j] as i128))
    }

    /// 0/1 rows of the adjacency matrix.
    pub fn adjacency_csv(&self, dense_limit: u32) -> Result<String, CayleyError> {
        if self.n > dense_limit {
            return Err(CayleyError::TooLargeForDense {
                n: self.n,
                limit: dense_limit,
            });
        }
        let mut out = String::with_capacity(self.order() * self.order() * 2);
        for i in 0..self.order() {
            for j in 0..self.order() {
                if j > 0 {
                    out.push(',');
                }
                out.push(if self.member[i ^ j] { '1' } else { '0' });
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Graph spectrum from the Fourier transform of `f`, certified by the
    /// character identity `Σ_{s∈Ω_f} χ_w(x ⊕ s) = W_f(w) χ_w(x)` at every vertex.
    /// Every character is checked up to the dense limit; above it a seeded
    /// sample of `config.character_samples` characters is checked.
    pub fn spectrum(
        &self,
        fourier: &SpectrumVector,
        config: &AnalysisConfig,
    ) -> Result<SpectrumCertificate, CayleyError> {
        if fourier.kind != SpectrumKind::Fourier || fourier.n != self.n {
            return Err(CayleyError::MismatchedSpectrum(format!(
                "expected a Fourier spectrum on {} variables",
                self.n
            )));
        }
        if fourier.values[0] != self.degree() as i64 {
            return Err(CayleyError::MismatchedSpectrum(format!(
                "W_f(0) = {} but the degree is {}",
                fourier.values[0],
                self.degree()
            )));
        }
        let exhaustive = self.n <= config.dense_limit;
        let characters: Vec<usize> = if exhaustive {
            (0..self.order()).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            (0..config.character_samples)
                .map(|_| rng.gen_range(0..self.order()))
                .collect()
        };
        for &w in &characters {
            self.check_character(w, fourier.values[w])?;
        }
        Ok(SpectrumCertificate {
            eigenvalues: fourier.multiplicities(),
            characters_checked: characters.len() as u64,
            exhaustive,
        })
    }

    /// Exact check of `A·χ_w = λ·χ_w`.
    pub fn check_character(&self, w: usize, eigenvalue: i64) -> Result<(), CayleyError> {
        let chi = |x: usize| if dot(w, x) { -1i64 } else { 1 };
        for x in 0..self.order() {
            let lhs: i64 = self.neighbors(x).map(chi).sum();
            if lhs != eigenvalue * chi(x) {
                return Err(CayleyError::CertificateFailure { w, x });
            }
        }
        Ok(())
    }

    /// Undirected DOT rendering, one edge per unordered adjacent pair.
    pub fn export_dot(&self, labels: VertexLabels) -> Result<String, CayleyError> {
        if self.n > MAX_DOT_VARIABLES {
            return Err(CayleyError::TooLarge {
                n: self.n,
                max: MAX_DOT_VARIABLES,
            });
        }
        let width = self.n as usize;
        let label = |v: usize| match labels {
            VertexLabels::Binary => format!("{v:0width$b}"),
            VertexLabels::Integer => v.to_string(),
        };
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            let _ = writeln!(out, "  \"{}\";", label(v));
        }
        for i in 0..self.order() {
            for j in i + 1..self.order() {
                if self.member[i ^ j] {
                    let _ = writeln!(out, "  \"{}\" -- \"{}\";", label(i), label(j));
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

fn reduce(basis: &[u32], mut x: u32) -> u32 {
    for &b in basis {
        if (x >> leading_bit(b)) & 1 == 1 {
            x ^= b;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::fourier;

    fn graph(bits: &str) -> CayleyGraph {
        CayleyGraph::build(&BooleanFunction::from_bit_string(bits).unwrap()).unwrap()
    }

    #[test]
    fn build_majority() {
        let g = graph("00010111");
        assert_eq!(g.support(), &[0b011, 0b101, 0b110, 0b111]);
        assert_eq!(g.degree(), 4);
        assert!(g.is_connected());
        assert_eq!(g.connected_components().len(), 1);
        let a = g.adjacency_matrix(8).unwrap();
        assert!(a.is_symmetric());
        assert_eq!(a.row_sums().unwrap(), vec![4; 8]);
    }

    #[test]
    fn build_rejects_loops() {
        let f = BooleanFunction::from_bit_string("1000").unwrap();
        assert_eq!(CayleyGraph::build(&f), Err(CayleyError::LoopedGraph));
    }

    #[test]
    fn small_graphs() {
        let g = graph("0011");
        assert_eq!(g.support(), &[0b10, 0b11]);
        assert_eq!(g.connected_components().len(), 1);

        let m = graph("0001");
        assert_eq!(m.connected_components(), vec![vec![0, 3], vec![1, 2]]);
        let a = m.adjacency_matrix(8).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*a.get(i, j), (i ^ j == 3) as i128);
            }
        }
        m.verify_translation_isomorphism().unwrap();

        let e = graph("0000");
        assert_eq!(e.degree(), 0);
        assert_eq!(e.connected_components().len(), 4);
        assert_eq!(e.adjacency_matrix(8).unwrap(), ExactMatrix::zeros(4));
        assert!(e.induced_function().is_none());
    }

    #[test]
    fn spectra() {
        let cfg = AnalysisConfig::default();
        let f = BooleanFunction::from_bit_string("00010111").unwrap();
        let cert = CayleyGraph::build(&f).unwrap().spectrum(&fourier(&f), &cfg).unwrap();
        assert_eq!(cert.eigenvalues, BTreeMap::from([(-2, 3), (0, 3), (2, 1), (4, 1)]));
        assert!(cert.exhaustive);

        let z = BooleanFunction::zero(3).unwrap();
        let cert = CayleyGraph::build(&z).unwrap().spectrum(&fourier(&z), &cfg).unwrap();
        assert_eq!(cert.eigenvalues, BTreeMap::from([(0, 8)]));

        let k4 = BooleanFunction::from_bit_string("0111").unwrap();
        let cert = CayleyGraph::build(&k4).unwrap().spectrum(&fourier(&k4), &cfg).unwrap();
        assert_eq!(cert.eigenvalues, BTreeMap::from([(-1, 3), (3, 1)]));
    }

    #[test]
    fn spectrum_rejects_wrong_values() {
        let cfg = AnalysisConfig::default();
        let f = BooleanFunction::from_bit_string("00010111").unwrap();
        let g = CayleyGraph::build(&f).unwrap();
        let mut bad = fourier(&f);
        bad.values.swap(1, 3);
        assert!(matches!(
            g.spectrum(&bad, &cfg),
            Err(CayleyError::CertificateFailure { w: 1, .. })
        ));
        let other = fourier(&BooleanFunction::from_bit_string("00000011").unwrap());
        assert!(matches!(
            g.spectrum(&other, &cfg),
            Err(CayleyError::MismatchedSpectrum(_))
        ));
    }

    #[test]
    fn sampled_characters_above_dense_limit() {
        let cfg = AnalysisConfig {
            dense_limit: 2,
            character_samples: 5,
            ..AnalysisConfig::default()
        };
        let f = BooleanFunction::from_bit_string("00010111").unwrap();
        let cert = CayleyGraph::build(&f).unwrap().spectrum(&fourier(&f), &cfg).unwrap();
        assert!(!cert.exhaustive);
        assert_eq!(cert.characters_checked, 5);
        assert!(matches!(
            CayleyGraph::build(&f).unwrap().adjacency_matrix(2),
            Err(CayleyError::TooLargeForDense { n: 3, limit: 2 })
        ));
    }

    #[test]
    fn dot_export() {
        let dot = graph("0001").export_dot(VertexLabels::Binary).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(dot.contains("\"00\" -- \"11\""));
        let dot = graph("00010111").export_dot(VertexLabels::Integer).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 16);
        assert_eq!(
            dot.lines().filter(|l| l.ends_with("\";") && !l.contains("--")).count(),
            8
        );
    }

    #[test]
    fn induced_function_of_disconnected_graph() {
        // support {011, 101} spans {000, 011, 101, 110}
        let g = graph("00010100");
        assert_eq!(g.span_rank(), 2);
        let h = g.induced_function().unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.weight(), 2);
        assert!(CayleyGraph::build(&h).unwrap().is_connected());
    }
}
