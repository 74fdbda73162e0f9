//! Exhaustive and sampled sweeps over Boolean functions.
//!
//! Functions are generated up front in index order, analysed in parallel, and
//! folded back in index order, so a sweep is fully determined by its inputs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolfun::{BoolFunError, BooleanFunction};
use crate::config::{AnalysisConfig, ConfigError};
use crate::regularity::{full_characterization, Characterization, RegularityError, Verdict, WalkRegEvidence};

/// Largest `n` for exhaustive sweeps.
pub const MAX_EXHAUSTIVE_VARIABLES: u32 = 4;
/// Largest `n` for sampled sweeps.
pub const MAX_SAMPLED_VARIABLES: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("exhaustive sweeps need 1 <= n <= {MAX_EXHAUSTIVE_VARIABLES}, got {0}")]
    ExhaustiveTooLarge(u32),
    #[error("sampled sweeps need 1 <= n <= {MAX_SAMPLED_VARIABLES}, got {0}")]
    SampledTooLarge(u32),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    BoolFun(#[from] BoolFunError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// Uniform truth tables with `f(0)` forced to 0.
    Uniform,
    /// Random quadratic ANFs without constant term; always plateaued.
    Quadratic,
    /// Alternates quadratic (even indices) and uniform (odd indices).
    #[default]
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Sampled {
        count: u64,
        seed: u64,
        generator: Generator,
    },
}

/// Uniform random function on `n` variables with `f(0) = 0`.
pub fn random_uniform(n: u32, rng: &mut impl Rng) -> Result<BooleanFunction, BoolFunError> {
    let mut table: Vec<bool> = (0..1usize << n).map(|_| rng.gen()).collect();
    table[0] = false;
    BooleanFunction::from_vec(table)
}

/// Random quadratic form `Σ a_ij x_i x_j + Σ b_i x_i`, each coefficient a fair coin.
pub fn random_quadratic(n: u32, rng: &mut impl Rng) -> Result<BooleanFunction, BoolFunError> {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen() {
                pairs.push((i, j));
            }
        }
    }
    let linear: Vec<u32> = (1..=n).filter(|_| rng.gen()).collect();
    BooleanFunction::from_fn(n, |x| {
        let bit = |v: u32| crate::boolfun::variable_bit(x, v, n);
        let q = pairs.iter().fold(false, |acc, &(i, j)| acc ^ (bit(i) & bit(j)));
        linear.iter().fold(q, |acc, &i| acc ^ bit(i))
    })
}

/// The functions a sweep visits, in order.
pub fn sweep_functions(n: u32, mode: SweepMode) -> Result<Vec<BooleanFunction>, SweepError> {
    match mode {
        SweepMode::Exhaustive => {
            if n == 0 || n > MAX_EXHAUSTIVE_VARIABLES {
                return Err(SweepError::ExhaustiveTooLarge(n));
            }
            let count = 1u64 << (1u32 << n);
            Ok((0..count)
                .map(|p| BooleanFunction::from_packed(n, p))
                .collect::<Result<_, _>>()?)
        }
        SweepMode::Sampled { count, seed, generator } => {
            if n == 0 || n > MAX_SAMPLED_VARIABLES {
                return Err(SweepError::SampledTooLarge(n));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count as usize);
            for i in 0..count {
                let quadratic = match generator {
                    Generator::Uniform => false,
                    Generator::Quadratic => true,
                    Generator::Mixed => i % 2 == 0,
                };
                out.push(if quadratic {
                    random_quadratic(n, &mut rng)?
                } else {
                    random_uniform(n, &mut rng)?
                });
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub truth_table: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SweepSummary {
    pub n: u32,
    pub scanned: u64,
    /// Functions with `f(0) = 1`, whose Cayley graph has loops.
    pub skipped_looped: u64,
    pub analysed: u64,
    pub verdicts: BTreeMap<Verdict, u64>,
    /// Plateaued, non-constant functions by plateau level `s`.
    pub plateaued_by_s: BTreeMap<u32, u64>,
    pub bent: u64,
    pub semibent: u64,
    pub semibent_table_checked: u64,
    pub multiplicity_predictions_checked: u64,
    pub disconnected: u64,
    pub complete_bipartite_components_checked: u64,
    pub srg_certificates: u64,
    pub walkreg_certificates: u64,
    /// Walk-regularity certificates confirmed by formula, matrix identity and walk counts.
    pub walkreg_three_way: u64,
    pub converse_refutations: u64,
    pub nonplateaued_four_eigenvalue: u64,
    /// Non-plateaued graphs with a spectrum of other than four values that still
    /// fit some level's 3-walk parameters.
    pub converse_fits_outside_four_valued: u64,
    pub spectrum_characters_checked: u64,
    pub failures: Vec<SweepFailure>,
}

impl SweepSummary {
    fn record(&mut self, f: &BooleanFunction, outcome: Result<Characterization, RegularityError>) {
        self.scanned += 1;
        let c = match outcome {
            Ok(c) => c,
            Err(RegularityError::Cayley(crate::cayley::CayleyError::LoopedGraph)) => {
                self.skipped_looped += 1;
                return;
            }
            Err(e) => {
                self.failures.push(SweepFailure {
                    truth_table: f.to_bit_string(),
                    error: e.to_string(),
                });
                return;
            }
        };
        self.analysed += 1;
        *self.verdicts.entry(c.verdict).or_insert(0) += 1;
        if c.plateau.is_plateaued && !c.degenerate {
            *self.plateaued_by_s.entry(c.plateau.s.expect("plateaued")).or_insert(0) += 1;
            self.bent += c.plateau.bent as u64;
            self.semibent += c.plateau.semibent as u64;
        }
        if let Some(m) = &c.multiplicities {
            self.semibent_table_checked += m.semibent_table.is_some() as u64;
            self.multiplicity_predictions_checked += m.predicted.is_some() as u64;
        }
        self.disconnected += (!c.graph.connected && !c.degenerate) as u64;
        if let Some(t) = &c.bipartite {
            self.complete_bipartite_components_checked += t.components.len() as u64;
        }
        self.srg_certificates += c.srg.is_some() as u64;
        self.walkreg_certificates += c.walk_regular.len() as u64;
        self.walkreg_three_way += c
            .walk_regular
            .iter()
            .filter(|w| {
                w.verified_by.contains(&WalkRegEvidence::MatrixIdentity)
                    && w.verified_by.contains(&WalkRegEvidence::SpectralRoots)
                    && w.verified_by.contains(&WalkRegEvidence::WalkCountOracle)
            })
            .count() as u64;
        if let Some(conv) = &c.converse {
            self.converse_refutations += conv.refuted.len() as u64;
            self.nonplateaued_four_eigenvalue += (conv.distinct_eigenvalues == 4) as u64;
            self.converse_fits_outside_four_valued += !conv.fits.is_empty() as u64;
        }
        self.spectrum_characters_checked += c.spectrum.characters_checked;
    }
}

/// Full report of a sweep; serializes deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: u32,
    #[serde(flatten)]
    pub mode: SweepMode,
    pub config: AnalysisConfig,
    pub summary: SweepSummary,
}

pub fn run_sweep(n: u32, mode: SweepMode, config: &AnalysisConfig) -> Result<SweepReport, SweepError> {
    config.validate()?;
    let functions = sweep_functions(n, mode)?;
    let outcomes: Vec<_> = functions.par_iter().map(|f| full_characterization(f, config)).collect();
    let mut summary = SweepSummary {
        n,
        ..SweepSummary::default()
    };
    for (f, outcome) in functions.iter().zip(outcomes) {
        summary.record(f, outcome);
    }
    Ok(SweepReport {
        n,
        mode,
        config: *config,
        summary,
    })
}
