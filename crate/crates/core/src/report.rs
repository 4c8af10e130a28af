//! Machine-readable run artifacts: JSON factor reports and TSV tables.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::experiment::ExperimentStats;
use crate::factorization::{CoverUniverse, FactorSet};
use crate::matrix::GradedMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct FactorEntry {
    pub extent: Vec<u16>,
    pub intent: Vec<u16>,
    /// Nonzero cells first covered by this factor.
    pub newly_covered: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub command: String,
    pub rows: usize,
    pub cols: usize,
    pub levels: u32,
    pub tnorm: String,
    pub tie_break: Option<String>,
    pub seed: Option<u64>,
    pub factor_count: usize,
    /// True when the factors reconstruct the input exactly.
    pub exact: bool,
    /// Set when a factor limit stopped the run before all cells were covered.
    pub truncated: bool,
    pub row_labels: Option<Vec<String>>,
    pub col_labels: Option<Vec<String>>,
    pub factors: Vec<FactorEntry>,
    pub coverage: Vec<f64>,
    pub nonzero_coverage: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

pub(crate) fn ratio_f64(r: &Ratio<usize>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl FactorReport {
    pub fn new(command: &str, ctx: &GradedMatrix, factors: &FactorSet) -> crate::Result<Self> {
        let coverage = factors.coverage_curve(ctx)?;
        let nonzero = factors.nonzero_coverage_curve(ctx)?;
        let mut universe = CoverUniverse::new(ctx);
        let entries = factors
            .factors()
            .iter()
            .map(|f| FactorEntry {
                extent: f.extent().levels(),
                intent: f.intent().levels(),
                newly_covered: universe.remove_covered(ctx, f),
            })
            .collect();
        Ok(FactorReport {
            command: command.to_string(),
            rows: ctx.rows(),
            cols: ctx.cols(),
            levels: ctx.scale().levels(),
            tnorm: ctx.scale().kind().to_string(),
            tie_break: None,
            seed: None,
            factor_count: factors.len(),
            exact: factors.is_complete(),
            truncated: false,
            row_labels: None,
            col_labels: None,
            factors: entries,
            coverage: coverage.iter().map(ratio_f64).collect(),
            nonzero_coverage: nonzero.iter().map(ratio_f64).collect(),
            elapsed_ms: None,
        })
    }

    pub fn to_json(&self) -> crate::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// `factors`, `coverage`, `nonzero_coverage` per prefix length.
pub fn coverage_tsv(coverage: &[Ratio<usize>], nonzero: &[Ratio<usize>]) -> String {
    let mut out = String::from("factors\tcoverage\tnonzero_coverage\n");
    for (l, (c, nz)) in coverage.iter().zip(nonzero).enumerate() {
        let _ = writeln!(out, "{}\t{:.6}\t{:.6}", l + 1, ratio_f64(c), ratio_f64(nz));
    }
    out
}

pub fn stats_tsv(tnorm: &str, stats: &[ExperimentStats]) -> String {
    let mut out = String::from("tnorm\tk\ttrials\tmean_factors\tstd_dev\tmin\tmax\n");
    for s in stats {
        let _ = writeln!(
            out,
            "{tnorm}\t{}\t{}\t{:.3}\t{:.3}\t{}\t{}",
            s.k, s.trials, s.mean_factors, s.std_dev, s.min_factors, s.max_factors
        );
    }
    out
}
