//! Greedy discovery of factor concepts and related utilities.
//!
//! A set of concepts `F` decomposes `I` exactly when every nonzero cell
//! `(i, j)` is covered by some `(C, D) ∈ F`, i.e. `C(i) ⊗ D(j) = I_ij`.
//! Rectangles of concepts of `I` never exceed `I`, so covering the nonzero
//! cells is all that is needed. [`find_factors`] builds each factor by
//! growing an intent one graded attribute at a time, always taking the
//! extension whose generated concept covers the most still-uncovered cells.

mod oracle;

pub use oracle::{optimal_factorization, OracleLimits};

use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::concept::{up_into, FormalConcept};
use crate::error::{Error, Result};
use crate::matrix::{FuzzySet, GradedMatrix};
use crate::par::Execution;
use crate::scale::{Grade, Scale};

/// How ties between equally good `(attribute, grade)` extensions are broken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Smallest attribute index first, then smallest grade: the first
    /// maximizer met when scanning attributes and grades in ascending order.
    #[default]
    ScanOrder,
    /// Largest grade first, then smallest attribute index.
    GradeThenIndex,
    /// Smallest attribute index first, then largest grade.
    IndexThenGrade,
}

impl TieBreak {
    pub fn name(self) -> &'static str {
        match self {
            TieBreak::ScanOrder => "scan-order",
            TieBreak::GradeThenIndex => "grade-then-index",
            TieBreak::IndexThenGrade => "index-then-grade",
        }
    }

    /// True when candidate `a` beats the incumbent `b`.
    fn prefers(self, a: &Candidate, b: &Candidate) -> bool {
        if a.gain != b.gain {
            return a.gain > b.gain;
        }
        match self {
            TieBreak::ScanOrder => (a.attribute, a.grade) < (b.attribute, b.grade),
            TieBreak::GradeThenIndex => {
                (a.grade, std::cmp::Reverse(a.attribute))
                    > (b.grade, std::cmp::Reverse(b.attribute))
            }
            TieBreak::IndexThenGrade => {
                (std::cmp::Reverse(a.attribute), a.grade)
                    > (std::cmp::Reverse(b.attribute), b.grade)
            }
        }
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scan-order" => Ok(TieBreak::ScanOrder),
            "grade-then-index" => Ok(TieBreak::GradeThenIndex),
            "index-then-grade" => Ok(TieBreak::IndexThenGrade),
            other => Err(Error::Config(format!("unknown tie-break policy `{other}`"))),
        }
    }
}

/// Which `(attribute, grade)` extensions are evaluated at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CandidateScan {
    /// Only grades above the current intent degree; the others cannot change
    /// the closure.
    #[default]
    SkipDominated,
    /// Every nonzero grade of every attribute.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FindOptions {
    pub tie_break: TieBreak,
    pub scan: CandidateScan,
    /// Stop after this many factors even if cells remain uncovered.
    pub max_factors: Option<usize>,
    pub execution: Execution,
}

impl FindOptions {
    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_max_factors(mut self, max: Option<usize>) -> Self {
        self.max_factors = max;
        self
    }
}

/// Cells of the context that are nonzero and not yet covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverUniverse {
    cols: usize,
    uncovered: Vec<bool>,
    remaining: usize,
}

impl CoverUniverse {
    /// All nonzero cells of `ctx`.
    pub fn new(ctx: &GradedMatrix) -> Self {
        let uncovered: Vec<bool> = ctx.as_slice().iter().map(|g| !g.is_zero()).collect();
        let remaining = uncovered.iter().filter(|&&u| u).count();
        CoverUniverse {
            cols: ctx.cols(),
            uncovered,
            remaining,
        }
    }

    pub fn len(&self) -> usize {
        self.remaining
    }

    pub fn is_empty(&self) -> bool {
        self.remaining == 0
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.uncovered[i * self.cols + j]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.cols;
        self.uncovered
            .iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(move |(idx, _)| (idx / cols, idx % cols))
    }

    /// Remove every cell covered by `concept`; returns how many were removed.
    pub fn remove_covered(&mut self, ctx: &GradedMatrix, concept: &FormalConcept) -> usize {
        let s = ctx.scale();
        let mut removed = 0;
        for (i, c) in concept.extent().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in concept.intent().iter().enumerate() {
                let idx = i * self.cols + j;
                if self.uncovered[idx] && s.tnorm(c, d) >= ctx.get(i, j) {
                    self.uncovered[idx] = false;
                    removed += 1;
                }
            }
        }
        self.remaining -= removed;
        removed
    }
}

/// Number of cells of `universe` covered by the concept with the given
/// extent and intent.
fn covered_count(
    ctx: &GradedMatrix,
    universe: &CoverUniverse,
    extent: &[Grade],
    intent: &[Grade],
) -> usize {
    let s = ctx.scale();
    let mut count = 0;
    for (i, &c) in extent.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let row = ctx.row(i);
        for (j, &d) in intent.iter().enumerate() {
            if !d.is_zero() && universe.contains(i, j) && s.tnorm(c, d) >= row[j] {
                count += 1;
            }
        }
    }
    count
}

/// `|D ⊕_a j|`: the number of cells of `universe` covered by the concept
/// generated by `D ∪ {a/j}`.
pub fn gain(
    ctx: &GradedMatrix,
    universe: &CoverUniverse,
    intent: &FuzzySet,
    j: usize,
    a: Grade,
) -> Result<usize> {
    let extended = intent.union(&FuzzySet::singleton(*ctx.scale(), ctx.cols(), j, a)?)?;
    let concept = FormalConcept::from_intent(ctx, &extended)?;
    Ok(covered_count(
        ctx,
        universe,
        concept.extent().as_slice(),
        concept.intent().as_slice(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Candidate {
    attribute: usize,
    grade: Grade,
    gain: usize,
}

/// Working state of one factor under construction. `extent` always equals
/// `intent↓`, which lets an extension `{a/j}` be evaluated as
/// `extent ∧ (a → I_·j)` without recomputing the full `↓`.
struct Growth {
    extent: Vec<Grade>,
    intent: Vec<Grade>,
}

impl Growth {
    fn empty(ctx: &GradedMatrix) -> Self {
        Growth {
            extent: vec![ctx.scale().one(); ctx.rows()],
            intent: vec![Grade::ZERO; ctx.cols()],
        }
    }

    /// Extent and intent of the concept generated by `intent ∪ {a/j}`.
    fn extended(&self, ctx: &GradedMatrix, j: usize, a: Grade) -> (Vec<Grade>, Vec<Grade>) {
        let s = ctx.scale();
        let extent: Vec<Grade> = self
            .extent
            .iter()
            .enumerate()
            .map(|(i, &c)| c.min(s.residuum(a, ctx.get(i, j))))
            .collect();
        let mut intent = vec![Grade::ZERO; ctx.cols()];
        up_into(ctx, &extent, &mut intent);
        (extent, intent)
    }

    fn best_candidate(
        &self,
        ctx: &GradedMatrix,
        universe: &CoverUniverse,
        opts: &FindOptions,
    ) -> Option<Candidate> {
        let s = ctx.scale();
        let pairs: Vec<(usize, Grade)> = (0..ctx.cols())
            .flat_map(|j| {
                let floor = match opts.scan {
                    CandidateScan::SkipDominated => self.intent[j],
                    CandidateScan::Exhaustive => Grade::ZERO,
                };
                s.grades().filter(move |&a| a > floor).map(move |a| (j, a))
            })
            .collect();
        let gains = opts.execution.map_slice(&pairs, |&(j, a)| {
            let (extent, intent) = self.extended(ctx, j, a);
            covered_count(ctx, universe, &extent, &intent)
        });
        let mut best: Option<Candidate> = None;
        for (&(attribute, grade), gain) in pairs.iter().zip(gains) {
            let cand = Candidate {
                attribute,
                grade,
                gain,
            };
            if best.is_none_or(|b| opts.tie_break.prefers(&cand, &b)) {
                best = Some(cand);
            }
        }
        best
    }
}

/// An ordered list of factor concepts of one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    scale: Scale,
    rows: usize,
    cols: usize,
    factors: Vec<FormalConcept>,
    complete: bool,
}

impl FactorSet {
    /// Wrap given concepts of `ctx`; completeness is computed, not assumed.
    pub fn from_concepts(ctx: &GradedMatrix, factors: Vec<FormalConcept>) -> Result<Self> {
        for f in &factors {
            if f.extent().len() != ctx.rows() || f.intent().len() != ctx.cols() {
                return Err(Error::DimensionMismatch(
                    "factor does not match the context".into(),
                ));
            }
        }
        let mut set = FactorSet {
            scale: *ctx.scale(),
            rows: ctx.rows(),
            cols: ctx.cols(),
            factors,
            complete: false,
        };
        set.complete = set.reconstruct()? == *ctx;
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[FormalConcept] {
        &self.factors
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn context_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Whether the factors reconstruct the context exactly.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `A_F` (objects × factors) and `B_F` (factors × attributes).
    pub fn factor_matrices(&self) -> (GradedMatrix, GradedMatrix) {
        let k = self.factors.len();
        let mut a = GradedMatrix::zeros(self.scale, self.rows, k);
        let mut b = GradedMatrix::zeros(self.scale, k, self.cols);
        for (l, f) in self.factors.iter().enumerate() {
            for (i, g) in f.extent().iter().enumerate() {
                a.set(i, l, g);
            }
            for (j, g) in f.intent().iter().enumerate() {
                b.set(l, j, g);
            }
        }
        (a, b)
    }

    /// Superposition of all factor rectangles.
    pub fn reconstruct(&self) -> Result<GradedMatrix> {
        self.prefix_reconstruction(self.factors.len())
    }

    pub fn prefix_reconstruction(&self, len: usize) -> Result<GradedMatrix> {
        let mut out = GradedMatrix::zeros(self.scale, self.rows, self.cols);
        for f in &self.factors[..len.min(self.factors.len())] {
            out.join_assign(&f.rectangle())?;
        }
        Ok(out)
    }

    fn check_context(&self, ctx: &GradedMatrix) -> Result<()> {
        if ctx.shape() != (self.rows, self.cols) || *ctx.scale() != self.scale {
            return Err(Error::DimensionMismatch(format!(
                "factors for a {}x{} context applied to a {}x{} matrix",
                self.rows,
                self.cols,
                ctx.rows(),
                ctx.cols()
            )));
        }
        Ok(())
    }

    /// Entry `l` is the fraction of all cells where the superposition of the
    /// first `l + 1` factors agrees with `ctx`.
    pub fn coverage_curve(&self, ctx: &GradedMatrix) -> Result<Vec<Ratio<usize>>> {
        self.check_context(ctx)?;
        let mut acc = GradedMatrix::zeros(self.scale, self.rows, self.cols);
        self.factors
            .iter()
            .map(|f| {
                acc.join_assign(&f.rectangle())?;
                acc.equal_fraction(ctx)
            })
            .collect()
    }

    /// Like [`coverage_curve`](Self::coverage_curve) but relative to the
    /// nonzero cells of `ctx` only.
    pub fn nonzero_coverage_curve(&self, ctx: &GradedMatrix) -> Result<Vec<Ratio<usize>>> {
        self.check_context(ctx)?;
        let total = ctx.nonzero_count();
        let mut universe = CoverUniverse::new(ctx);
        Ok(self
            .factors
            .iter()
            .map(|f| {
                universe.remove_covered(ctx, f);
                if total == 0 {
                    Ratio::from_integer(1)
                } else {
                    Ratio::new(total - universe.len(), total)
                }
            })
            .collect())
    }
}

/// Greedy search for factor concepts with the default options.
pub fn find_factors(ctx: &GradedMatrix, tie_break: TieBreak) -> FactorSet {
    find_factors_with(ctx, &FindOptions::default().with_tie_break(tie_break))
}

/// Greedy search for factor concepts.
///
/// Each round starts from the empty intent and repeatedly adds the graded
/// singleton `{a/j}` whose generated concept covers the most uncovered
/// cells, for as long as that number strictly grows. The resulting concept
/// becomes the next factor and its covered cells leave the universe.
pub fn find_factors_with(ctx: &GradedMatrix, opts: &FindOptions) -> FactorSet {
    let mut universe = CoverUniverse::new(ctx);
    let mut factors = Vec::new();
    let s = *ctx.scale();

    while !universe.is_empty() && opts.max_factors.is_none_or(|max| factors.len() < max) {
        let mut growth = Growth::empty(ctx);
        let mut value = 0;
        while let Some(best) = growth.best_candidate(ctx, &universe, opts) {
            if best.gain <= value {
                break;
            }
            value = best.gain;
            let (extent, intent) = growth.extended(ctx, best.attribute, best.grade);
            growth = Growth { extent, intent };
        }
        // any uncovered (i, j) is covered by the concept of {I_ij / j}
        assert!(value > 0, "no candidate covers an uncovered cell");
        let concept = FormalConcept::from_parts_unchecked(
            FuzzySet::from_grades_unchecked(s, growth.extent),
            FuzzySet::from_grades_unchecked(s, growth.intent),
        );
        let removed = universe.remove_covered(ctx, &concept);
        debug_assert_eq!(removed, value);
        factors.push(concept);
    }

    FactorSet {
        scale: s,
        rows: ctx.rows(),
        cols: ctx.cols(),
        factors,
        complete: universe.is_empty(),
    }
}
