//! Concept-forming operators and formal concepts of a graded context.
//!
//! For a context matrix `I` the operators are
//! `C↑(j) = min_i (C(i) → I_ij)` and `D↓(i) = min_j (D(j) → I_ij)`.
//! A formal concept is a pair `(C, D)` with `C↑ = D` and `D↓ = C`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::{FuzzySet, GradedMatrix};
use crate::par::Execution;
use crate::scale::Grade;

/// Default cap on closure computations during enumeration.
pub const DEFAULT_CLOSURE_BUDGET: u64 = 1_000_000;

fn check_universe(set: &FuzzySet, len: usize, what: &str, ctx: &GradedMatrix) -> Result<()> {
    if set.scale() != ctx.scale() {
        return Err(Error::ScaleMismatch {
            left: set.scale().to_string(),
            right: ctx.scale().to_string(),
        });
    }
    if set.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "{what} of size {} for a {}x{} context",
            set.len(),
            ctx.rows(),
            ctx.cols()
        )));
    }
    Ok(())
}

/// `C↑` written into `out` (length = number of columns).
pub(crate) fn up_into(ctx: &GradedMatrix, extent: &[Grade], out: &mut [Grade]) {
    let s = ctx.scale();
    out.fill(s.one());
    for (i, &c) in extent.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(ctx.row(i)) {
            *o = (*o).min(s.residuum(c, x));
        }
    }
}

/// `D↓` written into `out` (length = number of rows).
pub(crate) fn down_into(ctx: &GradedMatrix, intent: &[Grade], out: &mut [Grade]) {
    let s = ctx.scale();
    for (i, o) in out.iter_mut().enumerate() {
        *o = ctx
            .row(i)
            .iter()
            .zip(intent)
            .filter(|(_, d)| !d.is_zero())
            .map(|(&x, &d)| s.residuum(d, x))
            .min()
            .unwrap_or_else(|| s.one());
    }
}

fn closure_of(ctx: &GradedMatrix, intent: &[Grade]) -> Vec<Grade> {
    let mut extent = vec![Grade::ZERO; ctx.rows()];
    down_into(ctx, intent, &mut extent);
    let mut closed = vec![Grade::ZERO; ctx.cols()];
    up_into(ctx, &extent, &mut closed);
    closed
}

/// The intent `C↑` of a graded set of objects.
pub fn up(ctx: &GradedMatrix, extent: &FuzzySet) -> Result<FuzzySet> {
    check_universe(extent, ctx.rows(), "extent", ctx)?;
    let mut out = vec![Grade::ZERO; ctx.cols()];
    up_into(ctx, extent.as_slice(), &mut out);
    Ok(FuzzySet::from_grades_unchecked(*ctx.scale(), out))
}

/// The extent `D↓` of a graded set of attributes.
pub fn down(ctx: &GradedMatrix, intent: &FuzzySet) -> Result<FuzzySet> {
    check_universe(intent, ctx.cols(), "intent", ctx)?;
    let mut out = vec![Grade::ZERO; ctx.rows()];
    down_into(ctx, intent.as_slice(), &mut out);
    Ok(FuzzySet::from_grades_unchecked(*ctx.scale(), out))
}

/// `D↓↑`, the smallest intent containing `D`.
pub fn close_intent(ctx: &GradedMatrix, intent: &FuzzySet) -> Result<FuzzySet> {
    check_universe(intent, ctx.cols(), "intent", ctx)?;
    Ok(FuzzySet::from_grades_unchecked(
        *ctx.scale(),
        closure_of(ctx, intent.as_slice()),
    ))
}

/// `C↑↓`, the smallest extent containing `C`.
pub fn close_extent(ctx: &GradedMatrix, extent: &FuzzySet) -> Result<FuzzySet> {
    down(ctx, &up(ctx, extent)?)
}

/// A fixpoint pair `(extent, intent)` of the concept-forming operators.
/// Two concepts of the same context are equal iff their intents are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    extent: FuzzySet,
    intent: FuzzySet,
}

impl FormalConcept {
    /// The concept `(D↓, D↓↑)` generated by an arbitrary intent.
    pub fn from_intent(ctx: &GradedMatrix, intent: &FuzzySet) -> Result<Self> {
        let extent = down(ctx, intent)?;
        let intent = up(ctx, &extent)?;
        Ok(FormalConcept { extent, intent })
    }

    /// The concept `(C↑↓, C↑)` generated by an arbitrary extent.
    pub fn from_extent(ctx: &GradedMatrix, extent: &FuzzySet) -> Result<Self> {
        let intent = up(ctx, extent)?;
        let extent = down(ctx, &intent)?;
        Ok(FormalConcept { extent, intent })
    }

    /// Pair an extent and intent, checking that they form a concept of `ctx`.
    pub fn new(ctx: &GradedMatrix, extent: FuzzySet, intent: FuzzySet) -> Result<Self> {
        let concept = FormalConcept { extent, intent };
        if !concept.is_concept_of(ctx)? {
            return Err(Error::Config(
                "pair is not a fixpoint of the concept-forming operators".into(),
            ));
        }
        Ok(concept)
    }

    pub(crate) fn from_parts_unchecked(extent: FuzzySet, intent: FuzzySet) -> Self {
        FormalConcept { extent, intent }
    }

    pub fn extent(&self) -> &FuzzySet {
        &self.extent
    }

    pub fn intent(&self) -> &FuzzySet {
        &self.intent
    }

    pub fn is_concept_of(&self, ctx: &GradedMatrix) -> Result<bool> {
        Ok(up(ctx, &self.extent)? == self.intent && down(ctx, &self.intent)? == self.extent)
    }

    /// True iff `C(i) ⊗ D(j) = I_ij`.
    pub fn covers(&self, ctx: &GradedMatrix, i: usize, j: usize) -> bool {
        ctx.scale().tnorm(self.extent.get(i), self.intent.get(j)) == ctx.get(i, j)
    }

    /// The rectangle `C ⊗ D`.
    pub fn rectangle(&self) -> GradedMatrix {
        GradedMatrix::rectangle(&self.extent, &self.intent)
            .expect("extent and intent share a scale")
    }
}

/// All formal concepts of a (small) context, ordered lexicographically by
/// intent levels.
///
/// Intents are generated as a closure fixpoint: starting from the closure of
/// the empty intent, every known intent `D` is extended by each graded
/// singleton `{a/j}` with `a > D(j)` and closed again until nothing new
/// appears. Every intent is a union of closed singletons, so the family is
/// complete. Fails once more than `budget` closures would be computed.
pub fn enumerate_concepts(
    ctx: &GradedMatrix,
    budget: u64,
    exec: Execution,
) -> Result<Vec<FormalConcept>> {
    let s = *ctx.scale();
    let m = ctx.cols();
    let bottom = closure_of(ctx, &vec![Grade::ZERO; m]);
    let mut spent: u64 = 1;
    let mut seen: HashSet<Vec<Grade>> = HashSet::new();
    seen.insert(bottom.clone());
    let mut frontier = vec![bottom];

    while !frontier.is_empty() {
        let mut jobs: Vec<(usize, usize, Grade)> = Vec::new();
        for (f, intent) in frontier.iter().enumerate() {
            for (j, &d) in intent.iter().enumerate() {
                for a in s.grades().filter(|&a| a > d) {
                    jobs.push((f, j, a));
                }
            }
        }
        spent += jobs.len() as u64;
        if spent > budget {
            return Err(Error::BudgetExceeded {
                what: "closure computations",
                budget,
            });
        }
        let closed = exec.map_slice(&jobs, |&(f, j, a)| {
            let mut extended = frontier[f].clone();
            extended[j] = a;
            closure_of(ctx, &extended)
        });
        let mut next = Vec::new();
        for intent in closed {
            if seen.insert(intent.clone()) {
                next.push(intent);
            }
        }
        frontier = next;
    }

    let mut intents: Vec<Vec<Grade>> = seen.into_iter().collect();
    intents.sort();
    Ok(intents
        .into_iter()
        .map(|intent| {
            let mut extent = vec![Grade::ZERO; ctx.rows()];
            down_into(ctx, &intent, &mut extent);
            FormalConcept::from_parts_unchecked(
                FuzzySet::from_grades_unchecked(s, extent),
                FuzzySet::from_grades_unchecked(s, intent),
            )
        })
        .collect())
}
