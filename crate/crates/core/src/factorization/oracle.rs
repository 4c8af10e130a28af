//! Exact minimum decomposition for small contexts.
//!
//! Optimal decompositions can always be assembled from formal concepts, so
//! the smallest exact factor set is a minimum set cover of the nonzero cells
//! by the cover sets of all concepts. The search enumerates concepts, then
//! runs iterative deepening on the cover size with a branch on the
//! uncovered cell that has the fewest covering concepts.

use crate::concept::{enumerate_concepts, FormalConcept, DEFAULT_CLOSURE_BUDGET};
use crate::error::{Error, Result};
use crate::matrix::GradedMatrix;
use crate::par::Execution;

use super::{CoverUniverse, FactorSet};

#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    /// Closure computations allowed while enumerating concepts.
    pub max_closures: u64,
    /// Search nodes allowed in the cover search.
    pub max_search_nodes: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_closures: DEFAULT_CLOSURE_BUDGET,
            max_search_nodes: 50_000_000,
        }
    }
}

type Mask = Vec<u64>;

fn mask_len(bits: usize) -> usize {
    bits.div_ceil(64)
}

fn test_bit(mask: &[u64], bit: usize) -> bool {
    mask[bit / 64] >> (bit % 64) & 1 == 1
}

fn count(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

fn and_not(a: &[u64], b: &[u64]) -> Mask {
    a.iter().zip(b).map(|(x, y)| x & !y).collect()
}

struct CoverSearch<'a> {
    masks: &'a [Mask],
    /// For each cell, the indices of concepts covering it (ascending).
    coverers: Vec<Vec<usize>>,
    nodes: u64,
    max_nodes: u64,
}

impl CoverSearch<'_> {
    /// Can `uncovered` be covered by at most `slots` concepts with index
    /// `>= min_index`?
    fn feasible(&mut self, uncovered: &[u64], slots: usize, min_index: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded {
                what: "cover search nodes",
                budget: self.max_nodes,
            });
        }
        let remaining = count(uncovered);
        if remaining == 0 {
            return Ok(true);
        }
        if slots == 0 {
            return Ok(false);
        }

        // branch cell: fewest eligible coverers
        let mut branch: Option<(usize, usize)> = None;
        for (word_idx, &word) in uncovered.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let cell = word_idx * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                let options = self.coverers[cell]
                    .iter()
                    .filter(|&&c| c >= min_index)
                    .count();
                if options == 0 {
                    return Ok(false);
                }
                if branch.is_none_or(|(_, best)| options < best) {
                    branch = Some((cell, options));
                }
            }
        }
        let (cell, _) = branch.expect("uncovered set is nonempty");

        let best_gain = (min_index..self.masks.len())
            .map(|c| and_count(&self.masks[c], uncovered))
            .max()
            .unwrap_or(0);
        if best_gain * slots < remaining {
            return Ok(false);
        }

        let options: Vec<usize> = self.coverers[cell]
            .iter()
            .copied()
            .filter(|&c| c >= min_index)
            .collect();
        for c in options {
            let rest = and_not(uncovered, &self.masks[c]);
            if self.feasible(&rest, slots - 1, min_index)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A minimum-cardinality exact factor set built from formal concepts.
///
/// Among minimum covers the one with the lexicographically least set of
/// concept indices (in enumeration order) is returned, so the result is
/// deterministic. Intended for small contexts only; both the concept
/// enumeration and the cover search are bounded by `limits`.
pub fn optimal_factorization(
    ctx: &GradedMatrix,
    limits: OracleLimits,
    exec: Execution,
) -> Result<FactorSet> {
    let universe = CoverUniverse::new(ctx);
    if universe.is_empty() {
        return FactorSet::from_concepts(ctx, Vec::new());
    }
    let cells: Vec<(usize, usize)> = universe.iter().collect();
    let words = mask_len(cells.len());

    let concepts = enumerate_concepts(ctx, limits.max_closures, exec)?;
    let masks: Vec<Mask> = exec.map_slice(&concepts, |concept: &FormalConcept| {
        let mut mask = vec![0u64; words];
        for (bit, &(i, j)) in cells.iter().enumerate() {
            if concept.covers(ctx, i, j) {
                mask[bit / 64] |= 1 << (bit % 64);
            }
        }
        mask
    });
    let mut coverers = vec![Vec::new(); cells.len()];
    for (c, mask) in masks.iter().enumerate() {
        for (bit, list) in coverers.iter_mut().enumerate() {
            if test_bit(mask, bit) {
                list.push(c);
            }
        }
    }

    let mut search = CoverSearch {
        masks: &masks,
        coverers,
        nodes: 0,
        max_nodes: limits.max_search_nodes,
    };
    let mut all = vec![!0u64; words];
    if !cells.len().is_multiple_of(64) {
        all[words - 1] = (1u64 << (cells.len() % 64)) - 1;
    }

    // each object concept covers its whole row, so k <= rows
    let mut size = 1;
    while !search.feasible(&all, size, 0)? {
        size += 1;
    }

    // lexicographically least cover of that size
    let mut chosen = Vec::with_capacity(size);
    let mut uncovered = all;
    let mut start = 0;
    for slot in 0..size {
        let mut picked = None;
        for (c, mask) in masks.iter().enumerate().skip(start) {
            if and_count(mask, &uncovered) == 0 {
                continue;
            }
            let rest = and_not(&uncovered, mask);
            if search.feasible(&rest, size - slot - 1, c + 1)? {
                picked = Some((c, rest));
                break;
            }
        }
        let (c, rest) = picked.expect("a cover of this size exists");
        chosen.push(c);
        uncovered = rest;
        start = c + 1;
    }

    let factors = chosen.into_iter().map(|c| concepts[c].clone()).collect();
    FactorSet::from_concepts(ctx, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{find_factors, TieBreak};
    use crate::matrix::FuzzySet;
    use crate::scale::{Scale, TNorm};

    #[test]
    fn boolean_identity_needs_three() {
        let s = Scale::boolean();
        let ctx = GradedMatrix::from_level_rows(s, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let f =
            optimal_factorization(&ctx, OracleLimits::default(), Execution::Sequential).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.is_complete());
    }

    #[test]
    fn rectangle_needs_one() {
        let s = Scale::new(5, TNorm::Godel).unwrap();
        let c = FuzzySet::from_levels(s, &[4, 2, 3]).unwrap();
        let d = FuzzySet::from_levels(s, &[3, 4, 1]).unwrap();
        let ctx = GradedMatrix::rectangle(&c, &d).unwrap();
        let f =
            optimal_factorization(&ctx, OracleLimits::default(), Execution::Sequential).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn zero_context_needs_none() {
        let ctx = GradedMatrix::zeros(Scale::boolean(), 2, 2);
        let f =
            optimal_factorization(&ctx, OracleLimits::default(), Execution::Sequential).unwrap();
        assert!(f.is_empty() && f.is_complete());
    }

    #[test]
    fn never_worse_than_greedy() {
        let s = Scale::new(3, TNorm::Lukasiewicz).unwrap();
        let ctx = GradedMatrix::from_level_rows(
            s,
            &[[2, 1, 0, 2], [1, 2, 2, 0], [0, 1, 2, 1], [2, 2, 1, 1]],
        )
        .unwrap();
        let opt =
            optimal_factorization(&ctx, OracleLimits::default(), Execution::Sequential).unwrap();
        let greedy = find_factors(&ctx, TieBreak::default());
        assert!(opt.is_complete());
        assert!(opt.len() <= greedy.len());
        let par =
            optimal_factorization(&ctx, OracleLimits::default(), Execution::Parallel).unwrap();
        assert_eq!(opt, par);
    }

    #[test]
    fn search_budget_is_enforced() {
        let s = Scale::boolean();
        let ctx = GradedMatrix::from_level_rows(s, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let limits = OracleLimits {
            max_search_nodes: 2,
            ..OracleLimits::default()
        };
        assert!(matches!(
            optimal_factorization(&ctx, limits, Execution::Sequential),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
