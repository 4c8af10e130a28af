use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::GradedMatrix;
use crate::scale::{Grade, Scale};

/// Probability weights over the levels of a scale.
#[derive(Clone, Debug, PartialEq)]
pub struct GradeDistribution {
    weights: Vec<f64>,
}

impl GradeDistribution {
    pub fn new(scale: &Scale, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != scale.levels() as usize {
            return Err(Error::InvalidDistribution(format!(
                "{} weights for a {}-level scale",
                weights.len(),
                scale.levels()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be finite and non-negative".into(),
            ));
        }
        if weights.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Ok(GradeDistribution { weights })
    }

    pub fn uniform(scale: &Scale) -> Self {
        GradeDistribution {
            weights: vec![1.0; scale.levels() as usize],
        }
    }

    /// All mass on the top grade.
    pub fn top(scale: &Scale) -> Self {
        let mut weights = vec![0.0; scale.levels() as usize];
        weights[scale.max_level() as usize] = 1.0;
        GradeDistribution { weights }
    }

    /// Parse comma separated weights `w0,w1,...`.
    pub fn parse(scale: &Scale, text: &str) -> Result<Self> {
        let weights = text
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidDistribution(format!("`{w}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        GradeDistribution::new(scale, weights)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub(crate) fn sampler(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(&self.weights).expect("validated on construction")
    }
}

fn random_matrix<R: Rng>(
    rng: &mut R,
    scale: Scale,
    rows: usize,
    cols: usize,
    sampler: &WeightedIndex<f64>,
) -> GradedMatrix {
    let data = (0..rows * cols)
        .map(|_| Grade::new(sampler.sample(rng) as u16))
        .collect();
    GradedMatrix::from_grades_unchecked(scale, rows, cols, data)
}

/// `A ∘ B` for a random `rows × k` matrix `A` and `k × cols` matrix `B`
/// with i.i.d. entries; such a matrix has an exact decomposition with at
/// most `k` factors.
pub fn random_factorizable(
    rows: usize,
    cols: usize,
    k: usize,
    scale: Scale,
    dist: &GradeDistribution,
    seed: u64,
) -> Result<GradedMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_factorizable_with(&mut rng, rows, cols, k, scale, dist)
}

pub fn random_factorizable_with<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    k: usize,
    scale: Scale,
    dist: &GradeDistribution,
) -> Result<GradedMatrix> {
    if k == 0 {
        return Err(Error::Config(
            "the factor count k must be at least 1".into(),
        ));
    }
    if dist.weights.len() != scale.levels() as usize {
        return Err(Error::InvalidDistribution(
            "distribution was built for another scale".into(),
        ));
    }
    let sampler = dist.sampler();
    let a = random_matrix(rng, scale, rows, k, &sampler);
    let b = random_matrix(rng, scale, k, cols, &sampler);
    a.compose(&b)
}

/// A matrix with i.i.d. entries drawn from `dist`.
pub fn random_matrix_with<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    scale: Scale,
    dist: &GradeDistribution,
) -> GradedMatrix {
    random_matrix(rng, scale, rows, cols, &dist.sampler())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::TNorm;

    fn quarters() -> Scale {
        Scale::new(5, TNorm::Lukasiewicz).unwrap()
    }

    #[test]
    fn all_top_gives_all_ones() {
        let s = quarters();
        let m = random_factorizable(4, 6, 1, s, &GradeDistribution::top(&s), 7).unwrap();
        assert!(m.as_slice().iter().all(|&g| g == s.one()));
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let s = quarters();
        let d = GradeDistribution::uniform(&s);
        let a = random_factorizable(20, 20, 5, s, &d, 42).unwrap();
        let b = random_factorizable(20, 20, 5, s, &d, 42).unwrap();
        let c = random_factorizable(20, 20, 5, s, &d, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_distributions() {
        let s = quarters();
        assert!(GradeDistribution::new(&s, vec![1.0; 3]).is_err());
        assert!(GradeDistribution::new(&s, vec![0.0; 5]).is_err());
        assert!(GradeDistribution::new(&s, vec![1.0, -1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(GradeDistribution::parse(&s, "1,1,x,1,1").is_err());
        assert_eq!(
            GradeDistribution::parse(&s, "0,0,0,0,1").unwrap(),
            GradeDistribution::top(&s)
        );
        assert!(random_factorizable(3, 3, 0, s, &GradeDistribution::uniform(&s), 1).is_err());
    }
}
